#include "structura/graph6.hpp"

#include "structura/error.hpp"

namespace structura {

std::string toGraph6(const Graph& g)
{
    const int n = g.n();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        out.push_back(126);
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    }
    int value = 0;
    int filled = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            value = (value << 1) | (g.hasEdge(i, j) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(value + 63));
                value = 0;
                filled = 0;
            }
        }
    }
    if (filled > 0)
        out.push_back(static_cast<char>((value << (6 - filled)) + 63));
    return out;
}

Graph fromGraph6(std::string_view text)
{
    constexpr std::string_view header = ">>graph6<<";
    if (text.starts_with(header))
        text.remove_prefix(header.size());
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
        text.remove_suffix(1);
    if (text.empty())
        throw Error(ErrorKind::ParseError, "empty graph6 string");

    auto sextet = [&](std::size_t pos) {
        if (pos >= text.size())
            throw Error(ErrorKind::ParseError, "graph6 string truncated");
        int c = static_cast<unsigned char>(text[pos]);
        if (c < 63 || c > 126)
            throw Error(ErrorKind::ParseError, "graph6 byte out of range");
        return c - 63;
    };

    std::size_t pos = 0;
    long n = 0;
    if (static_cast<unsigned char>(text[0]) != 126) {
        n = sextet(0);
        pos = 1;
    } else if (text.size() > 1 && static_cast<unsigned char>(text[1]) == 126) {
        for (std::size_t k = 2; k < 8; ++k)
            n = (n << 6) | sextet(k);
        pos = 8;
    } else {
        for (std::size_t k = 1; k < 4; ++k)
            n = (n << 6) | sextet(k);
        pos = 4;
    }
    if (n > kMaxVertices)
        throw Error(ErrorKind::SizeCapExceeded, "graph6 order " + std::to_string(n) + " exceeds 64");

    const long bits = static_cast<long>(n) * (n - 1) / 2;
    const std::size_t expected = pos + static_cast<std::size_t>((bits + 5) / 6);
    if (text.size() != expected)
        throw Error(ErrorKind::ParseError, "graph6 length mismatch");

    Graph g(static_cast<int>(n));
    long k = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++k) {
            int byte = sextet(pos + static_cast<std::size_t>(k / 6));
            if ((byte >> (5 - k % 6)) & 1)
                g.addEdge(i, j);
        }
    }
    // Padding bits must be zero.
    if (bits % 6 != 0) {
        int last = sextet(expected - 1);
        if (last & ((1 << (6 - bits % 6)) - 1))
            throw Error(ErrorKind::ParseError, "graph6 padding bits set");
    }
    return g;
}

} // namespace structura
