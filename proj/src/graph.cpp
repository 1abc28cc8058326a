#include "structura/graph.hpp"

#include "structura/error.hpp"

#include <cassert>

namespace structura {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorKind::NotAcrossComponents: return "NotAcrossComponents";
    case ErrorKind::UnknownClass: return "UnknownClass";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::BadConstantTerm: return "BadConstantTerm";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::InvalidArgs: return "InvalidArgs";
    case ErrorKind::InvalidRho: return "InvalidRho";
    case ErrorKind::NotDecomposable: return "NotDecomposable";
    case ErrorKind::EmptyClassAtN: return "EmptyClassAtN";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::BridgeAddableCheckFailed: return "BridgeAddableCheckFailed";
    case ErrorKind::FreenessCheckFailed: return "FreenessCheckFailed";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

std::vector<int> setToList(VertexSet s)
{
    std::vector<int> out;
    out.reserve(std::popcount(s));
    while (s) {
        out.push_back(std::countr_zero(s));
        s &= s - 1;
    }
    return out;
}

VertexSet listToSet(std::span<const int> vertices)
{
    VertexSet s = 0;
    for (int v : vertices)
        s |= singleton(v);
    return s;
}

Graph::Graph(int n) : n_(n)
{
    if (n < 0 || n > kMaxVertices)
        throw Error(ErrorKind::SizeCapExceeded, "graph order " + std::to_string(n) + " outside 0..64");
}

Graph Graph::fromEdges(int n, std::span<const Edge> edges)
{
    Graph g(n);
    for (auto [u, v] : edges)
        g.addEdge(u, v);
    return g;
}

Graph Graph::fromEdges(int n, std::initializer_list<Edge> edges)
{
    return fromEdges(n, std::span<const Edge>(edges.begin(), edges.size()));
}

Graph Graph::fromEdgeMask(int n, std::uint64_t mask)
{
    assert(n <= 11);
    Graph g(n);
    int idx = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++idx) {
            if ((mask >> idx) & 1U) {
                g.rows_[i] |= singleton(j);
                g.rows_[j] |= singleton(i);
            }
        }
    }
    return g;
}

int Graph::edgeCount() const
{
    int twice = 0;
    for (int v = 0; v < n_; ++v)
        twice += std::popcount(rows_[v]);
    return twice / 2;
}

int Graph::minDegree() const
{
    int best = n_ == 0 ? 0 : kMaxVertices;
    for (int v = 0; v < n_; ++v)
        best = std::min(best, degree(v));
    return best;
}

void Graph::addEdge(int u, int v)
{
    if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_)
        throw Error(ErrorKind::InvalidArgs, "bad edge " + std::to_string(u) + "-" + std::to_string(v));
    rows_[u] |= singleton(v);
    rows_[v] |= singleton(u);
}

void Graph::removeEdge(int u, int v)
{
    rows_[u] &= ~singleton(v);
    rows_[v] &= ~singleton(u);
}

std::vector<Edge> Graph::edges() const
{
    std::vector<Edge> out;
    for (int u = 0; u < n_; ++u) {
        VertexSet higher = rows_[u] & ~fullSet(u + 1);
        while (higher) {
            out.emplace_back(u, std::countr_zero(higher));
            higher &= higher - 1;
        }
    }
    return out;
}

std::uint64_t Graph::edgeMask() const
{
    assert(n_ <= 11);
    std::uint64_t mask = 0;
    for (int j = 1; j < n_; ++j) {
        VertexSet lower = rows_[j] & fullSet(j);
        while (lower) {
            int i = std::countr_zero(lower);
            mask |= std::uint64_t{1} << pairIndex(i, j);
            lower &= lower - 1;
        }
    }
    return mask;
}

Graph Graph::induced(VertexSet keep) const
{
    keep &= vertices();
    std::array<int, kMaxVertices> newIndex{};
    int m = 0;
    for (VertexSet s = keep; s; s &= s - 1)
        newIndex[std::countr_zero(s)] = m++;
    Graph h(m);
    for (VertexSet s = keep; s; s &= s - 1) {
        int v = std::countr_zero(s);
        VertexSet nb = rows_[v] & keep;
        VertexSet row = 0;
        while (nb) {
            row |= singleton(newIndex[std::countr_zero(nb)]);
            nb &= nb - 1;
        }
        h.rows_[newIndex[v]] = row;
    }
    return h;
}

Graph Graph::relabel(std::span<const int> perm) const
{
    Graph h(n_);
    for (int v = 0; v < n_; ++v) {
        VertexSet nb = rows_[v];
        VertexSet row = 0;
        while (nb) {
            row |= singleton(perm[std::countr_zero(nb)]);
            nb &= nb - 1;
        }
        h.rows_[perm[v]] = row;
    }
    return h;
}

bool operator==(const Graph& a, const Graph& b)
{
    if (a.n_ != b.n_)
        return false;
    for (int v = 0; v < a.n_; ++v)
        if (a.rows_[v] != b.rows_[v])
            return false;
    return true;
}

namespace named {

Graph complete(int n)
{
    Graph g(n);
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            g.addEdge(i, j);
    return g;
}

Graph cycle(int n)
{
    Graph g(n);
    for (int i = 0; i < n; ++i)
        g.addEdge(i, (i + 1) % n);
    return g;
}

Graph path(int n)
{
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i)
        g.addEdge(i, i + 1);
    return g;
}

Graph edgeless(int n) { return Graph(n); }

Graph star(int leaves)
{
    Graph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i)
        g.addEdge(0, i);
    return g;
}

Graph completeBipartite(int a, int b)
{
    Graph g(a + b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j)
            g.addEdge(i, a + j);
    return g;
}

Graph diamond()
{
    return Graph::fromEdges(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
}

Graph bowtie()
{
    return Graph::fromEdges(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}});
}

} // namespace named

} // namespace structura
