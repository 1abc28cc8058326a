#include "structura/catalog.hpp"

#include "structura/error.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

namespace structura {

namespace {

std::vector<UnlabeledGraph> extend(const std::vector<UnlabeledGraph>& previous, int n)
{
    std::unordered_map<std::uint64_t, UnlabeledGraph> seen;
    for (const UnlabeledGraph& base : previous) {
        for (VertexSet nbhd = 0; nbhd <= fullSet(n - 1); ++nbhd) {
            Graph g(n);
            for (auto [u, v] : base.canon.edges())
                g.addEdge(u, v);
            for (VertexSet s = nbhd; s; s &= s - 1)
                g.addEdge(n - 1, std::countr_zero(s));
            UnlabeledGraph u = canonicalize(g, kCatalogCap);
            seen.try_emplace(u.code, std::move(u));
        }
    }
    std::vector<UnlabeledGraph> out;
    out.reserve(seen.size());
    for (auto& [code, u] : seen)
        out.push_back(std::move(u));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.code < b.code; });
    return out;
}

} // namespace

const std::vector<UnlabeledGraph>& allGraphs(int n)
{
    if (n < 0 || n > kCatalogCap)
        throw Error(ErrorKind::SizeCapExceeded, "unlabelled catalogue limited to " + std::to_string(kCatalogCap) + " vertices");
    static std::mutex mutex;
    static std::array<std::optional<std::vector<UnlabeledGraph>>, kCatalogCap + 1> levels;
    std::lock_guard lock(mutex);
    if (!levels[0])
        levels[0] = std::vector<UnlabeledGraph>{UnlabeledGraph{Graph(), 0, 1}};
    for (int k = 1; k <= n; ++k)
        if (!levels[k])
            levels[k] = extend(*levels[k - 1], k);
    return *levels[n];
}

} // namespace structura
