#include "structura/graph_ops.hpp"

#include "structura/canonical.hpp"
#include "structura/error.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace structura {

VertexSet componentOf(const Graph& g, int v)
{
    VertexSet comp = singleton(v);
    VertexSet frontier = comp;
    while (frontier) {
        VertexSet next = 0;
        for (VertexSet f = frontier; f; f &= f - 1)
            next |= g.neighbours(std::countr_zero(f));
        frontier = next & ~comp;
        comp |= frontier;
    }
    return comp;
}

std::vector<VertexSet> componentSets(const Graph& g)
{
    std::vector<VertexSet> out;
    VertexSet rest = g.vertices();
    while (rest) {
        VertexSet comp = componentOf(g, std::countr_zero(rest));
        out.push_back(comp);
        rest &= ~comp;
    }
    // Disjoint sets compare lexicographically by their smallest vertex.
    std::stable_sort(out.begin(), out.end(), [](VertexSet a, VertexSet b) {
        if (setSize(a) != setSize(b))
            return setSize(a) > setSize(b);
        return std::countr_zero(a) < std::countr_zero(b);
    });
    return out;
}

std::vector<std::vector<int>> components(const Graph& g)
{
    std::vector<std::vector<int>> out;
    for (VertexSet s : componentSets(g))
        out.push_back(setToList(s));
    return out;
}

bool isConnected(const Graph& g)
{
    return g.n() == 0 || componentOf(g, 0) == g.vertices();
}

int componentCount(const Graph& g)
{
    int count = 0;
    for (VertexSet rest = g.vertices(); rest; ++count)
        rest &= ~componentOf(g, std::countr_zero(rest));
    return count;
}

VertexSet bigComponent(const Graph& g)
{
    VertexSet best = 0;
    for (VertexSet rest = g.vertices(); rest;) {
        VertexSet comp = componentOf(g, std::countr_zero(rest));
        // Components are discovered in order of smallest vertex, so a strict
        // comparison keeps the lexicographically first among equal sizes.
        if (setSize(comp) > setSize(best))
            best = comp;
        rest &= ~comp;
    }
    return best;
}

Graph fragment(const Graph& g)
{
    return g.induced(g.vertices() & ~bigComponent(g));
}

int fragmentSize(const Graph& g)
{
    return g.n() - setSize(bigComponent(g));
}

VertexSet coreVertices(const Graph& g)
{
    VertexSet alive = g.vertices();
    bool changed = true;
    while (changed) {
        changed = false;
        for (VertexSet s = alive; s; s &= s - 1) {
            int v = std::countr_zero(s);
            if (std::popcount(g.neighbours(v) & alive) < 2) {
                alive &= ~singleton(v);
                changed = true;
            }
        }
    }
    return alive;
}

Graph core2(const Graph& g)
{
    return g.induced(coreVertices(g));
}

int coreSize(const Graph& g)
{
    return setSize(coreVertices(g));
}

bool isForest(const Graph& g)
{
    return coreVertices(g) == 0;
}

std::vector<Edge> bridges(const Graph& g)
{
    std::vector<Edge> out;
    Graph work = g;
    for (auto [u, v] : g.edges()) {
        work.removeEdge(u, v);
        if (!((componentOf(work, u) >> v) & 1U))
            out.emplace_back(u, v);
        work.addEdge(u, v);
    }
    return out;
}

std::vector<int> leaves(const Graph& g)
{
    std::vector<int> out;
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) == 1)
            out.push_back(v);
    return out;
}

Graph disjointUnion(const Graph& g, const Graph& h)
{
    Graph out(g.n() + h.n());
    for (auto [u, v] : g.edges())
        out.addEdge(u, v);
    for (auto [u, v] : h.edges())
        out.addEdge(g.n() + u, g.n() + v);
    return out;
}

Graph addBridge(const Graph& g, int u, int v)
{
    if (u < 0 || v < 0 || u >= g.n() || v >= g.n())
        throw Error(ErrorKind::InvalidArgs, "bridge endpoint out of range");
    if ((componentOf(g, u) >> v) & 1U)
        throw Error(ErrorKind::NotAcrossComponents,
                    "vertices " + std::to_string(u) + " and " + std::to_string(v) + " are already connected");
    Graph out = g;
    out.addEdge(u, v);
    return out;
}

RootedGraph::RootedGraph(Graph g, int r) : graph(std::move(g)), root(r)
{
    if (graph.n() == 0 || r < 0 || r >= graph.n() || !isConnected(graph))
        throw Error(ErrorKind::InvalidArgs, "rooted graph must be connected with a valid root");
}

std::vector<PendantAppearance> pendantAppearances(const Graph& g, const RootedGraph& h)
{
    std::vector<PendantAppearance> out;
    const int hn = h.graph.n();
    const int he = h.graph.edgeCount();
    Graph work = g;
    for (auto [u, v] : bridges(g)) {
        work.removeEdge(u, v);
        for (auto [inside, outside] : {Edge{u, v}, Edge{v, u}}) {
            (void)outside;
            VertexSet side = componentOf(work, inside);
            if (setSize(side) != hn)
                continue;
            Graph piece = g.induced(side);
            if (piece.edgeCount() != he)
                continue;
            int rootIndex = std::popcount(side & fullSet(inside));
            if (rootedIsomorphic(piece, rootIndex, h.graph, h.root))
                out.push_back({Edge{u, v}, side, inside});
        }
        work.addEdge(u, v);
    }
    return out;
}

bool hasPendantAppearance(const Graph& g, const RootedGraph& h)
{
    return !pendantAppearances(g, h).empty();
}

namespace {

/// Backtracking embedder of pattern h into host g as a (not induced) subgraph.
class Embedder {
public:
    Embedder(const Graph& g, const Graph& h) : g_(g), h_(h)
    {
        // Place pattern vertices so each one has as many placed neighbours as possible.
        VertexSet placed = 0;
        for (int k = 0; k < h.n(); ++k) {
            int best = -1, bestLinks = -1, bestDeg = -1;
            for (int v = 0; v < h.n(); ++v) {
                if ((placed >> v) & 1U)
                    continue;
                int links = std::popcount(h.neighbours(v) & placed);
                if (links > bestLinks || (links == bestLinks && h.degree(v) > bestDeg)) {
                    best = v;
                    bestLinks = links;
                    bestDeg = h.degree(v);
                }
            }
            order_[k] = best;
            placed |= singleton(best);
        }
        for (int d = 0; d <= kMaxVertices; ++d)
            atLeastDegree_[d] = 0;
        for (int v = 0; v < g.n(); ++v)
            for (int d = 0; d <= g.degree(v); ++d)
                atLeastDegree_[d] |= singleton(v);
    }

    template <class Leaf>
    bool run(Leaf&& leaf)
    {
        return step(0, 0, leaf);
    }

private:
    template <class Leaf>
    bool step(int k, VertexSet used, Leaf& leaf)
    {
        if (k == h_.n())
            return leaf(used);
        const int hv = order_[k];
        VertexSet cand = atLeastDegree_[h_.degree(hv)] & ~used;
        for (int j = 0; j < k; ++j)
            if (h_.hasEdge(hv, order_[j]))
                cand &= g_.neighbours(image_[order_[j]]);
        for (; cand; cand &= cand - 1) {
            int gv = std::countr_zero(cand);
            image_[hv] = gv;
            if (step(k + 1, used | singleton(gv), leaf))
                return true;
        }
        return false;
    }

    const Graph& g_;
    const Graph& h_;
    std::array<int, kMaxVertices> order_{};
    std::array<int, kMaxVertices> image_{};
    std::array<VertexSet, kMaxVertices + 1> atLeastDegree_{};
};

} // namespace

bool containsSubgraph(const Graph& g, const Graph& h)
{
    if (h.n() > g.n() || h.edgeCount() > g.edgeCount())
        return false;
    if (h.n() == 0)
        return true;
    Embedder e(g, h);
    return e.run([](VertexSet) { return true; });
}

std::vector<VertexSet> subgraphCopyVertexSets(const Graph& g, const Graph& h)
{
    std::vector<VertexSet> sets;
    if (h.n() == 0 || h.n() > g.n() || h.edgeCount() > g.edgeCount())
        return sets;
    Embedder e(g, h);
    e.run([&](VertexSet used) {
        sets.push_back(used);
        return false;
    });
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    return sets;
}

namespace {

int packing(const std::vector<VertexSet>& sets, std::size_t from, VertexSet used, int patternSize, int have, int best)
{
    best = std::max(best, have);
    const int room = std::popcount(~used) / patternSize;
    if (have + room <= best)
        return best;
    for (std::size_t i = from; i < sets.size(); ++i) {
        if (sets[i] & used)
            continue;
        best = packing(sets, i + 1, used | sets[i], patternSize, have + 1, best);
    }
    return best;
}

} // namespace

int maxDisjointCopies(const Graph& g, const Graph& h)
{
    if (h.n() == 0)
        throw Error(ErrorKind::InvalidArgs, "pattern must have at least one vertex");
    const std::vector<VertexSet> sets = subgraphCopyVertexSets(g, h);
    const VertexSet outside = ~g.vertices();
    return packing(sets, 0, outside, h.n(), 0, 0);
}

} // namespace structura
