#include "structura/inner_core.hpp"

#include "structura/canonical.hpp"
#include "structura/error.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

namespace structura {

InnerCoreGadgets makeGadgets(int k)
{
    if (k < 3)
        throw Error(ErrorKind::InvalidArgs, "gadget cycle length must be at least 3");
    if (3 * k + 1 > kMaxVertices)
        throw Error(ErrorKind::InvalidArgs, "gadget cycle length too large");
    InnerCoreGadgets out;
    out.k = k;
    out.h0 = RootedGraph(named::cycle(k), 0);

    Graph h1 = disjointUnion(named::cycle(k), Graph(1));
    h1.addEdge(0, k);
    out.h1 = RootedGraph(std::move(h1), k);

    Graph h3 = disjointUnion(disjointUnion(named::cycle(k), named::cycle(k)), disjointUnion(named::cycle(k), Graph(1)));
    for (int copy = 0; copy < 3; ++copy)
        h3.addEdge(copy * k, 3 * k);
    out.h3 = RootedGraph(std::move(h3), 3 * k);
    return out;
}

GraphClass innerCoreTarget(const GraphClass& c, const InnerCoreGadgets& gadgets)
{
    const GraphClass base = classes::minDegree2Of(c);
    const Graph ck = named::cycle(gadgets.k);
    const std::uint64_t ckCode = canonKey(ck).code;
    const RootedGraph h1 = gadgets.h1;
    const int k = gadgets.k;
    const std::string name = "innerCoreTarget(" + c.name() + ",k=" + std::to_string(k) + ")";
    return GraphClass({.name = name,
                       .member =
                           [base, h1, k, ckCode](const Graph& g) {
                               if (!base.member(g))
                                   return false;
                               for (VertexSet comp : componentSets(g)) {
                                   if (setSize(comp) != k)
                                       continue;
                                   const Graph piece = g.induced(comp);
                                   if (piece.edgeCount() == k && canonKey(piece).code == ckCode)
                                       return false;
                               }
                               return !hasPendantAppearance(g, h1);
                           },
                       .flags = ClassFlags{.connectedOnly = c.flags().connectedOnly},
                       .config = {{"kind", "derived"},
                                  {"name", name},
                                  {"parameters", {{"op", "innerCoreTarget"}, {"k", k}, {"base", c.config()}}}}});
}

char caseTag(TrimCase t)
{
    switch (t) {
    case TrimCase::SingleVertex:
        return 'a';
    case TrimCase::Cycle:
        return 'b';
    case TrimCase::Reduced:
        return 'c';
    }
    return '?';
}

std::vector<VertexSet> trimMoves(const Graph& g, VertexSet alive, const InnerCoreGadgets& gadgets)
{
    std::vector<VertexSet> moves;
    for (VertexSet s = alive; s; s &= s - 1) {
        const int v = std::countr_zero(s);
        if (std::popcount(g.neighbours(v) & alive) == 1)
            moves.push_back(singleton(v));
    }
    if (setSize(alive) >= gadgets.h1.graph.n() + 1) {
        const std::vector<int> original = setToList(alive);
        const Graph sub = g.induced(alive);
        for (const PendantAppearance& p : pendantAppearances(sub, gadgets.h1)) {
            VertexSet side = 0;
            for (VertexSet s = p.side; s; s &= s - 1)
                side |= singleton(original[std::countr_zero(s)]);
            moves.push_back(side);
        }
    }
    return moves;
}

namespace {

TrimCase classify(const Graph& g, VertexSet terminal, int k)
{
    if (setSize(terminal) == 1)
        return TrimCase::SingleVertex;
    if (setSize(terminal) == k) {
        const Graph t = g.induced(terminal);
        if (t.edgeCount() == k && t.minDegree() == 2 && isConnected(t))
            return TrimCase::Cycle;
    }
    return TrimCase::Reduced;
}

template <typename Choose>
InnerCoreResult runTrimming(const Graph& g, const GraphClass& c, const InnerCoreGadgets& gadgets, Choose choose)
{
    if (!c.member(g))
        throw Error(ErrorKind::InvalidArgs, "inner core needs a member of " + c.name());
    InnerCoreResult out;
    for (VertexSet comp : componentSets(g)) {
        VertexSet alive = comp;
        while (true) {
            const std::vector<VertexSet> moves = trimMoves(g, alive, gadgets);
            if (moves.empty())
                break;
            alive &= ~moves[choose(moves.size())];
        }
        const TrimCase tag = classify(g, alive, gadgets.k);
        out.components.push_back({comp, alive, tag});
        if (tag == TrimCase::Reduced)
            out.vertices |= alive;
    }
    out.core = g.induced(out.vertices);
    return out;
}

} // namespace

InnerCoreResult innerCore(const Graph& g, const GraphClass& c, const InnerCoreGadgets& gadgets)
{
    return runTrimming(g, c, gadgets, [](std::size_t) { return std::size_t{0}; });
}

InnerCoreResult innerCore(const Graph& g, const GraphClass& c, const InnerCoreGadgets& gadgets, std::mt19937_64& rng)
{
    return runTrimming(g, c, gadgets, [&rng](std::size_t count) {
        return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
    });
}

std::vector<VertexSet> reachableTerminals(const Graph& g, VertexSet start, const InnerCoreGadgets& gadgets)
{
    std::unordered_set<VertexSet> seen{start};
    std::vector<VertexSet> stack{start};
    std::vector<VertexSet> terminals;
    while (!stack.empty()) {
        const VertexSet alive = stack.back();
        stack.pop_back();
        const std::vector<VertexSet> moves = trimMoves(g, alive, gadgets);
        if (moves.empty())
            terminals.push_back(alive);
        for (VertexSet m : moves) {
            const VertexSet next = alive & ~m;
            if (seen.insert(next).second)
                stack.push_back(next);
        }
    }
    std::sort(terminals.begin(), terminals.end());
    return terminals;
}

std::vector<VertexSet> safeSets(const Graph& g, const GraphClass& c, const InnerCoreGadgets& gadgets, int cap)
{
    if (g.n() > cap)
        throw Error(ErrorKind::SizeCapExceeded, "safe-set search limited to " + std::to_string(cap) + " vertices");
    const GraphClass d = innerCoreTarget(c, gadgets);
    std::vector<VertexSet> out;
    const VertexSet all = g.vertices();
    for (VertexSet w = 1; w <= all && w != 0; ++w) {
        // Every vertex of g[W] needs two neighbours inside W.
        bool dense = true;
        for (VertexSet s = w; s && dense; s &= s - 1)
            dense = std::popcount(g.neighbours(std::countr_zero(s)) & w) >= 2;
        if (dense && d.member(g.induced(w)))
            out.push_back(w);
    }
    return out;
}

bool inRootedRemainderClass(const RootedGraph& g, const GraphClass& c, const InnerCoreGadgets& gadgets, int cap)
{
    const Graph& h = g.graph;
    if (h.n() > cap)
        throw Error(ErrorKind::SizeCapExceeded, "trimming-order search limited to " + std::to_string(cap) + " vertices");
    if (!isConnected(h) || !c.member(h))
        return false;
    for (int v = 0; v < h.n(); ++v)
        if (v != g.root && h.degree(v) < 2)
            return false;
    const auto terminals = reachableTerminals(h, h.vertices(), gadgets);
    return std::binary_search(terminals.begin(), terminals.end(), singleton(g.root));
}

} // namespace structura
