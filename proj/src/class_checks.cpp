#include "structura/class_checks.hpp"

#include "structura/catalog.hpp"
#include "structura/error.hpp"
#include "structura/graph6.hpp"

#include <string>

namespace structura {

namespace {

void requireBound(int nMax)
{
    if (nMax < 0 || nMax > kCatalogCap)
        throw Error(ErrorKind::SizeCapExceeded, "bounded checks limited to " + std::to_string(kCatalogCap) + " vertices");
}

BoundedCheck violation(int bound, const Graph& witness, std::string detail)
{
    return {false, bound, witness, std::move(detail)};
}

std::string describe(const Graph& g) { return "graph6 " + toGraph6(g); }

} // namespace

BoundedCheck isBridgeAddableUpTo(const GraphClass& c, int nMax)
{
    requireBound(nMax);
    for (int n = 2; n <= nMax; ++n) {
        for (const UnlabeledGraph& u : allGraphs(n)) {
            const Graph& g = u.canon;
            if (!c.member(g))
                continue;
            for (int a = 0; a < n; ++a) {
                const VertexSet comp = componentOf(g, a);
                for (int b = a + 1; b < n; ++b) {
                    if ((comp >> b) & 1U)
                        continue;
                    if (!c.member(addBridge(g, a, b)))
                        return violation(nMax, g,
                                         describe(g) + ": adding the bridge " + std::to_string(a) + "-" +
                                             std::to_string(b) + " leaves the class");
                }
            }
        }
    }
    return {true, nMax, std::nullopt, "bridge-addable up to " + std::to_string(nMax) + " vertices"};
}

BoundedCheck isTrimmableUpTo(const GraphClass& c, int nMax)
{
    requireBound(nMax);
    for (int n = 2; n <= nMax; ++n) {
        for (const UnlabeledGraph& u : allGraphs(n)) {
            const Graph& g = u.canon;
            const bool in = c.member(g);
            for (int v : leaves(g)) {
                if (c.member(g.removeVertex(v)) != in)
                    return violation(nMax, g,
                                     describe(g) + ": membership changes when leaf " + std::to_string(v) +
                                         " is removed");
            }
        }
    }
    return {true, nMax, std::nullopt, "trimmable up to " + std::to_string(nMax) + " vertices"};
}

BoundedCheck isDecomposableUpTo(const GraphClass& c, int nMax)
{
    requireBound(nMax);
    for (int n = 1; n <= nMax; ++n) {
        for (const UnlabeledGraph& u : allGraphs(n)) {
            const Graph& g = u.canon;
            bool parts = true;
            for (VertexSet comp : componentSets(g))
                parts = parts && c.member(g.induced(comp));
            if (parts != c.member(g))
                return violation(nMax, g, describe(g) + ": membership differs from membership of its components");
        }
    }
    if (!c.member(Graph()))
        return violation(nMax, Graph(), "the null graph (no components) is not a member");
    return {true, nMax, std::nullopt, "decomposable up to " + std::to_string(nMax) + " vertices"};
}

BoundedCheck isFreeUpTo(const GraphClass& c, const Graph& h, int nMax)
{
    requireBound(nMax);
    for (VertexSet part : componentSets(h)) {
        const Graph piece = h.induced(part);
        for (int n = 0; n <= nMax; ++n) {
            for (const UnlabeledGraph& u : allGraphs(n)) {
                const Graph& g = u.canon;
                const bool a = c.member(g);
                const Graph together = disjointUnion(g, piece);
                if (c.member(together) != a)
                    return violation(nMax, g,
                                     describe(g) + ": membership changes when " + describe(piece) +
                                         " is added beside it");
                for (int x = 0; x < n; ++x) {
                    for (int y = 0; y < piece.n(); ++y) {
                        if (c.member(addBridge(together, x, n + y)) != a)
                            return violation(nMax, g,
                                             describe(g) + ": membership changes when " + describe(piece) +
                                                 " is bridged to vertex " + std::to_string(x));
                    }
                }
            }
        }
    }
    return {true, nMax, std::nullopt, "free up to " + std::to_string(nMax) + " vertices"};
}

BoundedCheck isAttachableUpTo(const GraphClass& c, const RootedGraph& h, int nMax)
{
    requireBound(nMax);
    for (int n = 1; n <= nMax; ++n) {
        for (const UnlabeledGraph& u : allGraphs(n)) {
            const Graph& g = u.canon;
            if (!c.member(g))
                continue;
            const Graph together = disjointUnion(g, h.graph);
            for (int x = 0; x < n; ++x) {
                if (!c.member(addBridge(together, x, n + h.root)))
                    return violation(nMax, g,
                                     describe(g) + ": attaching at vertex " + std::to_string(x) + " leaves the class");
            }
        }
    }
    return {true, nMax, std::nullopt, "attachable up to " + std::to_string(nMax) + " vertices"};
}

BoundedCheck isAddableRemovableUpTo(const GraphClass& c, const Graph& h, int nMax)
{
    requireBound(nMax);
    for (int n = 0; n <= nMax; ++n) {
        for (const UnlabeledGraph& u : allGraphs(n)) {
            if (c.member(u.canon) != c.member(disjointUnion(u.canon, h)))
                return violation(nMax, u.canon, describe(u.canon) + ": membership changes beside " + describe(h));
        }
    }
    return {true, nMax, std::nullopt, "addable and removable up to " + std::to_string(nMax) + " vertices"};
}

BoundedCheck verifyDeclaredFlags(const GraphClass& c, int nMax)
{
    const ClassFlags& f = c.flags();
    if (f.decomposable)
        if (auto r = isDecomposableUpTo(c, nMax); !r)
            return r;
    if (f.bridgeAddable)
        if (auto r = isBridgeAddableUpTo(c, nMax); !r)
            return r;
    if (f.trimmable)
        if (auto r = isTrimmableUpTo(c, nMax); !r)
            return r;
    if (!f.connectedOnly && !c.member(Graph()))
        return violation(nMax, Graph(), "class is not declared connected-only but excludes the null graph");
    return {true, nMax, std::nullopt, "declared flags hold up to " + std::to_string(nMax) + " vertices"};
}

AddableRemovableComparison compareAddableRemovable(const GraphClass& c, int candidateMax, int testMax)
{
    requireBound(candidateMax);
    requireBound(testMax);
    const GraphClass core = classes::minDegree2Of(c);
    AddableRemovableComparison out;
    out.candidateMax = candidateMax;
    out.testMax = testMax;
    for (int n = 0; n <= candidateMax; ++n) {
        for (const UnlabeledGraph& u : allGraphs(n)) {
            const Graph& h = u.canon;
            const bool inA = isAddableRemovableUpTo(c, h, testMax).holds;
            if (inA) {
                out.a.push_back(h);
                if (h.isNull() || h.minDegree() >= 2)
                    out.aMinDegree2.push_back(h);
            }
            if (isAddableRemovableUpTo(core, h, testMax).holds)
                out.b.push_back(h);
        }
    }
    // Both lists follow catalogue order, so equality is elementwise.
    out.equal = out.b == out.aMinDegree2;
    return out;
}

} // namespace structura
