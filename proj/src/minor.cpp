#include "structura/minor.hpp"

#include "structura/error.hpp"
#include "structura/graph_ops.hpp"

#include <mutex>
#include <string>

namespace structura {

Graph contractEdge(const Graph& g, int u, int v)
{
    Graph h = g;
    for (VertexSet nb = g.neighbours(v) & ~singleton(u); nb; nb &= nb - 1)
        h.addEdge(u, std::countr_zero(nb));
    return h.removeVertex(v);
}

MinorTester::MinorTester(Graph pattern, int cap)
    : pattern_(std::move(pattern)),
      cap_(cap),
      patternMinDegree_(pattern_.minDegree()),
      patternEdges_(pattern_.edgeCount()),
      patternConnected_(isConnected(pattern_))
{
    if (cap_ > kHardCanonCap)
        throw Error(ErrorKind::SizeCapExceeded, "minor cap above " + std::to_string(kHardCanonCap));
}

std::size_t MinorTester::memoSize() const
{
    std::shared_lock lock(mutex_);
    return memo_.size();
}

namespace {

// A model of H meets a chain of degree-2 vertices in at most v(H) intervals,
// so a chain with more than v(H) vertices has a spare vertex and one of its
// edges can be contracted without losing the model.
int slackChainVertex(const Graph& g, int patternOrder)
{
    for (int v = 0; v < g.n(); ++v) {
        if (g.degree(v) != 2)
            continue;
        int length = 1;
        for (int start : setToList(g.neighbours(v))) {
            int previous = v;
            int current = start;
            while (current != v && g.degree(current) == 2) {
                ++length;
                const int next = std::countr_zero(g.neighbours(current) & ~singleton(previous));
                previous = current;
                current = next;
            }
            if (current == v)
                break; // the whole component is a cycle
        }
        if (length > patternOrder)
            return v;
    }
    return -1;
}

} // namespace

Graph MinorTester::reduce(Graph g) const
{
    // Vertices of degree below min(pattern min degree, 3) are removable:
    // isolated vertices and leaves are deleted, degree-2 vertices suppressed.
    // With pattern min degree 2, only long degree-2 chains are shortened.
    const int floor = std::min(patternMinDegree_, 3);
    while (true) {
        int victim = -1;
        for (int v = 0; v < g.n(); ++v) {
            if (g.degree(v) < floor) {
                victim = v;
                break;
            }
        }
        if (victim < 0 && floor == 2)
            victim = slackChainVertex(g, pattern_.n());
        if (victim < 0)
            return g;
        if (g.degree(victim) <= 1)
            g = g.removeVertex(victim);
        else
            g = contractEdge(g, std::countr_zero(g.neighbours(victim)), victim);
    }
}

bool MinorTester::search(const Graph& g) const
{
    if (g.n() < pattern_.n() || g.edgeCount() < patternEdges_)
        return false;
    const CanonKey key = canonKey(g, kHardCanonCap);
    {
        std::shared_lock lock(mutex_);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
    }
    bool found = containsSubgraph(g, pattern_);
    if (!found && g.n() > pattern_.n()) {
        for (auto [u, v] : g.edges()) {
            if (search(reduce(contractEdge(g, u, v)))) {
                found = true;
                break;
            }
        }
    }
    std::unique_lock lock(mutex_);
    memo_.emplace(key, found);
    return found;
}

bool MinorTester::isMinorOf(const Graph& g) const
{
    if (pattern_.n() == 0)
        return true;
    if (g.n() < pattern_.n() || g.edgeCount() < patternEdges_)
        return false;
    auto reduced = [&](const Graph& host) {
        Graph r = reduce(host);
        if (r.n() > cap_)
            throw Error(ErrorKind::SizeCapExceeded, "minor test limited to " + std::to_string(cap_) +
                                                        " reduced host vertices, got " + std::to_string(r.n()));
        return r;
    };
    if (!patternConnected_)
        return search(reduced(g));
    // A connected pattern lives inside a single component of any model.
    for (VertexSet comp : componentSets(g)) {
        if (setSize(comp) < pattern_.n())
            break;
        if (search(reduced(g.induced(comp))))
            return true;
    }
    return false;
}

bool containsMinor(const Graph& g, const Graph& h, int cap)
{
    return MinorTester(h, cap).isMinorOf(g);
}

} // namespace structura
