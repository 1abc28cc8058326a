#pragma once

#include "structura/canonical.hpp"
#include "structura/graph.hpp"

#include <memory>
#include <shared_mutex>
#include <unordered_map>

namespace structura {

inline constexpr int kDefaultMinorCap = 10;

/// Decides "pattern is a minor of g" for host graphs up to a size cap.
///
/// The host is first reduced by operations that cannot destroy a model of
/// the pattern (dropping isolated vertices, leaves and suppressing degree-2
/// vertices, each only when the pattern's minimum degree allows it). The
/// search then contracts edges one at a time: the pattern is a minor iff it
/// is a subgraph of some contraction. Results are memoised on canonical
/// forms; the memo is safe for concurrent readers with serialised writers.
class MinorTester {
public:
    explicit MinorTester(Graph pattern, int cap = kDefaultMinorCap);

    MinorTester(const MinorTester&) = delete;
    MinorTester& operator=(const MinorTester&) = delete;

    bool isMinorOf(const Graph& g) const;

    const Graph& pattern() const { return pattern_; }
    int cap() const { return cap_; }

    /// Number of memoised host classes (for diagnostics).
    std::size_t memoSize() const;

private:
    Graph reduce(Graph g) const;
    bool search(const Graph& g) const;

    Graph pattern_;
    int cap_;
    int patternMinDegree_;
    int patternEdges_;
    bool patternConnected_;
    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<CanonKey, bool, CanonKeyHash> memo_;
};

/// One-shot minor test. Throws SizeCapExceeded when a reduced host component
/// still has more than `cap` vertices.
bool containsMinor(const Graph& g, const Graph& h, int cap = kDefaultMinorCap);

/// Contracts edge uv (merging v into u) and drops loops and parallel edges.
Graph contractEdge(const Graph& g, int u, int v);

} // namespace structura
