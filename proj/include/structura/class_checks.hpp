#pragma once

#include "structura/graph.hpp"
#include "structura/graph_class.hpp"
#include "structura/graph_ops.hpp"

#include <optional>
#include <string>
#include <vector>

namespace structura {

/// Outcome of checking a property over every graph up to a vertex bound.
/// `holds` only ever means "no violation up to `bound`".
struct BoundedCheck {
    bool holds = true;
    int bound = 0;
    std::optional<Graph> witness;
    std::string detail;

    explicit operator bool() const { return holds; }
};

/// Bounds are limited by the unlabelled catalogue; every property checked
/// here is invariant under relabelling, so one representative per
/// isomorphism class suffices.
BoundedCheck isBridgeAddableUpTo(const GraphClass& c, int nMax);
BoundedCheck isTrimmableUpTo(const GraphClass& c, int nMax);
BoundedCheck isDecomposableUpTo(const GraphClass& c, int nMax);
/// Each component of h is tested for the equivalence of g in c, g with h
/// beside it, and g with h attached by any bridge, over all g up to nMax.
BoundedCheck isFreeUpTo(const GraphClass& c, const Graph& h, int nMax);
BoundedCheck isAttachableUpTo(const GraphClass& c, const RootedGraph& h, int nMax);
/// h is addable and removable: g in c iff g with h beside it in c.
BoundedCheck isAddableRemovableUpTo(const GraphClass& c, const Graph& h, int nMax);

/// Checks each flag the class declares (decomposable, bridge-addable,
/// trimmable) and returns the first failure, if any.
BoundedCheck verifyDeclaredFlags(const GraphClass& c, int nMax);

/// Bounded comparison of B (addable and removable in c's min-degree-2
/// subclass) with the min-degree-2 members of A (addable and removable in c).
/// Candidates range over all graphs up to `candidateMax` vertices and are
/// tested against all graphs up to `testMax` vertices.
struct AddableRemovableComparison {
    std::vector<Graph> a;
    std::vector<Graph> b;
    std::vector<Graph> aMinDegree2;
    bool equal = false;
    int candidateMax = 0;
    int testMax = 0;
};
AddableRemovableComparison compareAddableRemovable(const GraphClass& c, int candidateMax, int testMax);

} // namespace structura
