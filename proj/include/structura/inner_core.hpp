#pragma once

#include "structura/graph.hpp"
#include "structura/graph_class.hpp"
#include "structura/graph_ops.hpp"

#include <random>
#include <vector>

namespace structura {

/// Rooted gadgets built from the k-cycle: h0 is C_k rooted at a cycle vertex,
/// h1 adds a pendant root to h0, h3 joins three copies of h0 to a new root.
struct InnerCoreGadgets {
    int k = 3;
    RootedGraph h0;
    RootedGraph h1;
    RootedGraph h3;
};

/// Throws InvalidArgs unless k >= 3.
InnerCoreGadgets makeGadgets(int k);

/// The reduced class D: min-degree-2 members of c with no pendant
/// appearance of h1 and no component isomorphic to C_k.
GraphClass innerCoreTarget(const GraphClass& c, const InnerCoreGadgets& gadgets);

/// How the trimming of one component ended.
enum class TrimCase { SingleVertex, Cycle, Reduced };

/// 'a', 'b' or 'c'.
char caseTag(TrimCase t);

struct ComponentTrim {
    VertexSet component = 0;
    /// Vertices left when no leaf or pendant h1 copy remains.
    VertexSet terminal = 0;
    TrimCase tag = TrimCase::SingleVertex;
};

struct InnerCoreResult {
    /// Union of the case-(c) terminals, in the input labelling.
    VertexSet vertices = 0;
    /// Induced subgraph on `vertices`, relabelled order-preservingly.
    Graph core;
    std::vector<ComponentTrim> components;
};

/// Vertex sets that one trimming step can remove from g[alive]: single
/// leaves and the vertex sets of pendant h1 copies.
std::vector<VertexSet> trimMoves(const Graph& g, VertexSet alive, const InnerCoreGadgets& gadgets);

/// Trims each component of g to a fixed point, always taking the first
/// available move. Throws InvalidArgs if g is not in c.
InnerCoreResult innerCore(const Graph& g, const GraphClass& c, const InnerCoreGadgets& gadgets);

/// Same, choosing uniformly among the available moves at every step.
InnerCoreResult innerCore(const Graph& g, const GraphClass& c, const InnerCoreGadgets& gadgets,
                          std::mt19937_64& rng);

/// Every terminal vertex set reachable by some trimming order from the
/// connected vertex set `start` (exhaustive search over trimming states).
std::vector<VertexSet> reachableTerminals(const Graph& g, VertexSet start, const InnerCoreGadgets& gadgets);

inline constexpr int kSafeSetCap = 8;

/// Non-empty vertex sets W with g[W] in D. Throws SizeCapExceeded when
/// g has more than `cap` vertices.
std::vector<VertexSet> safeSets(const Graph& g, const GraphClass& c, const InnerCoreGadgets& gadgets,
                                int cap = kSafeSetCap);

inline constexpr int kRootedTrimCap = 14;

/// Membership in the rooted class E: g is a connected member of c, every
/// vertex other than the root has degree at least 2, and some trimming
/// order ends with the root alone. Decided by searching all trimming
/// states, so it is exponential in v(g); throws SizeCapExceeded above `cap`.
bool inRootedRemainderClass(const RootedGraph& g, const GraphClass& c, const InnerCoreGadgets& gadgets,
                            int cap = kRootedTrimCap);

} // namespace structura
