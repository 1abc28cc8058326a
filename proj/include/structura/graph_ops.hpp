#pragma once

#include "structura/graph.hpp"

#include <vector>

namespace structura {

/// Connected components as bitmasks, ordered by size descending then by
/// lexicographically smallest sorted vertex list.
std::vector<VertexSet> componentSets(const Graph& g);
std::vector<std::vector<int>> components(const Graph& g);
VertexSet componentOf(const Graph& g, int v);
bool isConnected(const Graph& g);
int componentCount(const Graph& g);

/// The component removed when taking the fragment (empty for the null graph).
VertexSet bigComponent(const Graph& g);
/// g minus its largest component, relabelled order-preservingly.
Graph fragment(const Graph& g);
int fragmentSize(const Graph& g);

/// Vertex set of the 2-core: maximal set inducing minimum degree >= 2.
VertexSet coreVertices(const Graph& g);
/// The 2-core relabelled order-preservingly; null for forests.
Graph core2(const Graph& g);
int coreSize(const Graph& g);

bool isForest(const Graph& g);

std::vector<Edge> bridges(const Graph& g);
std::vector<int> leaves(const Graph& g);

/// h is relabelled onto n(g)..n(g)+n(h)-1.
Graph disjointUnion(const Graph& g, const Graph& h);
/// Adds uv; throws NotAcrossComponents if u and v are already connected.
Graph addBridge(const Graph& g, int u, int v);

/// Connected graph with a distinguished root vertex.
struct RootedGraph {
    Graph graph;
    int root = 0;

    RootedGraph() = default;
    RootedGraph(Graph g, int r);
};

/// A bridge together with the vertex set of the side that copies the pattern.
struct PendantAppearance {
    Edge bridge;
    VertexSet side = 0;
    /// Endpoint of the bridge inside `side` (image of the root).
    int attachment = 0;

    friend bool operator==(const PendantAppearance&, const PendantAppearance&) = default;
};

std::vector<PendantAppearance> pendantAppearances(const Graph& g, const RootedGraph& h);
bool hasPendantAppearance(const Graph& g, const RootedGraph& h);

/// True iff h is isomorphic to a (not necessarily induced) subgraph of g.
bool containsSubgraph(const Graph& g, const Graph& h);

/// Vertex sets of all subgraph copies of h in g (deduplicated).
std::vector<VertexSet> subgraphCopyVertexSets(const Graph& g, const Graph& h);

/// Maximum number of pairwise vertex-disjoint subgraph copies of h in g.
int maxDisjointCopies(const Graph& g, const Graph& h);

} // namespace structura
