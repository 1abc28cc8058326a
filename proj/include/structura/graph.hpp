#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace structura {

inline constexpr int kMaxVertices = 64;

/// Bitmask over vertex indices 0..63.
using VertexSet = std::uint64_t;

inline constexpr VertexSet singleton(int v) { return VertexSet{1} << v; }
inline constexpr VertexSet fullSet(int n) { return n >= 64 ? ~VertexSet{0} : (VertexSet{1} << n) - 1; }
inline int setSize(VertexSet s) { return std::popcount(s); }
std::vector<int> setToList(VertexSet s);
VertexSet listToSet(std::span<const int> vertices);

/// Index of the pair {i, j} (i < j) in the lower-triangle row-major order
/// (0,1), (0,2), (1,2), (0,3), ... which is also the graph6 bit order.
inline constexpr int pairIndex(int i, int j) { return j * (j - 1) / 2 + i; }
inline constexpr int pairCount(int n) { return n * (n - 1) / 2; }

using Edge = std::pair<int, int>;

/// Labelled simple graph on vertices 0..n-1 with packed adjacency rows.
/// n == 0 is the null graph.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    static Graph fromEdges(int n, std::span<const Edge> edges);
    static Graph fromEdges(int n, std::initializer_list<Edge> edges);

    /// Builds a graph from a bitmask over pairIndex order. Requires n <= 11.
    static Graph fromEdgeMask(int n, std::uint64_t mask);

    int n() const noexcept { return n_; }
    bool isNull() const noexcept { return n_ == 0; }
    int edgeCount() const;

    bool hasEdge(int u, int v) const { return (rows_[u] >> v) & 1U; }
    VertexSet neighbours(int v) const { return rows_[v]; }
    int degree(int v) const { return std::popcount(rows_[v]); }
    int minDegree() const;
    VertexSet vertices() const { return fullSet(n_); }

    void addEdge(int u, int v);
    void removeEdge(int u, int v);

    std::vector<Edge> edges() const;

    /// Requires n <= 11.
    std::uint64_t edgeMask() const;

    /// Subgraph induced by `keep`, relabelled to 0..|keep|-1 preserving order.
    Graph induced(VertexSet keep) const;
    Graph removeVertex(int v) const { return induced(vertices() & ~singleton(v)); }

    /// Graph with vertex i renamed to perm[i].
    Graph relabel(std::span<const int> perm) const;

    friend bool operator==(const Graph& a, const Graph& b);

private:
    int n_ = 0;
    std::array<std::uint64_t, kMaxVertices> rows_{};
};

// Small named graphs used throughout tests and class definitions.
namespace named {
Graph complete(int n);
Graph cycle(int n);
Graph path(int n);
Graph edgeless(int n);
Graph star(int leaves);
Graph completeBipartite(int a, int b);
/// K4 minus an edge.
Graph diamond();
/// Two triangles sharing one vertex.
Graph bowtie();
} // namespace named

} // namespace structura
