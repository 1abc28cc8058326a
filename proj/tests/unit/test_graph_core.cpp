#include "doctest.h"

#include "../support/oracles.hpp"
#include "structura/canonical.hpp"
#include "structura/catalog.hpp"
#include "structura/error.hpp"
#include "structura/graph.hpp"
#include "structura/graph6.hpp"
#include "structura/graph_ops.hpp"
#include "structura/minor.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace structura;

namespace {

Graph randomGraph(std::mt19937_64& rng, int n, double p)
{
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (coin(rng))
                g.addEdge(i, j);
    return g;
}

/// Leaf trimming in a random order, as an independent route to the core.
VertexSet trimInRandomOrder(const Graph& g, std::mt19937_64& rng)
{
    VertexSet alive = g.vertices();
    while (true) {
        std::vector<int> low;
        for (int v = 0; v < g.n(); ++v)
            if (((alive >> v) & 1U) && std::popcount(g.neighbours(v) & alive) < 2)
                low.push_back(v);
        if (low.empty())
            return alive;
        std::uniform_int_distribution<std::size_t> pick(0, low.size() - 1);
        alive &= ~singleton(low[pick(rng)]);
    }
}

} // namespace

TEST_CASE("components are ordered by size then lexicographically")
{
    CHECK(components(Graph()).empty());

    Graph edgePlusIsolated = Graph::fromEdges(3, {{0, 1}});
    CHECK(components(edgePlusIsolated) == std::vector<std::vector<int>>{{0, 1}, {2}});

    Graph twoTriangles = Graph::fromEdges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    CHECK(components(twoTriangles) == std::vector<std::vector<int>>{{0, 1, 2}, {3, 4, 5}});

    Graph mixed = Graph::fromEdges(5, {{4, 3}, {0, 2}});
    CHECK(components(mixed) == std::vector<std::vector<int>>{{0, 2}, {3, 4}, {1}});
}

TEST_CASE("fragment drops the largest component")
{
    CHECK(fragment(named::cycle(3)).isNull());

    Graph triangleAndEdge = Graph::fromEdges(5, {{0, 1}, {1, 2}, {0, 2}, {3, 4}});
    CHECK(fragment(triangleAndEdge) == named::complete(2));

    Graph twoIsolated(2);
    CHECK(fragment(twoIsolated) == Graph(1));
    CHECK(bigComponent(twoIsolated) == singleton(0));
    CHECK(fragment(Graph()).isNull());
}

TEST_CASE("the removed component is largest with the smallest-vertex tie-break")
{
    for (int n = 0; n <= 5; ++n) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairCount(n)); ++mask) {
            Graph g = Graph::fromEdgeMask(n, mask);
            VertexSet big = bigComponent(g);
            for (VertexSet comp : componentSets(g)) {
                CHECK(setSize(comp) <= setSize(big));
                if (setSize(comp) == setSize(big))
                    CHECK(std::countr_zero(big) <= std::countr_zero(comp));
            }
        }
    }
}

TEST_CASE("core2 examples")
{
    std::mt19937_64 rng(11);
    // Random labelled trees via Pruefer-free growth.
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 8);
        Graph t(n);
        for (int v = 1; v < n; ++v)
            t.addEdge(v, static_cast<int>(rng() % v));
        CHECK(core2(t).isNull());
        CHECK(coreSize(t) == 0);
    }

    Graph paw = Graph::fromEdges(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
    CHECK(core2(paw) == named::cycle(3));
    CHECK(coreVertices(paw) == 0b0111);
}

TEST_CASE("core2 matches the maximal min-degree-2 subset oracle for n <= 6")
{
    for (int n = 0; n <= 6; ++n) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairCount(n)); ++mask) {
            Graph g = Graph::fromEdgeMask(n, mask);
            REQUIRE(coreVertices(g) == oracle::coreBySubsets(g));
        }
    }
}

TEST_CASE("core2 is idempotent and independent of trimming order")
{
    std::mt19937_64 rng(5);
    for (int n = 0; n <= 8; ++n) {
        for (const UnlabeledGraph& u : allGraphs(n)) {
            Graph c = core2(u.canon);
            CHECK(core2(c) == c);
            if (n <= 7) {
                const VertexSet expected = coreVertices(u.canon);
                for (int run = 0; run < 20; ++run)
                    REQUIRE(trimInRandomOrder(u.canon, rng) == expected);
            }
        }
    }
}

TEST_CASE("bridges and leaves")
{
    Graph p3 = named::path(3);
    CHECK(bridges(p3) == std::vector<Edge>{{0, 1}, {1, 2}});
    CHECK(leaves(p3) == std::vector<int>{0, 2});

    CHECK(bridges(named::cycle(3)).empty());
    CHECK(leaves(named::cycle(3)).empty());

    Graph paw = Graph::fromEdges(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
    CHECK(bridges(paw) == std::vector<Edge>{{2, 3}});
    CHECK(leaves(paw) == std::vector<int>{3});
}

TEST_CASE("disjoint union and bridge addition")
{
    CHECK(disjointUnion(Graph(1), Graph(1)) == Graph(2));
    CHECK(addBridge(Graph(2), 0, 1) == named::complete(2));
    Graph u = disjointUnion(named::cycle(3), named::path(2));
    CHECK(u.n() == 5);
    CHECK(u.hasEdge(3, 4));
    CHECK_THROWS_AS(addBridge(named::path(3), 0, 2), Error);
    try {
        addBridge(named::path(3), 0, 2);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotAcrossComponents);
    }
}

TEST_CASE("canonical automorphism counts")
{
    CHECK(canonicalize(named::complete(3)).autSize == 6);
    CHECK(canonicalize(named::path(3)).autSize == 2);
    CHECK(canonicalize(named::cycle(4)).autSize == 8);
    CHECK(canonicalize(Graph()).autSize == 1);
    CHECK(canonicalize(named::completeBipartite(3, 3)).autSize == 72);
    CHECK(canonicalize(Graph(6)).autSize == 720);

    for (int n = 0; n <= 6; ++n)
        for (const UnlabeledGraph& u : allGraphs(n))
            REQUIRE(u.autSize == oracle::automorphismCount(u.canon));

    CHECK_THROWS_AS(canonicalize(Graph(11)), Error);
    CHECK(canonicalize(Graph(11), kHardCanonCap).autSize == 39916800ULL);
}

TEST_CASE("canonical form is a fixed point and isomorphism invariant")
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 10);
        Graph g = randomGraph(rng, n, 0.2 + 0.6 * static_cast<double>(rng() % 100) / 100.0);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const UnlabeledGraph a = canonicalize(g);
        const UnlabeledGraph b = canonicalize(g.relabel(perm));
        REQUIRE(a.code == b.code);
        REQUIRE(a.canon == b.canon);
        REQUIRE(a.autSize == b.autSize);
        REQUIRE(canonicalize(a.canon).canon == a.canon);
        REQUIRE(graphFromKey(a.key()) == a.canon);
    }
}

TEST_CASE("canonical form separates non-isomorphic graphs")
{
    for (int n = 0; n <= 5; ++n) {
        const auto& reps = allGraphs(n);
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = i + 1; j < reps.size(); ++j)
                REQUIRE_FALSE(oracle::isomorphicBrute(reps[i].canon, reps[j].canon));
    }
}

TEST_CASE("unlabelled classes account for every labelled graph")
{
    // Known counts of graphs up to isomorphism.
    const std::vector<std::size_t> known{1, 1, 2, 4, 11, 34, 156, 1044, 12346};
    for (int n = 0; n <= 8; ++n)
        CHECK(allGraphs(n).size() == known[n]);

    for (int n = 0; n <= 6; ++n) {
        std::uint64_t factorial = 1;
        for (int k = 2; k <= n; ++k)
            factorial *= k;
        std::uint64_t total = 0;
        for (const UnlabeledGraph& u : allGraphs(n))
            total += factorial / u.autSize;
        CHECK(total == (std::uint64_t{1} << pairCount(n)));
    }
}

TEST_CASE("rooted isomorphism distinguishes roots")
{
    Graph p3 = named::path(3);
    CHECK(rootedIsomorphic(p3, 0, p3, 2));
    CHECK_FALSE(rootedIsomorphic(p3, 0, p3, 1));
}

TEST_CASE("containsMinor examples")
{
    CHECK(containsMinor(named::complete(4), named::complete(3)));
    CHECK(containsMinor(named::complete(5), named::complete(5)));
    CHECK_FALSE(containsMinor(named::star(4), named::cycle(3)));
    CHECK_FALSE(containsMinor(named::path(8), named::cycle(3)));
    CHECK(containsMinor(named::cycle(7), named::cycle(3)));
    CHECK_FALSE(containsMinor(named::cycle(7), named::complete(4)));
    CHECK_THROWS_AS(containsMinor(named::complete(11), named::complete(3)), Error);
    // Reduction brings long cycles under the cap.
    CHECK(containsMinor(named::cycle(30), named::cycle(3)));
    CHECK(containsMinor(named::cycle(30), named::cycle(9)));
    CHECK_FALSE(containsMinor(named::cycle(8), named::cycle(9)));
    CHECK(containsMinor(named::cycle(9), named::cycle(9)));
    // Two triangles joined by a long path: still no C4 minor.
    Graph dumbbell = disjointUnion(named::cycle(3), named::cycle(3));
    dumbbell = disjointUnion(dumbbell, named::path(20));
    dumbbell.addEdge(0, 6);
    dumbbell.addEdge(25, 3);
    CHECK(containsMinor(dumbbell, named::cycle(3)));
    CHECK_FALSE(containsMinor(dumbbell, named::cycle(4)));
    // A six-vertex pattern keeps chains of seven, leaving 12 reduced vertices.
    CHECK_THROWS_AS(containsMinor(dumbbell, disjointUnion(named::cycle(3), named::cycle(3))), Error);
}

TEST_CASE("containsMinor agrees with branch-set search on all small pairs")
{
    for (int gn = 0; gn <= 6; ++gn) {
        for (const UnlabeledGraph& g : allGraphs(gn)) {
            for (int hn = 0; hn <= std::min(4, gn); ++hn) {
                for (const UnlabeledGraph& h : allGraphs(hn)) {
                    const bool fast = containsMinor(g.canon, h.canon);
                    const bool brute = oracle::minorByBranchSets(g.canon, h.canon);
                    if (fast != brute)
                        FAIL("mismatch for g=" << toGraph6(g.canon) << " h=" << toGraph6(h.canon));
                }
            }
        }
    }
}

TEST_CASE("K5 minor on eight-vertex graphs matches branch-set search")
{
    // Cube, wheel with 7 spokes, and two non-planar graphs.
    Graph cube = Graph::fromEdges(8, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6}, {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7}});
    Graph wheel(8);
    for (int i = 1; i <= 7; ++i) {
        wheel.addEdge(0, i);
        wheel.addEdge(i, i % 7 + 1);
    }
    // K5 with three edges subdivided.
    Graph subdividedK5 = named::complete(5);
    subdividedK5 = disjointUnion(subdividedK5, Graph(3));
    subdividedK5.removeEdge(0, 1);
    subdividedK5.addEdge(0, 5);
    subdividedK5.addEdge(5, 1);
    subdividedK5.removeEdge(2, 3);
    subdividedK5.addEdge(2, 6);
    subdividedK5.addEdge(6, 3);
    subdividedK5.removeEdge(3, 4);
    subdividedK5.addEdge(3, 7);
    subdividedK5.addEdge(7, 4);

    const Graph k5 = named::complete(5);
    for (const Graph& g : {cube, wheel, subdividedK5}) {
        CHECK(containsMinor(g, k5) == oracle::minorByBranchSets(g, k5));
    }
    CHECK_FALSE(containsMinor(cube, k5));
    CHECK_FALSE(containsMinor(wheel, k5));
    CHECK(containsMinor(subdividedK5, k5));
    CHECK(containsMinor(named::completeBipartite(3, 3), named::completeBipartite(3, 3)));
}

TEST_CASE("pendant appearances")
{
    Graph paw = Graph::fromEdges(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
    const RootedGraph k1(Graph(1), 0);
    auto found = pendantAppearances(paw, k1);
    REQUIRE(found.size() == 1);
    CHECK(found[0].side == singleton(3));
    CHECK(found[0].attachment == 3);

    CHECK(pendantAppearances(named::cycle(4), k1).empty());
    CHECK(pendantAppearances(named::cycle(4), RootedGraph(named::cycle(3), 0)).empty());

    // Two triangles joined by a path with three edges: 2-6-7-3.
    Graph dumbbell = Graph::fromEdges(8, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 6}, {6, 7}, {7, 3}});
    const RootedGraph triangle(named::cycle(3), 0);
    auto appearances = pendantAppearances(dumbbell, triangle);

    // Direct definition check bridge by bridge.
    std::vector<PendantAppearance> expected;
    for (auto [u, v] : bridges(dumbbell)) {
        Graph cut = dumbbell;
        cut.removeEdge(u, v);
        for (int end : {u, v}) {
            VertexSet side = componentOf(cut, end);
            Graph piece = dumbbell.induced(side);
            if (piece.n() == 3 && oracle::isomorphicBrute(piece, named::cycle(3)))
                expected.push_back({Edge{u, v}, side, end});
        }
    }
    CHECK(appearances == expected);
    CHECK(appearances.size() == 2);
}

TEST_CASE("maximum vertex-disjoint copies")
{
    Graph twoTriangles = Graph::fromEdges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    CHECK(maxDisjointCopies(twoTriangles, named::cycle(3)) == 2);
    CHECK(maxDisjointCopies(named::path(6), named::cycle(3)) == 0);
    CHECK(maxDisjointCopies(named::complete(5), named::complete(2)) == oracle::disjointCopiesBrute(named::complete(5), named::complete(2)));
    CHECK(maxDisjointCopies(named::complete(5), named::complete(2)) == 2);
    CHECK_THROWS_AS(maxDisjointCopies(named::complete(3), Graph()), Error);

    std::mt19937_64 rng(77);
    const std::vector<Graph> patterns{named::complete(2), named::path(3), named::cycle(3), named::cycle(4)};
    for (int trial = 0; trial < 150; ++trial) {
        Graph g = randomGraph(rng, 4 + static_cast<int>(rng() % 5), 0.45);
        for (const Graph& h : patterns)
            REQUIRE(maxDisjointCopies(g, h) == oracle::disjointCopiesBrute(g, h));
    }
}

TEST_CASE("graph6 encoding")
{
    CHECK(toGraph6(Graph()) == "?");
    CHECK(toGraph6(Graph(1)) == "@");
    CHECK(toGraph6(named::complete(3)) == "Bw");
    CHECK(toGraph6(named::complete(4)) == "C~");
    CHECK(fromGraph6(">>graph6<<Bw\n") == named::complete(3));
    CHECK(toGraph6(Graph(63)).substr(0, 4) == "~??~");
    CHECK_THROWS_AS(fromGraph6("Bw?"), Error);
    CHECK_THROWS_AS(fromGraph6("Bx"), Error);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        Graph g = randomGraph(rng, static_cast<int>(rng() % 65), 0.3);
        REQUIRE(fromGraph6(toGraph6(g)) == g);
    }
}
