#pragma once

#include "structura/graph.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace structura {

inline constexpr int kDefaultCanonCap = 10;
inline constexpr int kHardCanonCap = 11;

/// Identifies an isomorphism class: order plus canonical adjacency code.
struct CanonKey {
    int n = 0;
    std::uint64_t code = 0;

    friend auto operator<=>(const CanonKey&, const CanonKey&) = default;
};

struct CanonKeyHash {
    std::size_t operator()(const CanonKey& k) const noexcept
    {
        return std::hash<std::uint64_t>{}(k.code * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(k.n));
    }
};

/// Canonical representative of an isomorphism class and its automorphism count.
struct UnlabeledGraph {
    Graph canon;
    std::uint64_t code = 0;
    std::uint64_t autSize = 1;

    CanonKey key() const { return {canon.n(), code}; }
};

/// Full result of a canonical labelling run.
struct CanonicalForm {
    Graph canon;
    /// Adjacency bits of `canon` read in pairIndex order, first pair most significant.
    std::uint64_t code = 0;
    std::uint64_t autSize = 1;
    /// labeling[p] is the input vertex placed at canonical position p.
    std::vector<int> labeling;
    /// Input colour of each canonical position (all zero when uncoloured).
    std::vector<int> positionColours;

    CanonKey key() const { return {canon.n(), code}; }
};

/// Canonical form minimising the adjacency code over all vertex orders that
/// respect the colour-refined partition. Throws SizeCapExceeded above `cap`.
CanonicalForm canonicalForm(const Graph& g, int cap = kDefaultCanonCap);

/// Same with an initial vertex colouring; isomorphisms must preserve colours.
CanonicalForm canonicalForm(const Graph& g, std::span<const int> colours, int cap = kDefaultCanonCap);

UnlabeledGraph canonicalize(const Graph& g, int cap = kDefaultCanonCap);
CanonKey canonKey(const Graph& g, int cap = kDefaultCanonCap);

/// The canonical representative a key was computed from.
Graph graphFromKey(const CanonKey& key);

bool isomorphic(const Graph& a, const Graph& b);

/// Rooted isomorphism: some isomorphism maps rootA to rootB.
bool rootedIsomorphic(const Graph& a, int rootA, const Graph& b, int rootB);

} // namespace structura
