#include "structura/canonical.hpp"

#include "structura/error.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace structura {

namespace {

using Signature = std::array<int, kHardCanonCap + 1>;

/// Colour refinement to a stable partition. Colours come out as 0..m-1 with
/// an order that depends only on the isomorphism type of (g, initial colours).
int refine(const Graph& g, std::span<int> colour)
{
    const int n = g.n();
    // Rank the initial colours first so arbitrary integer inputs are allowed.
    {
        std::vector<int> distinct(colour.begin(), colour.end());
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (int v = 0; v < n; ++v)
            colour[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), colour[v]) - distinct.begin());
    }
    int m = 0;
    for (int v = 0; v < n; ++v)
        m = std::max(m, colour[v] + 1);

    std::array<Signature, kHardCanonCap> sig{};
    std::array<Signature, kHardCanonCap> sorted{};
    while (true) {
        for (int v = 0; v < n; ++v) {
            sig[v].fill(0);
            sig[v][0] = colour[v];
            for (VertexSet nb = g.neighbours(v); nb; nb &= nb - 1)
                ++sig[v][1 + colour[std::countr_zero(nb)]];
        }
        std::copy(sig.begin(), sig.begin() + n, sorted.begin());
        std::sort(sorted.begin(), sorted.begin() + n);
        int distinct = static_cast<int>(std::unique(sorted.begin(), sorted.begin() + n) - sorted.begin());
        for (int v = 0; v < n; ++v)
            colour[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.begin() + distinct, sig[v]) - sorted.begin());
        if (distinct == m)
            return m;
        m = distinct;
    }
}

struct Search {
    const Graph& g;
    int n;
    int totalBits;
    std::array<int, kHardCanonCap> colourAt{};
    std::array<VertexSet, kHardCanonCap> cellMask{};
    std::array<int, kHardCanonCap> perm{};
    std::array<int, kHardCanonCap> bestPerm{};
    VertexSet used = 0;
    bool haveBest = false;
    std::uint64_t best = 0;
    std::uint64_t count = 0;

    void run(int p, std::uint64_t prefix)
    {
        if (p == n) {
            if (!haveBest || prefix < best) {
                haveBest = true;
                best = prefix;
                count = 1;
                bestPerm = perm;
            } else if (prefix == best) {
                ++count;
            }
            return;
        }
        const int bitsAfter = (p + 1) * p / 2;
        for (VertexSet cand = cellMask[colourAt[p]] & ~used; cand; cand &= cand - 1) {
            const int v = std::countr_zero(cand);
            const VertexSet row = g.neighbours(v);
            std::uint64_t block = 0;
            for (int i = 0; i < p; ++i)
                block = (block << 1) | ((row >> perm[i]) & 1U);
            const std::uint64_t next = (prefix << p) | block;
            if (haveBest && next > (best >> (totalBits - bitsAfter)))
                continue;
            perm[p] = v;
            used |= singleton(v);
            run(p + 1, next);
            used &= ~singleton(v);
        }
    }
};

} // namespace

CanonicalForm canonicalForm(const Graph& g, std::span<const int> colours, int cap)
{
    const int n = g.n();
    if (n > cap || n > kHardCanonCap)
        throw Error(ErrorKind::SizeCapExceeded,
                    "canonical labelling limited to " + std::to_string(std::min(cap, kHardCanonCap)) + " vertices, got " + std::to_string(n));

    std::vector<int> colour(colours.begin(), colours.end());
    if (colour.empty())
        colour.assign(n, 0);
    const std::vector<int> inputColour = colour;

    CanonicalForm out;
    if (n == 0)
        return out;

    const int m = refine(g, colour);

    Search s{g, n, pairCount(n)};
    std::vector<int> cellSize(m, 0);
    for (int v = 0; v < n; ++v) {
        s.cellMask[colour[v]] |= singleton(v);
        ++cellSize[colour[v]];
    }
    for (int c = 0, p = 0; c < m; ++c)
        for (int k = 0; k < cellSize[c]; ++k)
            s.colourAt[p++] = c;
    s.run(0, 0);

    out.code = s.best;
    out.autSize = s.count;
    out.labeling.assign(s.bestPerm.begin(), s.bestPerm.begin() + n);
    std::vector<int> position(n);
    for (int p = 0; p < n; ++p)
        position[out.labeling[p]] = p;
    out.canon = g.relabel(position);
    out.positionColours.resize(n);
    for (int p = 0; p < n; ++p)
        out.positionColours[p] = inputColour[out.labeling[p]];
    return out;
}

CanonicalForm canonicalForm(const Graph& g, int cap)
{
    return canonicalForm(g, std::span<const int>{}, cap);
}

UnlabeledGraph canonicalize(const Graph& g, int cap)
{
    CanonicalForm f = canonicalForm(g, cap);
    return {std::move(f.canon), f.code, f.autSize};
}

CanonKey canonKey(const Graph& g, int cap)
{
    return canonicalForm(g, cap).key();
}

Graph graphFromKey(const CanonKey& key)
{
    const int pairs = pairCount(key.n);
    Graph g(key.n);
    for (int j = 1; j < key.n; ++j)
        for (int i = 0; i < j; ++i)
            if ((key.code >> (pairs - 1 - pairIndex(i, j))) & 1U)
                g.addEdge(i, j);
    return g;
}

bool isomorphic(const Graph& a, const Graph& b)
{
    if (a.n() != b.n() || a.edgeCount() != b.edgeCount())
        return false;
    return canonKey(a, kHardCanonCap) == canonKey(b, kHardCanonCap);
}

bool rootedIsomorphic(const Graph& a, int rootA, const Graph& b, int rootB)
{
    if (a.n() != b.n() || a.edgeCount() != b.edgeCount() || a.degree(rootA) != b.degree(rootB))
        return false;
    std::vector<int> ca(a.n(), 0), cb(b.n(), 0);
    ca[rootA] = 1;
    cb[rootB] = 1;
    const CanonicalForm fa = canonicalForm(a, ca, kHardCanonCap);
    const CanonicalForm fb = canonicalForm(b, cb, kHardCanonCap);
    return fa.code == fb.code && fa.positionColours == fb.positionColours;
}

} // namespace structura
