#pragma once

#include "structura/canonical.hpp"
#include "structura/graph.hpp"
#include "structura/graph_class.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace structura {

using BigInt = mpz_class;
using Rational = mpq_class;

inline constexpr int kLabeledCap = 7;
inline constexpr int kLabeledOptInCap = 8;
inline constexpr int kUnlabeledCap = 8;

/// One bit per edge mask on [n]: bit m is set iff the graph with edge mask m
/// is a member. Supports rank/select for uniform sampling.
class MembershipBitmap {
public:
    MembershipBitmap() = default;
    MembershipBitmap(int n, std::vector<std::uint64_t> words);

    int n() const { return n_; }
    std::uint64_t size() const { return std::uint64_t{1} << pairCount(n_); }
    bool contains(std::uint64_t mask) const { return (words_[mask >> 6] >> (mask & 63)) & 1U; }
    std::uint64_t count() const { return total_; }
    /// Edge mask of the member with the given rank in increasing mask order.
    std::uint64_t select(std::uint64_t rank) const;
    const std::vector<std::uint64_t>& words() const { return words_; }

    friend bool operator==(const MembershipBitmap& a, const MembershipBitmap& b)
    {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }

private:
    int n_ = 0;
    std::vector<std::uint64_t> words_;
    /// prefix_[i] = members in words before i.
    std::vector<std::uint64_t> prefix_;
    std::uint64_t total_ = 0;
};

/// Reference kernel: one thread, masks in increasing order.
MembershipBitmap buildMembershipSerial(const GraphClass& c, int n);
/// OpenMP kernel: 64-mask words distributed over threads.
MembershipBitmap buildMembershipParallel(const GraphClass& c, int n);

/// Aggregates over all labelled members on [n].
struct LevelStats {
    int n = 0;
    BigInt count;
    BigInt connected;
    /// byCoreSize[k] = members whose 2-core has k vertices.
    std::vector<BigInt> byCoreSize;
    /// Sum over members of frag(g).
    BigInt fragSum;
    /// Members whose fragment is isomorphic to the keyed graph.
    std::map<CanonKey, BigInt> fragCounts;
    std::map<CanonKey, UnlabeledGraph> fragShapes;
};

struct CensusOptions {
    int labeledCap = kLabeledCap;
    /// Raise the labelled cap to 8 (a 2^28-bit bitmap per class).
    bool allowLabeledEight = false;
    int unlabeledCap = kUnlabeledCap;
    bool parallel = true;
    /// Directory for the JSON count cache; STRUCTURA_CACHE_DIR overrides it.
    std::optional<std::filesystem::path> cacheDir;
};

/// Exact per-n counts for one class, computed on demand and memoised.
/// Methods lock internally, so a Census may be shared between threads.
class Census {
public:
    explicit Census(GraphClass c, CensusOptions options = {});

    const GraphClass& graphClass() const { return class_; }
    const CensusOptions& options() const { return options_; }
    int labeledCap() const;

    /// |G_n|. Throws SizeCapExceeded above the labelled cap.
    BigInt countLabeled(int n);
    /// Members on [n] whose core has exactly k vertices.
    BigInt countByCoreSize(int n, int k);
    const MembershipBitmap& bitmap(int n);
    const LevelStats& stats(int n);

    /// Members on n vertices up to isomorphism, in catalogue order.
    const std::vector<UnlabeledGraph>& unlabeled(int n);
    std::map<int, std::vector<UnlabeledGraph>> unlabeledInventory(int nMax);

    /// Uniform member on [n]. Throws EmptyClassAtN when there is none.
    Graph sampleUniform(int n, std::mt19937_64& rng);

    /// Where the count cache for n lives, if caching is enabled.
    std::optional<std::filesystem::path> cachePath(int n) const;

private:
    void requireLabeled(int n) const;

    GraphClass class_;
    CensusOptions options_;
    std::recursive_mutex mutex_;
    std::map<int, BigInt> counts_;
    std::map<int, std::unique_ptr<MembershipBitmap>> bitmaps_;
    std::map<int, std::unique_ptr<LevelStats>> stats_;
    std::map<int, std::unique_ptr<std::vector<UnlabeledGraph>>> unlabeled_;
};

/// Convenience one-shot count.
BigInt countLabeled(const GraphClass& c, int n);

BigInt factorial(int n);
BigInt binomial(int n, int k);

/// r_n = n |G_{n-1}| / |G_n| and the growth estimates (|G_n|/n!)^{1/n}.
struct RatioSequence {
    std::map<int, Rational> values;
    std::map<int, double> growthEstimates;
    /// n where |G_n| = 0, so r_n is undefined.
    std::vector<int> undefinedAt;
};
RatioSequence ratioSequence(Census& census, int nMax);

/// n in [1, nMax] where (|G_n|/n!)^{1/n} >= (1 - eta)/rho. Throws InvalidRho
/// unless rho is finite and positive.
std::map<int, bool> richnessDiagnostic(Census& census, int nMax, double rho, double eta);

/// Forests of rooted trees on [n] with a given set of k roots: k n^{n-1-k}.
/// Throws InvalidArgs unless 1 <= k <= n.
BigInt rootedForestCount(int n, int k);

/// Cache file helpers; the format is {class, parameters, n, labeledCount,
/// unlabeled: [{graph6, aut}]}.
struct CensusRecord {
    std::string className;
    nlohmann::json parameters;
    int n = 0;
    BigInt labeledCount;
    std::vector<UnlabeledGraph> unlabeled;
};
nlohmann::json toJson(const CensusRecord& record);
CensusRecord censusRecordFromJson(const nlohmann::json& j);

/// Resolves the cache directory: STRUCTURA_CACHE_DIR wins over `fallback`.
std::optional<std::filesystem::path> resolveCacheDir(const std::optional<std::filesystem::path>& fallback);

} // namespace structura
