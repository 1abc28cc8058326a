#pragma once

#include "structura/canonical.hpp"
#include "structura/census.hpp"

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <vector>

#include <json.hpp>

namespace structura {

/// SplitMix64 generator. `stream` derives independent generators from one
/// master seed, which keeps parallel sampling reproducible.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}
    static SplitMix64 stream(std::uint64_t master, std::uint64_t index);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()();
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Component counts kappa(R, H) keyed by the canonical key of H.
struct ComponentMultiset {
    std::map<CanonKey, std::uint64_t> counts;

    bool empty() const { return counts.empty(); }
    int vertexCount() const;
    void add(const CanonKey& key, std::uint64_t times = 1);
    /// Disjoint union of the components in key order.
    Graph toGraph() const;

    friend auto operator<=>(const ComponentMultiset&, const ComponentMultiset&) = default;
    friend bool operator==(const ComponentMultiset&, const ComponentMultiset&) = default;
};

/// Components of g, canonicalised.
ComponentMultiset multisetOf(const Graph& g);

struct BPWeight {
    UnlabeledGraph graph;
    /// rho^{v(H)} / aut(H).
    double mu = 0;
};

/// Boltzmann Poisson model truncated to components with at most `cutoff`
/// vertices.
struct BPModel {
    std::string className;
    nlohmann::json parameters;
    double rho = 0;
    int cutoff = 0;
    std::vector<BPWeight> weights;
    /// Sum of mu over the included components: the truncated C(rho).
    double truncatedC = 0;
    /// Contribution of the components with exactly `cutoff` vertices.
    double lastSizeMu = 0;
    std::map<CanonKey, std::size_t> index;

    /// mu(H) for a connected H, zero when H is not in the model.
    double mu(const CanonKey& key) const;
    /// P(R = empty) = exp(-truncated C).
    double emptyProbability() const;
    /// P(R = m) = prod_H exp(-mu) mu^kappa / kappa!.
    double probability(const ComponentMultiset& m) const;
};

/// Enumerates the connected members up to `cutoff` through the census.
/// Throws NotDecomposable, SizeCapExceeded, or InvalidRho.
BPModel buildBPModel(Census& census, double rho, int cutoff);
BPModel buildBPModel(const GraphClass& c, double rho, int cutoff);

/// One draw of R. The total component count is Poisson(truncated C) by
/// inversion and each component picks H with probability mu(H) / C, which
/// gives independent Poisson(mu(H)) counts.
ComponentMultiset sampleBP(const BPModel& model, SplitMix64& rng);

/// Core of every component; null cores are dropped.
ComponentMultiset coreOfBP(const ComponentMultiset& s);

/// Summary of many draws. Covariances are tracked for the first
/// `trackedWeights` weights of the model.
struct BPTally {
    std::uint64_t samples = 0;
    std::map<ComponentMultiset, std::uint64_t> outcomes;
    std::vector<double> kappaSum;
    std::vector<double> kappaSquareSum;
    /// cross[i][j] = sum of kappa_i kappa_j for tracked i < j.
    std::vector<std::vector<double>> cross;

    void merge(const BPTally& other);
    /// Empirical covariance of kappa_i and kappa_j.
    double covariance(std::size_t i, std::size_t j) const;
    double mean(std::size_t i) const { return kappaSum.at(i) / static_cast<double>(samples); }
    std::map<ComponentMultiset, double> law() const;
};

inline constexpr std::size_t kTrackedWeights = 16;
inline constexpr std::uint64_t kSampleChunk = 4096;

/// Draws in chunks of kSampleChunk, chunk c from SplitMix64::stream(seed, c).
/// `transform` (if given) maps each draw before it is tallied.
using SampleTransform = ComponentMultiset (*)(const ComponentMultiset&);
BPTally tallyBPSerial(const BPModel& model, std::uint64_t samples, std::uint64_t seed,
                      SampleTransform transform = nullptr);
/// OpenMP over chunks; identical result to the serial tally.
BPTally tallyBPParallel(const BPModel& model, std::uint64_t samples, std::uint64_t seed,
                        SampleTransform transform = nullptr);

/// Total variation distance between two laws on multisets.
double totalVariation(const std::map<ComponentMultiset, double>& p, const std::map<ComponentMultiset, double>& q);
/// Total variation distance from a finitely supported law to the model's law.
double totalVariationToBP(const std::map<ComponentMultiset, double>& p, const BPModel& model);

/// Sum of mu_rho(g) over connected unlabelled members g of the census with
/// v(g) <= cutoff whose core is isomorphic to h.
double coreWeightSum(Census& census, const Graph& h, double rho, int cutoff);
/// The same sums for every core at once, keyed by the core.
std::map<CanonKey, double> coreWeightSums(Census& census, double rho, int cutoff);

/// One JSON-lines record: {seed, index, model: {class, rho, cutoff}, sample: [{graph6, count}]}.
nlohmann::json bpLogRecord(const BPModel& model, std::uint64_t seed, std::uint64_t index,
                           const ComponentMultiset& sample);
/// Writes `samples` records; record i is drawn from SplitMix64::stream(seed, i).
void writeBPLog(std::ostream& out, const BPModel& model, std::uint64_t seed, std::uint64_t samples);

} // namespace structura
