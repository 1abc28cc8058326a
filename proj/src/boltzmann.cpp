#include "structura/boltzmann.hpp"

#include "structura/error.hpp"
#include "structura/graph6.hpp"
#include "structura/graph_ops.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace structura {

namespace {

std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Smallest k with u < P(Po(mu) <= k).
std::uint64_t poissonInversion(double mu, double u)
{
    double p = std::exp(-mu);
    double cdf = p;
    std::uint64_t k = 0;
    while (u >= cdf && p > 0) {
        ++k;
        p *= mu / static_cast<double>(k);
        cdf += p;
    }
    return k;
}

BPTally emptyTally(const BPModel& model)
{
    BPTally t;
    const std::size_t w = model.weights.size();
    const std::size_t tracked = std::min(w, kTrackedWeights);
    t.kappaSum.assign(w, 0.0);
    t.kappaSquareSum.assign(w, 0.0);
    t.cross.assign(tracked, std::vector<double>(tracked, 0.0));
    return t;
}

void record(BPTally& t, const BPModel& model, const ComponentMultiset& m)
{
    ++t.samples;
    ++t.outcomes[m];
    std::vector<std::pair<std::size_t, double>> trackedHere;
    for (const auto& [key, count] : m.counts) {
        const auto it = model.index.find(key);
        if (it == model.index.end())
            continue;
        const auto k = static_cast<double>(count);
        t.kappaSum[it->second] += k;
        t.kappaSquareSum[it->second] += k * k;
        if (it->second < t.cross.size())
            trackedHere.emplace_back(it->second, k);
    }
    for (const auto& [i, ki] : trackedHere)
        for (const auto& [j, kj] : trackedHere)
            if (i < j)
                t.cross[i][j] += ki * kj;
}

BPTally tallyChunk(const BPModel& model, std::uint64_t chunk, std::uint64_t samples, std::uint64_t seed,
                   SampleTransform transform)
{
    BPTally t = emptyTally(model);
    SplitMix64 rng = SplitMix64::stream(seed, chunk);
    const std::uint64_t begin = chunk * kSampleChunk;
    const std::uint64_t end = std::min(samples, begin + kSampleChunk);
    for (std::uint64_t s = begin; s < end; ++s) {
        ComponentMultiset m = sampleBP(model, rng);
        record(t, model, transform ? transform(m) : m);
    }
    return t;
}

} // namespace

SplitMix64 SplitMix64::stream(std::uint64_t master, std::uint64_t index)
{
    return SplitMix64(mix64(master) ^ mix64(index * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL));
}

SplitMix64::result_type SplitMix64::operator()()
{
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
}

int ComponentMultiset::vertexCount() const
{
    int total = 0;
    for (const auto& [key, count] : counts)
        total += key.n * static_cast<int>(count);
    return total;
}

void ComponentMultiset::add(const CanonKey& key, std::uint64_t times)
{
    if (times > 0)
        counts[key] += times;
}

Graph ComponentMultiset::toGraph() const
{
    Graph g;
    for (const auto& [key, count] : counts) {
        const Graph h = graphFromKey(key);
        for (std::uint64_t i = 0; i < count; ++i)
            g = disjointUnion(g, h);
    }
    return g;
}

ComponentMultiset multisetOf(const Graph& g)
{
    ComponentMultiset m;
    for (VertexSet comp : componentSets(g))
        m.add(canonKey(g.induced(comp), kHardCanonCap));
    return m;
}

double BPModel::mu(const CanonKey& key) const
{
    const auto it = index.find(key);
    return it == index.end() ? 0.0 : weights[it->second].mu;
}

double BPModel::emptyProbability() const
{
    return std::exp(-truncatedC);
}

double BPModel::probability(const ComponentMultiset& m) const
{
    double p = emptyProbability();
    for (const auto& [key, count] : m.counts) {
        const double weight = mu(key);
        if (weight == 0)
            return 0;
        p *= std::exp(static_cast<double>(count) * std::log(weight) - std::lgamma(static_cast<double>(count) + 1));
    }
    return p;
}

BPModel buildBPModel(Census& census, double rho, int cutoff)
{
    const GraphClass& c = census.graphClass();
    if (!c.flags().decomposable)
        throw Error(ErrorKind::NotDecomposable, "Boltzmann Poisson model needs a decomposable class, got " + c.name());
    if (!std::isfinite(rho) || rho <= 0)
        throw Error(ErrorKind::InvalidRho, "rho must be finite and positive");
    if (cutoff < 0)
        throw Error(ErrorKind::InvalidArgs, "negative cutoff");
    if (cutoff > census.options().unlabeledCap || cutoff > kUnlabeledCap)
        throw Error(ErrorKind::SizeCapExceeded, "cutoff " + std::to_string(cutoff) + " exceeds the unlabelled cap");

    BPModel model;
    model.className = c.name();
    model.parameters = c.config().value("parameters", nlohmann::json::object());
    model.rho = rho;
    model.cutoff = cutoff;
    for (int n = 1; n <= cutoff; ++n) {
        double sizeMu = 0;
        for (const UnlabeledGraph& u : census.unlabeled(n)) {
            if (!isConnected(u.canon))
                continue;
            const double mu = std::pow(rho, n) / static_cast<double>(u.autSize);
            model.index.emplace(u.key(), model.weights.size());
            model.weights.push_back({u, mu});
            sizeMu += mu;
        }
        model.truncatedC += sizeMu;
        if (n == cutoff)
            model.lastSizeMu = sizeMu;
    }
    return model;
}

BPModel buildBPModel(const GraphClass& c, double rho, int cutoff)
{
    Census census(c);
    return buildBPModel(census, rho, cutoff);
}

ComponentMultiset sampleBP(const BPModel& model, SplitMix64& rng)
{
    ComponentMultiset m;
    if (model.weights.empty())
        return m;
    const std::uint64_t total = poissonInversion(model.truncatedC, rng.uniform());
    for (std::uint64_t i = 0; i < total; ++i) {
        double target = rng.uniform() * model.truncatedC;
        std::size_t pick = model.weights.size() - 1;
        for (std::size_t w = 0; w < model.weights.size(); ++w) {
            target -= model.weights[w].mu;
            if (target < 0) {
                pick = w;
                break;
            }
        }
        m.add(model.weights[pick].graph.key());
    }
    return m;
}

ComponentMultiset coreOfBP(const ComponentMultiset& s)
{
    ComponentMultiset out;
    for (const auto& [key, count] : s.counts) {
        const Graph core = core2(graphFromKey(key));
        if (!core.isNull())
            out.add(canonKey(core, kHardCanonCap), count);
    }
    return out;
}

void BPTally::merge(const BPTally& other)
{
    samples += other.samples;
    for (const auto& [m, count] : other.outcomes)
        outcomes[m] += count;
    for (std::size_t i = 0; i < kappaSum.size(); ++i) {
        kappaSum[i] += other.kappaSum[i];
        kappaSquareSum[i] += other.kappaSquareSum[i];
    }
    for (std::size_t i = 0; i < cross.size(); ++i)
        for (std::size_t j = 0; j < cross.size(); ++j)
            cross[i][j] += other.cross[i][j];
}

double BPTally::covariance(std::size_t i, std::size_t j) const
{
    const auto n = static_cast<double>(samples);
    if (i == j)
        return kappaSquareSum.at(i) / n - mean(i) * mean(i);
    const double sum = i < j ? cross.at(i).at(j) : cross.at(j).at(i);
    return sum / n - mean(i) * mean(j);
}

std::map<ComponentMultiset, double> BPTally::law() const
{
    std::map<ComponentMultiset, double> p;
    for (const auto& [m, count] : outcomes)
        p[m] = static_cast<double>(count) / static_cast<double>(samples);
    return p;
}

BPTally tallyBPSerial(const BPModel& model, std::uint64_t samples, std::uint64_t seed, SampleTransform transform)
{
    BPTally total = emptyTally(model);
    const std::uint64_t chunks = (samples + kSampleChunk - 1) / kSampleChunk;
    for (std::uint64_t c = 0; c < chunks; ++c)
        total.merge(tallyChunk(model, c, samples, seed, transform));
    return total;
}

BPTally tallyBPParallel(const BPModel& model, std::uint64_t samples, std::uint64_t seed, SampleTransform transform)
{
    const std::uint64_t chunks = (samples + kSampleChunk - 1) / kSampleChunk;
    std::vector<BPTally> parts(chunks);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c)
        parts[static_cast<std::size_t>(c)] = tallyChunk(model, static_cast<std::uint64_t>(c), samples, seed, transform);
    BPTally total = emptyTally(model);
    for (const BPTally& part : parts)
        total.merge(part);
    return total;
}

double totalVariation(const std::map<ComponentMultiset, double>& p, const std::map<ComponentMultiset, double>& q)
{
    double sum = 0;
    for (const auto& [m, pm] : p) {
        const auto it = q.find(m);
        sum += std::abs(pm - (it == q.end() ? 0.0 : it->second));
    }
    for (const auto& [m, qm] : q)
        if (!p.contains(m))
            sum += qm;
    return 0.5 * sum;
}

double totalVariationToBP(const std::map<ComponentMultiset, double>& p, const BPModel& model)
{
    // Mass the model puts outside the support of p counts in full.
    double sum = 0;
    double covered = 0;
    for (const auto& [m, pm] : p) {
        const double qm = model.probability(m);
        covered += qm;
        sum += std::abs(pm - qm);
    }
    return 0.5 * (sum + std::max(0.0, 1.0 - covered));
}

double coreWeightSum(Census& census, const Graph& h, double rho, int cutoff)
{
    const CanonKey target = canonKey(h, kHardCanonCap);
    double sum = 0;
    for (int n = h.n(); n <= cutoff; ++n) {
        for (const UnlabeledGraph& u : census.unlabeled(n)) {
            if (!isConnected(u.canon) || coreSize(u.canon) != h.n())
                continue;
            if (canonKey(core2(u.canon), kHardCanonCap) == target)
                sum += std::pow(rho, n) / static_cast<double>(u.autSize);
        }
    }
    return sum;
}

std::map<CanonKey, double> coreWeightSums(Census& census, double rho, int cutoff)
{
    std::map<CanonKey, double> sums;
    for (int n = 1; n <= cutoff; ++n) {
        for (const UnlabeledGraph& u : census.unlabeled(n)) {
            if (!isConnected(u.canon))
                continue;
            const Graph core = core2(u.canon);
            if (!core.isNull())
                sums[canonKey(core, kHardCanonCap)] += std::pow(rho, n) / static_cast<double>(u.autSize);
        }
    }
    return sums;
}

nlohmann::json bpLogRecord(const BPModel& model, std::uint64_t seed, std::uint64_t index,
                           const ComponentMultiset& sample)
{
    nlohmann::json components = nlohmann::json::array();
    for (const auto& [key, count] : sample.counts)
        components.push_back({{"graph6", toGraph6(graphFromKey(key))}, {"count", count}});
    return {{"seed", seed},
            {"index", index},
            {"model", {{"class", model.className}, {"rho", model.rho}, {"cutoff", model.cutoff}}},
            {"sample", components}};
}

void writeBPLog(std::ostream& out, const BPModel& model, std::uint64_t seed, std::uint64_t samples)
{
    for (std::uint64_t i = 0; i < samples; ++i) {
        SplitMix64 rng = SplitMix64::stream(seed, i);
        out << bpLogRecord(model, seed, i, sampleBP(model, rng)).dump() << '\n';
    }
}

} // namespace structura
