#include "structura/census.hpp"

#include "structura/catalog.hpp"
#include "structura/error.hpp"
#include "structura/graph6.hpp"
#include "structura/graph_ops.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <string>
#include <unordered_map>

#include <omp.h>

namespace structura {

MembershipBitmap::MembershipBitmap(int n, std::vector<std::uint64_t> words) : n_(n), words_(std::move(words))
{
    prefix_.resize(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) {
        prefix_[i] = total_;
        total_ += static_cast<std::uint64_t>(std::popcount(words_[i]));
    }
}

std::uint64_t MembershipBitmap::select(std::uint64_t rank) const
{
    if (rank >= total_)
        throw Error(ErrorKind::OutOfRange, "rank beyond member count");
    // Last word whose prefix count is <= rank.
    auto it = std::upper_bound(prefix_.begin(), prefix_.end(), rank);
    const std::size_t w = static_cast<std::size_t>(it - prefix_.begin()) - 1;
    std::uint64_t bits = words_[w];
    for (std::uint64_t skip = rank - prefix_[w]; skip > 0; --skip)
        bits &= bits - 1;
    return (static_cast<std::uint64_t>(w) << 6) | static_cast<std::uint64_t>(std::countr_zero(bits));
}

namespace {

BigInt toBig(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

std::uint64_t membershipWord(const GraphClass& c, int n, std::uint64_t word, std::uint64_t limit)
{
    std::uint64_t bits = 0;
    const std::uint64_t first = word << 6;
    for (std::uint64_t b = 0; b < 64 && first + b < limit; ++b) {
        const std::uint64_t mask = first + b;
        const auto quick = c.quickDecide(n, std::popcount(mask));
        const bool in = quick ? *quick : c.member(Graph::fromEdgeMask(n, mask));
        bits |= static_cast<std::uint64_t>(in) << b;
    }
    return bits;
}

void checkKernelSize(int n)
{
    if (n < 0 || n > kLabeledOptInCap)
        throw Error(ErrorKind::SizeCapExceeded, "labelled enumeration limited to " + std::to_string(kLabeledOptInCap) +
                                                    " vertices");
}

} // namespace

MembershipBitmap buildMembershipSerial(const GraphClass& c, int n)
{
    checkKernelSize(n);
    const std::uint64_t limit = std::uint64_t{1} << pairCount(n);
    std::vector<std::uint64_t> words((limit + 63) / 64);
    for (std::uint64_t w = 0; w < words.size(); ++w)
        words[w] = membershipWord(c, n, w, limit);
    return MembershipBitmap(n, std::move(words));
}

MembershipBitmap buildMembershipParallel(const GraphClass& c, int n)
{
    checkKernelSize(n);
    const std::uint64_t limit = std::uint64_t{1} << pairCount(n);
    const auto count = static_cast<std::int64_t>((limit + 63) / 64);
    std::vector<std::uint64_t> words(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 256)
    for (std::int64_t w = 0; w < count; ++w)
        words[static_cast<std::size_t>(w)] = membershipWord(c, n, static_cast<std::uint64_t>(w), limit);
    return MembershipBitmap(n, std::move(words));
}

BigInt factorial(int n)
{
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

BigInt binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

namespace {

struct FragKeyHash {
    std::size_t operator()(const std::pair<int, std::uint64_t>& p) const noexcept
    {
        return std::hash<std::uint64_t>{}(p.second * 31 + static_cast<std::uint64_t>(p.first));
    }
};

/// Per-thread partial aggregates with machine-word counters.
struct PartialStats {
    std::uint64_t count = 0;
    std::uint64_t connected = 0;
    std::vector<std::uint64_t> byCore;
    std::uint64_t fragSum = 0;
    std::unordered_map<std::pair<int, std::uint64_t>, std::uint64_t, FragKeyHash> fragByLabelled;
};

LevelStats computeStats(const MembershipBitmap& bits)
{
    const int n = bits.n();
    const auto wordCount = static_cast<std::int64_t>(bits.words().size());
    std::vector<PartialStats> partials(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
    {
        PartialStats& mine = partials[static_cast<std::size_t>(omp_get_thread_num())];
        mine.byCore.assign(static_cast<std::size_t>(n) + 1, 0);
#pragma omp for schedule(dynamic, 256)
        for (std::int64_t w = 0; w < wordCount; ++w) {
            for (std::uint64_t word = bits.words()[static_cast<std::size_t>(w)]; word; word &= word - 1) {
                const std::uint64_t mask = (static_cast<std::uint64_t>(w) << 6) | static_cast<std::uint64_t>(std::countr_zero(word));
                const Graph g = Graph::fromEdgeMask(n, mask);
                ++mine.count;
                mine.connected += (n > 0 && isConnected(g)) ? 1 : 0;
                ++mine.byCore[static_cast<std::size_t>(coreSize(g))];
                const Graph frag = fragment(g);
                mine.fragSum += static_cast<std::uint64_t>(frag.n());
                ++mine.fragByLabelled[{frag.n(), frag.edgeMask()}];
            }
        }
    }
    LevelStats out;
    out.n = n;
    out.byCoreSize.assign(static_cast<std::size_t>(n) + 1, 0);
    std::unordered_map<std::pair<int, std::uint64_t>, std::uint64_t, FragKeyHash> fragByLabelled;
    for (const PartialStats& p : partials) {
        out.count += toBig(p.count);
        out.connected += toBig(p.connected);
        out.fragSum += toBig(p.fragSum);
        for (std::size_t k = 0; k < p.byCore.size(); ++k)
            out.byCoreSize[k] += toBig(p.byCore[k]);
        for (const auto& [key, value] : p.fragByLabelled)
            fragByLabelled[key] += value;
    }
    for (const auto& [key, value] : fragByLabelled) {
        const UnlabeledGraph shape = canonicalize(Graph::fromEdgeMask(key.first, key.second));
        out.fragCounts[shape.key()] += toBig(value);
        out.fragShapes.try_emplace(shape.key(), shape);
    }
    return out;
}

std::string sanitize(const std::string& name)
{
    std::string out;
    for (char ch : name)
        out += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
    return out;
}

} // namespace

std::optional<std::filesystem::path> resolveCacheDir(const std::optional<std::filesystem::path>& fallback)
{
    if (const char* env = std::getenv("STRUCTURA_CACHE_DIR"); env && *env)
        return std::filesystem::path(env);
    return fallback;
}

nlohmann::json toJson(const CensusRecord& record)
{
    nlohmann::json unlabeled = nlohmann::json::array();
    for (const UnlabeledGraph& u : record.unlabeled)
        unlabeled.push_back({{"graph6", toGraph6(u.canon)}, {"aut", u.autSize}});
    return {{"class", record.className},
            {"parameters", record.parameters},
            {"n", record.n},
            {"labeledCount", record.labeledCount.get_str()},
            {"unlabeled", unlabeled}};
}

CensusRecord censusRecordFromJson(const nlohmann::json& j)
{
    try {
        CensusRecord r;
        r.className = j.at("class").get<std::string>();
        r.parameters = j.value("parameters", nlohmann::json());
        r.n = j.at("n").get<int>();
        r.labeledCount = BigInt(j.at("labeledCount").get<std::string>());
        for (const auto& entry : j.at("unlabeled")) {
            const Graph g = fromGraph6(entry.at("graph6").get<std::string>());
            UnlabeledGraph u = canonicalize(g);
            if (u.autSize != entry.at("aut").get<std::uint64_t>())
                throw Error(ErrorKind::ParseError, "cached automorphism count disagrees with the graph");
            r.unlabeled.push_back(std::move(u));
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("malformed census record: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw Error(ErrorKind::ParseError, std::string("malformed census count: ") + e.what());
    }
}

Census::Census(GraphClass c, CensusOptions options) : class_(std::move(c)), options_(std::move(options))
{
    options_.cacheDir = resolveCacheDir(options_.cacheDir);
}

int Census::labeledCap() const
{
    return options_.allowLabeledEight ? std::max(options_.labeledCap, kLabeledOptInCap)
                                      : std::min(options_.labeledCap, kLabeledCap);
}

void Census::requireLabeled(int n) const
{
    if (n < 0)
        throw Error(ErrorKind::InvalidArgs, "negative vertex count");
    if (n > labeledCap())
        throw Error(ErrorKind::SizeCapExceeded, "labelled census limited to n <= " + std::to_string(labeledCap()) +
                                                    (labeledCap() < kLabeledOptInCap ? " (n = 8 is opt-in)" : ""));
}

std::optional<std::filesystem::path> Census::cachePath(int n) const
{
    if (!options_.cacheDir)
        return std::nullopt;
    return *options_.cacheDir / (sanitize(class_.name()) + ".n" + std::to_string(n) + ".json");
}

const MembershipBitmap& Census::bitmap(int n)
{
    requireLabeled(n);
    std::lock_guard lock(mutex_);
    auto& slot = bitmaps_[n];
    if (!slot)
        slot = std::make_unique<MembershipBitmap>(options_.parallel ? buildMembershipParallel(class_, n)
                                                                    : buildMembershipSerial(class_, n));
    return *slot;
}

BigInt Census::countLabeled(int n)
{
    requireLabeled(n);
    std::lock_guard lock(mutex_);
    if (auto it = counts_.find(n); it != counts_.end())
        return it->second;
    const auto path = cachePath(n);
    if (path && std::filesystem::exists(*path)) {
        try {
            std::ifstream in(*path);
            const CensusRecord r = censusRecordFromJson(nlohmann::json::parse(in));
            if (r.className == class_.name() && r.parameters == class_.config() && r.n == n) {
                counts_[n] = r.labeledCount;
                if (!unlabeled_[n])
                    unlabeled_[n] = std::make_unique<std::vector<UnlabeledGraph>>(r.unlabeled);
                return r.labeledCount;
            }
        } catch (const std::exception&) {
            // A damaged cache entry is recomputed and overwritten.
        }
    }
    const BigInt count(std::to_string(bitmap(n).count()));
    counts_[n] = count;
    if (path) {
        CensusRecord r{class_.name(), class_.config(), n, count, {}};
        if (n <= std::min(options_.unlabeledCap, kUnlabeledCap))
            r.unlabeled = unlabeled(n);
        std::filesystem::create_directories(path->parent_path());
        std::ofstream out(*path);
        out << toJson(r).dump(1) << '\n';
    }
    return count;
}

const LevelStats& Census::stats(int n)
{
    requireLabeled(n);
    std::lock_guard lock(mutex_);
    auto& slot = stats_[n];
    if (!slot)
        slot = std::make_unique<LevelStats>(computeStats(bitmap(n)));
    return *slot;
}

BigInt Census::countByCoreSize(int n, int k)
{
    if (k < 0 || k > n)
        throw Error(ErrorKind::InvalidArgs, "core size must lie in [0, n]");
    return stats(n).byCoreSize[static_cast<std::size_t>(k)];
}

const std::vector<UnlabeledGraph>& Census::unlabeled(int n)
{
    if (n < 0 || n > std::min(options_.unlabeledCap, kUnlabeledCap))
        throw Error(ErrorKind::SizeCapExceeded, "unlabelled inventory limited to n <= " +
                                                    std::to_string(std::min(options_.unlabeledCap, kUnlabeledCap)));
    std::lock_guard lock(mutex_);
    auto& slot = unlabeled_[n];
    if (!slot) {
        auto members = std::make_unique<std::vector<UnlabeledGraph>>();
        for (const UnlabeledGraph& u : allGraphs(n))
            if (class_.member(u.canon))
                members->push_back(u);
        slot = std::move(members);
    }
    return *slot;
}

std::map<int, std::vector<UnlabeledGraph>> Census::unlabeledInventory(int nMax)
{
    std::map<int, std::vector<UnlabeledGraph>> out;
    for (int n = 0; n <= nMax; ++n)
        out[n] = unlabeled(n);
    return out;
}

Graph Census::sampleUniform(int n, std::mt19937_64& rng)
{
    const MembershipBitmap& bits = bitmap(n);
    if (bits.count() == 0)
        throw Error(ErrorKind::EmptyClassAtN, class_.name() + " has no members on " + std::to_string(n) + " vertices");
    std::uniform_int_distribution<std::uint64_t> pick(0, bits.count() - 1);
    return Graph::fromEdgeMask(n, bits.select(pick(rng)));
}

BigInt countLabeled(const GraphClass& c, int n)
{
    Census census(c);
    return census.countLabeled(n);
}

RatioSequence ratioSequence(Census& census, int nMax)
{
    RatioSequence out;
    BigInt previous = census.countLabeled(0);
    for (int n = 1; n <= nMax; ++n) {
        const BigInt current = census.countLabeled(n);
        if (current == 0) {
            out.undefinedAt.push_back(n);
        } else {
            Rational r(BigInt(n) * previous, current);
            r.canonicalize();
            out.values[n] = r;
            const Rational perFactorial(current, factorial(n));
            out.growthEstimates[n] = std::pow(perFactorial.get_d(), 1.0 / n);
        }
        previous = current;
    }
    return out;
}

std::map<int, bool> richnessDiagnostic(Census& census, int nMax, double rho, double eta)
{
    if (!std::isfinite(rho) || rho <= 0)
        throw Error(ErrorKind::InvalidRho, "richness needs a finite positive rho");
    if (!(eta >= 0 && eta <= 1))
        throw Error(ErrorKind::InvalidArgs, "eta must lie in [0, 1]");
    std::map<int, bool> out;
    const RatioSequence seq = ratioSequence(census, nMax);
    for (int n = 1; n <= nMax; ++n) {
        auto it = seq.growthEstimates.find(n);
        out[n] = it != seq.growthEstimates.end() && it->second >= (1 - eta) / rho;
    }
    return out;
}

BigInt rootedForestCount(int n, int k)
{
    if (k < 1 || k > n)
        throw Error(ErrorKind::InvalidArgs, "rooted forests need 1 <= k <= n");
    if (k == n)
        return 1;
    BigInt power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(n - 1 - k));
    return BigInt(k) * power;
}

} // namespace structura
