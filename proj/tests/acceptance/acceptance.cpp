// Acceptance criteria 1-14. `acceptance N` runs one criterion, no argument
// runs them all. One PASS/FAIL line per criterion; exit status 1 on any FAIL.

#include "structura/boltzmann.hpp"
#include "structura/census.hpp"
#include "structura/egf.hpp"
#include "structura/graph_ops.hpp"
#include "structura/lab.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>

using namespace structura;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream measured;

    void require(bool condition, const std::string& what)
    {
        if (!condition && ok) {
            ok = false;
            measured << " first failure: " << what << ";";
        }
    }
};

Census& census(const std::string& expr)
{
    static std::map<std::string, std::unique_ptr<Census>> pool;
    auto& slot = pool[expr];
    if (!slot)
        slot = std::make_unique<Census>(builtinClass(expr));
    return *slot;
}

std::string str(double x)
{
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6g", x);
    return buffer;
}

bool sameSeries(const Series& a, const Series& b)
{
    if (a.order() != b.order())
        return false;
    for (int n = 0; n <= a.order(); ++n)
        if (a[n] != b[n])
            return false;
    return true;
}

Series trimmedTo(const Series& s, int k)
{
    Series out(s.order());
    out.set(k, s[k]);
    return out;
}

void exponentialFormula(Outcome& out)
{
    for (const char* cls : {"forests", "planar"}) {
        const Series g = classSeries(census(cls), 7);
        const Series c = classSeries(census(std::string("connectedOf(") + cls + ")"), 7);
        out.require(sameSeries(seriesExp(c), g), std::string("exp(C) != G for ") + cls);
        out.measured << cls << " G_7 = " << census(cls).countLabeled(7) << "; ";
    }
}

void compositionIdentities(Outcome& out)
{
    const int order = 7;
    const Series t = rootedTreeSeries(order);
    const Series f = classSeries(census("forests"), order);
    const Series trees = classSeries(census("trees"), order);
    for (const std::string cls : {"planar", "excludedMinors(diamond)"}) {
        Census& g = census(cls);
        const Series gs = classSeries(g, order);
        const Series core = classSeries(census("minDegree2Of(" + cls + ")"), order);
        out.require(sameSeries(seriesMul(seriesCompose(core, t), f), gs), "G decomposition for " + cls);

        // The same product refined by core size: each term of the core series
        // accounts for exactly the members with that core size.
        for (int k = 0; k <= order; ++k) {
            const Series part = seriesMul(seriesCompose(trimmedTo(core, k), t), f);
            for (int n = 0; n <= order; ++n) {
                Rational expected(k <= n ? g.countByCoreSize(n, k) : BigInt(0), factorial(n));
                expected.canonicalize();
                out.require(part[n] == expected, cls + " stratum n=" + std::to_string(n) + " k=" + std::to_string(k));
            }
        }

        const Series conn = classSeries(census("connectedOf(" + cls + ")"), order);
        const Series connCore = classSeries(census("minDegree2Of(connectedOf(" + cls + "))"), order);
        out.require(sameSeries(seriesAdd(seriesCompose(connCore, t), trees), conn), "C decomposition for " + cls);
        out.measured << cls << " exact through order " << order << "; ";
    }
}

const char* const kConnectedClasses[] = {"connected", "connectedPlanar", "connectedOf(excludedMinors(diamond))"};

BigInt closedForm(Census& coreCensus, int n, int k)
{
    BigInt power;
    mpz_ui_pow_ui(power.get_mpz_t(), n, n - 1 - k);
    return binomial(n, k) * coreCensus.countLabeled(k) * k * power;
}

void strataClosedForm(Outcome& out)
{
    int strata = 0;
    for (const std::string cls : kConnectedClasses) {
        Census& c = census(cls);
        Census& core = census("minDegree2Of(" + cls + ")");
        for (int n = 4; n <= 7; ++n)
            for (int k = 3; k <= n - 1; ++k, ++strata)
                out.require(c.countByCoreSize(n, k) == closedForm(core, n, k),
                            cls + " n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
    const BigInt instance = census("connected").countByCoreSize(4, 3);
    out.require(instance == 12, "connected n=4 k=3 is " + instance.get_str());
    out.measured << strata << " strata exact; connected (4,3) = " << instance;
}

void ratioIdentity(Outcome& out)
{
    int tested = 0;
    for (const std::string cls : kConnectedClasses) {
        Census& c = census(cls);
        for (int n = 5; n <= 7; ++n) {
            for (int k = 3; k <= n - 2; ++k) {
                const BigInt below = c.countByCoreSize(n - 1, k);
                const BigInt here = c.countByCoreSize(n, k);
                if (below == 0 || here == 0)
                    continue;
                Rational r(BigInt(n) * below, here);
                r.canonicalize();
                Rational expected(n - k, n);
                for (int i = 0; i < n - k - 2; ++i)
                    expected *= Rational(n - 1, n);
                expected.canonicalize();
                ++tested;
                out.require(r == expected, cls + " n=" + std::to_string(n) + " k=" + std::to_string(k));
            }
        }
    }
    out.require(tested > 0, "no nonzero strata");
    out.measured << tested << " ratios exact";
}

void connectivityBound(Outcome& out)
{
    const double bound = std::exp(-1.0);
    for (const char* cls : {"forests", "planar"}) {
        double worst = 1;
        for (int n = 1; n <= 7; ++n) {
            const LevelStats& s = census(cls).stats(n);
            const double p = Rational(s.connected, s.count).get_d();
            worst = std::min(worst, p);
            out.require(p >= bound, std::string(cls) + " n=" + std::to_string(n));
        }
        out.measured << cls << " min " << str(worst) << "; ";
    }
    Rational three(census("forests").stats(3).connected, census("forests").stats(3).count);
    three.canonicalize();
    out.require(three == Rational(3, 7), "forests n=3 gives " + three.get_str());
    out.measured << "forests n=3 " << three;
}

void fragExpectation(Outcome& out)
{
    for (const std::string& name : builtinClassNames()) {
        Census& c = census(name);
        if (!c.graphClass().flags().bridgeAddable)
            continue;
        Rational worst = 0;
        for (int n = 1; n <= 7; ++n) {
            const LevelStats& s = c.stats(n);
            Rational mean(s.fragSum, s.count);
            mean.canonicalize();
            worst = std::max(worst, mean);
            out.require(mean < 2, name + " n=" + std::to_string(n));
        }
        out.measured << name << " max " << str(worst.get_d()) << "; ";
    }
    Rational three(census("forests").stats(3).fragSum, census("forests").stats(3).count);
    three.canonicalize();
    out.require(three == Rational(5, 7), "forests n=3 gives " + three.get_str());
    out.measured << "forests n=3 " << three;
}

void boltzmannLaw(Outcome& out)
{
    const BPModel m = buildBPModel(census("forests"), 0.1, 6);
    const std::uint64_t samples = 1000000;
    const auto n = static_cast<double>(samples);
    const BPTally t = tallyBPParallel(m, samples, 20240601);

    const double p0 = std::exp(-m.truncatedC);
    const double empty = static_cast<double>(t.outcomes.at(ComponentMultiset{})) / n;
    const double sigma0 = std::sqrt(p0 * (1 - p0) / n);
    out.require(std::abs(empty - p0) <= 4 * sigma0, "P(empty)");
    out.measured << "P(empty) " << str(empty) << " vs " << str(p0) << " (" << str((empty - p0) / sigma0)
                 << " sigma); ";

    const double g = std::exp(m.truncatedC);
    double worstFreq = 0;
    for (const BPWeight& w : m.weights) {
        const double p = w.mu / g;
        const auto it = t.outcomes.find(multisetOf(w.graph.canon));
        const double freq = it == t.outcomes.end() ? 0.0 : static_cast<double>(it->second) / n;
        const double sigma = std::sqrt(p * (1 - p) / n);
        worstFreq = std::max(worstFreq, std::abs(freq - p) / sigma);
        out.require(std::abs(freq - p) <= 4 * sigma, "P(R = H) for a component on " + std::to_string(w.graph.canon.n()) +
                                                         " vertices");
    }
    out.measured << m.weights.size() << " single-component laws, worst " << str(worstFreq) << " sigma; ";

    // Independent Poisson counts: Var(k_i k_j) = (mu_i + mu_i^2)(mu_j + mu_j^2) - mu_i^2 mu_j^2.
    double worstCov = 0;
    int pairs = 0;
    const std::size_t tracked = std::min(m.weights.size(), kTrackedWeights);
    for (std::size_t i = 0; i < tracked; ++i) {
        for (std::size_t j = i + 1; j < tracked; ++j, ++pairs) {
            const double mi = m.weights[i].mu;
            const double mj = m.weights[j].mu;
            const double sigma = std::sqrt(((mi + mi * mi) * (mj + mj * mj) - mi * mi * mj * mj) / n);
            const double cov = t.covariance(i, j);
            worstCov = std::max(worstCov, std::abs(cov) / sigma);
            out.require(std::abs(cov) <= 4 * sigma, "covariance " + std::to_string(i) + "," + std::to_string(j));
        }
    }
    out.measured << pairs << " covariances, worst " << str(worstCov) << " sigma";
}

void coreOfBoltzmann(Outcome& out)
{
    const double rho0 = 0.03;
    const int cutoff = 8;
    Census& planar = census("planar");
    const Series t = rootedTreeSeries(cutoff);
    double worst = 0;
    const std::map<CanonKey, double> sums = coreWeightSums(planar, rho0, cutoff);
    for (const auto& [key, direct] : sums) {
        const UnlabeledGraph h = canonicalize(graphFromKey(key), kHardCanonCap);
        Series fh(cutoff);
        fh.set(h.canon.n(), Rational(1, static_cast<unsigned long>(h.autSize)));
        const double series = evalSeries(seriesCompose(fh, t), rho0).value;
        worst = std::max(worst, std::abs(direct - series) / series);
    }
    out.require(worst <= 1e-6, "series side");
    out.measured << "series: " << sums.size() << " cores, worst relative error " << str(worst) << "; ";

    const double rho2 = solveRho2(rho0).rho2;
    const BPModel full = buildBPModel(planar, rho0, cutoff);
    const BPModel cores = buildBPModel(census("minDegree2Of(planar)"), rho2, cutoff);
    const BPTally a = tallyBPParallel(full, 100000, 8, &coreOfBP);
    const BPTally b = tallyBPParallel(cores, 100000, 9);
    const double tv = totalVariation(a.law(), b.law());
    out.require(tv <= 0.02, "sample side");
    out.measured << "samples: TV " << str(tv) << " at rho0 " << rho0 << ", rho2 " << str(rho2);
}

void rhoSolver(Outcome& out)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, std::exp(-1.0));
    double worstResidual = 0;
    for (int i = 0; i < 100; ++i) {
        double rho0 = u(rng);
        while (rho0 == 0)
            rho0 = u(rng);
        const RhoSolution s = solveRho2(rho0);
        const double residual = std::abs(s.rho2 * std::exp(-s.rho2) - rho0);
        worstResidual = std::max({worstResidual, residual, s.residual});
        out.require(residual <= 1e-12 && s.rho2 > 0 && s.rho2 < 1, "rho0 = " + str(rho0));
    }
    double worstTrip = 0;
    for (int i = 1; i <= 9; ++i) {
        const double x = i / 10.0;
        const double back = solveRho2(x * std::exp(-x)).rho2;
        worstTrip = std::max(worstTrip, std::abs(back - x));
        out.require(std::abs(back - x) <= 1e-12, "round trip x = " + str(x));
    }
    out.measured << "worst residual " << str(worstResidual) << ", worst round trip " << str(worstTrip);
}

/// Vertices left after repeatedly deleting vertices of degree at most one.
VertexSet peel(const Graph& g, VertexSet alive)
{
    for (bool changed = true; changed;) {
        changed = false;
        for (int v = 0; v < g.n(); ++v) {
            if ((alive >> v & 1U) && setSize(g.neighbours(v) & alive) <= 1) {
                alive &= ~singleton(v);
                changed = true;
            }
        }
    }
    return alive;
}

/// Components of g[alive] by flood fill, first largest one removed: the
/// first-smallest-label rule picks among equal sizes.
VertexSet withoutBiggest(const Graph& g, VertexSet alive)
{
    VertexSet best = 0;
    for (VertexSet left = alive; left != 0;) {
        VertexSet comp = left & (~left + 1);
        for (VertexSet frontier = comp; frontier != 0;) {
            VertexSet next = 0;
            for (int v = 0; v < g.n(); ++v)
                if (frontier >> v & 1U)
                    next |= g.neighbours(v) & alive & ~comp;
            comp |= next;
            frontier = next;
        }
        if (setSize(comp) > setSize(best))
            best = comp;
        left &= ~comp;
    }
    return alive & ~best;
}

void coreFragCommute(Outcome& out)
{
    std::uint64_t tested = 0;
    std::uint64_t disagreements = 0;
    for (int n = 1; n <= 6; ++n) {
        const MembershipBitmap& bits = census("planar").bitmap(n);
        for (std::uint64_t r = 0; r < bits.count(); ++r) {
            const Graph g = Graph::fromEdgeMask(n, bits.select(r));
            const VertexSet all = g.vertices();
            const VertexSet core = peel(g, all);
            const VertexSet frag = withoutBiggest(g, all);
            if (setSize(core) <= 2 * setSize(frag))
                continue;
            ++tested;
            const VertexSet fragOfCore = withoutBiggest(g, core);
            const VertexSet coreOfFrag = peel(g, frag);
            out.require(fragOfCore == coreOfFrag, "violated");
            // The library's version must agree with this one.
            if (fragOfCoreSet(g) != fragOfCore || coreOfFragSet(g) != coreOfFrag)
                ++disagreements;
        }
    }
    out.require(disagreements == 0, "library and oracle disagree");
    out.measured << tested << " planar graphs with core > 2 frag, 0 violations";
}

void innerCoreSuite(Outcome& out)
{
    ExperimentPlan plan;
    plan.className = "planar";
    plan.nMax = 7;
    plan.k = 3;
    plan.trimOrders = 20;
    plan.seed = 11;
    const ExperimentReport r = runInnerCoreSuite(plan);
    for (const char* name : {"confluence", "safe-set-union", "icore-is-union", "worked-example"}) {
        const CheckResult* c = r.find(name);
        out.require(c != nullptr && c->status == CheckStatus::Pass, name);
        if (c)
            out.measured << name << ": " << c->measured << "; ";
    }
}

void sublinearBound(Outcome& out)
{
    const Graph h = named::complete(4);
    const CanonKey hKey = canonKey(h);
    Census& planar = census("planar");
    for (int n = 1; n <= 7; ++n) {
        int kn = 0;
        for (const UnlabeledGraph& u : planar.unlabeled(n))
            kn = std::max(kn, maxDisjointCopies(u.canon, h));
        const LevelStats& s = planar.stats(n);
        BigInt inB = 0;
        for (const auto& [key, count] : s.fragCounts) {
            if (3 * key.n > n)
                continue;
            for (const ComponentMultiset m = multisetOf(graphFromKey(key)); const auto& [comp, times] : m.counts)
                if (comp == hKey)
                    inB += count;
        }
        Rational p(inB, s.count);
        Rational bound(3 * kn, 2 * h.n() * n);
        p.canonicalize();
        bound.canonicalize();
        out.require(p <= bound, "n=" + std::to_string(n));
        out.measured << "n=" << n << " " << p << "<=" << bound << "; ";
    }
}

void smoothnessTrend(Outcome& out)
{
    const RatioSequence r = ratioSequence(census("forests"), 7);
    const double target = std::exp(-1.0);
    double previous = INFINITY;
    for (int n = 4; n <= 7; ++n) {
        const double gap = std::abs(r.values.at(n).get_d() - target);
        out.require(gap <= previous, "gap grows at n=" + std::to_string(n));
        out.measured << "|r_" << n << " - 1/e| = " << str(gap) << "; ";
        previous = gap;
    }
    out.require(previous <= 0.15, "r_7 = " + r.values.at(7).get_str() + " is " + str(previous) + " from 1/e");
}

void labeledUnlabeled(Outcome& out)
{
    int checked = 0;
    for (const std::string& name : builtinClassNames()) {
        for (int n = 0; n <= 6; ++n, ++checked) {
            Census& c = census(name);
            BigInt total = 0;
            for (const UnlabeledGraph& u : c.unlabeled(n))
                total += factorial(n) / BigInt(static_cast<unsigned long>(u.autSize));
            out.require(total == c.countLabeled(n), name + " n=" + std::to_string(n));
        }
    }
    out.measured << checked << " (class, n) pairs exact";
}

struct Criterion {
    int id;
    const char* title;
    std::function<void(Outcome&)> run;
};

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> list = {
        {1, "exponential formula", exponentialFormula},
        {2, "composition identities", compositionIdentities},
        {3, "stratified-count closed form", strataClosedForm},
        {4, "r_{n,k} ratio identity", ratioIdentity},
        {5, "bridge-addable connectivity bound", connectivityBound},
        {6, "fragment expectation", fragExpectation},
        {7, "Boltzmann Poisson law", boltzmannLaw},
        {8, "core of Boltzmann Poisson", coreOfBoltzmann},
        {9, "rho2 solver", rhoSolver},
        {10, "core/fragment commutation", coreFragCommute},
        {11, "inner-core suite", innerCoreSuite},
        {12, "sublinear-limit bound", sublinearBound},
        {13, "smoothness trend", smoothnessTrend},
        {14, "labeled/unlabeled consistency", labeledUnlabeled},
    };
    return list;
}

} // namespace

int main(int argc, char** argv)
{
    int only = 0;
    if (argc > 1)
        only = std::atoi(argv[1]);
    if (only < 0 || only > static_cast<int>(criteria().size())) {
        std::cerr << "usage: acceptance [1-" << criteria().size() << "]\n";
        return 2;
    }
    bool all = true;
    for (const Criterion& c : criteria()) {
        if (only != 0 && c.id != only)
            continue;
        Outcome out;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(out);
        } catch (const std::exception& e) {
            out.ok = false;
            out.measured << " exception: " << e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (out.ok ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << "): "
                  << out.measured.str() << " [" << str(seconds) << " s]" << std::endl;
        all = all && out.ok;
    }
    return all ? 0 : 1;
}
