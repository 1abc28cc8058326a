#include "doctest.h"

#include "bell.hpp"
#include "census_pool.hpp"

#include "structura/canonical.hpp"
#include "structura/egf.hpp"
#include "structura/error.hpp"
#include "structura/graph_ops.hpp"

#include <cmath>
#include <random>

using namespace structura;
using structura::testing::censusFor;

namespace {

Series randomSeries(std::mt19937_64& rng, int order, int constant)
{
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 7);
    Series s(order);
    s.set(0, constant);
    for (int n = 1; n <= order; ++n)
        s.set(n, Rational(num(rng), den(rng)));
    return s;
}

Series expOfX(int order)
{
    Series s(order);
    for (int n = 0; n <= order; ++n)
        s.set(n, Rational(1) / Rational(factorial(n)));
    return s;
}

void requireErrorKind(auto&& fn, ErrorKind kind)
{
    try {
        fn();
        FAIL("expected " << to_string(kind));
    } catch (const Error& e) {
        CHECK(e.kind() == kind);
    }
}

/// Labelled count of connected graphs on [n] whose core is isomorphic to h.
BigInt connectedWithCore(int n, const Graph& h)
{
    const CanonKey target = canonKey(h);
    BigInt count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairCount(n)); ++mask) {
        const Graph g = Graph::fromEdgeMask(n, mask);
        if (isConnected(g) && coreSize(g) == h.n() && canonKey(core2(g)) == target)
            ++count;
    }
    return count;
}

} // namespace

TEST_CASE("series arithmetic")
{
    const Series e = expOfX(10);
    const Series e2 = seriesMul(e, e);
    for (int n = 0; n <= 10; ++n)
        CHECK(e2[n] * Rational(factorial(n)) == Rational(BigInt(1) << n));

    std::mt19937_64 rng(5);
    const Series a = randomSeries(rng, 10, 3);
    CHECK(seriesMul(a, Series::constant(1)) == a);
    CHECK(seriesSub(seriesAdd(a, e), e) == a);
    CHECK(seriesScale(a, Rational(0)) == Series(10));

    requireErrorKind([&] { seriesAdd(a, Series(9)); }, ErrorKind::OrderMismatch);
    requireErrorKind([&] { seriesMul(a, Series(4)); }, ErrorKind::OrderMismatch);
    requireErrorKind([&] { seriesCompose(a, Series::identity(8)); }, ErrorKind::OrderMismatch);
}

TEST_CASE("labelled product matches the two-coloured construction")
{
    // Blue vertices carry a forest, red vertices are isolated, and there are
    // no edges between the colours.
    const int order = 6;
    const Series product =
        seriesMul(classSeries(censusFor("forests"), order), classSeries(censusFor("edgeless"), order));
    for (int n = 0; n <= order; ++n) {
        BigInt direct = 0;
        for (VertexSet blue = 0; blue <= fullSet(n); ++blue) {
            const int b = setSize(blue);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairCount(b)); ++mask)
                direct += isForest(Graph::fromEdgeMask(b, mask)) ? 1 : 0;
        }
        CHECK(product[n] * Rational(factorial(n)) == Rational(direct));
    }
}

TEST_CASE("exp and log")
{
    const Series x = Series::identity(10);
    const Series ex = seriesExp(x);
    for (int n = 0; n <= 10; ++n)
        CHECK(ex[n] * Rational(factorial(n)) == 1);
    CHECK(seriesExp(Series::identity(7)) == classSeries(censusFor("edgeless"), 7));

    CHECK(seriesExp(classSeries(censusFor("trees"), 7)) == classSeries(censusFor("forests"), 7));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Series a = randomSeries(rng, 10, 0);
        CHECK(seriesLog(seriesExp(a)) == a);
        const Series b = randomSeries(rng, 10, 1);
        CHECK(seriesExp(seriesLog(b)) == b);
    }
    requireErrorKind([&] { seriesExp(Series::constant(1)); }, ErrorKind::BadConstantTerm);
    requireErrorKind([&] { seriesLog(Series::constant(2)); }, ErrorKind::BadConstantTerm);
    requireErrorKind([&] { seriesCompose(x, Series::constant(1)); }, ErrorKind::BadConstantTerm);
}

TEST_CASE("recurrences agree with Bell-polynomial expansions")
{
    std::mt19937_64 rng(23);
    for (int order = 0; order <= 6; ++order) {
        for (int trial = 0; trial < 10; ++trial) {
            const Series a = randomSeries(rng, order, 0);
            const Series b = randomSeries(rng, order, 1);
            const Series f = randomSeries(rng, order, trial);
            CHECK(seriesExp(a) == oracle::expBell(a));
            CHECK(seriesLog(b) == oracle::logBell(b));
            CHECK(seriesCompose(f, a) == oracle::composeBell(f, a));
        }
    }
}

TEST_CASE("rooted tree series")
{
    const Series t = rootedTreeSeries(10);
    CHECK(t[0] == 0);
    CHECK(t[1] == 1);
    CHECK(t[2] == 1);
    CHECK(t[3] == Rational(3, 2));

    // Rooted labelled trees by brute force: spanning trees times n roots.
    for (int n = 1; n <= 4; ++n) {
        long trees = 0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairCount(n)); ++mask) {
            const Graph g = Graph::fromEdgeMask(n, mask);
            trees += (g.edgeCount() == n - 1 && isConnected(g)) ? 1 : 0;
        }
        CHECK(t[n] * Rational(factorial(n)) == trees * n);
    }

    const Series x = Series::identity(10);
    CHECK(seriesSub(t, seriesMul(x, seriesExp(t))) == Series(10));
    CHECK(seriesMul(t, seriesExp(seriesScale(t, -1))) == x);
    CHECK(seriesCompose(t, x) == t);
    CHECK(rootedTreeSeries(0) == Series(0));
}

TEST_CASE("composition with the rooted tree series counts graphs by core")
{
    const int order = 7;
    const Series t = rootedTreeSeries(order);
    Series fc3(order);
    fc3.set(3, Rational(1, 6));
    const Series composed = seriesCompose(fc3, t);
    for (int n = 0; n <= order; ++n)
        CHECK(composed[n] * Rational(factorial(n)) == Rational(connectedWithCore(n, named::cycle(3))));
}

TEST_CASE("exponential formula for decomposable classes")
{
    const int order = 6;
    for (const std::string& name : builtinClassNames()) {
        const GraphClass c = builtinClass(name);
        if (!c.flags().decomposable)
            continue;
        INFO(name);
        const Series g = classSeries(censusFor(name), order);
        const Series conn = classSeries(censusFor("connectedOf(" + name + ")"), order);
        CHECK(seriesExp(conn) == g);
        CHECK(seriesLog(g) == conn);
    }
}

TEST_CASE("composition identities for trimmable classes")
{
    const int order = 6;
    const Series t = rootedTreeSeries(order);
    const Series f = classSeries(censusFor("forests"), order);
    const Series trees = classSeries(censusFor("trees"), order);
    for (const std::string& name : builtinClassNames()) {
        if (!builtinClass(name).flags().trimmable)
            continue;
        INFO(name);
        const Series g = classSeries(censusFor(name), order);
        const Series core = classSeries(censusFor("minDegree2Of(" + name + ")"), order);
        CHECK(seriesMul(seriesCompose(core, t), f) == g);

        const Series conn = classSeries(censusFor("connectedOf(" + name + ")"), order);
        const Series connCore = classSeries(censusFor("minDegree2Of(connectedOf(" + name + "))"), order);
        CHECK(seriesAdd(seriesCompose(connCore, t), trees) == conn);
    }
    // Order 7 for planar, the heaviest case.
    const Series t7 = rootedTreeSeries(7);
    const Series planar = classSeries(censusFor("planar"), 7);
    const Series planarCore = classSeries(censusFor("minDegree2Of(planar)"), 7);
    CHECK(seriesMul(seriesCompose(planarCore, t7), classSeries(censusFor("forests"), 7)) == planar);
}

TEST_CASE("evaluation")
{
    for (double x : {0.0, 0.5, 3.0})
        CHECK(evalSeries(Series::constant(1), x).value == 1.0);
    const SeriesValue e = evalSeries(expOfX(12), 1.0);
    CHECK(e.value == doctest::Approx(std::exp(1.0)).epsilon(1e-8));
    CHECK(e.lastTerm < 1e-6);

    // Direct summation of n^{n-2} x^n / n! as the oracle.
    const Series trees = classSeries(censusFor("trees"), 7);
    std::vector<Rational> coeffs = trees.coeffs();
    coeffs.push_back(Rational(BigInt(262144), factorial(8)));
    const SeriesValue c = evalSeries(Series(coeffs), 0.1);
    double direct = 0;
    for (int n = 1; n <= 8; ++n)
        direct += std::pow(n, n - 2) * std::pow(0.1, n) / std::tgamma(n + 1.0);
    CHECK(c.value == doctest::Approx(direct).epsilon(1e-14));
    CHECK(c.value == doctest::Approx(0.10557920).epsilon(1e-7));
    CHECK(c.lastTerm == doctest::Approx(6.5016e-8).epsilon(1e-4));
    CHECK_THROWS_AS(evalSeries(trees, -0.5), Error);
}

TEST_CASE("rho2 solver")
{
    const RhoSolution boundary = solveRho2(std::exp(-1.0));
    CHECK(boundary.rho2 == 1.0);
    CHECK(solveRho2(1.0 / std::exp(1.0)).rho2 == 1.0);
    const RhoSolution half = solveRho2(0.5 * std::exp(-0.5));
    CHECK(std::abs(half.rho2 - 0.5) <= 1e-12);

    const RhoSolution r = solveRho2(0.3);
    CHECK(r.residual <= kRhoTolerance);
    CHECK(std::abs(r.rho2 * std::exp(-r.rho2) - 0.3) <= 1e-12);
    CHECK(r.rho2 > 0);
    CHECK(r.rho2 < 1);

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, std::exp(-1.0));
    for (int i = 0; i < 200; ++i) {
        double rho0 = u(rng);
        if (rho0 == 0)
            continue;
        const RhoSolution s = solveRho2(rho0);
        CHECK(s.residual <= kRhoTolerance);
        CHECK(s.rho2 > 0);
        CHECK(s.rho2 <= 1);
    }
    // Near the boundary f is flat; the residual bound must still hold.
    for (double eps : {1e-6, 1e-10, 1e-14}) {
        const RhoSolution s = solveRho2(std::exp(-1.0) - eps);
        CHECK(s.residual <= kRhoTolerance);
    }
    requireErrorKind([] { solveRho2(0.0); }, ErrorKind::OutOfRange);
    requireErrorKind([] { solveRho2(-0.1); }, ErrorKind::OutOfRange);
    requireErrorKind([] { solveRho2(0.37); }, ErrorKind::OutOfRange);
    requireErrorKind([] { solveRho2(std::nan("")); }, ErrorKind::OutOfRange);
}

TEST_CASE("h(x) peaks at rho")
{
    for (double rho : {0.1, 0.3, 0.5, 0.9}) {
        CHECK(hBound(rho, rho) == doctest::Approx(std::exp(rho)));
        double previous = 0;
        for (int i = 1; i <= 1000; ++i) {
            const double x = 2 * rho * i / 1000.0;
            const double h = hBound(x, rho);
            CHECK(h <= std::exp(rho) * (1 + 1e-12));
            if (x <= rho)
                CHECK(h > previous);
            else
                CHECK(h < previous);
            previous = h;
        }
    }
}

TEST_CASE("json round trip")
{
    std::mt19937_64 rng(3);
    const Series a = randomSeries(rng, 10, 2);
    const nlohmann::json j = toJson(a);
    CHECK(j.size() == 11);
    CHECK(j[0] == "2/1");
    CHECK(seriesFromJson(j) == a);
    CHECK(seriesFromJson(nlohmann::json::parse(R"(["0/1","1/1","1/2","2/4"])"))[3] == Rational(1, 2));
    requireErrorKind([] { seriesFromJson(nlohmann::json::array()); }, ErrorKind::ParseError);
    requireErrorKind([] { seriesFromJson(nlohmann::json::parse(R"(["1/x"])")); }, ErrorKind::ParseError);
    requireErrorKind([] { seriesFromJson(nlohmann::json::parse(R"([1])")); }, ErrorKind::ParseError);
    requireErrorKind([] { seriesFromJson(nlohmann::json::parse(R"(["1/0"])")); }, ErrorKind::ParseError);
}
