#include "structura/egf.hpp"

#include "structura/error.hpp"

#include <cfloat>
#include <cmath>

namespace structura {

namespace {

void requireSameOrder(const Series& a, const Series& b)
{
    if (a.order() != b.order())
        throw Error(ErrorKind::OrderMismatch,
                    "orders " + std::to_string(a.order()) + " and " + std::to_string(b.order()));
}

void requireConstant(const Series& a, int expected, const char* what)
{
    if (a[0] != expected)
        throw Error(ErrorKind::BadConstantTerm,
                    std::string(what) + " needs constant term " + std::to_string(expected) + ", got " +
                        a[0].get_str());
}

} // namespace

Series::Series(int order)
{
    if (order < 0)
        throw Error(ErrorKind::InvalidArgs, "negative series order");
    coeffs_.assign(order + 1, Rational(0));
}

Series::Series(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
{
    if (coeffs_.empty())
        throw Error(ErrorKind::InvalidArgs, "series needs at least one coefficient");
    for (Rational& c : coeffs_)
        c.canonicalize();
}

void Series::set(int n, Rational value)
{
    value.canonicalize();
    coeffs_.at(n) = std::move(value);
}

Series Series::constant(const Rational& c, int order)
{
    Series s(order);
    s.set(0, c);
    return s;
}

Series Series::identity(int order)
{
    Series s(order);
    if (order >= 1)
        s.set(1, 1);
    return s;
}

Series Series::fromCounts(const std::vector<BigInt>& counts)
{
    std::vector<Rational> coeffs;
    coeffs.reserve(counts.size());
    for (std::size_t n = 0; n < counts.size(); ++n)
        coeffs.emplace_back(counts[n], factorial(static_cast<int>(n)));
    return Series(std::move(coeffs));
}

Series seriesAdd(const Series& a, const Series& b)
{
    requireSameOrder(a, b);
    Series out(a.order());
    for (int n = 0; n <= a.order(); ++n)
        out.set(n, a[n] + b[n]);
    return out;
}

Series seriesSub(const Series& a, const Series& b)
{
    requireSameOrder(a, b);
    Series out(a.order());
    for (int n = 0; n <= a.order(); ++n)
        out.set(n, a[n] - b[n]);
    return out;
}

Series seriesMul(const Series& a, const Series& b)
{
    requireSameOrder(a, b);
    const int order = a.order();
    Series out(order);
    for (int n = 0; n <= order; ++n) {
        Rational sum = 0;
        for (int k = 0; k <= n; ++k)
            sum += a[k] * b[n - k];
        out.set(n, sum);
    }
    return out;
}

Series seriesScale(const Series& a, const Rational& factor)
{
    Series out(a.order());
    for (int n = 0; n <= a.order(); ++n)
        out.set(n, a[n] * factor);
    return out;
}

// b = e^a satisfies b' = a' b, so n b_n = sum_k k a_k b_{n-k}.
Series seriesExp(const Series& a)
{
    requireConstant(a, 0, "exp");
    const int order = a.order();
    std::vector<Rational> b(order + 1);
    b[0] = 1;
    for (int n = 1; n <= order; ++n) {
        Rational sum = 0;
        for (int k = 1; k <= n; ++k)
            sum += k * a[k] * b[n - k];
        b[n] = sum / n;
        b[n].canonicalize();
    }
    return Series(std::move(b));
}

// a = log b satisfies b a' = b', so n a_n = n b_n - sum_{k<n} k a_k b_{n-k}.
Series seriesLog(const Series& b)
{
    requireConstant(b, 1, "log");
    const int order = b.order();
    std::vector<Rational> a(order + 1);
    a[0] = 0;
    for (int n = 1; n <= order; ++n) {
        Rational sum = n * b[n];
        for (int k = 1; k < n; ++k)
            sum -= k * a[k] * b[n - k];
        a[n] = sum / n;
        a[n].canonicalize();
    }
    return Series(std::move(a));
}

// Horner in g; g_0 = 0 keeps every truncation exact.
Series seriesCompose(const Series& f, const Series& g)
{
    requireSameOrder(f, g);
    requireConstant(g, 0, "compose");
    const int order = f.order();
    Series out = Series::constant(f[order], order);
    for (int k = order - 1; k >= 0; --k)
        out = seriesAdd(seriesMul(out, g), Series::constant(f[k], order));
    return out;
}

Series rootedTreeSeries(int order)
{
    Series s(order);
    for (int n = 1; n <= order; ++n) {
        BigInt power;
        mpz_ui_pow_ui(power.get_mpz_t(), n, n - 1);
        s.set(n, Rational(power, factorial(n)));
    }
    return s;
}

Series classSeries(Census& census, int order)
{
    std::vector<BigInt> counts;
    for (int n = 0; n <= order; ++n)
        counts.push_back(census.countLabeled(n));
    return Series::fromCounts(counts);
}

SeriesValue evalSeries(const Series& a, double x)
{
    if (!(x >= 0))
        throw Error(ErrorKind::InvalidArgs, "evalSeries needs x >= 0");
    SeriesValue out;
    double power = 1;
    for (int n = 0; n <= a.order(); ++n) {
        const double term = a[n].get_d() * power;
        out.value += term;
        out.lastTerm = std::abs(term);
        power *= x;
    }
    return out;
}

RhoSolution solveRho2(double rho0)
{
    const double invE = std::exp(-1.0);
    // Allow a few ulps above 1/e so that 1/e computed any usual way is the boundary.
    if (!(rho0 > 0) || rho0 > invE * (1 + 4 * DBL_EPSILON))
        throw Error(ErrorKind::OutOfRange, "rho0 must lie in (0, 1/e]");
    auto f = [rho0](double x) { return x * std::exp(-x) - rho0; };
    if (rho0 >= invE)
        return {rho0, 1.0, std::abs(f(1.0))};

    // f is strictly increasing on (0, 1) with f(0) < 0 <= f(1).
    double lo = 0;
    double hi = 1;
    for (int i = 0; i < 200 && hi - lo > 1e-10; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double value = f(mid);
        if (value == 0)
            return {rho0, mid, 0.0};
        (value < 0 ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 50 && std::abs(f(x)) > kRhoTolerance * 1e-3; ++i) {
        const double slope = (1 - x) * std::exp(-x);
        if (slope <= 0)
            break;
        const double next = x - f(x) / slope;
        if (!(next >= lo && next <= hi))
            break;
        x = next;
    }
    // Newton stalled near x = 1 where f is flat: finish by bisection.
    for (int i = 0; i < 200 && std::abs(f(x)) > kRhoTolerance; ++i) {
        (f(x) < 0 ? lo : hi) = x;
        x = 0.5 * (lo + hi);
    }
    return {rho0, x, std::abs(f(x))};
}

double hBound(double x, double rho)
{
    if (!(x > 0) || !(rho > 0))
        throw Error(ErrorKind::InvalidArgs, "hBound needs positive arguments");
    return std::pow(std::exp(1.0) * rho / x, x);
}

nlohmann::json toJson(const Series& a)
{
    nlohmann::json j = nlohmann::json::array();
    for (const Rational& c : a.coeffs())
        j.push_back(c.get_den() == 1 ? c.get_num().get_str() + "/1" : c.get_str());
    return j;
}

Series seriesFromJson(const nlohmann::json& j)
{
    if (!j.is_array() || j.empty())
        throw Error(ErrorKind::ParseError, "series must be a non-empty array");
    std::vector<Rational> coeffs;
    for (const auto& item : j) {
        if (!item.is_string())
            throw Error(ErrorKind::ParseError, "series coefficient must be a \"p/q\" string");
        Rational value;
        if (value.set_str(item.get<std::string>(), 10) != 0 || value.get_den() == 0)
            throw Error(ErrorKind::ParseError, "bad rational '" + item.get<std::string>() + "'");
        coeffs.push_back(value);
    }
    return Series(std::move(coeffs));
}

} // namespace structura
