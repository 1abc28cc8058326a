#pragma once

#include "structura/census.hpp"

#include <vector>

#include <json.hpp>

namespace structura {

inline constexpr int kDefaultSeriesOrder = 10;

/// Exponential generating function truncated at degree N, exact rational
/// coefficients c_0..c_N. Operands of every binary operation must share N.
class Series {
public:
    explicit Series(int order = kDefaultSeriesOrder);
    /// Order is coeffs.size() - 1; coefficients are canonicalised.
    explicit Series(std::vector<Rational> coeffs);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Rational& operator[](int n) const { return coeffs_.at(n); }
    void set(int n, Rational value);
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    static Series constant(const Rational& c, int order = kDefaultSeriesOrder);
    /// The series x.
    static Series identity(int order = kDefaultSeriesOrder);
    /// c_n = |G_n|/n! from labelled counts indexed by n.
    static Series fromCounts(const std::vector<BigInt>& counts);

    friend bool operator==(const Series& a, const Series& b) { return a.coeffs_ == b.coeffs_; }

private:
    std::vector<Rational> coeffs_;
};

Series seriesAdd(const Series& a, const Series& b);
Series seriesSub(const Series& a, const Series& b);
/// Labelled product: the EGF of G ⊗ H is G(x) H(x).
Series seriesMul(const Series& a, const Series& b);
Series seriesScale(const Series& a, const Rational& factor);
/// Requires a_0 = 0.
Series seriesExp(const Series& a);
/// Requires a_0 = 1.
Series seriesLog(const Series& a);
/// f(g(x)); requires g_0 = 0.
Series seriesCompose(const Series& f, const Series& g);

/// T•(x) = x e^{T•(x)}: c_n = n^{n-1}/n!.
Series rootedTreeSeries(int order = kDefaultSeriesOrder);

/// EGF of a class from the census, orders up to the labelled cap.
Series classSeries(Census& census, int order);

struct SeriesValue {
    double value = 0;
    /// |c_N x^N|, a crude indicator of the truncation error.
    double lastTerm = 0;
};
/// Partial sum of c_n x^n for x >= 0.
SeriesValue evalSeries(const Series& a, double x);

struct RhoSolution {
    double rho0 = 0;
    double rho2 = 0;
    double residual = 0;
};
inline constexpr double kRhoTolerance = 1e-12;
/// The root x in (0, 1] of x e^{-x} = rho0. Throws OutOfRange unless
/// 0 < rho0 <= 1/e.
RhoSolution solveRho2(double rho0);

/// h(x) = (e rho / x)^x, increasing on (0, rho] with maximum e^rho.
double hBound(double x, double rho);

nlohmann::json toJson(const Series& a);
/// Parses an array of "p/q" strings.
Series seriesFromJson(const nlohmann::json& j);

} // namespace structura
