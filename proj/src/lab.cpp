#include "structura/lab.hpp"

#include "structura/boltzmann.hpp"
#include "structura/canonical.hpp"
#include "structura/catalog.hpp"
#include "structura/class_checks.hpp"
#include "structura/egf.hpp"
#include "structura/error.hpp"
#include "structura/graph6.hpp"
#include "structura/graph_ops.hpp"
#include "structura/inner_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <set>

namespace structura {

namespace {

std::string fmt(double x)
{
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.12g", x);
    return buffer;
}

std::string fmt(const Rational& q)
{
    return q.get_str();
}

std::string fmt(const BigInt& z)
{
    return z.get_str();
}

CheckResult check(std::string name, bool ok, std::string measured, std::string tolerance, std::string detail = {})
{
    return {std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(measured), std::move(tolerance),
            std::move(detail), false};
}

CheckResult skipped(std::string name, std::string reason)
{
    return {std::move(name), CheckStatus::Skipped, "", "", std::move(reason), false};
}

CheckResult diagnostic(std::string name, bool ok, std::string measured, std::string detail)
{
    CheckResult r = check(std::move(name), ok, std::move(measured), "trend", std::move(detail));
    r.diagnostic = true;
    return r;
}

std::unique_ptr<Census> censusFor(const GraphClass& c, const ExperimentPlan& plan)
{
    return std::make_unique<Census>(c, CensusOptions{.cacheDir = plan.cacheDir});
}

ExperimentReport startReport(std::string experiment, const ExperimentPlan& plan)
{
    validatePlan(plan);
    ExperimentReport report;
    report.experiment = std::move(experiment);
    report.plan = plan;
    return report;
}

int firstN(const ExperimentPlan& plan)
{
    return std::max(1, plan.nMin);
}

GraphClass connectedPart(const GraphClass& c)
{
    return c.flags().connectedOnly ? c : classes::connectedOf(c);
}

/// First order where two series differ, or -1.
int firstMismatch(const Series& a, const Series& b)
{
    for (int n = 0; n <= std::min(a.order(), b.order()); ++n)
        if (a[n] != b[n])
            return n;
    return a.order() == b.order() ? -1 : std::min(a.order(), b.order()) + 1;
}

CheckResult seriesCheck(std::string name, const Series& lhs, const Series& rhs, std::string what)
{
    const int bad = firstMismatch(lhs, rhs);
    if (bad < 0)
        return check(std::move(name), true, "equal through order " + std::to_string(lhs.order()), "exact", what);
    return check(std::move(name), false,
                 "differs at order " + std::to_string(bad) + ": " + fmt(lhs[bad]) + " vs " + fmt(rhs[bad]), "exact",
                 what);
}

struct RhoChoice {
    double value = 0;
    std::string source;
};

/// Plan value, then the class's known value, then r_n at the largest n.
std::optional<RhoChoice> chooseRho(const ExperimentPlan& plan, const GraphClass& c, Census& census)
{
    if (plan.rho)
        return RhoChoice{*plan.rho, "plan"};
    if (c.knownRho())
        return RhoChoice{*c.knownRho(), "known"};
    const RatioSequence r = ratioSequence(census, plan.nMax);
    if (auto it = r.values.find(plan.nMax); it != r.values.end())
        return RhoChoice{it->second.get_d(), "estimate r_" + std::to_string(plan.nMax)};
    return std::nullopt;
}

void requireBridgeAddable(const GraphClass& c, int nMax)
{
    const BoundedCheck ba = isBridgeAddableUpTo(c, std::min(nMax, 7));
    if (!ba)
        throw Error(ErrorKind::BridgeAddableCheckFailed,
                    ba.detail + (ba.witness ? " (witness " + toGraph6(*ba.witness) + ")" : ""));
}

/// Forests on [n] in which every tree holds exactly one of 0..k-1.
BigInt rootedForestsByEnumeration(const MembershipBitmap& forests, int k)
{
    const int n = forests.n();
    BigInt count = 0;
    for (std::uint64_t r = 0; r < forests.count(); ++r) {
        const Graph g = Graph::fromEdgeMask(n, forests.select(r));
        bool ok = true;
        for (VertexSet comp : componentSets(g))
            ok = ok && setSize(comp & fullSet(k)) == 1;
        if (ok)
            ++count;
    }
    return count;
}

Rational ratioPower(const Rational& base, int exponent)
{
    Rational out = 1;
    for (int i = 0; i < exponent; ++i)
        out *= base;
    return out;
}

/// Min-degree-2 connected members of the class become the H of F_H.
Series singleShapeSeries(const Graph& h, std::uint64_t aut, int order)
{
    Series s(order);
    if (h.n() <= order)
        s.set(h.n(), Rational(1, static_cast<unsigned long>(aut)));
    return s;
}

std::optional<Graph> defaultSublinearGraph(const GraphClass& a)
{
    for (int n = 1; n <= 5; ++n)
        for (const UnlabeledGraph& u : allGraphs(n))
            if (isConnected(u.canon) && !a.member(u.canon))
                return u.canon;
    return std::nullopt;
}

bool hasComponentIsomorphicTo(const Graph& g, const CanonKey& h)
{
    for (VertexSet comp : componentSets(g))
        if (setSize(comp) == h.n && canonKey(g.induced(comp), kHardCanonCap) == h)
            return true;
    return false;
}

VertexSet mapBack(VertexSet local, VertexSet within)
{
    VertexSet out = 0;
    int index = 0;
    for (int v : setToList(within)) {
        if ((local >> index) & 1U)
            out |= singleton(v);
        ++index;
    }
    return out;
}

std::vector<CheckResult> prefixed(const ExperimentReport& r)
{
    std::vector<CheckResult> out;
    for (CheckResult c : r.checks) {
        c.name = r.experiment + "/" + c.name;
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace

std::string_view to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::Pass:
        return "PASS";
    case CheckStatus::Fail:
        return "FAIL";
    case CheckStatus::Skipped:
        return "SKIP";
    }
    return "?";
}

void validatePlan(const ExperimentPlan& plan)
{
    if (plan.nMin < 0 || plan.nMax < plan.nMin)
        throw Error(ErrorKind::InvalidArgs, "n range must satisfy 0 <= n-min <= n-max");
    if (plan.nMax > kLabeledCap)
        throw Error(ErrorKind::SizeCapExceeded, "n-max " + std::to_string(plan.nMax) + " exceeds the labelled cap " +
                                                    std::to_string(kLabeledCap));
    if (plan.samples < 1)
        throw Error(ErrorKind::InvalidArgs, "sample count must be at least 1");
    if (plan.cutoff < 0 || plan.cutoff > kUnlabeledCap)
        throw Error(ErrorKind::SizeCapExceeded, "cutoff must lie in [0, " + std::to_string(kUnlabeledCap) + "]");
    if (plan.rho && !(std::isfinite(*plan.rho) && *plan.rho > 0))
        throw Error(ErrorKind::InvalidRho, "rho must be finite and positive");
    if (!(plan.epsilon > 0))
        throw Error(ErrorKind::InvalidArgs, "epsilon must be positive");
    if (plan.trimOrders < 1)
        throw Error(ErrorKind::InvalidArgs, "at least one trimming order is needed");
}

GraphClass planClass(const ExperimentPlan& plan)
{
    const nlohmann::json& p = plan.params;
    if (p.is_null() || (p.is_object() && p.empty()))
        return builtinClass(plan.className);
    if (!p.is_object())
        throw Error(ErrorKind::InvalidArgs, "class parameters must be a JSON object");
    if (p.contains("kind"))
        return classFromConfig(p);
    if (plan.className == "excludedMinors")
        return classFromConfig({{"kind", "excludedMinors"}, {"name", p.value("name", "")}, {"parameters", p}});
    if (plan.className == "minDegree2Of" || plan.className == "connectedOf") {
        nlohmann::json params = p;
        params["op"] = plan.className;
        return classFromConfig({{"kind", "derived"}, {"parameters", params}});
    }
    throw Error(ErrorKind::InvalidArgs, "class '" + plan.className + "' takes no parameters");
}

bool ExperimentReport::passed() const
{
    return std::none_of(checks.begin(), checks.end(),
                        [](const CheckResult& c) { return !c.diagnostic && c.status == CheckStatus::Fail; });
}

const CheckResult* ExperimentReport::find(std::string_view name) const
{
    for (const CheckResult& c : checks)
        if (c.name == name)
            return &c;
    return nullptr;
}

nlohmann::json toJson(const ExperimentPlan& plan)
{
    nlohmann::json j = {{"class", plan.className},  {"params", plan.params},   {"nMin", plan.nMin},
                        {"nMax", plan.nMax},        {"samples", plan.samples}, {"seed", plan.seed},
                        {"cutoff", plan.cutoff},    {"k", plan.k},             {"epsilon", plan.epsilon},
                        {"trimOrders", plan.trimOrders}};
    j["rho"] = plan.rho ? nlohmann::json(*plan.rho) : nlohmann::json(nullptr);
    j["h"] = plan.h ? nlohmann::json(*plan.h) : nlohmann::json(nullptr);
    j["aClass"] = plan.aClass ? nlohmann::json(*plan.aClass) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json toJson(const ExperimentReport& report)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckResult& c : report.checks)
        checks.push_back({{"name", c.name},
                          {"status", to_string(c.status)},
                          {"measured", c.measured},
                          {"tolerance", c.tolerance},
                          {"detail", c.detail},
                          {"diagnostic", c.diagnostic}});
    return {{"schemaVersion", kReportSchemaVersion},
            {"experiment", report.experiment},
            {"plan", toJson(report.plan)},
            {"seed", report.plan.seed},
            {"passed", report.passed()},
            {"checks", checks},
            {"table", {{"header", report.table.header}, {"rows", report.table.rows}}}};
}

Table checksTable(const ExperimentReport& report)
{
    Table t{{"experiment", "check", "status", "measured", "tolerance", "detail", "diagnostic"}, {}};
    for (const CheckResult& c : report.checks)
        t.rows.push_back({report.experiment, c.name, std::string(to_string(c.status)), c.measured, c.tolerance,
                          c.detail, c.diagnostic ? "true" : "false"});
    return t;
}

std::string toCsv(const Table& table)
{
    auto field = [](const std::string& s) {
        if (s.find_first_of(",\"\r\n") == std::string::npos)
            return s;
        std::string out = "\"";
        for (char ch : s) {
            if (ch == '"')
                out += '"';
            out += ch;
        }
        return out + "\"";
    };
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0)
                out += ',';
            out += field(cells[i]);
        }
        out += "\r\n";
    };
    line(table.header);
    for (const auto& row : table.rows)
        line(row);
    return out;
}

Table parseCsv(std::string_view text)
{
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string cell;
    bool quoted = false;
    bool cellStarted = false;
    std::size_t i = 0;
    auto endRecord = [&] {
        record.push_back(std::move(cell));
        cell.clear();
        records.push_back(std::move(record));
        record.clear();
        cellStarted = false;
    };
    while (i < text.size()) {
        const char ch = text[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cell += '"';
                    i += 2;
                    continue;
                }
                quoted = false;
            } else {
                cell += ch;
            }
            ++i;
            continue;
        }
        if (ch == '"') {
            if (!cell.empty())
                throw Error(ErrorKind::ParseError, "quote inside an unquoted CSV field");
            quoted = true;
            cellStarted = true;
        } else if (ch == ',') {
            record.push_back(std::move(cell));
            cell.clear();
            cellStarted = true;
        } else if (ch == '\r' || ch == '\n') {
            endRecord();
            if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n')
                ++i;
        } else {
            cell += ch;
            cellStarted = true;
        }
        ++i;
    }
    if (quoted)
        throw Error(ErrorKind::ParseError, "unterminated quoted CSV field");
    if (cellStarted || !record.empty())
        endRecord();
    if (records.empty())
        throw Error(ErrorKind::ParseError, "CSV has no header row");
    Table t;
    t.header = std::move(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != t.header.size())
            throw Error(ErrorKind::ParseError, "CSV row " + std::to_string(r) + " has " +
                                                   std::to_string(records[r].size()) + " fields, header has " +
                                                   std::to_string(t.header.size()));
        t.rows.push_back(std::move(records[r]));
    }
    return t;
}

VertexSet fragOfCoreSet(const Graph& g)
{
    const VertexSet core = coreVertices(g);
    const Graph coreGraph = g.induced(core);
    if (coreGraph.isNull())
        return 0;
    return core & ~mapBack(bigComponent(coreGraph), core);
}

VertexSet coreOfFragSet(const Graph& g)
{
    if (g.isNull())
        return 0;
    const VertexSet frag = g.vertices() & ~bigComponent(g);
    return mapBack(coreVertices(g.induced(frag)), frag);
}

ExperimentReport runIdentitySuite(const ExperimentPlan& plan)
{
    ExperimentReport report = startReport("identities", plan);
    const GraphClass c = planClass(plan);
    const int order = plan.nMax;
    auto census = censusFor(c, plan);
    const GraphClass cc = connectedPart(c);
    auto connected = censusFor(cc, plan);
    const Series g = classSeries(*census, order);
    const Series conn = classSeries(*connected, order);
    const Series t = rootedTreeSeries(order);
    auto forests = censusFor(classes::forests(), plan);
    auto trees = censusFor(classes::trees(), plan);

    if (c.flags().decomposable)
        report.checks.push_back(seriesCheck("exponential-formula", seriesExp(conn), g, "exp(C(x)) = G(x)"));
    else
        report.checks.push_back(skipped("exponential-formula", "skipped: not decomposable"));

    if (c.flags().trimmable && !c.flags().connectedOnly) {
        auto core = censusFor(classes::minDegree2Of(c), plan);
        report.checks.push_back(seriesCheck("composition-G",
                                            seriesMul(seriesCompose(classSeries(*core, order), t),
                                                      classSeries(*forests, order)),
                                            g, "G^{d>=2}(T(x)) F(x) = G(x)"));
    } else {
        report.checks.push_back(skipped("composition-G", "skipped: not trimmable"));
    }

    // The connected-part identities need membership decided by the core,
    // which leaf-trimmability of the connected part guarantees.
    const BoundedCheck trim = isTrimmableUpTo(cc, std::min(order, 7));
    const GraphClass connCoreClass = classes::minDegree2Of(cc);
    auto connCore = censusFor(connCoreClass, plan);
    if (trim) {
        report.checks.push_back(seriesCheck("composition-C",
                                            seriesAdd(seriesCompose(classSeries(*connCore, order), t),
                                                      classSeries(*trees, order)),
                                            conn, "C^{d>=2}(T(x)) + T(x) = C(x)"));
    } else {
        report.checks.push_back(skipped("composition-C", "skipped: connected part not trimmable: " + trim.detail));
    }

    {
        std::string bad;
        for (int n = 0; n <= order && bad.empty(); ++n) {
            BigInt total = 0;
            for (int k = 0; k <= n; ++k)
                total += census->countByCoreSize(n, k);
            if (total != census->countLabeled(n))
                bad = "n=" + std::to_string(n) + ": " + fmt(total) + " vs " + fmt(census->countLabeled(n));
        }
        report.checks.push_back(check("stratification", bad.empty(), bad.empty() ? "all n sum to |G_n|" : bad,
                                      "exact", "sum_k countByCoreSize(n, k) = |G_n|"));
    }

    if (trim) {
        std::string bad;
        int tested = 0;
        for (int n = 4; n <= order && bad.empty(); ++n) {
            for (int k = 3; k <= n - 1; ++k) {
                BigInt power;
                mpz_ui_pow_ui(power.get_mpz_t(), n, n - 1 - k);
                const BigInt expected = binomial(n, k) * connCore->countLabeled(k) * k * power;
                const BigInt actual = connected->countByCoreSize(n, k);
                ++tested;
                if (actual != expected) {
                    bad = "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " + fmt(actual) + " vs " +
                          fmt(expected);
                    break;
                }
            }
        }
        report.checks.push_back(check("stratified-closed-form", bad.empty(),
                                      bad.empty() ? std::to_string(tested) + " strata equal" : bad, "exact",
                                      "C(n,k) |C^{d>=2}_k| k n^{n-1-k}, 3 <= k <= n-1"));

        bad.clear();
        tested = 0;
        for (int n = 5; n <= order && bad.empty(); ++n) {
            for (int k = 3; k <= n - 2; ++k) {
                const BigInt below = connected->countByCoreSize(n - 1, k);
                const BigInt here = connected->countByCoreSize(n, k);
                if (below == 0 || here == 0)
                    continue;
                Rational ratio(BigInt(n) * below, here);
                ratio.canonicalize();
                Rational expected = Rational(n - k, n) * ratioPower(Rational(n - 1, n), n - k - 2);
                expected.canonicalize();
                ++tested;
                if (ratio != expected) {
                    bad = "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " + fmt(ratio) + " vs " +
                          fmt(expected);
                    break;
                }
            }
        }
        report.checks.push_back(check("rnk-ratio", bad.empty(),
                                      bad.empty() ? std::to_string(tested) + " ratios equal" : bad, "exact",
                                      tested == 0 ? "vacuous: no pair of nonzero strata" : "((n-k)/n)(1-1/n)^{n-k-2}"));
    } else {
        report.checks.push_back(skipped("stratified-closed-form", "skipped: connected part not trimmable"));
        report.checks.push_back(skipped("rnk-ratio", "skipped: connected part not trimmable"));
    }

    {
        std::string bad;
        for (int n = 1; n <= order && bad.empty(); ++n) {
            const MembershipBitmap& bits = forests->bitmap(n);
            for (int k = 1; k <= n; ++k) {
                const BigInt direct = rootedForestsByEnumeration(bits, k);
                if (direct != rootedForestCount(n, k)) {
                    bad = "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " + fmt(direct) + " vs " +
                          fmt(rootedForestCount(n, k));
                    break;
                }
            }
        }
        report.checks.push_back(check("rooted-forest-count", bad.empty(), bad.empty() ? "all (n, k) equal" : bad,
                                      "exact", "k n^{n-1-k} against enumerated forests"));
    }

    {
        std::string bad;
        for (int n = 0; n <= std::min(order, kUnlabeledCap) && bad.empty(); ++n) {
            BigInt total = 0;
            for (const UnlabeledGraph& u : census->unlabeled(n))
                total += factorial(n) / BigInt(static_cast<unsigned long>(u.autSize));
            if (total != census->countLabeled(n))
                bad = "n=" + std::to_string(n) + ": " + fmt(total) + " vs " + fmt(census->countLabeled(n));
        }
        report.checks.push_back(check("labeled-unlabeled", bad.empty(), bad.empty() ? "all n equal" : bad, "exact",
                                      "|G_n| = sum n!/aut(H)"));
    }

    report.table.header = {"n", "labeled", "connected", "unlabeled"};
    for (int n = plan.nMin; n <= order; ++n)
        report.table.rows.push_back({std::to_string(n), fmt(census->countLabeled(n)),
                                     fmt(connected->countLabeled(n)), std::to_string(census->unlabeled(n).size())});
    return report;
}

ExperimentReport runConnectivity(const ExperimentPlan& plan)
{
    ExperimentReport report = startReport("connectivity", plan);
    const GraphClass c = planClass(plan);
    requireBridgeAddable(c, plan.nMax);
    auto census = censusFor(c, plan);

    std::optional<double> limit;
    if (plan.rho) {
        auto connected = censusFor(connectedPart(c), plan);
        limit = std::exp(-evalSeries(classSeries(*connected, plan.nMax), *plan.rho).value);
    }
    const double bound = std::exp(-1.0);
    report.table.header = {"n", "connected", "total", "ratio", "ratioDecimal", "limitEstimate"};
    for (int n = firstN(plan); n <= plan.nMax; ++n) {
        const LevelStats& s = census->stats(n);
        const std::string name = "connected-ratio-n" + std::to_string(n);
        if (s.count == 0) {
            report.checks.push_back(skipped(name, "no members on " + std::to_string(n) + " vertices"));
            continue;
        }
        Rational ratio(s.connected, s.count);
        ratio.canonicalize();
        report.checks.push_back(check(name, ratio.get_d() >= bound, fmt(ratio) + " = " + fmt(ratio.get_d()),
                                      ">= 1/e", "P(R_n connected)"));
        report.table.rows.push_back({std::to_string(n), fmt(s.connected), fmt(s.count), fmt(ratio),
                                     fmt(ratio.get_d()), limit ? fmt(*limit) : ""});
    }
    return report;
}

ExperimentReport runFragExperiment(const ExperimentPlan& plan)
{
    ExperimentReport report = startReport("frag", plan);
    const GraphClass c = planClass(plan);
    requireBridgeAddable(c, plan.nMax);
    auto census = censusFor(c, plan);
    const GraphClass a = plan.aClass ? builtinClass(*plan.aClass) : c;
    auto aCensus = censusFor(a, plan);

    BPModel model;
    std::string modelNote;
    if (!a.flags().decomposable) {
        modelNote = "A is not decomposable: the limit law is the point mass on the null graph";
    } else if (auto rho = chooseRho(plan, a, *aCensus)) {
        model = buildBPModel(*aCensus, rho->value, plan.cutoff);
        modelNote = "rho " + fmt(rho->value) + " (" + rho->source + "), cutoff " + std::to_string(plan.cutoff) +
                    ", last-size mass " + fmt(model.lastSizeMu);
    } else {
        modelNote = "no rho available: the limit law is the point mass on the null graph";
    }

    std::optional<Graph> h = plan.h ? std::optional<Graph>(graphFromName(*plan.h)) : defaultSublinearGraph(a);
    if (h && !isConnected(*h))
        throw Error(ErrorKind::InvalidArgs, "the sublinear-limit graph H must be connected");
    const CanonKey hKey = h ? canonKey(*h, kHardCanonCap) : CanonKey{};

    report.table.header = {"n", "meanFrag", "meanFragDecimal", "tv", "kn", "probB", "bound"};
    std::vector<double> tvs;
    for (int n = firstN(plan); n <= plan.nMax; ++n) {
        const LevelStats& s = census->stats(n);
        if (s.count == 0) {
            report.checks.push_back(skipped("frag-expectation-n" + std::to_string(n), "no members"));
            continue;
        }
        Rational mean(s.fragSum, s.count);
        mean.canonicalize();
        report.checks.push_back(check("frag-expectation-n" + std::to_string(n), mean < 2,
                                      fmt(mean) + " = " + fmt(mean.get_d()), "< 2", "E[frag(R_n)]"));

        std::map<ComponentMultiset, double> law;
        for (const auto& [key, count] : s.fragCounts)
            law[multisetOf(graphFromKey(key))] += Rational(count, s.count).get_d();
        const double tv = totalVariationToBP(law, model);
        tvs.push_back(tv);

        std::string kn, probB, bound;
        if (h) {
            int best = 0;
            for (const UnlabeledGraph& u : census->unlabeled(n))
                best = std::max(best, maxDisjointCopies(u.canon, *h));
            BigInt inB = 0;
            for (const auto& [key, count] : s.fragCounts)
                if (3 * key.n <= n && hasComponentIsomorphicTo(graphFromKey(key), hKey))
                    inB += count;
            Rational p(inB, s.count);
            p.canonicalize();
            Rational limitBound(3 * best, 2 * h->n() * n);
            limitBound.canonicalize();
            kn = std::to_string(best);
            probB = fmt(p);
            bound = fmt(limitBound);
            report.checks.push_back(check("sublinear-bound-n" + std::to_string(n), p <= limitBound,
                                          probB + " <= " + bound, "<= 3k_n/(2v(H)n)", "H = " + toGraph6(*h)));
        }
        report.table.rows.push_back(
            {std::to_string(n), fmt(mean), fmt(mean.get_d()), fmt(tv), kn, probB, bound});
    }
    if (!h)
        report.checks.push_back(skipped("sublinear-bound", "every connected graph on at most 5 vertices is in A"));

    bool monotone = true;
    for (std::size_t i = 1; i < tvs.size(); ++i)
        monotone = monotone && tvs[i] <= tvs[i - 1];
    std::string measured;
    for (double tv : tvs)
        measured += (measured.empty() ? "" : " ") + fmt(tv);
    report.checks.push_back(diagnostic("tv-trend", monotone, measured, "TV(Frag(R_n), BP(A, rho)); " + modelNote));
    return report;
}

ExperimentReport runCoreExperiment(const ExperimentPlan& plan)
{
    ExperimentReport report = startReport("core", plan);
    const GraphClass c = planClass(plan);
    auto census = censusFor(c, plan);
    report.table.header = {"n", "k", "count", "fraction", "outsideWindow"};
    if (!c.flags().trimmable) {
        for (const char* name : {"core-concentration", "frag-core-commute", "core-bp-series", "core-bp-samples"})
            report.checks.push_back(skipped(name, "skipped: not trimmable"));
        return report;
    }

    const std::optional<RhoChoice> rho0 = chooseRho(plan, c, *census);
    std::optional<RhoSolution> rho;
    std::string rhoNote = "no rho available";
    if (rho0) {
        try {
            rho = solveRho2(rho0->value);
            rhoNote = "rho0 " + fmt(rho0->value) + " (" + rho0->source + "), rho2 " + fmt(rho->rho2);
        } catch (const Error& e) {
            rhoNote = "rho0 " + fmt(rho0->value) + " (" + rho0->source + ") rejected: " + e.what();
        }
    }

    // (i) Exact distribution of core(R_n)/n against the window (1 - rho2) +- eps.
    if (rho) {
        const double centre = 1 - rho->rho2;
        std::vector<double> tails;
        bool degenerate = true;
        for (int n = firstN(plan); n <= plan.nMax; ++n) {
            const BigInt total = census->countLabeled(n);
            if (total == 0)
                continue;
            BigInt outside = 0;
            for (int k = 0; k <= n; ++k) {
                const BigInt count = census->countByCoreSize(n, k);
                if (count == 0)
                    continue;
                degenerate = degenerate && k == 0;
                const bool out = std::abs(static_cast<double>(k) / n - centre) > plan.epsilon;
                if (out)
                    outside += count;
                report.table.rows.push_back({std::to_string(n), std::to_string(k), fmt(count),
                                             fmt(Rational(count, total).get_d()), out ? "1" : "0"});
            }
            tails.push_back(Rational(outside, total).get_d());
        }
        bool monotone = true;
        std::string measured;
        for (std::size_t i = 0; i < tails.size(); ++i) {
            monotone = monotone && (i == 0 || tails[i] <= tails[i - 1]);
            measured += (i ? " " : "") + fmt(tails[i]);
        }
        report.checks.push_back(diagnostic("core-concentration", monotone, measured,
                                           "mass outside (1 - rho2) +- " + fmt(plan.epsilon) + "; " + rhoNote +
                                               (degenerate ? "; degenerate profile: every core is null" : "")));
    } else {
        report.checks.push_back(skipped("core-concentration", rhoNote));
    }

    // (ii) Frag(Core(g)) = Core(Frag(g)) whenever core(g) > 2 frag(g).
    {
        std::uint64_t tested = 0;
        std::string bad;
        for (int n = 0; n <= plan.nMax && bad.empty(); ++n) {
            const MembershipBitmap& bits = census->bitmap(n);
            for (std::uint64_t r = 0; r < bits.count(); ++r) {
                const Graph g = Graph::fromEdgeMask(n, bits.select(r));
                if (coreSize(g) <= 2 * fragmentSize(g))
                    continue;
                ++tested;
                if (fragOfCoreSet(g) != coreOfFragSet(g)) {
                    bad = "violated by " + toGraph6(g);
                    break;
                }
            }
        }
        report.checks.push_back(check("frag-core-commute", bad.empty(),
                                      bad.empty() ? std::to_string(tested) + " graphs, 0 violations" : bad,
                                      "0 violations", "labelled members with core > 2 frag"));
    }

    if (!c.flags().decomposable || !rho) {
        const std::string why = !rho ? rhoNote : "skipped: not decomposable";
        report.checks.push_back(skipped("core-bp-series", why));
        report.checks.push_back(skipped("core-bp-samples", why));
        return report;
    }

    // (iii) Core of BP(c, rho0) against BP(c^{d>=2}, rho2).
    {
        const std::map<CanonKey, double> sums = coreWeightSums(*census, rho0->value, plan.cutoff);
        const Series t = rootedTreeSeries(plan.cutoff);
        double worst = 0;
        for (const auto& [key, direct] : sums) {
            const UnlabeledGraph h = canonicalize(graphFromKey(key), kHardCanonCap);
            const double series =
                evalSeries(seriesCompose(singleShapeSeries(h.canon, h.autSize, plan.cutoff), t), rho0->value).value;
            worst = std::max(worst, std::abs(direct - series) / series);
        }
        report.checks.push_back(check("core-bp-series", worst <= 1e-6, fmt(worst), "relative error <= 1e-6",
                                      std::to_string(sums.size()) + " cores; cutoff " + std::to_string(plan.cutoff)));
    }
    {
        auto coreCensus = censusFor(classes::minDegree2Of(c), plan);
        const BPModel full = buildBPModel(*census, rho0->value, plan.cutoff);
        const BPModel direct = buildBPModel(*coreCensus, rho->rho2, plan.cutoff);
        const BPTally cores = tallyBPParallel(full, plan.samples, plan.seed, &coreOfBP);
        const BPTally draws = tallyBPParallel(direct, plan.samples, plan.seed + 1);
        const double tv = totalVariation(cores.law(), draws.law());
        report.checks.push_back(check("core-bp-samples", tv <= 0.02, fmt(tv), "TV <= 0.02",
                                      std::to_string(plan.samples) + " samples each; " + rhoNote));
    }
    return report;
}

ExperimentReport runInnerCoreSuite(const ExperimentPlan& plan)
{
    ExperimentReport report = startReport("inner-core", plan);
    const GraphClass c = planClass(plan);
    const InnerCoreGadgets gadgets = makeGadgets(plan.k);
    const BoundedCheck free = isFreeUpTo(c, named::cycle(plan.k), std::min(plan.nMax, 5));
    if (!free)
        throw Error(ErrorKind::FreenessCheckFailed, "C_" + std::to_string(plan.k) + " is not free: " + free.detail);
    auto census = censusFor(c, plan);

    std::mt19937_64 rng(plan.seed);
    std::uint64_t graphs = 0;
    std::string confluenceBad, closureBad, unionBad;
    report.table.header = {"n", "connectedGraphs", "confluent", "unionClosed", "icoreIsUnion"};
    for (int n = firstN(plan); n <= std::min(plan.nMax, kSafeSetCap); ++n) {
        std::uint64_t here = 0, confluent = 0, closed = 0, matches = 0;
        for (const UnlabeledGraph& u : census->unlabeled(n)) {
            const Graph& g = u.canon;
            if (!isConnected(g))
                continue;
            ++here;
            const VertexSet reference = innerCore(g, c, gadgets).vertices;
            bool same = true;
            for (int t = 0; t < plan.trimOrders; ++t)
                same = same && innerCore(g, c, gadgets, rng).vertices == reference;
            confluent += same ? 1 : 0;
            if (!same && confluenceBad.empty())
                confluenceBad = toGraph6(g);

            const std::vector<VertexSet> safe = safeSets(g, c, gadgets);
            const std::set<VertexSet> lookup(safe.begin(), safe.end());
            bool unionClosed = true;
            VertexSet all = 0;
            for (VertexSet a : safe) {
                all |= a;
                for (VertexSet b : safe)
                    unionClosed = unionClosed && lookup.contains(a | b);
            }
            closed += unionClosed ? 1 : 0;
            if (!unionClosed && closureBad.empty())
                closureBad = toGraph6(g);
            matches += all == reference ? 1 : 0;
            if (all != reference && unionBad.empty())
                unionBad = toGraph6(g);
        }
        graphs += here;
        report.table.rows.push_back({std::to_string(n), std::to_string(here), std::to_string(confluent),
                                     std::to_string(closed), std::to_string(matches)});
    }
    const std::string counted = std::to_string(graphs) + " connected graphs";
    report.checks.push_back(check("confluence", confluenceBad.empty(),
                                  confluenceBad.empty() ? counted : "order-dependent on " + confluenceBad,
                                  "all orders agree", std::to_string(plan.trimOrders) + " random orders each"));
    report.checks.push_back(check("safe-set-union", closureBad.empty(),
                                  closureBad.empty() ? counted : "not union-closed on " + closureBad, "exact",
                                  "a union of safe sets is safe"));
    report.checks.push_back(check("icore-is-union", unionBad.empty(),
                                  unionBad.empty() ? counted : "differs on " + unionBad, "exact",
                                  "inner core = union of safe sets"));

    // Two k-cycles joined by a one-edge path keep every vertex.
    Graph dumbbell = disjointUnion(named::cycle(plan.k), named::cycle(plan.k));
    dumbbell.addEdge(0, plan.k);
    if (c.member(dumbbell)) {
        const InnerCoreResult r = innerCore(dumbbell, c, gadgets);
        const bool ok = r.vertices == dumbbell.vertices() && r.components.size() == 1 &&
                        r.components.front().tag == TrimCase::Reduced;
        report.checks.push_back(check("worked-example", ok,
                                      "case " + std::string(1, caseTag(r.components.front().tag)) + ", " +
                                          std::to_string(setSize(r.vertices)) + " of " +
                                          std::to_string(dumbbell.n()) + " vertices kept",
                                      "case c, all vertices", "two C_k joined by one edge"));
    } else {
        report.checks.push_back(skipped("worked-example", "the dumbbell is not in the class"));
    }
    return report;
}

ExperimentReport runVerifyAll(const ExperimentPlan& plan)
{
    ExperimentReport report = startReport("verify-all", plan);
    auto absorb = [&](const char* name, auto&& run) {
        try {
            const ExperimentReport r = run(plan);
            for (CheckResult& c : prefixed(r))
                report.checks.push_back(std::move(c));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::BridgeAddableCheckFailed && e.kind() != ErrorKind::FreenessCheckFailed)
                throw;
            report.checks.push_back(skipped(std::string(name) + "/*", e.what()));
        }
    };
    absorb("identities", runIdentitySuite);
    absorb("connectivity", runConnectivity);
    absorb("frag", runFragExperiment);
    absorb("core", runCoreExperiment);
    if (planClass(plan).flags().connectedOnly)
        report.checks.push_back(skipped("inner-core/*", "skipped: C_k cannot be free in a class with no disconnected members"));
    else
        absorb("inner-core", runInnerCoreSuite);
    report.table = checksTable(report);
    return report;
}

Table censusTable(const ExperimentPlan& plan)
{
    validatePlan(plan);
    auto census = censusFor(planClass(plan), plan);
    Table t{{"n", "count"}, {}};
    for (int n = plan.nMin; n <= plan.nMax; ++n)
        t.rows.push_back({std::to_string(n), fmt(census->countLabeled(n))});
    return t;
}

Table ratiosTable(const ExperimentPlan& plan)
{
    validatePlan(plan);
    auto census = censusFor(planClass(plan), plan);
    const RatioSequence r = ratioSequence(*census, plan.nMax);
    Table t{{"n", "count", "r_n", "r_n_decimal", "growthEstimate"}, {}};
    for (int n = std::max(1, plan.nMin); n <= plan.nMax; ++n) {
        const auto it = r.values.find(n);
        const auto growth = r.growthEstimates.find(n);
        t.rows.push_back({std::to_string(n), fmt(census->countLabeled(n)), it == r.values.end() ? "" : fmt(it->second),
                          it == r.values.end() ? "" : fmt(it->second.get_d()),
                          growth == r.growthEstimates.end() ? "" : fmt(growth->second)});
    }
    return t;
}

} // namespace structura
