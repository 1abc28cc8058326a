#include "structura/boltzmann.hpp"
#include "structura/error.hpp"
#include "structura/lab.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>

namespace structura {

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

bool isUsageError(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::UnknownClass:
    case ErrorKind::InvalidArgs:
    case ErrorKind::InvalidRho:
    case ErrorKind::ParseError:
    case ErrorKind::SizeCapExceeded:
        return true;
    default:
        return false;
    }
}

bool endsWith(const std::string& s, std::string_view suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void writeFile(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::InvalidArgs, "cannot open '" + path + "' for writing");
    out << content;
}

nlohmann::json tableJson(const Table& t)
{
    return {{"schemaVersion", kReportSchemaVersion}, {"header", t.header}, {"rows", t.rows}};
}

/// Tables go to --out as CSV or JSON by extension, else to stdout as CSV.
void emitTable(const Table& t, const std::string& out)
{
    if (out.empty())
        std::cout << toCsv(t);
    else if (endsWith(out, ".json"))
        writeFile(out, tableJson(t).dump(2) + "\n");
    else
        writeFile(out, toCsv(t));
}

int emitReport(const ExperimentReport& report, const std::string& out)
{
    for (const CheckResult& c : report.checks) {
        std::cout << to_string(c.status) << (c.diagnostic ? " (diagnostic) " : " ") << c.name;
        if (!c.measured.empty())
            std::cout << "  " << c.measured;
        if (!c.tolerance.empty())
            std::cout << "  [" << c.tolerance << "]";
        if (!c.detail.empty())
            std::cout << "  " << c.detail;
        std::cout << '\n';
    }
    if (!out.empty()) {
        if (endsWith(out, ".json"))
            writeFile(out, toJson(report).dump(2) + "\n");
        else
            writeFile(out, toCsv(report.table.header.empty() ? checksTable(report) : report.table));
    }
    std::cout << (report.passed() ? "passed" : "FAILED") << '\n';
    return report.passed() ? 0 : kExitFailed;
}

int bpSample(const ExperimentPlan& plan, const std::string& out)
{
    validatePlan(plan);
    const GraphClass c = planClass(plan);
    Census census(c, CensusOptions{.cacheDir = plan.cacheDir});
    std::optional<double> rho = plan.rho ? plan.rho : c.knownRho();
    if (!rho)
        throw Error(ErrorKind::InvalidRho, "bp-sample needs --rho for class " + c.name());
    const BPModel model = buildBPModel(census, *rho, plan.cutoff);
    if (out.empty()) {
        writeBPLog(std::cout, model, plan.seed, plan.samples);
    } else {
        std::ofstream file(out, std::ios::binary);
        if (!file)
            throw Error(ErrorKind::InvalidArgs, "cannot open '" + out + "' for writing");
        writeBPLog(file, model, plan.seed, plan.samples);
    }
    return 0;
}

} // namespace

int runCli(int argc, const char* const* argv)
{
    CLI::App app{"Exact censuses, generating-function identities and Boltzmann Poisson experiments "
                 "for small graph classes"};
    app.require_subcommand(1);

    ExperimentPlan plan;
    std::string params;
    std::string out;
    std::string cacheDir;
    double rho = 0;
    std::string h;
    std::string aClass;

    auto addCommon = [&](CLI::App* sub) {
        sub->add_option("--class", plan.className, "Class expression, e.g. planar or excludedMinors(K4)");
        sub->add_option("--params", params, "Class parameters as a JSON object");
        sub->add_option("--n-min", plan.nMin, "Smallest vertex count");
        sub->add_option("--n-max", plan.nMax, "Largest vertex count");
        sub->add_option("--rho", rho, "Boltzmann parameter rho0");
        sub->add_option("--seed", plan.seed, "Master seed");
        sub->add_option("--samples", plan.samples, "Monte-Carlo sample count");
        sub->add_option("--out", out, "Output file (.csv or .json)");
        sub->add_option("--cache-dir", cacheDir, "Count cache directory");
        sub->add_option("--cutoff", plan.cutoff, "Largest component size in Boltzmann Poisson models");
        sub->add_option("--k", plan.k, "Gadget cycle length");
        sub->add_option("--epsilon", plan.epsilon, "Core concentration half-width");
        sub->add_option("--h-graph", h, "Connected graph H for the sublinear bound");
        sub->add_option("--a-class", aClass, "Class A for the fragment limit");
        sub->add_option("--trim-orders", plan.trimOrders, "Random trimming orders per graph");
    };

    std::vector<std::pair<CLI::App*, std::function<int()>>> commands;
    auto command = [&](const char* name, const char* help, std::function<int()> run) {
        CLI::App* sub = app.add_subcommand(name, help);
        addCommon(sub);
        commands.emplace_back(sub, std::move(run));
    };
    command("census", "Labelled counts per n", [&] { emitTable(censusTable(plan), out); return 0; });
    command("ratios", "r_n = n|G_{n-1}|/|G_n| and growth estimates", [&] {
        emitTable(ratiosTable(plan), out);
        return 0;
    });
    command("identities", "Exact generating-function identities",
            [&] { return emitReport(runIdentitySuite(plan), out); });
    command("connectivity", "P(connected) against 1/e", [&] { return emitReport(runConnectivity(plan), out); });
    command("frag", "Fragment statistics", [&] { return emitReport(runFragExperiment(plan), out); });
    command("core", "Core statistics", [&] { return emitReport(runCoreExperiment(plan), out); });
    command("inner-core", "Inner-core trimming suite", [&] { return emitReport(runInnerCoreSuite(plan), out); });
    command("bp-sample", "Boltzmann Poisson draws as JSON lines", [&] { return bpSample(plan, out); });
    command("verify-all", "Every suite whose precondition holds", [&] { return emitReport(runVerifyAll(plan), out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (!params.empty()) {
            try {
                plan.params = nlohmann::json::parse(params);
            } catch (const nlohmann::json::parse_error& e) {
                throw Error(ErrorKind::ParseError, std::string("--params is not JSON: ") + e.what());
            }
        }
        for (const auto& [sub, run] : commands) {
            if (!sub->parsed())
                continue;
            if (sub->count("--rho") > 0)
                plan.rho = rho;
            if (!h.empty())
                plan.h = h;
            if (!aClass.empty())
                plan.aClass = aClass;
            if (!cacheDir.empty())
                plan.cacheDir = cacheDir;
            return run();
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return isUsageError(e.kind()) ? kExitUsage : kExitFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailed;
    }
    return kExitUsage;
}

} // namespace structura
