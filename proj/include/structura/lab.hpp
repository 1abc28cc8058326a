#pragma once

#include "structura/census.hpp"
#include "structura/graph_class.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace structura {

inline constexpr int kReportSchemaVersion = 1;

/// Everything an experiment needs; echoed verbatim into its report.
struct ExperimentPlan {
    std::string className = "forests";
    /// Extra class parameters, e.g. {"minors": ["K4"]} for excludedMinors.
    nlohmann::json params = nlohmann::json::object();
    int nMin = 1;
    int nMax = 6;
    std::uint64_t samples = 100000;
    std::optional<double> rho;
    std::uint64_t seed = 1;
    /// Largest component size in Boltzmann Poisson models.
    int cutoff = 6;
    /// Gadget cycle length for the inner-core suite.
    int k = 3;
    /// Half-width of the core concentration window.
    double epsilon = 0.15;
    /// Connected graph H for the sublinear-limit bound; chosen if empty.
    std::optional<std::string> h;
    /// Class A for the fragment limit; the plan's class if empty.
    std::optional<std::string> aClass;
    /// Random trimming orders per graph in the inner-core suite.
    int trimOrders = 20;
    std::optional<std::filesystem::path> cacheDir;
};

/// Validates ranges and caps. Throws InvalidArgs or SizeCapExceeded.
void validatePlan(const ExperimentPlan& plan);
/// Class named by the plan, with parameters applied when present.
GraphClass planClass(const ExperimentPlan& plan);

enum class CheckStatus { Pass, Fail, Skipped };
std::string_view to_string(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string measured;
    std::string tolerance;
    std::string detail;
    /// Trend and concentration readings at desk scale: reported, never gating.
    bool diagnostic = false;
};

/// Header row plus data rows, all cells as text.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    friend bool operator==(const Table&, const Table&) = default;
};

struct ExperimentReport {
    std::string experiment;
    ExperimentPlan plan;
    std::vector<CheckResult> checks;
    Table table;

    /// True iff no gating check failed.
    bool passed() const;
    const CheckResult* find(std::string_view name) const;
};

nlohmann::json toJson(const ExperimentPlan& plan);
nlohmann::json toJson(const ExperimentReport& report);
/// Check list as a table: experiment, check, status, measured, tolerance, detail.
Table checksTable(const ExperimentReport& report);

/// RFC 4180: CRLF line ends, fields quoted when they hold a comma, quote or line break.
std::string toCsv(const Table& table);
/// Inverse of toCsv; also accepts bare LF line ends. Throws ParseError.
Table parseCsv(std::string_view text);

ExperimentReport runIdentitySuite(const ExperimentPlan& plan);
/// Throws BridgeAddableCheckFailed with the witness in the message.
ExperimentReport runConnectivity(const ExperimentPlan& plan);
ExperimentReport runFragExperiment(const ExperimentPlan& plan);
ExperimentReport runCoreExperiment(const ExperimentPlan& plan);
/// Throws FreenessCheckFailed when C_k is not free for the class.
ExperimentReport runInnerCoreSuite(const ExperimentPlan& plan);
/// Every suite whose precondition holds; others appear as skipped checks.
ExperimentReport runVerifyAll(const ExperimentPlan& plan);

Table censusTable(const ExperimentPlan& plan);
Table ratiosTable(const ExperimentPlan& plan);

/// Frag(Core(g)) and Core(Frag(g)) as vertex sets of g.
VertexSet fragOfCoreSet(const Graph& g);
VertexSet coreOfFragSet(const Graph& g);

/// Command-line entry point; returns the process exit code.
int runCli(int argc, const char* const* argv);

} // namespace structura
