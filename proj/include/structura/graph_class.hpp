#pragma once

#include "structura/graph.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace structura {

struct ClassFlags {
    bool decomposable = false;
    bool bridgeAddable = false;
    bool trimmable = false;
    bool subgraphClosed = false;
    bool minorClosed = false;
    /// A class of connected graphs: the null graph is not a member.
    bool connectedOnly = false;
};

/// A named membership predicate with declared structural flags.
///
/// Cheap to copy (shared immutable state). Membership of expensive classes
/// is memoised on canonical keys; the memo tolerates concurrent callers.
class GraphClass {
public:
    using Predicate = std::function<bool(const Graph&)>;
    /// Decides membership from (n, edge count) alone when possible.
    using QuickDecide = std::function<std::optional<bool>(int n, int edges)>;

    struct Spec {
        std::string name;
        Predicate member;
        ClassFlags flags;
        std::optional<double> knownRho;
        QuickDecide quick;
        /// Memoise results on canonical keys (worth it for minor tests).
        bool memoize = false;
        /// Canonical description used as a cache key and in reports.
        nlohmann::json config;
    };

    explicit GraphClass(Spec spec);

    const std::string& name() const;
    const ClassFlags& flags() const;
    std::optional<double> knownRho() const;
    const nlohmann::json& config() const;

    bool member(const Graph& g) const;
    bool operator()(const Graph& g) const { return member(g); }
    std::optional<bool> quickDecide(int n, int edges) const;

private:
    struct State;
    std::shared_ptr<State> state_;
};

namespace classes {

GraphClass forests();
GraphClass trees();
GraphClass planar();
GraphClass connectedPlanar();
GraphClass allGraphs();
GraphClass connectedGraphs();
GraphClass edgeless();
GraphClass atMostOneEdge();
/// Graphs with no minor in `minors`.
GraphClass excludedMinors(std::vector<Graph> minors, std::string name = {});
GraphClass diamondFree();
GraphClass bowtieFree();
/// Members of `base` with minimum degree at least 2, plus the null graph.
GraphClass minDegree2Of(const GraphClass& base);
/// Non-null connected members of `base`.
GraphClass connectedOf(const GraphClass& base);

} // namespace classes

/// Resolves a class expression such as "planar", "minDegree2Of(forests)" or
/// "excludedMinors(K5,K3_3)". Minor arguments are named graphs or graph6.
/// Throws UnknownClass.
GraphClass builtinClass(const std::string& expression);

/// Builds a class from {name, kind: builtin|excludedMinors|derived, parameters}.
GraphClass classFromConfig(const nlohmann::json& config);

/// Names accepted by builtinClass without arguments.
std::vector<std::string> builtinClassNames();

/// Graph named in class expressions: K<n>, C<n>, P<n>, K<a>_<b>, diamond,
/// bowtie, or a graph6 string. Throws ParseError.
Graph graphFromName(const std::string& name);

} // namespace structura
