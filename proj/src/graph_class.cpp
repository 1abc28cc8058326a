#include "structura/graph_class.hpp"

#include "structura/canonical.hpp"
#include "structura/error.hpp"
#include "structura/graph6.hpp"
#include "structura/graph_ops.hpp"
#include "structura/minor.hpp"

#include <cctype>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace structura {

struct GraphClass::State {
    Spec spec;
    mutable std::shared_mutex mutex;
    mutable std::unordered_map<CanonKey, bool, CanonKeyHash> memo;
};

GraphClass::GraphClass(Spec spec) : state_(std::make_shared<State>())
{
    if (!spec.member)
        throw Error(ErrorKind::InvalidArgs, "class '" + spec.name + "' has no membership predicate");
    if (spec.config.is_null())
        spec.config = {{"kind", "builtin"}, {"name", spec.name}};
    state_->spec = std::move(spec);
}

const std::string& GraphClass::name() const { return state_->spec.name; }
const ClassFlags& GraphClass::flags() const { return state_->spec.flags; }
std::optional<double> GraphClass::knownRho() const { return state_->spec.knownRho; }
const nlohmann::json& GraphClass::config() const { return state_->spec.config; }

std::optional<bool> GraphClass::quickDecide(int n, int edges) const
{
    if (state_->spec.flags.connectedOnly && n == 0)
        return false;
    if (state_->spec.quick)
        return state_->spec.quick(n, edges);
    return std::nullopt;
}

bool GraphClass::member(const Graph& g) const
{
    if (auto quick = quickDecide(g.n(), g.edgeCount()))
        return *quick;
    const Spec& spec = state_->spec;
    if (!spec.memoize || g.n() > kDefaultCanonCap)
        return spec.member(g);
    const CanonKey key = canonKey(g);
    {
        std::shared_lock lock(state_->mutex);
        if (auto it = state_->memo.find(key); it != state_->memo.end())
            return it->second;
    }
    const bool result = spec.member(g);
    std::unique_lock lock(state_->mutex);
    state_->memo.emplace(key, result);
    return result;
}

namespace classes {

namespace {

std::string joinNames(const std::vector<std::string>& parts)
{
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty())
            out += ',';
        out += p;
    }
    return out;
}

bool twoConnected(const Graph& g)
{
    if (g.n() < 3 || !isConnected(g))
        return false;
    for (int v = 0; v < g.n(); ++v)
        if (!isConnected(g.removeVertex(v)))
            return false;
    return true;
}

} // namespace

GraphClass forests()
{
    ClassFlags f{.decomposable = true, .bridgeAddable = true, .trimmable = true, .subgraphClosed = true, .minorClosed = true};
    return GraphClass({.name = "forests",
                       .member = [](const Graph& g) { return isForest(g); },
                       .flags = f,
                       .knownRho = std::exp(-1.0),
                       .quick = [](int n, int e) -> std::optional<bool> {
                           if (e >= n && n > 0)
                               return false;
                           if (e <= 2)
                               return true;
                           return std::nullopt;
                       }});
}

GraphClass trees()
{
    ClassFlags f{.bridgeAddable = true, .connectedOnly = true};
    return GraphClass({.name = "trees",
                       .member = [](const Graph& g) { return g.n() > 0 && g.edgeCount() == g.n() - 1 && isConnected(g); },
                       .flags = f,
                       .knownRho = std::exp(-1.0),
                       .quick = [](int n, int e) -> std::optional<bool> {
                           if (e != n - 1)
                               return false;
                           return std::nullopt;
                       }});
}

GraphClass excludedMinors(std::vector<Graph> minors, std::string name)
{
    if (minors.empty())
        throw Error(ErrorKind::InvalidArgs, "excludedMinors needs at least one minor");
    std::vector<std::string> codes;
    ClassFlags f{.decomposable = true, .bridgeAddable = true, .trimmable = true, .subgraphClosed = true, .minorClosed = true};
    int fewestEdges = minors.front().edgeCount();
    for (const Graph& h : minors) {
        if (h.isNull())
            throw Error(ErrorKind::InvalidArgs, "the null graph cannot be an excluded minor");
        codes.push_back(toGraph6(h));
        f.decomposable = f.decomposable && isConnected(h);
        f.bridgeAddable = f.bridgeAddable && twoConnected(h);
        f.trimmable = f.trimmable && h.minDegree() >= 2;
        fewestEdges = std::min(fewestEdges, h.edgeCount());
    }
    if (name.empty())
        name = "excludedMinors(" + joinNames(codes) + ")";
    auto testers = std::make_shared<std::vector<std::unique_ptr<MinorTester>>>();
    for (Graph& h : minors)
        testers->push_back(std::make_unique<MinorTester>(std::move(h)));
    return GraphClass({.name = name,
                       .member =
                           [testers](const Graph& g) {
                               for (const auto& t : *testers)
                                   if (t->isMinorOf(g))
                                       return false;
                               return true;
                           },
                       .flags = f,
                       .quick = [fewestEdges](int, int e) -> std::optional<bool> {
                           if (e < fewestEdges)
                               return true;
                           return std::nullopt;
                       },
                       .memoize = true,
                       .config = {{"kind", "excludedMinors"}, {"name", name}, {"parameters", {{"minors", codes}}}}});
}

GraphClass planar()
{
    GraphClass wagner = excludedMinors({named::complete(5), named::completeBipartite(3, 3)}, "planar");
    ClassFlags f = wagner.flags();
    return GraphClass({.name = "planar",
                       .member = [wagner](const Graph& g) { return wagner.member(g); },
                       .flags = f,
                       .quick = [](int n, int e) -> std::optional<bool> {
                           // Every non-planar graph has at least the nine edges of K3,3.
                           if (e <= 8)
                               return true;
                           if (n >= 3 && e > 3 * n - 6)
                               return false;
                           return std::nullopt;
                       }});
}

GraphClass connectedPlanar()
{
    GraphClass c = connectedOf(planar());
    GraphClass::Spec spec{.name = "connectedPlanar",
                          .member = [c](const Graph& g) { return c.member(g); },
                          .flags = c.flags(),
                          .quick = [c](int n, int e) { return c.quickDecide(n, e); }};
    return GraphClass(std::move(spec));
}

GraphClass allGraphs()
{
    ClassFlags f{.decomposable = true, .bridgeAddable = true, .trimmable = true, .subgraphClosed = true, .minorClosed = true};
    return GraphClass({.name = "graphs",
                       .member = [](const Graph&) { return true; },
                       .flags = f,
                       .quick = [](int, int) -> std::optional<bool> { return true; }});
}

GraphClass connectedGraphs()
{
    ClassFlags f{.bridgeAddable = true, .connectedOnly = true};
    return GraphClass({.name = "connected",
                       .member = [](const Graph& g) { return g.n() > 0 && isConnected(g); },
                       .flags = f,
                       .quick = [](int n, int e) -> std::optional<bool> {
                           if (e < n - 1)
                               return false;
                           return std::nullopt;
                       }});
}

GraphClass edgeless()
{
    ClassFlags f{.decomposable = true, .subgraphClosed = true, .minorClosed = true};
    return GraphClass({.name = "edgeless",
                       .member = [](const Graph& g) { return g.edgeCount() == 0; },
                       .flags = f,
                       .quick = [](int, int e) -> std::optional<bool> { return e == 0; }});
}

GraphClass atMostOneEdge()
{
    ClassFlags f{.subgraphClosed = true, .minorClosed = true};
    return GraphClass({.name = "atMostOneEdge",
                       .member = [](const Graph& g) { return g.edgeCount() <= 1; },
                       .flags = f,
                       .quick = [](int, int e) -> std::optional<bool> { return e <= 1; }});
}

GraphClass diamondFree() { return excludedMinors({named::diamond()}, "diamondFree"); }

GraphClass bowtieFree() { return excludedMinors({named::bowtie()}, "bowtieFree"); }

GraphClass minDegree2Of(const GraphClass& base)
{
    ClassFlags f{.decomposable = base.flags().decomposable,
                 .bridgeAddable = base.flags().bridgeAddable,
                 .connectedOnly = base.flags().connectedOnly};
    const std::string name = "minDegree2Of(" + base.name() + ")";
    return GraphClass({.name = name,
                       .member =
                           [base](const Graph& g) {
                               if (g.isNull())
                                   return !base.flags().connectedOnly;
                               return g.minDegree() >= 2 && base.member(g);
                           },
                       .flags = f,
                       .quick = [base](int n, int e) -> std::optional<bool> {
                           if (n == 0)
                               return !base.flags().connectedOnly;
                           if (e < n)
                               return false;
                           if (base.quickDecide(n, e) == false)
                               return false;
                           return std::nullopt;
                       },
                       .config = {{"kind", "derived"},
                                  {"name", name},
                                  {"parameters", {{"op", "minDegree2Of"}, {"base", base.config()}}}}});
}

GraphClass connectedOf(const GraphClass& base)
{
    ClassFlags f{.bridgeAddable = true, .connectedOnly = true};
    const std::string name = "connectedOf(" + base.name() + ")";
    return GraphClass({.name = name,
                       .member = [base](const Graph& g) { return g.n() > 0 && isConnected(g) && base.member(g); },
                       .flags = f,
                       .quick = [base](int n, int e) -> std::optional<bool> {
                           if (n == 0 || e < n - 1)
                               return false;
                           if (base.quickDecide(n, e) == false)
                               return false;
                           return std::nullopt;
                       },
                       .config = {{"kind", "derived"},
                                  {"name", name},
                                  {"parameters", {{"op", "connectedOf"}, {"base", base.config()}}}}});
}

} // namespace classes

Graph graphFromName(const std::string& name)
{
    auto number = [&](std::size_t from, std::size_t to) {
        if (from >= to)
            throw Error(ErrorKind::ParseError, "bad graph name '" + name + "'");
        int value = 0;
        for (std::size_t i = from; i < to; ++i) {
            if (!std::isdigit(static_cast<unsigned char>(name[i])))
                throw Error(ErrorKind::ParseError, "bad graph name '" + name + "'");
            value = value * 10 + (name[i] - '0');
            if (value > kMaxVertices)
                throw Error(ErrorKind::ParseError, "graph name '" + name + "' too large");
        }
        return value;
    };
    if (name == "diamond")
        return named::diamond();
    if (name == "bowtie")
        return named::bowtie();
    // Digits never occur in graph6, so a letter followed by digits is a name.
    const bool looksNamed = name.size() >= 2 && std::isdigit(static_cast<unsigned char>(name[1]));
    if (looksNamed && (name[0] == 'K' || name[0] == 'C' || name[0] == 'P')) {
        const auto split = name.find_first_of("_,");
        if (name[0] == 'K' && split != std::string::npos)
            return named::completeBipartite(number(1, split), number(split + 1, name.size()));
        const int n = number(1, name.size());
        if (name[0] == 'K')
            return named::complete(n);
        if (name[0] == 'C') {
            if (n < 3)
                throw Error(ErrorKind::ParseError, "cycles need at least 3 vertices");
            return named::cycle(n);
        }
        return named::path(n);
    }
    return fromGraph6(name);
}

namespace {

std::string trim(std::string s)
{
    const auto first = s.find_first_not_of(" \t");
    const auto last = s.find_last_not_of(" \t");
    return first == std::string::npos ? std::string{} : s.substr(first, last - first + 1);
}

/// Splits on commas that are not nested inside parentheses.
std::vector<std::string> splitArguments(const std::string& text)
{
    std::vector<std::string> out;
    int depth = 0;
    std::string current;
    for (char ch : text) {
        if (ch == '(')
            ++depth;
        if (ch == ')')
            --depth;
        if (ch == ',' && depth == 0) {
            out.push_back(trim(current));
            current.clear();
        } else {
            current += ch;
        }
    }
    if (!trim(current).empty())
        out.push_back(trim(current));
    return out;
}

} // namespace

std::vector<std::string> builtinClassNames()
{
    return {"forests", "trees", "planar", "connectedPlanar", "graphs", "connected",
            "edgeless", "atMostOneEdge", "diamondFree", "bowtieFree"};
}

GraphClass builtinClass(const std::string& expression)
{
    const std::string expr = trim(expression);
    const auto open = expr.find('(');
    if (open == std::string::npos) {
        if (expr == "forests")
            return classes::forests();
        if (expr == "trees")
            return classes::trees();
        if (expr == "planar")
            return classes::planar();
        if (expr == "connectedPlanar")
            return classes::connectedPlanar();
        if (expr == "graphs")
            return classes::allGraphs();
        if (expr == "connected")
            return classes::connectedGraphs();
        if (expr == "edgeless")
            return classes::edgeless();
        if (expr == "atMostOneEdge")
            return classes::atMostOneEdge();
        if (expr == "diamondFree")
            return classes::diamondFree();
        if (expr == "bowtieFree")
            return classes::bowtieFree();
        throw Error(ErrorKind::UnknownClass, "unknown class '" + expr + "'");
    }
    if (expr.back() != ')')
        throw Error(ErrorKind::UnknownClass, "malformed class expression '" + expr + "'");
    const std::string head = trim(expr.substr(0, open));
    const std::string inner = expr.substr(open + 1, expr.size() - open - 2);
    if (head == "minDegree2Of")
        return classes::minDegree2Of(builtinClass(inner));
    if (head == "connectedOf")
        return classes::connectedOf(builtinClass(inner));
    if (head == "excludedMinors") {
        std::vector<Graph> minors;
        try {
            for (const std::string& arg : splitArguments(inner))
                minors.push_back(graphFromName(arg));
        } catch (const Error& e) {
            throw Error(ErrorKind::UnknownClass, "bad excluded minor in '" + expr + "': " + e.what());
        }
        return classes::excludedMinors(std::move(minors));
    }
    throw Error(ErrorKind::UnknownClass, "unknown class constructor '" + head + "'");
}

GraphClass classFromConfig(const nlohmann::json& config)
{
    if (!config.is_object())
        throw Error(ErrorKind::UnknownClass, "class config must be a JSON object");
    const std::string kind = config.value("kind", "builtin");
    const nlohmann::json params = config.value("parameters", nlohmann::json::object());
    const std::string name = config.value("name", "");
    if (kind == "builtin")
        return builtinClass(name);
    if (kind == "excludedMinors") {
        if (!params.contains("minors") || !params["minors"].is_array())
            throw Error(ErrorKind::UnknownClass, "excludedMinors config needs parameters.minors");
        std::vector<Graph> minors;
        for (const auto& m : params["minors"])
            minors.push_back(graphFromName(m.get<std::string>()));
        return classes::excludedMinors(std::move(minors), name);
    }
    if (kind == "derived") {
        const std::string op = params.value("op", "");
        if (!params.contains("base"))
            throw Error(ErrorKind::UnknownClass, "derived class config needs parameters.base");
        const auto& baseConfig = params["base"];
        GraphClass base = baseConfig.is_string() ? builtinClass(baseConfig.get<std::string>()) : classFromConfig(baseConfig);
        if (op == "minDegree2Of")
            return classes::minDegree2Of(base);
        if (op == "connectedOf")
            return classes::connectedOf(base);
        throw Error(ErrorKind::UnknownClass, "unknown derived operation '" + op + "'");
    }
    throw Error(ErrorKind::UnknownClass, "unknown class kind '" + kind + "'");
}

} // namespace structura
