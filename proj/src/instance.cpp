#include "graphce/instance.hpp"

#include <fstream>
#include <sstream>

#include "graphce/errors.hpp"

namespace graphce {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw InvalidInput(path + ": " + msg); }

const json& require(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end())
        fail(path, std::string("missing field \"") + key + "\"");
    return *it;
}

int as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer())
        fail(path, "expected an integer");
    return j.get<int>();
}

ExtendedRational as_weight(const json& j, const std::string& path) {
    if (j.is_number_integer())
        return ExtendedRational(Rational(j.get<long long>()));
    if (!j.is_string())
        fail(path, "expected a rational string such as \"-1/2\" or \"-inf\"");
    try {
        return parse_extended(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

Rational as_rational(const json& j, const std::string& path) {
    ExtendedRational w = as_weight(j, path);
    if (w.is_neg_inf())
        fail(path, "-inf is not allowed here");
    return w.value();
}

std::string edge_key(const Edge& e) { return std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1); }

int edge_from_key(const std::string& key, const ValueGraph& g, const std::string& path) {
    auto dash = key.find('-');
    int i = 0;
    int j = 0;
    try {
        if (dash == std::string::npos)
            throw std::invalid_argument("no dash");
        std::size_t used = 0;
        i = std::stoi(key.substr(0, dash), &used);
        if (used != dash)
            throw std::invalid_argument("trailing");
        std::string rest = key.substr(dash + 1);
        j = std::stoi(rest, &used);
        if (used != rest.size())
            throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        fail(path, "edge key \"" + key + "\" is not of the form \"i-j\"");
    }
    auto c = g.edge_coord(i - 1, j - 1);
    if (!c)
        fail(path, "\"" + key + "\" is not an edge of the graph");
    return *c;
}

Bundle as_bundle(const json& j, int n, const std::string& path) {
    if (!j.is_array())
        fail(path, "expected a list of 1-based items");
    Bundle::Mask m = 0;
    for (std::size_t k = 0; k < j.size(); ++k) {
        int i = as_int(j[k], path + "[" + std::to_string(k) + "]");
        if (i < 1 || i > n)
            fail(path + "[" + std::to_string(k) + "]", "item " + std::to_string(i) + " outside [1, " +
                                                          std::to_string(n) + "]");
        m |= Bundle::Mask{1} << (i - 1);
    }
    return Bundle(m);
}

ordered_json bundle_json(Bundle b) {
    ordered_json out = ordered_json::array();
    for (int i : b.items())
        out.push_back(i + 1);
    return out;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // The library message carries the line and column.
        throw InvalidInput(std::string("JSON syntax error: ") + e.what());
    }
}

Instance instance_from_json(const json& j) {
    if (!j.is_object())
        fail("$", "expected an object");
    Instance inst;
    const int n = as_int(require(j, "n", "$"), "$.n");
    if (n < 0 || n > kMaxItems)
        fail("$.n", "item count outside [0, " + std::to_string(kMaxItems) + "]");

    if (auto it = j.find("edges"); it != j.end()) {
        if (!it->is_array())
            fail("$.edges", "expected a list of [i, j] pairs");
        std::vector<Edge> edges;
        for (std::size_t k = 0; k < it->size(); ++k) {
            const std::string p = "$.edges[" + std::to_string(k) + "]";
            const json& e = (*it)[k];
            if (!e.is_array() || e.size() != 2)
                fail(p, "expected a pair [i, j]");
            int u = as_int(e[0], p + "[0]");
            int v = as_int(e[1], p + "[1]");
            if (u < 1 || u > n || v < 1 || v > n)
                fail(p, "endpoint outside [1, " + std::to_string(n) + "]");
            edges.push_back({u - 1, v - 1});
        }
        try {
            inst.graph = ValueGraph(n, std::move(edges));
        } catch (const InvalidInput& e) {
            fail("$.edges", e.what());
        }
    } else {
        inst.graph = ValueGraph::complete(n);
    }
    const ValueGraph& g = inst.graph;

    if (auto it = j.find("items"); it != j.end()) {
        if (!it->is_array() || static_cast<int>(it->size()) != n)
            fail("$.items", "expected " + std::to_string(n) + " names");
        for (std::size_t k = 0; k < it->size(); ++k) {
            if (!(*it)[k].is_string())
                fail("$.items[" + std::to_string(k) + "]", "expected a string");
            inst.items.push_back((*it)[k].get<std::string>());
        }
    } else {
        for (int i = 0; i < n; ++i)
            inst.items.push_back(std::to_string(i + 1));
    }

    const json& agents = require(j, "agents", "$");
    if (!agents.is_array() || agents.empty())
        fail("$.agents", "expected a nonempty list");
    for (std::size_t b = 0; b < agents.size(); ++b) {
        const std::string p = "$.agents[" + std::to_string(b) + "]";
        const json& a = agents[b];
        if (!a.is_object())
            fail(p, "expected an object");
        Agent agent;
        agent.name = std::to_string(b + 1);
        if (auto it = a.find("name"); it != a.end()) {
            if (!it->is_string())
                fail(p + ".name", "expected a string");
            agent.name = it->get<std::string>();
        }
        std::vector<ExtendedRational> w(static_cast<std::size_t>(g.dim()));
        const json& vw = require(a, "vertex_weights", p);
        if (!vw.is_array() || static_cast<int>(vw.size()) != n)
            fail(p + ".vertex_weights", "expected " + std::to_string(n) + " weights");
        for (int i = 0; i < n; ++i)
            w[i] = as_weight(vw[i], p + ".vertex_weights[" + std::to_string(i) + "]");
        if (auto it = a.find("edge_weights"); it != a.end()) {
            if (!it->is_object())
                fail(p + ".edge_weights", "expected an object keyed by \"i-j\"");
            for (const auto& [key, val] : it->items()) {
                const std::string q = p + ".edge_weights[\"" + key + "\"]";
                w[edge_from_key(key, g, q)] = as_weight(val, q);
            }
        }
        agent.valuation = Valuation(std::move(w));
        inst.agents.push_back(std::move(agent));
    }

    const json& supply = require(j, "supply", "$");
    if (!supply.is_array() || static_cast<int>(supply.size()) != n)
        fail("$.supply", "expected " + std::to_string(n) + " entries");
    for (int i = 0; i < n; ++i) {
        const std::string p = "$.supply[" + std::to_string(i) + "]";
        int s = as_int(supply[i], p);
        if (s < 0 || s > inst.m())
            fail(p, "supply " + std::to_string(s) + " outside [0, m = " + std::to_string(inst.m()) + "]");
        inst.supply.push_back(s);
    }

    if (auto it = j.find("mode"); it != j.end()) {
        if (!it->is_object())
            fail("$.mode", "expected an object");
        for (const auto& [key, val] : it->items()) {
            if (!val.is_boolean())
                fail("$.mode." + key, "expected true or false");
            if (key == "walrasian")
                inst.walrasian = val.get<bool>();
            else if (key == "covering")
                inst.covering = val.get<bool>();
            else
                fail("$.mode." + key, "unknown flag");
        }
    }

    if (auto it = j.find("faces"); it != j.end()) {
        if (!it->is_array())
            fail("$.faces", "expected a list of faces");
        for (std::size_t f = 0; f < it->size(); ++f) {
            const std::string p = "$.faces[" + std::to_string(f) + "]";
            const json& face = (*it)[f];
            if (!face.is_array() || face.empty())
                fail(p, "expected a nonempty list of bundles");
            std::vector<Bundle> bundles;
            for (std::size_t q = 0; q < face.size(); ++q)
                bundles.push_back(as_bundle(face[q], n, p + "[" + std::to_string(q) + "]"));
            inst.faces.push_back(std::move(bundles));
        }
    }

    if (auto it = j.find("target"); it != j.end()) {
        if (!it->is_array() || static_cast<int>(it->size()) != g.dim())
            fail("$.target", "expected " + std::to_string(g.dim()) + " coordinates");
        std::vector<int> coords;
        for (std::size_t c = 0; c < it->size(); ++c)
            coords.push_back(as_int((*it)[c], "$.target[" + std::to_string(c) + "]"));
        inst.target = GPoint(std::move(coords));
    }

    for (const auto& [key, val] : j.items())
        if (key != "n" && key != "items" && key != "edges" && key != "agents" && key != "supply" && key != "mode" &&
            key != "faces" && key != "target")
            fail("$." + key, "unknown field");
    return inst;
}

}  // namespace

std::vector<Valuation> Instance::valuations() const {
    std::vector<Valuation> out;
    for (const auto& a : agents)
        out.push_back(a.valuation);
    return out;
}

std::vector<Face> Instance::face_list() const {
    std::vector<Face> out;
    for (const auto& f : faces)
        out.push_back(Face::from_bundles(graph, f));
    return out;
}

Instance parse_instance(const std::string& text) { return instance_from_json(parse_json(text)); }

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_instance(ss.str());
    } catch (const InvalidInput& e) {
        throw InvalidInput(path.string() + ": " + e.what());
    }
}

ordered_json instance_to_json(const Instance& inst) {
    const ValueGraph& g = inst.graph;
    ordered_json j;
    j["n"] = g.n();
    j["items"] = inst.items;
    ordered_json edges = ordered_json::array();
    for (const auto& e : g.edges())
        edges.push_back({e.u + 1, e.v + 1});
    j["edges"] = edges;
    ordered_json agents = ordered_json::array();
    for (const auto& a : inst.agents) {
        ordered_json aj;
        aj["name"] = a.name;
        ordered_json vw = ordered_json::array();
        for (int i = 0; i < g.n(); ++i)
            vw.push_back(to_string(a.valuation[i]));
        aj["vertex_weights"] = vw;
        ordered_json ew = ordered_json::object();
        for (int k = 0; k < g.num_edges(); ++k)
            ew[edge_key(g.edges()[k])] = to_string(a.valuation[g.n() + k]);
        aj["edge_weights"] = ew;
        agents.push_back(aj);
    }
    j["agents"] = agents;
    j["supply"] = inst.supply;
    j["mode"] = {{"walrasian", inst.walrasian}, {"covering", inst.covering}};
    if (!inst.faces.empty()) {
        ordered_json faces = ordered_json::array();
        for (const auto& f : inst.faces) {
            ordered_json fj = ordered_json::array();
            for (Bundle b : f)
                fj.push_back(bundle_json(b));
            faces.push_back(fj);
        }
        j["faces"] = faces;
    }
    if (inst.target)
        j["target"] = inst.target->coords();
    return j;
}

std::string dump_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

std::vector<std::string> corpus_names() { return {"cutlery", "cutlery-shifted", "house", "idp-k4"}; }

namespace {

Instance cutlery(bool shifted) {
    const std::string base = shifted ? "1" : "0";
    const std::string bonus = shifted ? "2" : "1";
    std::ostringstream os;
    os << R"({"n": 3, "items": ["A", "B", "C"], "agents": [)";
    const char* pairs[] = {"1-2", "1-3", "2-3"};
    for (int b = 0; b < 3; ++b) {
        os << (b ? "," : "") << R"({"name": ")" << b + 1 << R"(", "vertex_weights": [")" << base << "\",\"" << base
           << "\",\"" << base << R"("], "edge_weights": {)";
        for (int k = 0; k < 3; ++k)
            os << (k ? "," : "") << '"' << pairs[k] << "\": \"" << (k == b ? bonus : base) << '"';
        os << "}}";
    }
    os << R"(], "supply": [1, 1, 1]})";
    return parse_instance(os.str());
}

Instance placeholder_agents(ValueGraph g, int m, std::vector<int> supply) {
    Instance inst;
    for (int i = 0; i < g.n(); ++i)
        inst.items.push_back(std::to_string(i + 1));
    for (int b = 0; b < m; ++b)
        inst.agents.push_back({std::to_string(b + 1), Valuation(std::vector<ExtendedRational>(g.dim()))});
    inst.graph = std::move(g);
    inst.supply = std::move(supply);
    return inst;
}

}  // namespace

Instance corpus_instance(const std::string& name) {
    if (name == "cutlery")
        return cutlery(false);
    if (name == "cutlery-shifted")
        return cutlery(true);
    if (name == "house") {
        ValueGraph g(5, {{0, 1}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4}});
        Instance inst = placeholder_agents(g, 4, {1, 1, 1, 1, 1});
        inst.faces = {{Bundle{1}, Bundle{0, 2}}, {Bundle{2}, Bundle{1, 3}}, {Bundle{4}, Bundle{0}},
                      {Bundle{4}, Bundle{3}}};
        inst.target = GPoint({1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0});
        return inst;
    }
    if (name == "idp-k4") {
        Instance inst = placeholder_agents(ValueGraph::complete(4), 4, {2, 2, 2, 2});
        inst.faces = {{Bundle(), Bundle{3}},
                      {Bundle{1, 2}, Bundle{0, 2}},
                      {Bundle{1, 2, 3}, Bundle{0, 2, 3}},
                      {Bundle{0, 1}, Bundle{0, 1, 3}}};
        inst.target = GPoint({2, 2, 2, 2, 1, 1, 1, 1, 1, 1});
        return inst;
    }
    std::string known;
    for (const auto& n : corpus_names())
        known += (known.empty() ? "" : ", ") + n;
    throw InvalidInput("unknown corpus instance \"" + name + "\" (known: " + known + ")");
}

std::vector<int> parse_int_list(const std::string& text) {
    std::string s = text;
    if (!s.empty() && s.front() == '[' && s.back() == ']')
        s = s.substr(1, s.size() - 2);
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t b = tok.find_first_not_of(" \t");
        std::size_t e = tok.find_last_not_of(" \t");
        if (b == std::string::npos)
            throw InvalidInput("empty entry in list \"" + text + "\"");
        tok = tok.substr(b, e - b + 1);
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != tok.size())
            throw InvalidInput("\"" + tok + "\" is not an integer");
        out.push_back(v);
    }
    return out;
}

ordered_json allocation_to_json(const Allocation& alloc) {
    ordered_json out = ordered_json::array();
    for (Bundle b : alloc.bundles)
        out.push_back(bundle_json(b));
    return out;
}

Allocation allocation_from_json(const json& j, const ValueGraph& g, int agents) {
    if (!j.is_array() || static_cast<int>(j.size()) != agents)
        fail("$.allocation", "expected one bundle per agent (" + std::to_string(agents) + ")");
    Allocation out;
    for (std::size_t b = 0; b < j.size(); ++b)
        out.bundles.push_back(as_bundle(j[b], g.n(), "$.allocation[" + std::to_string(b) + "]"));
    return out;
}

ordered_json price_to_json(const PriceVector& p, const ValueGraph& g) {
    ordered_json out;
    ordered_json vp = ordered_json::array();
    for (int i = 0; i < g.n(); ++i)
        vp.push_back(to_string(p[i]));
    out["vertex_prices"] = vp;
    ordered_json ep = ordered_json::object();
    for (int k = 0; k < g.num_edges(); ++k)
        ep[edge_key(g.edges()[k])] = to_string(p[g.n() + k]);
    out["edge_prices"] = ep;
    out["linear_only"] = p.linear_only();
    return out;
}

PriceVector price_from_json(const json& j, const ValueGraph& g) {
    if (!j.is_object())
        fail("$.price", "expected an object");
    std::vector<Rational> e(static_cast<std::size_t>(g.dim()));
    const json& vp = require(j, "vertex_prices", "$.price");
    if (!vp.is_array() || static_cast<int>(vp.size()) != g.n())
        fail("$.price.vertex_prices", "expected " + std::to_string(g.n()) + " prices");
    for (int i = 0; i < g.n(); ++i)
        e[i] = as_rational(vp[i], "$.price.vertex_prices[" + std::to_string(i) + "]");
    if (auto it = j.find("edge_prices"); it != j.end()) {
        if (!it->is_object())
            fail("$.price.edge_prices", "expected an object keyed by \"i-j\"");
        for (const auto& [key, val] : it->items()) {
            const std::string q = "$.price.edge_prices[\"" + key + "\"]";
            e[edge_from_key(key, g, q)] = as_rational(val, q);
        }
    }
    bool linear = false;
    if (auto it = j.find("linear_only"); it != j.end()) {
        if (!it->is_boolean())
            fail("$.price.linear_only", "expected true or false");
        linear = it->get<bool>();
    }
    try {
        return PriceVector(g, std::move(e), linear);
    } catch (const InvalidInput& ex) {
        fail("$.price", ex.what());
    }
}

ordered_json result_to_json(const CEResult& r, const ValueGraph& g) {
    ordered_json out;
    out["status"] = to_string(r.status);
    out["point"] = r.point.coords();
    out["allocation"] = allocation_to_json(r.allocation);
    out["price"] = r.price ? price_to_json(*r.price, g) : ordered_json(nullptr);
    out["revenue"] = to_string(r.revenue);
    if (r.big_m)
        out["big_m"] = to_string(*r.big_m);
    return out;
}

AllocationPrice parse_allocation_price(const std::string& text, const ValueGraph& g, int agents) {
    json j = parse_json(text);
    if (!j.is_object())
        fail("$", "expected an object");
    const json& price = require(j, "price", "$");
    if (price.is_null())
        fail("$.price", "no price given");
    return {allocation_from_json(require(j, "allocation", "$"), g, agents), price_from_json(price, g)};
}

}  // namespace graphce
