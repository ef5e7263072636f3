// graphce: competitive equilibria with graphical pricing, from the command line.
//
// Exit codes: 0 found / passed, 1 input error, 2 certified not found / failed.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "graphce/assignment.hpp"
#include "graphce/demand.hpp"
#include "graphce/errors.hpp"
#include "graphce/instance.hpp"
#include "graphce/polytope.hpp"
#include "graphce/pricing.hpp"

using namespace graphce;
using nlohmann::ordered_json;

namespace {

constexpr int kExitFound = 0;
constexpr int kExitInput = 1;
constexpr int kExitNotFound = 2;

struct CapFlags {
    int max_n = 6;
    int max_m = 6;

    EnumerationCaps caps() const {
        if (max_n > 6 || max_m > 6)
            std::cerr << "warning: enumeration caps raised to n <= " << max_n << ", m <= " << max_m
                      << "; running time grows exponentially in both\n";
        return {max_n, max_m};
    }
};

void add_cap_flags(CLI::App* cmd, CapFlags& caps) {
    cmd->add_option("--max-n", caps.max_n, "Largest item count to enumerate")->check(CLI::Range(1, 20));
    cmd->add_option("--max-m", caps.max_m, "Largest agent count to enumerate")->check(CLI::Range(1, 20));
}

// "corpus:NAME" names a built-in instance; anything else is a file path.
Instance resolve_instance(const std::string& arg) {
    const std::string prefix = "corpus:";
    if (arg.rfind(prefix, 0) == 0)
        return corpus_instance(arg.substr(prefix.size()));
    return load_instance(arg);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string bundle_names(Bundle b, const Instance& inst) {
    std::string s = "{";
    bool first = true;
    for (int i : b.items()) {
        s += (first ? "" : ",") + inst.items[i];
        first = false;
    }
    return s + "}";
}

std::string price_line(const PriceVector& p, const ValueGraph& g) {
    std::string s;
    for (int c = 0; c < g.dim(); ++c)
        s += (c ? "  " : "") + g.coord_label(c) + "=" + to_string(p[c]);
    return s;
}

GPoint point_arg(const std::string& text, const ValueGraph& g) {
    GPoint a(parse_int_list(text));
    if (a.size() != g.dim())
        throw InvalidInput("--point has " + std::to_string(a.size()) + " coordinates, graph needs " +
                           std::to_string(g.dim()));
    return a;
}

void print_result_table(const CEResult& r, const Instance& inst) {
    std::cerr << "status   " << to_string(r.status) << "\n";
    if (r.status != CeStatus::Found)
        return;
    std::cerr << "point    " << to_string(r.point) << "\n";
    for (int b = 0; b < r.allocation.agents(); ++b)
        std::cerr << "agent " << inst.agents[b].name << "  " << bundle_names(r.allocation.bundles[b], inst) << "\n";
    std::cerr << "price    " << price_line(*r.price, inst.graph) << "\n";
    std::cerr << "revenue  " << to_string(r.revenue) << "\n";
    if (r.big_m)
        std::cerr << "M        " << to_string(*r.big_m) << "\n";
}

struct SolveArgs {
    std::string instance;
    bool walrasian = false;
    std::string point;
    int jobs = 1;
    CapFlags caps;
};

int run_solve(const SolveArgs& args) {
    Instance inst = resolve_instance(args.instance);
    const ValueGraph& g = inst.graph;
    auto vs = inst.valuations();
    PricingOptions opts;
    opts.walrasian = args.walrasian || inst.walrasian;
    opts.caps = args.caps.caps();
    opts.jobs = args.jobs;

    CEResult r;
    if (inst.covering) {
        GPoint a = args.point.empty() ? covering_point(vs, inst.supply, g) : point_arg(args.point, g);
        r = ce_for_covering(vs, inst.supply, a, g, opts);
    } else if (!args.point.empty()) {
        GPoint a = point_arg(args.point, g);
        auto proj = project(a, g);
        if (proj != inst.supply)
            throw InvalidInput("--point " + to_string(a) + " does not project to the supply");
        r = ce_price_at_point(vs, a, g, opts);
    } else {
        r = optimal_ce(vs, inst.supply, g, opts);
    }
    std::cout << result_to_json(r, g).dump(2) << "\n";
    print_result_table(r, inst);
    if (r.status == CeStatus::Found)
        return kExitFound;
    if (opts.walrasian)
        std::cerr << "no Walrasian equilibrium" << (args.point.empty() ? "" : " at this point") << "\n";
    else
        std::cerr << "no competitive equilibrium" << (args.point.empty() ? "" : " at this point") << "\n";
    return kExitNotFound;
}

struct VerifyArgs {
    std::string instance;
    std::string allocation;
    bool pe = false;
    CapFlags caps;
};

ordered_json ce_json(const CeVerdict& v, const Instance& inst) {
    ordered_json agents = ordered_json::array();
    for (const auto& a : v.agents) {
        ordered_json aj;
        aj["agent"] = inst.agents[a.agent].name;
        aj["assigned_utility"] = to_string(a.assigned_utility);
        aj["best_utility"] = to_string(a.best_utility);
        aj["in_demand"] = a.ok();
        if (a.better) {
            ordered_json items = ordered_json::array();
            for (int i : a.better->items())
                items.push_back(i + 1);
            aj["better_bundle"] = items;
        }
        agents.push_back(aj);
    }
    return agents;
}

int run_verify(const VerifyArgs& args) {
    Instance inst = resolve_instance(args.instance);
    const ValueGraph& g = inst.graph;
    auto vs = inst.valuations();
    AllocationPrice ap = parse_allocation_price(read_file(args.allocation), g, inst.m());

    ordered_json out;
    CeVerdict ce;
    bool pass = false;
    if (args.pe) {
        PeVerdict pe = verify_pe(vs, ap.allocation, ap.price, inst.supply, g, args.caps.caps());
        ce = pe.ce;
        pass = pe.ok();
        out["ce"] = ce.ok();
        out["seller"] = pe.seller_ok;
        out["pe"] = pe.ok();
        out["revenue"] = to_string(pe.revenue);
        out["best_revenue"] = to_string(pe.best_revenue);
    } else {
        ce = verify_ce(vs, ap.allocation, ap.price, g);
        pass = ce.ok();
        out["ce"] = ce.ok();
        out["revenue"] = to_string(inner(ap.price, ap.allocation.aggregate(g)));
    }
    out["agents"] = ce_json(ce, inst);
    std::cout << out.dump(2) << "\n";

    std::cerr << "CE " << (ce.ok() ? "pass" : "fail") << "\n";
    if (const AgentCheck* f = ce.failure())
        std::cerr << "  agent " << inst.agents[f->agent].name << " prefers " << bundle_names(*f->better, inst)
                  << " (utility " << to_string(f->best_utility) << " vs " << to_string(f->assigned_utility)
                  << ")\n";
    if (args.pe)
        std::cerr << "PE " << (pass ? "pass" : "fail") << " (revenue " << out["revenue"].get<std::string>()
                  << ", best " << out["best_revenue"].get<std::string>() << ")\n";
    return pass ? kExitFound : kExitNotFound;
}

struct DemandArgs {
    std::string instance;
    int agent = 1;
    std::string price;
};

int run_demand(const DemandArgs& args) {
    Instance inst = resolve_instance(args.instance);
    const ValueGraph& g = inst.graph;
    if (args.agent < 1 || args.agent > inst.m())
        throw InvalidInput("--agent must be in [1, " + std::to_string(inst.m()) + "]");
    std::vector<Rational> entries;
    std::stringstream ss(args.price);
    for (std::string tok; std::getline(ss, tok, ',');)
        entries.push_back(parse_rational(tok));
    PriceVector p(g, std::move(entries));
    DemandSet ds = demand_set(inst.agents[args.agent - 1].valuation, p, g, args.agent - 1);

    ordered_json out;
    out["agent"] = inst.agents[args.agent - 1].name;
    out["utility"] = to_string(ds.utility);
    ordered_json bundles = ordered_json::array();
    for (Bundle b : ds.bundles) {
        ordered_json items = ordered_json::array();
        for (int i : b.items())
            items.push_back(i + 1);
        bundles.push_back(items);
        std::cerr << bundle_names(b, inst) << "\n";
    }
    out["bundles"] = bundles;
    std::cout << out.dump(2) << "\n";
    return kExitFound;
}

struct DecomposeArgs {
    std::string instance;
    std::string point;
    int n = 0;
    int m = 0;
    CapFlags caps;
};

int run_decompose(const DecomposeArgs& args) {
    Instance inst;
    int m = 0;
    if (!args.instance.empty()) {
        inst = resolve_instance(args.instance);
        m = args.m > 0 ? args.m : inst.m();
    } else {
        if (args.n <= 0 || args.m <= 0)
            throw InvalidInput("give an instance, or --n and --m for the complete graph");
        inst.graph = ValueGraph::complete(args.n);
        m = args.m;
    }
    const ValueGraph& g = inst.graph;
    GPoint a;
    if (!args.point.empty())
        a = point_arg(args.point, g);
    else if (inst.target)
        a = *inst.target;
    else
        throw InvalidInput("no --point given and the instance has no target");

    auto decomps = enumerate_decompositions(a, m, g, args.caps.caps());
    ordered_json out;
    out["point"] = a.coords();
    out["m"] = m;
    ordered_json list = ordered_json::array();
    for (const auto& d : decomps) {
        ordered_json dj = ordered_json::array();
        for (Bundle b : d) {
            ordered_json items = ordered_json::array();
            for (int i : b.items())
                items.push_back(i + 1);
            dj.push_back(items);
        }
        list.push_back(dj);
    }
    out["decompositions"] = list;
    std::cerr << decomps.size() << " decomposition(s) of " << to_string(a) << " into " << m << " vertices\n";

    if (!inst.faces.empty() && args.point.empty()) {
        auto faces = inst.face_list();
        bool mink = minkowski_contains(faces, a);
        auto pick = vertex_sum_contains(faces, a);
        out["minkowski_contains"] = mink;
        out["vertex_sum_contains"] = pick.has_value();
        std::cerr << "in the Minkowski sum of the faces: " << (mink ? "yes" : "no") << "\n";
        std::cerr << "a sum of one vertex per face:      " << (pick ? "yes" : "no") << "\n";
    }
    std::cout << out.dump(2) << "\n";
    return decomps.empty() ? kExitNotFound : kExitFound;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Competitive equilibria with graphical pricing"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Optimal competitive equilibrium (JSON on stdout, table on stderr)");
    solve_cmd->add_option("instance", solve.instance, "Instance file or corpus:NAME")->required();
    solve_cmd->add_flag("--walrasian", solve.walrasian, "Restrict to linear prices");
    solve_cmd->add_option("--point", solve.point, "Solve only at this aggregate point, e.g. 1,1,1,1,0,0");
    solve_cmd->add_option("--jobs", solve.jobs, "Threads for the candidate-point search")->check(CLI::Range(1, 256));
    add_cap_flags(solve_cmd, solve.caps);

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Check an allocation and price");
    verify_cmd->add_option("instance", verify.instance, "Instance file or corpus:NAME")->required();
    verify_cmd->add_option("allocation", verify.allocation, "Allocation + price JSON file")->required();
    verify_cmd->add_flag("--pe", verify.pe, "Also require the seller to be revenue-maximizing");
    add_cap_flags(verify_cmd, verify.caps);

    DemandArgs demand;
    auto* demand_cmd = app.add_subcommand("demand", "Demand set of one agent at a price");
    demand_cmd->add_option("instance", demand.instance, "Instance file or corpus:NAME")->required();
    demand_cmd->add_option("--agent", demand.agent, "1-based agent index");
    demand_cmd->add_option("--price", demand.price, "Comma-separated price over all coordinates")->required();

    DecomposeArgs decompose;
    auto* decompose_cmd = app.add_subcommand("decompose", "Decompositions of a point into m vertices");
    decompose_cmd->add_option("instance", decompose.instance, "Instance file or corpus:NAME");
    decompose_cmd->add_option("--point", decompose.point, "Point over all coordinates (default: instance target)");
    decompose_cmd->add_option("--n", decompose.n, "Items of a complete graph, when no instance is given");
    decompose_cmd->add_option("--m", decompose.m, "Number of vertices (default: agent count)");
    add_cap_flags(decompose_cmd, decompose.caps);

    std::string corpus_name;
    auto* corpus_cmd = app.add_subcommand("corpus", "Print a built-in instance");
    corpus_cmd->add_option("name", corpus_name, "cutlery, cutlery-shifted, house or idp-k4")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*solve_cmd)
            return run_solve(solve);
        if (*verify_cmd)
            return run_verify(verify);
        if (*demand_cmd)
            return run_demand(demand);
        if (*decompose_cmd)
            return run_decompose(decompose);
        if (*corpus_cmd) {
            std::cout << dump_instance(corpus_instance(corpus_name));
            return 0;
        }
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << " (raise with --max-n / --max-m)\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
