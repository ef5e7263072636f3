#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "graphce/demand.hpp"
#include "graphce/model.hpp"
#include "graphce/pricing.hpp"

namespace graphce {

struct Agent {
    std::string name;
    Valuation valuation;
    friend bool operator==(const Agent&, const Agent&) = default;
};

/**
 * An auction on disk. JSON layout:
 *
 *   {"n": 3, "items": ["A","B","C"], "edges": [[1,2],[1,3],[2,3]],
 *    "agents": [{"name": "1", "vertex_weights": ["0","0","-inf"],
 *                "edge_weights": {"1-2": "1/2"}}],
 *    "supply": [1,1,1],
 *    "mode": {"walrasian": false, "covering": false},
 *    "faces": [[[2],[1,3]], ...], "target": [1,1,0,...]}
 *
 * Items and edges are 1-based; "items" defaults to "1".."n", "edges" to the
 * complete graph, missing edge weights to 0. Weights are strings holding an
 * exact rational or "-inf". "faces" (lists of bundles) and "target" (a point
 * over all coordinates) are optional.
 */
struct Instance {
    ValueGraph graph;
    std::vector<std::string> items;
    std::vector<Agent> agents;
    std::vector<int> supply;
    bool walrasian = false;
    bool covering = false;
    std::vector<std::vector<Bundle>> faces;
    std::optional<GPoint> target;

    int m() const { return static_cast<int>(agents.size()); }
    std::vector<Valuation> valuations() const;
    std::vector<Face> face_list() const;

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// Throws InvalidInput naming the offending field, or the line and column of a syntax error.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::filesystem::path& path);

nlohmann::ordered_json instance_to_json(const Instance& inst);
std::string dump_instance(const Instance& inst);

/// Built-in instances: "cutlery", "cutlery-shifted", "house", "idp-k4".
std::vector<std::string> corpus_names();
/// Throws InvalidInput on an unknown name.
Instance corpus_instance(const std::string& name);

/// Parses "1,0,2" or "[1,0,2]".
std::vector<int> parse_int_list(const std::string& text);

// Allocation + price files:
//   {"allocation": [[1,2],[3],[]],
//    "price": {"vertex_prices": ["0","0","0"], "edge_prices": {"1-2": "1"}, "linear_only": false}}
// A solve result uses the same two keys plus "status", "point", "revenue" and optionally "big_m".

nlohmann::ordered_json allocation_to_json(const Allocation& alloc);
Allocation allocation_from_json(const nlohmann::json& j, const ValueGraph& g, int agents);

nlohmann::ordered_json price_to_json(const PriceVector& p, const ValueGraph& g);
PriceVector price_from_json(const nlohmann::json& j, const ValueGraph& g);

nlohmann::ordered_json result_to_json(const CEResult& r, const ValueGraph& g);

struct AllocationPrice {
    Allocation allocation;
    PriceVector price;
};

AllocationPrice parse_allocation_price(const std::string& text, const ValueGraph& g, int agents);

}  // namespace graphce
