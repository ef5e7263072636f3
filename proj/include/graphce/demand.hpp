#pragma once

#include <optional>
#include <span>
#include <vector>

#include "graphce/model.hpp"
#include "graphce/polytope.hpp"

namespace graphce {

/// All utility-maximizing bundles of one agent at a price.
struct DemandSet {
    int agent = 0;
    PriceVector price;
    std::vector<Bundle> bundles;  ///< ascending bitmask order
    Rational utility;             ///< the attained maximum, >= 0

    bool contains(Bundle s) const;
};

/**
 * argmax over S of v(S) - <p, a_S>. Only subsets of the finite vertex
 * support are scanned; bundles whose value is -inf are never demanded.
 * Throws CapExceeded if the support has more than `max_support` items.
 */
DemandSet demand_set(const Valuation& v, const PriceVector& p, const ValueGraph& g, int agent = 0,
                     int max_support = 16);

/// v(S) - <p, a_S>, -inf when v(S) is.
ExtendedRational utility(const Valuation& v, Bundle s, const PriceVector& p, const ValueGraph& g);

/// Distinct orderings of a multiset of parts, lexicographic from the sorted order.
std::vector<Allocation> assignments_of(std::vector<Bundle> parts);

struct WelfareResult {
    ExtendedRational welfare = ExtendedRational::neg_inf();  ///< -inf when a has no decomposition
    std::optional<Allocation> allocation;                    ///< first maximizer in enumeration order
};

/// Largest total value over decompositions of a into m vertices and their assignments to agents.
WelfareResult max_welfare(std::span<const Valuation> vs, const GPoint& a, const ValueGraph& g,
                          const EnumerationCaps& caps = {});

/// Sum of the agents' values of their bundles.
ExtendedRational welfare_of(std::span<const Valuation> vs, const Allocation& alloc, const ValueGraph& g);

struct AgentCheck {
    int agent = 0;
    ExtendedRational assigned_utility;
    Rational best_utility;
    std::optional<Bundle> better;  ///< a demanded bundle, set when the assigned one is not demanded
    bool ok() const { return !better.has_value(); }
};

struct CeVerdict {
    std::vector<AgentCheck> agents;
    bool ok() const;
    /// First failing agent, if any.
    const AgentCheck* failure() const;
};

/// Every agent's assigned bundle is in their demand set at p.
CeVerdict verify_ce(std::span<const Valuation> vs, const Allocation& alloc, const PriceVector& p,
                    const ValueGraph& g);

struct SellerDemand {
    std::vector<GPoint> points;  ///< lexicographic
    Rational revenue;
};

/**
 * Revenue-maximizing aggregates among the decomposable points a with
 * pi(a) = supply. Throws PreconditionError if there is no such point.
 */
SellerDemand seller_demand(const PriceVector& p, std::span<const int> supply, int m, const ValueGraph& g,
                           const EnumerationCaps& caps = {});

struct PeVerdict {
    CeVerdict ce;
    bool seller_ok = false;
    Rational revenue;       ///< <p, aggregate>
    Rational best_revenue;  ///< best over the seller's candidates
    bool ok() const { return ce.ok() && seller_ok; }
};

/// verify_ce plus the seller check. Throws InvalidInput if the allocation does not project to supply.
PeVerdict verify_pe(std::span<const Valuation> vs, const Allocation& alloc, const PriceVector& p,
                    std::span<const int> supply, const ValueGraph& g, const EnumerationCaps& caps = {});

struct WalrasianWitness {
    PriceVector price;  ///< linear_only
    Allocation allocation;
    GPoint point;
    Rational revenue;
};

/// A CE at linear prices clearing supply, or nullopt when none exists at any decomposable point.
std::optional<WalrasianWitness> walrasian_exists(std::span<const Valuation> vs, std::span<const int> supply,
                                                 const ValueGraph& g, const EnumerationCaps& caps = {});

}  // namespace graphce
