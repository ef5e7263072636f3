#pragma once

#include <optional>
#include <span>
#include <vector>

#include "graphce/lp.hpp"
#include "graphce/model.hpp"
#include "graphce/polytope.hpp"

namespace graphce {

enum class CeStatus { Found, InfeasibleAtPoint, NoPointFound };

/// "found", "infeasible-at-point", "no-point-found".
const char* to_string(CeStatus s);

struct CEResult {
    CeStatus status = CeStatus::NoPointFound;
    GPoint point;
    Allocation allocation;
    std::optional<PriceVector> price;
    Rational revenue;
    std::optional<Rational> big_m;  ///< the M used when -inf weights were replaced
};

struct PricingOptions {
    bool walrasian = false;  ///< fix every edge price to zero
    EnumerationCaps caps;
    int jobs = 1;            ///< threads for the candidate-point search in optimal_ce
};

/// 1 + (d+1)(1 + largest finite |w|) over all agents and coordinates.
Rational big_m(std::span<const Valuation> vs, const ValueGraph& g);

/// Every -inf weight replaced by -M.
Valuation substitute_neg_inf(const Valuation& v, const Rational& M);

/**
 * max <p, a> subject to: for every agent b and bundle T,
 * <p, a_T - a_{S^b}> >= v^b(T) - v^b(S^b), where S^b is the agent's bundle
 * in `alloc` and a = aggregate(alloc). Rows with v^b(T) = -inf are omitted;
 * every v^b(S^b) must be finite. In walrasian mode edge prices are fixed to 0.
 */
LinearProgram ce_program(std::span<const Valuation> vs, const Allocation& alloc, const ValueGraph& g,
                         bool walrasian);

/**
 * The revenue-maximizing CE price at aggregate point a, with its allocation.
 *
 * A price supports an allocation only if the allocation maximizes welfare
 * among decompositions of a, and then it supports every welfare maximizer.
 * So one LP, for the first maximizer in enumeration order, settles the
 * point. With -inf weights present the LP is also solved with -inf replaced
 * by -M, doubling M from big_m until the substituted problem has the same
 * maximizer and the same optimum; that price is returned.
 */
CEResult ce_price_at_point(std::span<const Valuation> vs, const GPoint& a, const ValueGraph& g,
                           const PricingOptions& opts = {});

/**
 * Revenue-maximal CE over all decomposable points projecting to supply.
 * Ties go to the lexicographically smallest point. `opts.jobs` threads never
 * change the answer.
 */
CEResult optimal_ce(std::span<const Valuation> vs, std::span<const int> supply, const ValueGraph& g,
                    const PricingOptions& opts = {});

/**
 * Checks that every agent bids on a clique: finite weights on the vertices and
 * edges of a clique S^b of g, -inf on every other vertex. Throws
 * PreconditionError otherwise or when the supports do not cover all items.
 * Returns the supports.
 */
std::vector<Bundle> covering_supports(std::span<const Valuation> vs, const ValueGraph& g);

/// Positive edge coordinates of a all lie inside some support.
bool compatible_with(const GPoint& a, std::span<const Bundle> supports, const ValueGraph& g);

/**
 * CE at a point a compatible with a covering, for supply in {0,r}^n.
 * Throws PreconditionError on a failed covering check, a supply outside
 * {0,r}^n, a point not projecting to supply, or an incompatible point.
 */
CEResult ce_for_covering(std::span<const Valuation> vs, std::span<const int> supply, const GPoint& a,
                         const ValueGraph& g, const PricingOptions& opts = {});

/**
 * r * sum_b chi(K_{V^b}) for the partition that puts each supplied item with
 * the first agent bidding on it.
 */
GPoint covering_point(std::span<const Valuation> vs, std::span<const int> supply, const ValueGraph& g);

}  // namespace graphce
