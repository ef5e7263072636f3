#include "graphce/demand.hpp"

#include <algorithm>

#include "graphce/errors.hpp"
#include "graphce/pricing.hpp"

namespace graphce {

bool DemandSet::contains(Bundle s) const { return std::binary_search(bundles.begin(), bundles.end(), s); }

ExtendedRational utility(const Valuation& v, Bundle s, const PriceVector& p, const ValueGraph& g) {
    ExtendedRational val = value(v, s, g);
    if (val.is_neg_inf())
        return val;
    return ExtendedRational(val.value() - price_of(p, s, g));
}

DemandSet demand_set(const Valuation& v, const PriceVector& p, const ValueGraph& g, int agent, int max_support) {
    if (v.size() != g.dim() || p.size() != g.dim())
        throw InvalidInput("valuation or price dimension mismatch");
    Bundle support = v.support(g);
    if (support.size() > max_support)
        throw CapExceeded("agent " + std::to_string(agent + 1) + " has support of size " +
                          std::to_string(support.size()) + " > " + std::to_string(max_support));
    DemandSet out;
    out.agent = agent;
    out.price = p;
    out.utility = 0;
    out.bundles.push_back(Bundle());
    const Bundle::Mask full = support.mask();
    // Submasks of the support in increasing order.
    for (Bundle::Mask s = (0 - full) & full; s != 0; s = (s - full) & full) {
        ExtendedRational u = utility(v, Bundle(s), p, g);
        if (u.is_neg_inf())
            continue;
        const Rational& x = u.value();
        if (x > out.utility) {
            out.utility = x;
            out.bundles.assign(1, Bundle(s));
        } else if (x == out.utility) {
            out.bundles.push_back(Bundle(s));
        }
    }
    return out;
}

std::vector<Allocation> assignments_of(std::vector<Bundle> parts) {
    std::sort(parts.begin(), parts.end());
    std::vector<Allocation> out;
    do {
        out.push_back({parts});
    } while (std::next_permutation(parts.begin(), parts.end()));
    return out;
}

ExtendedRational welfare_of(std::span<const Valuation> vs, const Allocation& alloc, const ValueGraph& g) {
    if (alloc.agents() != static_cast<int>(vs.size()))
        throw InvalidInput("allocation has " + std::to_string(alloc.agents()) + " bundles for " +
                           std::to_string(vs.size()) + " agents");
    ExtendedRational total;
    for (std::size_t b = 0; b < vs.size(); ++b)
        total += value(vs[b], alloc.bundles[b], g);
    return total;
}

WelfareResult max_welfare(std::span<const Valuation> vs, const GPoint& a, const ValueGraph& g,
                          const EnumerationCaps& caps) {
    WelfareResult out;
    DecompositionEnumerator it(a, static_cast<int>(vs.size()), g, caps);
    while (auto parts = it.next())
        for (auto& alloc : assignments_of(*parts)) {
            ExtendedRational w = welfare_of(vs, alloc, g);
            if (!out.allocation || w > out.welfare) {
                out.welfare = w;
                out.allocation = std::move(alloc);
            }
        }
    return out;
}

bool CeVerdict::ok() const { return failure() == nullptr; }

const AgentCheck* CeVerdict::failure() const {
    for (const auto& a : agents)
        if (!a.ok())
            return &a;
    return nullptr;
}

CeVerdict verify_ce(std::span<const Valuation> vs, const Allocation& alloc, const PriceVector& p,
                    const ValueGraph& g) {
    if (alloc.agents() != static_cast<int>(vs.size()))
        throw InvalidInput("allocation has " + std::to_string(alloc.agents()) + " bundles for " +
                           std::to_string(vs.size()) + " agents");
    CeVerdict out;
    for (int b = 0; b < alloc.agents(); ++b) {
        DemandSet ds = demand_set(vs[b], p, g, b);
        AgentCheck check;
        check.agent = b;
        check.assigned_utility = utility(vs[b], alloc.bundles[b], p, g);
        check.best_utility = ds.utility;
        if (!ds.contains(alloc.bundles[b])) {
            // Prefer a demanded bundle with strictly larger utility; the only other
            // way to fail is an assigned bundle of value -inf.
            check.better = ds.bundles.front();
        }
        out.agents.push_back(std::move(check));
    }
    return out;
}

SellerDemand seller_demand(const PriceVector& p, std::span<const int> supply, int m, const ValueGraph& g,
                           const EnumerationCaps& caps) {
    if (p.size() != g.dim())
        throw InvalidInput("price dimension mismatch");
    auto points = decomposable_points(supply, m, g, caps);
    if (points.empty())
        throw PreconditionError("no decomposable point projects to the supply");
    SellerDemand out;
    bool first = true;
    for (const auto& [a, decomps] : points) {
        Rational r = inner(p, a);
        if (first || r > out.revenue) {
            out.revenue = r;
            out.points.assign(1, a);
            first = false;
        } else if (r == out.revenue) {
            out.points.push_back(a);
        }
    }
    return out;
}

PeVerdict verify_pe(std::span<const Valuation> vs, const Allocation& alloc, const PriceVector& p,
                    std::span<const int> supply, const ValueGraph& g, const EnumerationCaps& caps) {
    if (static_cast<int>(supply.size()) != g.n())
        throw InvalidInput("supply needs one entry per item");
    GPoint a = alloc.aggregate(g);
    auto proj = project(a, g);
    if (!std::equal(proj.begin(), proj.end(), supply.begin()))
        throw InvalidInput("allocation sells " + to_string(GPoint(proj)) + ", supply is " +
                           to_string(GPoint(std::vector<int>(supply.begin(), supply.end()))));
    PeVerdict out;
    out.ce = verify_ce(vs, alloc, p, g);
    out.revenue = inner(p, a);
    SellerDemand sd = seller_demand(p, supply, alloc.agents(), g, caps);
    out.best_revenue = sd.revenue;
    out.seller_ok = std::binary_search(sd.points.begin(), sd.points.end(), a);
    return out;
}

std::optional<WalrasianWitness> walrasian_exists(std::span<const Valuation> vs, std::span<const int> supply,
                                                 const ValueGraph& g, const EnumerationCaps& caps) {
    PricingOptions opts;
    opts.walrasian = true;
    opts.caps = caps;
    CEResult r = optimal_ce(vs, supply, g, opts);
    if (r.status != CeStatus::Found)
        return std::nullopt;
    return WalrasianWitness{*r.price, r.allocation, r.point, r.revenue};
}

}  // namespace graphce
