#include "graphce/pricing.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "graphce/demand.hpp"
#include "graphce/errors.hpp"

namespace graphce {

const char* to_string(CeStatus s) {
    switch (s) {
    case CeStatus::Found: return "found";
    case CeStatus::InfeasibleAtPoint: return "infeasible-at-point";
    case CeStatus::NoPointFound: return "no-point-found";
    }
    return "?";
}

Rational big_m(std::span<const Valuation> vs, const ValueGraph& g) {
    Rational largest = 0;
    for (const auto& v : vs)
        for (const auto& w : v.weights())
            if (w.is_finite())
                largest = std::max(largest, Rational(abs(w.value())));
    return 1 + Rational(g.dim() + 1) * (1 + largest);
}

Valuation substitute_neg_inf(const Valuation& v, const Rational& M) {
    std::vector<ExtendedRational> w = v.weights();
    for (auto& x : w)
        if (x.is_neg_inf())
            x = ExtendedRational(Rational(-M));
    return Valuation(std::move(w));
}

namespace {

void check_agents(std::span<const Valuation> vs, const ValueGraph& g) {
    if (vs.empty())
        throw InvalidInput("at least one agent is required");
    for (std::size_t b = 0; b < vs.size(); ++b)
        if (vs[b].size() != g.dim())
            throw InvalidInput("agent " + std::to_string(b + 1) + " has " + std::to_string(vs[b].size()) +
                               " weights, graph needs " + std::to_string(g.dim()));
}

std::vector<Rational> to_rational(const GPoint& a) {
    std::vector<Rational> out;
    out.reserve(a.coords().size());
    for (int x : a.coords())
        out.emplace_back(x);
    return out;
}

}  // namespace

LinearProgram ce_program(std::span<const Valuation> vs, const Allocation& alloc, const ValueGraph& g,
                         bool walrasian) {
    check_agents(vs, g);
    if (alloc.agents() != static_cast<int>(vs.size()))
        throw InvalidInput("allocation size does not match agent count");
    const int d = g.dim();
    const Bundle::Mask count = Bundle::Mask{1} << g.n();

    std::vector<GPoint> chis;
    std::vector<std::vector<ExtendedRational>> values(vs.size());
    for (Bundle::Mask t = 0; t < count; ++t)
        chis.push_back(char_vector(Bundle(t), g));
    for (std::size_t b = 0; b < vs.size(); ++b)
        for (Bundle::Mask t = 0; t < count; ++t)
            values[b].push_back(value(vs[b], Bundle(t), g));

    LinearProgram lp(d);
    lp.objective = to_rational(alloc.aggregate(g));
    for (std::size_t b = 0; b < vs.size(); ++b) {
        const Bundle::Mask s = alloc.bundles[b].mask();
        if (s >= count)
            throw InvalidInput("bundle " + to_string(alloc.bundles[b]) + " out of range");
        const ExtendedRational& vs_b = values[b][s];
        if (vs_b.is_neg_inf())
            throw PreconditionError("agent " + std::to_string(b + 1) + " values the assigned bundle at -inf");
        for (Bundle::Mask t = 0; t < count; ++t) {
            if (t == s || values[b][t].is_neg_inf())
                continue;
            std::vector<Rational> row(static_cast<std::size_t>(d));
            for (int c = 0; c < d; ++c)
                row[c] = chis[t][c] - chis[s][c];
            lp.add(std::move(row), Relation::GreaterEqual, values[b][t].value() - vs_b.value());
        }
    }
    if (walrasian)
        for (int c = g.n(); c < d; ++c)
            lp.fixed[c] = 0;
    return lp;
}

CEResult ce_price_at_point(std::span<const Valuation> vs, const GPoint& a, const ValueGraph& g,
                           const PricingOptions& opts) {
    check_agents(vs, g);
    if (a.size() != g.dim())
        throw InvalidInput("point has " + std::to_string(a.size()) + " coordinates, graph needs " +
                           std::to_string(g.dim()));
    CEResult res;
    res.point = a;
    res.status = CeStatus::InfeasibleAtPoint;

    WelfareResult best = max_welfare(vs, a, g, opts.caps);
    if (!best.allocation || best.welfare.is_neg_inf())
        return res;
    res.allocation = *best.allocation;

    LpResult exact = lp_solve(ce_program(vs, res.allocation, g, opts.walrasian));
    if (exact.status == LpStatus::Unbounded)
        throw std::logic_error("CE program unbounded although the empty bundle bounds every agent's price");
    if (exact.status == LpStatus::Infeasible)
        return res;

    const bool any_inf = std::any_of(vs.begin(), vs.end(), [](const Valuation& v) { return v.has_neg_inf(); });
    if (!any_inf) {
        res.status = CeStatus::Found;
        res.price = PriceVector(g, exact.solution, opts.walrasian);
        res.revenue = exact.value;
        return res;
    }

    Rational M = big_m(vs, g);
    for (int round = 0; round < 64; ++round, M *= 2) {
        std::vector<Valuation> tilde;
        for (const auto& v : vs)
            tilde.push_back(substitute_neg_inf(v, M));
        WelfareResult tb = max_welfare(tilde, a, g, opts.caps);
        if (tb.allocation != best.allocation)
            continue;
        LpResult lm = lp_solve(ce_program(tilde, res.allocation, g, opts.walrasian));
        if (lm.status != LpStatus::Optimal || lm.value != exact.value)
            continue;
        res.status = CeStatus::Found;
        res.price = PriceVector(g, lm.solution, opts.walrasian);
        res.revenue = lm.value;
        res.big_m = M;
        return res;
    }
    throw std::logic_error("substituted program did not stabilize");
}

CEResult optimal_ce(std::span<const Valuation> vs, std::span<const int> supply, const ValueGraph& g,
                    const PricingOptions& opts) {
    check_agents(vs, g);
    const int m = static_cast<int>(vs.size());
    if (static_cast<int>(supply.size()) != g.n())
        throw InvalidInput("supply needs one entry per item");
    for (int s : supply)
        if (s < 0 || s > m)
            throw InvalidInput("supply entry " + std::to_string(s) + " outside [0, " + std::to_string(m) + "]");

    auto table = decomposable_points(supply, m, g, opts.caps);
    std::vector<GPoint> points;
    for (const auto& [a, decomps] : table)
        points.push_back(a);

    std::vector<CEResult> results(points.size());
    const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(points.size())));
    if (jobs == 1) {
        for (std::size_t i = 0; i < points.size(); ++i)
            results[i] = ce_price_at_point(vs, points[i], g, opts);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t i; (i = next.fetch_add(1)) < points.size();)
                        results[i] = ce_price_at_point(vs, points[i], g, opts);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        for (auto& th : pool)
            th.join();
        for (auto& e : errors)
            if (e)
                std::rethrow_exception(e);
    }

    CEResult best;
    best.status = CeStatus::NoPointFound;
    for (auto& r : results)
        if (r.status == CeStatus::Found && (best.status != CeStatus::Found || r.revenue > best.revenue))
            best = std::move(r);
    if (best.status != CeStatus::Found)
        best.point = GPoint::zeros(g.dim());
    return best;
}

std::vector<Bundle> covering_supports(std::span<const Valuation> vs, const ValueGraph& g) {
    check_agents(vs, g);
    std::vector<Bundle> out;
    Bundle::Mask covered = 0;
    for (std::size_t b = 0; b < vs.size(); ++b) {
        Bundle s = vs[b].support(g);
        auto items = s.items();
        for (std::size_t p = 0; p < items.size(); ++p)
            for (std::size_t q = p + 1; q < items.size(); ++q) {
                auto c = g.edge_coord(items[p], items[q]);
                if (!c)
                    throw PreconditionError("agent " + std::to_string(b + 1) + " support " + to_string(s) +
                                            " is not a clique of the graph");
                if (vs[b][*c].is_neg_inf())
                    throw PreconditionError("agent " + std::to_string(b + 1) + " has -inf on edge " +
                                            g.coord_label(*c) + " inside its support");
            }
        covered |= s.mask();
        out.push_back(s);
    }
    for (int i = 0; i < g.n(); ++i)
        if (!((covered >> i) & 1U))
            throw PreconditionError("item " + std::to_string(i + 1) + " is in no agent's support");
    return out;
}

bool compatible_with(const GPoint& a, std::span<const Bundle> supports, const ValueGraph& g) {
    for (int k = 0; k < g.num_edges(); ++k) {
        if (a[g.n() + k] <= 0)
            continue;
        const auto& e = g.edges()[k];
        bool inside = std::any_of(supports.begin(), supports.end(),
                                  [&](Bundle s) { return s.contains(e.u) && s.contains(e.v); });
        if (!inside)
            return false;
    }
    return true;
}

namespace {

int uniform_level(std::span<const int> supply) {
    int r = 0;
    for (int s : supply) {
        if (s < 0 || (s > 0 && r > 0 && s != r))
            throw PreconditionError("supply is not of the form {0,r}^n");
        if (s > 0)
            r = s;
    }
    return r;
}

}  // namespace

CEResult ce_for_covering(std::span<const Valuation> vs, std::span<const int> supply, const GPoint& a,
                         const ValueGraph& g, const PricingOptions& opts) {
    auto supports = covering_supports(vs, g);
    if (static_cast<int>(supply.size()) != g.n())
        throw InvalidInput("supply needs one entry per item");
    uniform_level(supply);
    if (a.size() != g.dim())
        throw InvalidInput("point dimension mismatch");
    auto proj = project(a, g);
    if (!std::equal(proj.begin(), proj.end(), supply.begin()))
        throw PreconditionError("point " + to_string(a) + " does not project to the supply");
    if (!compatible_with(a, supports, g))
        throw PreconditionError("point " + to_string(a) + " is not compatible with the covering");
    return ce_price_at_point(vs, a, g, opts);
}

GPoint covering_point(std::span<const Valuation> vs, std::span<const int> supply, const ValueGraph& g) {
    auto supports = covering_supports(vs, g);
    if (static_cast<int>(supply.size()) != g.n())
        throw InvalidInput("supply needs one entry per item");
    const int r = uniform_level(supply);
    std::vector<Bundle::Mask> parts(supports.size(), 0);
    for (int i = 0; i < g.n(); ++i) {
        if (supply[i] == 0)
            continue;
        for (std::size_t b = 0; b < supports.size(); ++b)
            if (supports[b].contains(i)) {
                parts[b] |= Bundle::Mask{1} << i;
                break;
            }
    }
    GPoint a = GPoint::zeros(g.dim());
    for (auto p : parts)
        a += r * char_vector(Bundle(p), g);
    return a;
}

}  // namespace graphce
