#include "catch_amalgamated.hpp"

#include <random>

#include "graphce/demand.hpp"
#include "graphce/errors.hpp"
#include "graphce/instance.hpp"
#include "oracle/ce_oracle.hpp"
#include "support/gen.hpp"

using namespace graphce;

namespace {

PriceVector price(const ValueGraph& g, std::vector<int> e) {
    std::vector<Rational> r(e.begin(), e.end());
    return PriceVector(g, r);
}

// Demand by scanning all 2^n bundles with the oracle's own value function.
std::vector<Bundle> brute_demand(const Valuation& v, const PriceVector& p, const ValueGraph& g, Rational& best) {
    auto w = oracle::weights_of(v);
    std::vector<Bundle> out;
    bool any = false;
    for (unsigned s = 0; s < (1U << g.n()); ++s) {
        auto val = oracle::bundle_value(w, s, g);
        if (!val)
            continue;
        auto x = oracle::indicator(s, g);
        Rational u = *val;
        for (int c = 0; c < g.dim(); ++c)
            u -= p[c] * x[c];
        if (!any || u > best) {
            best = u;
            out.assign(1, Bundle(s));
            any = true;
        } else if (u == best) {
            out.push_back(Bundle(s));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("cutlery demand sets") {
    Instance inst = corpus_instance("cutlery");
    const auto& g = inst.graph;
    auto ds = demand_set(inst.agents[0].valuation, price(g, {0, 0, 0, 1, 1, 1}), g);
    CHECK(ds.bundles == std::vector<Bundle>{Bundle{}, Bundle{0}, Bundle{1}, Bundle{0, 1}, Bundle{2}});
    CHECK(ds.utility == 0);
    CHECK(ds.contains(Bundle{}));

    Instance shifted = corpus_instance("cutlery-shifted");
    auto sd = demand_set(shifted.agents[0].valuation, price(g, {3, 3, 1, 0, 0, 0}), g);
    CHECK(sd.contains(Bundle{0, 1, 2}));
}

TEST_CASE("zero price and nonnegative weights: the full support is demanded") {
    std::mt19937 rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        int n = gen::uniform(rng, 1, 5);
        auto g = ValueGraph::complete(n);
        auto v = gen::int_valuation(rng, g, 0, 3);
        auto ds = demand_set(v, PriceVector::zero(g), g);
        CHECK(ds.contains(Bundle(static_cast<Bundle::Mask>((1U << n) - 1))));
    }
}

TEST_CASE("demand sets match an exhaustive scan, with -inf weights and sparse graphs") {
    std::mt19937 rng(4);
    for (int trial = 0; trial < 300; ++trial) {
        int n = gen::uniform(rng, 1, 5);
        ValueGraph g = gen::random_graph(rng, n, 0.6);
        std::vector<ExtendedRational> w;
        for (int c = 0; c < g.dim(); ++c)
            w.push_back(gen::coin(rng, 0.15) ? ExtendedRational::neg_inf() : ExtendedRational(gen::rational(rng, 4, 2)));
        Valuation v(w);
        std::vector<Rational> pe;
        for (int c = 0; c < g.dim(); ++c)
            pe.push_back(gen::rational(rng, 4, 3));
        PriceVector p(g, pe);
        Rational best;
        auto ref = brute_demand(v, p, g, best);
        auto ds = demand_set(v, p, g);
        CHECK(ds.bundles == ref);
        CHECK(ds.utility == best);
        CHECK(ds.utility >= 0);
        if (ds.utility == 0)
            CHECK(ds.contains(Bundle{}));
        for (Bundle b : ds.bundles)
            CHECK(b.subset_of(v.support(g)));
    }
}

TEST_CASE("demand enumeration cap") {
    auto g = ValueGraph::complete(5);
    CHECK_THROWS_AS(demand_set(Valuation(std::vector<ExtendedRational>(15)), PriceVector::zero(g), g, 0, 4), CapExceeded);
}

TEST_CASE("max welfare") {
    Instance inst = corpus_instance("cutlery");
    auto vs = inst.valuations();
    const auto& g = inst.graph;
    auto full = max_welfare(vs, GPoint({1, 1, 1, 1, 1, 1}), g);
    CHECK(full.welfare == ExtendedRational(1));
    REQUIRE(full.allocation);
    CHECK(full.allocation->aggregate(g) == GPoint({1, 1, 1, 1, 1, 1}));
    CHECK(max_welfare(vs, GPoint({1, 1, 1, 0, 0, 0}), g).welfare == ExtendedRational(0));
    auto none = max_welfare(vs, GPoint({1, 1, 1, 1, 1, 0}), g);
    CHECK(none.welfare.is_neg_inf());
    CHECK_FALSE(none.allocation);

    std::vector<Valuation> one{Valuation::from_ints(std::vector<int>{2, -1, 4, 3, -7, 1})};
    for (Bundle::Mask s = 0; s < 8; ++s)
        CHECK(max_welfare(one, char_vector(Bundle(s), g), g).welfare == value(one[0], Bundle(s), g));
}

TEST_CASE("max welfare dominates every decomposition and matches ordered allocations") {
    std::mt19937 rng(6);
    for (int trial = 0; trial < 80; ++trial) {
        int n = gen::uniform(rng, 1, 3), m = gen::uniform(rng, 1, 3);
        auto g = ValueGraph::complete(n);
        auto vs = gen::int_valuations(rng, g, m, -3, 3);
        std::vector<int> supply;
        for (int i = 0; i < n; ++i)
            supply.push_back(gen::uniform(rng, 0, m));
        std::map<GPoint, ExtendedRational> best;
        for (const auto& alloc : oracle::clearing_allocations(supply, m)) {
            Allocation a;
            for (unsigned s : alloc)
                a.bundles.push_back(Bundle(s));
            GPoint pt = a.aggregate(g);
            ExtendedRational w = welfare_of(vs, a, g);
            auto it = best.find(pt);
            if (it == best.end() || w > it->second)
                best[pt] = w;
        }
        for (const auto& [pt, w] : best) {
            auto r = max_welfare(vs, pt, g);
            CHECK(r.welfare == w);
            REQUIRE(r.allocation);
            CHECK(welfare_of(vs, *r.allocation, g) == r.welfare);
        }
    }
}

TEST_CASE("verify_ce on cutlery") {
    Instance inst = corpus_instance("cutlery");
    auto vs = inst.valuations();
    const auto& g = inst.graph;
    auto p = price(g, {0, 0, 0, 1, 1, 1});
    CHECK(verify_ce(vs, Allocation{{Bundle{0}, Bundle{1}, Bundle{2}}}, p, g).ok());
    Allocation ab_c{{Bundle{0, 1}, Bundle{2}, Bundle{}}};
    CHECK(verify_ce(vs, ab_c, p, g).ok());
    CHECK(inner(p, ab_c.aggregate(g)) == 1);

    auto bad = verify_ce(vs, Allocation{{Bundle{0, 1, 2}, Bundle{}, Bundle{}}}, p, g);
    REQUIRE_FALSE(bad.ok());
    REQUIRE(bad.failure());
    CHECK(bad.failure()->agent == 0);
    CHECK(bad.failure()->assigned_utility == ExtendedRational(-2));
    CHECK(bad.failure()->best_utility == 0);
    REQUIRE(bad.failure()->better);
    CHECK(utility(vs[0], *bad.failure()->better, p, g) == ExtendedRational(0));

    CHECK_THROWS_AS(verify_ce(vs, Allocation{{Bundle{}}}, p, g), InvalidInput);
}

TEST_CASE("verify_ce is equivalent to attaining each agent's best utility") {
    std::mt19937 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        int n = gen::uniform(rng, 1, 4), m = gen::uniform(rng, 1, 3);
        auto g = ValueGraph::complete(n);
        auto vs = gen::int_valuations(rng, g, m, -2, 2);
        std::vector<Rational> pe;
        for (int c = 0; c < g.dim(); ++c)
            pe.push_back(gen::uniform(rng, -2, 2));
        PriceVector p(g, pe);
        Allocation a;
        for (int b = 0; b < m; ++b)
            a.bundles.push_back(gen::random_bundle(rng, n));
        bool expect = true;
        for (int b = 0; b < m; ++b)
            expect = expect && utility(vs[b], a.bundles[b], p, g) == ExtendedRational(demand_set(vs[b], p, g).utility);
        CHECK(verify_ce(vs, a, p, g).ok() == expect);
    }
}

TEST_CASE("seller demand") {
    auto g = ValueGraph::complete(3);
    std::vector<int> supply{1, 1, 1};
    auto sd = seller_demand(price(g, {0, 0, 0, 1, 1, 1}), supply, 3, g);
    CHECK(sd.points == std::vector<GPoint>{GPoint({1, 1, 1, 1, 1, 1})});
    CHECK(sd.revenue == 3);

    auto flat = seller_demand(PriceVector::zero(g), supply, 3, g);
    CHECK(flat.revenue == 0);
    CHECK(flat.points.size() == decomposable_points(supply, 3, g).size());

    auto sh = seller_demand(price(g, {3, 3, 1, 0, 0, 0}), supply, 3, g);
    CHECK(sh.revenue == 7);
    CHECK(std::find(sh.points.begin(), sh.points.end(), GPoint({1, 1, 1, 1, 1, 1})) != sh.points.end());

    std::vector<int> over{2, 0, 0};
    CHECK_THROWS_AS(seller_demand(PriceVector::zero(g), over, 1, g), PreconditionError);
}

TEST_CASE("verify_pe") {
    Instance inst = corpus_instance("cutlery");
    const auto& g = inst.graph;
    auto pe = verify_pe(inst.valuations(), Allocation{{Bundle{0, 1}, Bundle{2}, Bundle{}}}, price(g, {0, 0, 0, 1, 1, 1}),
                        inst.supply, g);
    CHECK(pe.ce.ok());
    CHECK_FALSE(pe.seller_ok);
    CHECK_FALSE(pe.ok());
    CHECK(pe.revenue == 1);
    CHECK(pe.best_revenue == 3);

    Instance shifted = corpus_instance("cutlery-shifted");
    auto ok = verify_pe(shifted.valuations(), Allocation{{Bundle{0, 1, 2}, Bundle{}, Bundle{}}},
                        price(g, {3, 3, 1, 0, 0, 0}), shifted.supply, g);
    CHECK(ok.ok());
    CHECK(ok.revenue == 7);

    auto g1 = ValueGraph::complete(1);
    std::vector<Valuation> zero{Valuation(std::vector<ExtendedRational>(1))};
    std::vector<int> none{0};
    CHECK(verify_pe(zero, Allocation{{Bundle{}}}, PriceVector::zero(g1), none, g1).ok());

    std::vector<int> wrong{1, 1, 0};
    CHECK_THROWS_AS(verify_pe(inst.valuations(), Allocation{{Bundle{0, 1}, Bundle{2}, Bundle{}}},
                              price(g, {0, 0, 0, 1, 1, 1}), wrong, g),
                    InvalidInput);
}

TEST_CASE("PE implies CE with revenue at least any CE at the same price") {
    std::mt19937 rng(10);
    int pe_seen = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int n = gen::uniform(rng, 1, 3), m = gen::uniform(rng, 1, 3);
        auto g = ValueGraph::complete(n);
        auto vs = gen::int_valuations(rng, g, m, -2, 2);
        std::vector<int> supply;
        for (int i = 0; i < n; ++i)
            supply.push_back(gen::uniform(rng, 0, m));
        std::vector<Rational> pe;
        for (int c = 0; c < g.dim(); ++c)
            pe.push_back(gen::uniform(rng, -2, 2));
        PriceVector p(g, pe);
        std::vector<Rational> ce_revenues;
        std::vector<PeVerdict> pes;
        for (const auto& raw : oracle::clearing_allocations(supply, m)) {
            Allocation a;
            for (unsigned s : raw)
                a.bundles.push_back(Bundle(s));
            auto v = verify_pe(vs, a, p, supply, g);
            if (v.ce.ok())
                ce_revenues.push_back(v.revenue);
            if (v.ok())
                pes.push_back(v);
        }
        for (const auto& v : pes) {
            ++pe_seen;
            CHECK(v.ce.ok());
            for (const auto& r : ce_revenues)
                CHECK(v.revenue >= r);
        }
    }
    CHECK(pe_seen > 0);
}

TEST_CASE("Walrasian equilibria") {
    Instance inst = corpus_instance("cutlery");
    CHECK_FALSE(walrasian_exists(inst.valuations(), inst.supply, inst.graph));

    Instance shifted = corpus_instance("cutlery-shifted");
    auto w = walrasian_exists(shifted.valuations(), shifted.supply, shifted.graph);
    REQUIRE(w);
    CHECK(w->price.linear_only());
    CHECK(w->revenue == 7);
    CHECK(verify_ce(shifted.valuations(), w->allocation, w->price, shifted.graph).ok());

    auto g = ValueGraph::complete(3);
    std::vector<Valuation> additive{Valuation::from_ints(std::vector<int>{2, 0, 5, 0, 0, 0})};
    std::vector<int> ones{1, 1, 1};
    auto a = walrasian_exists(additive, ones, g);
    REQUIRE(a);
    CHECK(a->price == PriceVector::linear(g, std::vector<Rational>{2, 0, 5}));
}
