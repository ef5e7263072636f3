#include "catch_amalgamated.hpp"

#include <random>

#include "graphce/demand.hpp"
#include "graphce/errors.hpp"
#include "graphce/instance.hpp"
#include "graphce/pricing.hpp"
#include "support/gen.hpp"

using namespace graphce;

namespace {

Valuation neg_inf_outside(const Valuation& v, Bundle support, const ValueGraph& g) {
    std::vector<ExtendedRational> w = v.weights();
    for (int i = 0; i < g.n(); ++i)
        if (!support.contains(i))
            w[i] = ExtendedRational::neg_inf();
    for (int k = 0; k < g.num_edges(); ++k) {
        auto e = g.edges()[k];
        if (!support.contains(e.u) || !support.contains(e.v))
            w[g.n() + k] = ExtendedRational::neg_inf();
    }
    return Valuation(w);
}

}  // namespace

TEST_CASE("big M") {
    auto g = ValueGraph::complete(3);
    std::vector<Valuation> vs{Valuation::finite(std::vector<Rational>{1, -1, Rational(1) / 2, 0, 0, -1})};
    CHECK(big_m(vs, g) == 15);
    std::vector<Valuation> zero{Valuation(std::vector<ExtendedRational>(6))};
    CHECK(big_m(zero, g) == 8);
    std::vector<ExtendedRational> w(6, ExtendedRational(2));
    w[0] = ExtendedRational::neg_inf();
    std::vector<Valuation> with_inf{Valuation(w)};
    CHECK(big_m(with_inf, g) == 22);
    CHECK(substitute_neg_inf(with_inf[0], 22)[0] == ExtendedRational(-22));
}

TEST_CASE("CE price at cutlery points") {
    Instance inst = corpus_instance("cutlery");
    auto vs = inst.valuations();
    const auto& g = inst.graph;

    auto singles = ce_price_at_point(vs, GPoint({1, 1, 1, 0, 0, 0}), g);
    REQUIRE(singles.status == CeStatus::Found);
    CHECK(singles.revenue == 0);
    CHECK(verify_ce(vs, singles.allocation, *singles.price, g).ok());
    CHECK_FALSE(singles.big_m);

    auto pair = ce_price_at_point(vs, GPoint({1, 1, 1, 1, 0, 0}), g);
    REQUIRE(pair.status == CeStatus::Found);
    CHECK(pair.revenue == 1);
    CHECK(inner(*pair.price, pair.point) == pair.revenue);
    CHECK(verify_ce(vs, pair.allocation, *pair.price, g).ok());
}

TEST_CASE("no CE at the non-decomposable K4 point") {
    auto g = ValueGraph::complete(4);
    std::mt19937 rng(1);
    auto vs = gen::int_valuations(rng, g, 4, -3, 3);
    auto r = ce_price_at_point(vs, GPoint({2, 2, 2, 2, 1, 1, 1, 1, 1, 1}), g);
    CHECK(r.status == CeStatus::InfeasibleAtPoint);
    CHECK_FALSE(r.price);
}

TEST_CASE("optimal CE on the corpus") {
    Instance cut = corpus_instance("cutlery");
    auto r = optimal_ce(cut.valuations(), cut.supply, cut.graph);
    REQUIRE(r.status == CeStatus::Found);
    CHECK(r.revenue == 1);
    CHECK(verify_ce(cut.valuations(), r.allocation, *r.price, cut.graph).ok());

    Instance sh = corpus_instance("cutlery-shifted");
    auto s = optimal_ce(sh.valuations(), sh.supply, sh.graph);
    REQUIRE(s.status == CeStatus::Found);
    CHECK(s.revenue == 7);
    CHECK(verify_ce(sh.valuations(), s.allocation, *s.price, sh.graph).ok());
    PriceVector witness(sh.graph, {3, 3, 1, 0, 0, 0});
    CHECK(verify_ce(sh.valuations(), Allocation{{Bundle{0, 1, 2}, Bundle{}, Bundle{}}}, witness, sh.graph).ok());

    std::vector<int> none{0, 0, 0};
    auto z = optimal_ce(cut.valuations(), none, cut.graph);
    REQUIRE(z.status == CeStatus::Found);
    CHECK(z.revenue == 0);
    CHECK(z.allocation.bundles == std::vector<Bundle>(3, Bundle{}));
    CHECK(verify_ce(cut.valuations(), z.allocation, *z.price, cut.graph).ok());

    std::vector<int> too_much{4, 0, 0};
    CHECK_THROWS_AS(optimal_ce(cut.valuations(), too_much, cut.graph), InvalidInput);
}

TEST_CASE("optimal CE dominates every point and is sound") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        int n = gen::uniform(rng, 1, 4), m = gen::uniform(rng, 1, 3);
        auto g = ValueGraph::complete(n);
        auto vs = gen::int_valuations(rng, g, m, -4, 4);
        std::vector<int> supply;
        for (int i = 0; i < n; ++i)
            supply.push_back(gen::uniform(rng, 0, m));
        auto best = optimal_ce(vs, supply, g);
        REQUIRE(best.status == CeStatus::Found);
        CHECK(verify_ce(vs, best.allocation, *best.price, g).ok());
        CHECK(inner(*best.price, best.point) == best.revenue);
        for (const auto& [a, d] : decomposable_points(supply, m, g)) {
            auto r = ce_price_at_point(vs, a, g);
            if (r.status != CeStatus::Found)
                continue;
            CHECK(verify_ce(vs, r.allocation, *r.price, g).ok());
            CHECK(best.revenue >= r.revenue);
            PricingOptions w;
            w.walrasian = true;
            auto lin = ce_price_at_point(vs, a, g, w);
            if (lin.status == CeStatus::Found) {
                CHECK(lin.price->linear_only());
                CHECK(verify_ce(vs, lin.allocation, *lin.price, g).ok());
                CHECK(lin.revenue <= r.revenue);
            }
        }
    }
}

TEST_CASE("walrasian found implies graphical found at the same point") {
    std::mt19937 rng(22);
    int walrasian = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int n = gen::uniform(rng, 1, 3), m = gen::uniform(rng, 1, 3);
        auto g = ValueGraph::complete(n);
        auto vs = gen::int_valuations(rng, g, m, -2, 2);
        std::vector<int> supply;
        for (int i = 0; i < n; ++i)
            supply.push_back(gen::uniform(rng, 0, m));
        PricingOptions w;
        w.walrasian = true;
        for (const auto& [a, d] : decomposable_points(supply, m, g)) {
            auto lin = ce_price_at_point(vs, a, g, w);
            if (lin.status == CeStatus::Found) {
                ++walrasian;
                CHECK(ce_price_at_point(vs, a, g).status == CeStatus::Found);
            }
        }
    }
    CHECK(walrasian > 0);
}

TEST_CASE("thread count does not change the answer") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = ValueGraph::complete(3);
        auto vs = gen::int_valuations(rng, g, 3, -3, 3);
        std::vector<int> supply{gen::uniform(rng, 0, 3), gen::uniform(rng, 0, 3), gen::uniform(rng, 0, 3)};
        PricingOptions one, many;
        many.jobs = 4;
        auto a = optimal_ce(vs, supply, g, one);
        auto b = optimal_ce(vs, supply, g, many);
        CHECK(a.status == b.status);
        CHECK(a.point == b.point);
        CHECK(a.allocation == b.allocation);
        CHECK(a.price == b.price);
        CHECK(a.revenue == b.revenue);
    }
}

TEST_CASE("covering valuations") {
    auto g = ValueGraph::complete(3);
    std::mt19937 rng(24);

    SECTION("complete supports reduce to the unrestricted case") {
        auto vs = gen::int_valuations(rng, g, 2, -3, 3);
        std::vector<int> supply{1, 1, 1};
        GPoint a = char_vector(Bundle{0, 1, 2}, g);
        auto r = ce_for_covering(vs, supply, a, g);
        REQUIRE(r.status == CeStatus::Found);
        CHECK(verify_ce(vs, r.allocation, *r.price, g).ok());
        CHECK_FALSE(r.big_m);
    }

    SECTION("two agents on {1,2} and {2,3}") {
        auto base = gen::int_valuations(rng, g, 2, -3, 3);
        std::vector<Valuation> vs{neg_inf_outside(base[0], Bundle{0, 1}, g), neg_inf_outside(base[1], Bundle{1, 2}, g)};
        std::vector<int> supply{1, 1, 1};
        GPoint a = char_vector(Bundle{0, 1}, g) + char_vector(Bundle{2}, g);
        auto r = ce_for_covering(vs, supply, a, g);
        REQUIRE(r.status == CeStatus::Found);
        REQUIRE(r.big_m);
        CHECK(verify_ce(vs, r.allocation, *r.price, g).ok());
        CHECK(r.allocation.bundles[0] == Bundle{0, 1});
        CHECK(r.allocation.bundles[1] == Bundle{2});
        std::vector<Valuation> tilde;
        for (const auto& v : vs)
            tilde.push_back(substitute_neg_inf(v, *r.big_m));
        CHECK(verify_ce(tilde, r.allocation, *r.price, g).ok());
        for (int b = 0; b < 2; ++b)
            for (Bundle s : demand_set(vs[b], *r.price, g).bundles)
                CHECK(s.subset_of(vs[b].support(g)));
        CHECK(covering_point(vs, supply, g) == a);
    }

    SECTION("input checks") {
        auto base = gen::int_valuations(rng, g, 2, -3, 3);
        std::vector<Valuation> gap{neg_inf_outside(base[0], Bundle{0, 1}, g), neg_inf_outside(base[1], Bundle{0}, g)};
        std::vector<int> supply{1, 1, 1};
        CHECK_THROWS_AS(ce_for_covering(gap, supply, char_vector(Bundle{0, 1, 2}, g), g), PreconditionError);

        std::vector<Valuation> vs{neg_inf_outside(base[0], Bundle{0, 1}, g), neg_inf_outside(base[1], Bundle{1, 2}, g)};
        GPoint incompatible = char_vector(Bundle{0, 2}, g) + char_vector(Bundle{1}, g);
        CHECK_THROWS_AS(ce_for_covering(vs, supply, incompatible, g), PreconditionError);
        std::vector<int> uneven{1, 2, 1};
        CHECK_THROWS_AS(ce_for_covering(vs, uneven, char_vector(Bundle{0, 1, 2}, g), g), PreconditionError);
        CHECK_THROWS_AS(ce_for_covering(vs, supply, char_vector(Bundle{0, 1}, g), g), PreconditionError);

        ValueGraph path(3, {{0, 1}, {1, 2}});
        std::vector<Valuation> on_path{Valuation(std::vector<ExtendedRational>(5))};
        CHECK_THROWS_AS(covering_supports(on_path, path), PreconditionError);
    }
}

TEST_CASE("-inf weights outside a clique never end up in a result") {
    std::mt19937 rng(25);
    for (int trial = 0; trial < 40; ++trial) {
        int n = gen::uniform(rng, 2, 4), m = gen::uniform(rng, 1, 3);
        auto g = ValueGraph::complete(n);
        std::vector<Valuation> vs;
        for (int b = 0; b < m; ++b)
            vs.push_back(neg_inf_outside(gen::int_valuation(rng, g, -4, 4), gen::random_bundle(rng, n), g));
        std::vector<int> supply;
        for (int i = 0; i < n; ++i)
            supply.push_back(gen::uniform(rng, 0, 1));
        auto r = optimal_ce(vs, supply, g);
        if (r.status != CeStatus::Found)
            continue;
        CHECK(verify_ce(vs, r.allocation, *r.price, g).ok());
        for (int b = 0; b < m; ++b)
            CHECK(r.allocation.bundles[b].subset_of(vs[b].support(g)));
    }
}
