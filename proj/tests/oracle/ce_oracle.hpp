#pragma once

// Test-only brute force for optimal competitive equilibria. Enumerates every
// ordered allocation clearing the supply and decides each one by a full LP
// (every agent against every bundle) solved with the primal oracle. No
// welfare argument, no decomposition enumeration.

#include <optional>
#include <vector>

#include "graphce/model.hpp"
#include "oracle/primal_simplex.hpp"

namespace oracle {

struct Weights {
    std::vector<std::optional<Q>> w;  // nullopt is -inf
};

inline Weights weights_of(const graphce::Valuation& v) {
    Weights out;
    for (const auto& x : v.weights())
        out.w.push_back(x.is_neg_inf() ? std::nullopt : std::optional<Q>(x.value()));
    return out;
}

// Value of the bundle given as a bitmask, nullopt for -inf.
inline std::optional<Q> bundle_value(const Weights& v, unsigned mask, const graphce::ValueGraph& g) {
    Q total = 0;
    const int n = g.n();
    for (int i = 0; i < n; ++i)
        if ((mask >> i) & 1U) {
            if (!v.w[i])
                return std::nullopt;
            total += *v.w[i];
        }
    for (int k = 0; k < g.num_edges(); ++k) {
        auto e = g.edges()[k];
        if (((mask >> e.u) & 1U) && ((mask >> e.v) & 1U)) {
            if (!v.w[n + k])
                return std::nullopt;
            total += *v.w[n + k];
        }
    }
    return total;
}

inline std::vector<int> indicator(unsigned mask, const graphce::ValueGraph& g) {
    std::vector<int> x(g.dim(), 0);
    for (int i = 0; i < g.n(); ++i)
        x[i] = (mask >> i) & 1U;
    for (int k = 0; k < g.num_edges(); ++k) {
        auto e = g.edges()[k];
        x[g.n() + k] = ((mask >> e.u) & 1U) && ((mask >> e.v) & 1U);
    }
    return x;
}

// All ordered allocations (mask per agent) selling item i to exactly supply[i] agents.
inline std::vector<std::vector<unsigned>> clearing_allocations(const std::vector<int>& supply, int m) {
    const int n = static_cast<int>(supply.size());
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur(m, 0);
    auto rec = [&](auto&& self, int item) -> void {
        if (item == n) {
            out.push_back(cur);
            return;
        }
        for (unsigned who = 0; who < (1U << m); ++who) {
            if (__builtin_popcount(who) != supply[item])
                continue;
            for (int b = 0; b < m; ++b)
                if ((who >> b) & 1U)
                    cur[b] |= 1U << item;
            self(self, item + 1);
            for (int b = 0; b < m; ++b)
                if ((who >> b) & 1U)
                    cur[b] &= ~(1U << item);
        }
    };
    rec(rec, 0);
    return out;
}

struct OracleResult {
    bool found = false;
    Q revenue;
    std::vector<unsigned> allocation;
    std::vector<Q> price;
};

// Max revenue over CE-supportable allocations; walrasian pins edge prices to zero.
inline OracleResult brute_force_optimal_ce(const std::vector<graphce::Valuation>& vs, const std::vector<int>& supply,
                                           const graphce::ValueGraph& g, bool walrasian = false) {
    const int m = static_cast<int>(vs.size());
    const int d = g.dim();
    const unsigned count = 1U << g.n();
    std::vector<Weights> ws;
    for (const auto& v : vs)
        ws.push_back(weights_of(v));

    OracleResult best;
    for (const auto& alloc : clearing_allocations(supply, m)) {
        std::vector<Row> rows;
        std::vector<Q> objective(d, Q(0));
        bool finite = true;
        for (int b = 0; b < m && finite; ++b) {
            auto vs_b = bundle_value(ws[b], alloc[b], g);
            if (!vs_b) {
                finite = false;
                break;
            }
            auto xs = indicator(alloc[b], g);
            for (int c = 0; c < d; ++c)
                objective[c] += xs[c];
            for (unsigned t = 0; t < count; ++t) {
                auto vt = bundle_value(ws[b], t, g);
                if (!vt)
                    continue;
                auto xt = indicator(t, g);
                Row row;
                for (int c = 0; c < d; ++c)
                    row.a.push_back(Q(xt[c] - xs[c]));
                row.rel = Rel::Ge;
                row.b = *vt - *vs_b;
                rows.push_back(std::move(row));
            }
        }
        if (!finite)
            continue;
        if (walrasian)
            for (int c = g.n(); c < d; ++c) {
                Row row;
                row.a.assign(d, Q(0));
                row.a[c] = 1;
                row.rel = Rel::Eq;
                row.b = 0;
                rows.push_back(std::move(row));
            }
        Solution s = primal_solve(objective, rows);
        if (s.status != Status::Optimal)
            continue;
        if (!best.found || s.value > best.revenue) {
            best.found = true;
            best.revenue = s.value;
            best.allocation = alloc;
            best.price = s.x;
        }
    }
    return best;
}

}  // namespace oracle
