#include "graphce/lp.hpp"

#include <algorithm>
#include <stdexcept>

#include "graphce/errors.hpp"

namespace graphce {

const char* to_string(LpStatus s) {
    switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    }
    return "?";
}

namespace {

using Row = std::vector<Rational>;

enum class DualOutcome { Optimal, Infeasible, Unbounded };

struct DualSolution {
    DualOutcome outcome = DualOutcome::Infeasible;
    Rational value;
    Row multipliers;
};

// Tableau for  min b'y  s.t.  A'y = c, y >= 0,  where A has `rows.size()`
// rows of length k. Columns: one per primal row, then k artificials, rhs last.
class DualTableau {
  public:
    DualTableau(const std::vector<Row>& rows, const Row& b, const Row& c)
        : k_(static_cast<int>(c.size())), cols_(static_cast<int>(rows.size())), b_(b) {
        sign_.resize(static_cast<std::size_t>(k_));
        t_.assign(static_cast<std::size_t>(k_), Row(static_cast<std::size_t>(cols_ + k_ + 1)));
        basis_.resize(static_cast<std::size_t>(k_));
        for (int j = 0; j < k_; ++j) {
            int s = c[static_cast<std::size_t>(j)] < 0 ? -1 : 1;
            sign_[static_cast<std::size_t>(j)] = s;
            auto& tr = t_[static_cast<std::size_t>(j)];
            for (int r = 0; r < cols_; ++r) {
                const Rational& a = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
                if (a != 0)
                    tr[static_cast<std::size_t>(r)] = s < 0 ? Rational(-a) : a;
            }
            tr[static_cast<std::size_t>(cols_ + j)] = 1;
            tr.back() = s < 0 ? Rational(-c[static_cast<std::size_t>(j)]) : c[static_cast<std::size_t>(j)];
            basis_[static_cast<std::size_t>(j)] = cols_ + j;
        }
    }

    DualSolution solve() {
        // Phase 1: minimize the sum of artificials.
        Row cost(static_cast<std::size_t>(cols_ + k_));
        for (int j = 0; j < k_; ++j)
            cost[static_cast<std::size_t>(cols_ + j)] = 1;
        price_out(cost);
        run(/*allow_artificial=*/false);
        if (objective_ > 0)
            return {DualOutcome::Infeasible, {}, {}};

        drive_out_artificials();

        // Phase 2: minimize b'y.
        std::fill(cost.begin(), cost.end(), Rational(0));
        for (int r = 0; r < cols_; ++r)
            cost[static_cast<std::size_t>(r)] = b_[static_cast<std::size_t>(r)];
        price_out(cost);
        if (!run(false))
            return {DualOutcome::Unbounded, {}, {}};

        DualSolution sol;
        sol.outcome = DualOutcome::Optimal;
        sol.value = objective_;
        sol.multipliers.resize(static_cast<std::size_t>(k_));
        for (int j = 0; j < k_; ++j) {
            const Rational& d = reduced_[static_cast<std::size_t>(cols_ + j)];
            sol.multipliers[static_cast<std::size_t>(j)] = sign_[static_cast<std::size_t>(j)] < 0 ? d : Rational(-d);
        }
        return sol;
    }

  private:
    void price_out(const Row& cost) {
        reduced_ = cost;
        objective_ = 0;
        for (int i = 0; i < k_; ++i) {
            const Rational& cb = cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
            if (cb == 0)
                continue;
            const auto& tr = t_[static_cast<std::size_t>(i)];
            for (int col = 0; col < cols_ + k_; ++col)
                if (tr[static_cast<std::size_t>(col)] != 0)
                    reduced_[static_cast<std::size_t>(col)] -= cb * tr[static_cast<std::size_t>(col)];
            objective_ += cb * tr.back();
        }
    }

    // Returns false on an unbounded ray.
    bool run(bool allow_artificial) {
        const int limit = allow_artificial ? cols_ + k_ : cols_;
        for (;;) {
            int enter = -1;
            for (int col = 0; col < limit; ++col)
                if (reduced_[static_cast<std::size_t>(col)] < 0) {
                    enter = col;
                    break;
                }
            if (enter < 0)
                return true;
            int leave = -1;
            Rational best;
            for (int i = 0; i < k_; ++i) {
                const Rational& a = t_[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
                if (a <= 0)
                    continue;
                Rational ratio = t_[static_cast<std::size_t>(i)].back() / a;
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
                    leave = i;
                    best = std::move(ratio);
                }
            }
            if (leave < 0)
                return false;
            pivot(leave, enter);
        }
    }

    void drive_out_artificials() {
        for (int i = 0; i < k_; ++i) {
            if (basis_[static_cast<std::size_t>(i)] < cols_)
                continue;
            const auto& tr = t_[static_cast<std::size_t>(i)];
            for (int col = 0; col < cols_; ++col)
                if (tr[static_cast<std::size_t>(col)] != 0) {
                    pivot(i, col);
                    break;
                }
        }
    }

    void pivot(int r, int e) {
        auto& pr = t_[static_cast<std::size_t>(r)];
        const Rational inv = Rational(1) / pr[static_cast<std::size_t>(e)];
        std::vector<int> nz;
        for (int col = 0; col <= cols_ + k_; ++col) {
            auto& x = pr[static_cast<std::size_t>(col)];
            if (x != 0) {
                x *= inv;
                nz.push_back(col);
            }
        }
        for (int i = 0; i < k_; ++i) {
            if (i == r)
                continue;
            auto& row = t_[static_cast<std::size_t>(i)];
            const Rational f = row[static_cast<std::size_t>(e)];
            if (f == 0)
                continue;
            for (int col : nz)
                row[static_cast<std::size_t>(col)] -= f * pr[static_cast<std::size_t>(col)];
        }
        const Rational f = reduced_[static_cast<std::size_t>(e)];
        if (f != 0) {
            for (int col : nz) {
                if (col == cols_ + k_)
                    objective_ += f * pr.back();
                else
                    reduced_[static_cast<std::size_t>(col)] -= f * pr[static_cast<std::size_t>(col)];
            }
        }
        basis_[static_cast<std::size_t>(r)] = e;
    }

    int k_;
    int cols_;
    Row b_;
    std::vector<int> sign_;
    std::vector<Row> t_;
    std::vector<int> basis_;
    Row reduced_;
    Rational objective_;
};

DualSolution solve_dual(const std::vector<Row>& rows, const Row& b, const Row& c) {
    return DualTableau(rows, b, c).solve();
}

}  // namespace

LpResult lp_solve(const LinearProgram& lp) {
    const int n = lp.num_vars;
    if (n < 0)
        throw InvalidInput("negative variable count");
    if (!lp.objective.empty() && static_cast<int>(lp.objective.size()) != n)
        throw InvalidInput("objective length mismatch");
    if (!lp.nonnegative.empty() && static_cast<int>(lp.nonnegative.size()) != n)
        throw InvalidInput("nonnegativity flags length mismatch");
    for (const auto& [var, val] : lp.fixed)
        if (var < 0 || var >= n)
            throw InvalidInput("fixed variable out of range");

    std::vector<int> free_index(static_cast<std::size_t>(n), -1);
    std::vector<int> free_vars;
    for (int j = 0; j < n; ++j)
        if (!lp.fixed.count(j)) {
            free_index[static_cast<std::size_t>(j)] = static_cast<int>(free_vars.size());
            free_vars.push_back(j);
        }
    const int k = static_cast<int>(free_vars.size());

    // Collect  row . x <= rhs  over the free variables, deduplicated.
    std::map<Row, Rational> rows;
    bool trivially_infeasible = false;
    auto add_le = [&](Row row, Rational rhs) {
        if (std::all_of(row.begin(), row.end(), [](const Rational& x) { return x == 0; })) {
            if (rhs < 0)
                trivially_infeasible = true;
            return;
        }
        auto [it, inserted] = rows.emplace(std::move(row), rhs);
        if (!inserted && rhs < it->second)
            it->second = std::move(rhs);
    };
    for (const auto& con : lp.constraints) {
        if (static_cast<int>(con.coefficients.size()) != n)
            throw InvalidInput("constraint length mismatch");
        Row row(static_cast<std::size_t>(k));
        Rational rhs = con.rhs;
        for (int j = 0; j < n; ++j) {
            const Rational& a = con.coefficients[static_cast<std::size_t>(j)];
            if (a == 0)
                continue;
            if (auto it = lp.fixed.find(j); it != lp.fixed.end())
                rhs -= a * it->second;
            else
                row[static_cast<std::size_t>(free_index[static_cast<std::size_t>(j)])] = a;
        }
        if (con.relation != Relation::GreaterEqual)
            add_le(row, rhs);
        if (con.relation != Relation::LessEqual) {
            for (auto& x : row)
                x = -x;
            add_le(std::move(row), -rhs);
        }
    }
    if (!lp.nonnegative.empty())
        for (int j = 0; j < n; ++j)
            if (lp.nonnegative[static_cast<std::size_t>(j)] && !lp.fixed.count(j)) {
                Row row(static_cast<std::size_t>(k));
                row[static_cast<std::size_t>(free_index[static_cast<std::size_t>(j)])] = -1;
                add_le(std::move(row), 0);
            }
    for (const auto& [var, val] : lp.fixed)
        if (!lp.nonnegative.empty() && lp.nonnegative[static_cast<std::size_t>(var)] && val < 0)
            trivially_infeasible = true;

    if (trivially_infeasible)
        return {LpStatus::Infeasible, {}, {}};

    Row c(static_cast<std::size_t>(k));
    Rational constant = 0;
    for (int j = 0; j < n && !lp.objective.empty(); ++j) {
        const Rational& cj = lp.objective[static_cast<std::size_t>(j)];
        if (auto it = lp.fixed.find(j); it != lp.fixed.end())
            constant += cj * it->second;
        else
            c[static_cast<std::size_t>(free_index[static_cast<std::size_t>(j)])] = cj;
    }

    std::vector<Row> a_rows;
    Row b;
    a_rows.reserve(rows.size());
    for (auto& [row, rhs] : rows) {
        a_rows.push_back(row);
        b.push_back(rhs);
    }

    auto assemble = [&](const Row& x_free) {
        std::vector<Rational> x(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            if (auto it = lp.fixed.find(j); it != lp.fixed.end())
                x[static_cast<std::size_t>(j)] = it->second;
            else
                x[static_cast<std::size_t>(j)] = x_free[static_cast<std::size_t>(free_index[static_cast<std::size_t>(j)])];
        }
        return x;
    };

    if (k == 0) {
        // Every remaining row was all-zero and already checked.
        return {LpStatus::Optimal, constant, assemble({})};
    }

    DualSolution dual = solve_dual(a_rows, b, c);
    switch (dual.outcome) {
    case DualOutcome::Unbounded:
        return {LpStatus::Infeasible, {}, {}};
    case DualOutcome::Infeasible: {
        // Primal is infeasible or unbounded; decide by the zero objective.
        DualSolution feas = solve_dual(a_rows, b, Row(static_cast<std::size_t>(k)));
        if (feas.outcome == DualOutcome::Optimal)
            return {LpStatus::Unbounded, {}, {}};
        return {LpStatus::Infeasible, {}, {}};
    }
    case DualOutcome::Optimal:
        break;
    }

    LpResult res;
    res.status = LpStatus::Optimal;
    res.value = dual.value + constant;
    res.solution = assemble(dual.multipliers);

    // Certify the witness against the original program.
    Rational obj = 0;
    for (int j = 0; j < n && !lp.objective.empty(); ++j)
        obj += lp.objective[static_cast<std::size_t>(j)] * res.solution[static_cast<std::size_t>(j)];
    if (obj != res.value)
        throw std::logic_error("lp_solve: witness objective mismatch");
    for (const auto& con : lp.constraints) {
        Rational lhs = 0;
        for (int j = 0; j < n; ++j)
            lhs += con.coefficients[static_cast<std::size_t>(j)] * res.solution[static_cast<std::size_t>(j)];
        bool ok = con.relation == Relation::LessEqual    ? lhs <= con.rhs
                  : con.relation == Relation::GreaterEqual ? lhs >= con.rhs
                                                           : lhs == con.rhs;
        if (!ok)
            throw std::logic_error("lp_solve: witness violates a constraint");
    }
    for (int j = 0; j < n && !lp.nonnegative.empty(); ++j)
        if (lp.nonnegative[static_cast<std::size_t>(j)] && res.solution[static_cast<std::size_t>(j)] < 0)
            throw std::logic_error("lp_solve: witness violates nonnegativity");
    return res;
}

}  // namespace graphce
