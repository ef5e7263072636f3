#pragma once

#include <map>
#include <vector>

#include "graphce/rational.hpp"

namespace graphce {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct LinearConstraint {
    std::vector<Rational> coefficients;
    Relation relation = Relation::LessEqual;
    Rational rhs;
};

/**
 * maximize <objective, x> subject to the constraints, over exact rationals.
 *
 * Variables are free unless flagged in `nonnegative`; `fixed` pins variables
 * to given values (they are substituted out before solving).
 */
struct LinearProgram {
    int num_vars = 0;
    std::vector<Rational> objective;  ///< empty means the zero objective
    std::vector<LinearConstraint> constraints;
    std::vector<bool> nonnegative;    ///< empty means all free
    std::map<int, Rational> fixed;

    explicit LinearProgram(int vars = 0) : num_vars(vars) {}
    void add(std::vector<Rational> coefficients, Relation relation, Rational rhs) {
        constraints.push_back({std::move(coefficients), relation, std::move(rhs)});
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus s);

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;                   ///< meaningful when Optimal
    std::vector<Rational> solution;   ///< a witness when Optimal
};

/**
 * Exact simplex with Bland's rule.
 *
 * The program is brought to the form max c'x, Ax <= b, x free, and the dual
 * min b'y, A'y = c, y >= 0 is solved by two-phase tableau simplex; the
 * primal witness is read off the final simplex multipliers. The dual tableau
 * has one row per free variable, which is small here even when the primal
 * has hundreds of rows. Every Optimal witness is re-checked against the
 * original constraints before it is returned.
 */
LpResult lp_solve(const LinearProgram& lp);

}  // namespace graphce
