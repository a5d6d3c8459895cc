#pragma once

#include <vector>

#include "fliplab/linalg.hpp"
#include "fliplab/rational.hpp"

namespace fliplab {

// Exact rational LP:   max c.x   s.t.  A_eq x = b_eq,  A_le x <= b_le,  x free.
// Dense two-phase simplex with Bland's rule; sized for the small systems the
// geometry predicates need (tens of variables).
struct LpResult {
    enum class Status { Optimal, Unbounded, Infeasible } status;
    Rat value;
    std::vector<Rat> x;
};

LpResult solve_lp(const QMat& a_eq, const std::vector<Rat>& b_eq, const QMat& a_le,
                  const std::vector<Rat>& b_le, const std::vector<Rat>& c);

}  // namespace fliplab
