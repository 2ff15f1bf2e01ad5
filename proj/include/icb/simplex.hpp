#pragma once

// Exact rational linear programming over free variables:
//
//   minimize  c·z   subject to  a_i·z (≥ | ≤ | =) b_i
//
// The dual standard form  min −bᵀu, Σ u_i a_i = c, u ≥ 0  is solved by a
// double-precision revised simplex whose final basis is then factored in
// exact arithmetic, repaired with exact Bland pivots if needed, and checked
// for primal feasibility, dual feasibility and equal objectives.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "icb/rational.hpp"

namespace icb {

enum class RowSense { GreaterEqual, LessEqual, Equal };

using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

struct LinearRow {
  SparseVec coeffs;
  RowSense sense = RowSense::GreaterEqual;
  Rational rhs;
};

struct LinearProgram {
  std::size_t num_vars = 0;
  SparseVec objective;
  std::vector<LinearRow> rows;
};

enum class LPStatus {
  Optimal,
  Infeasible,
  /// No finite optimum (the objective is unbounded below, or the problem is
  /// infeasible as well; the dual is infeasible in either case).
  Unbounded,
};

std::string to_string(LPStatus s);

struct SimplexOptions {
  /// Solve in double first and only verify/repair exactly. When false the
  /// whole solve runs in exact arithmetic with Bland's rule.
  bool float_warm_start = true;
  /// Random right-hand-side perturbation in the float stage against stalling.
  bool perturb = true;
  std::size_t max_float_iterations = 200000;
  std::size_t max_exact_iterations = 100000;
  std::size_t reinvert_every = 64;
};

struct SimplexResult {
  LPStatus status = LPStatus::Infeasible;
  Rational objective;
  /// Optimal z.
  std::vector<Rational> primal;
  /// One multiplier per row with Σ dual_i a_i = c: ≥ 0 on ≥ rows, ≤ 0 on
  /// ≤ rows, free on equality rows.
  std::vector<Rational> dual;
  std::size_t float_iterations = 0;
  std::size_t exact_iterations = 0;
  /// The float basis could not be repaired and the exact solver started over.
  bool exact_restart = false;
};

SimplexResult solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

/// Exact LU factorization of a sparse square matrix given by columns.
class SparseRationalLU {
 public:
  /// Returns false if the matrix is singular.
  bool factor(const std::vector<const SparseVec*>& columns, std::size_t m);
  /// Solves B x = rhs.
  std::vector<Rational> solve(std::vector<Rational> rhs) const;
  /// Solves Bᵀ y = rhs.
  std::vector<Rational> solve_transpose(const std::vector<Rational>& rhs) const;

 private:
  std::size_t m_ = 0;
  std::vector<std::size_t> prow_;
  std::vector<std::size_t> pcol_;
  std::vector<Rational> pivot_;
  // Elimination step k: row_i −= l · row_{prow_[k]} for each (i, l).
  std::vector<std::vector<std::pair<std::size_t, Rational>>> eta_;
  // Off-pivot entries of the U rows and columns, indexed by row / column.
  std::vector<std::vector<std::pair<std::size_t, Rational>>> urows_;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> ucols_;
};

}  // namespace icb
