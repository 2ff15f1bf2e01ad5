#include "icb/simplex.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <set>

#include "icb/error.hpp"

namespace icb {

std::string to_string(LPStatus s) {
  switch (s) {
    case LPStatus::Optimal: return "optimal";
    case LPStatus::Infeasible: return "infeasible";
    case LPStatus::Unbounded: return "unbounded";
  }
  return "?";
}

// ------------------------------------------------------------ sparse LU

bool SparseRationalLU::factor(const std::vector<const SparseVec*>& columns, std::size_t m) {
  if (columns.size() != m) throw InternalError("LU: basis is not square");
  m_ = m;
  prow_.clear();
  pcol_.clear();
  pivot_.clear();
  eta_.clear();
  urows_.assign(m, {});
  ucols_.assign(m, {});

  // Active submatrix by rows (sorted by column) and column → row incidence.
  std::vector<std::vector<std::pair<std::size_t, Rational>>> rows(m);
  std::vector<std::set<std::size_t>> colrows(m);
  for (std::size_t j = 0; j < m; ++j)
    for (const auto& [i, v] : *columns[j]) {
      if (v == 0) continue;
      rows[i].emplace_back(j, v);
      colrows[j].insert(i);
    }
  for (auto& r : rows) std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<bool> col_active(m, true), row_active(m, true);
  std::vector<std::pair<std::size_t, Rational>> merged;
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t c = m, best = std::numeric_limits<std::size_t>::max();
    for (std::size_t j = 0; j < m; ++j)
      if (col_active[j] && colrows[j].size() < best) {
        best = colrows[j].size();
        c = j;
      }
    if (best == 0) return false;
    std::size_t r = m;
    std::size_t rbest = std::numeric_limits<std::size_t>::max();
    for (std::size_t i : colrows[c])
      if (rows[i].size() < rbest) {
        rbest = rows[i].size();
        r = i;
      }
    const auto& prow = rows[r];
    Rational p;
    for (const auto& [j, v] : prow)
      if (j == c) p = v;

    std::vector<std::pair<std::size_t, Rational>> eta;
    const std::vector<std::size_t> targets(colrows[c].begin(), colrows[c].end());
    for (std::size_t i : targets) {
      if (i == r) continue;
      auto& row = rows[i];
      Rational l;
      for (const auto& [j, v] : row)
        if (j == c) l = v / p;
      merged.clear();
      std::size_t a = 0, b = 0;
      while (a < row.size() || b < prow.size()) {
        if (b == prow.size() || (a < row.size() && row[a].first < prow[b].first)) {
          merged.push_back(std::move(row[a++]));
        } else if (a == row.size() || prow[b].first < row[a].first) {
          const std::size_t j = prow[b].first;
          Rational v = -l * prow[b].second;
          ++b;
          merged.emplace_back(j, std::move(v));
          colrows[j].insert(i);
        } else {
          const std::size_t j = row[a].first;
          Rational v = row[a].second - l * prow[b].second;
          ++a;
          ++b;
          if (v == 0) colrows[j].erase(i);
          else merged.emplace_back(j, std::move(v));
        }
      }
      row.swap(merged);
      eta.emplace_back(i, std::move(l));
    }
    for (const auto& [j, v] : prow) {
      colrows[j].erase(r);
      if (j != c) {
        urows_[r].emplace_back(j, v);
        ucols_[j].emplace_back(r, v);
      }
    }
    row_active[r] = false;
    col_active[c] = false;
    prow_.push_back(r);
    pcol_.push_back(c);
    pivot_.push_back(p);
    eta_.push_back(std::move(eta));
    rows[r].clear();
  }
  return true;
}

std::vector<Rational> SparseRationalLU::solve(std::vector<Rational> rhs) const {
  for (std::size_t k = 0; k < m_; ++k) {
    const Rational& pr = rhs[prow_[k]];
    if (pr == 0) continue;
    for (const auto& [i, l] : eta_[k]) rhs[i] -= l * pr;
  }
  std::vector<Rational> x(m_);
  for (std::size_t k = m_; k-- > 0;) {
    Rational acc = rhs[prow_[k]];
    for (const auto& [j, v] : urows_[prow_[k]]) acc -= v * x[j];
    x[pcol_[k]] = acc / pivot_[k];
  }
  return x;
}

std::vector<Rational> SparseRationalLU::solve_transpose(const std::vector<Rational>& rhs) const {
  std::vector<Rational> w(m_);
  for (std::size_t k = 0; k < m_; ++k) {
    Rational acc = rhs[pcol_[k]];
    for (const auto& [r, v] : ucols_[pcol_[k]]) acc -= v * w[r];
    w[prow_[k]] = acc / pivot_[k];
  }
  for (std::size_t k = m_; k-- > 0;) {
    Rational& target = w[prow_[k]];
    for (const auto& [i, l] : eta_[k])
      if (w[i] != 0) target -= l * w[i];
  }
  return w;
}

// -------------------------------------------------------------- dual form

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kOptTol = 1e-9;
constexpr double kFeasTol = 1e-7;

// min costᵀu  s.t.  M̃u = rhs ≥ 0, u ≥ 0, with one artificial unit column per
// row (index N + k) for phase 1.
struct DualForm {
  std::size_t m = 0;
  std::vector<SparseVec> cols;
  std::vector<Rational> cost;
  std::vector<Rational> rhs;
  std::vector<int> flip;
  // Column j came from LP row origin[j].first with sign origin[j].second.
  std::vector<std::pair<std::size_t, int>> origin;
  std::vector<SparseVec> artificial;

  std::size_t n_real() const { return cols.size(); }
  bool is_artificial(std::size_t j) const { return j >= cols.size(); }
  const SparseVec& column(std::size_t j) const {
    return j < cols.size() ? cols[j] : artificial[j - cols.size()];
  }
};

DualForm build_dual_form(const LinearProgram& lp) {
  DualForm f;
  f.m = lp.num_vars;
  f.rhs.assign(f.m, 0);
  for (const auto& [k, v] : lp.objective) {
    if (k >= f.m) throw InputError("objective references an unknown variable");
    f.rhs[k] += v;
  }
  f.flip.assign(f.m, 1);
  for (std::size_t k = 0; k < f.m; ++k)
    if (f.rhs[k] < 0) {
      f.flip[k] = -1;
      f.rhs[k] = -f.rhs[k];
    }
  auto add = [&](std::size_t row, const SparseVec& a, int sign, const Rational& cost) {
    SparseVec col;
    col.reserve(a.size());
    for (const auto& [k, v] : a) {
      if (k >= f.m) throw InputError("constraint references an unknown variable");
      if (v != 0) col.emplace_back(k, sign * f.flip[k] * v);
    }
    f.cols.push_back(std::move(col));
    f.cost.push_back(cost);
    f.origin.emplace_back(row, sign);
  };
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const auto& r = lp.rows[i];
    switch (r.sense) {
      case RowSense::GreaterEqual: add(i, r.coeffs, 1, -r.rhs); break;
      case RowSense::LessEqual: add(i, r.coeffs, -1, r.rhs); break;
      case RowSense::Equal:
        add(i, r.coeffs, 1, -r.rhs);
        add(i, r.coeffs, -1, r.rhs);
        break;
    }
  }
  f.artificial.resize(f.m);
  for (std::size_t k = 0; k < f.m; ++k) f.artificial[k] = {{k, Rational(1)}};
  return f;
}

enum class StageResult { Optimal, DualInfeasible, DualUnbounded, Failed };

// ------------------------------------------------------------ float stage

class FloatSimplex {
 public:
  FloatSimplex(const DualForm& f, const SimplexOptions& opt, bool perturb)
      : f_(f), opt_(opt), m_(f.m), n_(f.n_real()) {
    cols_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j)
      for (const auto& [k, v] : f.cols[j]) cols_[j].emplace_back(k, v.get_d());
    cost2_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) cost2_[j] = f.cost[j].get_d();
    rhs_.resize(m_);
    std::mt19937_64 rng(0x1cb5eed);
    std::uniform_real_distribution<double> jitter(1e-6, 2e-6);
    for (std::size_t k = 0; k < m_; ++k) {
      rhs_(k) = f.rhs[k].get_d();
      if (perturb) rhs_(k) += jitter(rng) * (1.0 + std::abs(rhs_(k)));
    }
    head_.resize(m_);
    basic_.assign(n_ + m_, false);
    for (std::size_t k = 0; k < m_; ++k) {
      head_[k] = n_ + k;
      basic_[n_ + k] = true;
    }
    binv_ = Matrix::Identity(m_, m_);
    xb_ = rhs_;
  }

  StageResult run() {
    phase_ = 1;
    recompute_y();
    std::size_t since_reinvert = 0;
    double last_obj = objective();
    std::size_t stall = 0;
    bool bland = false;
    while (iterations_ < opt_.max_float_iterations) {
      if (since_reinvert >= opt_.reinvert_every) {
        if (!reinvert()) return StageResult::Failed;
        since_reinvert = 0;
      }
      // Pricing.
      std::size_t q = n_;
      double dq = -kOptTol;
      for (std::size_t j = 0; j < n_; ++j) {
        if (basic_[j]) continue;
        double d = cost(j);
        for (const auto& [k, v] : cols_[j]) d -= y_(k) * v;
        if (d < dq) {
          dq = d;
          q = j;
          if (bland) break;
        }
      }
      if (q == n_) {
        if (phase_ == 1) {
          if (!reinvert()) return StageResult::Failed;
          since_reinvert = 0;
          if (objective() > kFeasTol) return StageResult::DualInfeasible;
          phase_ = 2;
          recompute_y();
          last_obj = objective();
          stall = 0;
          bland = false;
          continue;
        }
        return StageResult::Optimal;
      }
      // Direction.
      Eigen::VectorXd w = Eigen::VectorXd::Zero(m_);
      for (const auto& [k, v] : cols_[q]) w += v * binv_.col(k);
      // Ratio test.
      std::size_t r = m_;
      double best = std::numeric_limits<double>::infinity();
      double best_w = 0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double wi = w(i);
        double ratio;
        if (phase_ == 2 && head_[i] >= n_ && std::abs(wi) > kPivotTol) {
          ratio = 0;
        } else if (wi > kPivotTol) {
          ratio = std::max(0.0, xb_(i)) / wi;
        } else {
          continue;
        }
        const bool better = ratio < best - 1e-12 ||
                            (ratio <= best + 1e-12 &&
                             (bland ? head_[i] < head_[r] : std::abs(wi) > best_w));
        if (r == m_ || better) {
          best = ratio;
          best_w = std::abs(wi);
          r = i;
        }
      }
      if (r == m_) {
        if (phase_ == 2) return StageResult::DualUnbounded;
        return StageResult::Failed;
      }
      pivot(q, r, w, dq, best);
      ++iterations_;
      ++since_reinvert;
      const double obj = objective();
      if (obj < last_obj - 1e-12 * (1.0 + std::abs(last_obj))) {
        last_obj = obj;
        stall = 0;
        bland = false;
      } else if (++stall > 50) {
        bland = true;
      }
    }
    return StageResult::Failed;
  }

  const std::vector<std::size_t>& head() const { return head_; }
  std::size_t iterations() const { return iterations_; }

 private:
  using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  double cost(std::size_t j) const {
    if (j >= n_) return phase_ == 1 ? 1.0 : 0.0;
    return phase_ == 1 ? 0.0 : cost2_[j];
  }

  double objective() const {
    double s = 0;
    for (std::size_t i = 0; i < m_; ++i) s += cost(head_[i]) * xb_(i);
    return s;
  }

  void recompute_y() {
    Eigen::VectorXd cb(m_);
    for (std::size_t i = 0; i < m_; ++i) cb(i) = cost(head_[i]);
    y_ = binv_.transpose() * cb;
  }

  bool reinvert() {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m_, m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t j = head_[i];
      if (j >= n_) b(j - n_, i) = 1.0;
      else
        for (const auto& [k, v] : cols_[j]) b(k, i) = v;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    if (std::abs(lu.determinant()) < 1e-300) return false;
    binv_ = lu.inverse();
    xb_ = binv_ * rhs_;
    recompute_y();
    return binv_.allFinite();
  }

  void pivot(std::size_t q, std::size_t r, const Eigen::VectorXd& w, double dq, double theta) {
    xb_ -= theta * w;
    xb_(r) = theta;
    const double wr = w(r);
    y_ += (dq / wr) * binv_.row(r).transpose();
    binv_.row(r) /= wr;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || w(i) == 0.0) continue;
      binv_.row(i) -= w(i) * binv_.row(r);
    }
    basic_[head_[r]] = false;
    basic_[q] = true;
    head_[r] = q;
  }

  const DualForm& f_;
  const SimplexOptions& opt_;
  std::size_t m_, n_;
  std::vector<std::vector<std::pair<std::size_t, double>>> cols_;
  std::vector<double> cost2_;
  Eigen::VectorXd rhs_;
  std::vector<std::size_t> head_;
  std::vector<bool> basic_;
  Matrix binv_;
  Eigen::VectorXd xb_, y_;
  int phase_ = 1;
  std::size_t iterations_ = 0;
};

// ------------------------------------------------------------ exact stage

class ExactSimplex {
 public:
  ExactSimplex(const DualForm& f, const SimplexOptions& opt) : f_(f), opt_(opt) {}

  // Phase 1 from the all-artificial basis, then phase 2.
  StageResult run_from_scratch() {
    head_.resize(f_.m);
    for (std::size_t k = 0; k < f_.m; ++k) head_[k] = f_.n_real() + k;
    const StageResult r1 = iterate(1);
    if (r1 != StageResult::Optimal) return r1;
    Rational infeas = 0;
    for (std::size_t i = 0; i < f_.m; ++i)
      if (f_.is_artificial(head_[i])) infeas += xb_[i];
    if (infeas > 0) return StageResult::DualInfeasible;
    return iterate(2);
  }

  // Phase 2 from a given (float) basis; primal or dual repair pivots as needed.
  StageResult run_from_basis(std::vector<std::size_t> head) {
    head_ = std::move(head);
    return iterate(2);
  }

  const std::vector<std::size_t>& head() const { return head_; }
  const std::vector<Rational>& xb() const { return xb_; }
  const std::vector<Rational>& y() const { return y_; }
  std::size_t iterations() const { return iterations_; }

 private:
  Rational cost(std::size_t j, int phase) const {
    if (f_.is_artificial(j)) return phase == 1 ? 1 : 0;
    return phase == 1 ? Rational(0) : f_.cost[j];
  }

  Rational dot_y(const SparseVec& col) const {
    Rational s = 0;
    for (const auto& [k, v] : col)
      if (y_[k] != 0) s += y_[k] * v;
    return s;
  }

  StageResult iterate(int phase) {
    const std::size_t m = f_.m;
    const std::size_t n = f_.n_real();
    while (true) {
      if (iterations_ > opt_.max_exact_iterations) return StageResult::Failed;
      std::vector<const SparseVec*> cols(m);
      for (std::size_t i = 0; i < m; ++i) cols[i] = &f_.column(head_[i]);
      if (!lu_.factor(cols, m)) return StageResult::Failed;
      xb_ = lu_.solve(f_.rhs);
      std::vector<Rational> cb(m);
      for (std::size_t i = 0; i < m; ++i) cb[i] = cost(head_[i], phase);
      y_ = lu_.solve_transpose(cb);

      std::vector<bool> basic(n, false);
      for (std::size_t j : head_)
        if (j < n) basic[j] = true;

      // Primal infeasibility: negative values, or nonzero artificials in phase 2.
      std::size_t bad = m;
      for (std::size_t i = 0; i < m; ++i) {
        const bool infeasible = xb_[i] < 0 || (phase == 2 && f_.is_artificial(head_[i]) && xb_[i] != 0);
        if (infeasible && (bad == m || head_[i] < head_[bad])) bad = i;
      }

      std::vector<Rational> d(n);
      std::size_t entering = n;
      for (std::size_t j = 0; j < n; ++j) {
        if (basic[j]) continue;
        d[j] = cost(j, phase) - dot_y(f_.cols[j]);
        if (d[j] < 0 && entering == n) entering = j;
      }

      if (bad != m) {
        if (entering != n) return StageResult::Failed;
        // Dual simplex step on row `bad`.
        std::vector<Rational> e(m, 0);
        e[bad] = 1;
        const std::vector<Rational> rho = lu_.solve_transpose(e);
        const int sigma = xb_[bad] < 0 ? -1 : 1;
        std::size_t q = n;
        Rational best;
        for (std::size_t j = 0; j < n; ++j) {
          if (basic[j]) continue;
          Rational alpha = 0;
          for (const auto& [k, v] : f_.cols[j])
            if (rho[k] != 0) alpha += rho[k] * v;
          if (sgn(alpha) * sigma <= 0) continue;
          Rational ratio = d[j] / abs(alpha);
          if (q == n || ratio < best) {
            best = ratio;
            q = j;
          }
        }
        if (q == n) return StageResult::DualInfeasible;
        head_[bad] = q;
        ++iterations_;
        continue;
      }

      if (entering == n) return StageResult::Optimal;

      const std::size_t q = entering;
      std::vector<Rational> a(m, 0);
      for (const auto& [k, v] : f_.cols[q]) a[k] = v;
      const std::vector<Rational> w = lu_.solve(std::move(a));
      std::size_t r = m;
      Rational best;
      for (std::size_t i = 0; i < m; ++i) {
        Rational ratio;
        if (phase == 2 && f_.is_artificial(head_[i]) && w[i] != 0) ratio = 0;
        else if (w[i] > 0) ratio = xb_[i] / w[i];
        else continue;
        if (r == m || ratio < best || (ratio == best && head_[i] < head_[r])) {
          best = ratio;
          r = i;
        }
      }
      if (r == m) return StageResult::DualUnbounded;
      head_[r] = q;
      ++iterations_;
    }
  }

  const DualForm& f_;
  const SimplexOptions& opt_;
  std::vector<std::size_t> head_;
  SparseRationalLU lu_;
  std::vector<Rational> xb_, y_;
  std::size_t iterations_ = 0;
};

SimplexResult finish(const LinearProgram& lp, const DualForm& f, const ExactSimplex& ex) {
  SimplexResult res;
  res.status = LPStatus::Optimal;
  std::vector<Rational> u(f.n_real(), 0);
  for (std::size_t i = 0; i < f.m; ++i) {
    const std::size_t j = ex.head()[i];
    if (f.is_artificial(j)) {
      if (ex.xb()[i] != 0) throw InternalError("simplex: artificial variable left nonzero");
    } else {
      u[j] = ex.xb()[i];
    }
  }
  res.dual.assign(lp.rows.size(), 0);
  Rational dual_objective = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (u[j] == 0) continue;
    if (u[j] < 0) throw InternalError("simplex: negative dual value");
    const auto [row, sign] = f.origin[j];
    res.dual[row] += sign * u[j];
    dual_objective += sign * u[j] * lp.rows[row].rhs;
  }
  res.primal.resize(f.m);
  for (std::size_t k = 0; k < f.m; ++k) res.primal[k] = -f.flip[k] * ex.y()[k];

  // Exact post hoc checks.
  std::vector<Rational> combo(f.m, 0);
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const auto& row = lp.rows[i];
    Rational lhs = 0;
    for (const auto& [k, v] : row.coeffs) {
      lhs += v * res.primal[k];
      if (res.dual[i] != 0) combo[k] += res.dual[i] * v;
    }
    const bool ok = row.sense == RowSense::GreaterEqual ? lhs >= row.rhs
                  : row.sense == RowSense::LessEqual    ? lhs <= row.rhs
                                                        : lhs == row.rhs;
    if (!ok) throw InternalError("simplex: returned point violates row " + std::to_string(i));
    if ((row.sense == RowSense::GreaterEqual && res.dual[i] < 0) ||
        (row.sense == RowSense::LessEqual && res.dual[i] > 0))
      throw InternalError("simplex: dual multiplier has the wrong sign");
  }
  std::vector<Rational> c(f.m, 0);
  for (const auto& [k, v] : lp.objective) c[k] += v;
  if (combo != c) throw InternalError("simplex: dual multipliers do not reproduce the objective");
  Rational primal_objective = 0;
  for (std::size_t k = 0; k < f.m; ++k) primal_objective += c[k] * res.primal[k];
  if (primal_objective != dual_objective)
    throw InternalError("simplex: primal and dual objectives differ");
  res.objective = primal_objective;
  return res;
}

SimplexResult status_only(LPStatus s, std::size_t fit, std::size_t eit) {
  SimplexResult r;
  r.status = s;
  r.float_iterations = fit;
  r.exact_iterations = eit;
  return r;
}

}  // namespace

SimplexResult solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  if (lp.num_vars == 0) throw InputError("linear program has no variables");
  const DualForm f = build_dual_form(lp);
  std::size_t float_iterations = 0;
  std::optional<std::vector<std::size_t>> warm;
  if (options.float_warm_start) {
    for (bool perturb : {options.perturb, false}) {
      FloatSimplex fs(f, options, perturb);
      const StageResult r = fs.run();
      float_iterations += fs.iterations();
      if (r == StageResult::Optimal) {
        warm = fs.head();
        break;
      }
      if (!perturb) break;
    }
  }
  ExactSimplex ex(f, options);
  StageResult r = StageResult::Failed;
  bool restart = false;
  if (warm) r = ex.run_from_basis(*warm);
  if (r == StageResult::DualInfeasible || r == StageResult::DualUnbounded)
    return status_only(r == StageResult::DualInfeasible ? LPStatus::Unbounded : LPStatus::Infeasible,
                       float_iterations, ex.iterations());
  if (r != StageResult::Optimal) {
    restart = static_cast<bool>(warm);
    ExactSimplex fresh(f, options);
    r = fresh.run_from_scratch();
    if (r == StageResult::Failed)
      throw InternalError("exact simplex exceeded its iteration limit");
    if (r != StageResult::Optimal) {
      // The dual being infeasible means the primal has no finite optimum;
      // the dual being unbounded means the primal is infeasible.
      return status_only(r == StageResult::DualInfeasible ? LPStatus::Unbounded : LPStatus::Infeasible,
                         float_iterations, ex.iterations() + fresh.iterations());
    }
    SimplexResult res = finish(lp, f, fresh);
    res.float_iterations = float_iterations;
    res.exact_iterations = ex.iterations() + fresh.iterations();
    res.exact_restart = restart;
    return res;
  }
  SimplexResult res = finish(lp, f, ex);
  res.float_iterations = float_iterations;
  res.exact_iterations = ex.iterations();
  return res;
}

}  // namespace icb
