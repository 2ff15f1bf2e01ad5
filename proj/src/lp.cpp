#include <bit>
#include "icb/lp.hpp"

#include "icb/error.hpp"

namespace icb {

LPProblem build_primal(const IndexCodingInstance& g, const ConstraintSchema& schema, const LPOptions& options) {
  const std::size_t n = g.size();
  require_dense(n, "LP variables");
  LPProblem p;
  p.instance = g;
  p.schema = schema;
  p.closure = options.closure;
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t all = total - 1;
  p.program.num_vars = total;
  p.program.objective = {{0, Rational(1)}};

  p.program.rows.push_back({{{all, Rational(1)}}, RowSense::Equal, Rational(static_cast<long>(n))});

  auto add_decoding = [&](std::uint64_t s, std::uint64_t t) {
    const std::uint64_t cl = g.closure_bits(s, options.closure);
    const long c = std::popcount(t & ~cl);
    p.program.rows.push_back({{{t, Rational(1)}, {s, Rational(-1)}}, RowSense::LessEqual, Rational(c)});
    p.decoding.emplace_back(SubsetMask::from_bits(n, s), SubsetMask::from_bits(n, t));
  };
  if (options.decoding == DecodingFamily::SingleStep) {
    for (std::uint64_t s = 0; s < total; ++s)
      for (std::size_t x = 0; x < n; ++x)
        if (!(s >> x & 1)) add_decoding(s, s | std::uint64_t{1} << x);
  } else {
    for (std::uint64_t t = 1; t < total; ++t)
      for (std::uint64_t s = (t - 1) & t;; s = (s - 1) & t) {
        add_decoding(s, t);
        if (s == 0) break;
      }
  }

  for (auto& row : schema.enumerate_rows(g.messages(), options.rows)) {
    const SetVector v = schema.row_vector(row, g.messages());
    if (v.is_zero()) continue;
    LinearRow lr;
    lr.sense = RowSense::GreaterEqual;
    lr.rhs = 0;
    for (const auto& [s, a] : v.sorted_entries()) lr.coeffs.emplace_back(s.to_u64(), a);
    p.program.rows.push_back(std::move(lr));
    p.schema_rows.push_back(std::move(row));
  }
  return p;
}

SimplexResult solve(const LPProblem& problem, const SimplexOptions& options) {
  return solve_lp(problem.program, options);
}

SetVector primal_vector(const LPProblem& problem, const SimplexResult& result) {
  if (result.status != LPStatus::Optimal) throw InputError("no optimal solution to read");
  const std::size_t n = problem.instance.size();
  SetVector z(problem.instance.messages());
  for (std::uint64_t s = 0; s < result.primal.size(); ++s)
    if (result.primal[s] != 0) z.set(SubsetMask::from_bits(n, s), result.primal[s]);
  return z;
}

DualCertificate extract_certificate(const LPProblem& problem, const SimplexResult& result) {
  if (result.status != LPStatus::Optimal) throw InputError("cannot extract a certificate from a non-optimal solution");
  const Rational& w = result.dual[0];
  if (w != 1)
    throw Unsupported("equality multiplier is " + to_display_string(w) +
                      ", not 1; the schema rows used are not tight");
  DualCertificate c;
  c.messages = problem.instance.messages();
  c.schema = problem.schema.name();
  c.closure = problem.closure;
  for (std::size_t k = 0; k < problem.decoding.size(); ++k) {
    // ≤ rows carry non-positive multipliers.
    const Rational& v = result.dual[problem.decoding_offset() + k];
    if (v != 0) c.add_x(problem.decoding[k].first, problem.decoding[k].second, -v);
  }
  for (std::size_t k = 0; k < problem.schema_rows.size(); ++k) {
    const Rational& v = result.dual[problem.schema_offset() + k];
    if (v != 0) c.add_y(problem.schema_rows[k], v);
  }
  const VerifyReport report = verify(problem.instance, problem.schema, c);
  if (report.value != result.objective)
    throw InternalError("extracted certificate verifies to " + to_display_string(report.value) +
                        " but the LP optimum is " + to_display_string(result.objective));
  return c;
}

BoundResult solve_bound(const IndexCodingInstance& g, const ConstraintSchema& schema, const LPOptions& options) {
  const LPProblem p = build_primal(g, schema, options);
  SimplexResult r = solve(p, options.simplex);
  if (r.status != LPStatus::Optimal)
    throw InternalError("LP has no finite optimum (status " + to_string(r.status) + ")");
  DualCertificate cert = extract_certificate(p, r);
  return {r.objective, std::move(cert), std::move(r)};
}

Rational bound_b(const IndexCodingInstance& g, const LPOptions& options) {
  return bound_with_schema(g, ConstraintSchema::submodularity(), options);
}

Rational bound_with_schema(const IndexCodingInstance& g, const ConstraintSchema& schema, const LPOptions& options) {
  const LPProblem p = build_primal(g, schema, options);
  const SimplexResult r = solve(p, options.simplex);
  if (r.status != LPStatus::Optimal)
    throw InternalError("LP has no finite optimum (status " + to_string(r.status) + ")");
  return r.objective;
}

}  // namespace icb
