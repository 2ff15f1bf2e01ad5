#pragma once

// The entropy LP: minimize z_∅ subject to z_I = |I|, decoding rows
// z_T − z_S ≤ c_{ST}, and schema rows A z ≥ 0; solved exactly, with the
// optimal dual converted to a canonical certificate.

#include <cstddef>
#include <vector>

#include "icb/certificate.hpp"
#include "icb/instance.hpp"
#include "icb/schema.hpp"
#include "icb/simplex.hpp"

namespace icb {

enum class DecodingFamily {
  /// T = S ∪ {x} only; same optimum as all pairs.
  SingleStep,
  /// Every S ⊊ T.
  AllPairs,
};

struct LPOptions {
  RowPolicy rows;
  ClosureMode closure = ClosureMode::SingleStep;
  DecodingFamily decoding = DecodingFamily::SingleStep;
  SimplexOptions simplex;
};

struct LPProblem {
  IndexCodingInstance instance;
  ConstraintSchema schema;
  ClosureMode closure = ClosureMode::SingleStep;
  /// Variable k is z_S for the subset S with dense rank k.
  LinearProgram program;
  /// Row 0 is z_I = |I|; then one row per decoding key; then one per schema row.
  std::vector<DecodingKey> decoding;
  std::vector<SchemaRowId> schema_rows;

  std::size_t decoding_offset() const { return 1; }
  std::size_t schema_offset() const { return 1 + decoding.size(); }
};

LPProblem build_primal(const IndexCodingInstance& g, const ConstraintSchema& schema, const LPOptions& options = {});

SimplexResult solve(const LPProblem& problem, const SimplexOptions& options = {});

/// Optimal z as a vector over 2^I.
SetVector primal_vector(const LPProblem& problem, const SimplexResult& result);

/// Canonical certificate from an optimal solution; verified before returning.
DualCertificate extract_certificate(const LPProblem& problem, const SimplexResult& result);

struct BoundResult {
  Rational value;
  DualCertificate certificate;
  SimplexResult solution;
};

/// Solves and extracts; throws InternalError if the LP has no finite optimum.
BoundResult solve_bound(const IndexCodingInstance& g, const ConstraintSchema& schema, const LPOptions& options = {});

/// The LP with the submodularity schema.
Rational bound_b(const IndexCodingInstance& g, const LPOptions& options = {});
Rational bound_with_schema(const IndexCodingInstance& g, const ConstraintSchema& schema,
                           const LPOptions& options = {});

}  // namespace icb
