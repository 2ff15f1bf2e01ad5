#pragma once

// Dual certificates (x, y) with Aᵀy + ∇x = e_∅ − e_I: exact verification,
// combination across lexicographic products, the built-in C₅ certificate,
// and the certificate that turns an inequality violated by a matroid's rank
// vector into a bound strictly above |E| − r(E).

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "icb/groundset.hpp"
#include "icb/instance.hpp"
#include "icb/matroid.hpp"
#include "icb/schema.hpp"

namespace icb {

using DecodingKey = std::pair<SubsetMask, SubsetMask>;

struct DualCertificate {
  GroundSet messages;
  /// Name of the schema the y rows belong to.
  std::string schema;
  ClosureMode closure = ClosureMode::SingleStep;
  /// x_{ST} for S ⊊ T.
  std::map<DecodingKey, Rational> x;
  std::map<SchemaRowId, Rational> y;

  void add_x(const SubsetMask& s, const SubsetMask& t, const Rational& v);
  void add_y(const SchemaRowId& row, const Rational& v);

  friend bool operator==(const DualCertificate&, const DualCertificate&) = default;
};

struct VerifyReport {
  /// Σ d(S,T) x_{ST}; equals |I| − Σ c_{ST} x_{ST}.
  Rational value;
  std::size_t touched = 0;
};

/// Exact check of Aᵀy + ∇x = e_∅ − e_I with nonnegative entries. Throws
/// VerificationError naming the first offending coordinate.
VerifyReport verify(const IndexCodingInstance& g, const ConstraintSchema& schema,
                    const DualCertificate& cert);

/// Certificate over lex_product(g, f) from certificates for g and f.
DualCertificate combine(const IndexCodingInstance& g, const IndexCodingInstance& f,
                        const DualCertificate& cert_g, const DualCertificate& cert_f,
                        const ConstraintSchema& schema);

/// g(X) = X × V(F), as a homomorphism into the product ground set.
LatticeHom block_hom(const IndexCodingInstance& g, const IndexCodingInstance& f);
/// h^{ST}(X) = (T × X) ∪ (S × V(F)).
LatticeHom fiber_hom(const IndexCodingInstance& g, const IndexCodingInstance& f,
                     const SubsetMask& s, const SubsetMask& t);

enum class UnionSide { Left, Right };

/// Re-expresses a certificate for one side of a union schema.
DualCertificate lift(const DualCertificate& cert, const ConstraintSchema& union_schema, UnionSide side);

/// The 5-cycle 1-2-3-4-5-1 as a graph instance.
IndexCodingInstance c5_instance();
/// The hand-written certificate for b(C₅) ≥ 5/2.
DualCertificate c5_certificate();

struct AddIneqCertificate {
  DualCertificate cert;
  /// Normalizing constant s = a_{q∅} + Σ_{S⁺} a_{qS}.
  Rational scale;
  /// a·r⃗(M) for the unscaled row.
  Rational deficit;
};

/// From a row a with a·𝟙 = 0 and a·r⃗(M) < 0, a certificate over
/// to_index_coding(m) with value |E| − r(E) − a·r⃗(M)/s.
AddIneqCertificate addineq_certificate(const Matroid& m, const SchemaRowId& row,
                                       const ConstraintSchema& schema);

}  // namespace icb
