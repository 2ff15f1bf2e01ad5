#pragma once

// Matroids as dense rank vectors, the matroid → index coding compiler, the
// Fano and non-Fano matroids with their characteristic-dependent
// inequalities Λ, the tightening transformation B, and subspace tuples over
// prime fields with their dimension vectors.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "icb/field.hpp"
#include "icb/groundset.hpp"
#include "icb/instance.hpp"

namespace icb {

inline constexpr std::size_t kMatroidCap = 12;

class Matroid {
 public:
  Matroid() = default;
  /// `rank[s]` is r(S) for the subset with dense rank s. Axioms are not checked here.
  Matroid(GroundSet gs, std::vector<std::uint8_t> rank);

  const GroundSet& ground_set() const noexcept { return gs_; }
  std::size_t size() const noexcept { return gs_.size(); }
  int rank(const SubsetMask& s) const { return rank_.at(s.to_u64()); }
  int rank_bits(std::uint64_t s) const { return rank_[s]; }
  int full_rank() const { return rank_.back(); }
  const std::vector<std::uint8_t>& ranks() const noexcept { return rank_; }

  /// r⃗(M) as an exact vector over 2^E.
  SetVector rank_vector() const;
  SubsetMask closure(const SubsetMask& s) const;
  std::vector<SubsetMask> bases() const;

  friend bool operator==(const Matroid&, const Matroid&) = default;

 private:
  GroundSet gs_;
  std::vector<std::uint8_t> rank_;
};

struct AxiomReport {
  bool ok = true;
  std::string failure;
};

/// r(∅) = 0, r(A) ≤ |A|, monotone, submodular; exhaustive.
AxiomReport check_axioms(const Matroid& m);

/// Columns of `matrix` are the elements; r(S) = rank of the column submatrix.
Matroid rank_from_matrix(const GroundSet& gs, const FpMatrix& matrix);

/// Element labels of the Fano plane's points, in matrix column order.
const GroundSet& fano_labels();
/// The 3×7 representation matrix (columns 100, 010, 001, 110, 101, 011, 111).
FpMatrix fano_matrix(std::uint32_t p);
/// The matrix over F₂.
Matroid fano();
/// The same matrix over F₃.
Matroid nonfano();
Matroid uniform_matroid(std::size_t k, std::size_t n);
Matroid free_matroid(std::size_t n);
/// Cycle matroid; element labels are "u-v" built from vertex indices.
Matroid graphic_matroid(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

/// Receivers (x, S) with x ∉ S and r(S ∪ x) = r(S); with `minimal`, only the
/// inclusion-minimal S for each x.
IndexCodingInstance to_index_coding(const Matroid& m, bool minimal = true);

inline constexpr const char* kZeroElementLabel = "e";

/// M + e: a new rank-zero element appended last.
Matroid adjoin_zero(const Matroid& m, const std::string& label = kZeroElementLabel);

bool basis_intersection_empty(const Matroid& m);

/// (B₀v)_S = v_{S∪e} − v_{e} for S ⊆ J∖{e}.
SetVector tighten_b0(const SetVector& v, std::size_t e);
/// (B_k u)_S = u_S if k ∉ S, else u_S + u_{I∖k} − u_I.
SetVector tighten_bk(const SetVector& u, std::size_t k);
/// B = B_n ⋯ B_1 B₀ with I = J∖{e} in ascending order.
SetVector tighten_apply(const SetVector& v, std::size_t e);
/// Bᵀλ for λ over 2^I, giving a vector over 2^J with e appended last.
SetVector tighten_transpose(const SetVector& lambda, const GroundSet& j, std::size_t e);

/// Inequality valid for subspace tuples over fields of characteristic 2.
const SetVector& lambda_even();
/// Inequality valid for subspace tuples over fields of odd characteristic.
const SetVector& lambda_odd();
/// Bᵀ Λ over the Fano labels plus the zero element "e"; tight.
const SetVector& alpha_even();
const SetVector& alpha_odd();

// ------------------------------------------------------------- subspaces

class SubspaceTuple {
 public:
  SubspaceTuple(std::uint32_t p, std::size_t ambient, std::vector<FpMatrix> bases);

  std::uint32_t prime() const noexcept { return p_; }
  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t count() const noexcept { return bases_.size(); }
  /// Rows form a basis of subspace k.
  const FpMatrix& basis(std::size_t k) const { return bases_.at(k); }
  /// Basis of the span of the subspaces in `s`.
  FpMatrix span(const SubsetMask& s) const;

 private:
  std::uint32_t p_;
  std::size_t ambient_;
  std::vector<FpMatrix> bases_;
};

/// d⃗ over 2^{count} with d_S = dim Σ_{k∈S} V_k, labelled by `gs`.
SetVector dimension_vector(const SubspaceTuple& t, const GroundSet& gs);

SubspaceTuple random_subspace_tuple(std::uint32_t p, std::size_t ambient, std::size_t count,
                                    std::size_t max_dim, std::uint64_t seed);

/// Images of the other subspaces under the quotient map by V_e; index e removed.
SubspaceTuple quotient_tuple(const SubspaceTuple& t, std::size_t e);
/// Images under a projection fixing the span of all V_i with i ≠ k and
/// killing a complement taken inside V_k.
SubspaceTuple project_tuple(const SubspaceTuple& t, std::size_t k);

}  // namespace icb
