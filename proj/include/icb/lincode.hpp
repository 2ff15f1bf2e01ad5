#pragma once

// Scalar linear index codes over prime fields, matroid under-representations
// and their conversion to codes, entropy vectors of codes, and explicit
// table codes with concatenation over lexicographic products.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "icb/field.hpp"
#include "icb/groundset.hpp"
#include "icb/instance.hpp"
#include "icb/matroid.hpp"

namespace icb {

/// Broadcast Q·m for messages m ∈ F_p^n; one symbol per row of Q.
struct ScalarLinearCode {
  FpMatrix q;

  std::uint32_t prime() const noexcept { return q.prime(); }
  std::size_t length() const noexcept { return q.rows(); }
  std::size_t messages() const noexcept { return q.cols(); }
  std::size_t rank() const { return q.rank(); }

  friend bool operator==(const ScalarLinearCode&, const ScalarLinearCode&) = default;
};

/// Every receiver (x, S) has e_x in rowspace(Q) + span{e_z : z ∈ S}.
bool is_valid_code(const IndexCodingInstance& g, const ScalarLinearCode& code);

/// Calls `visit` on the RREF basis of every `dim`-dimensional subspace of
/// F_p^n, in a fixed order, until it returns false.
void for_each_subspace(std::uint32_t p, std::size_t n, std::size_t dim,
                       const std::function<bool(const FpMatrix&)>& visit);

/// Largest n for which the exhaustive searches run at prime p.
std::size_t search_cap(std::uint32_t p);

struct RateSearchResult {
  /// Least valid length, or nothing if none up to l_max.
  std::optional<std::size_t> rate;
  std::optional<ScalarLinearCode> witness;
  std::size_t spaces_checked = 0;
};

/// Exhaustive over row spaces in RREF. Throws CapExceeded above search_cap(p).
RateSearchResult min_scalar_linear_rate(const IndexCodingInstance& g, std::uint32_t p, std::size_t l_max);

/// All valid codes of exactly this length, one per row space.
std::vector<ScalarLinearCode> valid_codes(const IndexCodingInstance& g, std::uint32_t p, std::size_t length);

/// Rows of R independent, and for every x ∉ S with r(S ∪ x) = r(S), column x
/// lies in the span of the columns indexed by S.
bool underrep_check(const Matroid& m, const FpMatrix& r);

/// Some d-dimensional under-representation over F_p, by exhaustive search.
std::optional<FpMatrix> find_underrep(const Matroid& m, std::uint32_t p, std::size_t d);

/// Q = basis of null(R), length n − d; throws InputError if R does not
/// under-represent M.
ScalarLinearCode underrep_to_code(const Matroid& m, const FpMatrix& r);
/// R = basis of null(Q); throws InputError unless the code is valid for
/// G_M with full row rank.
FpMatrix code_to_underrep(const Matroid& m, const ScalarLinearCode& code);

/// z_S = rank of Q together with e_i for i ∈ S.
SetVector code_entropy_vector(const IndexCodingInstance& g, const ScalarLinearCode& code);

inline constexpr std::size_t kTableCap = std::size_t{1} << 20;

/// Explicit encoding over a common alphabet Σ: message tuple (m_0, …, m_{n-1})
/// at index Σ m_i |Σ|^i maps to a codeword in [0, |Σ|^length).
struct TableCode {
  std::uint32_t alphabet = 2;
  std::size_t messages = 0;
  std::size_t length = 0;
  std::vector<std::uint64_t> table;

  friend bool operator==(const TableCode&, const TableCode&) = default;
};

/// |Σ|^n, throwing CapExceeded above kTableCap.
std::size_t table_size(std::uint32_t alphabet, std::size_t messages);

TableCode to_table_code(const ScalarLinearCode& code);

/// Every receiver recovers its message from the codeword and its side information.
bool is_decodable(const IndexCodingInstance& g, const TableCode& code);

/// z_S = H(m_S, E(m)) / log|Σ| for uniform messages, in binary64.
std::vector<double> table_entropy_vector(const TableCode& code);

/// Primal feasibility of z for the b-LP with all decoding pairs and all
/// submodularity pairs, up to `tolerance`.
bool is_primal_feasible(const IndexCodingInstance& g, const std::vector<double>& z,
                        ClosureMode closure = ClosureMode::SingleStep, double tolerance = 1e-9);

/// Inner code F on each block {v} × V(F), then the outer code G applied
/// symbol-wise to the inner codewords; length is length(G)·length(F).
TableCode concatenate_codes(const IndexCodingInstance& g, const IndexCodingInstance& f, const TableCode& code_g,
                            const TableCode& code_f);

}  // namespace icb
