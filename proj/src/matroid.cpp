#include "icb/matroid.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "icb/error.hpp"

namespace icb {

namespace {

std::uint64_t full_bits(std::size_t n) { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

}  // namespace

// ------------------------------------------------------------------ Matroid

Matroid::Matroid(GroundSet gs, std::vector<std::uint8_t> rank) : gs_(std::move(gs)), rank_(std::move(rank)) {
  if (gs_.size() > kMatroidCap)
    throw CapExceeded("matroids are limited to " + std::to_string(kMatroidCap) + " elements");
  if (rank_.size() != (std::size_t{1} << gs_.size()))
    throw InputError("rank vector must have 2^n entries");
}

SetVector Matroid::rank_vector() const {
  SetVector v(gs_);
  for (std::uint64_t s = 0; s < rank_.size(); ++s)
    if (rank_[s]) v.set(SubsetMask::from_bits(size(), s), rank_[s]);
  return v;
}

SubsetMask Matroid::closure(const SubsetMask& s) const {
  const std::uint64_t bits = s.to_u64();
  std::uint64_t out = bits;
  for (std::size_t x = 0; x < size(); ++x) {
    const std::uint64_t bx = std::uint64_t{1} << x;
    if (rank_[bits | bx] == rank_[bits]) out |= bx;
  }
  return SubsetMask::from_bits(size(), out);
}

std::vector<SubsetMask> Matroid::bases() const {
  std::vector<SubsetMask> out;
  const int r = full_rank();
  for (std::uint64_t s = 0; s < rank_.size(); ++s)
    if (std::popcount(s) == r && rank_[s] == r) out.push_back(SubsetMask::from_bits(size(), s));
  return out;
}

AxiomReport check_axioms(const Matroid& m) {
  const std::size_t n = m.size();
  const std::uint64_t total = std::uint64_t{1} << n;
  auto fail = [&](const std::string& what, std::uint64_t s) {
    return AxiomReport{false, what + " at " + format_subset(m.ground_set(), SubsetMask::from_bits(n, s))};
  };
  if (m.rank_bits(0) != 0) return fail("r(∅) ≠ 0", 0);
  for (std::uint64_t s = 0; s < total; ++s) {
    if (m.rank_bits(s) > std::popcount(s)) return fail("r(A) > |A|", s);
    for (std::size_t x = 0; x < n; ++x) {
      const std::uint64_t bx = std::uint64_t{1} << x;
      if (s & bx) continue;
      if (m.rank_bits(s | bx) < m.rank_bits(s)) return fail("rank not monotone", s);
      if (m.rank_bits(s | bx) > m.rank_bits(s) + 1) return fail("rank jumps by more than one", s);
      // Local submodularity implies the general inequality.
      for (std::size_t y = x + 1; y < n; ++y) {
        const std::uint64_t by = std::uint64_t{1} << y;
        if (s & by) continue;
        if (m.rank_bits(s | bx) + m.rank_bits(s | by) < m.rank_bits(s | bx | by) + m.rank_bits(s))
          return fail("rank not submodular", s);
      }
    }
  }
  return {};
}

Matroid rank_from_matrix(const GroundSet& gs, const FpMatrix& matrix) {
  const std::size_t n = matrix.cols();
  if (gs.size() != n) throw InputError("matrix has " + std::to_string(n) + " columns but " +
                                       std::to_string(gs.size()) + " labels were given");
  if (n > kMatroidCap) throw CapExceeded("matroids are limited to " + std::to_string(kMatroidCap) + " elements");
  std::vector<std::uint8_t> rank(std::size_t{1} << n, 0);
  for (std::uint64_t s = 1; s < rank.size(); ++s) {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < n; ++i)
      if (s >> i & 1) cols.push_back(i);
    rank[s] = static_cast<std::uint8_t>(matrix.select_columns(cols).rank());
  }
  return Matroid(gs, std::move(rank));
}

const GroundSet& fano_labels() {
  static const GroundSet gs{"100", "010", "001", "110", "101", "011", "111"};
  return gs;
}

FpMatrix fano_matrix(std::uint32_t p) {
  return FpMatrix::from_rows(p, {{1, 0, 0, 1, 1, 0, 1}, {0, 1, 0, 1, 0, 1, 1}, {0, 0, 1, 0, 1, 1, 1}});
}

Matroid fano() { return rank_from_matrix(fano_labels(), fano_matrix(2)); }
Matroid nonfano() { return rank_from_matrix(fano_labels(), fano_matrix(3)); }

Matroid uniform_matroid(std::size_t k, std::size_t n) {
  if (k > n) throw InputError("uniform matroid needs k ≤ n");
  if (n > kMatroidCap) throw CapExceeded("matroids are limited to " + std::to_string(kMatroidCap) + " elements");
  std::vector<std::uint8_t> rank(std::size_t{1} << n);
  for (std::uint64_t s = 0; s < rank.size(); ++s)
    rank[s] = static_cast<std::uint8_t>(std::min<std::size_t>(k, std::popcount(s)));
  return Matroid(GroundSet::numbered(n), std::move(rank));
}

Matroid free_matroid(std::size_t n) { return uniform_matroid(n, n); }

Matroid graphic_matroid(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  const std::size_t n = edges.size();
  if (n > kMatroidCap) throw CapExceeded("matroids are limited to " + std::to_string(kMatroidCap) + " elements");
  std::vector<std::string> labels;
  for (auto [u, v] : edges) {
    if (u >= vertices || v >= vertices) throw InputError("edge endpoint out of range");
    labels.push_back(std::to_string(u) + "-" + std::to_string(v));
  }
  std::vector<std::uint8_t> rank(std::size_t{1} << n);
  std::vector<std::size_t> parent(vertices);
  for (std::uint64_t s = 0; s < rank.size(); ++s) {
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(s >> i & 1)) continue;
      const std::size_t a = find(edges[i].first), b = find(edges[i].second);
      if (a != b) {
        parent[a] = b;
        ++r;
      }
    }
    rank[s] = static_cast<std::uint8_t>(r);
  }
  return Matroid(GroundSet(std::move(labels)), std::move(rank));
}

IndexCodingInstance to_index_coding(const Matroid& m, bool minimal) {
  const std::size_t n = m.size();
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<Receiver> receivers;
  for (std::size_t x = 0; x < n; ++x) {
    const std::uint64_t bx = std::uint64_t{1} << x;
    std::vector<std::uint64_t> found;
    // Increasing popcount order makes the minimality test a subset scan.
    std::vector<std::uint64_t> order;
    for (std::uint64_t s = 0; s < total; ++s)
      if (!(s & bx) && m.rank_bits(s | bx) == m.rank_bits(s)) order.push_back(s);
    std::stable_sort(order.begin(), order.end(),
                     [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) < std::popcount(b); });
    for (std::uint64_t s : order) {
      if (minimal &&
          std::any_of(found.begin(), found.end(), [&](std::uint64_t f) { return (f & ~s) == 0; }))
        continue;
      found.push_back(s);
    }
    std::sort(found.begin(), found.end());
    for (std::uint64_t s : found) receivers.push_back({x, SubsetMask::from_bits(n, s)});
  }
  return IndexCodingInstance(m.ground_set(), std::move(receivers));
}

Matroid adjoin_zero(const Matroid& m, const std::string& label) {
  std::vector<std::string> labels = m.ground_set().labels();
  labels.push_back(label);
  const std::size_t n = m.size();
  std::vector<std::uint8_t> rank(std::size_t{1} << (n + 1));
  for (std::uint64_t s = 0; s < rank.size(); ++s) rank[s] = static_cast<std::uint8_t>(m.rank_bits(s & full_bits(n)));
  return Matroid(GroundSet(std::move(labels)), std::move(rank));
}

bool basis_intersection_empty(const Matroid& m) {
  SubsetMask acc = SubsetMask::full(m.size());
  for (const auto& b : m.bases()) acc &= b;
  return acc.none();
}

// --------------------------------------------------------------- tightening

namespace {

std::vector<Rational> dense(const SetVector& v) {
  const std::size_t n = v.ground_set().size();
  require_dense(n, "tightening");
  std::vector<Rational> out(std::size_t{1} << n, 0);
  for (const auto& [s, val] : v.entries()) out[s.to_u64()] = val;
  return out;
}

SetVector sparse(const GroundSet& gs, const std::vector<Rational>& d) {
  SetVector v(gs);
  for (std::uint64_t s = 0; s < d.size(); ++s)
    if (d[s] != 0) v.set(SubsetMask::from_bits(gs.size(), s), d[s]);
  return v;
}

GroundSet remove_label(const GroundSet& gs, std::size_t e) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < gs.size(); ++i)
    if (i != e) labels.push_back(gs.label(i));
  return GroundSet(std::move(labels));
}

// Subset of J∖{e} (dense rank) to the corresponding subset of J.
std::uint64_t lift_bits(std::uint64_t s, std::size_t e) {
  const std::uint64_t low = s & ((std::uint64_t{1} << e) - 1);
  const std::uint64_t high = s >> e;
  return low | (high << (e + 1));
}

}  // namespace

SetVector tighten_b0(const SetVector& v, std::size_t e) {
  const GroundSet& j = v.ground_set();
  if (e >= j.size()) throw InputError("tightening: element index out of range");
  const std::vector<Rational> dv = dense(v);
  const std::size_t n = j.size() - 1;
  const std::uint64_t be = std::uint64_t{1} << e;
  std::vector<Rational> out(std::size_t{1} << n);
  for (std::uint64_t s = 0; s < out.size(); ++s) out[s] = dv[lift_bits(s, e) | be] - dv[be];
  return sparse(remove_label(j, e), out);
}

SetVector tighten_bk(const SetVector& u, std::size_t k) {
  const GroundSet& gs = u.ground_set();
  if (k >= gs.size()) throw InputError("tightening: element index out of range");
  const std::vector<Rational> du = dense(u);
  const std::uint64_t all = full_bits(gs.size());
  const std::uint64_t bk = std::uint64_t{1} << k;
  std::vector<Rational> out(du.size());
  for (std::uint64_t s = 0; s < du.size(); ++s)
    out[s] = (s & bk) ? du[s] + du[all & ~bk] - du[all] : du[s];
  return sparse(gs, out);
}

SetVector tighten_apply(const SetVector& v, std::size_t e) {
  SetVector u = tighten_b0(v, e);
  for (std::size_t k = 0; k < u.ground_set().size(); ++k) u = tighten_bk(u, k);
  return u;
}

SetVector tighten_transpose(const SetVector& lambda, const GroundSet& j, std::size_t e) {
  if (e >= j.size()) throw InputError("tightening: element index out of range");
  if (!(remove_label(j, e) == lambda.ground_set()))
    throw InputError("tightening transpose: λ must live on J without e");
  std::vector<Rational> mu = dense(lambda);
  const std::size_t n = lambda.ground_set().size();
  const std::uint64_t all = full_bits(n);
  // Bᵀ = B₀ᵀ B₁ᵀ ⋯ B_nᵀ: apply B_nᵀ first.
  for (std::size_t k = n; k-- > 0;) {
    const std::uint64_t bk = std::uint64_t{1} << k;
    std::vector<Rational> next = mu;  // diagonal part
    for (std::uint64_t s = 0; s < mu.size(); ++s) {
      if (!(s & bk) || mu[s] == 0) continue;
      next[all & ~bk] += mu[s];
      next[all] -= mu[s];
    }
    mu = std::move(next);
  }
  const std::uint64_t be = std::uint64_t{1} << e;
  std::vector<Rational> out(std::size_t{1} << j.size(), 0);
  for (std::uint64_t s = 0; s < mu.size(); ++s) {
    if (mu[s] == 0) continue;
    out[lift_bits(s, e) | be] += mu[s];
    out[be] -= mu[s];
  }
  return sparse(j, out);
}

namespace {

SetVector build_lambda(const std::vector<std::pair<int, std::vector<std::string_view>>>& terms) {
  const GroundSet& gs = fano_labels();
  SetVector v(gs);
  for (const auto& [coef, labels] : terms) {
    SubsetMask s(gs.size());
    for (auto l : labels) s.set(gs.index_of(l));
    v.add(s, coef);
  }
  return v;
}

GroundSet fano_plus_zero() {
  std::vector<std::string> labels = fano_labels().labels();
  labels.emplace_back(kZeroElementLabel);
  return GroundSet(std::move(labels));
}

}  // namespace

const SetVector& lambda_even() {
  static const SetVector v = build_lambda({
      {2, {"100"}}, {2, {"010"}}, {3, {"001"}}, {11, {"111"}},
      {3, {"100", "010"}}, {2, {"100", "001"}}, {2, {"010", "001"}},
      {-1, {"100", "111"}}, {-1, {"010", "111"}}, {-1, {"001", "111"}},
      {-4, {"100", "010", "001"}},
      {-3, {"111", "100", "010"}}, {-3, {"111", "100", "001"}}, {-3, {"111", "010", "001"}},
      {1, {"110", "100", "010"}}, {1, {"101", "100", "001"}}, {1, {"011", "010", "001"}},
      {1, {"110", "111", "001"}}, {1, {"101", "111", "010"}}, {1, {"011", "111", "100"}},
      {-1, {"110", "101", "011"}},
      {1, {"111", "100", "010", "001"}},
  });
  return v;
}

const SetVector& lambda_odd() {
  static const SetVector v = build_lambda({
      {3, {"100"}}, {3, {"010"}}, {9, {"001"}}, {6, {"111"}},
      {6, {"100", "010"}},
      {-12, {"100", "010", "001"}},
      {3, {"110", "100", "010"}}, {3, {"101", "100", "001"}}, {3, {"011", "010", "001"}},
      {-3, {"111", "100", "010"}}, {-3, {"111", "100", "001"}}, {-3, {"111", "010", "001"}},
      {3, {"111", "100", "010", "001"}},
      {1, {"110", "101", "011"}},
      // Pays for the vectors dropped from V_111 when it is forced into V_i + V_j, i + j = 111.
      {-3, {"100", "011"}}, {-3, {"010", "101"}}, {-3, {"001", "110"}},
      {3, {"111", "100", "011"}}, {3, {"111", "010", "101"}}, {3, {"111", "001", "110"}},
  });
  return v;
}

const SetVector& alpha_even() {
  static const SetVector v = tighten_transpose(lambda_even(), fano_plus_zero(), fano_labels().size());
  return v;
}

const SetVector& alpha_odd() {
  static const SetVector v = tighten_transpose(lambda_odd(), fano_plus_zero(), fano_labels().size());
  return v;
}

// ---------------------------------------------------------------- subspaces

SubspaceTuple::SubspaceTuple(std::uint32_t p, std::size_t ambient, std::vector<FpMatrix> bases)
    : p_(p), ambient_(ambient), bases_(std::move(bases)) {
  require_prime(p);
  for (const auto& b : bases_) {
    if (b.cols() != ambient_ || b.prime() != p_)
      throw InputError("subspace basis does not match the ambient space");
    if (b.rank() != b.rows()) throw InputError("subspace basis rows are dependent");
  }
}

FpMatrix SubspaceTuple::span(const SubsetMask& s) const {
  FpMatrix acc(p_, 0, ambient_);
  for (std::size_t k : s.indices()) acc = acc.stack(bases_.at(k));
  return acc.row_basis();
}

SetVector dimension_vector(const SubspaceTuple& t, const GroundSet& gs) {
  if (gs.size() != t.count()) throw InputError("dimension vector: label count does not match the tuple");
  require_dense(t.count(), "dimension vector");
  return SetVector::from_function(gs, [&](const SubsetMask& s) { return Rational(t.span(s).rows()); });
}

SubspaceTuple random_subspace_tuple(std::uint32_t p, std::size_t ambient, std::size_t count,
                                    std::size_t max_dim, std::uint64_t seed) {
  require_prime(p);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> coef(0, p - 1);
  std::uniform_int_distribution<std::size_t> dim(0, std::min(max_dim, ambient));
  std::vector<FpMatrix> bases;
  for (std::size_t k = 0; k < count; ++k) {
    FpMatrix m(p, 0, ambient);
    const std::size_t d = dim(rng);
    for (std::size_t r = 0; r < d; ++r) {
      std::vector<std::uint32_t> row(ambient);
      for (auto& x : row) x = coef(rng);
      m.append_row(row);
    }
    bases.push_back(m.row_basis());
  }
  return SubspaceTuple(p, ambient, std::move(bases));
}

SubspaceTuple quotient_tuple(const SubspaceTuple& t, std::size_t e) {
  if (e >= t.count()) throw InputError("quotient: index out of range");
  // Rows of P span the annihilator of V_e, so v ↦ P v has kernel exactly V_e.
  const FpMatrix p = t.basis(e).null_space();
  std::vector<FpMatrix> out;
  for (std::size_t k = 0; k < t.count(); ++k) {
    if (k == e) continue;
    out.push_back(t.basis(k).multiply(p.transpose()).row_basis());
  }
  return SubspaceTuple(t.prime(), p.rows(), std::move(out));
}

SubspaceTuple project_tuple(const SubspaceTuple& t, std::size_t k) {
  if (k >= t.count()) throw InputError("projection: index out of range");
  const std::uint32_t p = t.prime();
  const std::size_t m = t.ambient();
  SubsetMask others = SubsetMask::full(t.count());
  others.reset(k);
  const FpMatrix w = t.span(others);
  // Basis rows: W, then a complement C from V_k's basis, then padding.
  FpMatrix basis = w;
  const FpMatrix& vk = t.basis(k);
  for (std::size_t r = 0; r < vk.rows(); ++r) {
    FpMatrix trial = basis;
    trial.append_row(vk.row(r));
    if (trial.rank() > basis.rows()) basis = std::move(trial);
  }
  for (std::size_t i = 0; i < m && basis.rows() < m; ++i) {
    std::vector<std::uint32_t> unit(m, 0);
    unit[i] = 1;
    FpMatrix trial = basis;
    trial.append_row(unit);
    if (trial.rank() > basis.rows()) basis = std::move(trial);
  }
  // Row vector v has coordinates c = v·basis⁻¹; keep the W part: π(v) = c_W · W.
  const FpMatrix inv = basis.inverse();
  FpMatrix keep(p, m, m);
  for (std::size_t i = 0; i < w.rows(); ++i) keep.set(i, i, 1);
  const FpMatrix pi = inv.multiply(keep).multiply(basis);
  std::vector<FpMatrix> out;
  for (std::size_t i = 0; i < t.count(); ++i) out.push_back(t.basis(i).multiply(pi).row_basis());
  return SubspaceTuple(p, m, std::move(out));
}

}  // namespace icb
