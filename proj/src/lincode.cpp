#include "icb/lincode.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <unordered_map>

#include "icb/error.hpp"

namespace icb {

namespace {

FpMatrix unit_rows(std::uint32_t p, std::size_t n, const SubsetMask& s) {
  FpMatrix out(p, 0, n);
  for (std::size_t i : s.indices()) {
    std::vector<std::uint32_t> row(n, 0);
    row[i] = 1;
    out.append_row(row);
  }
  return out;
}

std::vector<std::size_t> complement_columns(std::size_t n, const SubsetMask& s) {
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < n; ++i)
    if (!s.test(i)) cols.push_back(i);
  return cols;
}

// e_x ∈ rowspace(Q) + span{e_z : z ∈ S}: drop the S columns, then test membership.
bool receiver_decodes(const FpMatrix& q, std::size_t x, const SubsetMask& s) {
  const std::vector<std::size_t> keep = complement_columns(q.cols(), s);
  const FpMatrix restricted = q.select_columns(keep);
  std::vector<std::uint32_t> ex(keep.size(), 0);
  for (std::size_t k = 0; k < keep.size(); ++k)
    if (keep[k] == x) ex[k] = 1;
  FpMatrix with = restricted;
  with.append_row(ex);
  return with.rank() == restricted.rank();
}

std::uint64_t ipow(std::uint64_t base, std::size_t e) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (out > UINT64_MAX / base) throw CapExceeded("table code value range exceeds 64 bits");
    out *= base;
  }
  return out;
}

std::uint32_t digit(std::uint64_t v, std::uint32_t q, std::size_t i) {
  for (std::size_t k = 0; k < i; ++k) v /= q;
  return static_cast<std::uint32_t>(v % q);
}

struct PairHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const noexcept {
    return std::hash<std::uint64_t>{}(p.first * 0x9e3779b97f4a7c15ULL ^ p.second);
  }
};

}  // namespace

bool is_valid_code(const IndexCodingInstance& g, const ScalarLinearCode& code) {
  if (code.messages() != g.size())
    throw InputError("code has " + std::to_string(code.messages()) + " columns but the instance has " +
                     std::to_string(g.size()) + " messages");
  for (const auto& r : g.receivers())
    if (!receiver_decodes(code.q, r.wants, r.knows)) return false;
  return true;
}

void for_each_subspace(std::uint32_t p, std::size_t n, std::size_t dim,
                       const std::function<bool(const FpMatrix&)>& visit) {
  require_prime(p);
  if (dim > n) return;
  if (n > 63) throw CapExceeded("subspace enumeration needs n < 64");
  for (std::uint64_t pivots = 0; pivots < (std::uint64_t{1} << n); ++pivots) {
    if (static_cast<std::size_t>(std::popcount(pivots)) != dim) continue;
    std::vector<std::size_t> piv;
    for (std::size_t j = 0; j < n; ++j)
      if (pivots >> j & 1) piv.push_back(j);
    // Free slots: row i, column j > piv[i], j not a pivot.
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = piv[i] + 1; j < n; ++j)
        if (!(pivots >> j & 1)) free.emplace_back(i, j);
    FpMatrix m(p, dim, n);
    for (std::size_t i = 0; i < dim; ++i) m.set(i, piv[i], 1);
    std::vector<std::uint32_t> value(free.size(), 0);
    while (true) {
      if (!visit(m)) return;
      std::size_t k = 0;
      while (k < free.size()) {
        value[k] = (value[k] + 1) % p;
        m.set(free[k].first, free[k].second, value[k]);
        if (value[k] != 0) break;
        ++k;
      }
      if (k == free.size()) break;
    }
  }
}

std::size_t search_cap(std::uint32_t p) {
  if (p == 2) return 5;
  if (p == 3) return 4;
  return 3;
}

namespace {

void require_search_size(std::size_t n, std::uint32_t p) {
  require_prime(p);
  if (n > search_cap(p))
    throw CapExceeded("exhaustive search over F_" + std::to_string(p) + " is limited to n <= " +
                      std::to_string(search_cap(p)) + " (got " + std::to_string(n) + ")");
}

}  // namespace

RateSearchResult min_scalar_linear_rate(const IndexCodingInstance& g, std::uint32_t p, std::size_t l_max) {
  const std::size_t n = g.size();
  require_search_size(n, p);
  RateSearchResult out;
  for (std::size_t l = 0; l <= std::min(l_max, n); ++l) {
    for_each_subspace(p, n, l, [&](const FpMatrix& q) {
      ++out.spaces_checked;
      ScalarLinearCode code{q};
      if (!is_valid_code(g, code)) return true;
      out.rate = l;
      out.witness = std::move(code);
      return false;
    });
    if (out.rate) break;
  }
  return out;
}

std::vector<ScalarLinearCode> valid_codes(const IndexCodingInstance& g, std::uint32_t p, std::size_t length) {
  require_search_size(g.size(), p);
  std::vector<ScalarLinearCode> out;
  for_each_subspace(p, g.size(), length, [&](const FpMatrix& q) {
    ScalarLinearCode code{q};
    if (is_valid_code(g, code)) out.push_back(std::move(code));
    return true;
  });
  return out;
}

bool underrep_check(const Matroid& m, const FpMatrix& r) {
  const std::size_t n = m.size();
  if (r.cols() != n) throw InputError("matrix has " + std::to_string(r.cols()) + " columns, matroid has " +
                                      std::to_string(n) + " elements");
  if (r.rank() != r.rows()) return false;
  const FpMatrix cols = r.transpose();
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<int> span_rank(total);
  for (std::uint64_t s = 0; s < total; ++s) {
    FpMatrix sub(r.prime(), 0, r.rows());
    for (std::size_t i = 0; i < n; ++i)
      if (s >> i & 1) sub.append_row(cols.row(i));
    span_rank[s] = static_cast<int>(sub.rank());
  }
  for (std::uint64_t s = 0; s < total; ++s)
    for (std::size_t x = 0; x < n; ++x) {
      const std::uint64_t sx = s | std::uint64_t{1} << x;
      if (sx == s) continue;
      if (m.rank_bits(sx) == m.rank_bits(s) && span_rank[sx] != span_rank[s]) return false;
    }
  return true;
}

std::optional<FpMatrix> find_underrep(const Matroid& m, std::uint32_t p, std::size_t d) {
  require_search_size(m.size(), p);
  std::optional<FpMatrix> out;
  for_each_subspace(p, m.size(), d, [&](const FpMatrix& r) {
    if (!underrep_check(m, r)) return true;
    out = r;
    return false;
  });
  return out;
}

ScalarLinearCode underrep_to_code(const Matroid& m, const FpMatrix& r) {
  if (!underrep_check(m, r)) throw InputError("matrix does not under-represent the matroid");
  FpMatrix q = r.rows() == 0 ? FpMatrix::identity(r.prime(), m.size()) : r.null_space();
  return {std::move(q)};
}

FpMatrix code_to_underrep(const Matroid& m, const ScalarLinearCode& code) {
  if (code.messages() != m.size()) throw InputError("code width does not match the matroid");
  if (code.rank() != code.length()) throw InputError("code matrix does not have full row rank");
  if (!is_valid_code(to_index_coding(m), code)) throw InputError("code is not valid for the matroid's instance");
  if (code.length() == 0) return FpMatrix::identity(code.prime(), m.size());
  return code.q.null_space();
}

SetVector code_entropy_vector(const IndexCodingInstance& g, const ScalarLinearCode& code) {
  const std::size_t n = g.size();
  if (code.messages() != n) throw InputError("code width does not match the instance");
  require_dense(n, "code entropy vector");
  SetVector z(g.messages());
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    const SubsetMask mask = SubsetMask::from_bits(n, s);
    const std::size_t r = code.q.stack(unit_rows(code.prime(), n, mask)).rank();
    if (r != 0) z.set(mask, Rational(static_cast<long>(r)));
  }
  return z;
}

std::size_t table_size(std::uint32_t alphabet, std::size_t messages) {
  if (alphabet < 2) throw InputError("alphabet must have at least two symbols");
  std::size_t out = 1;
  for (std::size_t i = 0; i < messages; ++i) {
    out *= alphabet;
    if (out > kTableCap)
      throw CapExceeded("table code with " + std::to_string(messages) + " messages over an alphabet of " +
                        std::to_string(alphabet) + " exceeds " + std::to_string(kTableCap) + " entries");
  }
  return out;
}

TableCode to_table_code(const ScalarLinearCode& code) {
  const std::uint32_t p = code.prime();
  const std::size_t n = code.messages();
  TableCode out;
  out.alphabet = p;
  out.messages = n;
  out.length = code.length();
  const std::size_t size = table_size(p, n);
  ipow(p, out.length);
  out.table.resize(size);
  std::vector<std::uint32_t> m(n, 0);
  for (std::size_t t = 0; t < size; ++t) {
    std::uint64_t word = 0, place = 1;
    for (std::size_t i = 0; i < code.length(); ++i) {
      std::uint64_t sym = 0;
      for (std::size_t j = 0; j < n; ++j) sym += std::uint64_t{code.q.at(i, j)} * m[j];
      word += (sym % p) * place;
      place *= p;
    }
    out.table[t] = word;
    for (std::size_t j = 0; j < n; ++j) {
      if (++m[j] < p) break;
      m[j] = 0;
    }
  }
  return out;
}

namespace {

void check_table(const TableCode& code) {
  if (code.table.size() != table_size(code.alphabet, code.messages))
    throw InputError("table code has the wrong number of entries");
  const std::uint64_t words = ipow(code.alphabet, code.length);
  for (std::uint64_t w : code.table)
    if (w >= words) throw InputError("table code entry outside the codeword range");
}

// Index of m restricted to S, as a base-|Σ| number over S's positions.
std::uint64_t project(std::uint64_t t, std::uint32_t q, std::size_t n, std::uint64_t s) {
  std::uint64_t out = 0, place = 1;
  for (std::size_t i = 0; i < n; ++i, t /= q)
    if (s >> i & 1) {
      out += (t % q) * place;
      place *= q;
    }
  return out;
}

}  // namespace

bool is_decodable(const IndexCodingInstance& g, const TableCode& code) {
  check_table(code);
  if (code.messages != g.size()) throw InputError("table code width does not match the instance");
  for (const auto& r : g.receivers()) {
    const std::uint64_t s = r.knows.to_u64();
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::uint32_t, PairHash> seen;
    for (std::uint64_t t = 0; t < code.table.size(); ++t) {
      const std::uint32_t want = digit(t, code.alphabet, r.wants);
      auto [it, inserted] = seen.try_emplace({project(t, code.alphabet, code.messages, s), code.table[t]}, want);
      if (!inserted && it->second != want) return false;
    }
  }
  return true;
}

std::vector<double> table_entropy_vector(const TableCode& code) {
  check_table(code);
  const std::size_t n = code.messages;
  require_dense(n, "table entropy vector");
  if ((std::uint64_t{1} << n) * code.table.size() > (std::uint64_t{1} << 26))
    throw CapExceeded("table entropy vector is limited to 2^26 subset-tuple pairs");
  const double total = static_cast<double>(code.table.size());
  const double unit = std::log2(static_cast<double>(code.alphabet));
  std::vector<double> z(std::size_t{1} << n);
  for (std::uint64_t s = 0; s < z.size(); ++s) {
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t, PairHash> counts;
    for (std::uint64_t t = 0; t < code.table.size(); ++t)
      ++counts[{project(t, code.alphabet, n, s), code.table[t]}];
    double h = std::log2(total);
    for (const auto& [key, k] : counts) h -= static_cast<double>(k) / total * std::log2(static_cast<double>(k));
    z[s] = h / unit;
  }
  return z;
}

bool is_primal_feasible(const IndexCodingInstance& g, const std::vector<double>& z, ClosureMode closure,
                        double tolerance) {
  const std::size_t n = g.size();
  require_dense(n, "primal feasibility check");
  const std::uint64_t total = std::uint64_t{1} << n;
  if (z.size() != total) throw InputError("vector has the wrong length for the instance");
  if (std::abs(z[total - 1] - static_cast<double>(n)) > tolerance) return false;
  for (std::uint64_t t = 1; t < total; ++t)
    for (std::uint64_t s = (t - 1) & t;; s = (s - 1) & t) {
      const double c = std::popcount(t & ~g.closure_bits(s, closure));
      if (z[t] - z[s] > c + tolerance) return false;
      if (s == 0) break;
    }
  for (std::uint64_t s = 0; s < total; ++s)
    for (std::uint64_t t = s + 1; t < total; ++t)
      if (z[s] + z[t] + tolerance < z[s | t] + z[s & t]) return false;
  return true;
}

TableCode concatenate_codes(const IndexCodingInstance& g, const IndexCodingInstance& f, const TableCode& code_g,
                            const TableCode& code_f) {
  check_table(code_g);
  check_table(code_f);
  if (code_g.messages != g.size() || code_f.messages != f.size())
    throw InputError("code widths do not match the instances");
  if (code_g.alphabet != code_f.alphabet)
    throw InputError("codes use different alphabets (" + std::to_string(code_g.alphabet) + " and " +
                     std::to_string(code_f.alphabet) + ")");
  const std::uint32_t q = code_g.alphabet;
  const std::size_t ng = g.size(), nf = f.size();
  TableCode out;
  out.alphabet = q;
  out.messages = ng * nf;
  out.length = code_g.length * code_f.length;
  ipow(q, out.length);
  const std::size_t size = table_size(q, out.messages);
  const std::uint64_t block = ipow(q, nf);
  const std::uint64_t outer_place = ipow(q, code_g.length);
  out.table.resize(size);
  std::vector<std::uint64_t> inner(ng);
  for (std::uint64_t t = 0; t < size; ++t) {
    std::uint64_t rest = t;
    for (std::size_t u = 0; u < ng; ++u, rest /= block) inner[u] = code_f.table[rest % block];
    std::uint64_t word = 0, place = 1;
    for (std::size_t j = 0; j < code_f.length; ++j, place *= outer_place) {
      std::uint64_t gi = 0, gp = 1;
      for (std::size_t u = 0; u < ng; ++u, gp *= q) gi += digit(inner[u], q, j) * gp;
      word += code_g.table[gi] * place;
    }
    out.table[t] = word;
  }
  return out;
}

}  // namespace icb
