#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "icb/certificate.hpp"
#include "icb/demo.hpp"
#include "icb/error.hpp"
#include "icb/lincode.hpp"
#include "icb/lp.hpp"
#include "icb/matroid.hpp"
#include "icb/registry.hpp"
#include "oracles.hpp"

using namespace icb;

namespace {

using Edges = std::vector<std::pair<std::size_t, std::size_t>>;

IndexCodingInstance graph_instance(std::size_t n, const Edges& e) { return from_graph(GroundSet::numbered(n), e); }

IndexCodingInstance complete(std::size_t n) {
  Edges e;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return graph_instance(n, e);
}

std::vector<IndexCodingInstance> all_graphs(std::size_t n) {
  Edges pairs;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::vector<IndexCodingInstance> out;
  for (std::uint32_t m = 0; m < (1u << pairs.size()); ++m) {
    Edges e;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (m >> k & 1) e.push_back(pairs[k]);
    out.push_back(graph_instance(n, e));
  }
  return out;
}

std::vector<std::vector<long long>> rows_of(const FpMatrix& m) {
  std::vector<std::vector<long long>> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<long long> r;
    for (std::uint32_t v : m.row(i)) r.push_back(v);
    out.push_back(r);
  }
  return out;
}

std::vector<Rational> dense(const SetVector& z) {
  const std::size_t n = z.ground_set().size();
  std::vector<Rational> out(std::size_t{1} << n);
  for (std::uint64_t s = 0; s < out.size(); ++s) out[s] = z.get(SubsetMask::from_bits(n, s));
  return out;
}

ScalarLinearCode code_of(std::uint32_t p, const std::vector<std::vector<long long>>& rows, std::size_t n) {
  if (rows.empty()) return {FpMatrix(p, 0, n)};
  return {FpMatrix::from_rows(p, rows)};
}

// Every matroid on n elements, from families of k-subsets passing the axiom check.
std::vector<Matroid> all_matroids(std::size_t n) {
  std::vector<Matroid> out;
  std::set<std::vector<std::uint8_t>> seen;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::uint64_t> ksets;
    for (std::uint64_t s = 0; s < total; ++s)
      if (static_cast<std::size_t>(std::popcount(s)) == k) ksets.push_back(s);
    for (std::uint64_t fam = 1; fam < (std::uint64_t{1} << ksets.size()); ++fam) {
      std::vector<std::uint8_t> rank(total);
      for (std::uint64_t s = 0; s < total; ++s) {
        int best = 0;
        for (std::size_t b = 0; b < ksets.size(); ++b)
          if (fam >> b & 1) best = std::max(best, std::popcount(s & ksets[b]));
        rank[s] = static_cast<std::uint8_t>(best);
      }
      const Matroid m(GroundSet::numbered(n), rank);
      if (!check_axioms(m).ok || !seen.insert(rank).second) continue;
      // Bases must be exactly the family.
      std::size_t count = 0;
      for (std::size_t b = 0; b < ksets.size(); ++b) count += fam >> b & 1;
      if (m.bases().size() != count) continue;
      out.push_back(m);
    }
  }
  return out;
}

}  // namespace

TEST(LinearCode, ValidityExamples) {
  const IndexCodingInstance c5 = c5_instance();
  EXPECT_TRUE(is_valid_code(c5, {FpMatrix::identity(2, 5)}));
  for (std::size_t n = 2; n <= 5; ++n) {
    const IndexCodingInstance k = complete(n);
    EXPECT_TRUE(is_valid_code(k, code_of(2, {std::vector<long long>(n, 1)}, n)));
    EXPECT_FALSE(is_valid_code(graph_instance(n, {}), code_of(2, {std::vector<long long>(n, 1)}, n)));
  }
  EXPECT_THROW(is_valid_code(c5, {FpMatrix::identity(2, 4)}), InputError);
}

TEST(LinearCode, AgreesWithRankOracle) {
  std::mt19937_64 rng(71);
  for (std::uint32_t p : {2u, 3u}) {
    std::uniform_int_distribution<long long> val(0, p - 1);
    for (const auto& g : all_graphs(4)) {
      for (std::size_t l = 0; l <= 3; ++l) {
        std::vector<std::vector<long long>> rows(l, std::vector<long long>(4));
        for (auto& r : rows)
          for (auto& v : r) v = val(rng);
        EXPECT_EQ(is_valid_code(g, code_of(p, rows, 4)), oracle::valid_code(g, rows, p));
      }
    }
  }
}

TEST(LinearCode, MinRateExamples) {
  EXPECT_EQ(min_scalar_linear_rate(complete(3), 2, 3).rate, 1u);
  EXPECT_EQ(min_scalar_linear_rate(graph_instance(2, {}), 2, 2).rate, 2u);
  const RateSearchResult c5 = min_scalar_linear_rate(c5_instance(), 2, 5);
  EXPECT_EQ(c5.rate, 3u);
  ASSERT_TRUE(c5.witness.has_value());
  EXPECT_TRUE(is_valid_code(c5_instance(), *c5.witness));
  EXPECT_FALSE(min_scalar_linear_rate(c5_instance(), 2, 2).rate.has_value());
}

TEST(LinearCode, MinRateMatchesRawEnumeration) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& g : all_graphs(n))
      for (std::uint32_t p : {2u, 3u}) EXPECT_EQ(*min_scalar_linear_rate(g, p, n).rate, oracle::min_rate_raw(g, p));
  std::mt19937_64 rng(73);
  std::vector<IndexCodingInstance> four = all_graphs(4);
  std::shuffle(four.begin(), four.end(), rng);
  for (std::size_t i = 0; i < 12; ++i) EXPECT_EQ(*min_scalar_linear_rate(four[i], 2, 4).rate, oracle::min_rate_raw(four[i], 2));
}

TEST(LinearCode, SearchCaps) {
  EXPECT_EQ(search_cap(2), 5u);
  EXPECT_EQ(search_cap(3), 4u);
  EXPECT_THROW(min_scalar_linear_rate(from_graph(GroundSet::numbered(6), SimpleGraph(6)), 2, 6), CapExceeded);
  EXPECT_THROW(min_scalar_linear_rate(c5_instance(), 3, 5), CapExceeded);
}

TEST(LinearCode, SubspaceEnumerationCounts) {
  // Gaussian binomials [n choose k]_p.
  auto count = [](std::uint32_t p, std::size_t n, std::size_t k) {
    std::size_t c = 0;
    for_each_subspace(p, n, k, [&](const FpMatrix& m) {
      EXPECT_EQ(m.rank(), k);
      ++c;
      return true;
    });
    return c;
  };
  EXPECT_EQ(count(2, 4, 2), 35u);
  EXPECT_EQ(count(2, 5, 2), 155u);
  EXPECT_EQ(count(3, 3, 1), 13u);
  EXPECT_EQ(count(2, 5, 0), 1u);
  std::size_t all = 0;
  for (std::size_t k = 0; k <= 5; ++k) all += count(2, 5, k);
  EXPECT_EQ(all, 374u);
}

TEST(LinearCode, LengthAtLeastCeilB) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& g : all_graphs(n)) {
      const Rational b = bound_b(g);
      const std::size_t rate = *min_scalar_linear_rate(g, 2, n).rate;
      EXPECT_GE(Rational(static_cast<long>(rate)), b);
    }
}

TEST(EntropyVector, XorOnTriangle) {
  const SetVector z = code_entropy_vector(complete(3), code_of(2, {{1, 1, 1}}, 3));
  const std::vector<Rational> d = dense(z);
  // ∅ → 1, singletons → 2, pairs and I → 3.
  for (std::uint64_t s = 0; s < 8; ++s) EXPECT_EQ(d[s], std::popcount(s) == 0 ? 1 : std::popcount(s) == 1 ? 2 : 3);
}

TEST(EntropyVector, ValidCodesArePrimalFeasible) {
  // Every valid code over F2 on every graph with at most 5 vertices, all lengths.
  std::size_t codes = 0;
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& g : all_graphs(n))
      for (std::size_t l = *min_scalar_linear_rate(g, 2, n).rate; l <= n; ++l)
        for (const auto& c : valid_codes(g, 2, l)) {
          const SetVector z = code_entropy_vector(g, c);
          EXPECT_EQ(z.get(g.empty_set()), static_cast<long>(l));
          EXPECT_TRUE(oracle::primal_feasible(g, dense(z)));
          ++codes;
        }
  EXPECT_GT(codes, 1000u);
}

TEST(EntropyVector, SatisfiesCharacteristicSchemas) {
  // Valid codes satisfy every row of the schema matching their field.
  const RowPolicy policy{};
  for (std::uint32_t p : {2u, 3u}) {
    const ConstraintSchema s = schema_by_name(p == 2 ? "submod+fano-even" : "submod+fano-odd");
    const Matroid m = p == 2 ? fano() : nonfano();
    const IndexCodingInstance g = to_index_coding(m);
    const ScalarLinearCode code = underrep_to_code(m, fano_matrix(p));
    const SetVector z = code_entropy_vector(g, code);
    for (const auto& row : s.enumerate_rows(g.messages(), policy)) EXPECT_GE(s.row_vector(row, g.messages()).dot(z), 0);
  }
}

TEST(Underrep, Examples) {
  EXPECT_TRUE(underrep_check(fano(), fano_matrix(2)));
  EXPECT_TRUE(underrep_check(nonfano(), fano_matrix(3)));
  EXPECT_FALSE(underrep_check(nonfano(), fano_matrix(2)) && underrep_check(fano(), fano_matrix(3)));
  EXPECT_FALSE(underrep_check(fano(), fano_matrix(3)));
  EXPECT_TRUE(underrep_check(fano(), FpMatrix(3, 0, 7)));
  FpMatrix dep = FpMatrix::from_rows(2, {{1, 0, 0, 1, 1, 0, 1}, {1, 0, 0, 1, 1, 0, 1}});
  EXPECT_FALSE(underrep_check(fano(), dep));
}

TEST(Underrep, RankTwoOverF3NeedsSpanCondition) {
  // Some rank-2 matrices work and some do not: the collinear pairs still
  // force the third point into their span.
  // Projecting the points along 111 gives one that works.
  const FpMatrix proj = FpMatrix::from_rows(3, {{1, 0, 2}, {0, 1, 2}}).multiply(fano_matrix(3));
  EXPECT_TRUE(underrep_check(fano(), proj));
  EXPECT_EQ(proj.rank(), 2u);
  const FpMatrix bad = FpMatrix::from_rows(3, {{1, 0, 0, 1, 0, 1, 1}, {0, 1, 0, 0, 1, 1, 1}});
  EXPECT_FALSE(underrep_check(fano(), bad));
  // Under the odd schema b > 4, so over F3 the length-5 code from this is optimal.
  const ScalarLinearCode code = underrep_to_code(fano(), proj);
  EXPECT_EQ(code.length(), 5u);
  EXPECT_TRUE(is_valid_code(to_index_coding(fano()), code));
  EXPECT_GT(bound_with_schema(to_index_coding(fano()), separation_schema(true)), 4);
}

TEST(Underrep, ConversionsRoundTrip) {
  for (std::uint32_t p : {2u, 3u}) {
    const Matroid m = p == 2 ? fano() : nonfano();
    const ScalarLinearCode code = underrep_to_code(m, fano_matrix(p));
    EXPECT_EQ(code.length(), 4u);
    EXPECT_EQ(code.rank(), 4u);
    EXPECT_TRUE(is_valid_code(to_index_coding(m), code));
    EXPECT_TRUE(oracle::valid_code(to_index_coding(m), rows_of(code.q), p));
    const FpMatrix back = code_to_underrep(m, code);
    EXPECT_EQ(back.rows(), 3u);
    EXPECT_TRUE(underrep_check(m, back));
    EXPECT_EQ(back.rref(), fano_matrix(p).rref());
  }
  EXPECT_THROW(underrep_to_code(fano(), fano_matrix(3)), InputError);
  EXPECT_THROW(code_to_underrep(fano(), {FpMatrix::from_rows(2, {{1, 1, 1, 1, 1, 1, 1}})}), InputError);
}

TEST(Underrep, FanoRateIsFourOverF2) {
  // Construction gives length 4, the LP gives ≥ 4: no search needed.
  const IndexCodingInstance g = to_index_coding(fano());
  const ScalarLinearCode code = underrep_to_code(fano(), fano_matrix(2));
  EXPECT_TRUE(is_valid_code(g, code));
  EXPECT_EQ(code.length(), 4u);
  EXPECT_EQ(bound_b(g), 4);
}

TEST(Underrep, DualityForSmallMatroidsOverF2) {
  std::size_t matroids = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (const Matroid& m : all_matroids(n)) {
      ++matroids;
      const IndexCodingInstance g = to_index_coding(m);
      const std::size_t rate = *min_scalar_linear_rate(g, 2, n).rate;
      for (std::size_t d = 0; d <= n; ++d)
        EXPECT_EQ(find_underrep(m, 2, d).has_value(), rate <= n - d) << "n=" << n << " d=" << d;
    }
  // Labelled matroids: 2, 5, 16, 68 on 1..4 elements.
  EXPECT_EQ(matroids, 2u + 5u + 16u + 68u);
}

TEST(TableCode, MatchesLinearEntropy) {
  for (std::uint32_t p : {2u, 3u}) {
    const IndexCodingInstance g = p == 2 ? c5_instance() : graph_instance(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    const ScalarLinearCode code = *min_scalar_linear_rate(g, p, g.size()).witness;
    const TableCode t = to_table_code(code);
    EXPECT_EQ(t.table.size(), table_size(p, g.size()));
    EXPECT_TRUE(is_decodable(g, t));
    const std::vector<double> h = table_entropy_vector(t);
    const std::vector<Rational> z = dense(code_entropy_vector(g, code));
    for (std::size_t s = 0; s < z.size(); ++s) EXPECT_NEAR(h[s], z[s].get_d(), 1e-9);
    EXPECT_TRUE(is_primal_feasible(g, h));
  }
}

TEST(TableCode, BrokenTableFailsDecoding) {
  const IndexCodingInstance g = complete(3);
  TableCode t = to_table_code(code_of(2, {{1, 1, 1}}, 3));
  EXPECT_TRUE(is_decodable(g, t));
  t.table[1] ^= 1;
  EXPECT_FALSE(is_decodable(g, t));
  EXPECT_THROW(table_size(2, 21), CapExceeded);
}

TEST(TableCode, ConcatenationOnProducts) {
  const IndexCodingInstance k2 = complete(2);
  const TableCode x = to_table_code(code_of(2, {{1, 1}}, 2));
  const TableCode kk = concatenate_codes(k2, k2, x, x);
  EXPECT_EQ(kk.messages, 4u);
  EXPECT_EQ(kk.length, 1u);
  EXPECT_TRUE(is_decodable(lex_product(k2, k2), kk));

  const IndexCodingInstance one = from_graph(GroundSet::numbered(1), SimpleGraph(1));
  const TableCode id = to_table_code({FpMatrix::identity(2, 1)});
  const TableCode c5 = to_table_code(*min_scalar_linear_rate(c5_instance(), 2, 5).witness);
  const TableCode left = concatenate_codes(one, c5_instance(), id, c5);
  EXPECT_EQ(left.table, c5.table);
  EXPECT_TRUE(is_decodable(lex_product(one, c5_instance()), left));

  // K2•C5: outer xor (1 symbol) over inner C5 codes (3 symbols).
  const TableCode prod = concatenate_codes(k2, c5_instance(), x, c5);
  EXPECT_EQ(prod.length, 3u);
  EXPECT_LE(prod.length, x.length * c5.length);
  EXPECT_TRUE(is_decodable(lex_product(k2, c5_instance()), prod));
  EXPECT_THROW(concatenate_codes(k2, k2, x, to_table_code(code_of(3, {{1, 1}}, 2))), InputError);
}
