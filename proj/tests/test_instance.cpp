#include <gtest/gtest.h>

#include <random>

#include "icb/certificate.hpp"
#include "icb/error.hpp"
#include "icb/instance.hpp"
#include "icb/matroid.hpp"
#include "oracles.hpp"

using namespace icb;

namespace {

SubsetMask labels(const IndexCodingInstance& g, std::initializer_list<std::string_view> l) {
  return subset_from_labels(g.messages(), l);
}

std::vector<std::uint32_t> adjacency_bits(const SimpleGraph& g) {
  std::vector<std::uint32_t> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) out.push_back(static_cast<std::uint32_t>(g.neighbours(v).to_u64()));
  return out;
}

SimpleGraph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  SimpleGraph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

// All simple graphs on n labelled vertices.
std::vector<SimpleGraph> all_graphs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::vector<SimpleGraph> out;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    SimpleGraph g(n);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (mask >> k & 1) g.add_edge(pairs[k].first, pairs[k].second);
    out.push_back(g);
  }
  return out;
}

}  // namespace

TEST(Closure, C5Examples) {
  const IndexCodingInstance c5 = c5_instance();
  EXPECT_EQ(c5.closure(labels(c5, {"1", "3"})), labels(c5, {"1", "2", "3"}));
  EXPECT_EQ(c5.closure(c5.all()), c5.all());
  EXPECT_EQ(cst(c5, c5.empty_set(), labels(c5, {"1", "3"})), 2u);
  EXPECT_EQ(cst(c5, labels(c5, {"1", "3"}), labels(c5, {"1", "2", "3"})), 0u);
  EXPECT_EQ(cst(c5, c5.empty_set(), labels(c5, {"5"})), 1u);
  EXPECT_EQ(dst(c5, labels(c5, {"1", "3"}), labels(c5, {"1", "2", "3"})), 1u);
  EXPECT_EQ(dst(c5, c5.empty_set(), labels(c5, {"1", "2"})), 0u);
  EXPECT_EQ(dst(c5, labels(c5, {"2", "3", "5"}), c5.all()), 2u);
  EXPECT_THROW(cst(c5, labels(c5, {"1"}), labels(c5, {"2"})), InputError);
}

TEST(Closure, FanoInstance) {
  const IndexCodingInstance gf = to_index_coding(fano());
  EXPECT_EQ(gf.closure(labels(gf, {"100", "010"})), labels(gf, {"100", "010", "110"}));
}

TEST(Closure, MatchesOracleAndIsMonotone) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + trial % 4;
    std::vector<Receiver> rs;
    std::uniform_int_distribution<std::uint64_t> any(0, (std::uint64_t{1} << n) - 1);
    for (std::size_t k = 0; k < n + 2; ++k)
      rs.push_back({k % n, SubsetMask::from_bits(n, any(rng) & ~(std::uint64_t{1} << (k % n)))});
    const IndexCodingInstance g(GroundSet::numbered(n), rs);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
      const SubsetMask m = SubsetMask::from_bits(n, s);
      const SubsetMask single = g.closure(m), iter = g.closure(m, ClosureMode::Iterated);
      EXPECT_EQ(oracle::bits(single), oracle::closure(g, s));
      EXPECT_EQ(oracle::bits(iter), oracle::closure(g, s, true));
      EXPECT_TRUE(m.is_subset_of(single));
      EXPECT_TRUE(single.is_subset_of(iter));
      EXPECT_EQ(g.closure(iter, ClosureMode::Iterated), iter);
      EXPECT_EQ(g.closure_bits(s), oracle::closure(g, s));
      for (std::uint64_t t = s; t < (std::uint64_t{1} << n); t = (t + 1) | s)
        EXPECT_TRUE(single.is_subset_of(g.closure(SubsetMask::from_bits(n, t))));
    }
  }
}

TEST(Closure, DecodingConstantsIdentity) {
  const IndexCodingInstance c5 = c5_instance();
  for (std::uint64_t t = 0; t < 32; ++t)
    for (std::uint64_t s = 0; s < 32; ++s) {
      if ((s & t) != s || s == t) continue;
      const SubsetMask ms = SubsetMask::from_bits(5, s), mt = SubsetMask::from_bits(5, t);
      EXPECT_EQ(dst(c5, ms, mt), (mt - ms).count() - cst(c5, ms, mt));
    }
}

TEST(Closure, MatroidInstanceMatchesMatroidClosure) {
  for (const Matroid& m : {fano(), nonfano(), uniform_matroid(2, 5), graphic_matroid(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}})}) {
    const IndexCodingInstance g = to_index_coding(m);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << m.size()); ++s) {
      const SubsetMask ms = SubsetMask::from_bits(m.size(), s);
      EXPECT_EQ(g.closure(ms), m.closure(ms));
    }
  }
}

TEST(FromGraph, Receivers) {
  const IndexCodingInstance c5 = c5_instance();
  ASSERT_EQ(c5.receivers().size(), 5u);
  EXPECT_EQ(c5.receivers()[0].knows, labels(c5, {"2", "5"}));
  const IndexCodingInstance k3 = from_graph(GroundSet::numbered(3), {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_EQ(k3.receivers()[1].knows, labels(k3, {"1", "3"}));
  const IndexCodingInstance e3 = from_graph(GroundSet::numbered(3), SimpleGraph(3));
  EXPECT_FALSE(is_nondegenerate(e3).nondegenerate);
  EXPECT_EQ(is_nondegenerate(e3).knows_nothing.size(), 3u);
  EXPECT_THROW(SimpleGraph(3, {{1, 1}}), InputError);
}

TEST(Nondegeneracy, Examples) {
  EXPECT_TRUE(is_nondegenerate(c5_instance()).nondegenerate);
  EXPECT_TRUE(is_nondegenerate(to_index_coding(fano())).nondegenerate);
  const IndexCodingInstance bad(GroundSet::numbered(2), {{0, SubsetMask::from_bits(2, 1)}});
  EXPECT_EQ(is_nondegenerate(bad).knows_wanted.size(), 1u);
}

TEST(LexProduct, C5Squared) {
  const IndexCodingInstance c5 = c5_instance();
  const IndexCodingInstance p = lex_product(c5, c5);
  EXPECT_EQ(p.size(), 25u);
  EXPECT_EQ(p.receivers().size(), 25u);
  const Receiver& r = p.receivers()[0];
  EXPECT_EQ(p.messages().label(r.wants), "1:1");
  EXPECT_EQ(r.knows.count(), 12u);
  EXPECT_TRUE(r.knows.test(p.messages().index_of("2:3")));
  EXPECT_TRUE(r.knows.test(p.messages().index_of("1:5")));
  EXPECT_FALSE(r.knows.test(p.messages().index_of("1:3")));
}

TEST(LexProduct, ReceiverCountsMultiply) {
  const IndexCodingInstance gf = to_index_coding(fano());
  const IndexCodingInstance c5 = c5_instance();
  EXPECT_EQ(lex_product(gf, c5).receivers().size(), gf.receivers().size() * 5);
  EXPECT_EQ(lex_product(c5, gf).receivers().size(), gf.receivers().size() * 5);
}

TEST(LexProduct, TrivialFactorIsIdentity) {
  const IndexCodingInstance c5 = c5_instance();
  const IndexCodingInstance one(GroundSet{"v"}, {{0, SubsetMask(1)}});
  const IndexCodingInstance p = lex_product(c5, one);
  ASSERT_EQ(p.size(), 5u);
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_EQ(p.receivers()[k].wants, c5.receivers()[k].wants);
    EXPECT_EQ(p.receivers()[k].knows.to_u64(), c5.receivers()[k].knows.to_u64());
  }
}

TEST(LexProduct, FiberClosureEquality) {
  // For non-degenerate G, F: cl(h(X)) \ h(X) = ((cl_G(S)\S) ∩ T) × (cl_F(X)\X).
  std::vector<IndexCodingInstance> small;
  for (std::size_t n = 2; n <= 3; ++n)
    for (const auto& g : all_graphs(n)) {
      const IndexCodingInstance inst = from_graph(GroundSet::numbered(n), g);
      if (is_nondegenerate(inst).nondegenerate) small.push_back(inst);
    }
  ASSERT_FALSE(small.empty());
  for (const auto& g : small)
    for (const auto& f : small) {
      const IndexCodingInstance p = lex_product(g, f);
      const std::size_t ng = g.size(), nf = f.size();
      for (std::uint64_t t = 0; t < (1u << ng); ++t)
        for (std::uint64_t s = 0; s < (1u << ng); ++s) {
          if ((s & t) != s) continue;
          const SubsetMask ms = SubsetMask::from_bits(ng, s), mt = SubsetMask::from_bits(ng, t);
          const LatticeHom h = fiber_hom(g, f, ms, mt);
          const SubsetMask dg = (g.closure(ms) - ms) & mt;
          for (std::uint64_t x = 0; x < (1u << nf); ++x) {
            const SubsetMask mx = SubsetMask::from_bits(nf, x);
            const SubsetMask hx = h.apply(mx);
            const SubsetMask lhs = p.closure(hx) - hx;
            const SubsetMask df = f.closure(mx) - mx;
            SubsetMask rhs(p.size());
            for (std::size_t u : dg.indices())
              for (std::size_t v : df.indices()) rhs.set(product_index(u, v, nf));
            EXPECT_EQ(lhs, rhs);
          }
        }
    }
}

TEST(IndependenceNumber, Examples) {
  const IndexCodingInstance c5 = c5_instance();
  EXPECT_EQ(independence_number(c5), 2u);
  EXPECT_EQ(independence_number(from_graph(GroundSet::numbered(4), {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})), 1u);
  const IndexCodingInstance c25 = lex_product(c5, c5);
  ASSERT_TRUE(c25.graph().has_value());
  const std::size_t a = independence_number(c25);
  EXPECT_EQ(a, 4u);
  EXPECT_EQ(a, oracle::alpha(adjacency_bits(*c25.graph())));
  EXPECT_THROW(independence_number(to_index_coding(fano())), Unsupported);
  EXPECT_THROW(independence_number(c25, 10), CapExceeded);
}

TEST(IndependenceNumber, MatchesBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const SimpleGraph g = random_graph(6 + trial % 12, 0.15 + 0.1 * (trial % 6), rng);
    EXPECT_EQ(independence_number(g), oracle::alpha(adjacency_bits(g)));
  }
}

TEST(IndependenceNumber, MultiplicativeUnderLexProduct) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const SimpleGraph g = random_graph(4, 0.5, rng), f = random_graph(4, 0.5, rng);
    EXPECT_EQ(independence_number(lex_product(g, f)), independence_number(g) * independence_number(f));
  }
}

TEST(MinimalReceivers, ClosurePreserved) {
  const IndexCodingInstance full = to_index_coding(fano(), false);
  const IndexCodingInstance min = minimal_receivers(full);
  EXPECT_LT(min.receivers().size(), full.receivers().size());
  for (std::uint64_t s = 0; s < 128; ++s) {
    EXPECT_EQ(min.closure_bits(s), full.closure_bits(s));
    EXPECT_EQ(min.closure_bits(s, ClosureMode::Iterated), full.closure_bits(s, ClosureMode::Iterated));
  }
}

TEST(Instance, DeduplicatesReceivers) {
  const SubsetMask k = SubsetMask::from_bits(3, 2);
  const IndexCodingInstance g(GroundSet::numbered(3), {{0, k}, {0, k}, {1, SubsetMask(3)}});
  EXPECT_EQ(g.receivers().size(), 2u);
  EXPECT_THROW(IndexCodingInstance(GroundSet::numbered(2), {{5, SubsetMask(2)}}), InputError);
}
