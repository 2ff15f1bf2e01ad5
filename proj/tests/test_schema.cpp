#include <gtest/gtest.h>

#include <random>

#include "icb/error.hpp"
#include "icb/matroid.hpp"
#include "icb/registry.hpp"
#include "icb/schema.hpp"

using namespace icb;

namespace {

SubsetMask sub(std::size_t n, std::initializer_list<std::size_t> idx) { return SubsetMask::from_indices(n, idx); }

// Every homomorphism 2^dom → 2^cod: each codomain element goes to the base,
// to one atom image, or nowhere.
std::vector<LatticeHom> all_homs(const GroundSet& dom, const GroundSet& cod) {
  std::vector<LatticeHom> out;
  const std::size_t choices = dom.size() + 2;
  std::size_t total = 1;
  for (std::size_t j = 0; j < cod.size(); ++j) total *= choices;
  for (std::size_t code = 0; code < total; ++code) {
    SubsetMask base(cod.size());
    std::vector<SubsetMask> atoms(dom.size(), SubsetMask(cod.size()));
    std::size_t c = code;
    for (std::size_t j = 0; j < cod.size(); ++j, c /= choices) {
      const std::size_t k = c % choices;
      if (k == dom.size()) base.set(j);
      else if (k < dom.size()) atoms[k].set(j);
    }
    out.emplace_back(dom, cod, base, atoms);
  }
  return out;
}

// Sum of two submodularity rows: tight, but not itself a Submod row.
SetVector small_tight_alpha() {
  const GroundSet j{"a", "b", "c"};
  SetVector v = submod_row(j, sub(3, {0}), sub(3, {1}));
  v += submod_row(j, sub(3, {0, 2}), sub(3, {1, 2}));
  return v;
}

}  // namespace

TEST(SubmodRow, Definition) {
  const GroundSet gs = GroundSet::numbered(3);
  const SetVector r = submod_row(gs, sub(3, {0}), sub(3, {1}));
  EXPECT_EQ(r.get(sub(3, {0})), 1);
  EXPECT_EQ(r.get(sub(3, {1})), 1);
  EXPECT_EQ(r.get(sub(3, {0, 1})), -1);
  EXPECT_EQ(r.get(SubsetMask(3)), -1);
  EXPECT_EQ(r.support_size(), 4u);
  EXPECT_TRUE(submod_row(gs, sub(3, {0}), sub(3, {0, 2})).is_zero());
  const SetVector modular = SetVector::from_function(gs, [](const SubsetMask& s) { return Rational(static_cast<long>(s.count())); });
  EXPECT_EQ(r.dot(modular), 0);
}

TEST(SubmodRow, ElementalCounts) {
  EXPECT_EQ(submod_rows_elemental(GroundSet::numbered(2)).size(), 1u);
  EXPECT_EQ(submod_rows_elemental(GroundSet::numbered(5)).size(), 80u);
  EXPECT_EQ(submod_rows_elemental(GroundSet::numbered(7)).size(), 672u);
}

TEST(SubmodRow, ValidForSmallMatroidsAndShifts) {
  // Rank vectors of all matroids from every 0/1 matrix with ≤ 4 columns
  // and 2 rows over F_2, shifted by constants.
  for (std::size_t n = 1; n <= 4; ++n) {
    const GroundSet gs = GroundSet::numbered(n);
    const auto rows = submod_rows_all_pairs(gs);
    for (std::uint32_t code = 0; code < (1u << (2 * n)); ++code) {
      std::vector<std::vector<long long>> m(2, std::vector<long long>(n));
      for (std::size_t k = 0; k < 2 * n; ++k) m[k / n][k % n] = code >> k & 1;
      const Matroid mat = rank_from_matrix(gs, FpMatrix::from_rows(2, m, n));
      SetVector r = mat.rank_vector();
      r += Rational(3) * SetVector::ones(gs);
      for (const auto& row : rows) EXPECT_GE(ConstraintSchema::submodularity().row_vector(row, gs).dot(r), 0);
    }
  }
}

TEST(HomExtRow, IdentityAndConstantHoms) {
  const SetVector alpha = small_tight_alpha();
  const GroundSet& j = alpha.ground_set();
  EXPECT_EQ(homext_row(alpha, LatticeHom::identity(j)), alpha);
  const GroundSet i = GroundSet::numbered(2);
  const LatticeHom constant(j, i, sub(2, {1}), {SubsetMask(2), SubsetMask(2), SubsetMask(2)});
  EXPECT_EQ(alpha.total(), 0);
  EXPECT_TRUE(homext_row(alpha, constant).is_zero());
}

TEST(HomExtRow, FanoIdentityRowHasNegativeRankProduct) {
  const Matroid f = fano();
  const LatticeHom q = identity_row_hom(alpha_odd().ground_set(), f.ground_set());
  const SetVector row = homext_row(alpha_odd(), q);
  EXPECT_EQ(row.dot(f.rank_vector()), lambda_odd().dot(f.rank_vector()));
  EXPECT_EQ(row.dot(f.rank_vector()), -1);
}

TEST(Pushforward, SubmodIdentityAndBlockMap) {
  const ConstraintSchema s = ConstraintSchema::submodularity();
  const GroundSet g = GroundSet::numbered(2);
  const SchemaRowId row = SchemaRowId::submod(sub(2, {0}), sub(2, {1}));
  EXPECT_EQ(s.pushforward_row(LatticeHom::identity(g), row), row);
  const GroundSet prod = GroundSet::numbered(6);
  const LatticeHom block(g, prod, SubsetMask(6), {sub(6, {0, 1, 2}), sub(6, {3, 4, 5})});
  EXPECT_EQ(s.pushforward_row(block, row), SchemaRowId::submod(sub(6, {0, 1, 2}), sub(6, {3, 4, 5})));
}

TEST(Tight, BuiltInSchemas) {
  EXPECT_TRUE(check_tight(ConstraintSchema::submodularity(), GroundSet::numbered(4)));
  RowPolicy all_pairs;
  all_pairs.submod = SubmodFamily::AllPairs;
  EXPECT_TRUE(check_tight(ConstraintSchema::submodularity(), GroundSet::numbered(4), all_pairs));
  EXPECT_TRUE(check_tight(schema_by_name("fano-even"), fano().ground_set()));
  EXPECT_TRUE(check_tight(schema_by_name("fano-odd"), fano().ground_set()));
  EXPECT_TRUE(check_tight(schema_by_name("submod+fano-odd"), fano().ground_set()));
  const GroundSet gs = GroundSet::numbered(3);
  const ConstraintSchema bad = ConstraintSchema::explicit_rows("bad", gs, {SetVector::unit(gs, sub(3, {0}))});
  EXPECT_FALSE(check_tight(bad, gs));
}

TEST(Tight, AlphaAnnihilatesOnesAndSingletons) {
  for (const SetVector* a : {&alpha_even(), &alpha_odd()}) {
    const GroundSet& j = a->ground_set();
    EXPECT_EQ(a->dot(SetVector::ones(j)), 0);
    for (std::size_t i = 0; i < j.size(); ++i) EXPECT_EQ(a->dot(SetVector::ones_containing(j, i)), 0);
  }
}

TEST(Homomorphic, SubmodExhaustiveSmall) {
  const ConstraintSchema s = ConstraintSchema::submodularity();
  RowPolicy all_pairs;
  all_pairs.submod = SubmodFamily::AllPairs;
  for (std::size_t ni = 1; ni <= 3; ++ni)
    for (std::size_t nj = 1; nj <= 4; ++nj)
      for (const auto& h : all_homs(GroundSet::numbered(ni), GroundSet::numbered(nj))) {
        ASSERT_TRUE(check_homomorphic(s, h));
        ASSERT_TRUE(check_homomorphic(s, h, all_pairs));
      }
}

TEST(Homomorphic, HomExtExhaustiveSmall) {
  const ConstraintSchema s = ConstraintSchema::homext("mi", small_tight_alpha());
  RowPolicy every;
  every.homext = HomExtPolicy::All;
  for (std::size_t ni = 1; ni <= 3; ++ni) {
    EXPECT_TRUE(check_tight(s, GroundSet::numbered(ni), every));
    for (std::size_t nj = 1; nj <= 4; ++nj)
      for (const auto& h : all_homs(GroundSet::numbered(ni), GroundSet::numbered(nj)))
        ASSERT_TRUE(check_homomorphic(s, h, every));
  }
}

TEST(Homomorphic, FanoSchemasOnRandomHoms) {
  std::mt19937_64 rng(17);
  const GroundSet i = fano().ground_set();
  std::vector<std::string> labels = i.labels();
  labels.push_back("x");
  labels.push_back("y");
  const GroundSet j(labels);
  std::uniform_int_distribution<std::size_t> pick(0, i.size() + 1);
  for (const char* name : {"fano-even", "fano-odd", "submod+fano-odd"}) {
    const ConstraintSchema s = schema_by_name(name);
    for (int trial = 0; trial < 5; ++trial) {
      SubsetMask base(j.size());
      std::vector<SubsetMask> atoms(i.size(), SubsetMask(j.size()));
      for (std::size_t t = 0; t < j.size(); ++t) {
        const std::size_t k = pick(rng);
        if (k == i.size()) base.set(t);
        else if (k < i.size()) atoms[k].set(t);
      }
      EXPECT_TRUE(check_homomorphic(s, LatticeHom(i, j, base, atoms)));
    }
  }
}

TEST(Homomorphic, CorruptedPushforwardDetected) {
  const ConstraintSchema s = ConstraintSchema::submodularity();
  const GroundSet i = GroundSet::numbered(3), j = GroundSet::numbered(4);
  const LatticeHom h(i, j, SubsetMask(4), {sub(4, {0}), sub(4, {1}), sub(4, {2, 3})});
  const RowPushforward swapped = [](const LatticeHom& hh, const SchemaRowId& row) {
    const auto* sm = row.get_if<SchemaRowId::Submod>();
    // Send S to h(T) and T to h(S) ∪ h(T): wrong on purpose.
    return SchemaRowId::submod(hh.apply(sm->t), hh.apply(sm->s) | hh.apply(sm->t));
  };
  EXPECT_FALSE(check_homomorphic(s, h, {}, swapped));
}

TEST(Union, EmptyAndPreservation) {
  const GroundSet gs = GroundSet::numbered(4);
  const ConstraintSchema u = disjoint_union(ConstraintSchema::submodularity(), ConstraintSchema());
  EXPECT_EQ(u.name(), "submod+empty");
  EXPECT_EQ(u.enumerate_rows(gs).size(), ConstraintSchema::submodularity().enumerate_rows(gs).size());
  EXPECT_TRUE(check_tight(u, gs));
  const ConstraintSchema mi = ConstraintSchema::homext("mi", small_tight_alpha());
  const ConstraintSchema both = disjoint_union(ConstraintSchema::submodularity(), mi);
  RowPolicy every;
  every.homext = HomExtPolicy::All;
  EXPECT_TRUE(check_tight(both, GroundSet::numbered(3), every));
  for (const auto& h : all_homs(GroundSet::numbered(2), GroundSet::numbered(3)))
    ASSERT_TRUE(check_homomorphic(both, h, every));
  EXPECT_THROW(ConstraintSchema::homext("a+b", small_tight_alpha()), InputError);
}

TEST(Union, RowOwnership) {
  const ConstraintSchema u = schema_by_name("submod+fano-odd");
  const SchemaRowId r = SchemaRowId::submod(sub(7, {0}), sub(7, {1}));
  EXPECT_FALSE(u.owns(r));
  EXPECT_TRUE(u.owns(SchemaRowId::left(r)));
  EXPECT_FALSE(u.owns(SchemaRowId::right(r)));
  EXPECT_THROW(u.row_vector(r, fano().ground_set()), InputError);
}

TEST(HomExtPolicies, OrbitAndFile) {
  const ConstraintSchema s = schema_by_name("fano-odd");
  const GroundSet& i = fano().ground_set();
  RowPolicy orbit;
  orbit.homext = HomExtPolicy::Orbit;
  orbit.orbit_generators = {{1, 0, 2, 3, 4, 5, 6}};
  const auto rows = s.enumerate_rows(i, orbit);
  EXPECT_EQ(rows.size(), 2u);
  RowPolicy file;
  file.homext = HomExtPolicy::File;
  file.homs = {identity_row_hom(alpha_odd().ground_set(), i)};
  EXPECT_EQ(s.enumerate_rows(i, file).size(), 1u);
  EXPECT_EQ(parse_homext_policy("orbit"), HomExtPolicy::Orbit);
  EXPECT_THROW(parse_homext_policy("nope"), InputError);
}

TEST(Registry, Names) {
  EXPECT_EQ(schema_by_name("submod").name(), "submod");
  EXPECT_EQ(schema_by_name("empty").kind(), ConstraintSchema::Kind::Empty);
  EXPECT_EQ(schema_by_name("submod+fano-even+fano-odd").name(), "submod+fano-even+fano-odd");
  EXPECT_THROW(schema_by_name("fano_even"), InputError);
  EXPECT_THROW(schema_by_name("submod+"), InputError);
}

TEST(HomExtValidity, PushedForwardRowsOnSubspaceTuples) {
  // Rows P_q α are valid for dimension vectors whenever α is.
  std::mt19937_64 rng(23);
  const GroundSet i = GroundSet::numbered(4);
  for (bool odd : {false, true}) {
    const SetVector& alpha = odd ? alpha_odd() : alpha_even();
    const GroundSet& j = alpha.ground_set();
    std::uniform_int_distribution<std::size_t> pick(0, j.size());
    for (int trial = 0; trial < 60; ++trial) {
      SubsetMask base(i.size());
      std::vector<SubsetMask> atoms(j.size(), SubsetMask(i.size()));
      for (std::size_t t = 0; t < i.size(); ++t) {
        const std::size_t k = pick(rng);
        if (k == j.size()) base.set(t);
        else atoms[k].set(t);
      }
      const SetVector row = homext_row(alpha, LatticeHom(j, i, base, atoms));
      const SubspaceTuple t = random_subspace_tuple(odd ? 3 : 2, 5, i.size(), 3, 1000 + trial);
      EXPECT_GE(row.dot(dimension_vector(t, i)), 0);
    }
  }
}

TEST(Homomorphic, FanoSchemasEveryTargetHom) {
  // Rows over |I| = 3 from a fixed sample of generator maps; every h into |J| ≤ 4.
  std::mt19937_64 rng(29);
  const GroundSet i = GroundSet::numbered(3);
  for (bool odd : {false, true}) {
    const SetVector& alpha = odd ? alpha_odd() : alpha_even();
    const GroundSet& gen = alpha.ground_set();
    std::uniform_int_distribution<std::size_t> pick(0, gen.size() + 1);
    RowPolicy file;
    file.homext = HomExtPolicy::File;
    for (int k = 0; k < 12; ++k) {
      SubsetMask base(i.size());
      std::vector<SubsetMask> atoms(gen.size(), SubsetMask(i.size()));
      for (std::size_t t = 0; t < i.size(); ++t) {
        const std::size_t c = pick(rng);
        if (c == gen.size()) base.set(t);
        else if (c < gen.size()) atoms[c].set(t);
      }
      file.homs.emplace_back(gen, i, base, atoms);
    }
    const ConstraintSchema s = schema_by_name(odd ? "fano-odd" : "fano-even");
    EXPECT_TRUE(check_tight(s, i, file));
    for (std::size_t nj = 1; nj <= 4; ++nj)
      for (const auto& h : all_homs(i, GroundSet::numbered(nj))) ASSERT_TRUE(check_homomorphic(s, h, file));
  }
}
