#pragma once

// Constraint schemas: row identifiers, row vectors over 2^I, row enumeration
// policies, pushforward along lattice homomorphisms, disjoint unions, and
// checks of the tightness and homomorphism axioms.

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "icb/groundset.hpp"

namespace icb {

class SchemaRowId {
 public:
  struct Submod {
    SubsetMask s;
    SubsetMask t;
  };
  struct HomExt {
    std::string schema;
    LatticeHom q;
  };
  /// Row `index` of a schema given by an explicit list of vectors.
  struct Explicit {
    std::string schema;
    std::size_t index = 0;
  };
  struct Left {
    std::shared_ptr<const SchemaRowId> inner;
  };
  struct Right {
    std::shared_ptr<const SchemaRowId> inner;
  };
  using Variant = std::variant<Submod, HomExt, Explicit, Left, Right>;

  SchemaRowId() = default;
  SchemaRowId(Variant v) : v_(std::move(v)) {}

  static SchemaRowId submod(SubsetMask s, SubsetMask t);
  static SchemaRowId homext(std::string schema, LatticeHom q);
  static SchemaRowId explicit_row(std::string schema, std::size_t index);
  static SchemaRowId left(SchemaRowId inner);
  static SchemaRowId right(SchemaRowId inner);

  const Variant& variant() const noexcept { return v_; }
  template <class T>
  const T* get_if() const noexcept { return std::get_if<T>(&v_); }

  std::size_t hash() const noexcept;
  friend bool operator==(const SchemaRowId& a, const SchemaRowId& b);
  friend std::strong_ordering operator<=>(const SchemaRowId& a, const SchemaRowId& b);

 private:
  Variant v_;
};

struct SchemaRowIdHash {
  std::size_t operator()(const SchemaRowId& r) const noexcept { return r.hash(); }
};

/// +e_S + e_T − e_{S∪T} − e_{S∩T}; the zero vector when S and T are nested.
SetVector submod_row(const GroundSet& gs, const SubsetMask& s, const SubsetMask& t);

/// All Submod(S∪{i}, S∪{j}) with i < j and S ⊆ I∖{i,j}.
std::vector<SchemaRowId> submod_rows_elemental(const GroundSet& gs);
/// All unordered pairs of non-nested subsets.
std::vector<SchemaRowId> submod_rows_all_pairs(const GroundSet& gs);

/// Row of the homomorphic extension of α along q: pushforward of α by q.
SetVector homext_row(const SetVector& alpha, const LatticeHom& q);

/// Generator labels present in `gs` go to their singletons, the rest to ∅.
LatticeHom identity_row_hom(const GroundSet& generator, const GroundSet& gs);

enum class SubmodFamily { Elemental, AllPairs };

enum class HomExtPolicy {
  /// Generator labels present in I map to themselves; the others map to ∅.
  Identity,
  /// Identity row composed with every element of the group generated by
  /// `orbit_generators` (permutations of I given as index images).
  Orbit,
  /// The homomorphisms listed in `homs`.
  File,
  /// Every homomorphism 2^J → 2^I; guarded by `all_cap`.
  All,
};

std::string to_string(HomExtPolicy p);
/// "identity", "orbit", "file" or "all".
HomExtPolicy parse_homext_policy(std::string_view text);

struct RowPolicy {
  SubmodFamily submod = SubmodFamily::Elemental;
  HomExtPolicy homext = HomExtPolicy::Identity;
  std::vector<std::vector<std::size_t>> orbit_generators;
  std::vector<LatticeHom> homs;
  std::size_t orbit_cap = 100000;
  std::size_t all_cap = 200000;
};

class ConstraintSchema {
 public:
  enum class Kind { Empty, Submod, HomExt, Explicit, Union };

  /// The empty schema (no rows).
  ConstraintSchema();

  static ConstraintSchema submodularity();
  /// Homomorphic extension of the single inequality α·z ≥ 0 on 2^J.
  static ConstraintSchema homext(std::string name, SetVector alpha);
  /// A fixed list of rows over one ground set. Not homomorphic in general.
  static ConstraintSchema explicit_rows(std::string name, GroundSet gs, std::vector<SetVector> rows);

  const std::string& name() const noexcept;
  Kind kind() const noexcept;
  /// Generator vector α (HomExt only).
  const SetVector& alpha() const;
  const ConstraintSchema& left() const;
  const ConstraintSchema& right() const;

  /// True if the rowid has the shape this schema produces.
  bool owns(const SchemaRowId& row) const;

  /// Row vector over 2^I. Throws InputError for foreign rowids or width mismatches.
  SetVector row_vector(const SchemaRowId& row, const GroundSet& gs) const;
  /// h_*: maps a row over h's domain to a row over its codomain.
  SchemaRowId pushforward_row(const LatticeHom& h, const SchemaRowId& row) const;

  /// Rows used when building an LP over `gs`. Zero rows are skipped.
  std::vector<SchemaRowId> enumerate_rows(const GroundSet& gs, const RowPolicy& policy = {}) const;

  friend ConstraintSchema disjoint_union(const ConstraintSchema& a, const ConstraintSchema& b);

 private:
  struct Data;
  explicit ConstraintSchema(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// Rows Left(rows of a) ⊔ Right(rows of b), named "a+b".
ConstraintSchema disjoint_union(const ConstraintSchema& a, const ConstraintSchema& b);

/// Every enumerated row r satisfies r·𝟙 = 0 and r·𝟙_i = 0 for all i.
bool check_tight(const ConstraintSchema& schema, const GroundSet& gs, const RowPolicy& policy = {});

using RowPushforward = std::function<SchemaRowId(const LatticeHom&, const SchemaRowId&)>;

/// For every enumerated row q over h's domain:
/// row_vector(h_*(q)) = pushforward_setvector(h, row_vector(q)).
/// `push` overrides the schema's own pushforward (for testing the checker).
bool check_homomorphic(const ConstraintSchema& schema, const LatticeHom& h,
                       const RowPolicy& policy = {}, const RowPushforward& push = {});

/// Pretty one-line rendering of a rowid with ground-set labels.
std::string format_row(const SchemaRowId& row, const GroundSet& gs);

}  // namespace icb
