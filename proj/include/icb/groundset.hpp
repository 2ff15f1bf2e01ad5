#pragma once

// Subset-lattice primitives: labeled ground sets, arbitrary-width subset
// bitmasks, sparse exact-rational vectors indexed by subsets, and Boolean
// lattice homomorphisms between power sets.

#include <cstddef>
#include <cstdint>
#include <compare>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "icb/rational.hpp"

namespace icb {

/// Default cap on ground-set size for anything that enumerates all 2^n subsets.
inline constexpr std::size_t kDefaultDenseCap = 16;

/// Dense-enumeration cap; `ICB_DENSE_CAP` in the environment overrides the default.
std::size_t dense_cap();

/// Throws CapExceeded if 2^n enumeration over `n` elements is not allowed.
void require_dense(std::size_t n, std::string_view what);

/// Ordered list of distinct labels. Cheap to copy (shared immutable storage).
class GroundSet {
 public:
  GroundSet();
  explicit GroundSet(std::vector<std::string> labels);
  GroundSet(std::initializer_list<std::string> labels);

  /// Labels "1".."n".
  static GroundSet numbered(std::size_t n);

  std::size_t size() const noexcept;
  const std::string& label(std::size_t i) const;
  const std::vector<std::string>& labels() const noexcept;
  std::optional<std::size_t> find(std::string_view label) const;
  /// Throws InputError for unknown labels.
  std::size_t index_of(std::string_view label) const;

  friend bool operator==(const GroundSet& a, const GroundSet& b);

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

/// Subset of a ground set as a bitset of fixed width. Bit i is message i.
class SubsetMask {
 public:
  SubsetMask() = default;
  explicit SubsetMask(std::size_t width);

  static SubsetMask full(std::size_t width);
  static SubsetMask from_indices(std::size_t width, std::span<const std::size_t> indices);
  static SubsetMask from_indices(std::size_t width, std::initializer_list<std::size_t> indices);
  /// Low `width` bits of `bits`; width must be at most 64.
  static SubsetMask from_bits(std::size_t width, std::uint64_t bits);
  static SubsetMask singleton(std::size_t width, std::size_t index);

  std::size_t width() const noexcept { return width_; }
  bool test(std::size_t i) const;
  SubsetMask& set(std::size_t i);
  SubsetMask& reset(std::size_t i);

  std::size_t count() const noexcept;
  bool none() const noexcept;
  bool is_full() const noexcept;
  bool is_subset_of(const SubsetMask& other) const;
  bool is_proper_subset_of(const SubsetMask& other) const;
  bool intersects(const SubsetMask& other) const;

  SubsetMask operator|(const SubsetMask& other) const;
  SubsetMask operator&(const SubsetMask& other) const;
  /// Set difference this \ other.
  SubsetMask operator-(const SubsetMask& other) const;
  SubsetMask complement() const;
  SubsetMask& operator|=(const SubsetMask& other);
  SubsetMask& operator&=(const SubsetMask& other);

  std::vector<std::size_t> indices() const;
  /// Dense subset rank (little-endian over message order). Requires width <= 64.
  std::uint64_t to_u64() const;

  std::span<const std::uint64_t> words() const noexcept { return {words_.data(), words_.size()}; }
  std::size_t hash() const noexcept;

  friend bool operator==(const SubsetMask& a, const SubsetMask& b) noexcept;
  /// Orders by width, then numerically by the bit pattern.
  friend std::strong_ordering operator<=>(const SubsetMask& a, const SubsetMask& b) noexcept;

 private:
  void check_same_width(const SubsetMask& other) const;
  void trim() noexcept;

  std::size_t width_ = 0;
  boost::container::small_vector<std::uint64_t, 2> words_;
};

struct SubsetMaskHash {
  std::size_t operator()(const SubsetMask& s) const noexcept { return s.hash(); }
};

/// Renders {a,b,c} using ground-set labels, in message order.
std::string format_subset(const GroundSet& gs, const SubsetMask& s);
SubsetMask subset_from_labels(const GroundSet& gs, std::span<const std::string> labels);
SubsetMask subset_from_labels(const GroundSet& gs, std::initializer_list<std::string_view> labels);
std::vector<std::string> subset_labels(const GroundSet& gs, const SubsetMask& s);

/// Sparse exact-rational vector indexed by subsets of a ground set. Absent keys are zero.
class SetVector {
 public:
  using Map = std::unordered_map<SubsetMask, Rational, SubsetMaskHash>;

  SetVector() = default;
  explicit SetVector(GroundSet gs);

  /// The all-ones vector over 2^I.
  static SetVector ones(const GroundSet& gs);
  /// Ones on subsets containing element i.
  static SetVector ones_containing(const GroundSet& gs, std::size_t i);
  static SetVector unit(const GroundSet& gs, const SubsetMask& s);
  /// Dense construction f(S) for every S; subject to the dense cap.
  static SetVector from_function(const GroundSet& gs,
                                 const std::function<Rational(const SubsetMask&)>& f);

  const GroundSet& ground_set() const noexcept { return gs_; }
  Rational get(const SubsetMask& s) const;
  void set(const SubsetMask& s, const Rational& value);
  void add(const SubsetMask& s, const Rational& value);

  std::size_t support_size() const noexcept { return entries_.size(); }
  bool is_zero() const noexcept { return entries_.empty(); }
  const Map& entries() const noexcept { return entries_; }
  /// Entries in SubsetMask order; use for deterministic output.
  std::vector<std::pair<SubsetMask, Rational>> sorted_entries() const;

  Rational total() const;
  Rational dot(const SetVector& other) const;

  SetVector& operator+=(const SetVector& other);
  SetVector& operator-=(const SetVector& other);
  SetVector& operator*=(const Rational& factor);
  friend SetVector operator+(SetVector a, const SetVector& b) { return a += b; }
  friend SetVector operator-(SetVector a, const SetVector& b) { return a -= b; }
  friend SetVector operator*(const Rational& k, SetVector v) { return v *= k; }

  friend bool operator==(const SetVector& a, const SetVector& b);

 private:
  void check_key(const SubsetMask& s) const;
  void check_same_ground(const SetVector& other) const;

  GroundSet gs_;
  Map entries_;
};

/// Boolean lattice homomorphism h: 2^domain -> 2^codomain in canonical form
/// h(S) = base ∪ ⋃_{i∈S} atom_image(i), with pairwise disjoint images that
/// avoid the base.
class LatticeHom {
 public:
  LatticeHom() = default;
  LatticeHom(GroundSet domain, GroundSet codomain, SubsetMask base,
             std::vector<SubsetMask> atom_images);

  static LatticeHom identity(const GroundSet& gs);

  const GroundSet& domain() const noexcept { return domain_; }
  const GroundSet& codomain() const noexcept { return codomain_; }
  const SubsetMask& base() const noexcept { return base_; }
  const SubsetMask& atom_image(std::size_t i) const { return atoms_.at(i); }
  const std::vector<SubsetMask>& atom_images() const noexcept { return atoms_; }

  SubsetMask apply(const SubsetMask& s) const;

  std::size_t hash() const noexcept;
  friend bool operator==(const LatticeHom& a, const LatticeHom& b);
  friend std::strong_ordering operator<=>(const LatticeHom& a, const LatticeHom& b);

 private:
  GroundSet domain_;
  GroundSet codomain_;
  SubsetMask base_;
  std::vector<SubsetMask> atoms_;
};

inline SubsetMask hom_apply(const LatticeHom& h, const SubsetMask& s) { return h.apply(s); }

/// g ∘ h. Requires h.codomain() == g.domain().
LatticeHom hom_compose(const LatticeHom& g, const LatticeHom& h);

/// (P_h v)_T = Σ_{S : h(S) = T} v_S.
SetVector pushforward_setvector(const LatticeHom& h, const SetVector& v);

}  // namespace icb
