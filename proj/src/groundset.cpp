#include "icb/groundset.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <string>

#include "icb/error.hpp"

namespace icb {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t width) { return (width + kWordBits - 1) / kWordBits; }

void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace

std::size_t dense_cap() {
  if (const char* env = std::getenv("ICB_DENSE_CAP")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 30) return static_cast<std::size_t>(v);
  }
  return kDefaultDenseCap;
}

void require_dense(std::size_t n, std::string_view what) {
  const std::size_t cap = dense_cap();
  if (n > cap)
    throw CapExceeded(std::string(what) + ": " + std::to_string(n) +
                      " elements exceeds the dense enumeration cap of " + std::to_string(cap));
}

// ---------------------------------------------------------------- GroundSet

struct GroundSet::Data {
  std::vector<std::string> labels;
  std::unordered_map<std::string, std::size_t> index;
};

GroundSet::GroundSet() : data_(std::make_shared<const Data>()) {}

GroundSet::GroundSet(std::vector<std::string> labels) {
  auto d = std::make_shared<Data>();
  d->index.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!d->index.emplace(labels[i], i).second)
      throw InputError("duplicate label '" + labels[i] + "' in ground set");
  }
  d->labels = std::move(labels);
  data_ = std::move(d);
}

GroundSet::GroundSet(std::initializer_list<std::string> labels)
    : GroundSet(std::vector<std::string>(labels)) {}

GroundSet GroundSet::numbered(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return GroundSet(std::move(labels));
}

std::size_t GroundSet::size() const noexcept { return data_->labels.size(); }

const std::string& GroundSet::label(std::size_t i) const { return data_->labels.at(i); }

const std::vector<std::string>& GroundSet::labels() const noexcept { return data_->labels; }

std::optional<std::size_t> GroundSet::find(std::string_view label) const {
  auto it = data_->index.find(std::string(label));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t GroundSet::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw InputError("unknown label '" + std::string(label) + "'");
}

bool operator==(const GroundSet& a, const GroundSet& b) {
  return a.data_ == b.data_ || a.data_->labels == b.data_->labels;
}

// --------------------------------------------------------------- SubsetMask

SubsetMask::SubsetMask(std::size_t width) : width_(width), words_(word_count(width), 0) {}

SubsetMask SubsetMask::full(std::size_t width) {
  SubsetMask s(width);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  s.trim();
  return s;
}

SubsetMask SubsetMask::from_indices(std::size_t width, std::span<const std::size_t> indices) {
  SubsetMask s(width);
  for (std::size_t i : indices) s.set(i);
  return s;
}

SubsetMask SubsetMask::from_indices(std::size_t width, std::initializer_list<std::size_t> indices) {
  return from_indices(width, std::span<const std::size_t>(indices.begin(), indices.size()));
}

SubsetMask SubsetMask::from_bits(std::size_t width, std::uint64_t bits) {
  if (width > kWordBits) throw InputError("from_bits: width exceeds 64");
  SubsetMask s(width);
  if (width > 0) s.words_[0] = bits;
  s.trim();
  return s;
}

SubsetMask SubsetMask::singleton(std::size_t width, std::size_t index) {
  SubsetMask s(width);
  s.set(index);
  return s;
}

bool SubsetMask::test(std::size_t i) const {
  if (i >= width_) throw InputError("subset index out of range");
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
}

SubsetMask& SubsetMask::set(std::size_t i) {
  if (i >= width_) throw InputError("subset index out of range");
  words_[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits);
  return *this;
}

SubsetMask& SubsetMask::reset(std::size_t i) {
  if (i >= width_) throw InputError("subset index out of range");
  words_[i / kWordBits] &= ~(std::uint64_t{1} << (i % kWordBits));
  return *this;
}

std::size_t SubsetMask::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool SubsetMask::none() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool SubsetMask::is_full() const noexcept { return count() == width_; }

void SubsetMask::check_same_width(const SubsetMask& other) const {
  if (width_ != other.width_)
    throw InputError("subset width mismatch: " + std::to_string(width_) + " vs " +
                     std::to_string(other.width_));
}

bool SubsetMask::is_subset_of(const SubsetMask& other) const {
  check_same_width(other);
  for (std::size_t k = 0; k < words_.size(); ++k)
    if (words_[k] & ~other.words_[k]) return false;
  return true;
}

bool SubsetMask::is_proper_subset_of(const SubsetMask& other) const {
  return is_subset_of(other) && !(*this == other);
}

bool SubsetMask::intersects(const SubsetMask& other) const {
  check_same_width(other);
  for (std::size_t k = 0; k < words_.size(); ++k)
    if (words_[k] & other.words_[k]) return true;
  return false;
}

SubsetMask SubsetMask::operator|(const SubsetMask& other) const {
  SubsetMask r = *this;
  return r |= other;
}

SubsetMask SubsetMask::operator&(const SubsetMask& other) const {
  SubsetMask r = *this;
  return r &= other;
}

SubsetMask SubsetMask::operator-(const SubsetMask& other) const {
  check_same_width(other);
  SubsetMask r = *this;
  for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] &= ~other.words_[k];
  return r;
}

SubsetMask SubsetMask::complement() const {
  SubsetMask r = *this;
  for (auto& w : r.words_) w = ~w;
  r.trim();
  return r;
}

SubsetMask& SubsetMask::operator|=(const SubsetMask& other) {
  check_same_width(other);
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
  return *this;
}

SubsetMask& SubsetMask::operator&=(const SubsetMask& other) {
  check_same_width(other);
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
  return *this;
}

std::vector<std::size_t> SubsetMask::indices() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for (std::size_t k = 0; k < words_.size(); ++k) {
    std::uint64_t w = words_[k];
    while (w) {
      out.push_back(k * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

std::uint64_t SubsetMask::to_u64() const {
  if (width_ > kWordBits) throw InputError("to_u64: subset wider than 64 bits");
  return words_.empty() ? 0 : words_[0];
}

std::size_t SubsetMask::hash() const noexcept {
  std::size_t seed = width_;
  for (auto w : words_) hash_combine(seed, std::hash<std::uint64_t>{}(w));
  return seed;
}

void SubsetMask::trim() noexcept {
  const std::size_t rem = width_ % kWordBits;
  if (rem != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << rem) - 1;
}

bool operator==(const SubsetMask& a, const SubsetMask& b) noexcept {
  return a.width_ == b.width_ && std::equal(a.words_.begin(), a.words_.end(), b.words_.begin());
}

std::strong_ordering operator<=>(const SubsetMask& a, const SubsetMask& b) noexcept {
  if (auto c = a.width_ <=> b.width_; c != 0) return c;
  for (std::size_t k = a.words_.size(); k-- > 0;) {
    if (auto c = a.words_[k] <=> b.words_[k]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string format_subset(const GroundSet& gs, const SubsetMask& s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : s.indices()) {
    if (!first) out += ",";
    out += gs.label(i);
    first = false;
  }
  return out + "}";
}

SubsetMask subset_from_labels(const GroundSet& gs, std::span<const std::string> labels) {
  SubsetMask s(gs.size());
  for (const auto& l : labels) s.set(gs.index_of(l));
  return s;
}

SubsetMask subset_from_labels(const GroundSet& gs, std::initializer_list<std::string_view> labels) {
  SubsetMask s(gs.size());
  for (auto l : labels) s.set(gs.index_of(l));
  return s;
}

std::vector<std::string> subset_labels(const GroundSet& gs, const SubsetMask& s) {
  std::vector<std::string> out;
  for (std::size_t i : s.indices()) out.push_back(gs.label(i));
  return out;
}

// ---------------------------------------------------------------- SetVector

SetVector::SetVector(GroundSet gs) : gs_(std::move(gs)) {}

SetVector SetVector::ones(const GroundSet& gs) {
  return from_function(gs, [](const SubsetMask&) { return Rational(1); });
}

SetVector SetVector::ones_containing(const GroundSet& gs, std::size_t i) {
  return from_function(gs, [i](const SubsetMask& s) { return Rational(s.test(i) ? 1 : 0); });
}

SetVector SetVector::unit(const GroundSet& gs, const SubsetMask& s) {
  SetVector v(gs);
  v.set(s, 1);
  return v;
}

SetVector SetVector::from_function(const GroundSet& gs,
                                   const std::function<Rational(const SubsetMask&)>& f) {
  const std::size_t n = gs.size();
  require_dense(n, "dense set vector");
  SetVector v(gs);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    SubsetMask s = SubsetMask::from_bits(n, bits);
    Rational value = f(s);
    if (value != 0) v.entries_.emplace(std::move(s), std::move(value));
  }
  return v;
}

void SetVector::check_key(const SubsetMask& s) const {
  if (s.width() != gs_.size())
    throw InputError("set vector key width " + std::to_string(s.width()) +
                     " does not match ground set of size " + std::to_string(gs_.size()));
}

void SetVector::check_same_ground(const SetVector& other) const {
  if (!(gs_ == other.gs_)) throw InputError("set vectors over different ground sets");
}

Rational SetVector::get(const SubsetMask& s) const {
  check_key(s);
  auto it = entries_.find(s);
  return it == entries_.end() ? Rational(0) : it->second;
}

void SetVector::set(const SubsetMask& s, const Rational& value) {
  check_key(s);
  if (value == 0)
    entries_.erase(s);
  else
    entries_[s] = value;
}

void SetVector::add(const SubsetMask& s, const Rational& value) {
  check_key(s);
  if (value == 0) return;
  auto [it, inserted] = entries_.try_emplace(s, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) entries_.erase(it);
  }
}

std::vector<std::pair<SubsetMask, Rational>> SetVector::sorted_entries() const {
  std::vector<std::pair<SubsetMask, Rational>> out(entries_.begin(), entries_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

Rational SetVector::total() const {
  Rational t = 0;
  for (const auto& [_, v] : entries_) t += v;
  return t;
}

Rational SetVector::dot(const SetVector& other) const {
  check_same_ground(other);
  const SetVector& small = support_size() <= other.support_size() ? *this : other;
  const SetVector& large = &small == this ? other : *this;
  Rational acc = 0;
  for (const auto& [k, v] : small.entries_) {
    auto it = large.entries_.find(k);
    if (it != large.entries_.end()) acc += v * it->second;
  }
  return acc;
}

SetVector& SetVector::operator+=(const SetVector& other) {
  check_same_ground(other);
  for (const auto& [k, v] : other.entries_) add(k, v);
  return *this;
}

SetVector& SetVector::operator-=(const SetVector& other) {
  check_same_ground(other);
  for (const auto& [k, v] : other.entries_) add(k, -v);
  return *this;
}

SetVector& SetVector::operator*=(const Rational& factor) {
  if (factor == 0) {
    entries_.clear();
    return *this;
  }
  for (auto& [_, v] : entries_) v *= factor;
  return *this;
}

bool operator==(const SetVector& a, const SetVector& b) {
  return a.gs_ == b.gs_ && a.entries_ == b.entries_;
}

// --------------------------------------------------------------- LatticeHom

LatticeHom::LatticeHom(GroundSet domain, GroundSet codomain, SubsetMask base,
                       std::vector<SubsetMask> atom_images)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      base_(std::move(base)),
      atoms_(std::move(atom_images)) {
  const std::size_t m = codomain_.size();
  if (base_.width() != m) throw InputError("lattice hom: base width does not match codomain");
  if (atoms_.size() != domain_.size())
    throw InputError("lattice hom: need one atom image per domain element");
  SubsetMask seen = base_;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].width() != m)
      throw InputError("lattice hom: atom image width does not match codomain");
    if (atoms_[i].intersects(seen))
      throw InputError("lattice hom: atom image of '" + domain_.label(i) +
                       "' overlaps the base or another atom image");
    seen |= atoms_[i];
  }
}

LatticeHom LatticeHom::identity(const GroundSet& gs) {
  std::vector<SubsetMask> atoms;
  atoms.reserve(gs.size());
  for (std::size_t i = 0; i < gs.size(); ++i) atoms.push_back(SubsetMask::singleton(gs.size(), i));
  return LatticeHom(gs, gs, SubsetMask(gs.size()), std::move(atoms));
}

SubsetMask LatticeHom::apply(const SubsetMask& s) const {
  if (s.width() != domain_.size())
    throw InputError("hom_apply: subset width " + std::to_string(s.width()) +
                     " does not match domain of size " + std::to_string(domain_.size()));
  SubsetMask out = base_;
  for (std::size_t i : s.indices()) out |= atoms_[i];
  return out;
}

std::size_t LatticeHom::hash() const noexcept {
  std::size_t seed = base_.hash();
  for (const auto& a : atoms_) hash_combine(seed, a.hash());
  return seed;
}

bool operator==(const LatticeHom& a, const LatticeHom& b) {
  return a.base_ == b.base_ && a.atoms_ == b.atoms_ && a.domain_ == b.domain_ &&
         a.codomain_ == b.codomain_;
}

std::strong_ordering operator<=>(const LatticeHom& a, const LatticeHom& b) {
  if (auto c = a.base_ <=> b.base_; c != 0) return c;
  if (auto c = a.atoms_.size() <=> b.atoms_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.atoms_.size(); ++i)
    if (auto c = a.atoms_[i] <=> b.atoms_[i]; c != 0) return c;
  if (a.domain_ == b.domain_ && a.codomain_ == b.codomain_) return std::strong_ordering::equal;
  if (auto c = a.domain_.labels() <=> b.domain_.labels(); c != 0) return c;
  return a.codomain_.labels() <=> b.codomain_.labels();
}

LatticeHom hom_compose(const LatticeHom& g, const LatticeHom& h) {
  if (!(h.codomain() == g.domain()))
    throw InputError("hom_compose: codomain of inner map differs from domain of outer map");
  std::vector<SubsetMask> atoms;
  atoms.reserve(h.domain().size());
  for (const auto& d : h.atom_images()) atoms.push_back(g.apply(d) - g.base());
  return LatticeHom(h.domain(), g.codomain(), g.apply(h.base()), std::move(atoms));
}

SetVector pushforward_setvector(const LatticeHom& h, const SetVector& v) {
  if (!(v.ground_set() == h.domain()))
    throw InputError("pushforward: vector is not over the homomorphism's domain");
  SetVector out(h.codomain());
  for (const auto& [s, value] : v.entries()) out.add(h.apply(s), value);
  return out;
}

}  // namespace icb
