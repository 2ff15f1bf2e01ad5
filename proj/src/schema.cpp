#include "icb/schema.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "icb/error.hpp"

namespace icb {

namespace {

void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace

// ---------------------------------------------------------------- SchemaRowId

SchemaRowId SchemaRowId::submod(SubsetMask s, SubsetMask t) {
  if (s.width() != t.width()) throw InputError("submodularity row: subsets of different widths");
  return SchemaRowId(Submod{std::move(s), std::move(t)});
}

SchemaRowId SchemaRowId::homext(std::string schema, LatticeHom q) {
  return SchemaRowId(HomExt{std::move(schema), std::move(q)});
}

SchemaRowId SchemaRowId::explicit_row(std::string schema, std::size_t index) {
  return SchemaRowId(Explicit{std::move(schema), index});
}

SchemaRowId SchemaRowId::left(SchemaRowId inner) {
  return SchemaRowId(Left{std::make_shared<const SchemaRowId>(std::move(inner))});
}

SchemaRowId SchemaRowId::right(SchemaRowId inner) {
  return SchemaRowId(Right{std::make_shared<const SchemaRowId>(std::move(inner))});
}

std::size_t SchemaRowId::hash() const noexcept {
  std::size_t seed = v_.index();
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Submod>) {
          // Submod rows are symmetric in (S, T).
          std::size_t a = r.s.hash(), b = r.t.hash();
          if (a > b) std::swap(a, b);
          hash_combine(seed, a);
          hash_combine(seed, b);
        } else if constexpr (std::is_same_v<T, HomExt>) {
          hash_combine(seed, std::hash<std::string>{}(r.schema));
          hash_combine(seed, r.q.hash());
        } else if constexpr (std::is_same_v<T, Explicit>) {
          hash_combine(seed, std::hash<std::string>{}(r.schema));
          hash_combine(seed, r.index);
        } else {
          hash_combine(seed, r.inner->hash());
        }
      },
      v_);
  return seed;
}

namespace {

std::pair<const SubsetMask*, const SubsetMask*> ordered_pair(const SchemaRowId::Submod& r) {
  if (r.t < r.s) return {&r.t, &r.s};
  return {&r.s, &r.t};
}

}  // namespace

std::strong_ordering operator<=>(const SchemaRowId& a, const SchemaRowId& b) {
  if (auto c = a.v_.index() <=> b.v_.index(); c != 0) return c;
  return std::visit(
      [&](const auto& ra) -> std::strong_ordering {
        using T = std::decay_t<decltype(ra)>;
        const auto& rb = std::get<T>(b.v_);
        if constexpr (std::is_same_v<T, SchemaRowId::Submod>) {
          auto [a1, a2] = ordered_pair(ra);
          auto [b1, b2] = ordered_pair(rb);
          if (auto c = *a1 <=> *b1; c != 0) return c;
          return *a2 <=> *b2;
        } else if constexpr (std::is_same_v<T, SchemaRowId::HomExt>) {
          if (auto c = ra.schema <=> rb.schema; c != 0) return c;
          return ra.q <=> rb.q;
        } else if constexpr (std::is_same_v<T, SchemaRowId::Explicit>) {
          if (auto c = ra.schema <=> rb.schema; c != 0) return c;
          return ra.index <=> rb.index;
        } else {
          return *ra.inner <=> *rb.inner;
        }
      },
      a.v_);
}

bool operator==(const SchemaRowId& a, const SchemaRowId& b) { return (a <=> b) == 0; }

// ------------------------------------------------------------- row vectors

SetVector submod_row(const GroundSet& gs, const SubsetMask& s, const SubsetMask& t) {
  if (s.width() != gs.size() || t.width() != gs.size())
    throw InputError("submodularity row: subset width does not match the ground set");
  SetVector v(gs);
  if (s.is_subset_of(t) || t.is_subset_of(s)) return v;
  v.add(s, 1);
  v.add(t, 1);
  v.add(s | t, -1);
  v.add(s & t, -1);
  return v;
}

std::vector<SchemaRowId> submod_rows_elemental(const GroundSet& gs) {
  const std::size_t n = gs.size();
  require_dense(n, "submodularity rows");
  std::vector<SchemaRowId> rows;
  if (n < 2) return rows;
  rows.reserve(n * (n - 1) / 2 * (std::size_t{1} << (n - 2)));
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::uint64_t bi = std::uint64_t{1} << i, bj = std::uint64_t{1} << j;
      for (std::uint64_t s = 0; s < subsets; ++s) {
        if (s & (bi | bj)) continue;
        rows.push_back(SchemaRowId::submod(SubsetMask::from_bits(n, s | bi),
                                           SubsetMask::from_bits(n, s | bj)));
      }
    }
  return rows;
}

std::vector<SchemaRowId> submod_rows_all_pairs(const GroundSet& gs) {
  const std::size_t n = gs.size();
  require_dense(n, "submodularity rows");
  std::vector<SchemaRowId> rows;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < subsets; ++s)
    for (std::uint64_t t = s + 1; t < subsets; ++t) {
      if ((s & ~t) == 0 || (t & ~s) == 0) continue;
      rows.push_back(SchemaRowId::submod(SubsetMask::from_bits(n, s), SubsetMask::from_bits(n, t)));
    }
  return rows;
}

SetVector homext_row(const SetVector& alpha, const LatticeHom& q) {
  if (!(q.domain() == alpha.ground_set()))
    throw InputError("homomorphic extension: q's domain is not the generator ground set");
  return pushforward_setvector(q, alpha);
}

std::string to_string(HomExtPolicy p) {
  switch (p) {
    case HomExtPolicy::Identity: return "identity";
    case HomExtPolicy::Orbit: return "orbit";
    case HomExtPolicy::File: return "file";
    case HomExtPolicy::All: return "all";
  }
  return "?";
}

HomExtPolicy parse_homext_policy(std::string_view text) {
  if (text == "identity") return HomExtPolicy::Identity;
  if (text == "orbit") return HomExtPolicy::Orbit;
  if (text == "file") return HomExtPolicy::File;
  if (text == "all") return HomExtPolicy::All;
  throw InputError("unknown row policy '" + std::string(text) +
                   "' (expected identity|orbit|file|all)");
}

// ----------------------------------------------------------- ConstraintSchema

struct ConstraintSchema::Data {
  Kind kind = Kind::Empty;
  std::string name;
  SetVector alpha;
  GroundSet explicit_gs;
  std::vector<SetVector> explicit_rows;
  std::optional<ConstraintSchema> left;
  std::optional<ConstraintSchema> right;
};

ConstraintSchema::ConstraintSchema() {
  auto d = std::make_shared<Data>();
  d->name = "empty";
  d_ = std::move(d);
}

ConstraintSchema ConstraintSchema::submodularity() {
  auto d = std::make_shared<Data>();
  d->kind = Kind::Submod;
  d->name = "submod";
  return ConstraintSchema(std::move(d));
}

ConstraintSchema ConstraintSchema::homext(std::string name, SetVector alpha) {
  if (name.empty() || name.find('+') != std::string::npos)
    throw InputError("schema names must be non-empty and must not contain '+'");
  auto d = std::make_shared<Data>();
  d->kind = Kind::HomExt;
  d->name = std::move(name);
  d->alpha = std::move(alpha);
  return ConstraintSchema(std::move(d));
}

ConstraintSchema ConstraintSchema::explicit_rows(std::string name, GroundSet gs,
                                                 std::vector<SetVector> rows) {
  for (const auto& r : rows)
    if (!(r.ground_set() == gs)) throw InputError("explicit schema rows must share one ground set");
  auto d = std::make_shared<Data>();
  d->kind = Kind::Explicit;
  d->name = std::move(name);
  d->explicit_gs = std::move(gs);
  d->explicit_rows = std::move(rows);
  return ConstraintSchema(std::move(d));
}

ConstraintSchema disjoint_union(const ConstraintSchema& a, const ConstraintSchema& b) {
  auto d = std::make_shared<ConstraintSchema::Data>();
  d->kind = ConstraintSchema::Kind::Union;
  d->name = a.name() + "+" + b.name();
  d->left = a;
  d->right = b;
  return ConstraintSchema(std::move(d));
}

const std::string& ConstraintSchema::name() const noexcept { return d_->name; }
ConstraintSchema::Kind ConstraintSchema::kind() const noexcept { return d_->kind; }

const SetVector& ConstraintSchema::alpha() const {
  if (d_->kind != Kind::HomExt) throw InputError("schema '" + name() + "' has no generator vector");
  return d_->alpha;
}

const ConstraintSchema& ConstraintSchema::left() const {
  if (d_->kind != Kind::Union) throw InputError("schema '" + name() + "' is not a union");
  return *d_->left;
}

const ConstraintSchema& ConstraintSchema::right() const {
  if (d_->kind != Kind::Union) throw InputError("schema '" + name() + "' is not a union");
  return *d_->right;
}

bool ConstraintSchema::owns(const SchemaRowId& row) const {
  switch (d_->kind) {
    case Kind::Empty: return false;
    case Kind::Submod: return row.get_if<SchemaRowId::Submod>() != nullptr;
    case Kind::HomExt: {
      const auto* r = row.get_if<SchemaRowId::HomExt>();
      return r && r->schema == d_->name;
    }
    case Kind::Explicit: {
      const auto* r = row.get_if<SchemaRowId::Explicit>();
      return r && r->schema == d_->name && r->index < d_->explicit_rows.size();
    }
    case Kind::Union:
      if (const auto* l = row.get_if<SchemaRowId::Left>()) return d_->left->owns(*l->inner);
      if (const auto* r = row.get_if<SchemaRowId::Right>()) return d_->right->owns(*r->inner);
      return false;
  }
  return false;
}

SetVector ConstraintSchema::row_vector(const SchemaRowId& row, const GroundSet& gs) const {
  if (!owns(row)) throw InputError("row does not belong to schema '" + name() + "'");
  switch (d_->kind) {
    case Kind::Submod: {
      const auto& r = *row.get_if<SchemaRowId::Submod>();
      return submod_row(gs, r.s, r.t);
    }
    case Kind::HomExt: {
      const auto& r = *row.get_if<SchemaRowId::HomExt>();
      if (!(r.q.codomain() == gs))
        throw InputError("homomorphic extension row does not map into this ground set");
      return homext_row(d_->alpha, r.q);
    }
    case Kind::Explicit: {
      if (!(gs == d_->explicit_gs))
        throw InputError("explicit schema '" + name() + "' is defined on a different ground set");
      return d_->explicit_rows[row.get_if<SchemaRowId::Explicit>()->index];
    }
    case Kind::Union:
      if (const auto* l = row.get_if<SchemaRowId::Left>()) return d_->left->row_vector(*l->inner, gs);
      return d_->right->row_vector(*row.get_if<SchemaRowId::Right>()->inner, gs);
    case Kind::Empty: break;
  }
  throw InternalError("unreachable schema kind");
}

SchemaRowId ConstraintSchema::pushforward_row(const LatticeHom& h, const SchemaRowId& row) const {
  if (!owns(row)) throw InputError("row does not belong to schema '" + name() + "'");
  switch (d_->kind) {
    case Kind::Submod: {
      const auto& r = *row.get_if<SchemaRowId::Submod>();
      return SchemaRowId::submod(h.apply(r.s), h.apply(r.t));
    }
    case Kind::HomExt: {
      const auto& r = *row.get_if<SchemaRowId::HomExt>();
      return SchemaRowId::homext(r.schema, hom_compose(h, r.q));
    }
    case Kind::Explicit:
      throw Unsupported("explicit schema '" + name() + "' has no pushforward");
    case Kind::Union:
      if (const auto* l = row.get_if<SchemaRowId::Left>())
        return SchemaRowId::left(d_->left->pushforward_row(h, *l->inner));
      return SchemaRowId::right(
          d_->right->pushforward_row(h, *row.get_if<SchemaRowId::Right>()->inner));
    case Kind::Empty: break;
  }
  throw InternalError("unreachable schema kind");
}

LatticeHom identity_row_hom(const GroundSet& generator, const GroundSet& gs) {
  const std::size_t n = gs.size();
  std::vector<SubsetMask> atoms;
  atoms.reserve(generator.size());
  for (const auto& label : generator.labels()) {
    SubsetMask img(n);
    if (auto k = gs.find(label)) img.set(*k);
    atoms.push_back(std::move(img));
  }
  return LatticeHom(generator, gs, SubsetMask(n), std::move(atoms));
}

namespace {

LatticeHom permutation_hom(const GroundSet& gs, const std::vector<std::size_t>& perm) {
  std::vector<SubsetMask> atoms;
  for (std::size_t i = 0; i < gs.size(); ++i) atoms.push_back(SubsetMask::singleton(gs.size(), perm[i]));
  return LatticeHom(gs, gs, SubsetMask(gs.size()), std::move(atoms));
}

std::vector<std::vector<std::size_t>> permutation_group(std::size_t n,
                                                        const std::vector<std::vector<std::size_t>>& gens,
                                                        std::size_t cap) {
  for (const auto& g : gens) {
    if (g.size() != n) throw InputError("orbit generator has the wrong length");
    std::vector<bool> seen(n, false);
    for (std::size_t v : g) {
      if (v >= n || seen[v]) throw InputError("orbit generator is not a permutation");
      seen[v] = true;
    }
  }
  std::vector<std::size_t> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  std::set<std::vector<std::size_t>> group{id};
  std::deque<std::vector<std::size_t>> queue{id};
  while (!queue.empty()) {
    auto p = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      std::vector<std::size_t> q(n);
      for (std::size_t i = 0; i < n; ++i) q[i] = g[p[i]];
      if (group.insert(q).second) {
        if (group.size() > cap)
          throw CapExceeded("orbit policy: permutation group exceeds " + std::to_string(cap) + " elements");
        queue.push_back(std::move(q));
      }
    }
  }
  return {group.begin(), group.end()};
}

std::vector<LatticeHom> all_homs(const GroundSet& generator, const GroundSet& gs, std::size_t cap) {
  const std::size_t j = generator.size();
  const std::size_t n = gs.size();
  // Each element of I goes to: nowhere (0), the base (1), or atom k (k + 2).
  const std::size_t choices = j + 2;
  double total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<double>(choices);
  if (total > static_cast<double>(cap))
    throw CapExceeded("'all' row policy would enumerate " + std::to_string(static_cast<long long>(total)) +
                      " homomorphisms (cap " + std::to_string(cap) + ")");
  std::vector<LatticeHom> out;
  std::vector<std::size_t> digit(n, 0);
  while (true) {
    SubsetMask base(n);
    std::vector<SubsetMask> atoms(j, SubsetMask(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (digit[i] == 1) base.set(i);
      else if (digit[i] >= 2) atoms[digit[i] - 2].set(i);
    }
    out.emplace_back(generator, gs, std::move(base), std::move(atoms));
    std::size_t k = 0;
    while (k < n && ++digit[k] == choices) digit[k++] = 0;
    if (k == n) break;
  }
  return out;
}

}  // namespace

std::vector<SchemaRowId> ConstraintSchema::enumerate_rows(const GroundSet& gs, const RowPolicy& policy) const {
  std::vector<SchemaRowId> rows;
  switch (d_->kind) {
    case Kind::Empty: break;
    case Kind::Submod:
      rows = policy.submod == SubmodFamily::Elemental ? submod_rows_elemental(gs) : submod_rows_all_pairs(gs);
      break;
    case Kind::HomExt: {
      std::vector<LatticeHom> homs;
      const GroundSet& gen = d_->alpha.ground_set();
      switch (policy.homext) {
        case HomExtPolicy::Identity:
          homs.push_back(identity_row_hom(gen, gs));
          break;
        case HomExtPolicy::Orbit: {
          const LatticeHom q = identity_row_hom(gen, gs);
          for (const auto& perm : permutation_group(gs.size(), policy.orbit_generators, policy.orbit_cap))
            homs.push_back(hom_compose(permutation_hom(gs, perm), q));
          break;
        }
        case HomExtPolicy::File:
          for (const auto& h : policy.homs) {
            if (!(h.domain() == gen) || !(h.codomain() == gs))
              throw InputError("listed homomorphism does not map the generator ground set into the instance");
            homs.push_back(h);
          }
          break;
        case HomExtPolicy::All:
          homs = all_homs(gen, gs, policy.all_cap);
          break;
      }
      std::sort(homs.begin(), homs.end());
      homs.erase(std::unique(homs.begin(), homs.end()), homs.end());
      for (auto& h : homs) {
        if (homext_row(d_->alpha, h).is_zero()) continue;
        rows.push_back(SchemaRowId::homext(d_->name, std::move(h)));
      }
      break;
    }
    case Kind::Explicit:
      if (!(gs == d_->explicit_gs)) break;
      for (std::size_t k = 0; k < d_->explicit_rows.size(); ++k)
        if (!d_->explicit_rows[k].is_zero()) rows.push_back(SchemaRowId::explicit_row(d_->name, k));
      break;
    case Kind::Union:
      for (auto& r : d_->left->enumerate_rows(gs, policy)) rows.push_back(SchemaRowId::left(std::move(r)));
      for (auto& r : d_->right->enumerate_rows(gs, policy)) rows.push_back(SchemaRowId::right(std::move(r)));
      break;
  }
  return rows;
}

// ------------------------------------------------------------------ checks

bool check_tight(const ConstraintSchema& schema, const GroundSet& gs, const RowPolicy& policy) {
  require_dense(gs.size(), "tightness check");
  std::vector<SetVector> probes{SetVector::ones(gs)};
  for (std::size_t i = 0; i < gs.size(); ++i) probes.push_back(SetVector::ones_containing(gs, i));
  for (const auto& row : schema.enumerate_rows(gs, policy)) {
    const SetVector v = schema.row_vector(row, gs);
    for (const auto& p : probes)
      if (v.dot(p) != 0) return false;
  }
  return true;
}

bool check_homomorphic(const ConstraintSchema& schema, const LatticeHom& h, const RowPolicy& policy,
                       const RowPushforward& push) {
  for (const auto& row : schema.enumerate_rows(h.domain(), policy)) {
    const SchemaRowId pushed = push ? push(h, row) : schema.pushforward_row(h, row);
    if (!schema.owns(pushed)) return false;
    if (!(schema.row_vector(pushed, h.codomain()) ==
          pushforward_setvector(h, schema.row_vector(row, h.domain()))))
      return false;
  }
  return true;
}

std::string format_row(const SchemaRowId& row, const GroundSet& gs) {
  return std::visit(
      [&](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, SchemaRowId::Submod>) {
          return "submod(" + format_subset(gs, r.s) + ", " + format_subset(gs, r.t) + ")";
        } else if constexpr (std::is_same_v<T, SchemaRowId::HomExt>) {
          std::string out = r.schema + "[base=" + format_subset(gs, r.q.base());
          for (std::size_t i = 0; i < r.q.domain().size(); ++i)
            out += ", " + r.q.domain().label(i) + "->" + format_subset(gs, r.q.atom_image(i));
          return out + "]";
        } else if constexpr (std::is_same_v<T, SchemaRowId::Explicit>) {
          return r.schema + "#" + std::to_string(r.index);
        } else if constexpr (std::is_same_v<T, SchemaRowId::Left>) {
          return "left(" + format_row(*r.inner, gs) + ")";
        } else {
          return "right(" + format_row(*r.inner, gs) + ")";
        }
      },
      row.variant());
}

}  // namespace icb
