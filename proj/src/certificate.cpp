#include "icb/certificate.hpp"

#include <algorithm>
#include <unordered_map>

#include "icb/error.hpp"

namespace icb {

void DualCertificate::add_x(const SubsetMask& s, const SubsetMask& t, const Rational& v) {
  if (v == 0 || s == t) return;
  auto [it, inserted] = x.try_emplace({s, t}, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) x.erase(it);
  }
}

void DualCertificate::add_y(const SchemaRowId& row, const Rational& v) {
  if (v == 0) return;
  auto [it, inserted] = y.try_emplace(row, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) y.erase(it);
  }
}

VerifyReport verify(const IndexCodingInstance& g, const ConstraintSchema& schema, const DualCertificate& cert) {
  const GroundSet& gs = g.messages();
  if (!(cert.messages == gs))
    throw VerificationError("certificate is over a different message set than the instance");
  if (cert.schema != schema.name())
    throw VerificationError("certificate uses schema '" + cert.schema + "' but '" + schema.name() +
                            "' was requested");
  const std::size_t n = gs.size();
  std::unordered_map<SubsetMask, Rational, SubsetMaskHash> residual;
  auto add = [&](const SubsetMask& s, const Rational& v) {
    auto [it, inserted] = residual.try_emplace(s, v);
    if (!inserted) it->second += v;
  };

  Rational cost_sum = 0, d_sum = 0;
  for (const auto& [key, v] : cert.x) {
    const auto& [s, t] = key;
    if (s.width() != n || t.width() != n)
      throw VerificationError("x entry has the wrong subset width");
    if (!s.is_proper_subset_of(t))
      throw VerificationError("x entry is not of the form S ⊊ T", format_subset(gs, s) + " " + format_subset(gs, t));
    if (v < 0)
      throw VerificationError("negative x value", format_subset(gs, s) + " " + format_subset(gs, t));
    if (v == 0) continue;
    add(s, v);
    add(t, -v);
    const SubsetMask cl = g.closure(s, cert.closure);
    cost_sum += v * static_cast<long>((t - cl).count());
    d_sum += v * static_cast<long>((t & (cl - s)).count());
  }
  for (const auto& [row, v] : cert.y) {
    if (v < 0) throw VerificationError("negative y value", format_row(row, gs));
    if (!schema.owns(row)) throw VerificationError("y row does not belong to the schema", format_row(row, gs));
    if (v == 0) continue;
    SetVector vec;
    try {
      vec = schema.row_vector(row, gs);
    } catch (const InputError& e) {
      throw VerificationError(std::string("malformed y row: ") + e.what(), format_row(row, gs));
    }
    for (const auto& [s, a] : vec.entries()) add(s, v * a);
  }
  add(SubsetMask(n), -1);
  add(SubsetMask::full(n), 1);

  std::vector<SubsetMask> bad;
  for (const auto& [s, v] : residual)
    if (v != 0) bad.push_back(s);
  if (!bad.empty()) {
    const auto first = *std::min_element(bad.begin(), bad.end());
    throw VerificationError("dual constraint violated: residual " + to_display_string(residual[first]) +
                                " at " + format_subset(gs, first),
                            format_subset(gs, first));
  }
  const Rational value = Rational(static_cast<long>(n)) - cost_sum;
  if (value != d_sum)
    throw VerificationError("objective forms disagree (|I| − Σc·x = " + to_display_string(value) +
                            ", Σd·x = " + to_display_string(d_sum) + "); the rows used are not tight");
  return {value, residual.size()};
}

LatticeHom block_hom(const IndexCodingInstance& g, const IndexCodingInstance& f) {
  const std::size_t nf = f.size();
  const std::size_t n = g.size() * nf;
  const GroundSet product = lex_product(g, f).messages();
  std::vector<SubsetMask> atoms;
  for (std::size_t u = 0; u < g.size(); ++u) {
    SubsetMask img(n);
    for (std::size_t v = 0; v < nf; ++v) img.set(product_index(u, v, nf));
    atoms.push_back(std::move(img));
  }
  return LatticeHom(g.messages(), product, SubsetMask(n), std::move(atoms));
}

namespace {

LatticeHom fiber_hom_on(const GroundSet& product, const IndexCodingInstance& g, const IndexCodingInstance& f,
                        const SubsetMask& s, const SubsetMask& t) {
  const std::size_t nf = f.size();
  const std::size_t n = g.size() * nf;
  SubsetMask base(n);
  for (std::size_t u : s.indices())
    for (std::size_t v = 0; v < nf; ++v) base.set(product_index(u, v, nf));
  const std::vector<std::size_t> fresh = (t - s).indices();
  std::vector<SubsetMask> atoms;
  for (std::size_t v = 0; v < nf; ++v) {
    SubsetMask img(n);
    for (std::size_t u : fresh) img.set(product_index(u, v, nf));
    atoms.push_back(std::move(img));
  }
  return LatticeHom(f.messages(), product, std::move(base), std::move(atoms));
}

}  // namespace

LatticeHom fiber_hom(const IndexCodingInstance& g, const IndexCodingInstance& f, const SubsetMask& s,
                     const SubsetMask& t) {
  if (!s.is_subset_of(t)) throw InputError("fiber homomorphism needs S ⊆ T");
  return fiber_hom_on(lex_product(g, f).messages(), g, f, s, t);
}

DualCertificate combine(const IndexCodingInstance& g, const IndexCodingInstance& f, const DualCertificate& cert_g,
                        const DualCertificate& cert_f, const ConstraintSchema& schema) {
  if (cert_g.schema != schema.name() || cert_f.schema != schema.name())
    throw InputError("both certificates must use schema '" + schema.name() + "' (got '" + cert_g.schema +
                     "' and '" + cert_f.schema + "')");
  if (cert_g.closure != cert_f.closure) throw InputError("certificates use different closure modes");
  if (!(cert_g.messages == g.messages()) || !(cert_f.messages == f.messages()))
    throw InputError("certificate message sets do not match the instances");
  verify(g, schema, cert_g);
  verify(f, schema, cert_f);

  const IndexCodingInstance product = lex_product(g, f);
  DualCertificate out;
  out.messages = product.messages();
  out.schema = schema.name();
  out.closure = cert_g.closure;

  const LatticeHom gh = block_hom(g, f);
  for (const auto& [row, v] : cert_g.y) out.add_y(schema.pushforward_row(gh, row), v);
  for (const auto& [key, xg] : cert_g.x) {
    const LatticeHom h = fiber_hom_on(out.messages, g, f, key.first, key.second);
    for (const auto& [fkey, xf] : cert_f.x) out.add_x(h.apply(fkey.first), h.apply(fkey.second), xg * xf);
    for (const auto& [row, yf] : cert_f.y) out.add_y(schema.pushforward_row(h, row), xg * yf);
  }
  return out;
}

DualCertificate lift(const DualCertificate& cert, const ConstraintSchema& union_schema, UnionSide side) {
  const ConstraintSchema& part = side == UnionSide::Left ? union_schema.left() : union_schema.right();
  if (cert.schema != part.name())
    throw InputError("certificate schema '" + cert.schema + "' is not the " +
                     (side == UnionSide::Left ? "left" : "right") + " part of '" + union_schema.name() + "'");
  DualCertificate out;
  out.messages = cert.messages;
  out.schema = union_schema.name();
  out.closure = cert.closure;
  out.x = cert.x;
  for (const auto& [row, v] : cert.y)
    out.add_y(side == UnionSide::Left ? SchemaRowId::left(row) : SchemaRowId::right(row), v);
  return out;
}

IndexCodingInstance c5_instance() {
  return from_graph(GroundSet::numbered(5), {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
}

DualCertificate c5_certificate() {
  const GroundSet gs = GroundSet::numbered(5);
  auto s = [&](std::initializer_list<std::string_view> labels) { return subset_from_labels(gs, labels); };
  DualCertificate c;
  c.messages = gs;
  c.schema = "submod";
  const Rational half(1, 2);
  const SubsetMask empty(5), all = SubsetMask::full(5);
  c.add_x(empty, s({"1", "3"}), half);
  c.add_x(empty, s({"2", "4"}), half);
  c.add_x(empty, s({"5"}), half);
  c.add_x(s({"1", "3"}), s({"1", "2", "3"}), half);
  c.add_x(s({"2", "4"}), s({"2", "3", "4"}), half);
  c.add_x(s({"1", "2", "3", "4"}), all, half);
  c.add_x(s({"2", "3", "5"}), all, half);
  c.add_y(SchemaRowId::submod(s({"2", "3", "4"}), s({"1", "2", "3"})), half);
  c.add_y(SchemaRowId::submod(s({"2", "3"}), s({"5"})), half);
  return c;
}

namespace {

// Greedy maximal independent subset of `s`, scanning elements in order.
std::uint64_t greedy_independent(const Matroid& m, std::uint64_t within, std::uint64_t start) {
  std::uint64_t acc = start;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const std::uint64_t bi = std::uint64_t{1} << i;
    if (!(within & bi) || (acc & bi)) continue;
    if (m.rank_bits(acc | bi) == m.rank_bits(acc) + 1) acc |= bi;
  }
  return acc;
}

}  // namespace

AddIneqCertificate addineq_certificate(const Matroid& m, const SchemaRowId& row, const ConstraintSchema& schema) {
  const GroundSet& gs = m.ground_set();
  const std::size_t n = gs.size();
  const SetVector a = schema.row_vector(row, gs);
  if (a.total() != 0) throw InputError("addineq: the row does not annihilate the all-ones vector");
  const Rational deficit = a.dot(m.rank_vector());
  if (deficit >= 0)
    throw InputError("addineq: the row is satisfied by the rank vector (a·r = " + to_display_string(deficit) + ")");

  const SubsetMask empty(n), all = SubsetMask::full(n);
  const std::uint64_t full = all.to_u64();
  Rational scale = a.get(empty);
  for (const auto& [s, v] : a.entries())
    if (v > 0 && s != empty && s != all) scale += v;
  if (scale <= 0) throw InternalError("addineq: non-positive normalizing constant");

  AddIneqCertificate out;
  out.scale = scale;
  out.deficit = deficit;
  DualCertificate& c = out.cert;
  c.messages = gs;
  c.schema = schema.name();
  c.add_y(row, 1 / scale);
  for (const auto& [s, v] : a.sorted_entries()) {
    if (s == empty || s == all) continue;
    const std::uint64_t sb = s.to_u64();
    const std::uint64_t mb = greedy_independent(m, sb, 0);
    if (v > 0) {
      const SubsetMask ms = SubsetMask::from_bits(n, mb);
      c.add_x(empty, ms, v / scale);
      c.add_x(ms, s, v / scale);
    } else {
      const std::uint64_t basis = greedy_independent(m, full, mb);
      const SubsetMask us = SubsetMask::from_bits(n, sb | basis);
      c.add_x(s, us, -v / scale);
      c.add_x(us, all, -v / scale);
    }
  }
  return out;
}

}  // namespace icb
