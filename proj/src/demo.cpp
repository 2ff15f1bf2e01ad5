#include "icb/demo.hpp"

#include <sstream>

#include "icb/error.hpp"
#include "icb/lincode.hpp"
#include "icb/lp.hpp"
#include "icb/matroid.hpp"
#include "icb/registry.hpp"

namespace icb {

bool DemoReport::passed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string DemoReport::format() const {
  std::ostringstream out;
  for (const auto& c : checks) out << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << " = " << c.value << '\n';
  out << "demo " << name << ": " << (passed() ? "pass" : "FAIL") << '\n';
  return out.str();
}

std::vector<std::string> demo_names() { return {"c5", "alpha-beta", "fano-gap", "separation"}; }

ConstraintSchema separation_schema(bool odd) { return schema_by_name(odd ? "submod+fano-odd" : "submod+fano-even"); }

SchemaRowId identity_inequality_row(const Matroid& m, bool odd) {
  const SetVector& alpha = odd ? alpha_odd() : alpha_even();
  return SchemaRowId::right(
      SchemaRowId::homext(odd ? "fano-odd" : "fano-even", identity_row_hom(alpha.ground_set(), m.ground_set())));
}

SeparationCertificates separation_certificates() {
  const Matroid f = fano(), n = nonfano();
  const IndexCodingInstance gf = to_index_coding(f), gn = to_index_coding(n);
  const ConstraintSchema submod = ConstraintSchema::submodularity();
  const ConstraintSchema odd = separation_schema(true), even = separation_schema(false);
  const DualCertificate bf = solve_bound(gf, submod).certificate;
  const DualCertificate bn = solve_bound(gn, submod).certificate;
  SeparationCertificates out;
  out.product = lex_product(gf, gn);
  out.fano_odd = addineq_certificate(f, identity_inequality_row(f, true), odd);
  out.nonfano_even = addineq_certificate(n, identity_inequality_row(n, false), even);
  out.odd = combine(gf, gn, out.fano_odd.cert, lift(bn, odd, UnionSide::Left), odd);
  out.even = combine(gf, gn, lift(bf, even, UnionSide::Left), out.nonfano_even.cert, even);
  out.submod = combine(gf, gn, bf, bn, submod);
  return out;
}

namespace {

std::string str(const Rational& q) { return to_display_string(q); }

void check(DemoReport& r, std::string name, const Rational& value, bool pass) {
  r.checks.push_back({std::move(name), str(value), pass});
}

DemoReport demo_c5() {
  DemoReport r{"c5", {}};
  const IndexCodingInstance c5 = c5_instance();
  const ConstraintSchema submod = ConstraintSchema::submodularity();
  const BoundResult b = solve_bound(c5, submod);
  check(r, "b(C5) by exact simplex", b.value, b.value == Rational(5, 2));
  const Rational extracted = verify(c5, submod, b.certificate).value;
  check(r, "extracted certificate", extracted, extracted == b.value);
  const Rational builtin = verify(c5, submod, c5_certificate()).value;
  check(r, "built-in certificate", builtin, builtin == Rational(5, 2));
  const std::size_t alpha = independence_number(c5);
  check(r, "alpha(C5)", Rational(static_cast<long>(alpha)), alpha == 2);
  const Rational ratio = b.value / static_cast<long>(alpha);
  check(r, "b/alpha", ratio, ratio == Rational(5, 4));
  return r;
}

DemoReport demo_alpha_beta() {
  DemoReport r{"alpha-beta", {}};
  const IndexCodingInstance c5 = c5_instance();
  const ConstraintSchema submod = ConstraintSchema::submodularity();
  const DualCertificate c = c5_certificate();
  const IndexCodingInstance g2 = lex_product(c5, c5);
  const DualCertificate c2 = combine(c5, c5, c, c, submod);
  const Rational v2 = verify(g2, submod, c2).value;
  check(r, "b(C5^2) >= certified", v2, v2 == Rational(25, 4) && g2.size() == 25);
  const std::size_t a2 = independence_number(g2);
  check(r, "alpha(C5^2)", Rational(static_cast<long>(a2)), a2 == 4);
  check(r, "certified b/alpha at k=2", v2 / static_cast<long>(a2), v2 / static_cast<long>(a2) == Rational(25, 16));
  const IndexCodingInstance g3 = lex_product(g2, c5);
  const Rational v3 = verify(g3, submod, combine(g2, c5, c2, c, submod)).value;
  check(r, "b(C5^3) >= certified", v3, v3 == Rational(125, 8) && g3.size() == 125);
  return r;
}

DemoReport demo_fano_gap() {
  DemoReport r{"fano-gap", {}};
  const ConstraintSchema submod = ConstraintSchema::submodularity();
  for (bool is_fano : {true, false}) {
    const Matroid m = is_fano ? fano() : nonfano();
    const std::string tag = is_fano ? "F" : "N";
    const IndexCodingInstance g = to_index_coding(m);
    const Rational b = bound_b(g);
    const Rational target(static_cast<long>(m.size()) - m.full_rank());
    check(r, "b(G_" + tag + ")", b, b == target && target == 4);
    const Rational own = (is_fano ? lambda_odd() : lambda_even()).dot(m.rank_vector());
    check(r, std::string(is_fano ? "Lambda_odd" : "Lambda_even") + ".r(" + tag + ")", own, own == -1);
    const Rational other = (is_fano ? lambda_even() : lambda_odd()).dot(m.rank_vector());
    check(r, std::string(is_fano ? "Lambda_even" : "Lambda_odd") + ".r(" + tag + ")", other, other == 0);
    const ConstraintSchema schema = separation_schema(is_fano);
    const AddIneqCertificate a = addineq_certificate(m, identity_inequality_row(m, is_fano), schema);
    const Rational v = verify(g, schema, a.cert).value;
    check(r, "addineq certificate for G_" + tag + " under " + schema.name() + " (s = " + str(a.scale) + ")", v,
          v == 4 + 1 / a.scale);
    const Rational lp = bound_with_schema(g, schema);
    check(r, "LP for G_" + tag + " under " + schema.name(), lp, lp >= v);
    const std::uint32_t p = is_fano ? 2 : 3;
    const ScalarLinearCode code = underrep_to_code(m, fano_matrix(p));
    const bool valid = is_valid_code(g, code);
    check(r, "linear code for G_" + tag + " over F_" + std::to_string(p) + " from its representation (length)",
          Rational(static_cast<long>(code.length())), valid && code.length() == 4);
  }
  return r;
}

DemoReport demo_separation() {
  DemoReport r{"separation", {}};
  const SeparationCertificates s = separation_certificates();
  const Rational odd = verify(s.product, separation_schema(true), s.odd).value;
  check(r, "odd-characteristic bound on G_F.G_N (49 messages)", odd, odd > 16 && s.product.size() == 49);
  const Rational even = verify(s.product, separation_schema(false), s.even).value;
  check(r, "even-characteristic bound on G_F.G_N", even, even > 16);
  const Rational b = verify(s.product, ConstraintSchema::submodularity(), s.submod).value;
  check(r, "b(G_F.G_N) certified", b, b == 16);
  r.checks.push_back({"beta(G_F.G_N) (cited)", "16", true});
  return r;
}

}  // namespace

DemoReport run_demo(std::string_view name) {
  if (name == "c5") return demo_c5();
  if (name == "alpha-beta") return demo_alpha_beta();
  if (name == "fano-gap") return demo_fano_gap();
  if (name == "separation") return demo_separation();
  throw InputError("unknown demo '" + std::string(name) + "' (expected c5, alpha-beta, fano-gap or separation)");
}

}  // namespace icb
