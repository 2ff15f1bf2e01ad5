#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "icb/certificate.hpp"
#include "icb/demo.hpp"
#include "icb/error.hpp"
#include "icb/io.hpp"
#include "icb/lincode.hpp"
#include "icb/lp.hpp"
#include "icb/matroid.hpp"
#include "icb/registry.hpp"

using namespace icb;

namespace {

enum Exit { kOk = 0, kClaimFailed = 1, kBadInput = 2, kCap = 3 };

struct SolveArgs {
  std::string instance;
  std::string schema = "submod";
  std::string rows = "identity";
  std::string homs;
  std::string submod = "elemental";
  std::string closure = "single";
  std::string decoding = "single";
  std::string emit_cert;
  bool exact_only = false;
};

struct CombineArgs {
  std::string g, f, cert_g, cert_f, schema, out;
  std::string lift_g, lift_f;
};

struct VerifyArgs {
  std::string instance, cert, schema, expect;
};

struct MatroidArgs {
  std::string matroid, named, out;
  bool minimal_receivers = true;
};

struct SearchArgs {
  std::string instance, emit_code;
  std::uint32_t prime = 2;
  std::optional<std::size_t> max_length;
};

UnionSide parse_side(const std::string& s) {
  if (s == "left") return UnionSide::Left;
  if (s == "right") return UnionSide::Right;
  throw InputError("side must be left or right, got '" + s + "'");
}

int cmd_solve(const SolveArgs& a) {
  const IndexCodingInstance g = instance_from_json(read_json_file(a.instance));
  const ConstraintSchema schema = schema_by_name(a.schema);
  LPOptions opt;
  opt.closure = parse_closure_mode(a.closure);
  opt.rows.homext = parse_homext_policy(a.rows);
  if (a.submod == "elemental") opt.rows.submod = SubmodFamily::Elemental;
  else if (a.submod == "all-pairs") opt.rows.submod = SubmodFamily::AllPairs;
  else throw InputError("--submod must be elemental or all-pairs");
  if (a.decoding == "single") opt.decoding = DecodingFamily::SingleStep;
  else if (a.decoding == "all") opt.decoding = DecodingFamily::AllPairs;
  else throw InputError("--decoding must be single or all");
  if (opt.rows.homext == HomExtPolicy::File) {
    if (a.homs.empty()) throw InputError("--rows file needs --homs");
    opt.rows.homs = homs_from_json(read_json_file(a.homs), g.messages());
  }
  opt.simplex.float_warm_start = !a.exact_only;

  const LPProblem p = build_primal(g, schema, opt);
  const SimplexResult r = solve(p, opt.simplex);
  std::cout << "messages: " << g.size() << "  schema: " << schema.name() << "  rows: " << p.program.rows.size()
            << "\n";
  if (r.status != LPStatus::Optimal) {
    std::cout << "status: " << to_string(r.status) << "\n";
    return kClaimFailed;
  }
  std::cout << (schema.name() == "submod" ? "b" : "bound") << " = " << to_display_string(r.objective) << "\n";
  if (!a.emit_cert.empty()) {
    const DualCertificate cert = extract_certificate(p, r);
    write_json_file(a.emit_cert, certificate_to_json(cert, r.objective));
    std::cout << "certificate: " << a.emit_cert << " (" << cert.x.size() << " x, " << cert.y.size() << " y)\n";
  }
  return kOk;
}

int cmd_product(const std::string& gp, const std::string& fp, const std::string& out) {
  const IndexCodingInstance g = instance_from_json(read_json_file(gp));
  const IndexCodingInstance f = instance_from_json(read_json_file(fp));
  const IndexCodingInstance p = lex_product(g, f);
  write_json_file(out, instance_to_json(p));
  std::cout << "product: " << p.size() << " messages, " << p.receivers().size() << " receivers -> " << out << "\n";
  return kOk;
}

int cmd_combine(const CombineArgs& a) {
  const IndexCodingInstance g = instance_from_json(read_json_file(a.g));
  const IndexCodingInstance f = instance_from_json(read_json_file(a.f));
  DualCertificate cg = certificate_from_json(read_json_file(a.cert_g), g.messages());
  DualCertificate cf = certificate_from_json(read_json_file(a.cert_f), f.messages());
  const ConstraintSchema schema = schema_by_name(a.schema.empty() ? cg.schema : a.schema);
  if (!a.lift_g.empty()) cg = lift(cg, schema, parse_side(a.lift_g));
  if (!a.lift_f.empty()) cf = lift(cf, schema, parse_side(a.lift_f));
  const DualCertificate out = combine(g, f, cg, cf, schema);
  const Rational value = verify(lex_product(g, f), schema, out).value;
  write_json_file(a.out, certificate_to_json(out, value));
  std::cout << "combined value = " << to_display_string(value) << " -> " << a.out << "\n";
  return kOk;
}

int cmd_verify(const VerifyArgs& a) {
  const IndexCodingInstance g = instance_from_json(read_json_file(a.instance));
  const Json j = read_json_file(a.cert);
  const DualCertificate cert = certificate_from_json(j, g.messages());
  const ConstraintSchema schema = schema_by_name(a.schema.empty() ? cert.schema : a.schema);
  try {
    const VerifyReport r = verify(g, schema, cert);
    std::cout << "verified value = " << to_display_string(r.value) << "\n";
    if (j.contains("value") && rational_from_json(j["value"]) != r.value) {
      std::cout << "claimed value " << j["value"].get<std::string>() << " does not match\n";
      return kClaimFailed;
    }
    if (!a.expect.empty() && parse_rational(a.expect) != r.value) {
      std::cout << "expected " << a.expect << "\n";
      return kClaimFailed;
    }
    return kOk;
  } catch (const VerificationError& e) {
    std::cout << "verification failed: " << e.what() << "\n";
    if (!e.coordinate().empty()) std::cout << "at: " << e.coordinate() << "\n";
    return kClaimFailed;
  }
}

int cmd_matroid2ic(const MatroidArgs& a) {
  Matroid m;
  if (!a.named.empty()) m = matroid_from_json(Json{{"named", a.named}});
  else if (!a.matroid.empty()) m = matroid_from_json(read_json_file(a.matroid));
  else throw InputError("give a matroid file or --named");
  const IndexCodingInstance g = to_index_coding(m, a.minimal_receivers);
  write_json_file(a.out, instance_to_json(g));
  std::cout << "G_M: " << g.size() << " messages, " << g.receivers().size() << " receivers, |E| - r(E) = "
            << m.size() - static_cast<std::size_t>(m.full_rank()) << " -> " << a.out << "\n";
  return kOk;
}

int cmd_alpha(const std::string& path) {
  const IndexCodingInstance g = instance_from_json(read_json_file(path));
  std::cout << "alpha = " << independence_number(g) << "\n";
  return kOk;
}

int cmd_search(const SearchArgs& a) {
  const IndexCodingInstance g = instance_from_json(read_json_file(a.instance));
  const RateSearchResult r = min_scalar_linear_rate(g, a.prime, a.max_length.value_or(g.size()));
  std::cout << "spaces checked: " << r.spaces_checked << "\n";
  if (!r.rate) {
    std::cout << "scalar linear rate over F_" << a.prime << " exceeds " << *a.max_length << "\n";
    return kOk;
  }
  std::cout << "scalar linear rate over F_" << a.prime << " = " << *r.rate << "\n";
  std::cout << format_matrix(r.witness->q);
  if (!a.emit_code.empty()) write_json_file(a.emit_code, code_to_json(*r.witness));
  return kOk;
}

int cmd_demo(const std::string& name) {
  const DemoReport r = run_demo(name);
  std::cout << r.format();
  return r.passed() ? kOk : kClaimFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy LP lower bounds for index coding, with exact certificates"};
  app.require_subcommand(1);
  int code = kOk;
  std::function<int()> run;

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "Solve the LP exactly and print the bound");
  solve_cmd->add_option("instance", sa.instance, "Instance JSON")->required();
  solve_cmd->add_option("--schema", sa.schema, "Schema name, e.g. submod or submod+fano-odd");
  solve_cmd->add_option("--rows", sa.rows, "Homomorphic-extension rows: identity|orbit|file|all");
  solve_cmd->add_option("--homs", sa.homs, "Homomorphism list for --rows file");
  solve_cmd->add_option("--submod", sa.submod, "Submodularity rows: elemental|all-pairs");
  solve_cmd->add_option("--closure", sa.closure, "Closure: single|iterated");
  solve_cmd->add_option("--decoding", sa.decoding, "Decoding rows: single|all");
  solve_cmd->add_option("--emit-cert", sa.emit_cert, "Write the certificate here");
  solve_cmd->add_flag("--exact-only", sa.exact_only, "Skip the floating-point warm start");
  solve_cmd->callback([&] { run = [&] { return cmd_solve(sa); }; });

  std::string pg, pf, pout;
  auto* product_cmd = app.add_subcommand("product", "Write the lexicographic product G.F");
  product_cmd->add_option("g", pg)->required();
  product_cmd->add_option("f", pf)->required();
  product_cmd->add_option("-o,--out", pout)->required();
  product_cmd->callback([&] { run = [&] { return cmd_product(pg, pf, pout); }; });

  CombineArgs ca;
  auto* combine_cmd = app.add_subcommand("combine", "Combine certificates for G and F into one for G.F");
  combine_cmd->add_option("g", ca.g)->required();
  combine_cmd->add_option("f", ca.f)->required();
  combine_cmd->add_option("cert_g", ca.cert_g)->required();
  combine_cmd->add_option("cert_f", ca.cert_f)->required();
  combine_cmd->add_option("--schema", ca.schema, "Schema of the result (default: that of cert_g)");
  combine_cmd->add_option("--lift-g", ca.lift_g, "Lift cert_g into this side of a union schema: left|right");
  combine_cmd->add_option("--lift-f", ca.lift_f, "Lift cert_f into this side of a union schema: left|right");
  combine_cmd->add_option("-o,--out", ca.out)->required();
  combine_cmd->callback([&] { run = [&] { return cmd_combine(ca); }; });

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Check a certificate exactly");
  verify_cmd->add_option("instance", va.instance)->required();
  verify_cmd->add_option("cert", va.cert)->required();
  verify_cmd->add_option("--schema", va.schema, "Schema to verify against (default: the certificate's)");
  verify_cmd->add_option("--expect", va.expect, "Fail unless the value equals this rational");
  verify_cmd->callback([&] { run = [&] { return cmd_verify(va); }; });

  MatroidArgs ma;
  auto* m_cmd = app.add_subcommand("matroid2ic", "Write the index coding instance G_M of a matroid");
  m_cmd->add_option("matroid", ma.matroid, "Matroid JSON");
  m_cmd->add_option("--named", ma.named, "fano or nonfano");
  m_cmd->add_flag("--minimal-receivers,!--all-receivers", ma.minimal_receivers,
                  "Keep only inclusion-minimal receivers (default on)");
  m_cmd->add_option("-o,--out", ma.out)->required();
  m_cmd->callback([&] { run = [&] { return cmd_matroid2ic(ma); }; });

  std::string ap;
  auto* alpha_cmd = app.add_subcommand("alpha", "Independence number of a graph instance");
  alpha_cmd->add_option("instance", ap)->required();
  alpha_cmd->callback([&] { run = [&] { return cmd_alpha(ap); }; });

  SearchArgs sr;
  auto* search_cmd = app.add_subcommand("search-linear", "Least scalar linear code length over F_p");
  search_cmd->add_option("instance", sr.instance)->required();
  search_cmd->add_option("--prime", sr.prime, "Field size");
  search_cmd->add_option("--max-length", sr.max_length, "Stop after this length");
  search_cmd->add_option("--emit-code", sr.emit_code, "Write the witness code here");
  search_cmd->callback([&] { run = [&] { return cmd_search(sr); }; });

  std::string dn;
  auto* demo_cmd = app.add_subcommand("demo", "Run a scripted pipeline: c5|alpha-beta|fano-gap|separation");
  demo_cmd->add_option("name", dn)->required();
  demo_cmd->callback([&] { run = [&] { return cmd_demo(dn); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }
  try {
    code = run();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const Unsupported& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    if (!e.coordinate().empty()) std::cerr << "at: " << e.coordinate() << "\n";
    return kClaimFailed;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kClaimFailed;
  }
  return code;
}
