#include "icb/io.hpp"

#include <fstream>
#include <sstream>

#include "icb/error.hpp"

namespace icb {

namespace {

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object()) throw InputError(std::string(what) + " must be a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string(what) + " is missing \"" + key + "\"");
  return *it;
}

std::string label_from_json(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw InputError("labels must be strings or integers, got " + j.dump());
}

GroundSet labels_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of labels");
  std::vector<std::string> labels;
  for (const auto& e : j) labels.push_back(label_from_json(e));
  return GroundSet(std::move(labels));
}

Json labels_to_json(const GroundSet& gs) {
  Json out = Json::array();
  for (const auto& l : gs.labels()) out.push_back(l);
  return out;
}

std::size_t index_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw InputError(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

template <class F>
auto wrap(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

Json rational_to_json(const Rational& q) { return to_fraction_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InputError("rationals must be \"p/q\" strings, got " + j.dump());
}

Json subset_to_json(const GroundSet& gs, const SubsetMask& s) {
  Json out = Json::array();
  for (const auto& l : subset_labels(gs, s)) out.push_back(l);
  return out;
}

SubsetMask subset_from_json(const GroundSet& gs, const Json& j) {
  if (!j.is_array()) throw InputError("subsets must be label arrays, got " + j.dump());
  std::vector<std::string> labels;
  for (const auto& e : j) labels.push_back(label_from_json(e));
  return subset_from_labels(gs, labels);
}

Json instance_to_json(const IndexCodingInstance& g) {
  const GroundSet& gs = g.messages();
  Json out;
  if (g.graph()) {
    Json edges = Json::array();
    for (const auto& [u, v] : g.graph()->edges()) edges.push_back({gs.label(u), gs.label(v)});
    out["graph"] = {{"vertices", labels_to_json(gs)}, {"edges", std::move(edges)}};
    return out;
  }
  out["messages"] = labels_to_json(gs);
  Json receivers = Json::array();
  for (const auto& r : g.receivers())
    receivers.push_back({{"wants", gs.label(r.wants)}, {"knows", subset_to_json(gs, r.knows)}});
  out["receivers"] = std::move(receivers);
  return out;
}

IndexCodingInstance instance_from_json(const Json& j) {
  return wrap([&] {
    if (!j.is_object()) throw InputError("an instance must be a JSON object");
    if (j.contains("graph")) {
      const Json& gj = j["graph"];
      const GroundSet gs = labels_from_json(field(gj, "vertices", "graph"), "graph.vertices");
      std::vector<std::pair<std::size_t, std::size_t>> edges;
      const Json& ej = field(gj, "edges", "graph");
      if (!ej.is_array()) throw InputError("graph.edges must be an array");
      for (const auto& e : ej) {
        if (!e.is_array() || e.size() != 2) throw InputError("each edge must be a pair of labels, got " + e.dump());
        edges.emplace_back(gs.index_of(label_from_json(e[0])), gs.index_of(label_from_json(e[1])));
      }
      return from_graph(gs, edges);
    }
    const GroundSet gs = labels_from_json(field(j, "messages", "instance"), "messages");
    const Json& rj = field(j, "receivers", "instance");
    if (!rj.is_array()) throw InputError("receivers must be an array");
    std::vector<Receiver> receivers;
    for (const auto& r : rj) {
      Receiver rec;
      rec.wants = gs.index_of(label_from_json(field(r, "wants", "receiver")));
      rec.knows = subset_from_json(gs, field(r, "knows", "receiver"));
      receivers.push_back(std::move(rec));
    }
    return IndexCodingInstance(gs, std::move(receivers));
  });
}

Json hom_to_json(const LatticeHom& h) {
  const GroundSet& cod = h.codomain();
  Json atoms = Json::array();
  for (const auto& a : h.atom_images()) atoms.push_back(subset_to_json(cod, a));
  return {{"domain", labels_to_json(h.domain())}, {"base", subset_to_json(cod, h.base())}, {"atoms", atoms}};
}

LatticeHom hom_from_json(const Json& j, const GroundSet& codomain) {
  return wrap([&] {
    const GroundSet domain = labels_from_json(field(j, "domain", "homomorphism"), "domain");
    const SubsetMask base = subset_from_json(codomain, field(j, "base", "homomorphism"));
    const Json& aj = field(j, "atoms", "homomorphism");
    if (!aj.is_array() || aj.size() != domain.size())
      throw InputError("homomorphism needs one atom image per domain label");
    std::vector<SubsetMask> atoms;
    for (const auto& a : aj) atoms.push_back(subset_from_json(codomain, a));
    return LatticeHom(domain, codomain, base, std::move(atoms));
  });
}

Json rowid_to_json(const SchemaRowId& row, const GroundSet& gs) {
  return std::visit(
      [&](const auto& r) -> Json {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, SchemaRowId::Submod>) {
          return {{"type", "submod"}, {"s", subset_to_json(gs, r.s)}, {"t", subset_to_json(gs, r.t)}};
        } else if constexpr (std::is_same_v<T, SchemaRowId::HomExt>) {
          return {{"type", "homext"}, {"schema", r.schema}, {"hom", hom_to_json(r.q)}};
        } else if constexpr (std::is_same_v<T, SchemaRowId::Explicit>) {
          return {{"type", "explicit"}, {"schema", r.schema}, {"index", r.index}};
        } else if constexpr (std::is_same_v<T, SchemaRowId::Left>) {
          return {{"type", "left"}, {"row", rowid_to_json(*r.inner, gs)}};
        } else {
          return {{"type", "right"}, {"row", rowid_to_json(*r.inner, gs)}};
        }
      },
      row.variant());
}

SchemaRowId rowid_from_json(const Json& j, const GroundSet& gs) {
  return wrap([&] {
    const Json& tj = field(j, "type", "rowid");
    if (!tj.is_string()) throw InputError("rowid type must be a string");
    const std::string type = tj.get<std::string>();
    if (type == "submod")
      return SchemaRowId::submod(subset_from_json(gs, field(j, "s", "submod rowid")),
                                 subset_from_json(gs, field(j, "t", "submod rowid")));
    if (type == "homext")
      return SchemaRowId::homext(field(j, "schema", "homext rowid").get<std::string>(),
                                 hom_from_json(field(j, "hom", "homext rowid"), gs));
    if (type == "explicit")
      return SchemaRowId::explicit_row(field(j, "schema", "explicit rowid").get<std::string>(),
                                       index_from_json(field(j, "index", "explicit rowid"), "index"));
    if (type == "left") return SchemaRowId::left(rowid_from_json(field(j, "row", "left rowid"), gs));
    if (type == "right") return SchemaRowId::right(rowid_from_json(field(j, "row", "right rowid"), gs));
    throw InputError("unknown rowid type '" + type + "'");
  });
}

Json certificate_to_json(const DualCertificate& cert, const Rational& value) {
  const GroundSet& gs = cert.messages;
  Json x = Json::array();
  for (const auto& [key, v] : cert.x)
    x.push_back({{"s", subset_to_json(gs, key.first)}, {"t", subset_to_json(gs, key.second)}, {"v", rational_to_json(v)}});
  Json y = Json::array();
  for (const auto& [row, v] : cert.y) y.push_back({{"row", rowid_to_json(row, gs)}, {"v", rational_to_json(v)}});
  Json out;
  out["value"] = rational_to_json(value);
  out["x"] = std::move(x);
  out["y"] = std::move(y);
  out["schema"] = cert.schema;
  out["closure"] = to_string(cert.closure);
  return out;
}

DualCertificate certificate_from_json(const Json& j, const GroundSet& messages) {
  return wrap([&] {
    DualCertificate c;
    c.messages = messages;
    const Json& sj = field(j, "schema", "certificate");
    if (!sj.is_string()) throw InputError("certificate schema must be a string");
    c.schema = sj.get<std::string>();
    if (j.contains("closure")) c.closure = parse_closure_mode(j["closure"].get<std::string>());
    const Json& xj = field(j, "x", "certificate");
    const Json& yj = field(j, "y", "certificate");
    if (!xj.is_array() || !yj.is_array()) throw InputError("certificate x and y must be arrays");
    // Entries are kept as written so the verifier sees negative or repeated values.
    for (const auto& e : xj) {
      const DecodingKey key{subset_from_json(messages, field(e, "s", "x entry")),
                            subset_from_json(messages, field(e, "t", "x entry"))};
      const Rational v = rational_from_json(field(e, "v", "x entry"));
      auto [it, inserted] = c.x.try_emplace(key, v);
      if (!inserted) it->second += v;
    }
    for (const auto& e : yj) {
      const SchemaRowId row = rowid_from_json(field(e, "row", "y entry"), messages);
      const Rational v = rational_from_json(field(e, "v", "y entry"));
      auto [it, inserted] = c.y.try_emplace(row, v);
      if (!inserted) it->second += v;
    }
    return c;
  });
}

Json matroid_to_json(const Matroid& m) {
  Json rank = Json::array();
  for (auto r : m.ranks()) rank.push_back(static_cast<int>(r));
  return {{"labels", labels_to_json(m.ground_set())}, {"rank", rank}};
}

Matroid matroid_from_json(const Json& j) {
  return wrap([&] {
    if (!j.is_object()) throw InputError("a matroid must be a JSON object");
    if (j.contains("named")) {
      const std::string name = j["named"].get<std::string>();
      if (name == "fano") return fano();
      if (name == "nonfano") return nonfano();
      throw InputError("unknown named matroid '" + name + "' (expected fano or nonfano)");
    }
    const GroundSet gs = labels_from_json(field(j, "labels", "matroid"), "labels");
    Matroid m;
    if (j.contains("matrix")) {
      const std::uint32_t p = static_cast<std::uint32_t>(index_from_json(field(j, "prime", "matroid"), "prime"));
      require_prime(p);
      m = rank_from_matrix(gs, FpMatrix::from_rows(p, j["matrix"].get<std::vector<std::vector<long long>>>(),
                                                    gs.size()));
    } else {
      const Json& rj = field(j, "rank", "matroid");
      std::vector<std::uint8_t> rank;
      for (const auto& r : rj) rank.push_back(static_cast<std::uint8_t>(index_from_json(r, "rank")));
      m = Matroid(gs, std::move(rank));
    }
    const AxiomReport report = check_axioms(m);
    if (!report.ok) throw InputError("not a matroid: " + report.failure);
    return m;
  });
}

Json code_to_json(const ScalarLinearCode& code) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < code.q.rows(); ++i) rows.push_back(code.q.row(i));
  return {{"prime", code.prime()}, {"messages", code.messages()}, {"matrix", rows}};
}

ScalarLinearCode code_from_json(const Json& j) {
  return wrap([&] {
    const std::uint32_t p = static_cast<std::uint32_t>(index_from_json(field(j, "prime", "code"), "prime"));
    require_prime(p);
    const auto rows = field(j, "matrix", "code").get<std::vector<std::vector<long long>>>();
    std::size_t cols = j.contains("messages") ? index_from_json(j["messages"], "messages") : 0;
    if (cols == 0 && !rows.empty()) cols = rows.front().size();
    for (const auto& r : rows)
      if (r.size() != cols) throw InputError("code matrix rows must all have " + std::to_string(cols) + " entries");
    return ScalarLinearCode{FpMatrix::from_rows(p, rows, cols)};
  });
}

Json table_code_to_json(const TableCode& code) {
  return {{"alphabet", code.alphabet}, {"messages", code.messages}, {"length", code.length}, {"table", code.table}};
}

TableCode table_code_from_json(const Json& j) {
  return wrap([&] {
    TableCode c;
    c.alphabet = static_cast<std::uint32_t>(index_from_json(field(j, "alphabet", "table code"), "alphabet"));
    c.messages = index_from_json(field(j, "messages", "table code"), "messages");
    c.length = index_from_json(field(j, "length", "table code"), "length");
    c.table = field(j, "table", "table code").get<std::vector<std::uint64_t>>();
    if (c.table.size() != table_size(c.alphabet, c.messages))
      throw InputError("table code has the wrong number of entries");
    return c;
  });
}

std::vector<LatticeHom> homs_from_json(const Json& j, const GroundSet& codomain) {
  if (!j.is_array()) throw InputError("homomorphism file must hold an array");
  std::vector<LatticeHom> out;
  for (const auto& h : j) out.push_back(hom_from_json(h, codomain));
  return out;
}

}  // namespace icb
