#include "icb/registry.hpp"

#include "icb/error.hpp"
#include "icb/matroid.hpp"

namespace icb {

namespace {

ConstraintSchema atom(std::string_view name) {
  if (name == "empty") return ConstraintSchema();
  if (name == "submod") return ConstraintSchema::submodularity();
  if (name == "fano-even") return ConstraintSchema::homext("fano-even", alpha_even());
  if (name == "fano-odd") return ConstraintSchema::homext("fano-odd", alpha_odd());
  std::string known;
  for (const auto& k : known_schema_names()) known += (known.empty() ? "" : ", ") + k;
  throw InputError("unknown schema '" + std::string(name) + "' (known: " + known + ", or unions joined by '+')");
}

}  // namespace

ConstraintSchema schema_by_name(std::string_view name) {
  std::size_t pos = name.find('+');
  ConstraintSchema out = atom(name.substr(0, pos));
  while (pos != std::string_view::npos) {
    const std::size_t next = name.find('+', pos + 1);
    out = disjoint_union(out, atom(name.substr(pos + 1, next == std::string_view::npos ? next : next - pos - 1)));
    pos = next;
  }
  return out;
}

std::vector<std::string> known_schema_names() { return {"empty", "submod", "fano-even", "fano-odd"}; }

}  // namespace icb
