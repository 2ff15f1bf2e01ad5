#pragma once

// JSON file formats. Rationals are "p/q" strings; subsets are label arrays
// in message order; rowids are tagged objects.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "icb/certificate.hpp"
#include "icb/instance.hpp"
#include "icb/lincode.hpp"
#include "icb/matroid.hpp"
#include "icb/schema.hpp"

namespace icb {

using Json = nlohmann::ordered_json;

/// Throws InputError if the file is missing or not valid JSON.
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json subset_to_json(const GroundSet& gs, const SubsetMask& s);
SubsetMask subset_from_json(const GroundSet& gs, const Json& j);

/// Graph form when the instance carries a source graph, receiver form otherwise.
Json instance_to_json(const IndexCodingInstance& g);
IndexCodingInstance instance_from_json(const Json& j);

Json hom_to_json(const LatticeHom& h);
/// The codomain is the certificate's message set.
LatticeHom hom_from_json(const Json& j, const GroundSet& codomain);

Json rowid_to_json(const SchemaRowId& row, const GroundSet& gs);
SchemaRowId rowid_from_json(const Json& j, const GroundSet& gs);

/// `value` is written as given; readers treat it as a claim to re-verify.
Json certificate_to_json(const DualCertificate& cert, const Rational& value);
DualCertificate certificate_from_json(const Json& j, const GroundSet& messages);

/// {"labels", "rank"} with ranks by dense subset index, or {"labels",
/// "prime", "matrix"}, or {"named": "fano"|"nonfano"}.
Json matroid_to_json(const Matroid& m);
Matroid matroid_from_json(const Json& j);

Json code_to_json(const ScalarLinearCode& code);
ScalarLinearCode code_from_json(const Json& j);
Json table_code_to_json(const TableCode& code);
TableCode table_code_from_json(const Json& j);

/// A list of homomorphisms for the "file" row policy: [{"domain", "base", "atoms"}, ...].
std::vector<LatticeHom> homs_from_json(const Json& j, const GroundSet& codomain);

}  // namespace icb
