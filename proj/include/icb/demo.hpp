#pragma once

// Scripted pipelines that recompute the headline numbers exactly.

#include <string>
#include <string_view>
#include <vector>

#include "icb/certificate.hpp"
#include "icb/schema.hpp"

namespace icb {

struct DemoCheck {
  std::string name;
  std::string value;
  bool pass = false;
};

struct DemoReport {
  std::string name;
  std::vector<DemoCheck> checks;

  bool passed() const;
  std::string format() const;
};

std::vector<std::string> demo_names();
/// Throws InputError for unknown names.
DemoReport run_demo(std::string_view name);

/// "submod+fano-odd" or "submod+fano-even".
ConstraintSchema separation_schema(bool odd);
/// The homomorphic-extension row with identity q for the Fano-type inequality,
/// as a Right row of separation_schema(odd).
SchemaRowId identity_inequality_row(const Matroid& m, bool odd);

struct SeparationCertificates {
  IndexCodingInstance product;
  DualCertificate odd, even, submod;
  AddIneqCertificate fano_odd, nonfano_even;
};

/// Certificates over G_F • G_N: addineq for one factor combined with the
/// lifted submodular certificate of the other, plus the plain b-certificate.
SeparationCertificates separation_certificates();

}  // namespace icb
