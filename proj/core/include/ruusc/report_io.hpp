#pragma once

#include "ruusc/envelope.hpp"
#include "ruusc/modulus.hpp"
#include "ruusc/relaxation.hpp"
#include "ruusc/report.hpp"
#include "ruusc/starshape.hpp"
#include "ruusc/tabulated.hpp"

#include <string>

namespace ruusc {

/// Doubles are printed with 17 significant digits ("%.17g"), +inf as "inf",
/// so report bodies round-trip and byte-compare across runs. Reports carry
/// no timestamps.

std::string to_csv(const ModulusProfile& p);
std::string to_csv(const StarShapeReport& r);
std::string to_csv(const TheoremReport& r);
std::string to_csv(const TabulatedFunction& t);
std::string to_csv(const MeshField& f);

std::string to_json(const TheoremReport& r);
std::string to_json(const RuUscCertificate& c);
std::string to_json(const SEpsilonReport& r);

void write_text_file(const std::string& path, const std::string& content);
std::string format_double(double x);

}  // namespace ruusc
