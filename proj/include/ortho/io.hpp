#pragma once

#include "ortho/complex.hpp"
#include "ortho/spectral.hpp"
#include "ortho/stabilizer.hpp"
#include "ortho/witt.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace ortho {

using Json = nlohmann::ordered_json;

// Matrix text format: first line "ring p k", second line the dimensions
// "rows cols", then row-major integers separated by spaces.
Mat read_matrix_text(std::istream& in);
void write_matrix_text(std::ostream& out, const Mat& m);
Mat read_matrix_file(const std::string& path);

// Sequence JSON: {"ring":[p,k], "n":n, "vectors":[[...],...]}
Json sequence_to_json(const IsotropicSequence& s);
IsotropicSequence sequence_from_json(const Json& j);

// Chain JSON: {"ring":[p,k], "n":n, "degree":k,
//              "terms":[{"coef":m, "vectors":[[...],...]}, ...]}
Json chain_to_json(const Chain& c);
Chain chain_from_json(const Json& j);

Json matrix_to_json(const Mat& m);
Json vectors_to_json(const std::vector<Vec>& vs);
std::vector<Vec> vectors_from_json(const Json& j);

Json certificate_to_json(const GeneralPositionCertificate& cert);
Json kappa_report_to_json(const KappaReport& rep);
Json central_extension_report_to_json(const CentralExtensionReport& rep);
Json orbit_report_to_json(const OrbitStabilizerReport& rep);
Json homology_to_json(const std::vector<HomologyGroup>& groups);

// FNV-1a over the serialized text; stable across runs and platforms.
std::string fnv1a_hex(const std::string& data);

}  // namespace ortho
