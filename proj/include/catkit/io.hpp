#pragma once

#include <string>

#include <json.hpp>

#include "catkit/catalysis.hpp"
#include "catkit/majorization.hpp"
#include "catkit/measure.hpp"

namespace catkit {

/// JSON shapes (all rationals are strings, "2/5", "3", or exact decimals
/// like "0.4"):
///   measure:     {"atoms": [{"x": "0", "w": "2/5"}, ...], "normalize": false}
///   vector:      {"p": ["1/2", "1/4", "1/4"], "normalize": false}
///   certificate: {"kind": "measure-catalyst" | "vector-catalyst" |
///                 "multicopy-witness", "statement": ..., "verified": ...,
///                 "n": ..., and the objects the kind needs
///                 (mu/nu/pi or x/y/z or x/y)}
/// normalize is optional and defaults to false.

nlohmann::json to_json(const AtomicMeasure& m);
nlohmann::json to_json(const ProbVector& v);
nlohmann::json to_json(const CatalystCertificate& c);

AtomicMeasure measure_from_json(const nlohmann::json& j);
ProbVector vector_from_json(const nlohmann::json& j);
CatalystCertificate certificate_from_json(const nlohmann::json& j);

AtomicMeasure parse_measure(const std::string& text);
ProbVector parse_vector(const std::string& text);
CatalystCertificate parse_certificate(const std::string& text);

/// Whole-file readers; ParseError names the path on any failure.
std::string read_file(const std::string& path);
AtomicMeasure load_measure(const std::string& path);
ProbVector load_vector(const std::string& path);
CatalystCertificate load_certificate(const std::string& path);

}  // namespace catkit
