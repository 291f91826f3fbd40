#include "catkit/io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

namespace catkit {

namespace {

using nlohmann::json;

Rational rational_field(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": rationals must be strings like \"2/5\" (or integers)");
}

bool bool_field(const json& j, const char* name) {
  if (!j.contains(name)) return false;
  if (!j[name].is_boolean()) throw ParseError(std::string(name) + " must be a boolean");
  return j[name].get<bool>();
}

const char* kind_name(CertificateKind k) {
  switch (k) {
    case CertificateKind::MeasureCatalyst:
      return "measure-catalyst";
    case CertificateKind::VectorCatalyst:
      return "vector-catalyst";
    case CertificateKind::MulticopyWitness:
      return "multicopy-witness";
  }
  throw Error("unknown certificate kind");
}

CertificateKind kind_from(const std::string& s) {
  if (s == "measure-catalyst") return CertificateKind::MeasureCatalyst;
  if (s == "vector-catalyst") return CertificateKind::VectorCatalyst;
  if (s == "multicopy-witness") return CertificateKind::MulticopyWitness;
  throw ParseError("unknown certificate kind \"" + s + "\"");
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

json to_json(const AtomicMeasure& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms)
    atoms.push_back({{"x", to_fraction_string(a.x)}, {"w", to_fraction_string(a.w)}});
  return json{{"atoms", std::move(atoms)}};
}

json to_json(const ProbVector& v) {
  json entries = json::array();
  for (const auto& e : v.p) entries.push_back(to_fraction_string(e));
  return json{{"p", std::move(entries)}};
}

json to_json(const CatalystCertificate& c) {
  json j{{"kind", kind_name(c.kind)}, {"statement", c.statement}, {"verified", c.verified}};
  if (c.n) j["n"] = *c.n;
  if (c.mu) j["mu"] = to_json(*c.mu);
  if (c.nu) j["nu"] = to_json(*c.nu);
  if (c.pi) j["pi"] = to_json(*c.pi);
  if (c.x) j["x"] = to_json(*c.x);
  if (c.y) j["y"] = to_json(*c.y);
  if (c.z) j["z"] = to_json(*c.z);
  return j;
}

AtomicMeasure measure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array())
    throw ParseError("a measure needs an \"atoms\" array");
  std::vector<Atom> atoms;
  atoms.reserve(j["atoms"].size());
  std::size_t i = 0;
  for (const auto& a : j["atoms"]) {
    const std::string where = "atoms[" + std::to_string(i++) + "]";
    if (!a.is_object() || !a.contains("x") || !a.contains("w"))
      throw ParseError(where + " needs \"x\" and \"w\"");
    atoms.push_back(Atom{rational_field(a["x"], where + ".x"), rational_field(a["w"], where + ".w")});
  }
  return make_measure(std::move(atoms), bool_field(j, "normalize"));
}

ProbVector vector_from_json(const json& j) {
  if (!j.is_object() || !j.contains("p") || !j["p"].is_array())
    throw ParseError("a probability vector needs a \"p\" array");
  std::vector<Rational> entries;
  entries.reserve(j["p"].size());
  std::size_t i = 0;
  for (const auto& e : j["p"])
    entries.push_back(rational_field(e, "p[" + std::to_string(i++) + "]"));
  return make_vector(std::move(entries), bool_field(j, "normalize"));
}

CatalystCertificate certificate_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ParseError("a certificate needs a string \"kind\"");
  CatalystCertificate c;
  c.kind = kind_from(j["kind"].get<std::string>());
  if (j.contains("statement")) {
    if (!j["statement"].is_string()) throw ParseError("statement must be a string");
    c.statement = j["statement"].get<std::string>();
  }
  c.verified = bool_field(j, "verified");
  if (j.contains("n")) {
    if (!j["n"].is_number_integer()) throw ParseError("n must be an integer");
    c.n = j["n"].get<int>();
  }
  if (j.contains("mu")) c.mu = measure_from_json(j["mu"]);
  if (j.contains("nu")) c.nu = measure_from_json(j["nu"]);
  if (j.contains("pi")) c.pi = measure_from_json(j["pi"]);
  if (j.contains("x")) c.x = vector_from_json(j["x"]);
  if (j.contains("y")) c.y = vector_from_json(j["y"]);
  if (j.contains("z")) c.z = vector_from_json(j["z"]);
  return c;
}

AtomicMeasure parse_measure(const std::string& text) { return measure_from_json(parse_text(text)); }

ProbVector parse_vector(const std::string& text) { return vector_from_json(parse_text(text)); }

CatalystCertificate parse_certificate(const std::string& text) {
  return certificate_from_json(parse_text(text));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

AtomicMeasure load_measure(const std::string& path) {
  try {
    return parse_measure(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

ProbVector load_vector(const std::string& path) {
  try {
    return parse_vector(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

CatalystCertificate load_certificate(const std::string& path) {
  try {
    return parse_certificate(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace catkit
