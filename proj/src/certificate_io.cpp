#include <json.hpp>

#include "fpdense/lift.hpp"
#include "fpdense/poly.hpp"

namespace fpdense {

namespace {

using Json = nlohmann::ordered_json;

template <typename T>
Json string_array(const std::vector<T>& values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(to_string(v));
  return arr;
}

const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw Error(Errc::ParseError, std::string("missing field '") + key + "'");
  return obj.at(key);
}

std::string text_field(const Json& obj, const char* key) {
  const auto& v = field(obj, key);
  if (!v.is_string()) throw Error(Errc::ParseError, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> text_array(const Json& obj, const char* key) {
  const auto& v = field(obj, key);
  if (!v.is_array()) throw Error(Errc::ParseError, std::string("field '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) throw Error(Errc::ParseError, std::string("entries of '") + key + "' must be strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<Rational> rational_array(const Json& obj, const char* key) {
  std::vector<Rational> out;
  for (const auto& s : text_array(obj, key)) out.push_back(parse_rational(s));
  return out;
}

std::vector<Integer> integer_array(const Json& obj, const char* key) {
  std::vector<Integer> out;
  for (const auto& s : text_array(obj, key)) out.push_back(parse_integer(s));
  return out;
}

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("malformed certificate: ") + e.what());
  }
}

Json certificate_json(const Certificate& cert) {
  Json doc;
  doc["format"] = "fpdense-certificate";
  doc["version"] = cert.version;
  doc["mode"] = build_mode_name(cert.mode);
  doc["target"] = string_array(cert.target.coords);
  doc["eps"] = to_string(cert.eps);
  doc["chain"] = string_array(cert.chain.terms());
  doc["congruence"] = {{"residue", to_string(cert.congruence.residue)},
                       {"modulus", to_string(cert.congruence.modulus)}};
  doc["prime_floor"] = to_string(cert.prime_floor);
  doc["witness"] = {{"p", to_string(cert.witness.p)}, {"x", string_array(cert.witness.x)}};
  doc["errors"] = string_array(cert.errors);
  doc["max_error"] = to_string(cert.max_error);
  doc["primality_method"] = primality_method_name(cert.primality_method);
  return doc;
}

Certificate certificate_from_json(const Json& doc) {
  if (text_field(doc, "format") != "fpdense-certificate") throw Error(Errc::ParseError, "not a certificate document");
  const auto& version = field(doc, "version");
  if (!version.is_number_integer()) throw Error(Errc::ParseError, "version must be an integer");

  const auto& congruence = field(doc, "congruence");
  const auto& witness = field(doc, "witness");
  return Certificate{
      .target = TargetPoint(rational_array(doc, "target")),
      .eps = parse_rational(text_field(doc, "eps")),
      .chain = Chain::unchecked(integer_array(doc, "chain")),
      .congruence = CongruenceClass(parse_integer(text_field(congruence, "residue")),
                                    parse_integer(text_field(congruence, "modulus"))),
      .prime_floor = parse_integer(text_field(doc, "prime_floor")),
      .witness = WitnessPoint{parse_integer(text_field(witness, "p")), integer_array(witness, "x")},
      .errors = rational_array(doc, "errors"),
      .max_error = parse_rational(text_field(doc, "max_error")),
      .primality_method = parse_primality_method(text_field(doc, "primality_method")),
      .mode = parse_build_mode(text_field(doc, "mode")),
      .version = version.get<int>(),
  };
}

}  // namespace

std::string serialize_certificate(const Certificate& cert) { return certificate_json(cert).dump(2) + "\n"; }

Certificate parse_certificate(const std::string& text) { return certificate_from_json(parse_document(text)); }

std::string serialize_poly_certificate(const PolyCertificate& cert) {
  Json doc;
  doc["format"] = "fpdense-poly-certificate";
  doc["version"] = cert.inner.version;
  doc["coefficients"] = string_array(cert.f.lower_coefficients());
  doc["polynomial"] = cert.f.to_string();
  doc["alphas"] = string_array(cert.alphas.coords);
  doc["eps"] = to_string(cert.eps);
  doc["root_targets"] = string_array(cert.root_targets.coords);
  doc["root_precision"] = to_string(cert.root_precision);
  doc["values"] = string_array(cert.values);
  doc["errors"] = string_array(cert.errors);
  doc["inner"] = certificate_json(cert.inner);
  return doc.dump(2) + "\n";
}

PolyCertificate parse_poly_certificate(const std::string& text) {
  const Json doc = parse_document(text);
  if (text_field(doc, "format") != "fpdense-poly-certificate") {
    throw Error(Errc::ParseError, "not a polynomial certificate document");
  }
  auto coefficients = integer_array(doc, "coefficients");
  if (coefficients.empty()) throw Error(Errc::ParseError, "coefficients must be non-empty");
  return PolyCertificate{
      .f = MonicPolynomial(std::move(coefficients)),
      .alphas = TargetPoint(rational_array(doc, "alphas")),
      .eps = parse_rational(text_field(doc, "eps")),
      .root_targets = TargetPoint(rational_array(doc, "root_targets")),
      .root_precision = parse_rational(text_field(doc, "root_precision")),
      .inner = certificate_from_json(field(doc, "inner")),
      .values = rational_array(doc, "values"),
      .errors = rational_array(doc, "errors"),
  };
}

std::string certificate_format(const std::string& text) {
  const Json doc = parse_document(text);
  return text_field(doc, "format");
}

}  // namespace fpdense
