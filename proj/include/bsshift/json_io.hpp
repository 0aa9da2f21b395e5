#ifndef BSSHIFT_JSON_IO_HPP
#define BSSHIFT_JSON_IO_HPP

#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bsshift/report.hpp"
#include "bsshift/series.hpp"

namespace bsshift {

using Json = nlohmann::ordered_json;

/// {"order": n, "radicand": ["1", "p/q", ...], "divisor": D}
inline Json to_json(const ExtrapolationFormula& f) {
  Json j;
  j["order"] = f.order;
  j["radicand"] = f.radicand_strings();
  if (!f.d.empty() && f.leading().sign() > 0) {
    j["divisor"] = asymptotic_divisor(f);
  }
  return j;
}

/// Inverse of to_json; the divisor field, if present, is ignored.
inline ExtrapolationFormula formula_from_json(const Json& j) {
  ExtrapolationFormula f;
  f.order = j.at("order").get<int>();
  const auto radicand = j.at("radicand").get<std::vector<std::string>>();
  if (radicand.empty() || Rational::parse(radicand.front()) != Rational(1)) {
    throw std::invalid_argument("formula_from_json: radicand must start with \"1\"");
  }
  for (std::size_t k = 1; k < radicand.size(); ++k) {
    f.d.push_back(Rational::parse(radicand[k]));
  }
  return f;
}

inline Json to_json(const Diagnostics& diagnostics) {
  Json j = Json::object();
  for (const auto& [key, value] : diagnostics) {
    std::visit([&](const auto& v) { j[key] = v; }, value);
  }
  return j;
}

/// {"method", "omega0", "amplitude", "shift", "resonance", "diagnostics"}
inline Json to_json(const ShiftReport& r) {
  Json j;
  j["method"] = std::string(to_string(r.method));
  j["omega0"] = r.params.omega0();
  j["amplitude"] = r.params.amplitude();
  j["shift"] = r.shift;
  j["resonance"] = r.resonance();
  j["diagnostics"] = to_json(r.diagnostics);
  return j;
}

}  // namespace bsshift

#endif  // BSSHIFT_JSON_IO_HPP
