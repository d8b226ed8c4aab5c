#include "qcoh/io.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace qcoh::io {

namespace {

using nlohmann::json;

double number(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_number()) {
    throw InputError(std::string("expected numeric field \"") + key + "\"");
  }
  return obj.at(key).get<double>();
}

cplx complex_pair(const json& obj, const char* key) {
  if (!obj.contains(key)) {
    throw InputError(std::string("missing amplitude \"") + key + "\"");
  }
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw InputError(std::string("amplitude \"") + key + "\" must be [re, im]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

PureQubit pure_from_json(const json& obj) {
  const json& body = (obj.is_object() && obj.contains("pure")) ? obj.at("pure") : obj;
  if (!body.is_object()) {
    throw InputError("pure state must be an object with \"c0\" and \"c1\"");
  }
  return PureQubit(complex_pair(body, "c0"), complex_pair(body, "c1"));
}

}  // namespace

StateInput state_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw InputError("state must be a JSON object");
  }
  if (doc.contains("pure")) {
    return pure_from_json(doc);
  }
  if (doc.contains("dsum")) {
    const json& body = doc.at("dsum");
    if (!body.is_object() || !body.contains("phi1") || !body.contains("phi2")) {
      throw InputError("dsum needs \"p\", \"phi1\" and \"phi2\"");
    }
    return direct_sum(number(body, "p"), pure_from_json(body.at("phi1")),
                      pure_from_json(body.at("phi2")));
  }
  const double im = doc.contains("im01") ? number(doc, "im01") : 0.0;
  return validate_density(number(doc, "rho00"), cplx{number(doc, "re01"), im});
}

StateInput parse_state(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  return state_from_json(doc);
}

QubitState as_qubit(const StateInput& input) {
  if (const auto* q = std::get_if<QubitState>(&input)) return *q;
  if (const auto* p = std::get_if<PureQubit>(&input)) return QubitState::from_pure(*p);
  throw InputError("expected a single-qubit state, got a direct sum");
}

json amplitudes_json(const PureQubit& phi) {
  // + 0.0 folds negative zeros.
  return {{"c0", {phi.c0().real() + 0.0, phi.c0().imag() + 0.0}},
          {"c1", {phi.c1().real() + 0.0, phi.c1().imag() + 0.0}}};
}

json to_json(const QubitState& state) {
  return {{"rho00", state.rho00()}, {"re01", state.rho01().real()}, {"im01", state.rho01().imag()}};
}

json to_json(const PureQubit& phi) { return {{"pure", amplitudes_json(phi)}}; }

json to_json(const DirectSumState& state) {
  return {{"dsum",
           {{"p", state.p}, {"phi1", amplitudes_json(state.phi1)},
            {"phi2", amplitudes_json(state.phi2)}}}};
}

double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return std::strtod(buf, nullptr);
}

std::string format12(double x) {
  if (!std::isfinite(x)) return std::to_string(x);
  if (x == 0.0) return "0";
  const int exponent = static_cast<int>(std::floor(std::log10(std::abs(round12(x)))));
  const int decimals = std::max(0, 11 - exponent);
  char buf[400];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

}  // namespace qcoh::io
