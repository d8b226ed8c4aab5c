#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json.hpp>

#include "qcoh/state.hpp"

namespace qcoh::io {

/// Malformed JSON or a schema violation in a state document.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using StateInput = std::variant<QubitState, PureQubit, DirectSumState>;

/// Parses one of
///   {"rho00": x, "re01": x, "im01": x}
///   {"pure": {"c0": [re, im], "c1": [re, im]}}
///   {"dsum": {"p": x, "phi1": <pure>, "phi2": <pure>}}
/// where <pure> is either {"c0": .., "c1": ..} or {"pure": {...}}.
/// Validation failures propagate as qcoh::Error.
StateInput parse_state(std::string_view text);
StateInput state_from_json(const nlohmann::json& doc);

/// Pure inputs are promoted to density matrices; direct sums are rejected.
QubitState as_qubit(const StateInput& input);

nlohmann::json to_json(const QubitState& state);
nlohmann::json to_json(const PureQubit& phi);
nlohmann::json to_json(const DirectSumState& state);
/// {"c0": [re, im], "c1": [re, im]}
nlohmann::json amplitudes_json(const PureQubit& phi);

/// x rounded to 12 significant digits (the value nlohmann then prints).
double round12(double x);

/// 12 significant digits in plain decimal notation, trailing zeros removed.
std::string format12(double x);

}  // namespace qcoh::io
