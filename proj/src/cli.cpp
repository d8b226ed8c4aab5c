#include "qcoh/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>

#include "qcoh/errors.hpp"
#include "qcoh/io.hpp"
#include "qcoh/measures.hpp"
#include "qcoh/repro.hpp"
#include "qcoh/roof.hpp"
#include "qcoh/transforms.hpp"

namespace qcoh::cli {

int report_reproduction(const std::vector<repro::ReproCheck>& checks, bool as_json,
                        std::ostream& out) {
  bool all = true;
  for (const auto& c : checks) all = all && c.pass;
  if (as_json) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& c : checks) {
      auto value = [](const repro::CheckValue& v) -> nlohmann::json {
        if (const bool* b = std::get_if<bool>(&v)) return *b;
        return io::round12(std::get<double>(v));
      };
      rows.push_back({{"name", c.name},
                      {"criterion", c.criterion},
                      {"expected", value(c.expected)},
                      {"computed", value(c.computed)},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
    }
    out << nlohmann::json{{"pass", all}, {"checks", rows}}.dump(2) << '\n';
  } else {
    repro::print_table(out, checks);
    out << (all ? "all checks passed" : "REPRODUCTION FAILED") << '\n';
  }
  return all ? kOk : kReproFailure;
}

namespace {

using nlohmann::json;

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

json verdict_json(const FeasibilityVerdict& v) {
  json doc{{"feasible", v.feasible},
           {"witness_mu", nullptr},
           {"lhs", io::round12(v.lhs)},
           {"rhs", io::round12(v.rhs)}};
  if (v.witness_mu) doc["witness_mu"] = io::round12(*v.witness_mu);
  return doc;
}

json ensemble_json(const Ensemble& e) {
  json members = json::array();
  for (const auto& [w, phi] : e.members()) {
    json m = io::amplitudes_json(phi);
    m["weight"] = w;
    members.push_back(std::move(m));
  }
  return members;
}

int cmd_eval(const std::string& token, const std::string& text, std::ostream& out) {
  const auto spec = MeasureSpec::from_token(token);
  const auto input = io::parse_state(text);
  double value = 0.0;
  if (const auto* phi = std::get_if<PureQubit>(&input)) {
    value = eval_pure(spec, *phi);
  } else if (const auto* d = std::get_if<DirectSumState>(&input)) {
    value = d->p * eval_pure(spec, d->phi1) + (1.0 - d->p) * eval_pure(spec, d->phi2);
  } else {
    const auto& state = std::get<QubitState>(input);
    value = spec.is_rank_indicator() ? coherence_rank(state) : closed_form(spec, state);
  }
  emit(out, {{"value", io::round12(value)}});
  return kOk;
}

int cmd_roof(const std::string& token, const std::string& text, const RoofConfig& config,
             std::ostream& out) {
  const auto spec = MeasureSpec::from_token(token);
  const QubitState state = io::as_qubit(io::parse_state(text));
  const auto result = roof_minimize(spec, state, config);
  json doc{{"value", io::round12(result.value)}, {"witness", ensemble_json(result.witness)}};
  if (result.gap) {
    doc["closed_form"] = io::round12(result.gap->closed_form);
    doc["gap"] = io::round12(result.gap->difference);
  }
  emit(out, doc);
  return kOk;
}

int cmd_rank(const std::string& text, std::ostream& out) {
  const QubitState state = io::as_qubit(io::parse_state(text));
  const auto w = theorem2_witness(state);
  emit(out, {{"value", io::round12(coherence_rank(state))},
             {"weight", w.weight},
             {"coherent_part", io::amplitudes_json(w.coherent_part)},
             {"residual", {w.residual[0], w.residual[1]}}});
  return kOk;
}

int cmd_feasible(const std::string& source_text, const std::string& target_text,
                 std::ostream& out) {
  const auto source = io::parse_state(source_text);
  const auto target = io::parse_state(target_text);
  const bool source_dsum = std::holds_alternative<DirectSumState>(source);
  const bool target_dsum = std::holds_alternative<DirectSumState>(target);
  if (source_dsum != target_dsum) {
    throw io::InputError("source and target must both be qubit states or both direct sums");
  }
  if (source_dsum) {
    emit(out, verdict_json(theorem3_feasible(std::get<DirectSumState>(source),
                                             std::get<DirectSumState>(target))));
  } else {
    emit(out, verdict_json(qubit_transform_verdict(io::as_qubit(source), io::as_qubit(target))));
  }
  return kOk;
}

void write_curve(std::ostream& os, const std::vector<CurvePoint>& points) {
  os << "c_l1,value\n";
  for (const auto& p : points) os << io::format12(p.c_l1) << ',' << io::format12(p.value) << '\n';
}

int cmd_curve(const std::string& token, int n, const std::string& path, std::ostream& out,
              std::ostream& err) {
  const auto points = curve_sample(MeasureSpec::from_token(token), n);
  if (path.empty()) {
    write_curve(out, points);
    return kOk;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot open '" << path << "' for writing\n";
    return kInputError;
  }
  write_curve(file, points);
  file.flush();
  if (!file) {
    err << "error: failed writing '" << path << "'\n";
    return kInputError;
  }
  return kOk;
}

int cmd_reproduce(const repro::ReproOptions& options, bool as_json, std::ostream& out) {
  return report_reproduction(repro::run_reproduction(options), as_json, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form and convex-roof coherence measures for single-qubit states"};
  app.name("qcoh");
  app.require_subcommand(1);

  std::string token, state_text, source_text, target_text, out_path;
  int n_points = 0;
  RoofConfig roof_config;
  repro::ReproOptions repro_options;
  bool as_json = false;

  auto* eval = app.add_subcommand("eval", "Closed-form measure value (rank via the minimum-trace split)");
  eval->add_option("measure", token, "concurrence | formation | geometric | cmax | cmu:<mu> | rank")
      ->required();
  eval->add_option("state", state_text, "State JSON")->required();

  auto* roof = app.add_subcommand("roof", "Brute-force convex-roof oracle with witness ensemble");
  roof->add_option("measure", token)->required();
  roof->add_option("state", state_text)->required();
  roof->add_option("--sizes", roof_config.ensemble_sizes, "Ensemble sizes, e.g. 2,3,4")
      ->delimiter(',');
  roof->add_option("--restarts", roof_config.restarts);
  roof->add_option("--iters", roof_config.max_iters);
  roof->add_option("--tol", roof_config.tol);
  roof->add_option("--seed", roof_config.seed);

  auto* rank = app.add_subcommand("rank", "Coherence rank with its pure + incoherent split");
  rank->add_option("state", state_text)->required();

  auto* feasible = app.add_subcommand("feasible", "Incoherent-operation convertibility");
  feasible->add_option("source", source_text)->required();
  feasible->add_option("target", target_text)->required();

  auto* curve = app.add_subcommand("curve", "Pure-state profile against C_l1 as CSV");
  curve->add_option("measure", token)->required();
  curve->add_option("n", n_points, "Number of grid points (>= 2)")->required();
  curve->add_option("--out", out_path, "Output file (stdout when omitted)");

  auto* reproduce = app.add_subcommand("reproduce", "Recompute every reference number");
  reproduce->add_option("--seed", repro_options.seed);
  reproduce->add_option("--samples", repro_options.random_states, "Random states per bulk check");
  reproduce->add_option("--pairs", repro_options.direct_sum_pairs, "Direct-sum pairs");
  reproduce->add_flag("--json", as_json, "Emit the table as JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (eval->parsed()) return cmd_eval(token, state_text, out);
    if (roof->parsed()) return cmd_roof(token, state_text, roof_config, out);
    if (rank->parsed()) return cmd_rank(state_text, out);
    if (feasible->parsed()) return cmd_feasible(source_text, target_text, out);
    if (curve->parsed()) return cmd_curve(token, n_points, out_path, out, err);
    if (reproduce->parsed()) return cmd_reproduce(repro_options, as_json, out);
  } catch (const NonConvexMeasure& e) {
    err << "error: NonConvexMeasure: " << e.what() << " (try `qcoh roof`)\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace qcoh::cli
