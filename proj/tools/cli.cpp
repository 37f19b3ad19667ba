#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "crosswise/crosswise.hpp"
#include "json.hpp"

namespace crosswise::cli {
namespace {

using Json = nlohmann::ordered_json;

// Error raised for flag combinations CLI11 cannot express.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string output;
  bool quiet = false;
};

struct IntervalArgs {
  std::int64_t n = 0;
  std::int64_t z = 0;
  double q = 0.0;
  double delta = 0.95;
  std::string method = "cp";
};

struct CoverageArgs {
  std::int64_t n = 0;
  double q = 0.0;
  double delta = 0.95;
  std::string method = "cp";
  std::string grid;
  std::optional<double> d;
};

struct SampleSizeArgs {
  std::string criterion;
  double pi0 = 0.0;
  double gamma = 0.0;
  double delta = 0.95;
  double d = 0.0;
  std::optional<double> lambda;
  std::int64_t lower_bound = SearchOptions{}.lower_bound;
  std::int64_t cap = SearchOptions{}.cap;
  bool grid_check = false;
};

struct PrivacyArgs {
  std::optional<double> pi0;
  std::optional<double> gamma;
  std::optional<double> pi;
  std::optional<double> q;
};

Json document(const char* command, Json inputs, Json results) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  doc["inputs"] = std::move(inputs);
  doc["results"] = std::move(results);
  return doc;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json optional_number(std::optional<double> v) { return v ? Json(*v) : Json(nullptr); }

std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double parse_real(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
  }
  return v;
}

GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) {
    throw UsageError("--pi-grid expects start:stop:step, got '" + text + "'");
  }
  GridSpec g{parse_real(parts[0], "grid start"), parse_real(parts[1], "grid stop"), parse_real(parts[2], "grid step")};
  if (!(g.step > 0.0)) {
    throw UsageError("--pi-grid step must be positive");
  }
  return g;
}

void require_json(const Globals& g, const char* command) {
  if (!g.output.empty() && g.output != "json") {
    throw UsageError(std::string("--output ") + g.output + " is not available for " + command);
  }
}

Json interval_json(const IntervalEstimate& ci) {
  Json r;
  r["method"] = std::string(to_string(ci.method));
  r["lower"] = ci.lower;
  r["upper"] = ci.upper;
  r["length"] = ci.length();
  r["lower_degenerate"] = ci.lower_degenerate;
  r["upper_degenerate"] = ci.upper_degenerate;
  r["collapsed"] = ci.collapsed;
  r["raw_lower"] = ci.raw_lower;
  r["raw_upper"] = ci.raw_upper;
  return r;
}

Outcome cmd_interval(const Globals& g, const IntervalArgs& a) {
  require_json(g, "interval");
  const Method method = parse_method(a.method);
  const ModelConfig config(a.n, a.q);
  const ObservedCount z(config, a.z);
  const ConfidenceLevel level(a.delta);

  const IntervalEstimate ci = interval(method, config, z, level);
  Json results = interval_json(ci);
  const double pi_cm = mle(config, z).value();
  results["pi_cm"] = pi_cm;
  results["pi_c"] = unbiased_point(config, z);
  if (config.n() >= 2) {
    results["variance_unbiased"] = unbiased_estimate(config, z).variance_unbiased;
  } else {
    results["variance_unbiased"] = nullptr;
  }
  if (method == Method::cp) {
    if (pi_cm > 0.0 && pi_cm < 1.0) {
      const auto dp = disclosure_probabilities(Probability(pi_cm), Probability(config.q()));
      results["privacy"] = Json{{"pi", pi_cm}, {"p11", dp.p11}, {"p10", dp.p10}};
    } else {
      results["privacy"] = nullptr;  // undefined at a clipped estimate
    }
  }

  const Json inputs{{"n", a.n}, {"z", a.z}, {"q", a.q}, {"delta", a.delta}, {"method", std::string(to_string(method))}};
  return {kOk, dump(document("interval", inputs, results)), ""};
}

Outcome cmd_coverage(const Globals& g, const CoverageArgs& a) {
  const std::string output = g.output.empty() ? "csv" : g.output;
  const Method method = parse_method(a.method);
  const GridSpec grid = parse_grid(a.grid);
  const ModelConfig config(a.n, a.q);
  const ConfidenceLevel level(a.delta);
  const CoverageCurve cv = curve(config, level, method, grid, a.d);

  if (output == "csv") {
    std::string out = "pi,coverage,expected_covering_length";
    if (a.d) out += ",assured_length_prob,length_prob";
    out += "\n";
    for (const EvaluationPoint& p : cv.grid) {
      out += csv_number(p.pi) + "," + csv_number(p.coverage) + "," + csv_number(p.expected_covering_length);
      if (a.d) out += "," + csv_number(*p.assured_length_prob) + "," + csv_number(*p.length_prob);
      out += "\n";
    }
    return {kOk, out, ""};
  }

  Json rows = Json::array();
  for (const EvaluationPoint& p : cv.grid) {
    Json row{{"pi", p.pi}, {"coverage", p.coverage}, {"expected_covering_length", p.expected_covering_length}};
    if (a.d) {
      row["assured_length_prob"] = *p.assured_length_prob;
      row["length_prob"] = *p.length_prob;
    }
    rows.push_back(std::move(row));
  }
  const Json inputs{{"n", a.n},
                    {"q", a.q},
                    {"delta", a.delta},
                    {"method", std::string(to_string(method))},
                    {"pi_grid", {{"start", grid.start}, {"stop", grid.stop}, {"step", grid.step}}},
                    {"d", optional_number(a.d)}};
  return {kOk, dump(document("coverage", inputs, Json{{"rows", rows}})), ""};
}

Outcome cmd_samplesize(const Globals& g, const SampleSizeArgs& a) {
  require_json(g, "samplesize");
  const Criterion criterion = a.criterion == "expected" ? Criterion::expected_length : Criterion::assured_length;
  const DesignSpec spec{a.pi0, a.gamma, a.delta, a.d, a.lambda};

  const auto t0 = std::chrono::steady_clock::now();
  const SampleSizeResult r = min_sample_size(spec, criterion, SearchOptions{a.lower_bound, a.cap});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  Json results;
  results["criterion"] = a.criterion;
  results["n_min"] = r.n_min;
  results["q_used"] = r.q_used;
  results["criterion_value_at_n"] = r.criterion_value_at_n;
  results["criterion_value_at_n_minus_1"] = optional_number(r.criterion_value_at_n_minus_1);
  results["pilot_n"] = r.pilot_n;
  results["scan_window"] = {r.scan_window.first, r.scan_window.second};
  results["evaluations"] = r.evaluations;

  std::string err;
  if (a.grid_check) {
    const auto violations = check_design_grid(spec, criterion, r.n_min);
    Json list = Json::array();
    for (const GridViolation& v : violations) list.push_back({{"pi", v.pi}, {"q", v.q}, {"value", v.value}});
    results["grid_violations"] = list;
    if (!violations.empty() && !g.quiet) {
      err = "note: criterion fails at " + std::to_string(violations.size()) + " design-grid point(s) away from (pi0, q_min)\n";
    }
  }
  results["duration_seconds"] = seconds;

  const Json inputs{{"criterion", a.criterion}, {"pi0", a.pi0},       {"gamma", a.gamma},
                    {"delta", a.delta},         {"d", a.d},           {"lambda", optional_number(a.lambda)},
                    {"lower_bound", a.lower_bound}, {"cap", a.cap}, {"grid_check", a.grid_check}};
  return {kOk, dump(document("samplesize", inputs, results)), err};
}

Outcome cmd_privacy(const Globals& g, const PrivacyArgs& a) {
  require_json(g, "privacy");
  const bool design = a.pi0 || a.gamma;
  const bool point = a.pi || a.q;
  if (design == point) {
    throw UsageError("privacy needs exactly one of {--pi0, --gamma} or {--pi, --q}");
  }
  if (design) {
    if (!a.pi0 || !a.gamma) throw UsageError("privacy needs both --pi0 and --gamma");
    const PrivacySpec spec(*a.pi0, *a.gamma);
    const Json inputs{{"pi0", *a.pi0}, {"gamma", *a.gamma}};
    return {kOk, dump(document("privacy", inputs, Json{{"q_min", q_min(spec).value()}})), ""};
  }
  if (!a.pi || !a.q) throw UsageError("privacy needs both --pi and --q");
  const auto dp = disclosure_probabilities(Probability(*a.pi), Probability(*a.q));
  const Json inputs{{"pi", *a.pi}, {"q", *a.q}};
  return {kOk, dump(document("privacy", inputs, Json{{"p11", dp.p11}, {"p10", dp.p10}})), ""};
}

std::string one_line(std::string msg) {
  std::replace(msg.begin(), msg.end(), '\n', ' ');
  while (!msg.empty() && msg.back() == ' ') msg.pop_back();
  return "crosswise: " + msg + "\n";
}

}  // namespace

Outcome run(const std::vector<std::string>& args) {
  CLI::App app{"Exact and asymptotic confidence intervals for the crosswise model", "crosswise"};
  app.require_subcommand(1);

  Globals g;
  app.add_option("--output", g.output, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--quiet", g.quiet, "Suppress notes on the error stream");
  app.fallthrough();

  IntervalArgs ia;
  auto* interval_cmd = app.add_subcommand("interval", "Interval for pi from an observed count");
  interval_cmd->add_option("--n", ia.n, "Sample size")->required();
  interval_cmd->add_option("--z", ia.z, "Number of respondents reporting Z = 1")->required();
  interval_cmd->add_option("--q", ia.q, "Neutral-question YES probability")->required();
  interval_cmd->add_option("--delta", ia.delta, "Confidence level")->capture_default_str();
  interval_cmd->add_option("--method", ia.method, "cp, wp or ap")->capture_default_str();

  CoverageArgs ca;
  double coverage_d = 0.0;
  auto* coverage_cmd = app.add_subcommand("coverage", "Exact operating characteristics over a pi grid");
  coverage_cmd->add_option("--n", ca.n, "Sample size")->required();
  coverage_cmd->add_option("--q", ca.q, "Neutral-question YES probability")->required();
  coverage_cmd->add_option("--delta", ca.delta, "Confidence level")->capture_default_str();
  coverage_cmd->add_option("--method", ca.method, "cp, wp or ap")->capture_default_str();
  coverage_cmd->add_option("--pi-grid", ca.grid, "start:stop:step")->required();
  auto* d_opt = coverage_cmd->add_option("--d", coverage_d, "Length bound for the assured-length columns");

  SampleSizeArgs sa;
  double lambda = 0.0;
  auto* ss_cmd = app.add_subcommand("samplesize", "Smallest sample size meeting a length criterion");
  ss_cmd->add_option("criterion", sa.criterion, "expected or assured")
      ->required()
      ->check(CLI::IsMember({"expected", "assured"}));
  ss_cmd->add_option("--pi0", sa.pi0, "Upper bound on pi")->required();
  ss_cmd->add_option("--gamma", sa.gamma, "Largest tolerated disclosure probability")->required();
  ss_cmd->add_option("--delta", sa.delta, "Confidence level")->capture_default_str();
  ss_cmd->add_option("--d", sa.d, "Target length")->required();
  auto* lambda_opt = ss_cmd->add_option("--lambda", lambda, "Assurance parameter (assured criterion)");
  ss_cmd->add_option("--lower-bound", sa.lower_bound, "Smallest n considered")->capture_default_str();
  ss_cmd->add_option("--cap", sa.cap, "Largest n considered")->capture_default_str();
  ss_cmd->add_flag("--grid-check", sa.grid_check, "Re-check the answer over the design region");

  PrivacyArgs pa;
  double pi0 = 0, gamma = 0, pi = 0, q = 0;
  auto* privacy_cmd = app.add_subcommand("privacy", "Privacy algebra: q_min or disclosure probabilities");
  auto* pi0_opt = privacy_cmd->add_option("--pi0", pi0, "Upper bound on pi");
  auto* gamma_opt = privacy_cmd->add_option("--gamma", gamma, "Largest tolerated disclosure probability");
  auto* pi_opt = privacy_cmd->add_option("--pi", pi, "Sensitive proportion");
  auto* q_opt = privacy_cmd->add_option("--q", q, "Neutral-question YES probability");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success&) {
    return {kOk, app.help(), ""};
  } catch (const CLI::ParseError& e) {
    return {kUsage, "", one_line(e.what())};
  }

  try {
    if (interval_cmd->parsed()) return cmd_interval(g, ia);
    if (coverage_cmd->parsed()) {
      if (*d_opt) ca.d = coverage_d;
      return cmd_coverage(g, ca);
    }
    if (ss_cmd->parsed()) {
      if (*lambda_opt) sa.lambda = lambda;
      return cmd_samplesize(g, sa);
    }
    if (*pi0_opt) pa.pi0 = pi0;
    if (*gamma_opt) pa.gamma = gamma;
    if (*pi_opt) pa.pi = pi;
    if (*q_opt) pa.q = q;
    return cmd_privacy(g, pa);
  } catch (const UsageError& e) {
    return {kUsage, "", one_line(e.what())};
  } catch (const InfeasibleDesign& e) {
    return {kInfeasible, "", one_line(e.what())};
  } catch (const DomainError& e) {
    return {kUsage, "", one_line(e.what())};
  } catch (const std::exception& e) {
    return {kNumeric, "", one_line(e.what())};
  }
}

}  // namespace crosswise::cli
