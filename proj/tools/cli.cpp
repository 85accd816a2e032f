#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bellrobust/analysis.hpp"
#include "bellrobust/behavior_io.hpp"
#include "bellrobust/losr.hpp"
#include "bellrobust/quantum.hpp"
#include "bellrobust/robustness.hpp"

namespace bellrobust::cli {

namespace {

struct RunConfig {
  double tolerance = 1e-9;
  std::string out_path;
  bool no_validate = false;
  int dimension_ceiling = kDefaultDimensionCeiling;
  int workers = 1;
  std::size_t max_strategies = kDefaultMaxStrategies;
  std::optional<unsigned> seed;  // accepted, unused by deterministic commands
};

struct BehaviorSource {
  std::string file;
  int max_entangled = 0;
  std::string schmidt;
  std::string cglmp;
  bool tsirelson = false;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> v;
  for (const auto& s : split(text, ',')) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size()) throw InputError("not a number: '" + s + "'");
    v.push_back(x);
  }
  return v;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> v;
  for (double x : parse_reals(text)) {
    if (x != std::floor(x)) throw InputError("expected integers in '" + text + "'");
    v.push_back(static_cast<int>(x));
  }
  return v;
}

void add_source_options(CLI::App* cmd, BehaviorSource& src) {
  cmd->add_option("--behavior", src.file, "Behavior JSON file");
  cmd->add_option("--max-entangled", src.max_entangled,
                  "Use the maximally entangled state of local dimension D");
  cmd->add_option("--schmidt", src.schmidt,
                  "Use sum_i sqrt(q_i)|ii> with coefficients q0,q1,...");
  cmd->add_option("--cglmp", src.cglmp,
                  "CGLMP measurement settings D,d_eff for the state");
  cmd->add_flag("--tsirelson", src.tsirelson,
                "Use |Psi_2> with the D = d_eff = 2 settings");
}

Behavior resolve_behavior(const BehaviorSource& src, const RunConfig& cfg) {
  const int given = !src.file.empty() + (src.max_entangled > 0) +
                    !src.schmidt.empty() + src.tsirelson;
  if (given != 1)
    throw InputError(
        "give exactly one of --behavior, --max-entangled, --schmidt, "
        "--tsirelson");
  if (!src.file.empty()) {
    ReadOptions ro;
    ro.validate = !cfg.no_validate;
    return read_behavior(src.file, ro);
  }
  if (src.tsirelson) return cglmp_behavior(max_entangled(2), 2);

  const PureState state = src.max_entangled > 0
                              ? max_entangled(src.max_entangled)
                              : schmidt_state(SchmidtSpec(parse_reals(src.schmidt)));
  if (src.cglmp.empty()) throw InputError("--cglmp D,d_eff is required");
  const std::vector<int> dd = parse_ints(src.cglmp);
  if (dd.size() != 2) throw InputError("--cglmp expects D,d_eff");
  if (dd[0] != state.dim)
    throw InputError("--cglmp D=" + std::to_string(dd[0]) +
                     " does not match the state dimension " +
                     std::to_string(state.dim));
  return cglmp_behavior(state, dd[1]);
}

RobustnessOptions robustness_options(const RunConfig& cfg) {
  RobustnessOptions opt;
  opt.lp_tol = cfg.tolerance;
  opt.max_strategies = cfg.max_strategies;
  if (cfg.no_validate) opt.validation_tol = std::numeric_limits<double>::infinity();
  return opt;
}

ScanOptions scan_options(const RunConfig& cfg) {
  ScanOptions opt;
  opt.robustness = robustness_options(cfg);
  opt.workers = cfg.workers;
  opt.dimension_ceiling = cfg.dimension_ceiling;
  return opt;
}

// Writes to --out when given, otherwise to the data stream.
class Sink {
 public:
  Sink(const RunConfig& cfg, std::ostream& fallback) {
    if (!cfg.out_path.empty()) {
      file_ = std::make_unique<std::ofstream>(cfg.out_path);
      if (!*file_) throw InputError("cannot write " + cfg.out_path);
    }
    stream_ = file_ ? file_.get() : &fallback;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::string fixed6(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << (std::abs(v) < 5e-7 ? 0.0 : v);
  return os.str();
}

int cmd_compute(const BehaviorSource& src, const std::string& measures,
                const RunConfig& cfg, std::ostream& out) {
  const Behavior p = resolve_behavior(src, cfg);
  const RobustnessOptions opt = robustness_options(cfg);
  MeasureSelection which{false, false, false};
  for (const auto& m : split(measures, ',')) {
    switch (parse_measure(m)) {
      case Measure::WhiteNoise: which.white_noise = true; break;
      case Measure::Standard: which.standard = true; break;
      case Measure::Generalized: which.generalized = true; break;
    }
  }
  const RobustnessRecord r = robustness_record(p, which, opt);
  nlohmann::ordered_json doc;
  if (r.r_w) doc["r_w"] = round_significant(*r.r_w);
  if (r.r_s) doc["r_s"] = round_significant(*r.r_s);
  if (r.r_g) doc["r_g"] = round_significant(*r.r_g);
  if (r.r_s) doc["nu"] = round_significant(2.0 * *r.r_s + 1.0);
  doc["local"] = is_local(p, opt);
  Sink sink(cfg, out);
  *sink << doc.dump() << "\n";
  return kOk;
}

int cmd_scan_dim(int d_min, int d_max, const RunConfig& cfg,
                 std::ostream& out) {
  const auto rows = scan_dimensions(d_min, d_max, scan_options(cfg));
  Sink sink(cfg, out);
  *sink << "D,r_s,r_g\n";
  for (const auto& r : rows)
    *sink << static_cast<int>(r.parameters[0]) << "," << fixed6(*r.record.r_s)
          << "," << fixed6(*r.record.r_g) << "\n";
  return kOk;
}

int cmd_scan_simplex(int d_eff, int resolution, const RunConfig& cfg,
                     std::ostream& out) {
  const auto rows = scan_simplex(d_eff, resolution, scan_options(cfg));
  Sink sink(cfg, out);
  *sink << "q0,q1,q2,r_s,r_g\n";
  for (const auto& r : rows)
    *sink << fixed6(r.parameters[0]) << "," << fixed6(r.parameters[1]) << ","
          << fixed6(r.parameters[2]) << "," << fixed6(*r.record.r_s) << ","
          << fixed6(*r.record.r_g) << "\n";
  return kOk;
}

int cmd_scan_path(int d_eff, const std::string& paths, int steps,
                  const RunConfig& cfg, std::ostream& out) {
  std::vector<int> which = paths == "all" ? std::vector<int>{1, 2, 3}
                                          : parse_ints(paths);
  std::vector<ScanRecord> rows;
  for (int path : which) {
    auto part = scan_path(d_eff, path, steps, scan_options(cfg));
    rows.insert(rows.end(), part.begin(), part.end());
  }
  Sink sink(cfg, out);
  *sink << "path,p,r_s,r_g\n";
  for (const auto& r : rows)
    *sink << static_cast<int>(r.parameters[0]) << "," << fixed6(r.parameters[1])
          << "," << fixed6(*r.record.r_s) << "," << fixed6(*r.record.r_g)
          << "\n";
  return kOk;
}

int cmd_monotonicity(const BehaviorSource& src, int k_max,
                     const RunConfig& cfg, std::ostream& out) {
  const Behavior p = resolve_behavior(src, cfg);
  const auto rows = monotonicity_table(p, k_max, robustness_options(cfg));
  Sink sink(cfg, out);
  *sink << "k,r_w,r_s,r_g\n";
  for (const auto& r : rows)
    *sink << r.k << "," << fixed6(r.r_w) << "," << fixed6(r.r_s) << ","
          << fixed6(r.r_g) << "\n";
  return kOk;
}

int cmd_inequivalence(const std::string& file_a, const std::string& file_b,
                      const std::string& q1s, const std::string& q2s,
                      double tol, const RunConfig& cfg, std::ostream& out) {
  BehaviorSource sa, sb;
  sa.file = file_a;
  sb.file = file_b;
  const Behavior a = resolve_behavior(sa, cfg);
  const Behavior b = resolve_behavior(sb, cfg);
  const Measure q1 = parse_measure(q1s), q2 = parse_measure(q2s);
  MeasureSelection which{false, false, false};
  for (Measure m : {q1, q2}) {
    if (m == Measure::WhiteNoise) which.white_noise = true;
    if (m == Measure::Standard) which.standard = true;
    if (m == Measure::Generalized) which.generalized = true;
  }
  const RobustnessOptions opt = robustness_options(cfg);
  const RobustnessRecord ra = robustness_record(a, which, opt);
  const RobustnessRecord rb = robustness_record(b, which, opt);
  const bool verdict = inequivalent(ra, rb, q1, q2, tol);

  Sink sink(cfg, out);
  for (Measure m : {q1, q2})
    *sink << measure_name(m) << "(a) = " << fixed6(*ra.get(m)) << ", "
          << measure_name(m) << "(b) = " << fixed6(*rb.get(m)) << "\n";
  *sink << "inequivalent: " << (verdict ? "true" : "false") << "\n";
  if (verdict)
    *sink << "The two monotones order the behaviors oppositely, so no LOSR "
             "operation transforms either behavior into the other.\n";
  else
    *sink << "The monotones agree on the order; this does not imply that an "
             "LOSR operation connects the behaviors.\n";
  return kOk;
}

int cmd_validate(const BehaviorSource& src, double tol, const RunConfig& cfg,
                 std::ostream& out) {
  RunConfig raw = cfg;
  raw.no_validate = true;
  const Behavior p = resolve_behavior(src, raw);
  const ValidationReport report = validate_behavior(p, tol);
  Sink sink(cfg, out);
  *sink << report.to_string();
  if (report.ok()) *sink << "\n";
  return report.ok() ? kOk : kInvalidInput;
}

int cmd_behavior(const BehaviorSource& src, const RunConfig& cfg,
                 std::ostream& out) {
  const Behavior p = resolve_behavior(src, cfg);
  Sink sink(cfg, out);
  *sink << serialize_behavior(p) << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv("BELL_ROBUST_MAX_STRATEGIES")) {
    try {
      cfg.max_strategies = std::stoull(env);
    } catch (const std::exception&) {
      err << "BELL_ROBUST_MAX_STRATEGIES is not an integer: " << env << "\n";
      return kUsage;
    }
  }

  CLI::App app{"Robustness measures of Bell nonlocality"};
  app.require_subcommand(1);
  app.add_option("--tol", cfg.tolerance, "LP tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out_path, "Write data here instead of stdout");
  app.add_flag("--no-validate", cfg.no_validate,
               "Accept behavior files that fail validation");
  app.add_option("--max-dim", cfg.dimension_ceiling,
                 "Dimension ceiling for scan-dim");
  app.add_option("--workers", cfg.workers, "Worker threads for scans")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Reserved for randomized drivers");
  app.fallthrough();

  BehaviorSource src;
  std::string measures = "w,s,g";
  auto* compute = app.add_subcommand("compute", "Robustness of one behavior");
  add_source_options(compute, src);
  compute->add_option("--measures", measures, "Comma list from w,s,g");

  int d_min = 2, d_max = 8;
  auto* scan_dim = app.add_subcommand("scan-dim", "Maximally entangled states over D");
  scan_dim->add_option("--min", d_min);
  scan_dim->add_option("--max", d_max);

  int d_eff = 3, resolution = 20, steps = 21;
  std::string paths = "all";
  auto* scan_simplex_cmd =
      app.add_subcommand("scan-simplex", "Grid over D = 3 Schmidt coefficients");
  scan_simplex_cmd->add_option("--d-eff", d_eff)->check(CLI::IsMember({2, 3}));
  scan_simplex_cmd->add_option("--resolution", resolution);

  auto* scan_path_cmd = app.add_subcommand("scan-path", "Parametrized state paths");
  scan_path_cmd->add_option("--d-eff", d_eff)->check(CLI::IsMember({2, 3}));
  scan_path_cmd->add_option("--path", paths, "1, 2, 3, a comma list, or all");
  scan_path_cmd->add_option("--steps", steps);

  int k_max = 4;
  auto* mono = app.add_subcommand("monotonicity", "Measures under outcome extension");
  add_source_options(mono, src);
  mono->add_option("--k-max", k_max);

  std::string file_a, file_b, q1 = "s", q2 = "g";
  double ineq_tol = kInequivalenceTol;
  auto* ineq = app.add_subcommand("inequivalence", "Order reversal between two measures");
  ineq->add_option("--a", file_a)->required();
  ineq->add_option("--b", file_b)->required();
  ineq->add_option("--q1", q1);
  ineq->add_option("--q2", q2);
  ineq->add_option("--margin", ineq_tol, "Strict-inequality margin");

  double validate_tol = kFileValidationTol;
  auto* validate = app.add_subcommand("validate", "Check a behavior");
  add_source_options(validate, src);
  validate->add_option("--validate-tol", validate_tol);

  auto* behavior = app.add_subcommand("behavior", "Print a behavior as JSON");
  add_source_options(behavior, src);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*compute) return cmd_compute(src, measures, cfg, out);
    if (*scan_dim) return cmd_scan_dim(d_min, d_max, cfg, out);
    if (*scan_simplex_cmd) return cmd_scan_simplex(d_eff, resolution, cfg, out);
    if (*scan_path_cmd) return cmd_scan_path(d_eff, paths, steps, cfg, out);
    if (*mono) return cmd_monotonicity(src, k_max, cfg, out);
    if (*ineq)
      return cmd_inequivalence(file_a, file_b, q1, q2, ineq_tol, cfg, out);
    if (*validate) return cmd_validate(src, validate_tol, cfg, out);
    if (*behavior) return cmd_behavior(src, cfg, out);
  } catch (const SizeError& e) {
    err << "limit exceeded: " << e.what() << "\n";
    return kLimitExceeded;
  } catch (const ResourceError& e) {
    err << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::out_of_range& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kUsage;
}

}  // namespace bellrobust::cli
