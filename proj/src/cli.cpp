#include "confrec/cli.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "confrec/error.hpp"
#include "confrec/evaluation.hpp"
#include "confrec/hybrid.hpp"
#include "confrec/io.hpp"
#include "confrec/synthetic.hpp"
#include "confrec/tie.hpp"

namespace confrec {
namespace {

namespace fs = std::filesystem;

// Everything a command may read; flags not registered for a command keep
// their defaults.
struct RunConfig {
  std::string contacts;
  std::string profiles;
  double beta = 0.1;
  std::vector<double> betas{0.1, 0.2, 0.3, 0.4};
  double gamma = 0.8;
  std::string mode = "minmax";
  std::optional<std::size_t> top_n;
  double total_time = 720.0;
  bool lenient = false;
  std::vector<std::string> methods{"sparp", "c1", "c2"};
  std::string relevance = "either";
  double tau = 0.5;
  double split = 0.7;
  std::uint64_t seed = 42;
  std::size_t n = 77;
  std::string out_path;
  std::string format = "csv";
  std::string series_path;
  std::size_t threads = 1;
};

class OutputError : public Error {
 public:
  using Error::Error;
};

ConferenceConfig conference_config(const RunConfig& cfg) {
  ConferenceConfig c;
  c.total_time_minutes = cfg.total_time;
  c.beta = cfg.beta;
  c.gamma = cfg.gamma;
  c.mode = parse_normalization_mode(cfg.mode).value();
  c.top_n = cfg.top_n;
  c.overflow = cfg.lenient ? OverflowPolicy::lenient : OverflowPolicy::strict;
  return c;
}

Dataset load_valid(const RunConfig& cfg, std::ostream& err) {
  Dataset d = load_dataset(cfg.contacts, cfg.profiles, conference_config(cfg));
  auto violations = validate_dataset(d);
  if (!violations.empty()) {
    for (const auto& v : violations) fmt::print(err, "{}: {} ({})\n", v.subject, v.detail, v.rule);
    throw Error(fmt::format("{} dataset violation(s)", violations.size()));
  }
  return d;
}

// Writes `body` to `path`, or to `out` when no path was given.
void emit(const std::string& path, const std::string& body, std::ostream& out) {
  if (path.empty()) {
    out << body;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw OutputError(fmt::format("cannot write '{}'", path));
  file << body;
  if (!file.flush()) throw OutputError(fmt::format("cannot write '{}'", path));
}

int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  Dataset d = generate_synthetic(SynthesisParams::defaults(cfg.n, cfg.seed));
  const fs::path dir = cfg.out_path.empty() ? fs::path(".") : fs::path(cfg.out_path);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec && !fs::is_directory(dir)) throw OutputError(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));

  std::ostringstream contacts;
  write_contacts(contacts, d.contacts);
  std::ostringstream profiles;
  write_profiles(profiles, d.profiles);
  std::ostringstream sink;
  emit((dir / "contacts.csv").string(), contacts.str(), sink);
  emit((dir / "profiles.csv").string(), profiles.str(), sink);
  out << marginal_summary(d);
  return kExitOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Dataset d = load_dataset(cfg.contacts, cfg.profiles, conference_config(cfg));
  auto violations = validate_dataset(d);
  for (const auto& v : violations) fmt::print(err, "{}: {} ({})\n", v.subject, v.detail, v.rule);
  if (!violations.empty()) return kExitDataError;
  fmt::print(out, "ok: {} participants, {} contact records\n", d.participants.size(), d.contacts.size());
  return kExitOk;
}

int cmd_recommend(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Dataset d = load_valid(cfg, err);
  if (d.config.overflow == OverflowPolicy::lenient) {
    const std::size_t clamped = tie_components(d, d.config.beta).clamped_pairs;
    if (clamped > 0) fmt::print(err, "warning: {} raw tie(s) above 1 clamped\n", clamped);
  }
  auto recs = run_pipeline(d);
  std::ostringstream body;
  write_recommendations(body, recs);
  emit(cfg.out_path, body.str(), out);
  return kExitOk;
}

std::string table_summary(const MetricsReport& report, const std::vector<Method>& methods) {
  std::map<std::pair<double, int>, std::map<Method, const MetricsRow*>> grid;
  for (const auto& r : report.rows) grid[{r.beta, r.bucket_tenths}][r.method] = &r;

  std::string s = fmt::format("relevance: {} tau={}  split: {} seed={}\n", to_string(report.criteria.mode),
                              report.criteria.tau, report.split.train_ratio, report.split.seed);
  s += fmt::format("{:<18}", "coefficient");
  for (Method m : methods) s += fmt::format("{:>12}", fmt::format("MAE {}", to_string(m)));
  for (Method m : methods) s += fmt::format("{:>12}", fmt::format("NMAE {}", to_string(m)));
  s += '\n';
  for (const auto& [key, cells] : grid) {
    s += fmt::format("{:<18}", fmt::format("{:.1f} (beta={})", key.second / 10.0, key.first));
    for (int pass = 0; pass < 2; ++pass) {
      for (Method m : methods) {
        auto it = cells.find(m);
        if (it == cells.end()) {
          s += fmt::format("{:>12}", "-");
        } else {
          s += fmt::format("{:>12.3f}", pass == 0 ? it->second->mae : it->second->nmae);
        }
      }
    }
    s += '\n';
  }
  for (const auto& note : report.notes) s += fmt::format("note: {}\n", note);
  return s;
}

int cmd_experiment(const RunConfig& cfg, const std::vector<double>& betas, std::ostream& out, std::ostream& err) {
  Dataset d = load_valid(cfg, err);
  std::vector<Method> methods;
  for (const auto& m : cfg.methods) methods.push_back(parse_method(m).value());
  RelevanceCriteria crit{parse_relevance_mode(cfg.relevance).value(), cfg.tau};
  SplitSpec spec{cfg.split, cfg.seed};
  const MetricsReport report = run_experiment(d, betas, methods, crit, spec, cfg.threads);

  const ReportFormat format = parse_report_format(cfg.format).value();
  emit(cfg.out_path, export_report(report, format), out);
  if (!cfg.series_path.empty()) {
    std::ostringstream series;
    write_series(series, report);
    emit(cfg.series_path, series.str(), out);
  }
  // With no --out the report owns standard output.
  (cfg.out_path.empty() ? err : out) << table_summary(report, methods);
  return kExitOk;
}

void add_data_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--contacts", cfg.contacts, "Contacts CSV")->required();
  cmd->add_option("--profiles", cfg.profiles, "Profiles CSV")->required();
  cmd->add_option("--total-time", cfg.total_time, "Observation window in minutes")->check(CLI::PositiveNumber);
  cmd->add_flag("--lenient", cfg.lenient, "Clamp raw ties above 1 instead of failing");
}

void add_scoring_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--gamma", cfg.gamma, "Recommendation threshold on the merged score");
  cmd->add_option("--mode", cfg.mode, "Merge normalization")->check(CLI::IsMember({"raw_sum", "minmax"}));
  cmd->add_option("--top-n", cfg.top_n, "Keep at most N suggestions per participant")->check(CLI::PositiveNumber);
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conference participant recommender: social ties merged with Big-Five similarity"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  RunConfig cfg;

  auto* generate = app.add_subcommand("generate", "Write a seeded synthetic contacts.csv and profiles.csv");
  generate->add_option("--seed", cfg.seed, "Random seed");
  generate->add_option("--n", cfg.n, "Participant count")->check(CLI::PositiveNumber);
  generate->add_option("--out", cfg.out_path, "Output directory (default .)");

  auto* validate = app.add_subcommand("validate", "Check a dataset against its invariants");
  add_data_flags(validate, cfg);
  validate->add_option("--beta", cfg.beta)->check(CLI::Range(0.0, 1.0));

  auto* recommend_cmd = app.add_subcommand("recommend", "Emit hybrid recommendations");
  add_data_flags(recommend_cmd, cfg);
  add_scoring_flags(recommend_cmd, cfg);
  recommend_cmd->add_option("--beta", cfg.beta, "Weight of the past tie")->check(CLI::Range(0.0, 1.0));
  recommend_cmd->add_option("--out", cfg.out_path, "Recommendations CSV (default stdout)");

  auto experiment_flags = [&](CLI::App* cmd) {
    add_data_flags(cmd, cfg);
    add_scoring_flags(cmd, cfg);
    cmd->add_option("--methods", cfg.methods, "Methods to score")
        ->delimiter(',')
        ->check(CLI::IsMember({"sparp", "c1", "c2"}));
    cmd->add_option("--relevance", cfg.relevance, "Relevance rule")
        ->check(CLI::IsMember({"test_tie", "test_personality", "either"}));
    cmd->add_option("--tau", cfg.tau, "Relevance threshold");
    cmd->add_option("--split", cfg.split, "Train ratio")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--seed", cfg.seed, "Split seed");
    cmd->add_option("--out", cfg.out_path, "Report file (default stdout)");
    cmd->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--series", cfg.series_path, "Also write per-bucket accuracy/MAE series CSV");
    cmd->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  };
  auto* evaluate = app.add_subcommand("evaluate", "Score methods at one beta");
  experiment_flags(evaluate);
  evaluate->add_option("--beta", cfg.beta, "Weight of the past tie")->check(CLI::Range(0.0, 1.0));
  auto* sweep = app.add_subcommand("sweep", "Score methods over a list of betas");
  experiment_flags(sweep);
  sweep->add_option("--betas", cfg.betas, "Comma-separated betas")->delimiter(',')->check(CLI::Range(0.0, 1.0));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*generate) return cmd_generate(cfg, out);
    if (*validate) return cmd_validate(cfg, out, err);
    if (*recommend_cmd) return cmd_recommend(cfg, out, err);
    if (*evaluate) return cmd_experiment(cfg, {cfg.beta}, out, err);
    if (*sweep) return cmd_experiment(cfg, cfg.betas, out, err);
  } catch (const OutputError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitOutputError;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitDataError;
  }
  return kExitDataError;
}

}  // namespace confrec
