#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "loadsense/dataset_io.hpp"
#include "loadsense/eval.hpp"
#include "loadsense/features.hpp"
#include "loadsense/model_io.hpp"
#include "loadsense/rng.hpp"
#include "loadsense/stats.hpp"
#include "loadsense/stats_report.hpp"
#include "loadsense/synth.hpp"

namespace loadsense {

namespace fs = std::filesystem;

namespace {

inline constexpr int kOutputFormatVersion = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string dataset;
  std::string out;
  std::string input;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string task;
  std::string scheme = "multi";
  std::vector<std::string> subsets;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  bool strict = false;
  bool null_data = false;
  int participants = 0;
};

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("LOADSENSE_SEED"); env && *env) {
    std::uint64_t v = 0;
    std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw UsageError("LOADSENSE_SEED must be a non-negative integer, got '" + std::string(s) + "'");
    return v;
  }
  return kDefaultSeed;
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string header_line(std::string_view what, std::uint64_t seed) {
  return "# loadsense " + std::string(what) + " format_version=" + std::to_string(kOutputFormatVersion) +
         " seed=" + std::to_string(seed) + "\n";
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError(path.string() + ": cannot open for writing");
  f << text;
  if (!f) throw DataError(path.string() + ": write failed");
}

// Creates the output directory and proves it is writable before any work.
fs::path prepare_out(const Options& o, bool must_be_empty = false) {
  if (o.out.empty()) throw UsageError("--out is required");
  const fs::path out = fs::absolute(o.out).lexically_normal();
  if (!o.dataset.empty()) {
    const fs::path ds = fs::absolute(o.dataset).lexically_normal();
    auto rel = out.lexically_relative(ds);
    if (!rel.empty() && *rel.begin() != "..")
      throw UsageError("--out must not lie inside the input dataset " + o.dataset);
  }
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) throw DataError(out.string() + ": cannot create output directory");
  if (must_be_empty && !fs::is_empty(out)) throw UsageError(out.string() + ": output directory is not empty");
  const fs::path probe = out / ".loadsense_probe";
  {
    std::ofstream f(probe);
    if (!f) throw DataError(out.string() + ": output directory is not writable");
  }
  fs::remove(probe, ec);
  return out;
}

TaskKind require_task(const Options& o) {
  if (o.task.empty()) throw UsageError("--task is required (nback or visual_search)");
  auto t = parse_task(o.task);
  if (!t) throw UsageError("--task must be nback or visual_search, got '" + o.task + "'");
  return *t;
}

ClassScheme require_scheme(const Options& o) {
  auto s = parse_scheme(o.scheme);
  if (!s) throw UsageError("--scheme must be multi or binary, got '" + o.scheme + "'");
  return *s;
}

std::vector<FeatureSubset> require_subsets(const Options& o) {
  if (o.subsets.empty()) return {kAllSubsets.begin(), kAllSubsets.end()};
  std::vector<FeatureSubset> out;
  for (const auto& key : o.subsets) {
    auto s = parse_subset(key);
    if (!s) throw UsageError("unknown --subset '" + key + "' (all, eye_drive, heart_eye, heart_drive, heart)");
    if (std::find(out.begin(), out.end(), *s) == out.end()) out.push_back(*s);
  }
  // Report columns keep their canonical order.
  std::sort(out.begin(), out.end());
  return out;
}

Dataset load(const Options& o, std::ostream& err) {
  if (o.dataset.empty()) throw UsageError("--dataset is required");
  auto report = load_dataset(o.dataset, {o.strict, o.threads});
  for (const auto& m : report.messages) err << m << "\n";
  return std::move(report.dataset);
}

// Provenance record; thread count and output location are left out so that
// equivalent runs produce identical files.
void write_run_json(const fs::path& out, const std::string& command, std::uint64_t seed,
                    nlohmann::ordered_json options, const std::vector<std::string>& outputs) {
  nlohmann::ordered_json doc;
  doc["format_version"] = kOutputFormatVersion;
  doc["command"] = command;
  doc["seed"] = seed;
  doc["options"] = std::move(options);
  nlohmann::ordered_json keyed{{"command", command}, {"seed", seed}, {"options", doc["options"]}};
  doc["config_hash"] = "fnv1a64:" + hex(fnv1a(keyed.dump()));
  doc["outputs"] = outputs;
  write_text(out / "run.json", doc.dump(2) + "\n");
}

int cmd_synth(const Options& o, std::ostream& out, std::ostream&) {
  GeneratorConfig config;
  if (!o.config.empty()) config = read_generator_config(o.config);
  const std::uint64_t seed = resolve_seed(o);
  config.seed = seed;
  if (o.participants > 0) config.n_participants = o.participants;
  config.validate();
  const fs::path dir = prepare_out(o, true);

  const Dataset ds = o.null_data ? generate_null_dataset(config, o.threads) : generate_dataset(config, o.threads);
  write_dataset(dir, ds);
  const std::string cfg_text = header_line("generator-config", seed) + write_generator_config(config);
  write_text(dir / "generator.cfg", cfg_text);
  write_run_json(dir, "synth", seed,
                 {{"null", o.null_data},
                  {"participants", config.n_participants},
                  {"generator_config_hash", "fnv1a64:" + hex(fnv1a(cfg_text))}},
                 {"generator.cfg"});
  out << "wrote " << ds.size() << " segments for " << ds.participants().size() << " participants to "
      << dir.string() << "\n";
  return kExitOk;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.dataset.empty()) throw UsageError("--dataset is required");
  std::optional<fs::path> dir;
  if (!o.out.empty()) dir = prepare_out(o);
  const std::uint64_t seed = resolve_seed(o);
  auto report = load_dataset(o.dataset, {o.strict, o.threads});

  std::ostringstream text;
  text << header_line("validation", seed);
  std::size_t warnings = 0;
  for (const auto& seg : report.dataset.segments())
    for (const auto& issue : validate_segment(seg)) {
      ++warnings;
      text << segment_directory(fs::path(), seg).string() << ": "
           << (issue.severity == Severity::Error ? "error: " : "warning: ") << issue.message << "\n";
    }
  for (const auto& m : report.messages) text << m << "\n";
  text << report.dataset.size() << " segments loaded, " << report.skipped << " skipped, " << warnings
       << " issues\n";
  out << text.str();
  if (dir) {
    write_text(*dir / "validation.txt", text.str());
    write_run_json(*dir, "validate", seed, {{"dataset", o.dataset}, {"strict", o.strict}}, {"validation.txt"});
  }
  if (report.skipped > 0) {
    err << "validation failed: " << report.skipped << " segment(s) rejected\n";
    return kExitDataError;
  }
  return kExitOk;
}

int cmd_features(const Options& o, std::ostream& out, std::ostream& err) {
  const fs::path dir = prepare_out(o);
  const std::uint64_t seed = resolve_seed(o);
  const Dataset ds = load(o, err);
  const FeatureTable table = featurize_dataset(ds, {}, o.threads);
  write_feature_table(dir / "features.csv", table,
                      "loadsense features format_version=" + std::to_string(kOutputFormatVersion) +
                          " seed=" + std::to_string(seed));
  write_run_json(dir, "features", seed, {{"dataset", o.dataset}, {"strict", o.strict}}, {"features.csv"});
  out << "wrote " << table.size() << " feature rows to " << (dir / "features.csv").string() << "\n";
  return kExitOk;
}

int cmd_stats(const Options& o, std::ostream& out, std::ostream& err) {
  const fs::path dir = prepare_out(o);
  const std::uint64_t seed = resolve_seed(o);
  const Dataset ds = load(o, err);
  const FeatureTable table = featurize_dataset(ds, {}, o.threads);

  std::vector<ConditionMatrix> all;
  for (Dimension d : kAllDimensions) all.push_back(condition_matrix(table, d));
  const auto descriptives = descriptive_table(table);
  const auto screen = reliability_screen(all);
  const std::vector<ConditionMatrix> heart{all[0], all[1]};
  const std::vector<ConditionMatrix> eyes{all[2], all[3]};

  std::ostringstream text;
  text << header_line("stats", seed);
  text << "Descriptive analysis (Mean±Std)\n" << render_descriptive_text(descriptives) << "\n";
  text << render_correlation_text(averaged_correlation_matrix(all),
                                  "Pearson correlation of per-participant averages")
       << "\n";
  text << render_correlation_text(correlation_matrix(eyes), "Pearson correlation between eye features") << "\n";
  text << render_correlation_text(correlation_matrix(heart), "Pearson correlation between heart features")
       << "\n";
  text << render_correlation_text(correlation_matrix(all), "Pearson correlation across all dimensions") << "\n";
  text << render_reliability_text(screen) << "\n";
  text << render_manipulation_text(manipulation_checks(ds));
  write_text(dir / "stats.txt", text.str());
  write_text(dir / "descriptives.csv", header_line("descriptives", seed) + render_descriptive_csv(descriptives));
  write_text(dir / "correlations.csv", header_line("correlations", seed) + render_correlation_csv(correlation_matrix(all)));
  write_run_json(dir, "stats", seed, {{"dataset", o.dataset}, {"strict", o.strict}},
                 {"stats.txt", "descriptives.csv", "correlations.csv"});
  out << text.str();
  return kExitOk;
}

struct Rows {
  Eigen::MatrixXd x;
  Labels y;
};

Rows gather_rows(const FeatureTable& table, const std::vector<std::pair<std::size_t, int>>& rows,
                 const std::set<std::string>& ids, const std::vector<Feature>& cols) {
  Rows r;
  std::vector<std::pair<std::size_t, int>> chosen;
  for (const auto& row : rows)
    if (ids.count(table[row.first].participant)) chosen.push_back(row);
  r.x.resize(static_cast<Eigen::Index>(chosen.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const auto& fv = table[chosen[i].first].features;
    for (std::size_t c = 0; c < cols.size(); ++c)
      r.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          fv.is_missing(cols[c]) ? std::nan("") : fv[cols[c]];
    r.y.push_back(chosen[i].second);
  }
  return r;
}

// Fits a deployable model: participants split into training and a one-third
// validation holdout, grid search, then a greedy ensemble.
int cmd_train(const Options& o, std::ostream& out, std::ostream& err) {
  const TaskKind task = require_task(o);
  const ClassScheme scheme = require_scheme(o);
  // all features unless one subset is named
  const auto subsets = o.subsets.empty() ? std::vector{FeatureSubset::All} : require_subsets(o);
  if (subsets.size() != 1) throw UsageError("train takes exactly one --subset");
  const fs::path dir = prepare_out(o);
  const std::uint64_t seed = resolve_seed(o);
  const Dataset ds = load(o, err);
  const FeatureTable table = featurize_dataset(ds, {}, o.threads);

  const auto rows = select_rows(table, task, scheme);
  std::vector<std::string> ids;
  for (const auto& r : rows) ids.push_back(table[r.first].participant);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() < 2) throw DataError("train: need at least 2 participants with " + std::string(to_string(task)) + " segments");
  auto rng = derived_stream(seed, Stream::Split);
  std::shuffle(ids.begin(), ids.end(), rng);
  const std::size_t n_val = (ids.size() + 2) / 3;
  const std::set<std::string> val(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n_val));
  const std::set<std::string> train(ids.begin() + static_cast<std::ptrdiff_t>(n_val), ids.end());

  const auto cols = subset_features(subsets.front());
  const Rows tr = gather_rows(table, rows, train, cols);
  const Rows va = gather_rows(table, rows, val, cols);
  const auto candidates = grid_search(tr.x, tr.y, va.x, va.y, ModelGrid{}.configs(), o.threads);
  if (candidates.empty()) throw DataError("train: no model configuration could be fitted");
  const auto ensemble = greedy_ensemble(candidates, va.y);
  save_model(dir / "model.json", ensemble.model, seed);

  std::ostringstream text;
  text << header_line("training", seed);
  text << "task=" << to_string(task) << " scheme=" << to_string(scheme) << " subset=" << key_name(subsets.front())
       << " train_participants=" << train.size() << " validation_participants=" << val.size() << "\n";
  for (const auto& c : candidates)
    text << c.config.label() << " validation_accuracy=" << format_double(c.val_accuracy) << "\n";
  text << "ensemble " << ensemble.model.describe() << " validation_accuracy=" << format_double(ensemble.val_accuracy)
       << "\n";
  write_text(dir / "training.txt", text.str());
  write_run_json(dir, "train", seed,
                 {{"dataset", o.dataset},
                  {"strict", o.strict},
                  {"task", to_string(task)},
                  {"scheme", to_string(scheme)},
                  {"subset", key_name(subsets.front())}},
                 {"model.json", "training.txt"});
  out << text.str();
  return kExitOk;
}

int cmd_evaluate(const Options& o, std::ostream& out, std::ostream& err) {
  const TaskKind task = require_task(o);
  const ClassScheme scheme = require_scheme(o);
  const auto subsets = require_subsets(o);
  const fs::path dir = prepare_out(o);
  const std::uint64_t seed = resolve_seed(o);
  const Dataset ds = load(o, err);
  const FeatureTable table = featurize_dataset(ds, {}, o.threads);

  std::vector<std::string> ids;
  for (const auto& r : select_rows(table, task, scheme)) ids.push_back(table[r.first].participant);
  if (ids.empty()) throw DataError("evaluate: no " + std::string(to_string(task)) + " segments in the dataset");
  const SplitPlan plan = make_split_plan(ids, 5, seed);
  NestedCvOptions options;
  options.subsets = subsets;
  options.threads = o.threads;
  EvaluationReport report = run_nested_cv(table, task, scheme, plan, options);
  report.seed = seed;

  const std::string base = report_basename(task, scheme);
  const std::string text = render_report_text(report);
  write_text(dir / (base + ".txt"), text);
  write_text(dir / (base + ".csv"), render_report_csv(report));
  nlohmann::ordered_json subset_keys = nlohmann::ordered_json::array();
  for (auto s : subsets) subset_keys.push_back(key_name(s));
  write_run_json(dir, "evaluate", seed,
                 {{"dataset", o.dataset},
                  {"strict", o.strict},
                  {"task", to_string(task)},
                  {"scheme", to_string(scheme)},
                  {"subsets", subset_keys},
                  {"folds", 5}},
                 {base + ".txt", base + ".csv"});
  out << text;
  return kExitOk;
}

int cmd_report(const Options& o, std::ostream& out, std::ostream&) {
  if (o.input.empty()) throw UsageError("--input is required (a report_<task>_<scheme>.csv file)");
  std::optional<fs::path> dir;
  if (!o.out.empty()) dir = prepare_out(o);
  std::ifstream f(o.input, std::ios::binary);
  if (!f) throw DataError(o.input + ": cannot open");
  std::stringstream buf;
  buf << f.rdbuf();
  const EvaluationReport report = parse_report_csv(buf.str());
  const std::string text = render_report_text(report);
  out << text;
  if (dir) {
    const std::string base = report_basename(report.task, report.scheme);
    write_text(*dir / (base + ".txt"), text);
    write_run_json(*dir, "report", report.seed, {{"input", o.input}}, {base + ".txt"});
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"loadsense: workload sensing from heart, pupil and driving recordings", "loadsense"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_seed = [&](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& v) { o.seed = v; },
                                             "Random seed (default: $LOADSENSE_SEED or 7)");
  };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", o.threads, "Worker threads; results do not depend on it")
        ->check(CLI::Range(1u, 1024u));
  };
  auto add_dataset = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--dataset", o.dataset, "Dataset root directory");
    if (required) opt->required();
    sub->add_flag("--strict", o.strict, "Fail on the first invalid segment instead of skipping it");
  };
  auto add_eval = [&](CLI::App* sub) {
    sub->add_option("--task", o.task, "nback or visual_search");
    sub->add_option("--scheme", o.scheme, "multi (easy/medium/hard) or binary (easy/medium)");
    sub->add_option("--subset", o.subsets, "Feature subset (repeatable): all, eye_drive, heart_eye, heart_drive, heart");
  };

  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset tree");
  synth->add_option("--out", o.out, "Output directory (must be empty)")->required();
  synth->add_option("--config", o.config, "Generator config file (key = value lines)");
  synth->add_option("--participants", o.participants, "Override the number of participants")
      ->check(CLI::Range(1, 999));
  synth->add_flag("--null", o.null_data, "Zero all level effects");
  add_seed(synth);
  add_threads(synth);

  auto* validate = app.add_subcommand("validate", "Check every segment of a dataset");
  add_dataset(validate, true);
  validate->add_option("--out", o.out, "Also write validation.txt here");
  add_seed(validate);
  add_threads(validate);

  auto* features = app.add_subcommand("features", "Write the per-segment feature table");
  add_dataset(features, true);
  features->add_option("--out", o.out, "Output directory")->required();
  add_seed(features);
  add_threads(features);

  auto* stats = app.add_subcommand("stats", "Descriptives, correlations, reliability and manipulation checks");
  add_dataset(stats, true);
  stats->add_option("--out", o.out, "Output directory")->required();
  add_seed(stats);
  add_threads(stats);

  auto* train = app.add_subcommand("train", "Fit and save an ensemble model");
  add_dataset(train, true);
  train->add_option("--out", o.out, "Output directory")->required();
  add_eval(train);
  add_seed(train);
  add_threads(train);

  auto* evaluate = app.add_subcommand("evaluate", "Nested cross-validation report");
  add_dataset(evaluate, true);
  evaluate->add_option("--out", o.out, "Output directory")->required();
  add_eval(evaluate);
  add_seed(evaluate);
  add_threads(evaluate);

  auto* report = app.add_subcommand("report", "Render a report CSV as a text table");
  report->add_option("--input", o.input, "report_<task>_<scheme>.csv")->required();
  report->add_option("--out", o.out, "Also write the text table here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run 'loadsense --help' for usage\n";
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    const std::string name = sub->get_name();
    if (name == "synth") return cmd_synth(o, out, err);
    if (name == "validate") return cmd_validate(o, out, err);
    if (name == "features") return cmd_features(o, out, err);
    if (name == "stats") return cmd_stats(o, out, err);
    if (name == "train") return cmd_train(o, out, err);
    if (name == "evaluate") return cmd_evaluate(o, out, err);
    return cmd_report(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << sub->help();
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
}

}  // namespace loadsense
