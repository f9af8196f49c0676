#include "rqa/corpus.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "parallel.hpp"
#include "rqa/alphabet.hpp"
#include "rqa/error.hpp"

namespace rqa {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError("config key '" + std::string(key) + "': not a valid number: '" +
                      std::string(value) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
  if (value == "0" || value == "false" || value == "no" || value == "off") return false;
  throw ConfigError("config key '" + std::string(key) + "': expected a boolean");
}

std::filesystem::path relative_to(const std::filesystem::path& base, std::string_view value) {
  std::filesystem::path p{std::string(value)};
  if (p.is_relative() && !base.empty()) return base / p;
  return p;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw ConfigError("error reading " + path.string());
  return buf.str();
}

bool glob_match(const std::string& glob, const std::string& s) {
  return ::fnmatch(glob.c_str(), s.c_str(), 0) == 0;
}

MetricComparison compare_metric(const std::vector<double>& a, const std::vector<double>& b) {
  MetricComparison c;
  c.mean_a = stats::mean(a);
  c.sd_a = std::sqrt(stats::sample_variance(a));
  c.mean_b = stats::mean(b);
  c.sd_b = std::sqrt(stats::sample_variance(b));
  c.welch = stats::welch_t(a, b);
  try {
    c.f = stats::f_test(a, b);
  } catch (const StatsError& e) {
    c.f_error = e.what();
  }
  return c;
}

struct Outcome {
  std::optional<TextRecord> record;
  std::optional<RecurrencePairSet> pairs;
  std::string error;
  std::vector<std::string> warnings;
};

}  // namespace

// --- config -----------------------------------------------------------------

void RunConfig::validate() const {
  embedding.validate();
  if (n_surrogates < 2) throw ConfigError("surrogates must be >= 2");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (alphabet.empty()) throw ConfigError("alphabet must be set");
  for (const auto& g : groups) {
    if (g.label.empty()) throw ConfigError("group label must not be empty");
    if (g.glob.empty()) throw ConfigError("group '" + g.label + "' has an empty pattern");
  }
}

std::string RunConfig::group_for(const std::filesystem::path& path) const {
  const std::string full = path.string();
  const std::string name = path.filename().string();
  for (const auto& g : groups) {
    if (glob_match(g.glob, full) || glob_match(g.glob, name)) return g.label;
  }
  return {};
}

void apply_config_text(RunConfig& config, std::string_view text,
                       const std::filesystem::path& base_dir) {
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));

    if (key.starts_with("group.")) {
      config.groups.push_back({std::string(key.substr(6)), std::string(value)});
    } else if (key == "alphabet") {
      const auto presets = Alphabet::preset_names();
      const bool is_preset = std::find(presets.begin(), presets.end(), value) != presets.end();
      config.alphabet = is_preset ? std::string(value) : relative_to(base_dir, value).string();
    } else if (key == "translit") {
      config.translit = relative_to(base_dir, value);
    } else if (key == "out") {
      config.out_dir = relative_to(base_dir, value);
    } else if (key == "m") {
      config.embedding.dimension = parse_number<std::size_t>(key, value);
    } else if (key == "tau") {
      config.embedding.delay = parse_number<std::size_t>(key, value);
    } else if (key == "lmin") {
      config.embedding.lmin = parse_number<std::size_t>(key, value);
    } else if (key == "surrogates") {
      config.n_surrogates = parse_number<std::size_t>(key, value);
    } else if (key == "seed") {
      config.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "workers") {
      config.workers = parse_number<std::size_t>(key, value);
    } else if (key == "pixel_budget") {
      config.pixel_budget = parse_number<std::size_t>(key, value);
    } else if (key == "plots") {
      config.plots = parse_bool(key, value);
    } else if (key == "verify_oracle") {
      config.verify_oracle = parse_bool(key, value);
    } else if (key == "trend_exclude_tail") {
      config.metrics.trend_exclude_tail = parse_bool(key, value);
    } else {
      throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" +
                        std::string(key) + "'");
    }
  }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  apply_config_text(config, read_file(path), path.parent_path());
}

// --- pipeline -----------------------------------------------------------------

const TextRecord* CorpusReport::find(std::string_view source_id) const {
  for (const auto& r : records) {
    if (r.source_id == source_id) return &r;
  }
  return nullptr;
}

CorpusRun run_corpus(const std::vector<std::filesystem::path>& paths, const RunConfig& config) {
  if (paths.empty()) throw ConfigError("no input files");
  config.validate();
  const Alphabet alphabet = Alphabet::resolve(config.alphabet);
  std::optional<TransliterationTable> translit;
  if (config.translit) translit = TransliterationTable::load(*config.translit, alphabet);

  // Process in path order so duplicate-id resolution does not depend on argv order.
  std::vector<std::filesystem::path> sorted = paths;
  std::sort(sorted.begin(), sorted.end());

  std::vector<Outcome> outcomes(sorted.size());
  std::set<std::string> seen_ids;
  std::vector<bool> duplicate(sorted.size(), false);
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    duplicate[k] = !seen_ids.insert(sorted[k].stem().string()).second;
  }

  const std::size_t outer = std::min(config.workers, sorted.size());
  const std::size_t inner = std::max<std::size_t>(1, config.workers / std::max<std::size_t>(outer, 1));

  detail::parallel_for(sorted.size(), outer, [&](std::size_t k) {
    const auto& path = sorted[k];
    const std::string id = path.stem().string();
    Outcome& out = outcomes[k];
    try {
      if (duplicate[k]) throw ConfigError("duplicate source_id '" + id + "'");
      const auto seq = normalize(read_file(path), alphabet, translit ? &*translit : nullptr, id);
      const auto es = embed(seq, config.embedding);
      auto pairs = recurrence_set_grouped(es);

      TextRecord rec;
      rec.source_id = id;
      rec.path = path.string();
      rec.group = config.group_for(path);
      rec.letters = seq.size();
      rec.rows = es.rows();
      rec.seed = seed_for_source(config.seed, id);
      rec.metrics = compute_metrics(pairs, config.embedding, config.metrics);

      if (config.verify_oracle) {
        if (seq.size() <= kOracleLetterCap) {
          if (!(recurrence_set_naive(es) == pairs)) {
            throw Error("grouped recurrence set disagrees with the all-pairs oracle");
          }
          rec.oracle_verified = true;
        } else {
          out.warnings.push_back(id + ": oracle check skipped (" + std::to_string(seq.size()) +
                                 " letters > " + std::to_string(kOracleLetterCap) + ")");
        }
      }

      rec.surrogates =
          surrogate_distribution(seq, config.embedding, config.n_surrogates, rec.seed, inner);
      rec.significance = significance(rec.metrics, rec.surrogates);

      if (config.plots) {
        const auto pixels = static_cast<std::uint64_t>(es.rows()) * es.rows();
        if (pixels <= config.pixel_budget) {
          out.pairs = std::move(pairs);
        } else {
          out.warnings.push_back(id + ": plot skipped (" + std::to_string(es.rows()) + "x" +
                                 std::to_string(es.rows()) + " exceeds pixel budget " +
                                 std::to_string(config.pixel_budget) + ")");
        }
      }
      out.record = std::move(rec);
    } catch (const std::exception& e) {
      out.error = e.what();
    }
  });

  CorpusRun run;
  CorpusReport& report = run.report;
  report.alphabet = alphabet.name();
  report.translit = config.translit ? config.translit->string() : std::string{};
  report.embedding = config.embedding;
  report.metrics = config.metrics;
  report.n_surrogates = config.n_surrogates;
  report.seed = config.seed;

  for (std::size_t k = 0; k < sorted.size(); ++k) {
    auto& out = outcomes[k];
    for (auto& w : out.warnings) report.warnings.push_back(std::move(w));
    if (out.record) {
      if (out.pairs) run.pairsets.emplace(out.record->source_id, std::move(*out.pairs));
      report.records.push_back(std::move(*out.record));
    } else {
      report.errors.push_back({sorted[k].string(), sorted[k].stem().string(), out.error});
    }
  }
  std::sort(report.records.begin(), report.records.end(),
            [](const TextRecord& a, const TextRecord& b) { return a.source_id < b.source_id; });

  if (report.records.size() >= 3) {
    std::vector<double> rec;
    std::vector<double> det;
    for (const auto& r : report.records) {
      rec.push_back(r.metrics.rec);
      det.push_back(r.metrics.det);
    }
    try {
      report.rec_det_correlation = stats::pearson(rec, det);
    } catch (const StatsError& e) {
      report.correlation_note = e.what();
    }
  } else {
    report.correlation_note = "fewer than 3 analyzed texts";
  }

  std::map<std::string, std::size_t> group_sizes;
  for (const auto& r : report.records) {
    if (!r.group.empty()) ++group_sizes[r.group];
  }
  for (auto a = group_sizes.begin(); a != group_sizes.end(); ++a) {
    for (auto b = std::next(a); b != group_sizes.end(); ++b) {
      if (a->second >= 2 && b->second >= 2) {
        report.comparisons.push_back(compare_groups(report, a->first, b->first));
      } else {
        report.warnings.push_back("groups '" + a->first + "' and '" + b->first +
                                  "' not compared: each needs at least 2 texts");
      }
    }
  }
  return run;
}

CorpusReport analyze_corpus(const std::vector<std::filesystem::path>& paths,
                            const RunConfig& config) {
  return run_corpus(paths, config).report;
}

GroupComparison compare_groups(const CorpusReport& report, std::string_view group_a,
                               std::string_view group_b) {
  std::vector<double> rec_a, rec_b, det_a, det_b;
  for (const auto& r : report.records) {
    if (r.group == group_a) {
      rec_a.push_back(r.metrics.rec);
      det_a.push_back(r.metrics.det);
    }
    if (r.group == group_b) {
      rec_b.push_back(r.metrics.rec);
      det_b.push_back(r.metrics.det);
    }
  }
  const auto check = [](std::string_view label, std::size_t n) {
    if (n == 0) throw ConfigError("unknown group '" + std::string(label) + "'");
    if (n < 2) {
      throw ConfigError("group '" + std::string(label) + "' has " + std::to_string(n) +
                        " text; need at least 2");
    }
  };
  check(group_a, rec_a.size());
  check(group_b, rec_b.size());

  GroupComparison g;
  g.group_a = std::string(group_a);
  g.group_b = std::string(group_b);
  g.n_a = rec_a.size();
  g.n_b = rec_b.size();
  g.rec = compare_metric(rec_a, rec_b);
  g.det = compare_metric(det_a, det_b);
  return g;
}

std::vector<std::string> render_plots(const CorpusReport& report,
                                      const std::map<std::string, RecurrencePairSet>& pairsets,
                                      const std::filesystem::path& dir,
                                      std::size_t pixel_budget) {
  std::vector<std::string> warnings;
  std::filesystem::create_directories(dir);
  for (const auto& rec : report.records) {
    const auto it = pairsets.find(rec.source_id);
    if (it == pairsets.end()) continue;
    const auto rows = it->second.rows();
    if (static_cast<std::uint64_t>(rows) * rows > pixel_budget) {
      warnings.push_back(rec.source_id + ": plot skipped (" + std::to_string(rows) + "x" +
                         std::to_string(rows) + " exceeds pixel budget " +
                         std::to_string(pixel_budget) + ")");
      continue;
    }
    std::ofstream out(dir / (rec.source_id + ".pbm"), std::ios::binary);
    if (!out) throw ConfigError("cannot write plot for " + rec.source_id);
    recurrence_plot_bitmap(it->second).write_pbm(out);
  }
  return warnings;
}

void write_outputs(const CorpusRun& run, const RunConfig& config) {
  if (config.out_dir.empty()) throw ConfigError("output directory not set");
  std::filesystem::create_directories(config.out_dir);
  const auto write = [](const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << content;
  };
  write(config.out_dir / "report.json", report_to_json(run.report));
  write(config.out_dir / "rec_det_plane.csv", export_rec_det_plane(run.report));
  if (config.plots) {
    render_plots(run.report, run.pairsets, config.out_dir / "plots", config.pixel_budget);
  }
}

}  // namespace rqa
