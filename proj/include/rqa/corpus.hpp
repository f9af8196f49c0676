#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rqa/embedding.hpp"
#include "rqa/metrics.hpp"
#include "rqa/recurrence.hpp"
#include "rqa/stats.hpp"
#include "rqa/surrogates.hpp"

namespace rqa {

/// Assigns every input whose path (or file name) matches `glob` to `label`.
struct GroupRule {
  std::string label;
  std::string glob;
};

struct RunConfig {
  std::string alphabet = "english-26";  // preset name or definition file
  std::optional<std::filesystem::path> translit;
  EmbeddingConfig embedding;
  MetricsOptions metrics;
  std::size_t n_surrogates = 100;
  std::uint64_t seed = 1;
  std::vector<GroupRule> groups;  // first match wins
  std::filesystem::path out_dir;
  bool plots = false;
  bool verify_oracle = false;
  std::size_t workers = 1;
  std::size_t pixel_budget = 4'000'000;  // max rows * rows for a plot

  /// Throws ConfigError (or EmbeddingError for the embedding block).
  void validate() const;

  /// Label of the first matching rule, empty if none.
  std::string group_for(const std::filesystem::path& path) const;
};

/// Applies flat `key = value` lines onto `config`. Recognised keys: alphabet,
/// translit, m, tau, lmin, surrogates, seed, workers, out, plots,
/// verify_oracle, pixel_budget, trend_exclude_tail and repeated
/// `group.<label> = <glob>`. Relative alphabet/translit/out paths are taken
/// relative to `base_dir`.
void apply_config_text(RunConfig& config, std::string_view text,
                       const std::filesystem::path& base_dir = {});
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Largest input the naive all-pairs oracle is run on.
inline constexpr std::size_t kOracleLetterCap = 5000;

inline constexpr int kReportSchemaVersion = 1;

struct TextRecord {
  std::string source_id;
  std::string path;
  std::string group;
  std::size_t letters = 0;
  std::size_t rows = 0;
  std::uint64_t seed = 0;  // per-text surrogate seed
  RqaMetrics metrics;
  SurrogateSummary surrogates;
  SignificanceReport significance;
  std::optional<bool> oracle_verified;
};

struct FileError {
  std::string path;
  std::string source_id;
  std::string message;
};

struct MetricComparison {
  double mean_a = 0.0;
  double sd_a = 0.0;
  double mean_b = 0.0;
  double sd_b = 0.0;
  stats::TTestResult welch;
  std::optional<stats::FTestResult> f;
  std::string f_error;  // why f is missing
};

struct GroupComparison {
  std::string group_a;
  std::string group_b;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  MetricComparison rec;
  MetricComparison det;
};

struct CorpusReport {
  int schema_version = kReportSchemaVersion;
  std::string alphabet;
  std::string translit;
  EmbeddingConfig embedding;
  MetricsOptions metrics;
  std::size_t n_surrogates = 0;
  std::uint64_t seed = 0;
  std::string generator{kGeneratorName};

  std::vector<TextRecord> records;  // sorted by source_id
  std::vector<FileError> errors;    // sorted by path
  std::optional<stats::CorrelationResult> rec_det_correlation;
  std::string correlation_note;  // set when the correlation is missing
  std::vector<GroupComparison> comparisons;
  std::vector<std::string> warnings;

  const TextRecord* find(std::string_view source_id) const;
};

/// Report plus the pair sets kept for plotting.
struct CorpusRun {
  CorpusReport report;
  std::map<std::string, RecurrencePairSet> pairsets;  // by source_id
};

/// Full pipeline per file. Files that fail (unreadable, no letters, too
/// short, duplicate id) become error records without touching the others.
/// Pair sets are retained when config.plots is set and the plot fits the
/// pixel budget. Throws ConfigError when `paths` is empty or the config is
/// invalid.
CorpusRun run_corpus(const std::vector<std::filesystem::path>& paths, const RunConfig& config);
CorpusReport analyze_corpus(const std::vector<std::filesystem::path>& paths,
                            const RunConfig& config);

/// Welch t and F tests for REC and DET between two labelled groups. Throws
/// ConfigError for an unknown label or a group with fewer than 2 texts.
GroupComparison compare_groups(const CorpusReport& report, std::string_view group_a,
                               std::string_view group_b);

/// JSON document (schema_version 1), byte-stable for a given report.
std::string report_to_json(const CorpusReport& report);

/// source_id,group,rec,det,maxline,ent,trend,z_rec,z_det,p_rec,p_det; rows
/// ordered by source_id, doubles printed with 17 significant digits, an
/// undefined z left empty.
std::string export_rec_det_plane(const CorpusReport& report);

/// Writes <dir>/<source_id>.pbm for each retained pair set. Plots larger
/// than `pixel_budget` are skipped; the returned list holds one warning per
/// skipped plot.
std::vector<std::string> render_plots(const CorpusReport& report,
                                      const std::map<std::string, RecurrencePairSet>& pairsets,
                                      const std::filesystem::path& dir,
                                      std::size_t pixel_budget);

/// Writes report.json, rec_det_plane.csv and (if enabled) plots/ into
/// config.out_dir.
void write_outputs(const CorpusRun& run, const RunConfig& config);

}  // namespace rqa
