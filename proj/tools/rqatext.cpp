// rqatext: recurrence quantification of letter streams.
//
//   rqatext analyze <paths...> --alphabet <preset|file> --out <dir> [options]
//
// Exit status: 0 all files analyzed, 1 some files failed, 2 fatal.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rqa/corpus.hpp"
#include "rqa/error.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitFatal = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recurrence quantification analysis of letter sequences"};
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand("analyze", "Analyze a corpus of UTF-8 text files");

  std::vector<std::string> inputs;
  std::string alphabet;
  std::string translit;
  std::size_t m = 3;
  std::size_t tau = 1;
  std::size_t lmin = 2;
  std::size_t surrogates = 100;
  std::uint64_t seed = 1;
  std::string groups_file;
  std::string out_dir;
  std::size_t workers = 1;
  std::size_t pixel_budget = 4'000'000;
  bool plots = false;
  bool verify_oracle = false;
  bool trend_exclude_tail = false;

  analyze->add_option("paths", inputs, "Text files, one text per file")->required();
  auto* o_alphabet =
      analyze->add_option("--alphabet", alphabet, "Alphabet preset (english-26, italian-21) or file");
  auto* o_translit = analyze->add_option("--translit", translit, "Transliteration table (source=target lines)");
  auto* o_m = analyze->add_option("--m", m, "Embedding dimension")->check(CLI::PositiveNumber);
  auto* o_tau = analyze->add_option("--tau", tau, "Embedding delay")->check(CLI::PositiveNumber);
  auto* o_lmin = analyze->add_option("--lmin", lmin, "Minimum diagonal line length")->check(CLI::Range(2, 1 << 30));
  auto* o_surr = analyze->add_option("--surrogates", surrogates, "Shuffled surrogates per text");
  auto* o_seed = analyze->add_option("--seed", seed, "Master seed");
  analyze->add_option("--groups", groups_file, "Config file (key = value, group.<label> = <glob>)")
      ->check(CLI::ExistingFile);
  auto* o_out = analyze->add_option("--out", out_dir, "Output directory");
  auto* o_workers = analyze->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  auto* o_budget = analyze->add_option("--pixel-budget", pixel_budget, "Max pixels per recurrence plot");
  auto* o_plots = analyze->add_flag("--plots", plots, "Write plots/<id>.pbm");
  auto* o_verify = analyze->add_flag("--verify-oracle", verify_oracle,
                                     "Cross-check recurrences against the all-pairs oracle (<= 5000 letters)");
  auto* o_tail = analyze->add_flag("--trend-exclude-tail", trend_exclude_tail,
                                   "Drop the last 10% of offsets from the TREND fit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitFatal;
  }

  rqa::RunConfig config;
  try {
    if (!groups_file.empty()) rqa::apply_config_file(config, groups_file);
    // flags override the config file
    if (o_alphabet->count()) config.alphabet = alphabet;
    if (o_translit->count()) config.translit = translit;
    if (o_m->count()) config.embedding.dimension = m;
    if (o_tau->count()) config.embedding.delay = tau;
    if (o_lmin->count()) config.embedding.lmin = lmin;
    if (o_surr->count()) config.n_surrogates = surrogates;
    if (o_seed->count()) config.seed = seed;
    if (o_out->count()) config.out_dir = out_dir;
    if (o_workers->count()) config.workers = workers;
    if (o_budget->count()) config.pixel_budget = pixel_budget;
    if (o_plots->count()) config.plots = true;
    if (o_verify->count()) config.verify_oracle = true;
    if (o_tail->count()) config.metrics.trend_exclude_tail = true;
    if (config.out_dir.empty()) throw rqa::ConfigError("--out is required");

    std::vector<std::filesystem::path> paths(inputs.begin(), inputs.end());
    const auto run = rqa::run_corpus(paths, config);
    rqa::write_outputs(run, config);

    const auto& report = run.report;
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    for (const auto& e : report.errors) std::cerr << "error: " << e.path << ": " << e.message << '\n';
    std::cerr << report.records.size() << " analyzed, " << report.errors.size() << " failed -> "
              << config.out_dir.string() << '\n';

    if (report.records.empty()) return kExitFatal;
    return report.errors.empty() ? kExitOk : kExitPartial;
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << '\n';
    return kExitFatal;
  }
}
