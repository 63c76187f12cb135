// simsurp: similarity-adjusted surprisal and information value from
// language-model dumps, theorem checks, and reading-time evaluation.

#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "simsurp/pipeline.hpp"

namespace {

using simsurp::pipeline::RunConfig;

void add_corpus_options(CLI::App* cmd, RunConfig& cfg, bool corpus_required) {
  auto* corpus = cmd->add_option("--corpus", cfg.corpus_path, "JSON-lines corpus file")
                     ->check(CLI::ExistingFile);
  if (corpus_required) corpus->required();
  cmd->add_option("--unigrams", cfg.unigrams_path, "unigram count table (surface<TAB>count)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--oov", cfg.oov, "unseen-word unigram policy")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, simsurp::OovPolicy>{
              {"laplace_one", simsurp::OovPolicy::laplace_one},
              {"min_observed", simsurp::OovPolicy::min_observed}},
          CLI::ignore_case));
}

void add_metric_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--similarity", cfg.similarity,
                  "identity | cosine:noncontextual | cosine:contextual | pos | orthographic, "
                  "optionally '@<alpha>'; repeatable");
  cmd->add_option("--samples", cfg.samples, "alternatives drawn per context with --mc")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--mc", cfg.force_monte_carlo,
                "sample alternatives even where the full candidate distribution is available");
  cmd->add_option("--aggregation", cfg.aggregation, "subword-to-word aggregation")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, simsurp::Aggregation>{{"sum", simsurp::Aggregation::sum},
                                                      {"first", simsurp::Aggregation::first}},
          CLI::ignore_case));
}

void add_cv_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--folds", cfg.folds, "cross-validation folds")->check(CLI::Range(2, 26));
  cmd->add_option("--spillover", cfg.spillover, "preceding words entered as lagged predictors");
  cmd->add_option("--baseline-predictors", cfg.baseline_predictors,
                  "comma-separated baseline columns; 'name#L' overrides the lag count");
  cmd->add_flag("--fold-by-doc", cfg.fold_by_doc, "keep documents within one fold");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Similarity-adjusted surprisal toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "seed for every random choice")->capture_default_str();
  app.add_option("--out", cfg.out_path, "output file (default: stdout)");

  auto* validate = app.add_subcommand("validate", "check a corpus file against its invariants");
  validate->add_option("--corpus", cfg.corpus_path, "JSON-lines corpus file")
      ->required()
      ->check(CLI::ExistingFile);

  auto* metrics = app.add_subcommand("metrics", "per-word metric table (TSV)");
  add_corpus_options(metrics, cfg, true);
  add_metric_options(metrics, cfg);
  metrics->add_option("--alpha", cfg.alphas, "similarity temperature (>= 1)")->expected(1);

  app.add_subcommand("oracle", "brute-force checks of the surprisal/information value identities");

  auto* evaluate = app.add_subcommand("evaluate", "cross-validated Delta LLH with permutation tests");
  add_corpus_options(evaluate, cfg, false);
  add_metric_options(evaluate, cfg);
  add_cv_options(evaluate, cfg);
  evaluate->add_option("--alpha", cfg.alphas, "similarity temperature (>= 1)")->expected(1);
  evaluate->add_option("--metrics", cfg.metrics_path, "metric table written by 'metrics'")
      ->check(CLI::ExistingFile);
  evaluate->add_option("--predictors", cfg.predictors,
                       "comma-separated predictor set to test; repeatable");

  auto* sweep = app.add_subcommand("sweep-alpha", "Delta LLH as a function of the temperature (CSV)");
  add_corpus_options(sweep, cfg, true);
  add_metric_options(sweep, cfg);
  add_cv_options(sweep, cfg);
  sweep->add_option("--alpha", cfg.alphas, "temperature grid (default 1,2,4,...,64)")
      ->delimiter(',');

  // Global options are accepted after the subcommand too.
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path, std::ios::binary);
    if (!file) {
      std::cerr << simsurp::pipeline::error_record(cfg.command, "io_error",
                                                   "cannot write '" + cfg.out_path + "'")
                << '\n';
      return 2;
    }
    out = &file;
  }
  // Human-readable summaries go to stdout only when the report goes to a file.
  std::ostream& info = cfg.out_path.empty() ? std::cerr : std::cout;
  return simsurp::pipeline::run(cfg, {*out, info, std::cerr}, &info);
}
