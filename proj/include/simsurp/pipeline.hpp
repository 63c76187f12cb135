#pragma once

// Command implementations behind the `simsurp` CLI. Each command reads its
// inputs, writes its report to `out` and returns a process exit status.
// Every report starts with a '#' line carrying the format version, a hash
// of the configuration and the seed; no timestamps, so identical configs
// give byte-identical files.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "simsurp/errors.hpp"
#include "simsurp/interchange.hpp"
#include "simsurp/metrics.hpp"
#include "simsurp/oracle.hpp"
#include "simsurp/regression.hpp"
#include "simsurp/similarity.hpp"

namespace simsurp::pipeline {

inline constexpr int kReportFormatVersion = 1;
inline const std::vector<double> kDefaultAlphaGrid{1, 2, 4, 8, 16, 32, 64};

enum class ExitCode : int { ok = 0, failed_checks = 1, error = 2 };

struct RunConfig {
  std::string command;
  std::string corpus_path;
  std::string unigrams_path;
  std::string metrics_path;
  std::vector<std::string> similarity;
  std::vector<double> alphas;
  std::size_t samples = kDefaultSampleCount;
  std::uint64_t seed = 0;
  std::size_t folds = kDefaultFolds;
  std::size_t spillover = kDefaultSpillover;
  std::vector<std::string> predictors;
  std::string baseline_predictors;
  std::string out_path;
  bool fold_by_doc = false;
  bool force_monte_carlo = false;
  Aggregation aggregation = Aggregation::sum;
  OovPolicy oov = OovPolicy::laplace_one;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["corpus"] = corpus_path;
    j["unigrams"] = unigrams_path;
    j["metrics"] = metrics_path;
    j["similarity"] = similarity;
    j["alphas"] = alphas;
    j["samples"] = samples;
    j["seed"] = seed;
    j["folds"] = folds;
    j["spillover"] = spillover;
    j["predictors"] = predictors;
    j["baseline_predictors"] = baseline_predictors;
    j["fold_by_doc"] = fold_by_doc;
    j["estimator"] = force_monte_carlo ? "mc" : "auto";
    j["aggregation"] = aggregation == Aggregation::sum ? "sum" : "first";
    j["oov"] = oov == OovPolicy::laplace_one ? "laplace_one" : "min_observed";
    return j;
  }
};

/// FNV-1a 64 of the canonical JSON form of the config (output path excluded).
inline std::string config_hash(const RunConfig& config) {
  const std::string text = config.to_json().dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string provenance_line(const RunConfig& config) {
  return "# simsurp format_version=" + std::to_string(kReportFormatVersion) +
         " command=" + config.command + " config_hash=" + config_hash(config) +
         " seed=" + std::to_string(config.seed);
}

inline std::string format_number(double v) {
  if (std::isnan(v)) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_fixed(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

/// Machine-readable error record for stderr.
inline std::string error_record(const std::string& command, const std::string& kind,
                                const std::string& message) {
  nlohmann::ordered_json j;
  j["error"]["command"] = command;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  return j.dump();
}

// --- similarity specs ---------------------------------------------------------

/// Parsed --similarity values; `alpha_override` applies to specs without an
/// explicit "@alpha".
inline std::vector<SimilaritySpec> resolve_specs(const std::vector<std::string>& texts,
                                                 std::optional<double> alpha_override) {
  std::vector<SimilaritySpec> specs;
  for (const auto& t : texts) {
    SimilaritySpec s = parse_similarity_spec(t);
    if (alpha_override && t.find('@') == std::string::npos) {
      s.alpha = *alpha_override;
      s.validate();
    }
    specs.push_back(s);
  }
  return specs;
}

inline void check_embedding_source(const CorpusHeader& header, const SimilaritySpec& spec) {
  if (spec.kind != SimilarityKind::embedding_cosine || !header.embedding_source) return;
  if (*header.embedding_source != spec.embedding_source)
    throw domain_error("corpus embeddings are " +
                       std::string(*header.embedding_source == EmbeddingSource::contextual
                                       ? "contextual"
                                       : "noncontextual") +
                       " but '" + spec.label() + "' was requested");
}

// --- metrics table --------------------------------------------------------------

inline std::string sas_column(const SimilaritySpec& s) { return "sim_adjusted_surprisal:" + s.label(); }
inline std::string iv_column(const SimilaritySpec& s) { return "info_value:" + s.label(); }

struct RecordError {
  std::size_t record = 0;
  std::string doc_id;
  std::size_t word_index = 0;
  std::string column;
  std::string kind;
  std::string message;
};

struct MetricsResult {
  MetricsTable table;
  std::vector<std::string> surfaces;
  std::vector<std::string> column_order;
  std::vector<RecordError> errors;
};

/// Per-word predictors: length, optional log unigram frequency, surprisal,
/// and per spec similarity-adjusted surprisal and information value. Record
/// failures leave NaN cells and are listed in `errors`.
inline MetricsResult compute_metrics(const Corpus& corpus, const UnigramTable* unigrams,
                                     const std::vector<SimilaritySpec>& specs,
                                     const RecordMetricOptions& options) {
  MetricsResult result;
  auto& t = result.table;
  result.column_order = {"length"};
  if (unigrams) result.column_order.push_back("log_unigram_freq");
  result.column_order.push_back("surprisal");
  for (const auto& s : specs) {
    check_embedding_source(corpus.header, s);
    result.column_order.push_back(sas_column(s));
    result.column_order.push_back(iv_column(s));
  }
  for (const auto& name : result.column_order) {
    if (t.columns.contains(name)) throw domain_error("similarity '" + name + "' requested twice");
    t.columns[name].assign(corpus.records.size(), std::numeric_limits<double>::quiet_NaN());
  }

  std::vector<SimilarityKernel> kernels;
  for (const auto& s : specs) kernels.emplace_back(s, corpus.header.tagset_set());
  RecordMetricOptions opts = options;
  if (!opts.sampling_seed) opts.sampling_seed = corpus.header.sampling_seed;

  for (std::size_t i = 0; i < corpus.records.size(); ++i) {
    const auto& r = corpus.records[i];
    t.keys.push_back({r.doc_id, r.word_index});
    t.targets.push_back(r.mean_rt);
    result.surfaces.push_back(r.surface);
    t.columns["length"][i] = static_cast<double>(decode_utf8(r.surface).size());
    if (unigrams) t.columns["log_unigram_freq"][i] = unigrams->log_frequency(r.surface);
    t.columns["surprisal"][i] = word_surprisal(r);
    for (std::size_t k = 0; k < specs.size(); ++k) {
      try {
        const auto m =
            compute_record_metrics(r, i, kernels[k], opts, corpus.header.subword_space_marker);
        t.columns[sas_column(specs[k])][i] = m.sim_adjusted_surprisal.value;
        t.columns[iv_column(specs[k])][i] = m.information_value.value;
      } catch (const error& e) {
        result.errors.push_back({i, r.doc_id, r.word_index, specs[k].label(), e.kind(), e.what()});
      }
    }
  }
  return result;
}

inline std::string tsv_escape(std::string s) {
  for (char& c : s)
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  return s;
}

inline void write_metrics_tsv(std::ostream& out, const RunConfig& config,
                              const MetricsResult& result) {
  out << provenance_line(config) << '\n';
  out << "doc_id\tword_index\tsurface\tmean_rt";
  for (const auto& c : result.column_order) out << '\t' << c;
  out << '\n';
  const auto& t = result.table;
  for (std::size_t i = 0; i < t.size(); ++i) {
    out << tsv_escape(t.keys[i].doc_id) << '\t' << t.keys[i].word_index << '\t'
        << tsv_escape(result.surfaces[i]) << '\t' << format_number(t.targets[i]);
    for (const auto& c : result.column_order) out << '\t' << format_number(t.columns.at(c)[i]);
    out << '\n';
  }
}

inline MetricsTable read_metrics_tsv(std::istream& in) {
  MetricsTable t;
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto tab = s.find('\t', start);
      cells.push_back(s.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    return cells;
  };
  std::optional<std::size_t> doc_col, idx_col, rt_col;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto cells = split(line);
    if (header.empty()) {
      header = std::move(cells);
      for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == "doc_id") doc_col = c;
        else if (header[c] == "word_index") idx_col = c;
        else if (header[c] == "mean_rt") rt_col = c;
        else if (header[c] != "surface") t.columns[header[c]];
      }
      if (!doc_col || !idx_col || !rt_col)
        throw parse_error(lineno, "metrics table needs doc_id, word_index and mean_rt columns");
      continue;
    }
    if (cells.size() != header.size())
      throw parse_error(lineno, "expected " + std::to_string(header.size()) + " cells, got " +
                                    std::to_string(cells.size()));
    auto number = [&](const std::string& cell) {
      if (cell == "NA" || cell == "nan") return std::numeric_limits<double>::quiet_NaN();
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size())
        throw parse_error(lineno, "'" + cell + "' is not a number");
      return v;
    };
    const double idx = number(cells[*idx_col]);
    if (!(idx >= 0) || idx != std::floor(idx))
      throw parse_error(lineno, "word_index must be a non-negative integer");
    t.keys.push_back({cells[*doc_col], static_cast<std::size_t>(idx)});
    t.targets.push_back(number(cells[*rt_col]));
    for (std::size_t c = 0; c < header.size(); ++c)
      if (c != *doc_col && c != *idx_col && c != *rt_col && header[c] != "surface")
        t.columns[header[c]].push_back(number(cells[c]));
  }
  if (header.empty()) throw parse_error(0, "metrics table is empty");
  return t;
}

// --- evaluation -------------------------------------------------------------------

struct EvaluationRow {
  std::string predictors;
  std::string baseline;
  bool nested = true;
  Comparison comparison;
};

inline bool is_nested(const PredictorSet& with_set, const PredictorSet& without_set) {
  const auto w = with_set.column_names();
  for (const auto& c : without_set.column_names())
    if (std::find(w.begin(), w.end(), c) == w.end()) return false;
  return true;
}

/// Cross-validated comparison of `predictors` against `baseline`, both
/// scored on the rows usable by either (the larger spillover decides).
inline EvaluationRow evaluate_pair(const MetricsTable& table, const PredictorSet& with_set,
                                   const PredictorSet& without_set, const CvOptions& cv,
                                   const std::string& with_text, const std::string& without_text) {
  const auto X = build_design_matrix(table, union_of(with_set, without_set));
  EvaluationRow row{with_text, without_text, is_nested(with_set, without_set), {}};
  row.comparison = compare_predictor_sets(X, with_set, without_set, cv);
  return row;
}

inline std::string default_baseline(const MetricsTable& table) {
  return table.columns.contains("log_unigram_freq") ? "length,log_unigram_freq" : "length";
}

inline std::string join_deltas(const std::vector<FoldReport>& folds) {
  std::string s;
  for (const auto& f : folds) s += (s.empty() ? "" : ",") + format_number(f.delta);
  return s;
}

inline void write_evaluation_tsv(std::ostream& out, const RunConfig& config,
                                 const std::string& dataset,
                                 const std::vector<EvaluationRow>& rows) {
  out << provenance_line(config) << '\n';
  out << "dataset\tpredictors\tbaseline\tnested\trows\texcluded_rows\tfolds\t"
         "delta_llh_x100\tp_value\tstars\tfold_deltas\n";
  for (const auto& r : rows) {
    const auto& c = r.comparison;
    out << dataset << '\t' << r.predictors << '\t' << r.baseline << '\t'
        << (r.nested ? "yes" : "no") << '\t' << c.rows << '\t' << c.excluded_rows << '\t'
        << c.folds.size() << '\t' << format_number(100.0 * c.mean_delta) << '\t'
        << format_number(c.p_value) << '\t' << c.stars << '\t' << join_deltas(c.folds) << '\n';
  }
}

inline void write_evaluation_pretty(std::ostream& out, const std::string& dataset,
                                    const std::vector<EvaluationRow>& rows) {
  out << "Delta LLH (10^-2 nats per word), " << dataset << "\n";
  std::size_t width = 10;
  for (const auto& r : rows) width = std::max(width, r.predictors.size());
  for (const auto& r : rows) {
    const auto& c = r.comparison;
    out << "  " << std::left << std::setw(static_cast<int>(width)) << r.predictors << "  vs "
        << r.baseline << ":  " << std::right << std::setw(8) << format_fixed(100.0 * c.mean_delta, 2)
        << std::left << std::setw(4) << c.stars << "  p = " << format_fixed(c.p_value, 4) << "  ("
        << c.rows << " rows, " << c.folds.size() << " folds)\n";
  }
}

// --- commands -------------------------------------------------------------------------

struct Streams {
  std::ostream& out;   // primary report
  std::ostream& info;  // human-readable progress and summaries
  std::ostream& err;   // machine-readable error records
};

inline std::optional<UnigramTable> maybe_unigrams(const RunConfig& config) {
  if (config.unigrams_path.empty()) return std::nullopt;
  return load_unigram_table(config.unigrams_path, config.oov);
}

inline RecordMetricOptions record_options(const RunConfig& config) {
  RecordMetricOptions o;
  o.aggregation = config.aggregation;
  o.force_monte_carlo = config.force_monte_carlo;
  o.sample_count = config.samples;
  o.seed = config.seed;
  return o;
}

inline std::optional<double> single_alpha(const RunConfig& config) {
  if (config.alphas.empty()) return std::nullopt;
  if (config.alphas.size() > 1) throw domain_error("--alpha given more than once");
  return config.alphas.front();
}

inline ExitCode run_validate(const RunConfig& config, Streams io) {
  const Corpus corpus = read_corpus_file(config.corpus_path);
  const auto report = validate_corpus(corpus);
  io.out << provenance_line(config) << '\n';
  io.out << "record\tdoc_id\tword_index\trule\tmessage\n";
  for (const auto& v : report.violations)
    io.out << v.record << '\t' << tsv_escape(v.doc_id) << '\t' << v.word_index << '\t' << v.rule
           << '\t' << tsv_escape(v.message) << '\n';
  io.info << corpus.records.size() << " records, " << report.violations.size()
          << " violation(s)\n";
  return report.ok() ? ExitCode::ok : ExitCode::failed_checks;
}

inline ExitCode run_metrics(const RunConfig& config, Streams io) {
  const Corpus corpus = load_corpus(config.corpus_path);
  const auto unigrams = maybe_unigrams(config);
  const auto specs = resolve_specs(config.similarity, single_alpha(config));
  const auto result =
      compute_metrics(corpus, unigrams ? &*unigrams : nullptr, specs, record_options(config));
  write_metrics_tsv(io.out, config, result);
  for (const auto& e : result.errors) {
    nlohmann::ordered_json j;
    j["error"]["command"] = config.command;
    j["error"]["kind"] = e.kind;
    j["error"]["record"] = e.record;
    j["error"]["doc_id"] = e.doc_id;
    j["error"]["word_index"] = e.word_index;
    j["error"]["similarity"] = e.column;
    j["error"]["message"] = e.message;
    io.err << j.dump() << '\n';
  }
  io.info << result.table.size() << " words, " << specs.size() << " similarity spec(s), "
          << result.errors.size() << " record error(s)\n";
  return result.errors.empty() ? ExitCode::ok : ExitCode::failed_checks;
}

/// Identity checks over seeded random fixtures plus the fixed two-word case.
inline std::vector<oracle::OracleReport> oracle_reports(std::uint64_t seed) {
  oracle::SuiteOptions options;
  options.seed = seed;
  auto reports = oracle::run_suite(options);

  // p = (0.75, 0.25), z(a, b) = 0.5
  oracle::SimilarityMatrix z(2, 0.5);
  const NextWordDistribution dist({{"a", 0.75}, {"b", 0.25}});
  auto fixed = oracle::check_theorem1_identity(dist, z);
  fixed.check = "two_word_fixture_theorem1";
  reports.push_back(fixed);
  oracle::OracleReport cost = oracle::make_report("two_word_fixture_sim_adjusted_cost");
  const oracle::SimAwareModel model(oracle::MeaningModel({0.75, 0.25}, {"a", "b"}), z);
  cost.cases = 1;
  cost.max_gap = std::abs(oracle::sim_adjusted_cost(model, "a") + std::log(0.875));
  reports.push_back(cost);
  return reports;
}

inline ExitCode run_oracle(const RunConfig& config, Streams io) {
  const auto reports = oracle_reports(config.seed);
  io.out << provenance_line(config) << '\n';
  io.out << "check\tcases\tmax_gap\ttolerance\tranks_agree\tstatus\n";
  bool all = true;
  for (const auto& r : reports) {
    all = all && r.passed();
    io.out << r.check << '\t' << r.cases << '\t' << format_number(r.max_gap) << '\t'
           << format_number(r.tolerance) << '\t' << (r.ranks_agree ? "yes" : "no") << '\t'
           << (r.passed() ? "pass" : "FAIL") << '\n';
    io.info << (r.passed() ? "[pass] " : "[FAIL] ") << r.check << "  cases=" << r.cases
            << "  max_gap=" << format_number(r.max_gap) << '\n';
  }
  return all ? ExitCode::ok : ExitCode::failed_checks;
}

inline CvOptions cv_options(const RunConfig& config) {
  CvOptions cv;
  cv.folds = config.folds;
  cv.seed = config.seed;
  cv.fold_by_doc = config.fold_by_doc;
  return cv;
}

inline std::string dataset_name(const std::string& path) {
  auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  if (const auto dot = base.find('.'); dot != std::string::npos && dot > 0) base.resize(dot);
  return base;
}

inline MetricsTable metrics_for_evaluation(const RunConfig& config, std::string& dataset) {
  if (!config.metrics_path.empty()) {
    std::ifstream in(config.metrics_path, std::ios::binary);
    if (!in) throw parse_error(0, "cannot open metrics table '" + config.metrics_path + "'");
    dataset = dataset_name(config.metrics_path);
    return read_metrics_tsv(in);
  }
  if (config.corpus_path.empty()) throw domain_error("evaluate needs --metrics or --corpus");
  dataset = dataset_name(config.corpus_path);
  const Corpus corpus = load_corpus(config.corpus_path);
  const auto unigrams = maybe_unigrams(config);
  const auto specs = resolve_specs(config.similarity, single_alpha(config));
  auto result =
      compute_metrics(corpus, unigrams ? &*unigrams : nullptr, specs, record_options(config));
  return std::move(result.table);
}

inline ExitCode run_evaluate(const RunConfig& config, Streams io, std::ostream* pretty) {
  std::string dataset;
  const MetricsTable table = metrics_for_evaluation(config, dataset);
  const std::string baseline_text =
      config.baseline_predictors.empty() ? default_baseline(table) : config.baseline_predictors;
  const auto baseline = PredictorSet::parse(baseline_text, config.spillover);
  std::vector<std::string> with_texts = config.predictors;
  if (with_texts.empty()) with_texts.push_back(baseline_text + ",surprisal");
  std::vector<EvaluationRow> rows;
  for (const auto& text : with_texts)
    rows.push_back(evaluate_pair(table, PredictorSet::parse(text, config.spillover), baseline,
                                 cv_options(config), text, baseline_text));
  write_evaluation_tsv(io.out, config, dataset, rows);
  if (pretty) write_evaluation_pretty(*pretty, dataset, rows);
  return ExitCode::ok;
}

struct SweepPoint {
  double alpha = 1.0;
  Comparison sim_adjusted;
};

struct SweepResult {
  Comparison surprisal;
  std::vector<SweepPoint> points;
};

/// Delta LLH over `baseline` of baseline + sim-adjusted surprisal at each
/// alpha, next to baseline + surprisal.
inline SweepResult sweep_alpha(const Corpus& corpus, const UnigramTable* unigrams,
                               SimilaritySpec spec, const std::vector<double>& alphas,
                               const std::string& baseline_text, std::size_t spillover,
                               const RecordMetricOptions& options, const CvOptions& cv) {
  std::vector<SimilaritySpec> specs;
  for (double a : alphas) {
    spec.alpha = a;
    spec.validate();
    specs.push_back(spec);
  }
  const auto result = compute_metrics(corpus, unigrams, specs, options);
  if (!result.errors.empty())
    throw error(result.errors.front().kind, result.errors.front().message);
  const auto baseline = PredictorSet::parse(baseline_text, spillover);
  SweepResult sweep;
  {
    const auto with_set = PredictorSet::parse(baseline_text + ",surprisal", spillover);
    sweep.surprisal =
        evaluate_pair(result.table, with_set, baseline, cv, "", "").comparison;
  }
  for (const auto& s : specs) {
    const auto with_set = PredictorSet::parse(baseline_text + "," + sas_column(s), spillover);
    sweep.points.push_back(
        {s.alpha, evaluate_pair(result.table, with_set, baseline, cv, "", "").comparison});
  }
  return sweep;
}

inline ExitCode run_sweep_alpha(const RunConfig& config, Streams io) {
  const Corpus corpus = load_corpus(config.corpus_path);
  const auto unigrams = maybe_unigrams(config);
  if (config.similarity.size() != 1)
    throw domain_error("sweep-alpha takes exactly one --similarity");
  SimilaritySpec spec = parse_similarity_spec(config.similarity.front());
  check_embedding_source(corpus.header, spec);
  const auto& alphas = config.alphas.empty() ? kDefaultAlphaGrid : config.alphas;
  const std::string baseline_text = config.baseline_predictors.empty()
                                        ? (unigrams ? "length,log_unigram_freq" : "length")
                                        : config.baseline_predictors;
  const auto sweep = sweep_alpha(corpus, unigrams ? &*unigrams : nullptr, spec, alphas,
                                 baseline_text, config.spillover, record_options(config),
                                 cv_options(config));
  io.out << provenance_line(config) << '\n';
  io.out << "alpha,delta_llh_x100,p_value,stars,surprisal_delta_llh_x100,gap_x100\n";
  const double ref = 100.0 * sweep.surprisal.mean_delta;
  for (const auto& p : sweep.points) {
    const double d = 100.0 * p.sim_adjusted.mean_delta;
    io.out << format_number(p.alpha) << ',' << format_number(d) << ','
           << format_number(p.sim_adjusted.p_value) << ',' << p.sim_adjusted.stars << ','
           << format_number(ref) << ',' << format_number(std::abs(d - ref)) << '\n';
  }
  return ExitCode::ok;
}

/// Dispatches on `config.command`; library errors become an error record on
/// `io.err` and exit status 2.
inline int run(const RunConfig& config, Streams io, std::ostream* pretty = nullptr) {
  try {
    ExitCode code;
    if (config.command == "validate") {
      code = run_validate(config, io);
    } else if (config.command == "metrics") {
      code = run_metrics(config, io);
    } else if (config.command == "oracle") {
      code = run_oracle(config, io);
    } else if (config.command == "evaluate") {
      code = run_evaluate(config, io, pretty);
    } else if (config.command == "sweep-alpha") {
      code = run_sweep_alpha(config, io);
    } else {
      throw domain_error("unknown command '" + config.command + "'");
    }
    return static_cast<int>(code);
  } catch (const error& e) {
    io.err << error_record(config.command, e.kind(), e.what()) << '\n';
  } catch (const std::exception& e) {
    io.err << error_record(config.command, "internal_error", e.what()) << '\n';
  }
  return static_cast<int>(ExitCode::error);
}

}  // namespace simsurp::pipeline
