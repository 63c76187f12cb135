#pragma once

// Reading-time regression: design matrices with spillover (lagged) predictor
// columns, ordinary least squares with a Gaussian likelihood, k-fold
// cross-validated log-likelihood differences between two regressors, and an
// exact paired sign-flip permutation test over the per-fold differences.

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simsurp/errors.hpp"
#include "simsurp/random.hpp"

namespace simsurp {

inline constexpr std::size_t kDefaultSpillover = 3;
inline constexpr std::size_t kDefaultFolds = 10;
inline constexpr std::size_t kMaxPermutationFolds = 26;

// --- predictor sets ----------------------------------------------------------

/// A predictor column plus how many preceding words it is lagged over.
/// Without an override the set-wide spillover applies.
struct PredictorTerm {
  std::string column;
  std::optional<std::size_t> lags;
};

struct PredictorSet {
  std::vector<PredictorTerm> terms;
  std::size_t spillover = kDefaultSpillover;
  bool include_intercept = true;

  std::size_t lags_of(const PredictorTerm& t) const { return t.lags.value_or(spillover); }

  std::size_t max_lag() const {
    std::size_t m = 0;
    for (const auto& t : terms) m = std::max(m, lags_of(t));
    return m;
  }

  /// Design-matrix column names: per term, current word then lag 1..L.
  std::vector<std::string> column_names() const {
    std::vector<std::string> names;
    for (const auto& t : terms)
      for (std::size_t l = 0; l <= lags_of(t); ++l) names.push_back(lagged_name(t.column, l));
    return names;
  }

  static std::string lagged_name(const std::string& column, std::size_t lag) {
    return lag == 0 ? column : column + "[-" + std::to_string(lag) + "]";
  }

  void validate() const {
    std::set<std::string, std::less<>> seen;
    for (const auto& t : terms) {
      if (t.column.empty()) throw domain_error("empty predictor name");
      if (!seen.insert(t.column).second)
        throw domain_error("predictor '" + t.column + "' listed twice");
    }
  }

  /// Parses "a,b,c#0": comma-separated columns, "#L" overrides the lag count.
  static PredictorSet parse(std::string_view text, std::size_t spillover = kDefaultSpillover,
                            bool include_intercept = true) {
    PredictorSet set;
    set.spillover = spillover;
    set.include_intercept = include_intercept;
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t comma = std::min(text.find(',', start), text.size());
      std::string_view item = text.substr(start, comma - start);
      while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
      while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
      if (!item.empty()) {
        PredictorTerm term;
        if (const auto hash = item.rfind('#'); hash != std::string_view::npos) {
          const std::string lag_text(item.substr(hash + 1));
          char* end = nullptr;
          const long lag = std::strtol(lag_text.c_str(), &end, 10);
          if (lag_text.empty() || end != lag_text.c_str() + lag_text.size() || lag < 0)
            throw domain_error("bad lag count in predictor '" + std::string(item) + "'");
          term.lags = static_cast<std::size_t>(lag);
          item = item.substr(0, hash);
        }
        term.column = std::string(item);
        set.terms.push_back(std::move(term));
      }
      start = comma + 1;
    }
    set.validate();
    return set;
  }
};

// --- data --------------------------------------------------------------------

struct RowKey {
  std::string doc_id;
  std::size_t word_index = 0;
  auto operator<=>(const RowKey&) const = default;
};

/// Per-word predictor values and mean reading times. Missing values are NaN.
struct MetricsTable {
  std::vector<RowKey> keys;
  std::vector<double> targets;
  std::map<std::string, std::vector<double>, std::less<>> columns;

  std::size_t size() const noexcept { return keys.size(); }

  const std::vector<double>& column(std::string_view name) const {
    const auto it = columns.find(name);
    if (it == columns.end())
      throw build_error("no predictor column '" + std::string(name) + "' in the metrics table");
    return it->second;
  }
};

struct DesignMatrix {
  Eigen::MatrixXd rows;     // n x d, no intercept column
  Eigen::VectorXd targets;  // n
  std::vector<RowKey> row_keys;
  std::vector<std::string> column_names;
  /// Words dropped because a lag reached before the start of their document.
  std::size_t excluded_rows = 0;

  std::size_t size() const noexcept { return static_cast<std::size_t>(rows.rows()); }

  std::vector<Eigen::Index> column_indices(std::span<const std::string> names) const {
    std::vector<Eigen::Index> idx;
    for (const auto& name : names) {
      const auto it = std::find(column_names.begin(), column_names.end(), name);
      if (it == column_names.end())
        throw build_error("design matrix has no column '" + name + "'");
      idx.push_back(static_cast<Eigen::Index>(it - column_names.begin()));
    }
    return idx;
  }
};

/// One row per word whose lagged history lies inside its document. Column
/// order follows PredictorSet::column_names().
inline DesignMatrix build_design_matrix(const MetricsTable& table, const PredictorSet& predictors) {
  predictors.validate();
  const std::size_t max_lag = predictors.max_lag();
  std::map<RowKey, std::size_t> position;
  for (std::size_t i = 0; i < table.size(); ++i) position.emplace(table.keys[i], i);

  std::vector<const std::vector<double>*> sources;
  for (const auto& t : predictors.terms) sources.push_back(&table.column(t.column));

  DesignMatrix X;
  X.column_names = predictors.column_names();
  std::vector<std::size_t> usable;
  std::vector<std::vector<std::size_t>> history;  // row -> [row, lag1, ...]
  for (std::size_t i = 0; i < table.size(); ++i) {
    const RowKey& key = table.keys[i];
    std::vector<std::size_t> h{i};
    bool ok = key.word_index >= max_lag;
    for (std::size_t l = 1; ok && l <= max_lag; ++l) {
      const auto it = position.find({key.doc_id, key.word_index - l});
      ok = it != position.end();
      if (ok) h.push_back(it->second);
    }
    if (!ok) {
      ++X.excluded_rows;
      continue;
    }
    usable.push_back(i);
    history.push_back(std::move(h));
  }

  X.rows.resize(static_cast<Eigen::Index>(usable.size()),
                static_cast<Eigen::Index>(X.column_names.size()));
  X.targets.resize(static_cast<Eigen::Index>(usable.size()));
  for (std::size_t r = 0; r < usable.size(); ++r) {
    const std::size_t i = usable[r];
    X.row_keys.push_back(table.keys[i]);
    X.targets(static_cast<Eigen::Index>(r)) = table.targets[i];
    if (!std::isfinite(table.targets[i]))
      throw build_error("non-finite reading time at (" + table.keys[i].doc_id + ", " +
                        std::to_string(table.keys[i].word_index) + ")");
    Eigen::Index c = 0;
    for (std::size_t t = 0; t < predictors.terms.size(); ++t) {
      for (std::size_t l = 0; l <= predictors.lags_of(predictors.terms[t]); ++l) {
        const std::size_t src = history[r][l];
        const double v = (*sources[t])[src];
        if (!std::isfinite(v))
          throw build_error("missing value for predictor '" + predictors.terms[t].column +
                            "' at (" + table.keys[src].doc_id + ", " +
                            std::to_string(table.keys[src].word_index) + ")");
        X.rows(static_cast<Eigen::Index>(r), c++) = v;
      }
    }
  }
  return X;
}

// --- ordinary least squares -------------------------------------------------

struct FitOptions {
  bool include_intercept = true;
  /// 0 rejects exact fits; a positive floor replaces a degenerate variance.
  double sigma2_floor = 0.0;
};

struct Regressor {
  Eigen::VectorXd weights;
  double intercept = 0.0;
  double sigma2 = 1.0;
  bool degenerate = false;
  std::vector<std::string> column_names;

  double predict(const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
    return intercept + x.dot(weights.transpose());
  }
};

namespace detail {
inline Eigen::MatrixXd select_columns(const Eigen::MatrixXd& m, std::span<const Eigen::Index> cols) {
  Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = m.col(cols[j]);
  return out;
}

inline Eigen::MatrixXd select_rows(const Eigen::MatrixXd& m, std::span<const Eigen::Index> rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(rows[i]);
  return out;
}

inline Eigen::VectorXd select_rows(const Eigen::VectorXd& v, std::span<const Eigen::Index> rows) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) out(static_cast<Eigen::Index>(i)) = v(rows[i]);
  return out;
}

// Residual variance below this fraction of mean(y^2) counts as an exact fit.
inline constexpr double kDegenerateVarianceRatio = 1e-20;
inline constexpr double kRankThreshold = 1e-10;
}  // namespace detail

/// Least squares on raw matrices. Column pivoting QR; rank deficiency is
/// reported with the names of the dependent columns.
inline Regressor fit_ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         const std::vector<std::string>& names, const FitOptions& options = {}) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols() + (options.include_intercept ? 1 : 0);
  if (n <= p)
    throw fit_error("need more rows than parameters (" + std::to_string(n) + " rows, " +
                    std::to_string(p) + " parameters)");
  Eigen::MatrixXd A(n, p);
  if (options.include_intercept) {
    A.col(0).setOnes();
    A.rightCols(X.cols()) = X;
  } else {
    A = X;
  }
  // Scale columns to unit norm so the rank threshold is scale-free.
  Eigen::VectorXd scale = A.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < p; ++j) {
    if (scale(j) == 0.0) scale(j) = 1.0;
    A.col(j) /= scale(j);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(detail::kRankThreshold);
  if (qr.rank() < p) {
    std::string cols;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index k = qr.rank(); k < p; ++k) {
      const Eigen::Index j = perm(k);
      const std::string name = options.include_intercept
                                   ? (j == 0 ? "(intercept)" : names[static_cast<std::size_t>(j - 1)])
                                   : names[static_cast<std::size_t>(j)];
      cols += (cols.empty() ? "" : ", ") + name;
    }
    throw fit_error("design matrix is rank deficient (rank " + std::to_string(qr.rank()) +
                    " of " + std::to_string(p) + "); collinear column(s): " + cols);
  }
  Eigen::VectorXd beta = qr.solve(y);
  beta.array() /= scale.array();

  Regressor model;
  model.column_names = names;
  if (options.include_intercept) {
    model.intercept = beta(0);
    model.weights = beta.tail(X.cols());
  } else {
    model.weights = beta;
  }
  const Eigen::VectorXd residual =
      y - (X * model.weights + Eigen::VectorXd::Constant(n, model.intercept));
  model.sigma2 = residual.squaredNorm() / static_cast<double>(n);
  const double scale_y = std::max(y.squaredNorm() / static_cast<double>(n),
                                  std::numeric_limits<double>::min());
  if (model.sigma2 <= detail::kDegenerateVarianceRatio * scale_y) {
    if (options.sigma2_floor <= 0.0)
      throw fit_error("degenerate fit: training residual variance is zero");
    model.degenerate = true;
    model.sigma2 = std::max(model.sigma2, options.sigma2_floor);
  }
  return model;
}

inline Regressor fit_ols(const DesignMatrix& X, const FitOptions& options = {}) {
  return fit_ols(X.rows, X.targets, X.column_names, options);
}

/// sum_n log N(y_n; f(x_n), sigma^2)
inline double log_likelihood(const Regressor& model, const Eigen::MatrixXd& X,
                             const Eigen::VectorXd& y) {
  if (!(model.sigma2 > 0.0)) throw domain_error("regressor variance must be positive");
  if (X.cols() != model.weights.size())
    throw domain_error("design matrix has " + std::to_string(X.cols()) + " columns, model " +
                       std::to_string(model.weights.size()));
  const double norm = -0.5 * std::log(2.0 * std::numbers::pi * model.sigma2);
  double total = 0.0;
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const double r = y(i) - model.predict(X.row(i));
    total += norm - r * r / (2.0 * model.sigma2);
  }
  return total;
}

inline double log_likelihood(const Regressor& model, const DesignMatrix& X) {
  return log_likelihood(model, X.rows, X.targets);
}

// --- cross-validation -------------------------------------------------------

struct FoldReport {
  std::size_t fold_id = 0;
  std::size_t test_rows = 0;
  /// Mean per-word held-out log-likelihoods (nats) and their difference.
  double llh_with = 0.0;
  double llh_without = 0.0;
  double delta = 0.0;
};

struct CvOptions {
  std::size_t folds = kDefaultFolds;
  std::uint64_t seed = 0;
  /// Keep every word of a document in the same fold.
  bool fold_by_doc = false;
  double sigma2_floor = 0.0;
};

/// Fold id of every row. Rows (or documents) are shuffled with `seed` and
/// cut into contiguous, near-equal blocks.
inline std::vector<std::size_t> assign_folds(const DesignMatrix& X, const CvOptions& options) {
  const std::size_t n = X.size(), k = options.folds;
  if (k < 2) throw domain_error("cross-validation needs at least 2 folds");
  Rng rng(options.seed);
  std::vector<std::size_t> fold(n);
  if (!options.fold_by_doc) {
    if (n < k) throw fit_error("fewer rows (" + std::to_string(n) + ") than folds");
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    for (std::size_t pos = 0; pos < n; ++pos) fold[order[pos]] = pos * k / n;
    return fold;
  }
  std::vector<std::string> docs;
  std::map<std::string, std::size_t, std::less<>> doc_index;
  for (const auto& key : X.row_keys)
    if (doc_index.emplace(key.doc_id, docs.size()).second) docs.push_back(key.doc_id);
  if (docs.size() < k)
    throw fit_error("fewer documents (" + std::to_string(docs.size()) + ") than folds");
  std::vector<std::size_t> order(docs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<std::size_t> doc_fold(docs.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    doc_fold[order[pos]] = pos * k / order.size();
  for (std::size_t i = 0; i < n; ++i) fold[i] = doc_fold[doc_index.at(X.row_keys[i].doc_id)];
  return fold;
}

/// Per fold: fit both regressors on the other folds, score the held-out
/// fold. `X` must contain every column either set names.
inline std::vector<FoldReport> cross_validate(const DesignMatrix& X, const PredictorSet& with_set,
                                              const PredictorSet& without_set,
                                              const CvOptions& options = {}) {
  const auto with_names = with_set.column_names();
  const auto without_names = without_set.column_names();
  const auto with_cols = X.column_indices(with_names);
  const auto without_cols = X.column_indices(without_names);
  const Eigen::MatrixXd X_with = detail::select_columns(X.rows, with_cols);
  const Eigen::MatrixXd X_without = detail::select_columns(X.rows, without_cols);

  const auto fold_of = assign_folds(X, options);
  std::vector<FoldReport> reports;
  for (std::size_t f = 0; f < options.folds; ++f) {
    std::vector<Eigen::Index> train, test;
    for (std::size_t i = 0; i < fold_of.size(); ++i)
      (fold_of[i] == f ? test : train).push_back(static_cast<Eigen::Index>(i));
    if (test.empty()) throw fit_error("fold " + std::to_string(f) + " is empty");

    auto score = [&](const Eigen::MatrixXd& M, const std::vector<std::string>& names,
                     bool intercept) {
      const auto model = fit_ols(detail::select_rows(M, train), detail::select_rows(X.targets, train),
                                 names, {intercept, options.sigma2_floor});
      return log_likelihood(model, detail::select_rows(M, test),
                            detail::select_rows(X.targets, test)) /
             static_cast<double>(test.size());
    };
    FoldReport r;
    r.fold_id = f;
    r.test_rows = test.size();
    r.llh_with = score(X_with, with_names, with_set.include_intercept);
    r.llh_without = score(X_without, without_names, without_set.include_intercept);
    r.delta = r.llh_with - r.llh_without;
    reports.push_back(r);
  }
  return reports;
}

// --- significance ------------------------------------------------------------

/// Exact two-sided sign-flip test on the mean of paired differences: the
/// fraction of all 2^k sign assignments whose |mean| reaches the observed
/// |mean|. All-zero input gives 1.
inline double paired_permutation_test(std::span<const double> deltas) {
  const std::size_t k = deltas.size();
  if (k < 2) throw domain_error("permutation test needs at least 2 paired differences");
  if (k > kMaxPermutationFolds)
    throw domain_error("exact permutation test limited to " +
                       std::to_string(kMaxPermutationFolds) + " differences");
  double observed = 0.0, scale = 0.0;
  for (double d : deltas) {
    if (!std::isfinite(d)) throw domain_error("non-finite paired difference");
    observed += d;
    scale += std::abs(d);
  }
  if (scale == 0.0) return 1.0;
  const double threshold = std::abs(observed) - 1e-12 * scale;

  // Walk all sign patterns in Gray-code order, flipping one sign per step.
  const std::uint64_t total = std::uint64_t{1} << k;
  std::uint64_t hits = 0;
  std::uint64_t signs = 0;  // bit i set => delta i negated
  double sum = observed;
  for (std::uint64_t step = 0; step < total; ++step) {
    if (std::abs(sum) >= threshold) ++hits;
    if (step + 1 == total) break;
    const int bit = std::countr_zero(step + 1);
    const std::uint64_t mask = std::uint64_t{1} << bit;
    sum += (signs & mask) ? 2.0 * deltas[bit] : -2.0 * deltas[bit];
    signs ^= mask;
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

inline std::string significance_stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

struct Comparison {
  std::vector<FoldReport> folds;
  double mean_delta = 0.0;  // nats per word
  double p_value = 1.0;
  std::string stars;
  std::size_t rows = 0;
  std::size_t excluded_rows = 0;
};

inline Comparison compare_predictor_sets(const DesignMatrix& X, const PredictorSet& with_set,
                                         const PredictorSet& without_set,
                                         const CvOptions& options = {}) {
  Comparison c;
  c.folds = cross_validate(X, with_set, without_set, options);
  std::vector<double> deltas;
  for (const auto& f : c.folds) deltas.push_back(f.delta);
  for (double d : deltas) c.mean_delta += d / static_cast<double>(deltas.size());
  c.p_value = paired_permutation_test(deltas);
  c.stars = significance_stars(c.p_value);
  c.rows = X.size();
  c.excluded_rows = X.excluded_rows;
  return c;
}

/// Union of two predictor sets' terms, for building one shared matrix.
/// A column listed in both keeps the larger lag count.
inline PredictorSet union_of(const PredictorSet& a, const PredictorSet& b) {
  PredictorSet u = a;
  for (const auto& t : b.terms) {
    const auto it = std::find_if(u.terms.begin(), u.terms.end(),
                                 [&](const PredictorTerm& x) { return x.column == t.column; });
    if (it == u.terms.end()) {
      u.terms.push_back({t.column, b.lags_of(t)});
    } else if (u.lags_of(*it) < b.lags_of(t)) {
      it->lags = b.lags_of(t);
    }
  }
  for (auto& t : u.terms) t.lags = u.lags_of(t);
  return u;
}

/// One-sided Kolmogorov-Smirnov excess of an empirical CDF over the uniform
/// CDF, D+ = max_i (i/n - p_(i)). Large values mean small p-values are too
/// frequent.
inline double ks_excess_over_uniform(std::vector<double> pvalues) {
  if (pvalues.empty()) throw domain_error("no p-values");
  std::sort(pvalues.begin(), pvalues.end());
  const double n = static_cast<double>(pvalues.size());
  double d = 0.0;
  for (std::size_t i = 0; i < pvalues.size(); ++i)
    d = std::max(d, static_cast<double>(i + 1) / n - pvalues[i]);
  return d;
}

/// Asymptotic one-sided KS critical value sqrt(-ln(level) / 2) / sqrt(n).
inline double ks_one_sided_critical(std::size_t n, double level = 0.05) {
  return std::sqrt(-std::log(level) / 2.0) / std::sqrt(static_cast<double>(n));
}

}  // namespace simsurp
