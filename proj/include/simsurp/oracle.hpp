#pragma once

// Brute-force checks of the identities linking surprisal, similarity-adjusted
// surprisal, information value and belief-update cost, on small enumerable
// models.
//
// A MeaningModel is a prior over a finite meaning space where every meaning
// emits exactly one next word and no two meanings emit the same word. Costs
// are KL divergences between the posterior and the prior over meanings,
// computed by enumerating the meaning space, independently of the closed
// forms in metrics.hpp that they are checked against.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simsurp/errors.hpp"
#include "simsurp/metrics.hpp"
#include "simsurp/random.hpp"
#include "simsurp/similarity.hpp"

namespace simsurp::oracle {

inline constexpr std::size_t kMaxMeanings = 64;
inline constexpr double kPriorTolerance = 1e-12;
inline constexpr double kIdentityTolerance = 1e-12;

/// Dense n x n similarity over vocabulary indices.
class SimilarityMatrix {
 public:
  explicit SimilarityMatrix(std::size_t n, double fill = 0.0) : n_(n), z_(n * n, fill) {
    for (std::size_t i = 0; i < n; ++i) z_[i * n + i] = 1.0;
  }

  static SimilarityMatrix identity(std::size_t n) { return SimilarityMatrix(n, 0.0); }

  /// z(i, j) = kernel(words[i], words[j]).
  static SimilarityMatrix from_kernel(const SimilarityKernel& kernel,
                                      std::span<const WordAnnotation> words) {
    SimilarityMatrix m(words.size());
    for (std::size_t i = 0; i < words.size(); ++i)
      for (std::size_t j = 0; j < words.size(); ++j) m.set(i, j, kernel(words[i], words[j]));
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return z_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) { z_[i * n_ + j] = v; }

  void validate() const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (std::abs((*this)(i, i) - 1.0) > kIdentityTolerance)
        throw domain_error("similarity matrix diagonal must be 1");
      for (std::size_t j = 0; j < n_; ++j) {
        const double v = (*this)(i, j);
        if (!(v >= 0.0 && v <= 1.0)) throw domain_error("similarity outside [0, 1]");
      }
    }
  }

 private:
  std::size_t n_;
  std::vector<double> z_;
};

class MeaningModel {
 public:
  /// `emission[m]` is the next word meaning m is conveyed by.
  MeaningModel(std::vector<double> prior, std::vector<std::string> emission)
      : prior_(std::move(prior)), emission_(std::move(emission)) {
    if (prior_.empty()) throw domain_error("meaning model needs at least one meaning");
    if (prior_.size() > kMaxMeanings)
      throw domain_error("meaning model limited to " + std::to_string(kMaxMeanings) +
                         " meanings");
    if (prior_.size() != emission_.size())
      throw domain_error("prior and emission sizes differ");
    double mass = 0.0;
    for (double p : prior_) {
      if (!std::isfinite(p) || p <= 0.0) throw domain_error("prior probabilities must be > 0");
      mass += p;
    }
    if (std::abs(mass - 1.0) > kPriorTolerance)
      throw domain_error("prior sums to " + detail::format_double("%.17g", mass) + ", not 1");
    for (std::size_t m = 0; m < emission_.size(); ++m) {
      if (!word_index_.emplace(emission_[m], m).second)
        throw domain_error("emission is not injective: '" + emission_[m] +
                           "' is emitted by more than one meaning");
    }
  }

  std::size_t meaning_count() const noexcept { return prior_.size(); }
  const std::vector<double>& prior() const noexcept { return prior_; }
  const std::vector<std::string>& emission() const noexcept { return emission_; }

  /// Vocabulary in meaning order (emission is a bijection onto it).
  const std::vector<std::string>& vocab() const noexcept { return emission_; }

  std::size_t word_index(std::string_view word) const {
    const auto it = word_index_.find(word);
    if (it == word_index_.end())
      throw domain_error("no meaning emits '" + std::string(word) + "'");
    return it->second;
  }

  /// p(word | m): 1 if m emits word, else 0.
  double likelihood(std::string_view word, std::size_t m) const {
    return emission_[m] == word ? 1.0 : 0.0;
  }

  /// Next-word marginal p(w) = sum_m p(w | m) p(m).
  double word_prob(std::string_view word) const {
    double p = 0.0;
    for (std::size_t m = 0; m < prior_.size(); ++m) p += likelihood(word, m) * prior_[m];
    return p;
  }

  NextWordDistribution next_word_distribution() const {
    std::vector<NextWordDistribution::Entry> entries;
    for (const auto& w : vocab()) entries.emplace_back(w, word_prob(w));
    return NextWordDistribution(std::move(entries));
  }

  /// p(m | context . word) by Bayes' rule over the enumerated meanings.
  std::vector<double> posterior(std::string_view word) const {
    std::vector<double> post(prior_.size());
    double evidence = 0.0;
    for (std::size_t m = 0; m < prior_.size(); ++m) {
      post[m] = likelihood(word, m) * prior_[m];
      evidence += post[m];
    }
    if (!(evidence > 0.0)) throw domain_error("no meaning emits '" + std::string(word) + "'");
    for (double& p : post) p /= evidence;
    return post;
  }

 private:
  std::vector<double> prior_;
  std::vector<std::string> emission_;
  std::map<std::string, std::size_t, std::less<>> word_index_;
};

/// A MeaningModel with a similarity over its vocabulary.
class SimAwareModel {
 public:
  SimAwareModel(MeaningModel base, SimilarityMatrix z) : base_(std::move(base)), z_(std::move(z)) {
    if (z_.size() != base_.vocab().size())
      throw domain_error("similarity matrix does not match the vocabulary");
    z_.validate();
  }

  SimAwareModel(MeaningModel base, const SimilarityKernel& kernel,
                std::span<const WordAnnotation> annotations)
      : SimAwareModel(base, [&] {
          if (annotations.size() != base.vocab().size())
            throw domain_error("annotations do not cover the vocabulary");
          for (std::size_t i = 0; i < annotations.size(); ++i)
            if (annotations[i].surface != base.vocab()[i])
              throw domain_error("annotation order does not match the vocabulary");
          return SimilarityMatrix::from_kernel(kernel, annotations);
        }()) {}

  const MeaningModel& base() const noexcept { return base_; }
  const SimilarityMatrix& similarity() const noexcept { return z_; }

  /// p_z(w | context) = sum_w' z(w, w') p(w' | context)
  double pz_word(std::string_view word) const {
    const std::size_t t = base_.word_index(word);
    double p = 0.0;
    for (std::size_t j = 0; j < base_.vocab().size(); ++j)
      p += z_(t, j) * base_.word_prob(base_.vocab()[j]);
    return p;
  }

  /// p_z(w | m, context) = sum_w' z(w, w') p(w' | m, context)
  double pz_word_given_meaning(std::string_view word, std::size_t m) const {
    const std::size_t t = base_.word_index(word);
    double p = 0.0;
    for (std::size_t j = 0; j < base_.vocab().size(); ++j)
      p += z_(t, j) * base_.likelihood(base_.vocab()[j], m);
    return p;
  }

  /// p_z(m | context) = p(m | context)
  double pz_meaning_prior(std::size_t m) const { return base_.prior()[m]; }

  /// p_z(m | context . w), unnormalised by construction.
  double pz_meaning_posterior(std::size_t m, std::string_view word) const {
    return pz_word_given_meaning(word, m) * pz_meaning_prior(m) / pz_word(word);
  }

 private:
  MeaningModel base_;
  SimilarityMatrix z_;
};

/// KL(p(m | context . w) || p(m | context)) by enumeration.
inline double belief_update_cost(const MeaningModel& model, std::string_view target) {
  const auto post = model.posterior(target);
  double kl = 0.0;
  for (std::size_t m = 0; m < post.size(); ++m)
    if (post[m] > 0.0) kl += post[m] * std::log(post[m] / model.prior()[m]);
  return kl;
}

/// sum_m p(m | context . w) ln(p_z(m | context . w) / p_z(m | context)).
inline double sim_adjusted_cost(const SimAwareModel& model, std::string_view target) {
  if (!(model.pz_word(target) > 0.0))
    throw domain_error("p_z('" + std::string(target) + "' | context) is zero");
  const auto post = model.base().posterior(target);
  double kl = 0.0;
  for (std::size_t m = 0; m < post.size(); ++m)
    if (post[m] > 0.0)
      kl += post[m] * std::log(model.pz_meaning_posterior(m, target) / model.pz_meaning_prior(m));
  return kl;
}

struct OracleReport {
  std::string check;
  std::size_t cases = 0;
  double max_gap = 0.0;
  double tolerance = kIdentityTolerance;
  bool ranks_agree = true;
  std::string note;

  bool passed() const noexcept { return max_gap < tolerance && ranks_agree; }

  void absorb(const OracleReport& other) {
    cases += other.cases;
    max_gap = std::max(max_gap, other.max_gap);
    ranks_agree = ranks_agree && other.ranks_agree;
    if (note.empty()) note = other.note;
  }
};

inline OracleReport make_report(std::string check) {
  OracleReport report;
  report.check = std::move(check);
  return report;
}

/// |cost(w) - h(w)| for every word of the model.
inline OracleReport check_cost_equals_surprisal(const MeaningModel& model) {
  OracleReport report = make_report("cost_equals_surprisal");
  const auto dist = model.next_word_distribution();
  for (const auto& w : model.vocab()) {
    const double gap = std::abs(belief_update_cost(model, w) - surprisal(dist, w).value);
    report.max_gap = std::max(report.max_gap, gap);
    ++report.cases;
  }
  return report;
}

/// |cost_z(w) - h_z(w)| for every word of the model.
inline OracleReport check_sim_adjusted_cost(const SimAwareModel& model) {
  OracleReport report = make_report("sim_adjusted_cost_equals_sim_adjusted_surprisal");
  const auto dist = model.base().next_word_distribution();
  for (const auto& w : model.base().vocab()) {
    const double h = sim_adjusted_surprisal_exact(dist, w, model.similarity()).value;
    report.max_gap = std::max(report.max_gap, std::abs(sim_adjusted_cost(model, w) - h));
    ++report.cases;
  }
  return report;
}

namespace detail {
// Pairwise order agreement, skipping pairs that tie (within tol) on either side.
inline bool same_order(std::span<const double> a, std::span<const double> b, double tol) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const double da = a[i] - a[j], db = b[i] - b[j];
      if (std::abs(da) <= tol || std::abs(db) <= tol) continue;
      if ((da > 0) != (db > 0)) return false;
    }
  return true;
}

inline std::vector<std::size_t> argsort(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
  return idx;
}
}  // namespace detail

/// i_d(w) = 1 - exp(-h_z(w)) for every candidate w, and both induce the
/// same ordering of candidates.
template <PairwiseSimilarity Sim>
OracleReport check_theorem1_identity(const NextWordDistribution& dist, const Sim& z) {
  OracleReport report = make_report("information_value_vs_sim_adjusted_surprisal");
  std::vector<double> iv(dist.size()), hz(dist.size());
  for (std::size_t t = 0; t < dist.size(); ++t) {
    iv[t] = information_value_exact(dist, dist.surface(t), z).value;
    hz[t] = sim_adjusted_surprisal_exact(dist, dist.surface(t), z).value;
    report.max_gap = std::max(report.max_gap, std::abs(iv[t] - (1.0 - std::exp(-hz[t]))));
    ++report.cases;
  }
  // Exact argsort equality is only meaningful between distinct values; near
  // ties are checked by pairwise order instead.
  report.ranks_agree = detail::argsort(iv) == detail::argsort(hz) ||
                       detail::same_order(iv, hz, kIdentityTolerance);
  return report;
}

inline OracleReport check_theorem1_identity(const NextWordDistribution& dist,
                                            const SimilarityKernel& kernel,
                                            std::span<const WordAnnotation> annotations) {
  if (annotations.size() != dist.size())
    throw domain_error("annotations do not cover every candidate");
  return check_theorem1_identity(dist, pairwise(kernel, annotations));
}

/// Identity kernel: h_z = h and H_z = Shannon entropy.
inline OracleReport check_identity_reduction(const NextWordDistribution& dist) {
  OracleReport report = make_report("identity_reduction");
  const IdentitySimilarity z;
  for (std::size_t t = 0; t < dist.size(); ++t) {
    const double gap = std::abs(sim_adjusted_surprisal_exact(dist, dist.surface(t), z).value -
                                surprisal(dist, dist.surface(t)).value);
    report.max_gap = std::max(report.max_gap, gap);
    ++report.cases;
  }
  report.max_gap = std::max(report.max_gap,
                            std::abs(sim_adjusted_entropy(dist, z).value - shannon_entropy(dist)));
  return report;
}

// --- seeded random fixtures --------------------------------------------------

/// Probabilities from normalised Exp(1) draws (a flat Dirichlet sample).
inline std::vector<double> random_simplex(Rng& rng, std::size_t n) {
  std::vector<double> p(n);
  double total = 0.0;
  for (double& x : p) {
    double u;
    do {
      u = rng.uniform();
    } while (u <= 0.0);
    x = -std::log(u);
    total += x;
  }
  for (double& x : p) x /= total;
  return p;
}

inline std::vector<std::string> synthetic_vocab(std::size_t n) {
  std::vector<std::string> words(n);
  for (std::size_t i = 0; i < n; ++i) words[i] = "w" + std::to_string(i);
  return words;
}

inline NextWordDistribution random_distribution(Rng& rng, std::size_t n) {
  const auto p = random_simplex(rng, n);
  const auto words = synthetic_vocab(n);
  std::vector<NextWordDistribution::Entry> entries;
  for (std::size_t i = 0; i < n; ++i) entries.emplace_back(words[i], p[i]);
  return NextWordDistribution(std::move(entries));
}

/// Symmetric, unit diagonal, off-diagonal entries uniform on [0, 1).
inline SimilarityMatrix random_similarity(Rng& rng, std::size_t n) {
  SimilarityMatrix z(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = rng.uniform();
      z.set(i, j, v);
      z.set(j, i, v);
    }
  return z;
}

inline MeaningModel random_meaning_model(Rng& rng, std::size_t n) {
  return MeaningModel(random_simplex(rng, n), synthetic_vocab(n));
}

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::size_t identity_trials = 1000;
  std::size_t theorem1_trials = 1000;
  std::size_t theorem2_models = 200;
  std::size_t theorem3_models = 200;
  std::size_t max_vocab = 64;
};

/// The standard battery: every check over seeded random fixtures. Each
/// check draws from its own child stream of `seed`.
inline std::vector<OracleReport> run_suite(const SuiteOptions& options = {}) {
  const Rng root(options.seed);
  auto size_of = [&](Rng& rng) { return 1 + static_cast<std::size_t>(rng.below(options.max_vocab)); };
  std::vector<OracleReport> reports;

  OracleReport identity = make_report("identity_reduction");
  Rng r0 = root.split(0);
  for (std::size_t k = 0; k < options.identity_trials; ++k)
    identity.absorb(check_identity_reduction(random_distribution(r0, size_of(r0))));
  reports.push_back(identity);

  OracleReport theorem1 = make_report("information_value_vs_sim_adjusted_surprisal");
  Rng r1 = root.split(1);
  for (std::size_t k = 0; k < options.theorem1_trials; ++k) {
    const std::size_t n = size_of(r1);
    const auto dist = random_distribution(r1, n);
    const auto z = random_similarity(r1, n);
    theorem1.absorb(check_theorem1_identity(dist, z));
  }
  reports.push_back(theorem1);

  OracleReport theorem2 = make_report("cost_equals_surprisal");
  Rng r2 = root.split(2);
  for (std::size_t k = 0; k < options.theorem2_models; ++k)
    theorem2.absorb(check_cost_equals_surprisal(random_meaning_model(r2, size_of(r2))));
  reports.push_back(theorem2);

  OracleReport theorem3 = make_report("sim_adjusted_cost_equals_sim_adjusted_surprisal");
  Rng r3 = root.split(3);
  for (std::size_t k = 0; k < options.theorem3_models; ++k) {
    const std::size_t n = size_of(r3);
    auto base = random_meaning_model(r3, n);
    auto z = random_similarity(r3, n);
    theorem3.absorb(check_sim_adjusted_cost(SimAwareModel(std::move(base), std::move(z))));
  }
  reports.push_back(theorem3);

  return reports;
}

}  // namespace simsurp::oracle
