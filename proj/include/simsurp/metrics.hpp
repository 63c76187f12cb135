#pragma once

// Surprisal, similarity-adjusted surprisal and entropy, and next-word
// information value, in exact (full candidate distribution) and Monte Carlo
// (sampled multiset) forms. All logarithms are natural: values are in nats.
//
// The exact operations are templated on a pairwise similarity over entry
// indices, `z(i, j) -> double in [0, 1]`. `pairwise(kernel, annotations)`
// adapts a SimilarityKernel plus per-entry annotations to that shape.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "simsurp/errors.hpp"
#include "simsurp/interchange.hpp"
#include "simsurp/random.hpp"
#include "simsurp/similarity.hpp"

namespace simsurp {

inline constexpr std::size_t kDefaultSampleCount = 50;

enum class Estimator { exact, monte_carlo };

struct MetricValue {
  double value = 0.0;
  Estimator estimator = Estimator::exact;
  std::optional<std::size_t> sample_count;
  std::optional<std::uint64_t> seed;
};

/// p(. | context) over a finite candidate set.
class NextWordDistribution {
 public:
  using Entry = std::pair<std::string, double>;

  explicit NextWordDistribution(std::vector<Entry> entries, std::string context_id = {})
      : entries_(std::move(entries)), context_id_(std::move(context_id)) {
    if (entries_.empty()) throw domain_error("next-word distribution has no entries");
    double mass = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const auto& [surface, p] = entries_[i];
      if (!std::isfinite(p) || p <= 0.0 || p > 1.0)
        throw domain_error("probability of '" + surface + "' outside (0, 1]");
      if (!index_.emplace(surface, i).second)
        throw domain_error("duplicate candidate '" + surface + "'");
      mass += p;
    }
    if (std::abs(mass - 1.0) > kProbabilityMassTolerance)
      throw domain_error("probability mass " + detail::format_double("%.9g", mass) +
                         " outside tolerance");
  }

  /// Builds the distribution of an exact_vocab block.
  static NextWordDistribution from_block(const AlternativeBlock& block,
                                         std::string context_id = {}) {
    if (block.mode != AlternativeMode::exact_vocab)
      throw domain_error("exact distribution requires an exact_vocab block");
    std::vector<Entry> entries;
    entries.reserve(block.entries.size());
    for (const auto& e : block.entries) {
      if (!e.prob) throw domain_error("exact_vocab entry '" + e.surface + "' has no prob");
      entries.emplace_back(e.surface, *e.prob);
    }
    return NextWordDistribution(std::move(entries), std::move(context_id));
  }

  std::size_t size() const noexcept { return entries_.size(); }
  const std::string& surface(std::size_t i) const { return entries_[i].first; }
  double prob(std::size_t i) const { return entries_[i].second; }
  const std::string& context_id() const noexcept { return context_id_; }

  std::size_t index_of(std::string_view target) const {
    const auto it = index_.find(target);
    if (it == index_.end())
      throw lookup_error("target '" + std::string(target) + "' not among the candidates" +
                         (context_id_.empty() ? "" : " of context '" + context_id_ + "'"));
    return it->second;
  }

 private:
  std::vector<Entry> entries_;
  std::string context_id_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

template <class Sim>
concept PairwiseSimilarity = std::invocable<const Sim&, std::size_t, std::size_t> &&
    std::convertible_to<std::invoke_result_t<const Sim&, std::size_t, std::size_t>, double>;

/// z(i, j) over entry indices from a kernel and one annotation per entry.
inline auto pairwise(const SimilarityKernel& kernel, std::span<const WordAnnotation> annotations) {
  return [&kernel, annotations](std::size_t i, std::size_t j) {
    return kernel(annotations[i], annotations[j]);
  };
}

/// Identity similarity: z(i, j) = [i == j].
struct IdentitySimilarity {
  double operator()(std::size_t i, std::size_t j) const noexcept { return i == j ? 1.0 : 0.0; }
};

/// sum_j z(target, j) p(j)
template <PairwiseSimilarity Sim>
double similarity_mass(const NextWordDistribution& dist, std::size_t target, const Sim& z) {
  double mass = 0.0;
  for (std::size_t j = 0; j < dist.size(); ++j) mass += z(target, j) * dist.prob(j);
  return mass;
}

namespace detail {
// The similarity mass can exceed 1 only through probability round-off.
inline double neg_log_mass(double mass) { return -std::log(std::min(mass, 1.0)); }
}  // namespace detail

inline MetricValue surprisal(const NextWordDistribution& dist, std::string_view target) {
  return {-std::log(dist.prob(dist.index_of(target))), Estimator::exact, {}, {}};
}

inline double shannon_entropy(const NextWordDistribution& dist) {
  double h = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) h -= dist.prob(i) * std::log(dist.prob(i));
  return h;
}

/// -ln sum_w' z(target, w') p(w')
template <PairwiseSimilarity Sim>
MetricValue sim_adjusted_surprisal_exact(const NextWordDistribution& dist,
                                         std::string_view target, const Sim& z) {
  const double mass = similarity_mass(dist, dist.index_of(target), z);
  if (!(mass > 0.0))
    throw infinite_surprisal_error("similarity mass of '" + std::string(target) + "' is zero");
  return {detail::neg_log_mass(mass), Estimator::exact, {}, {}};
}

inline MetricValue sim_adjusted_surprisal_exact(const NextWordDistribution& dist,
                                                std::string_view target,
                                                const SimilarityKernel& kernel,
                                                std::span<const WordAnnotation> annotations) {
  if (annotations.size() != dist.size())
    throw domain_error("annotations do not cover every candidate");
  return sim_adjusted_surprisal_exact(dist, target, pairwise(kernel, annotations));
}

/// -sum_r p(r) ln sum_r' z(r, r') p(r')
template <PairwiseSimilarity Sim>
MetricValue sim_adjusted_entropy(const NextWordDistribution& dist, const Sim& z) {
  double h = 0.0;
  for (std::size_t r = 0; r < dist.size(); ++r)
    h += dist.prob(r) * detail::neg_log_mass(similarity_mass(dist, r, z));
  return {h, Estimator::exact, {}, {}};
}

inline MetricValue sim_adjusted_entropy(const NextWordDistribution& dist,
                                        const SimilarityKernel& kernel,
                                        std::span<const WordAnnotation> annotations) {
  if (annotations.size() != dist.size())
    throw domain_error("annotations do not cover every candidate");
  return sim_adjusted_entropy(dist, pairwise(kernel, annotations));
}

/// sum_w' (1 - z(target, w')) p(w')
template <PairwiseSimilarity Sim>
MetricValue information_value_exact(const NextWordDistribution& dist, std::string_view target,
                                    const Sim& z) {
  const std::size_t t = dist.index_of(target);
  double value = 0.0;
  for (std::size_t j = 0; j < dist.size(); ++j) value += to_distance(z(t, j)) * dist.prob(j);
  return {value, Estimator::exact, {}, {}};
}

inline MetricValue information_value_exact(const NextWordDistribution& dist,
                                           std::string_view target,
                                           const SimilarityKernel& kernel,
                                           std::span<const WordAnnotation> annotations) {
  if (annotations.size() != dist.size())
    throw domain_error("annotations do not cover every candidate");
  return information_value_exact(dist, target, pairwise(kernel, annotations));
}

// --- Monte Carlo -----------------------------------------------------------

namespace detail {
inline double mean_similarity(const AlternativeBlock& samples, const WordAnnotation& target,
                              const SimilarityKernel& kernel) {
  if (samples.entries.empty()) throw domain_error("empty sample set");
  double sum = 0.0;
  for (const auto& s : samples.entries) sum += kernel(target, s);
  return sum / static_cast<double>(samples.entries.size());
}
}  // namespace detail

/// Mean distance of the target from the sampled alternatives.
inline MetricValue information_value_mc(const AlternativeBlock& samples,
                                        const WordAnnotation& target,
                                        const SimilarityKernel& kernel,
                                        std::optional<std::uint64_t> seed = std::nullopt) {
  if (samples.entries.empty()) throw domain_error("empty sample set");
  double sum = 0.0;
  for (const auto& s : samples.entries) sum += to_distance(kernel(target, s));
  return {sum / static_cast<double>(samples.entries.size()), Estimator::monte_carlo,
          samples.entries.size(), seed};
}

/// Plug-in estimate -ln(mean z(target, sample)). Consistent, but biased
/// upwards for finite samples.
inline MetricValue sim_adjusted_surprisal_mc(const AlternativeBlock& samples,
                                             const WordAnnotation& target,
                                             const SimilarityKernel& kernel,
                                             std::optional<std::uint64_t> seed = std::nullopt) {
  const double mean = detail::mean_similarity(samples, target, kernel);
  if (!(mean > 0.0))
    throw infinite_surprisal_error("no sampled alternative is similar to '" + target.surface +
                                   "' (mean similarity 0)");
  return {detail::neg_log_mass(mean), Estimator::monte_carlo, samples.entries.size(), seed};
}

/// Draws `n` alternatives with replacement from an exact_vocab block.
inline AlternativeBlock draw_samples(const AlternativeBlock& vocab, std::size_t n, Rng& rng) {
  if (vocab.mode != AlternativeMode::exact_vocab)
    throw domain_error("can only sample from an exact_vocab block");
  if (n == 0) throw domain_error("sample count must be positive");
  std::vector<double> weights;
  weights.reserve(vocab.entries.size());
  for (const auto& e : vocab.entries) weights.push_back(e.prob.value_or(0.0));
  AlternativeBlock out;
  out.mode = AlternativeMode::mc_samples;
  out.sample_count = n;
  out.entries.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    AlternativeEntry e = vocab.entries[rng.categorical(weights)];
    e.prob.reset();
    out.entries.push_back(std::move(e));
  }
  return out;
}

// --- subword -> word ---------------------------------------------------------

enum class Aggregation { sum, first };

inline double aggregate_word_level(std::span<const double> subword_values, Aggregation mode) {
  if (subword_values.empty()) throw domain_error("no subword values to aggregate");
  if (mode == Aggregation::first) return subword_values.front();
  double total = 0.0;
  for (double v : subword_values) total += v;
  return total;
}

/// Word surprisal: -sum of subword log-probabilities.
inline double word_surprisal(const CorpusRecord& record) {
  std::vector<double> values;
  values.reserve(record.subwords.size());
  for (const auto& s : record.subwords) values.push_back(-s.logprob);
  return aggregate_word_level(values, Aggregation::sum);
}

// --- record level -----------------------------------------------------------

struct RecordMetricOptions {
  Aggregation aggregation = Aggregation::sum;
  /// Estimate by sampling even when an exact_vocab block is available.
  bool force_monte_carlo = false;
  std::size_t sample_count = kDefaultSampleCount;
  std::uint64_t seed = 0;
  /// Seed of file-provided sample multisets, when the exporter recorded one.
  std::optional<std::uint64_t> sampling_seed;
};

struct RecordMetrics {
  double surprisal = 0.0;
  MetricValue sim_adjusted_surprisal;
  MetricValue information_value;
};

/// Word-level metrics of one corpus record under one kernel.
///
/// Embedding kernels use subword-level alternative blocks when the record
/// carries them (one value per piece, aggregated to the word); every other
/// case uses the record's full-word block. exact_vocab blocks are summed
/// exactly unless `force_monte_carlo`, in which case `sample_count`
/// alternatives are drawn from stream `ordinal` of `seed`.
inline RecordMetrics compute_record_metrics(const CorpusRecord& record, std::uint64_t ordinal,
                                            const SimilarityKernel& kernel,
                                            const RecordMetricOptions& options,
                                            std::string_view subword_marker = "\xC4\xA0") {
  struct Unit {
    const AlternativeBlock* block;
    WordAnnotation target;
  };
  std::vector<Unit> units;
  const bool subword_level =
      kernel.spec().kind == SimilarityKind::embedding_cosine &&
      std::any_of(record.subwords.begin(), record.subwords.end(),
                  [](const SubwordPiece& s) { return s.alternatives.has_value(); });
  if (subword_level) {
    for (std::size_t k = 0; k < record.subwords.size(); ++k) {
      const auto& piece = record.subwords[k];
      if (!piece.alternatives)
        throw domain_error("subword " + std::to_string(k) + " of '" + record.surface +
                           "' has no alternatives block");
      units.push_back({&*piece.alternatives,
                       {detail::strip_marker(piece.token, subword_marker), piece.embedding, {}}});
    }
  } else {
    if (!record.alternatives)
      throw domain_error("record '" + record.doc_id + "'/" + std::to_string(record.word_index) +
                         " ('" + record.surface + "') has no alternatives block");
    units.push_back({&*record.alternatives, record.target()});
  }

  RecordMetrics out;
  out.surprisal = word_surprisal(record);
  std::vector<double> sas, iv;
  bool monte_carlo = false;
  std::size_t samples = 0;
  std::optional<std::uint64_t> seed;
  const Rng record_rng(derive_seed(options.seed, ordinal));
  for (std::size_t u = 0; u < units.size(); ++u) {
    const auto& [block, target] = units[u];
    if (block->mode == AlternativeMode::exact_vocab && !options.force_monte_carlo) {
      const auto dist = NextWordDistribution::from_block(*block);
      const std::vector<WordAnnotation> annotations(block->entries.begin(), block->entries.end());
      sas.push_back(sim_adjusted_surprisal_exact(dist, target.surface, kernel, annotations).value);
      iv.push_back(information_value_exact(dist, target.surface, kernel, annotations).value);
      continue;
    }
    monte_carlo = true;
    if (block->mode == AlternativeMode::exact_vocab) {
      Rng rng = record_rng.split(u);
      const auto drawn = draw_samples(*block, options.sample_count, rng);
      seed = record_rng.seed();
      samples += drawn.entries.size();
      sas.push_back(sim_adjusted_surprisal_mc(drawn, target, kernel).value);
      iv.push_back(information_value_mc(drawn, target, kernel).value);
    } else {
      if (!seed) seed = options.sampling_seed;
      samples += block->entries.size();
      sas.push_back(sim_adjusted_surprisal_mc(*block, target, kernel).value);
      iv.push_back(information_value_mc(*block, target, kernel).value);
    }
  }
  const Estimator est = monte_carlo ? Estimator::monte_carlo : Estimator::exact;
  const auto n = monte_carlo ? std::optional<std::size_t>(samples) : std::nullopt;
  out.sim_adjusted_surprisal = {aggregate_word_level(sas, options.aggregation), est, n, seed};
  out.information_value = {aggregate_word_level(iv, options.aggregation), est, n, seed};
  return out;
}

}  // namespace simsurp
