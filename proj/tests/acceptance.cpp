// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "simsurp/simsurp.hpp"
#include "support/synthetic.hpp"

using namespace simsurp;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(const char* name, double time_limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = time_limit_s <= 0 || secs < time_limit_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s %s: %s; %.3f s%s\n", pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs,
              in_time ? "" : " (over time limit)");
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::size_t recursive_levenshtein(const std::u32string& a, const std::u32string& b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::size_t)> lev = [&](std::size_t i, std::size_t j) {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    if (auto it = memo.find({i, j}); it != memo.end()) return it->second;
    const std::size_t best =
        a[i] == b[j] ? lev(i + 1, j + 1)
                     : 1 + std::min({lev(i + 1, j), lev(i, j + 1), lev(i + 1, j + 1)});
    return memo[{i, j}] = best;
  };
  return lev(0, 0);
}

std::vector<double> unit(double degrees) {
  const double r = degrees * std::numbers::pi / 180.0;
  return {std::cos(r), std::sin(r)};
}

// Coefficient standard errors from the normal equations, with the unbiased
// residual variance. Returns (beta, se), intercept first.
std::pair<Eigen::VectorXd, Eigen::VectorXd> ols_oracle(const Eigen::MatrixXd& X,
                                                       const Eigen::VectorXd& y) {
  const Eigen::Index n = X.rows(), p = X.cols() + 1;
  Eigen::MatrixXd A(n, p);
  A << Eigen::VectorXd::Ones(n), X;
  const Eigen::MatrixXd AtA = A.transpose() * A;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(AtA);
  const Eigen::VectorXd beta = ldlt.solve(A.transpose() * y);
  const double s2 = (y - A * beta).squaredNorm() / static_cast<double>(n - p);
  const Eigen::MatrixXd inv = ldlt.solve(Eigen::MatrixXd::Identity(p, p));
  return {beta, (s2 * inv.diagonal()).cwiseSqrt()};
}

synthetic::PlantedDesign base_design() {
  synthetic::PlantedDesign d;  // 100 documents x 103 words: 10^4 usable rows
  d.columns = {{"length", {6.0, 3.0, 1.5, 0.5}},
               {"log_unigram_freq", {-4.0, -2.0, -1.0, 0.0}},
               {"surprisal", {8.0, 4.0, 2.0, 1.0}}};
  return d;
}

}  // namespace

int main() {
  criterion("identity reduction (1000 distributions, |V| <= 64, tol 1e-12)", 1.0, [] {
    Rng rng(101);
    double gap_h = 0, gap_H = 0;
    for (int k = 0; k < 1000; ++k) {
      const auto dist = oracle::random_distribution(rng, 1 + rng.below(64));
      double shannon = 0;
      for (std::size_t i = 0; i < dist.size(); ++i) {
        const double h = -std::log(dist.prob(i));
        shannon += dist.prob(i) * h;
        const double hz =
            sim_adjusted_surprisal_exact(dist, dist.surface(i), IdentitySimilarity{}).value;
        gap_h = std::max(gap_h, std::abs(hz - h));
      }
      gap_H = std::max(gap_H,
                       std::abs(sim_adjusted_entropy(dist, IdentitySimilarity{}).value - shannon));
    }
    return Outcome{gap_h < 1e-12 && gap_H < 1e-12,
                   "max surprisal gap " + fmt("%.3g", gap_h) + ", max entropy gap " + fmt("%.3g", gap_H)};
  });

  criterion("information value = 1 - exp(-sim-adjusted surprisal) (1000 fixtures, tol 1e-12)", 1.0, [] {
    Rng rng(102);
    auto total = oracle::make_report("theorem1");
    for (int k = 0; k < 1000; ++k) {
      const auto n = 1 + rng.below(64);
      total.absorb(oracle::check_theorem1_identity(oracle::random_distribution(rng, n),
                                                   oracle::random_similarity(rng, n)));
    }
    return Outcome{total.max_gap < 1e-12 && total.ranks_agree,
                   "max gap " + fmt("%.3g", total.max_gap) + ", argsort " +
                       (total.ranks_agree ? "equal" : "differs") + ", " +
                       std::to_string(total.cases) + " targets"};
  });

  criterion("belief-update cost = surprisal (200 meaning models, tol 1e-12)", 1.0, [] {
    Rng rng(103);
    auto total = oracle::make_report("theorem2");
    for (int k = 0; k < 200; ++k)
      total.absorb(oracle::check_cost_equals_surprisal(oracle::random_meaning_model(rng, 1 + rng.below(64))));
    return Outcome{total.max_gap < 1e-12, "max gap " + fmt("%.3g", total.max_gap) + ", " +
                                             std::to_string(total.cases) + " targets"};
  });

  criterion("similarity-adjusted cost = sim-adjusted surprisal (200 models, tol 1e-12)", 1.0, [] {
    Rng rng(104);
    auto total = oracle::make_report("theorem3");
    for (int k = 0; k < 200; ++k) {
      const auto n = 1 + rng.below(64);
      const oracle::SimAwareModel model(oracle::random_meaning_model(rng, n),
                                        oracle::random_similarity(rng, n));
      total.absorb(oracle::check_sim_adjusted_cost(model));
    }
    return Outcome{total.max_gap < 1e-12, "max gap " + fmt("%.3g", total.max_gap) + ", " +
                                             std::to_string(total.cases) + " targets"};
  });

  criterion("Monte Carlo consistency on {a,b} (1e5 samples, 3 SE, coverage >= 95% over 100 seeds)", 10.0, [] {
    // z(a, b) = 0.5 through cosine of embeddings 90 degrees apart.
    AlternativeBlock vocab;
    vocab.mode = AlternativeMode::exact_vocab;
    vocab.entries.resize(2);
    vocab.entries[0].surface = "a";
    vocab.entries[0].embedding = unit(0);
    vocab.entries[0].prob = 0.75;
    vocab.entries[1].surface = "b";
    vocab.entries[1].embedding = unit(90);
    vocab.entries[1].prob = 0.25;
    const WordAnnotation target{"a", unit(0), std::nullopt};
    const SimilarityKernel kernel({SimilarityKind::embedding_cosine});
    const double exact_iv = 0.125, exact_hz = -std::log(0.875);
    const std::size_t n = 100000;
    int covered_iv = 0, covered_hz = 0;
    double worst_iv = 0, worst_hz = 0;
    for (int s = 0; s < 100; ++s) {
      Rng rng(derive_seed(105, static_cast<std::uint64_t>(s)));
      const auto samples = draw_samples(vocab, n, rng);
      double sum = 0, sum_sq = 0;
      for (const auto& e : samples.entries) {
        const double d = to_distance(kernel(target, e));
        sum += d;
        sum_sq += d * d;
      }
      const double mean = sum / n;
      const double se = std::sqrt((sum_sq / n - mean * mean) / (n - 1));
      const double iv = information_value_mc(samples, target, kernel).value;
      const double hz = sim_adjusted_surprisal_mc(samples, target, kernel).value;
      // Delta method: se(-ln(1 - iv)) = se(iv) / (1 - iv).
      const double z_iv = std::abs(iv - exact_iv) / se;
      const double z_hz = std::abs(hz - exact_hz) / (se / (1 - mean));
      covered_iv += z_iv <= 3;
      covered_hz += z_hz <= 3;
      worst_iv = std::max(worst_iv, z_iv);
      worst_hz = std::max(worst_hz, z_hz);
    }
    return Outcome{covered_iv >= 95 && covered_hz >= 95,
                   "information value coverage " + std::to_string(covered_iv) +
                       "/100 (max " + fmt("%.2f", worst_iv) + " SE), sim-adjusted surprisal coverage " +
                       std::to_string(covered_hz) + "/100 (max " + fmt("%.2f", worst_hz) + " SE)"};
  });

  criterion("temperature convergence (delta = 0.1, alpha 1..64, final gap < 1e-2, monotone)", 0, [] {
    // Five words 40 degrees apart: neighbouring similarity (1 + cos 40)/2 ~ 0.883.
    std::vector<WordAnnotation> words;
    const std::vector<double> probs{0.3, 0.25, 0.2, 0.15, 0.1};
    std::vector<NextWordDistribution::Entry> entries;
    for (int k = 0; k < 5; ++k) {
      words.push_back({"w" + std::to_string(k), unit(40.0 * k), std::nullopt});
      entries.emplace_back(words.back().surface, probs[k]);
    }
    const NextWordDistribution dist(entries);
    double max_offdiag = 0;
    for (const auto& a : words)
      for (const auto& b : words)
        if (a.surface != b.surface)
          max_offdiag = std::max(max_offdiag, cosine_similarity(*a.embedding, *b.embedding));
    bool monotone = max_offdiag < 0.9;
    double final_gap = 0;
    for (const auto& w : words) {
      const double h = surprisal(dist, w.surface).value;
      double previous = std::numeric_limits<double>::infinity();
      for (double alpha : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
        const SimilarityKernel kernel({SimilarityKind::embedding_cosine, alpha});
        const double gap = h - sim_adjusted_surprisal_exact(dist, w.surface, kernel, words).value;
        monotone = monotone && gap >= 0 && gap < previous;
        previous = gap;
      }
      final_gap = std::max(final_gap, previous);
    }
    return Outcome{monotone && final_gap < 1e-2,
                   "max off-diagonal z " + fmt("%.4f", max_offdiag) + ", gap strictly decreasing: " +
                       (monotone ? "yes" : "no") + ", max gap at alpha 64 " + fmt("%.3g", final_gap)};
  });

  criterion("regression recovery (n = 1e4, 3 predictors + spillover 3)", 60.0, [] {
    // (a) coefficients within 4 SE
    const auto design = base_design();
    const auto baseline = PredictorSet::parse("length,log_unigram_freq,surprisal");
    const auto table = synthetic::planted_table(design, 106);
    const auto X = build_design_matrix(table, baseline);
    const auto model = fit_ols(X);
    const auto [beta, se] = ols_oracle(X.rows, X.targets);
    std::vector<double> truth{design.intercept};
    for (const auto& c : design.columns) truth.insert(truth.end(), c.coefficients.begin(), c.coefficients.end());
    double worst = std::abs(model.intercept - truth[0]) / se(0);
    double solver_gap = std::abs(model.intercept - beta(0));
    for (Eigen::Index j = 0; j < model.weights.size(); ++j) {
      worst = std::max(worst, std::abs(model.weights(j) - truth[j + 1]) / se(j + 1));
      solver_gap = std::max(solver_gap, std::abs(model.weights(j) - beta(j + 1)));
    }
    const bool recovered = X.size() == 10000 && worst < 4.0 && solver_gap < 1e-8;

    // (b) a planted extra predictor
    auto planted = design;
    planted.columns.push_back({"extra", {5.0}});
    const auto with_extra = PredictorSet::parse("length,log_unigram_freq,surprisal,extra");
    const auto Xp = build_design_matrix(synthetic::planted_table(planted, 107), with_extra);
    const auto cmp = compare_predictor_sets(Xp, with_extra, baseline, {10, 107});
    bool all_positive = true;
    for (const auto& f : cmp.folds) all_positive = all_positive && f.delta > 0;
    const bool detected = all_positive && cmp.p_value < 0.01;

    // (c) a pure-noise extra predictor, 200 simulations
    auto null_design = design;
    null_design.columns.push_back({"noise", {}});
    const auto with_noise = PredictorSet::parse("length,log_unigram_freq,surprisal,noise");
    std::vector<double> pvalues;
    double mean_delta = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
      const auto Xn = build_design_matrix(synthetic::planted_table(null_design, derive_seed(108, s)), with_noise);
      const auto c = compare_predictor_sets(Xn, with_noise, baseline, {10, derive_seed(109, s)});
      pvalues.push_back(c.p_value);
      mean_delta += c.mean_delta / 200.0;
    }
    std::size_t below05 = 0;
    for (double p : pvalues) below05 += p <= 0.05;
    const double d_plus = ks_excess_over_uniform(pvalues);
    const double critical = ks_one_sided_critical(pvalues.size(), 0.05);
    const bool calibrated = d_plus <= critical;

    return Outcome{recovered && detected && calibrated,
                   "max |w - w*| " + fmt("%.2f", worst) + " SE over 13 coefficients; planted extra: " +
                       (all_positive ? "10/10" : "not all") + " folds positive, p = " +
                       fmt("%.5f", cmp.p_value) + "; noise predictor: KS D+ " + fmt("%.4f", d_plus) +
                       " vs critical " + fmt("%.4f", critical) + ", P(p <= 0.05) = " +
                       fmt("%.3f", below05 / 200.0) + ", mean delta " + fmt("%.2e", mean_delta) + " nats"};
  });

  criterion("permutation exactness (10 equal positive deltas, p = 2/1024)", 0, [] {
    const double p = paired_permutation_test(std::vector<double>(10, 0.37));
    return Outcome{p == 2.0 / 1024.0, "p = " + fmt("%.17g", p)};
  });

  criterion("edit distance = recursive Levenshtein (1e4 pairs, length <= 8)", 0, [] {
    Rng rng(110);
    const std::vector<std::string> alphabet{"a", "b", "c", "d", "\xC3\xA9", "\xE2\x82\xAC"};  // é €
    auto word = [&] {
      std::string s;
      const auto len = rng.below(9);
      for (std::uint64_t i = 0; i < len; ++i) s += alphabet[rng.below(alphabet.size())];
      return s;
    };
    int mismatches = 0;
    for (int k = 0; k < 10000; ++k) {
      const auto a = word(), b = word();
      mismatches += edit_distance(a, b) != recursive_levenshtein(decode_utf8(a), decode_utf8(b));
    }
    return Outcome{mismatches == 0, std::to_string(mismatches) + " mismatches in 10000 pairs"};
  });

  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
