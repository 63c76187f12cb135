#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "simsurp/random.hpp"
#include "simsurp/similarity.hpp"

using namespace simsurp;

namespace {

// Levenshtein straight from its recursive definition, memoised on suffix
// positions. Independent of the bottom-up two-row table in the library.
std::size_t recursive_levenshtein(const std::u32string& a, const std::u32string& b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::size_t)> lev = [&](std::size_t i, std::size_t j) {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    if (auto it = memo.find({i, j}); it != memo.end()) return it->second;
    std::size_t best;
    if (a[i] == b[j]) {
      best = lev(i + 1, j + 1);
    } else {
      best = 1 + std::min({lev(i + 1, j), lev(i, j + 1), lev(i + 1, j + 1)});
    }
    memo[{i, j}] = best;
    return best;
  };
  return lev(0, 0);
}

std::string random_word(Rng& rng, std::size_t max_len) {
  static const std::vector<std::string> alphabet{"a", "b", "c", "\xC3\xA9", "\xC3\x9F"};  // é ß
  std::string s;
  const auto len = rng.below(max_len + 1);
  for (std::uint64_t i = 0; i < len; ++i) s += alphabet[rng.below(alphabet.size())];
  return s;
}

WordAnnotation word(std::string s, std::vector<double> emb = {}, std::string tag = "") {
  WordAnnotation w{std::move(s), {}, {}};
  if (!emb.empty()) w.embedding = std::move(emb);
  if (!tag.empty()) w.pos_tag = std::move(tag);
  return w;
}

}  // namespace

TEST(Cosine, Examples) {
  const std::vector<double> a{1, 2}, x{1, 0}, y{0, 1}, nx{-1, 0};
  EXPECT_DOUBLE_EQ(cosine_similarity(a, a), 1.0);
  EXPECT_DOUBLE_EQ(cosine_similarity(x, y), 0.5);
  EXPECT_DOUBLE_EQ(cosine_similarity(x, nx), 0.0);
}

TEST(Cosine, RejectsZeroAndMismatchedVectors) {
  const std::vector<double> zero{0, 0}, x{1, 0}, three{1, 0, 0};
  EXPECT_THROW(cosine_similarity(zero, x), domain_error);
  EXPECT_THROW(cosine_similarity(x, three), domain_error);
}

TEST(Cosine, ClampedToUnitInterval) {
  Rng rng(11);
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> a(5), b(5);
    for (auto& v : a) v = rng.normal();
    for (auto& v : b) v = rng.normal();
    const double z = cosine_similarity(a, b);
    EXPECT_GE(z, 0.0);
    EXPECT_LE(z, 1.0);
    EXPECT_EQ(z, cosine_similarity(b, a));
    EXPECT_LE(cosine_similarity(a, a), 1.0);
  }
}

TEST(Pos, ExactTagMatch) {
  EXPECT_EQ(pos_similarity("NN", "NN"), 1.0);
  EXPECT_EQ(pos_similarity("NN", "VB"), 0.0);
  EXPECT_EQ(pos_similarity("NN", "NNS"), 0.0);
}

TEST(Pos, TagOutsideTagsetIsDomainError) {
  const Tagset tags{"NN", "VB"};
  EXPECT_EQ(pos_similarity("NN", "VB", &tags), 0.0);
  EXPECT_THROW(pos_similarity("NN", "JJ", &tags), domain_error);
}

TEST(EditDistance, Examples) {
  EXPECT_EQ(edit_distance("kitten", "sitting"), 3u);
  EXPECT_EQ(edit_distance("abc", "abc"), 0u);
  EXPECT_EQ(edit_distance("", "abc"), 3u);
}

TEST(EditDistance, CountsScalarValuesNotBytes) {
  // "é" is two bytes but one edit.
  EXPECT_EQ(edit_distance("caf\xC3\xA9", "cafe"), 1u);
  EXPECT_EQ(edit_distance("\xC3\xA9", ""), 1u);
  EXPECT_THROW(edit_distance("\xC3", "a"), domain_error);
}

TEST(EditDistance, MatchesRecursiveDefinition) {
  Rng rng(3);
  for (int k = 0; k < 2000; ++k) {
    const auto a = random_word(rng, 8), b = random_word(rng, 8);
    ASSERT_EQ(edit_distance(a, b), recursive_levenshtein(decode_utf8(a), decode_utf8(b)))
        << a << " / " << b;
  }
}

TEST(EditDistance, MetricAxioms) {
  Rng rng(5);
  for (int k = 0; k < 1000; ++k) {
    const auto a = random_word(rng, 6), b = random_word(rng, 6), c = random_word(rng, 6);
    EXPECT_EQ(edit_distance(a, b), edit_distance(b, a));
    EXPECT_EQ(edit_distance(a, b) == 0, a == b);
    EXPECT_LE(edit_distance(a, c), edit_distance(a, b) + edit_distance(b, c));
  }
}

TEST(Orthographic, Examples) {
  EXPECT_NEAR(orthographic_similarity("kitten", "sitting"), 1.0 - 3.0 / 7.0, 1e-15);
  EXPECT_NEAR(orthographic_similarity("kitten", "sitting"), 0.571429, 1e-6);
  EXPECT_EQ(orthographic_similarity("abc", "abc"), 1.0);
  EXPECT_EQ(orthographic_similarity("a", "b"), 0.0);
  EXPECT_EQ(orthographic_similarity("", "ab"), 0.0);
  EXPECT_THROW(orthographic_similarity("", ""), domain_error);
}

TEST(Temperature, Examples) {
  EXPECT_EQ(apply_temperature(1.0, 64), 1.0);
  EXPECT_EQ(apply_temperature(0.5, 1), 0.5);
  EXPECT_EQ(apply_temperature(0.5, 2), 0.25);
}

TEST(Temperature, HigherAlphaNeverIncreasesSimilarity) {
  Rng rng(8);
  for (int k = 0; k < 1000; ++k) {
    const double z = rng.uniform();
    const double a1 = 1.0 + 10.0 * rng.uniform();
    const double a2 = a1 + 10.0 * rng.uniform();
    EXPECT_GE(apply_temperature(z, a1), apply_temperature(z, a2));
  }
}

TEST(Distance, Examples) {
  EXPECT_EQ(to_distance(1.0), 0.0);
  EXPECT_EQ(to_distance(0.0), 1.0);
  EXPECT_EQ(to_distance(0.25), 0.75);
  Rng rng(2);
  for (int k = 0; k < 100; ++k) {
    const double z = rng.uniform();
    EXPECT_NEAR(to_distance(to_distance(z)), z, 1e-16);
  }
}

TEST(Kernel, IdentityCompareSurfaces) {
  const SimilaritySpec identity{};
  EXPECT_EQ(similarity(identity, word("cat"), word("cat")), 1.0);
  EXPECT_EQ(similarity(identity, word("cat"), word("dog")), 0.0);
}

TEST(Kernel, TemperedCosine) {
  SimilaritySpec spec{SimilarityKind::embedding_cosine, 2.0};
  EXPECT_EQ(similarity(spec, word("a", {1, 0}), word("b", {0, 1})), 0.25);
}

TEST(Kernel, MissingAnnotationNamesTheField) {
  const SimilaritySpec pos{SimilarityKind::pos_identity};
  try {
    similarity(pos, word("a", {}, "NN"), word("b"));
    FAIL() << "expected domain_error";
  } catch (const domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("pos_tag"), std::string::npos);
  }
  const SimilaritySpec cos{SimilarityKind::embedding_cosine};
  EXPECT_THROW(similarity(cos, word("a"), word("b", {1, 0})), domain_error);
}

TEST(Kernel, RangeSymmetryAndSelfSimilarity) {
  Rng rng(21);
  const std::vector<std::string> tags{"NN", "VB", "DT"};
  const std::vector<SimilaritySpec> specs{
      {SimilarityKind::identity},
      {SimilarityKind::pos_identity, 3.0},
      {SimilarityKind::orthographic},
      {SimilarityKind::orthographic, 4.0},
      {SimilarityKind::embedding_cosine},
      {SimilarityKind::embedding_cosine, 8.0, EmbeddingSource::contextual}};
  for (int k = 0; k < 500; ++k) {
    auto make = [&] {
      std::vector<double> e(4);
      for (auto& v : e) v = rng.normal();
      std::string w = random_word(rng, 5);
      if (w.empty()) w = "x";
      return word(w, e, tags[rng.below(tags.size())]);
    };
    const auto a = make(), b = make();
    for (const auto& spec : specs) {
      const double ab = similarity(spec, a, b);
      EXPECT_GE(ab, 0.0);
      EXPECT_LE(ab, 1.0);
      EXPECT_EQ(ab, similarity(spec, b, a));
      EXPECT_NEAR(similarity(spec, a, a), 1.0, 1e-15);
    }
  }
}

TEST(Spec, ParseAndLabel) {
  EXPECT_EQ(parse_similarity_spec("identity").kind, SimilarityKind::identity);
  const auto c = parse_similarity_spec("cosine:contextual@4");
  EXPECT_EQ(c.kind, SimilarityKind::embedding_cosine);
  EXPECT_EQ(c.embedding_source, EmbeddingSource::contextual);
  EXPECT_EQ(c.alpha, 4.0);
  EXPECT_EQ(c.label(), "cosine:contextual@4");
  EXPECT_EQ(parse_similarity_spec("pos").label(), "pos");
  EXPECT_EQ(parse_similarity_spec("cosine").label(), "cosine:noncontextual");
  EXPECT_THROW(parse_similarity_spec("wordnet"), domain_error);
  EXPECT_THROW(parse_similarity_spec("pos@0.5"), domain_error);
  EXPECT_THROW(parse_similarity_spec("pos@x"), domain_error);
}

TEST(EmbeddingTable, EnforcesDimensionAndNonZero) {
  EmbeddingTable t(2);
  t.insert("a", {1, 0});
  EXPECT_EQ(t.at("a").size(), 2u);
  EXPECT_THROW(t.insert("b", {0, 0}), domain_error);
  EXPECT_THROW(t.insert("c", {1, 2, 3}), domain_error);
  EXPECT_THROW(t.at("zzz"), lookup_error);
}
