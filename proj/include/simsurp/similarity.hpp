#pragma once

// Word-pair similarity kernels z(w, w') in [0, 1], their tempered forms
// z^alpha, and the induced distance d = 1 - z.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simsurp/errors.hpp"

namespace simsurp {

using Tagset = std::set<std::string, std::less<>>;

/// What a kernel may look at for one word: its surface form, an embedding
/// and a POS tag. Kernels require only the field they use.
struct WordAnnotation {
  std::string surface;
  std::optional<std::vector<double>> embedding;
  std::optional<std::string> pos_tag;
};

enum class SimilarityKind { embedding_cosine, pos_identity, orthographic, identity };
enum class EmbeddingSource { noncontextual, contextual };

struct SimilaritySpec {
  SimilarityKind kind = SimilarityKind::identity;
  double alpha = 1.0;
  EmbeddingSource embedding_source = EmbeddingSource::noncontextual;

  void validate() const {
    if (!std::isfinite(alpha) || alpha < 1.0)
      throw domain_error("similarity temperature alpha must be finite and >= 1, got " +
                         std::to_string(alpha));
  }

  /// Short name used in column labels, e.g. "cosine:contextual" or "pos@4".
  std::string label() const {
    std::string base;
    switch (kind) {
      case SimilarityKind::identity: base = "identity"; break;
      case SimilarityKind::pos_identity: base = "pos"; break;
      case SimilarityKind::orthographic: base = "orthographic"; break;
      case SimilarityKind::embedding_cosine:
        base = embedding_source == EmbeddingSource::contextual ? "cosine:contextual"
                                                               : "cosine:noncontextual";
        break;
    }
    if (kind != SimilarityKind::identity && alpha != 1.0) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "@%g", alpha);
      base += buf;
    }
    return base;
  }
};

/// Parses "identity", "pos", "orthographic", "cosine", "cosine:noncontextual",
/// "cosine:contextual", optionally suffixed "@<alpha>".
inline SimilaritySpec parse_similarity_spec(std::string_view text) {
  SimilaritySpec spec;
  std::string_view name = text;
  if (const auto at = text.find('@'); at != std::string_view::npos) {
    name = text.substr(0, at);
    const std::string alpha_text(text.substr(at + 1));
    char* end = nullptr;
    spec.alpha = std::strtod(alpha_text.c_str(), &end);
    if (alpha_text.empty() || end != alpha_text.c_str() + alpha_text.size())
      throw domain_error("bad temperature in similarity spec '" + std::string(text) + "'");
  }
  if (name == "identity") {
    spec.kind = SimilarityKind::identity;
  } else if (name == "pos") {
    spec.kind = SimilarityKind::pos_identity;
  } else if (name == "orthographic") {
    spec.kind = SimilarityKind::orthographic;
  } else if (name == "cosine" || name == "cosine:noncontextual") {
    spec.kind = SimilarityKind::embedding_cosine;
    spec.embedding_source = EmbeddingSource::noncontextual;
  } else if (name == "cosine:contextual") {
    spec.kind = SimilarityKind::embedding_cosine;
    spec.embedding_source = EmbeddingSource::contextual;
  } else {
    throw domain_error("unknown similarity kind '" + std::string(name) + "'");
  }
  spec.validate();
  return spec;
}

// --- UTF-8 -----------------------------------------------------------------

/// Decodes UTF-8 into Unicode scalar values. Throws domain_error on
/// malformed input (overlong forms, surrogates, truncation).
inline std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    char32_t cp;
    std::size_t len;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      throw domain_error("invalid UTF-8 lead byte at offset " + std::to_string(i));
    }
    if (i + len > s.size()) throw domain_error("truncated UTF-8 sequence");
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) throw domain_error("invalid UTF-8 continuation byte");
      cp = (cp << 6) | (b & 0x3F);
    }
    static constexpr char32_t min_for_len[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < min_for_len[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
      throw domain_error("invalid UTF-8 scalar value");
    out.push_back(cp);
    i += len;
  }
  return out;
}

// --- kernels ---------------------------------------------------------------

/// Cosine similarity rescaled to [0, 1]: (cos + 1) / 2, clamped.
inline double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw domain_error("embedding dimension mismatch: " + std::to_string(a.size()) + " vs " +
                       std::to_string(b.size()));
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (!(na > 0.0) || !(nb > 0.0)) throw domain_error("cosine similarity of a zero vector");
  const double cos = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(0.5 * (cos + 1.0), 0.0, 1.0);
}

/// 1 if the tags are identical strings, else 0. With a tagset, both tags
/// must belong to it.
inline double pos_similarity(std::string_view tag1, std::string_view tag2,
                             const Tagset* tagset = nullptr) {
  if (tagset != nullptr) {
    for (auto tag : {tag1, tag2})
      if (!tagset->contains(tag))
        throw domain_error("POS tag '" + std::string(tag) + "' is not in the declared tagset");
  }
  return tag1 == tag2 ? 1.0 : 0.0;
}

/// Levenshtein distance with unit costs over sequences of any comparable
/// element type. Two-row dynamic programme.
template <class Seq>
std::size_t levenshtein(const Seq& a, const Seq& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

/// Edit distance between two UTF-8 strings, counted in Unicode scalar values.
inline std::size_t edit_distance(std::string_view w1, std::string_view w2) {
  return levenshtein(decode_utf8(w1), decode_utf8(w2));
}

/// 1 - d_L(w, w') / max(|w|, |w'|), lengths in scalar values.
inline double orthographic_similarity(std::string_view w1, std::string_view w2) {
  const auto a = decode_utf8(w1);
  const auto b = decode_utf8(w2);
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) throw domain_error("orthographic similarity of two empty strings");
  return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

inline double apply_temperature(double z, double alpha) { return std::pow(z, alpha); }

inline double to_distance(double z) { return 1.0 - z; }

/// A similarity spec bound to the corpus context it needs (the POS tagset).
class SimilarityKernel {
 public:
  explicit SimilarityKernel(SimilaritySpec spec, std::optional<Tagset> tagset = std::nullopt)
      : spec_(spec), tagset_(std::move(tagset)) {
    spec_.validate();
  }

  const SimilaritySpec& spec() const noexcept { return spec_; }

  double operator()(const WordAnnotation& a, const WordAnnotation& b) const {
    double z = 0.0;
    switch (spec_.kind) {
      case SimilarityKind::identity:
        return a.surface == b.surface ? 1.0 : 0.0;
      case SimilarityKind::pos_identity:
        z = pos_similarity(require_tag(a), require_tag(b), tagset_ ? &*tagset_ : nullptr);
        break;
      case SimilarityKind::orthographic:
        z = orthographic_similarity(a.surface, b.surface);
        break;
      case SimilarityKind::embedding_cosine:
        z = cosine_similarity(require_embedding(a), require_embedding(b));
        break;
    }
    return spec_.alpha == 1.0 ? z : apply_temperature(z, spec_.alpha);
  }

 private:
  static const std::string& require_tag(const WordAnnotation& w) {
    if (!w.pos_tag) throw domain_error("word '" + w.surface + "' has no pos_tag annotation");
    return *w.pos_tag;
  }
  static const std::vector<double>& require_embedding(const WordAnnotation& w) {
    if (!w.embedding) throw domain_error("word '" + w.surface + "' has no embedding annotation");
    return *w.embedding;
  }

  SimilaritySpec spec_;
  std::optional<Tagset> tagset_;
};

inline double similarity(const SimilaritySpec& spec, const WordAnnotation& a,
                         const WordAnnotation& b) {
  return SimilarityKernel(spec)(a, b);
}

/// Fixed-dimension embedding lookup, surface -> vector.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw domain_error("embedding dimension must be positive");
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return table_.size(); }

  void insert(std::string surface, std::vector<double> v) {
    if (v.size() != dim_)
      throw domain_error("embedding for '" + surface + "' has dimension " +
                         std::to_string(v.size()) + ", expected " + std::to_string(dim_));
    bool nonzero = false;
    for (double x : v) {
      if (!std::isfinite(x)) throw domain_error("non-finite embedding for '" + surface + "'");
      nonzero |= x != 0.0;
    }
    if (!nonzero) throw domain_error("zero embedding for '" + surface + "'");
    table_.insert_or_assign(std::move(surface), std::move(v));
  }

  const std::vector<double>& at(std::string_view surface) const {
    const auto it = table_.find(surface);
    if (it == table_.end()) throw lookup_error("no embedding for '" + std::string(surface) + "'");
    return it->second;
  }

  bool contains(std::string_view surface) const { return table_.find(surface) != table_.end(); }

 private:
  std::size_t dim_;
  std::map<std::string, std::vector<double>, std::less<>> table_;
};

}  // namespace simsurp
