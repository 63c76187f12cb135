#pragma once

// On-disk interchange format between a language-model exporter and the
// metric/regression core.
//
// Corpus files are JSON lines. Line 1 is a header object
//
//   {"format_version":1,"embedding_dim":<int|null>,"tagset":[...]|null,
//    "subword_space_marker":"Ġ"}
//
// optionally followed by "embedding_source" ("noncontextual"|"contextual")
// and "sampling_seed" (the exporter's seed). Every further line is one word
// token (CorpusRecord). Serialisation is canonical: keys in declaration
// order, compact separators, shortest round-trip doubles, so a canonically
// formatted file survives load + write byte for byte.
//
// Unigram tables are two-column TSV, `surface<TAB>count`.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "simsurp/errors.hpp"
#include "simsurp/similarity.hpp"

namespace simsurp {

inline constexpr int kFormatVersion = 1;
inline constexpr double kProbabilityMassTolerance = 1e-6;

enum class AlternativeMode { exact_vocab, mc_samples };

/// One candidate continuation. `prob` is present only in exact_vocab blocks.
struct AlternativeEntry : WordAnnotation {
  std::optional<double> prob;
};

/// The alternative set for one context: either the full candidate
/// distribution (exact_vocab) or a multiset of sampled words (mc_samples).
struct AlternativeBlock {
  AlternativeMode mode = AlternativeMode::mc_samples;
  std::optional<std::size_t> sample_count;
  std::vector<AlternativeEntry> entries;
};

/// A tokenizer piece of a word. `embedding` and `alternatives` are optional
/// subword-level annotations used by subword-level estimators.
struct SubwordPiece {
  std::string token;
  double logprob = 0.0;
  std::optional<std::vector<double>> embedding;
  std::optional<AlternativeBlock> alternatives;
};

struct CorpusRecord {
  std::string doc_id;
  std::size_t word_index = 0;
  std::string surface;
  double mean_rt = 0.0;
  std::vector<SubwordPiece> subwords;
  /// Annotations of the observed word itself.
  std::optional<std::vector<double>> embedding;
  std::optional<std::string> pos_tag;
  /// Full-word alternatives.
  std::optional<AlternativeBlock> alternatives;

  WordAnnotation target() const { return {surface, embedding, pos_tag}; }
};

struct CorpusHeader {
  int format_version = kFormatVersion;
  std::optional<std::size_t> embedding_dim;
  std::optional<std::vector<std::string>> tagset;
  std::string subword_space_marker = "\xC4\xA0";  // "Ġ"
  std::optional<EmbeddingSource> embedding_source;
  std::optional<std::uint64_t> sampling_seed;

  std::optional<Tagset> tagset_set() const {
    if (!tagset) return std::nullopt;
    return Tagset(tagset->begin(), tagset->end());
  }
};

struct Corpus {
  CorpusHeader header;
  std::vector<CorpusRecord> records;
};

/// One broken invariant. `record` is the 0-based record position (file line
/// minus two), `rule` a stable identifier.
struct Violation {
  std::size_t record = 0;
  std::string doc_id;
  std::size_t word_index = 0;
  std::string rule;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

namespace detail {

using ojson = nlohmann::ordered_json;

inline std::string strip_marker(std::string_view token, std::string_view marker) {
  if (!marker.empty() && token.starts_with(marker)) token.remove_prefix(marker.size());
  return std::string(token);
}

inline std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

// --- JSON -> structs ---------------------------------------------------------

struct Reader {
  std::size_t line;

  [[noreturn]] void fail(const std::string& what) const { throw parse_error(line, what); }

  void only_keys(const nlohmann::json& obj, std::initializer_list<std::string_view> allowed,
                 std::string_view where) const {
    if (!obj.is_object()) fail(std::string(where) + " must be a JSON object");
    for (const auto& [key, _] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        fail("unknown key '" + key + "' in " + std::string(where));
    }
  }

  const nlohmann::json& required(const nlohmann::json& obj, const char* key,
                                 std::string_view where) const {
    const auto it = obj.find(key);
    if (it == obj.end()) fail("missing key '" + std::string(key) + "' in " + std::string(where));
    return *it;
  }

  std::string string_of(const nlohmann::json& v, const char* key) const {
    if (!v.is_string()) fail("'" + std::string(key) + "' must be a string");
    return v.get<std::string>();
  }

  double number_of(const nlohmann::json& v, const char* key) const {
    if (!v.is_number()) fail("'" + std::string(key) + "' must be a number");
    return v.get<double>();
  }

  std::size_t count_of(const nlohmann::json& v, const char* key) const {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
      fail("'" + std::string(key) + "' must be a non-negative integer");
    return v.get<std::size_t>();
  }

  std::optional<std::vector<double>> embedding_of(const nlohmann::json& obj) const {
    const auto it = obj.find("embedding");
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_array()) fail("'embedding' must be an array of numbers");
    std::vector<double> v;
    v.reserve(it->size());
    for (const auto& x : *it) v.push_back(number_of(x, "embedding"));
    return v;
  }

  std::optional<std::string> tag_of(const nlohmann::json& obj) const {
    const auto it = obj.find("pos_tag");
    if (it == obj.end() || it->is_null()) return std::nullopt;
    return string_of(*it, "pos_tag");
  }

  AlternativeBlock block_of(const nlohmann::json& obj) const {
    only_keys(obj, {"mode", "sample_count", "entries"}, "alternatives");
    AlternativeBlock block;
    const auto mode = string_of(required(obj, "mode", "alternatives"), "mode");
    if (mode == "exact_vocab") {
      block.mode = AlternativeMode::exact_vocab;
    } else if (mode == "mc_samples") {
      block.mode = AlternativeMode::mc_samples;
    } else {
      fail("unknown alternatives mode '" + mode + "'");
    }
    if (const auto it = obj.find("sample_count"); it != obj.end() && !it->is_null())
      block.sample_count = count_of(*it, "sample_count");
    const auto& entries = required(obj, "entries", "alternatives");
    if (!entries.is_array()) fail("'entries' must be an array");
    for (const auto& e : entries) {
      only_keys(e, {"surface", "prob", "embedding", "pos_tag"}, "alternative entry");
      AlternativeEntry entry;
      entry.surface = string_of(required(e, "surface", "alternative entry"), "surface");
      if (const auto it = e.find("prob"); it != e.end() && !it->is_null())
        entry.prob = number_of(*it, "prob");
      entry.embedding = embedding_of(e);
      entry.pos_tag = tag_of(e);
      block.entries.push_back(std::move(entry));
    }
    return block;
  }

  CorpusRecord record_of(const nlohmann::json& obj) const {
    only_keys(obj,
              {"doc_id", "word_index", "surface", "mean_rt", "subwords", "embedding", "pos_tag",
               "alternatives"},
              "record");
    CorpusRecord r;
    r.doc_id = string_of(required(obj, "doc_id", "record"), "doc_id");
    r.word_index = count_of(required(obj, "word_index", "record"), "word_index");
    r.surface = string_of(required(obj, "surface", "record"), "surface");
    r.mean_rt = number_of(required(obj, "mean_rt", "record"), "mean_rt");
    const auto& subwords = required(obj, "subwords", "record");
    if (!subwords.is_array()) fail("'subwords' must be an array");
    for (const auto& s : subwords) {
      only_keys(s, {"token", "logprob", "embedding", "alternatives"}, "subword");
      SubwordPiece piece;
      piece.token = string_of(required(s, "token", "subword"), "token");
      piece.logprob = number_of(required(s, "logprob", "subword"), "logprob");
      piece.embedding = embedding_of(s);
      if (const auto it = s.find("alternatives"); it != s.end() && !it->is_null())
        piece.alternatives = block_of(*it);
      r.subwords.push_back(std::move(piece));
    }
    r.embedding = embedding_of(obj);
    r.pos_tag = tag_of(obj);
    if (const auto it = obj.find("alternatives"); it != obj.end() && !it->is_null())
      r.alternatives = block_of(*it);
    return r;
  }

  CorpusHeader header_of(const nlohmann::json& obj) const {
    only_keys(obj,
              {"format_version", "embedding_dim", "tagset", "subword_space_marker",
               "embedding_source", "sampling_seed"},
              "header");
    CorpusHeader h;
    const auto& version = required(obj, "format_version", "header");
    if (!version.is_number_integer() || version.get<int>() != kFormatVersion)
      fail("unsupported format_version (expected " + std::to_string(kFormatVersion) + ")");
    if (const auto it = obj.find("embedding_dim"); it != obj.end() && !it->is_null())
      h.embedding_dim = count_of(*it, "embedding_dim");
    if (const auto it = obj.find("tagset"); it != obj.end() && !it->is_null()) {
      if (!it->is_array()) fail("'tagset' must be an array of strings or null");
      std::vector<std::string> tags;
      for (const auto& t : *it) tags.push_back(string_of(t, "tagset"));
      h.tagset = std::move(tags);
    }
    h.subword_space_marker =
        string_of(required(obj, "subword_space_marker", "header"), "subword_space_marker");
    if (const auto it = obj.find("embedding_source"); it != obj.end() && !it->is_null()) {
      const auto src = string_of(*it, "embedding_source");
      if (src == "noncontextual") {
        h.embedding_source = EmbeddingSource::noncontextual;
      } else if (src == "contextual") {
        h.embedding_source = EmbeddingSource::contextual;
      } else {
        fail("unknown embedding_source '" + src + "'");
      }
    }
    if (const auto it = obj.find("sampling_seed"); it != obj.end() && !it->is_null()) {
      if (!it->is_number_unsigned()) fail("'sampling_seed' must be a non-negative integer");
      h.sampling_seed = it->get<std::uint64_t>();
    }
    return h;
  }
};

// --- structs -> JSON ---------------------------------------------------------

inline ojson to_json(const std::vector<double>& v) {
  ojson arr = ojson::array();
  for (double x : v) arr.push_back(x);
  return arr;
}

inline ojson to_json(const AlternativeBlock& b) {
  ojson o;
  o["mode"] = b.mode == AlternativeMode::exact_vocab ? "exact_vocab" : "mc_samples";
  if (b.sample_count) o["sample_count"] = *b.sample_count;
  ojson entries = ojson::array();
  for (const auto& e : b.entries) {
    ojson j;
    j["surface"] = e.surface;
    if (e.prob) j["prob"] = *e.prob;
    if (e.embedding) j["embedding"] = to_json(*e.embedding);
    if (e.pos_tag) j["pos_tag"] = *e.pos_tag;
    entries.push_back(std::move(j));
  }
  o["entries"] = std::move(entries);
  return o;
}

inline ojson to_json(const CorpusRecord& r) {
  ojson o;
  o["doc_id"] = r.doc_id;
  o["word_index"] = r.word_index;
  o["surface"] = r.surface;
  o["mean_rt"] = r.mean_rt;
  ojson subwords = ojson::array();
  for (const auto& s : r.subwords) {
    ojson j;
    j["token"] = s.token;
    j["logprob"] = s.logprob;
    if (s.embedding) j["embedding"] = to_json(*s.embedding);
    if (s.alternatives) j["alternatives"] = to_json(*s.alternatives);
    subwords.push_back(std::move(j));
  }
  o["subwords"] = std::move(subwords);
  if (r.embedding) o["embedding"] = to_json(*r.embedding);
  if (r.pos_tag) o["pos_tag"] = *r.pos_tag;
  if (r.alternatives) o["alternatives"] = to_json(*r.alternatives);
  return o;
}

inline ojson to_json(const CorpusHeader& h) {
  ojson o;
  o["format_version"] = h.format_version;
  o["embedding_dim"] = h.embedding_dim ? ojson(*h.embedding_dim) : ojson(nullptr);
  if (h.tagset) {
    o["tagset"] = *h.tagset;
  } else {
    o["tagset"] = nullptr;
  }
  o["subword_space_marker"] = h.subword_space_marker;
  if (h.embedding_source)
    o["embedding_source"] =
        *h.embedding_source == EmbeddingSource::contextual ? "contextual" : "noncontextual";
  if (h.sampling_seed) o["sampling_seed"] = *h.sampling_seed;
  return o;
}

// --- validation --------------------------------------------------------------

class Validator {
 public:
  Validator(const CorpusHeader& header, ValidationReport& report)
      : header_(header), report_(report), tagset_(header.tagset_set()) {}

  void check(std::size_t index, const CorpusRecord& r) {
    auto add = [&](std::string rule, std::string message) {
      report_.violations.push_back({index, r.doc_id, r.word_index, std::move(rule),
                                    std::move(message)});
    };

    // word_index contiguity within a document
    auto [it, inserted] = next_index_.try_emplace(r.doc_id, 0);
    if (r.word_index != it->second)
      add("word_index_contiguous", "word_index " + std::to_string(r.word_index) +
                                       " in doc '" + r.doc_id + "', expected " +
                                       std::to_string(it->second));
    it->second = r.word_index + 1;

    if (!std::isfinite(r.mean_rt) || r.mean_rt <= 0.0)
      add("mean_rt_positive", "mean_rt must be positive and finite, got " +
                                  format_double("%g", r.mean_rt));

    if (r.subwords.empty()) {
      add("subwords_nonempty", "record has no subword pieces");
    } else {
      std::string joined;
      for (std::size_t k = 0; k < r.subwords.size(); ++k) {
        const auto& s = r.subwords[k];
        joined += strip_marker(s.token, header_.subword_space_marker);
        if (!std::isfinite(s.logprob))
          add("logprob_finite", "subword " + std::to_string(k) + " logprob is not finite");
        else if (s.logprob > 0.0)
          add("logprob_nonpositive", "subword " + std::to_string(k) + " logprob " +
                                         format_double("%g", s.logprob) + " > 0");
        if (s.embedding) check_embedding(*s.embedding, "subword " + std::to_string(k), add);
        if (s.alternatives)
          check_block(*s.alternatives, "subword " + std::to_string(k) + " alternatives", add);
      }
      if (joined != r.surface)
        add("subword_concatenation",
            "subwords concatenate to '" + joined + "' but surface is '" + r.surface + "'");
    }

    if (r.embedding) check_embedding(*r.embedding, "target", add);
    if (r.pos_tag) check_tag(*r.pos_tag, "target", add);
    if (r.alternatives) check_block(*r.alternatives, "alternatives", add);
  }

 private:
  template <class Add>
  void check_embedding(const std::vector<double>& v, const std::string& where, Add& add) {
    bool finite = true, nonzero = false;
    for (double x : v) {
      finite &= std::isfinite(x);
      nonzero |= x != 0.0;
    }
    if (!finite) add("embedding_finite", where + " embedding has a non-finite component");
    if (!nonzero) add("embedding_nonzero", where + " embedding is the zero vector");
    const std::size_t expected = header_.embedding_dim ? *header_.embedding_dim
                                 : first_dim_       ? *first_dim_
                                                    : v.size();
    if (!first_dim_) first_dim_ = v.size();
    if (v.size() != expected)
      add("embedding_dim", where + " embedding has dimension " + std::to_string(v.size()) +
                               ", expected " + std::to_string(expected));
  }

  template <class Add>
  void check_tag(const std::string& tag, const std::string& where, Add& add) {
    if (tagset_ && !tagset_->contains(tag))
      add("pos_tagset", where + " pos_tag '" + tag + "' is not in the declared tagset");
  }

  template <class Add>
  void check_block(const AlternativeBlock& b, const std::string& where, Add& add) {
    if (b.entries.empty()) add("alternatives_nonempty", where + " has no entries");
    for (std::size_t k = 0; k < b.entries.size(); ++k) {
      const auto& e = b.entries[k];
      const std::string at = where + " entry " + std::to_string(k);
      if (e.embedding) check_embedding(*e.embedding, at, add);
      if (e.pos_tag) check_tag(*e.pos_tag, at, add);
    }
    if (b.mode == AlternativeMode::exact_vocab) {
      double mass = 0.0;
      bool probs_ok = true;
      std::map<std::string, int, std::less<>> seen;
      for (std::size_t k = 0; k < b.entries.size(); ++k) {
        const auto& e = b.entries[k];
        if (!e.prob) {
          add("prob_required", where + " entry " + std::to_string(k) +
                                   " lacks 'prob' in exact_vocab mode");
          probs_ok = false;
          continue;
        }
        if (!std::isfinite(*e.prob) || *e.prob <= 0.0 || *e.prob > 1.0) {
          add("prob_range", where + " entry " + std::to_string(k) + " prob " +
                                format_double("%g", *e.prob) + " outside (0, 1]");
          probs_ok = false;
        }
        mass += *e.prob;
        if (++seen[e.surface] == 2)
          add("distinct_entries", where + " repeats surface '" + e.surface + "'");
      }
      if (probs_ok && std::abs(mass - 1.0) > kProbabilityMassTolerance)
        add("probability_mass", where + ": probability mass " + format_double("%.2f", mass) +
                                    " outside tolerance (|mass - 1| = " +
                                    format_double("%.3g", std::abs(mass - 1.0)) + " > 1e-06)");
      if (b.sample_count)
        add("sample_count", where + " has sample_count in exact_vocab mode");
    } else {
      for (std::size_t k = 0; k < b.entries.size(); ++k)
        if (b.entries[k].prob)
          add("prob_absent", where + " entry " + std::to_string(k) +
                                 " carries 'prob' in mc_samples mode");
      if (!b.sample_count || *b.sample_count == 0)
        add("sample_count", where + " needs a positive sample_count in mc_samples mode");
      else if (*b.sample_count != b.entries.size())
        add("sample_count", where + " sample_count " + std::to_string(*b.sample_count) +
                                " differs from " + std::to_string(b.entries.size()) +
                                " entries");
    }
  }

  const CorpusHeader& header_;
  ValidationReport& report_;
  std::optional<Tagset> tagset_;
  std::optional<std::size_t> first_dim_;
  std::map<std::string, std::size_t, std::less<>> next_index_;
};

}  // namespace detail

/// Checks every record invariant; violations are collected, never thrown.
inline ValidationReport validate_corpus(const Corpus& corpus) {
  ValidationReport report;
  detail::Validator validator(corpus.header, report);
  for (std::size_t i = 0; i < corpus.records.size(); ++i) validator.check(i, corpus.records[i]);
  return report;
}

/// Parses a corpus stream without checking record invariants.
inline Corpus read_corpus(std::istream& in) {
  Corpus corpus;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw parse_error(lineno, std::string("malformed JSON: ") + e.what());
    }
    const detail::Reader reader{lineno};
    try {
      if (!have_header) {
        corpus.header = reader.header_of(obj);
        have_header = true;
      } else {
        corpus.records.push_back(reader.record_of(obj));
      }
    } catch (const nlohmann::json::exception& e) {
      throw parse_error(lineno, e.what());
    }
  }
  if (!have_header) throw parse_error(0, "corpus is empty (missing header line)");
  return corpus;
}

inline Corpus read_corpus_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error(0, "cannot open corpus file '" + path + "'");
  return read_corpus(in);
}

inline void throw_if_invalid(const ValidationReport& report) {
  if (report.ok()) return;
  const auto& v = report.violations.front();
  std::string msg = "record " + std::to_string(v.record) + " (doc '" + v.doc_id +
                    "', word_index " + std::to_string(v.word_index) + ") violates " + v.rule +
                    ": " + v.message;
  if (report.violations.size() > 1)
    msg += " (+" + std::to_string(report.violations.size() - 1) + " more)";
  throw validation_error(msg);
}

/// Parses and validates; records come back in file order.
inline Corpus load_corpus(std::istream& in) {
  Corpus corpus = read_corpus(in);
  throw_if_invalid(validate_corpus(corpus));
  return corpus;
}

inline Corpus load_corpus(const std::string& path) {
  Corpus corpus = read_corpus_file(path);
  throw_if_invalid(validate_corpus(corpus));
  return corpus;
}

inline std::string serialize_record(const CorpusRecord& r) { return detail::to_json(r).dump(); }

inline std::string serialize_header(const CorpusHeader& h) { return detail::to_json(h).dump(); }

inline void write_corpus(std::ostream& out, const Corpus& corpus) {
  out << serialize_header(corpus.header) << '\n';
  for (const auto& r : corpus.records) out << serialize_record(r) << '\n';
}

inline std::string serialize_corpus(const Corpus& corpus) {
  std::ostringstream out;
  write_corpus(out, corpus);
  return out.str();
}

// --- unigram frequencies -----------------------------------------------------

enum class OovPolicy { laplace_one, min_observed };

/// ASCII lowercase; other bytes pass through unchanged.
inline std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

/// Relative unigram frequencies with case-insensitive lookup.
///
/// laplace_one:  f(w) = (c(w) + 1) / (N + V), unseen words get 1 / (N + V).
/// min_observed: f(w) = c(w) / N, unseen words get the smallest observed f.
class UnigramTable {
 public:
  UnigramTable(const std::map<std::string, double, std::less<>>& counts, OovPolicy policy)
      : policy_(policy) {
    std::map<std::string, double, std::less<>> merged;
    for (const auto& [surface, count] : counts) {
      if (!std::isfinite(count) || count <= 0.0)
        throw validation_error("unigram count for '" + surface + "' must be positive, got " +
                               detail::format_double("%g", count));
      merged[lowercase(surface)] += count;
    }
    if (merged.empty()) throw validation_error("unigram table is empty");
    for (const auto& [_, count] : merged) total_count_ += count;
    const double vocab = static_cast<double>(merged.size());
    const double denom = policy == OovPolicy::laplace_one ? total_count_ + vocab : total_count_;
    oov_freq_ = policy == OovPolicy::laplace_one ? 1.0 / denom : 0.0;
    double min_freq = 1.0;
    for (const auto& [surface, count] : merged) {
      const double f = (policy == OovPolicy::laplace_one ? count + 1.0 : count) / denom;
      freq_.emplace(surface, f);
      min_freq = std::min(min_freq, f);
    }
    if (policy == OovPolicy::min_observed) oov_freq_ = min_freq;
  }

  double total_count() const noexcept { return total_count_; }
  OovPolicy oov_policy() const noexcept { return policy_; }
  std::size_t size() const noexcept { return freq_.size(); }

  double frequency(std::string_view surface) const {
    const auto it = freq_.find(lowercase(surface));
    return it == freq_.end() ? oov_freq_ : it->second;
  }

  double log_frequency(std::string_view surface) const { return std::log(frequency(surface)); }

  bool contains(std::string_view surface) const {
    return freq_.find(lowercase(surface)) != freq_.end();
  }

 private:
  OovPolicy policy_;
  double total_count_ = 0.0;
  double oov_freq_ = 0.0;
  std::map<std::string, double, std::less<>> freq_;
};

inline UnigramTable load_unigram_table(std::istream& in,
                                       OovPolicy policy = OovPolicy::laplace_one) {
  std::map<std::string, double, std::less<>> counts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
      throw parse_error(lineno, "expected 'surface<TAB>count'");
    const std::string surface = line.substr(0, tab);
    const std::string count_text = line.substr(tab + 1);
    char* end = nullptr;
    const double count = std::strtod(count_text.c_str(), &end);
    if (count_text.empty() || end != count_text.c_str() + count_text.size())
      throw parse_error(lineno, "count '" + count_text + "' is not a number");
    if (!std::isfinite(count) || count <= 0.0)
      throw validation_error("line " + std::to_string(lineno) + ": unigram count for '" +
                             surface + "' must be positive, got " + count_text);
    counts[surface] += count;
  }
  return UnigramTable(counts, policy);
}

inline UnigramTable load_unigram_table(const std::string& path,
                                       OovPolicy policy = OovPolicy::laplace_one) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error(0, "cannot open unigram table '" + path + "'");
  return load_unigram_table(in, policy);
}

}  // namespace simsurp
