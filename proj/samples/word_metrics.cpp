// Prints surprisal, similarity-adjusted surprisal and information value for
// every word of a corpus file under one similarity kernel.
//
//   word_metrics <corpus.jsonl> [similarity]

#include <cstdio>
#include <iostream>

#include "simsurp/simsurp.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: word_metrics <corpus.jsonl> [similarity]\n";
    return 2;
  }
  try {
    const auto corpus = simsurp::load_corpus(argv[1]);
    const auto spec = simsurp::parse_similarity_spec(argc > 2 ? argv[2] : "cosine");
    const simsurp::SimilarityKernel kernel(spec, corpus.header.tagset_set());
    std::printf("%-12s %10s %10s %10s\n", "word", "h", "h_z", "i_d");
    for (std::size_t i = 0; i < corpus.records.size(); ++i) {
      const auto& r = corpus.records[i];
      const auto m = simsurp::compute_record_metrics(r, i, kernel, {},
                                                     corpus.header.subword_space_marker);
      std::printf("%-12s %10.6f %10.6f %10.6f\n", r.surface.c_str(), m.surprisal,
                  m.sim_adjusted_surprisal.value, m.information_value.value);
    }
  } catch (const simsurp::error& e) {
    std::cerr << e.kind() << ": " << e.what() << '\n';
    return 1;
  }
}
