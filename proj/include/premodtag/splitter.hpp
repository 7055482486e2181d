#pragma once

#include <cstdint>
#include <string>

#include "premodtag/corpus.hpp"

namespace premodtag {

enum class SplitUnit { sentence, document };

struct SplitConfig {
  double train = 0.84;
  double dev = 0.06;
  double test = 0.10;
  std::uint64_t seed = 0;
  SplitUnit unit = SplitUnit::sentence;
};

struct SplitResult {
  Corpus train;
  Corpus dev;
  Corpus test;
};

// Deterministic partition at sentence (or document) granularity: units are
// ordered by a seeded hash of (doc id, sentence id) and assigned greedily to
// the most token-starved set. No unit is ever split across sets.
SplitResult split(const Corpus& corpus, const SplitConfig& config);

enum class Stratify { century, genre, both };

// Extracts n_samples contiguous sentence runs of >= sample_tokens tokens each
// (closing at the first sentence boundary past the target), spread as evenly
// as counts allow over the requested strata. Runs never cross documents.
// Deterministic given corpus order. Each sample becomes one output document.
Corpus sample_ood(const Corpus& corpus, std::size_t n_samples, std::size_t sample_tokens,
                  Stratify stratify);

}  // namespace premodtag
