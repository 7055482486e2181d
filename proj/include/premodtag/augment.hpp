#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "premodtag/corpus.hpp"

namespace premodtag {

// Seeded injection of early-modern print glyphs into surface forms:
// the long s (ſ), the eszett (ß) and tilded vowels (õ ã ũ ĩ) standing for a
// vowel + nasal abbreviation. Annotations are never touched.
struct AugmentConfig {
  double p_long_s = 0.02;
  double p_eszett = 0.01;
  double p_tilde = 0.01;
  std::uint64_t seed = 0;
};

// Deterministic given (corpus, config): each eligible site draws from a
// counter-based stream keyed on (seed, document, sentence, token, rule, site),
// so results do not depend on iteration order.
//
// Rules, applied in the order R2 (ss -> ß), R1 (non-final s -> ſ),
// R3 (vowel + n/m before consonant or word end -> tilded vowel); every
// character position is consumed by at most one rule.
Corpus augment(const Corpus& corpus, const AugmentConfig& config);

// Single-form counterpart used by augment(); exposed for tests.
std::string augment_form(std::string_view form, const AugmentConfig& config,
                         std::uint64_t doc_index, std::uint64_t sentence_index,
                         std::uint64_t token_index);

}  // namespace premodtag
