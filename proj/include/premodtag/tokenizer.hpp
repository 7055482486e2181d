#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "premodtag/corpus.hpp"

namespace premodtag {

// Maximalist tokenization: blank space is the main separator, the hyphen is a
// token of its own, locutions are never merged.
struct TokenizerConfig {
  // Characters split off as standalone tokens. The hyphen is always treated
  // as a member of this set, whether listed or not.
  std::set<char32_t> punctuation = {U'.', U',', U';', U':', U'!', U'?', U'(',
                                    U')', U'«' /* « */, U'»' /* » */,
                                    U'"', U'\'', U'-'};
  // Apostrophe-like characters; between letters they close an elided clitic
  // ("l'" + "homme") when split_elision is on, and stay word-internal otherwise.
  std::set<char32_t> elision_markers = {U'\'', U'’' /* ’ */};
  bool split_elision = true;
};

struct TokenSpan {
  std::string form;
  std::size_t begin = 0;  // byte offsets into the input
  std::size_t end = 0;

  bool operator==(const TokenSpan&) const = default;
};

// Total: never fails; invalid UTF-8 bytes are decoded as U+FFFD.
// Every output span satisfies input.substr(begin, end - begin) == form, and
// the uncovered remainder of the input is whitespace only.
std::vector<TokenSpan> tokenize_spans(std::string_view text,
                                      const TokenizerConfig& config = {});

std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizerConfig& config = {});

// Tokenizes raw text into an unannotated corpus (lemma/POS/morph = "_").
// Sentence boundaries fall after sentence-final punctuation (. ! ?) and at
// line ends.
Corpus tokenize_corpus(std::string_view text, const TokenizerConfig& config = {},
                       std::string_view doc_id = "doc1");

}  // namespace premodtag
