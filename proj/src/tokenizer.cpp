#include "premodtag/tokenizer.hpp"

#include "premodtag/unicode.hpp"

namespace premodtag {

namespace {

struct Unit {
  char32_t cp = 0;
  bool valid = true;  // false: raw byte from a malformed sequence, kept verbatim
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Decodes text into code-point units with byte offsets. Malformed bytes are
// kept as single opaque units so reconstruction stays byte-exact.
std::vector<Unit> decode_units(std::string_view text) {
  std::vector<Unit> units;
  units.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t start = i;
    const auto b0 = static_cast<unsigned char>(text[i]);
    if (b0 < 0x80) {
      units.push_back({b0, true, start, start + 1});
      ++i;
      continue;
    }
    std::u32string one;
    // Longest valid prefix of 1..4 bytes starting at i.
    std::size_t taken = 0;
    for (std::size_t len = 1; len <= 4 && i + len <= text.size(); ++len) {
      std::u32string tmp;
      if (uni::try_decode_utf8(text.substr(i, len), tmp) && tmp.size() == 1) {
        one = tmp;
        taken = len;
        break;
      }
    }
    if (taken == 0) {
      units.push_back({0, false, start, start + 1});
      i = start + 1;
    } else {
      units.push_back({one[0], true, start, start + taken});
      i = start + taken;
    }
  }
  return units;
}

enum class Kind { space, punct, marker, word };

Kind classify(const Unit& u, const TokenizerConfig& cfg) {
  if (!u.valid) return Kind::word;
  if (uni::is_space(u.cp)) return Kind::space;
  if (cfg.elision_markers.count(u.cp)) return Kind::marker;
  if (u.cp == U'-' || cfg.punctuation.count(u.cp)) return Kind::punct;
  return Kind::word;
}

}  // namespace

std::vector<TokenSpan> tokenize_spans(std::string_view text, const TokenizerConfig& config) {
  const std::vector<Unit> units = decode_units(text);
  std::vector<TokenSpan> tokens;
  std::size_t word_begin = 0;
  bool in_word = false;

  auto flush = [&](std::size_t end) {
    if (!in_word) return;
    tokens.push_back({std::string(text.substr(word_begin, end - word_begin)), word_begin, end});
    in_word = false;
  };

  for (std::size_t i = 0; i < units.size(); ++i) {
    const Unit& u = units[i];
    switch (classify(u, config)) {
      case Kind::space:
        flush(u.begin);
        break;
      case Kind::punct:
        flush(u.begin);
        tokens.push_back({std::string(text.substr(u.begin, u.end - u.begin)), u.begin, u.end});
        break;
      case Kind::marker: {
        const bool letter_before = in_word;
        const bool letter_after = i + 1 < units.size() &&
                                  classify(units[i + 1], config) == Kind::word;
        if (letter_before && letter_after) {
          if (config.split_elision) {
            // "l'" + "homme": the marker closes the clitic token.
            tokens.push_back({std::string(text.substr(word_begin, u.end - word_begin)),
                              word_begin, u.end});
            in_word = false;
          }
          // else: marker stays word-internal, keep accumulating
        } else {
          flush(u.begin);
          tokens.push_back({std::string(text.substr(u.begin, u.end - u.begin)), u.begin, u.end});
        }
        break;
      }
      case Kind::word:
        if (!in_word) {
          word_begin = u.begin;
          in_word = true;
        }
        break;
    }
  }
  flush(text.size());
  return tokens;
}

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config) {
  std::vector<std::string> forms;
  for (auto& span : tokenize_spans(text, config)) forms.push_back(std::move(span.form));
  return forms;
}

Corpus tokenize_corpus(std::string_view text, const TokenizerConfig& config,
                       std::string_view doc_id) {
  const auto spans = tokenize_spans(text, config);
  Corpus corpus;
  std::vector<AnnotatedToken> pending;

  auto flush_sentence = [&] {
    if (pending.empty()) return;
    corpus.add_sentence(doc_id, std::move(pending));
    pending = {};
  };

  for (std::size_t i = 0; i < spans.size(); ++i) {
    const auto& span = spans[i];
    pending.push_back(AnnotatedToken{span.form, kEmptyMarker, kEmptyMarker, kEmptyMarker});
    const bool sentence_final =
        span.form == "." || span.form == "!" || span.form == "?";
    bool newline_follows = false;
    const std::size_t gap_end = (i + 1 < spans.size()) ? spans[i + 1].begin : text.size();
    for (std::size_t b = span.end; b < gap_end; ++b)
      if (text[b] == '\n') {
        newline_follows = true;
        break;
      }
    if (sentence_final || newline_follows) flush_sentence();
  }
  flush_sentence();
  return corpus;
}

}  // namespace premodtag
