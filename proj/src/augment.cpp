#include "premodtag/augment.hpp"

#include <vector>

#include "premodtag/errors.hpp"
#include "premodtag/hash.hpp"
#include "premodtag/unicode.hpp"

namespace premodtag {

namespace {

enum Rule : std::uint64_t { kEszett = 2, kLongS = 1, kTilde = 3 };

bool is_vowel(char32_t cp) {
  // Compare on the NFKD base letter so é/à/ô count as vowels.
  const std::string decomposed = uni::nfkd(uni::encode_utf8(cp));
  const std::u32string base = uni::decode_utf8(decomposed);
  const char32_t b = base.empty() ? cp : uni::to_lower(base[0]);
  return b == U'a' || b == U'e' || b == U'i' || b == U'o' || b == U'u' || b == U'y';
}

bool tildable(char32_t cp) {
  return cp == U'o' || cp == U'a' || cp == U'u' || cp == U'i';
}

char32_t tilded(char32_t cp) {
  switch (cp) {
    case U'o': return U'õ';  // õ
    case U'a': return U'ã';  // ã
    case U'u': return U'ũ';  // ũ
    case U'i': return U'ĩ';  // ĩ
    default: return cp;
  }
}

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ConfigError(std::string(name) + " must be in [0,1]");
}

}  // namespace

std::string augment_form(std::string_view form, const AugmentConfig& config,
                         std::uint64_t doc_index, std::uint64_t sentence_index,
                         std::uint64_t token_index) {
  const std::u32string cps = uni::decode_utf8(form);
  const std::size_t n = cps.size();
  std::vector<bool> consumed(n, false);
  // Output op per position: 0 keep, 1 drop, or a replacement code point.
  std::u32string out_cp(cps);
  std::vector<bool> drop(n, false);

  auto fires = [&](Rule rule, std::uint64_t site, double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    const std::uint64_t k = rng::key(
        {config.seed, doc_index, sentence_index, token_index,
         static_cast<std::uint64_t>(rule), site});
    return rng::uniform01(k) < p;
  };

  // R2: ss -> ß, leftmost non-overlapping pairs.
  std::uint64_t site = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (cps[i] != U's' || cps[i + 1] != U's') continue;
    if (fires(kEszett, site, config.p_eszett)) {
      out_cp[i] = U'ß';  // ß
      drop[i + 1] = true;
      consumed[i] = consumed[i + 1] = true;
      ++i;  // pairs never overlap
    }
    ++site;
  }

  // R1: s -> ſ in non-word-final position (a word character must follow).
  site = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (cps[i] != U's' || consumed[i]) continue;
    const bool word_continues = i + 1 < n && uni::is_word_char(cps[i + 1]) && !drop[i + 1];
    if (!word_continues) continue;
    if (fires(kLongS, site, config.p_long_s)) {
      out_cp[i] = U'ſ';  // ſ
      consumed[i] = true;
    }
    ++site;
  }

  // R3: vowel + n/m before consonant or word end -> tilded vowel.
  site = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!tildable(cps[i]) || consumed[i]) continue;
    const char32_t nasal = cps[i + 1];
    if ((nasal != U'n' && nasal != U'm') || consumed[i + 1]) continue;
    const bool end_or_consonant =
        i + 2 >= n || !uni::is_letter(cps[i + 2]) || !is_vowel(cps[i + 2]);
    if (!end_or_consonant) continue;
    if (fires(kTilde, site, config.p_tilde)) {
      out_cp[i] = tilded(cps[i]);
      drop[i + 1] = true;
      consumed[i] = consumed[i + 1] = true;
      ++i;
    }
    ++site;
  }

  std::u32string result;
  result.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    if (!drop[i]) result.push_back(out_cp[i]);
  return uni::encode_utf8(result);
}

Corpus augment(const Corpus& corpus, const AugmentConfig& config) {
  check_probability(config.p_long_s, "p_long_s");
  check_probability(config.p_eszett, "p_eszett");
  check_probability(config.p_tilde, "p_tilde");

  Corpus out = corpus;
  for (std::size_t d = 0; d < out.documents.size(); ++d) {
    auto& doc = out.documents[d];
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      auto& sent = doc.sentences[s];
      for (std::size_t t = 0; t < sent.tokens.size(); ++t) {
        sent.tokens[t].form = augment_form(sent.tokens[t].form, config, d, s, t);
      }
    }
  }
  return out;
}

}  // namespace premodtag
