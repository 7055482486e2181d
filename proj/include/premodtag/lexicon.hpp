#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "premodtag/corpus.hpp"

namespace premodtag {

// Authority lists. Entries are stored NFKD-normalized; matching is accent-encoding
// insensitive but case sensitive (lemma case distinguishes proper from common nouns).
struct Lexicon {
  std::unordered_set<std::string> lemmas;
  std::unordered_set<std::string> named_entities;
  std::unordered_set<std::string> foreign;

  // Membership of a raw entry in lemmas ∪ named_entities ∪ foreign.
  bool is_listed(std::string_view raw) const;
};

// Each file: UTF-8, one entry per line, '#' comments and blank lines skipped,
// duplicates collapsed. Throws IoError on a missing file and ValidationError
// when a file yields no entries.
Lexicon load_lexicon(const std::filesystem::path& lemma_path,
                     const std::filesystem::path& ne_path,
                     const std::filesystem::path& foreign_path);

// A lemma is valid iff it is listed, or it is compounded and every
// underscore-separated part is itself listed.
bool lemma_valid(std::string_view lemma, const Lexicon& lexicon);

struct CompoundFinding {
  std::string lemma;
  std::string part;

  auto operator<=>(const CompoundFinding&) const = default;
};

struct PosFinding {
  std::string position;  // "doc:sent:index"
  std::string tag;

  bool operator==(const PosFinding&) const = default;
};

struct ValidationReport {
  std::map<std::string, std::size_t> unknown_lemmas;  // lemma -> occurrence count
  std::vector<CompoundFinding> invalid_compounds;     // distinct, sorted
  std::vector<PosFinding> invalid_pos;                // one per occurrence
  std::size_t total_tokens = 0;
  std::size_t flagged_tokens = 0;  // tokens with at least one finding

  double coverage() const {
    return total_tokens == 0
               ? 1.0
               : 1.0 - static_cast<double>(flagged_tokens) / static_cast<double>(total_tokens);
  }
};

// Never aborts: reports findings for every token.
ValidationReport validate(const Corpus& corpus, const Lexicon& lexicon, const Tagset& tagset);

// Human-readable summary and a TSV rendering (finding type, item, detail, count).
std::string format_validation_summary(const ValidationReport& report);
std::string validation_report_tsv(const ValidationReport& report);

}  // namespace premodtag
