#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace premodtag {

// Placeholder for "no annotation" (lemma/POS) and for the empty morphology string.
inline constexpr const char* kEmptyMarker = "_";

struct AnnotatedToken {
  std::string form;
  std::string lemma = kEmptyMarker;
  std::string pos = kEmptyMarker;
  std::string morph = kEmptyMarker;

  bool annotated() const { return lemma != kEmptyMarker && pos != kEmptyMarker; }
  bool operator==(const AnnotatedToken&) const = default;
};

struct Sentence {
  std::string id;
  std::vector<AnnotatedToken> tokens;

  bool operator==(const Sentence&) const = default;
};

struct Document {
  std::string id;
  std::optional<int> century;  // 12..20 when present
  std::optional<std::string> genre;
  std::vector<Sentence> sentences;

  bool operator==(const Document&) const = default;
};

struct Corpus {
  std::vector<Document> documents;

  bool operator==(const Corpus&) const = default;

  bool empty() const;
  std::size_t token_count() const;
  std::size_t sentence_count() const;

  // Appends a sentence to the given document with a positional id ("s1", "s2", ...).
  // Creates the document if it is not the last one.
  void add_sentence(std::string_view doc_id, std::vector<AnnotatedToken> tokens);
};

// Renders "doc:sent:index" references for findings and error messages (index 1-based).
std::string token_ref(const Document& doc, const Sentence& sent, std::size_t token_index);

// Checks the AnnotatedToken/Sentence/Document invariants, throwing SerializationError
// with a description of the first violation.
void check_invariants(const Corpus& corpus);

struct Tagset {
  std::string name;
  std::set<std::string> codes;

  bool contains(std::string_view code) const { return codes.count(std::string(code)) > 0; }
};

// One code per line, '#' comments and blank lines skipped. Tagset name = file stem.
Tagset load_tagset(const std::filesystem::path& path);

// True if the lemma is compounded (contains '_' separating non-empty parts is not
// checked here; see compound_parts).
bool is_compound_lemma(std::string_view lemma);

// Splits "tres_obeissant" into {"tres", "obeissant"}. Parts may be empty if the
// lemma is malformed; callers decide how to report that.
std::vector<std::string> compound_parts(std::string_view lemma);

// NFKD-normalizes every form and lemma. POS, morphology, structure and token
// counts are untouched. Idempotent.
Corpus nfkd_normalize(const Corpus& corpus);

// Distinct code points over all surface forms.
std::set<char32_t> charset_inventory(const Corpus& corpus);

}  // namespace premodtag
