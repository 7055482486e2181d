#include "premodtag/corpus.hpp"

#include <fstream>

#include "premodtag/errors.hpp"
#include "premodtag/unicode.hpp"

namespace premodtag {

bool Corpus::empty() const { return token_count() == 0; }

std::size_t Corpus::token_count() const {
  std::size_t n = 0;
  for (const auto& doc : documents)
    for (const auto& sent : doc.sentences) n += sent.tokens.size();
  return n;
}

std::size_t Corpus::sentence_count() const {
  std::size_t n = 0;
  for (const auto& doc : documents) n += doc.sentences.size();
  return n;
}

void Corpus::add_sentence(std::string_view doc_id, std::vector<AnnotatedToken> tokens) {
  if (documents.empty() || documents.back().id != doc_id)
    documents.push_back(Document{std::string(doc_id), {}, {}, {}});
  auto& doc = documents.back();
  Sentence sent;
  sent.id = "s" + std::to_string(doc.sentences.size() + 1);
  sent.tokens = std::move(tokens);
  doc.sentences.push_back(std::move(sent));
}

std::string token_ref(const Document& doc, const Sentence& sent, std::size_t token_index) {
  return doc.id + ":" + sent.id + ":" + std::to_string(token_index + 1);
}

namespace {

bool has_forbidden_ws(std::string_view field) {
  return field.find('\t') != std::string_view::npos ||
         field.find('\n') != std::string_view::npos ||
         field.find('\r') != std::string_view::npos;
}

void check_token(const Document& doc, const Sentence& sent, std::size_t idx,
                 const AnnotatedToken& tok) {
  const std::string where = " at " + token_ref(doc, sent, idx);
  if (tok.form.empty()) throw SerializationError("empty form" + where);
  if (has_forbidden_ws(tok.form) || has_forbidden_ws(tok.lemma) ||
      has_forbidden_ws(tok.pos) || has_forbidden_ws(tok.morph))
    throw SerializationError("tab or newline in token field" + where);
  if (tok.form.front() == ' ' || tok.form.back() == ' ')
    throw SerializationError("leading/trailing whitespace in form" + where);
  if (tok.lemma.empty() || tok.pos.empty() || tok.morph.empty())
    throw SerializationError("empty annotation field" + where);
  if (is_compound_lemma(tok.lemma)) {
    for (const auto& part : compound_parts(tok.lemma))
      if (part.empty())
        throw SerializationError("compound lemma with empty part '" + tok.lemma + "'" + where);
  }
}

}  // namespace

void check_invariants(const Corpus& corpus) {
  std::set<std::string> doc_ids;
  for (const auto& doc : corpus.documents) {
    if (doc.id.empty() || has_forbidden_ws(doc.id))
      throw SerializationError("invalid doc_id '" + doc.id + "'");
    if (!doc_ids.insert(doc.id).second)
      throw SerializationError("duplicate doc_id '" + doc.id + "'");
    if (doc.century && (*doc.century < 12 || *doc.century > 20))
      throw SerializationError("century out of range in document '" + doc.id + "'");
    std::set<std::string> sent_ids;
    for (const auto& sent : doc.sentences) {
      if (sent.tokens.empty())
        throw SerializationError("empty sentence '" + sent.id + "' in document '" + doc.id + "'");
      if (!sent_ids.insert(sent.id).second)
        throw SerializationError("duplicate sentence id '" + sent.id + "' in document '" +
                                 doc.id + "'");
      for (std::size_t i = 0; i < sent.tokens.size(); ++i)
        check_token(doc, sent, i, sent.tokens[i]);
    }
  }
}

Tagset load_tagset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open tagset file: " + path.string());
  Tagset tagset;
  tagset.name = path.stem().string();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line.find_first_of(" \t") != std::string::npos)
      throw FormatError("tagset code contains whitespace: '" + line + "'", lineno);
    tagset.codes.insert(line);
  }
  if (tagset.codes.empty())
    throw ValidationError("tagset file has no codes: " + path.string());
  return tagset;
}

bool is_compound_lemma(std::string_view lemma) {
  return lemma.size() > 1 && lemma.find('_') != std::string_view::npos;
}

std::vector<std::string> compound_parts(std::string_view lemma) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = lemma.find('_', start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(lemma.substr(start));
      break;
    }
    parts.emplace_back(lemma.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

Corpus nfkd_normalize(const Corpus& corpus) {
  Corpus out = corpus;
  for (auto& doc : out.documents)
    for (auto& sent : doc.sentences)
      for (auto& tok : sent.tokens) {
        tok.form = uni::nfkd(tok.form);
        tok.lemma = uni::nfkd(tok.lemma);
      }
  return out;
}

std::set<char32_t> charset_inventory(const Corpus& corpus) {
  std::set<char32_t> inventory;
  for (const auto& doc : corpus.documents)
    for (const auto& sent : doc.sentences)
      for (const auto& tok : sent.tokens)
        for (char32_t cp : uni::decode_utf8(tok.form)) inventory.insert(cp);
  return inventory;
}

}  // namespace premodtag
