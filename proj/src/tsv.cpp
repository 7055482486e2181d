#include "premodtag/tsv.hpp"

#include <fstream>
#include <sstream>

#include "premodtag/errors.hpp"
#include "premodtag/unicode.hpp"

namespace premodtag {

namespace {

constexpr const char* kHeader = "form\tlemma\tPOS\tmorph";
constexpr const char* kDefaultDocId = "doc1";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Matches "# key = value" comment lines; returns false for anything else.
bool parse_comment(std::string_view line, std::string& key, std::string& value) {
  if (line.empty() || line[0] != '#') return false;
  line.remove_prefix(1);
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) return false;
  key = std::string(trim(line.substr(0, eq)));
  value = std::string(trim(line.substr(eq + 1)));
  return !key.empty();
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

struct Parser {
  Corpus corpus;
  std::vector<AnnotatedToken> pending;
  bool have_doc = false;
  std::set<std::string> seen_doc_ids;

  // Tokens or metadata seen before any "# doc_id" line go to an implicit doc.
  Document& current_doc() {
    if (!have_doc) start_doc(kDefaultDocId, 0);
    return corpus.documents.back();
  }

  // Pending tokens always belong to an already-created document.
  void flush_sentence() {
    if (pending.empty()) return;
    auto& doc = corpus.documents.back();
    Sentence sent;
    sent.id = "s" + std::to_string(doc.sentences.size() + 1);
    sent.tokens = std::move(pending);
    pending.clear();
    doc.sentences.push_back(std::move(sent));
  }

  void start_doc(std::string id, std::size_t lineno) {
    flush_sentence();
    if (!seen_doc_ids.insert(id).second)
      throw FormatError("duplicate doc_id '" + id + "'", lineno);
    corpus.documents.push_back(Document{std::move(id), {}, {}, {}});
    have_doc = true;
  }

  void add_token(AnnotatedToken tok) {
    if (!have_doc) start_doc(kDefaultDocId, 0);
    pending.push_back(std::move(tok));
  }
};

}  // namespace

Corpus read_tsv_string(std::string_view content) {
  if (content.empty()) throw EmptyCorpusError("empty corpus input");
  if (!uni::is_valid_utf8(content)) throw FormatError("input is not valid UTF-8");

  Parser parser;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos < content.size()) {
    auto eol = content.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos)
                                ? content.substr(pos)
                                : content.substr(pos, eol - pos);
    pos = (eol == std::string_view::npos) ? content.size() : eol + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (!header_seen) {
      if (line != kHeader)
        throw FormatError("malformed header, expected '" + std::string(kHeader) + "'", lineno);
      header_seen = true;
      continue;
    }
    if (line.empty()) {
      parser.flush_sentence();
      continue;
    }
    std::string key, value;
    if (line[0] == '#') {
      if (!parse_comment(line, key, value)) continue;
      if (key == "doc_id") {
        if (value.empty()) throw FormatError("empty doc_id", lineno);
        parser.start_doc(value, lineno);
      } else if (key == "century") {
        int century = 0;
        try {
          std::size_t used = 0;
          century = std::stoi(value, &used);
          if (used != value.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
          throw FormatError("century is not an integer: '" + value + "'", lineno);
        }
        if (century < 12 || century > 20)
          throw FormatError("century out of range [12..20]: " + value, lineno);
        parser.current_doc().century = century;
      } else if (key == "genre") {
        parser.current_doc().genre = value;
      }
      // other comments are skipped
      continue;
    }
    const auto fields = split_tabs(line);
    if (fields.size() != 4)
      throw FormatError("expected 4 tab-separated columns, found " +
                            std::to_string(fields.size()),
                        lineno);
    AnnotatedToken tok;
    tok.form = std::string(fields[0]);
    tok.lemma = std::string(fields[1]);
    tok.pos = std::string(fields[2]);
    tok.morph = std::string(fields[3]);
    if (tok.form.empty()) throw FormatError("empty form", lineno);
    if (tok.form.front() == ' ' || tok.form.back() == ' ')
      throw FormatError("leading or trailing whitespace in form", lineno);
    if (tok.lemma.empty() || tok.pos.empty() || tok.morph.empty())
      throw FormatError("empty annotation column (use '_' for none)", lineno);
    parser.add_token(std::move(tok));
  }
  if (!header_seen) throw FormatError("malformed header: input has no header line");
  parser.flush_sentence();
  Corpus corpus = std::move(parser.corpus);
  if (corpus.empty()) throw EmptyCorpusError("corpus has no tokens");
  return corpus;
}

Corpus read_tsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_tsv_string(buf.str());
}

std::string to_tsv(const Corpus& corpus) {
  check_invariants(corpus);
  std::string out;
  out += kHeader;
  out += '\n';
  const bool implicit_single_doc = corpus.documents.size() == 1 &&
                                   corpus.documents.front().id == kDefaultDocId &&
                                   !corpus.documents.front().century &&
                                   !corpus.documents.front().genre;
  for (const auto& doc : corpus.documents) {
    if (!implicit_single_doc) {
      out += "# doc_id = " + doc.id + "\n";
      if (doc.century) out += "# century = " + std::to_string(*doc.century) + "\n";
      if (doc.genre) out += "# genre = " + *doc.genre + "\n";
    }
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      if (s > 0) out += '\n';
      for (const auto& tok : doc.sentences[s].tokens) {
        out += tok.form;
        out += '\t';
        out += tok.lemma;
        out += '\t';
        out += tok.pos;
        out += '\t';
        out += tok.morph;
        out += '\n';
      }
    }
  }
  return out;
}

void write_tsv(const Corpus& corpus, const std::filesystem::path& path) {
  const std::string payload = to_tsv(corpus);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path.string());
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw IoError("failed writing to: " + path.string());
}

}  // namespace premodtag
