#include "premodtag/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "premodtag/errors.hpp"
#include "premodtag/unicode.hpp"

namespace premodtag {

namespace {

std::unordered_set<std::string> load_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open authority list: " + path.string());
  std::unordered_set<std::string> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line.find_first_of(" \t") != std::string::npos)
      throw FormatError("authority entry contains whitespace: '" + line + "'", lineno);
    entries.insert(uni::nfkd(line));
  }
  if (entries.empty())
    throw ValidationError("authority list has no entries: " + path.string());
  return entries;
}

}  // namespace

bool Lexicon::is_listed(std::string_view raw) const {
  const std::string key = uni::nfkd(raw);
  return lemmas.count(key) || named_entities.count(key) || foreign.count(key);
}

Lexicon load_lexicon(const std::filesystem::path& lemma_path,
                     const std::filesystem::path& ne_path,
                     const std::filesystem::path& foreign_path) {
  Lexicon lex;
  lex.lemmas = load_list(lemma_path);
  lex.named_entities = load_list(ne_path);
  lex.foreign = load_list(foreign_path);
  return lex;
}

bool lemma_valid(std::string_view lemma, const Lexicon& lexicon) {
  if (lexicon.is_listed(lemma)) return true;
  if (!is_compound_lemma(lemma)) return false;
  const auto parts = compound_parts(lemma);
  if (parts.size() < 2) return false;
  for (const auto& part : parts)
    if (part.empty() || !lexicon.is_listed(part)) return false;
  return true;
}

ValidationReport validate(const Corpus& corpus, const Lexicon& lexicon, const Tagset& tagset) {
  ValidationReport report;
  std::set<CompoundFinding> compounds;
  for (const auto& doc : corpus.documents) {
    for (const auto& sent : doc.sentences) {
      for (std::size_t i = 0; i < sent.tokens.size(); ++i) {
        const auto& tok = sent.tokens[i];
        ++report.total_tokens;
        bool flagged = false;
        if (!lemma_valid(tok.lemma, lexicon)) {
          flagged = true;
          if (is_compound_lemma(tok.lemma)) {
            for (const auto& part : compound_parts(tok.lemma))
              if (part.empty() || !lexicon.is_listed(part))
                compounds.insert({tok.lemma, part});
          } else {
            ++report.unknown_lemmas[tok.lemma];
          }
        }
        if (!tagset.contains(tok.pos)) {
          flagged = true;
          report.invalid_pos.push_back({token_ref(doc, sent, i), tok.pos});
        }
        if (flagged) ++report.flagged_tokens;
      }
    }
  }
  report.invalid_compounds.assign(compounds.begin(), compounds.end());
  return report;
}

std::string format_validation_summary(const ValidationReport& report) {
  std::ostringstream out;
  std::size_t unknown_occurrences = 0;
  for (const auto& [lemma, count] : report.unknown_lemmas) unknown_occurrences += count;
  out << "tokens checked      " << report.total_tokens << "\n"
      << "tokens flagged      " << report.flagged_tokens << "\n"
      << "unknown lemmas      " << report.unknown_lemmas.size() << " (" << unknown_occurrences
      << " occurrences)\n"
      << "invalid compounds   " << report.invalid_compounds.size() << "\n"
      << "invalid POS tags    " << report.invalid_pos.size() << "\n";
  out.precision(6);
  out << "coverage            " << std::fixed << report.coverage() << "\n";
  return out.str();
}

std::string validation_report_tsv(const ValidationReport& report) {
  std::ostringstream out;
  out << "finding\titem\tdetail\tcount\n";
  for (const auto& [lemma, count] : report.unknown_lemmas)
    out << "unknown_lemma\t" << lemma << "\t_\t" << count << "\n";
  for (const auto& finding : report.invalid_compounds)
    out << "invalid_compound\t" << finding.lemma << "\t" << finding.part << "\t1\n";
  for (const auto& finding : report.invalid_pos)
    out << "invalid_pos\t" << finding.tag << "\t" << finding.position << "\t1\n";
  return out.str();
}

}  // namespace premodtag
