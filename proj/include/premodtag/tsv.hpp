#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "premodtag/corpus.hpp"

namespace premodtag {

// Corpus interchange format, shared by all tools:
//
//   form<TAB>lemma<TAB>POS<TAB>morph          mandatory header, first line
//   # doc_id = <id>                           starts a new document
//   # century = <12..20>                      optional, follows doc_id
//   # genre = <text>                          optional, follows doc_id
//   one token per line, four tab-separated columns
//   blank line                                sentence boundary
//
// Canonical encoding: UTF-8, LF line endings, single trailing newline.
// Unrecognized comment lines are skipped; CRLF input is accepted and
// canonicalized on the way in.

Corpus read_tsv(const std::filesystem::path& path);
Corpus read_tsv_string(std::string_view content);

void write_tsv(const Corpus& corpus, const std::filesystem::path& path);
std::string to_tsv(const Corpus& corpus);

}  // namespace premodtag
