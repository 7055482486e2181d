#include <doctest.h>

#include <random>

#include "premodtag/corpus.hpp"
#include "premodtag/errors.hpp"
#include "premodtag/tsv.hpp"
#include "premodtag/unicode.hpp"
#include "testutil.hpp"

using namespace premodtag;

namespace {
const char* kHeader = "form\tlemma\tPOS\tmorph\n";
}

TEST_CASE("read_tsv: single annotated token") {
  const std::string input = std::string(kHeader) + "mangeons\tmanger\tVERcjg\t_\n";
  const Corpus corpus = read_tsv_string(input);
  REQUIRE(corpus.documents.size() == 1);
  REQUIRE(corpus.documents[0].sentences.size() == 1);
  REQUIRE(corpus.documents[0].sentences[0].tokens.size() == 1);
  const auto& tok = corpus.documents[0].sentences[0].tokens[0];
  CHECK(tok.form == "mangeons");
  CHECK(tok.lemma == "manger");
  CHECK(tok.pos == "VERcjg");
  CHECK(tok.morph == "_");
}

TEST_CASE("read_tsv: header with zero tokens is an empty corpus") {
  CHECK_THROWS_AS(read_tsv_string(kHeader), EmptyCorpusError);
  CHECK_THROWS_AS(read_tsv_string(""), EmptyCorpusError);
}

TEST_CASE("read_tsv: blank line separates sentences") {
  const std::string input =
      std::string(kHeader) + "le\tle\tDETdef\t_\n\nroy\troi\tNOMcom\t_\n";
  const Corpus corpus = read_tsv_string(input);
  REQUIRE(corpus.documents.size() == 1);
  CHECK(corpus.documents[0].sentences.size() == 2);
  CHECK(corpus.documents[0].sentences[0].tokens.size() == 1);
  CHECK(corpus.documents[0].sentences[1].tokens.size() == 1);
  CHECK(corpus.documents[0].sentences[0].id == "s1");
  CHECK(corpus.documents[0].sentences[1].id == "s2");
}

TEST_CASE("read_tsv: malformed header") {
  CHECK_THROWS_AS(read_tsv_string("form\tlemma\tpos\tmorph\nx\ty\tz\t_\n"), FormatError);
  CHECK_THROWS_AS(read_tsv_string("nonsense\n"), FormatError);
}

TEST_CASE("read_tsv: wrong column count carries the line number") {
  const std::string input = std::string(kHeader) + "a\tb\tc\t_\nbad\tline\n";
  try {
    read_tsv_string(input);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("read_tsv: document metadata") {
  const std::string input = std::string(kHeader) +
                            "# doc_id = saulsaye\n# century = 16\n# genre = drama\n"
                            "arbre\tarbre\tNOMcom\t_\n"
                            "# doc_id = lettres\n"
                            "lettre\tlettre\tNOMcom\t_\n";
  const Corpus corpus = read_tsv_string(input);
  REQUIRE(corpus.documents.size() == 2);
  CHECK(corpus.documents[0].id == "saulsaye");
  CHECK(corpus.documents[0].century == 16);
  CHECK(corpus.documents[0].genre == "drama");
  CHECK(corpus.documents[1].id == "lettres");
  CHECK_FALSE(corpus.documents[1].century.has_value());
}

TEST_CASE("read_tsv: century range and duplicate doc ids are rejected") {
  CHECK_THROWS_AS(
      read_tsv_string(std::string(kHeader) + "# doc_id = a\n# century = 9\nx\tx\tPRE\t_\n"),
      FormatError);
  CHECK_THROWS_AS(read_tsv_string(std::string(kHeader) +
                                  "# doc_id = a\nx\tx\tPRE\t_\n# doc_id = a\ny\ty\tPRE\t_\n"),
                  FormatError);
}

TEST_CASE("read_tsv: CRLF input is canonicalized") {
  const Corpus corpus =
      read_tsv_string("form\tlemma\tPOS\tmorph\r\nroy\troi\tNOMcom\t_\r\n");
  CHECK(corpus.token_count() == 1);
  CHECK(to_tsv(corpus) == std::string(kHeader) + "roy\troi\tNOMcom\t_\n");
}

TEST_CASE("read_tsv: invalid utf8 is a format error") {
  CHECK_THROWS_AS(read_tsv_string(std::string(kHeader) + "a\xC3(\tb\tPRE\t_\n"), FormatError);
}

TEST_CASE("write_tsv: single-token corpus is header + token + trailing newline") {
  Corpus corpus;
  corpus.add_sentence("doc1", {AnnotatedToken{"mangeons", "manger", "VERcjg", "_"}});
  const std::string out = to_tsv(corpus);
  CHECK(out == std::string(kHeader) + "mangeons\tmanger\tVERcjg\t_\n");
  CHECK(out.back() == '\n');
  CHECK(out.find("\n\n") == std::string::npos);
}

TEST_CASE("write_tsv: two documents produce two doc_id lines") {
  Corpus corpus;
  corpus.add_sentence("a", {AnnotatedToken{"x", "x", "PRE", "_"}});
  corpus.add_sentence("b", {AnnotatedToken{"y", "y", "PRE", "_"}});
  const std::string out = to_tsv(corpus);
  CHECK(out.find("# doc_id = a\n") != std::string::npos);
  CHECK(out.find("# doc_id = b\n") != std::string::npos);
}

TEST_CASE("write_tsv: tab or newline in a field is a serialization error") {
  Corpus corpus;
  corpus.add_sentence("doc1", {AnnotatedToken{"a\tb", "x", "PRE", "_"}});
  CHECK_THROWS_AS(to_tsv(corpus), SerializationError);
  Corpus corpus2;
  corpus2.add_sentence("doc1", {AnnotatedToken{"ok", "x\ny", "PRE", "_"}});
  CHECK_THROWS_AS(to_tsv(corpus2), SerializationError);
}

TEST_CASE("round trip: fixtures are structurally and byte identical") {
  for (const auto& entry : std::filesystem::directory_iterator(testutil::data_dir())) {
    if (entry.path().extension() != ".tsv") continue;
    CAPTURE(entry.path().string());
    const Corpus corpus = read_tsv(entry.path());
    const std::string serialized = to_tsv(corpus);
    CHECK(read_tsv_string(serialized) == corpus);
  }
}

TEST_CASE("round trip: random corpora") {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 100; ++i) {
    const Corpus corpus = testutil::random_corpus(rng);
    const std::string serialized = to_tsv(corpus);
    CHECK(read_tsv_string(serialized) == corpus);
    // write . read . write is byte-stable
    CHECK(to_tsv(read_tsv_string(serialized)) == serialized);
  }
}

TEST_CASE("nfkd_normalize: decomposition, fixpoint, token counts") {
  Corpus corpus;
  corpus.add_sentence("doc1", {AnnotatedToken{"é", "été", "NOMcom", "_"},
                               AnnotatedToken{"abc", "abc", "PRE", "_"}});
  const Corpus normalized = nfkd_normalize(corpus);
  CHECK(normalized.documents[0].sentences[0].tokens[0].form == "e\xCC\x81");
  CHECK(normalized.documents[0].sentences[0].tokens[1].form == "abc");
  CHECK(normalized.token_count() == corpus.token_count());
  CHECK(nfkd_normalize(normalized) == normalized);

  Corpus ascii;
  ascii.add_sentence("doc1", {AnnotatedToken{"plain", "plain", "PRE", "_"}});
  CHECK(nfkd_normalize(ascii) == ascii);
}

TEST_CASE("nfkd_normalize leaves pos and morph untouched") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const Corpus corpus = testutil::random_corpus(rng);
    const Corpus normalized = nfkd_normalize(corpus);
    REQUIRE(normalized.token_count() == corpus.token_count());
    for (std::size_t d = 0; d < corpus.documents.size(); ++d)
      for (std::size_t s = 0; s < corpus.documents[d].sentences.size(); ++s)
        for (std::size_t t = 0; t < corpus.documents[d].sentences[s].tokens.size(); ++t) {
          CHECK(normalized.documents[d].sentences[s].tokens[t].pos ==
                corpus.documents[d].sentences[s].tokens[t].pos);
          CHECK(normalized.documents[d].sentences[s].tokens[t].morph ==
                corpus.documents[d].sentences[s].tokens[t].morph);
        }
  }
}

TEST_CASE("charset_inventory") {
  Corpus corpus;
  corpus.add_sentence("doc1", {AnnotatedToken{"á", "a", "PRE", "_"},
                               AnnotatedToken{"à", "a", "PRE", "_"},
                               AnnotatedToken{"é", "e", "PRE", "_"},
                               AnnotatedToken{"è", "e", "PRE", "_"},
                               AnnotatedToken{"ó", "o", "PRE", "_"},
                               AnnotatedToken{"ò", "o", "PRE", "_"}});
  CHECK(charset_inventory(corpus).size() == 6);
  CHECK(charset_inventory(nfkd_normalize(corpus)).size() == 5);

  CHECK(charset_inventory(Corpus{}).empty());

  Corpus abc;
  abc.add_sentence("doc1", {AnnotatedToken{"abc", "abc", "PRE", "_"}});
  CHECK(charset_inventory(abc) == std::set<char32_t>{U'a', U'b', U'c'});
}

TEST_CASE("charset inventory shrinks on fixtures whose decompositions share parts") {
  // Decomposition shares base letters and marks, so the inventory shrinks.
  // (Not universal: a corpus of {á, è} alone decomposes 2 -> 4 characters.)
  auto inventory_of = [](const std::vector<std::string>& forms) {
    Corpus corpus;
    std::vector<AnnotatedToken> toks;
    for (const auto& f : forms) toks.push_back(AnnotatedToken{f, "l", "PRE", "_"});
    corpus.add_sentence("doc1", std::move(toks));
    return std::make_pair(charset_inventory(corpus).size(),
                          charset_inventory(nfkd_normalize(corpus)).size());
  };
  auto [pre6, post6] = inventory_of({"á", "à", "é", "è", "ó", "ò"});
  CHECK(pre6 == 6);
  CHECK(post6 == 5);
  auto [pre9, post9] = inventory_of({"á", "à", "é", "è", "ó", "ò", "a", "e", "o"});
  CHECK(pre9 == 9);
  CHECK(post9 == 5);
  auto [pre_ascii, post_ascii] = inventory_of({"plain", "ascii"});
  CHECK(pre_ascii == post_ascii);
}

TEST_CASE("load_tagset") {
  const Tagset tagset = load_tagset(testutil::repo_data_dir() / "cattex.tagset");
  CHECK(tagset.name == "cattex");
  CHECK(tagset.contains("ADVgen"));
  CHECK(tagset.contains("VERcjg"));
  CHECK_FALSE(tagset.contains("LOCconj"));
  CHECK(tagset.codes.size() > 30);
}

TEST_CASE("compound lemma helpers") {
  CHECK(is_compound_lemma("tres_obeissant"));
  CHECK_FALSE(is_compound_lemma("parce"));
  CHECK_FALSE(is_compound_lemma("_"));
  const auto parts = compound_parts("a_b_c");
  CHECK(parts == std::vector<std::string>{"a", "b", "c"});
}
