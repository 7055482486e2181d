// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Expected values are pinned here, independent of the
// library internals they check (brute-force oracles recomputed in place).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "premodtag/augment.hpp"
#include "premodtag/corpus.hpp"
#include "premodtag/evaluator.hpp"
#include "premodtag/lexicon.hpp"
#include "premodtag/robustness.hpp"
#include "premodtag/splitter.hpp"
#include "premodtag/tagger.hpp"
#include "premodtag/tokenizer.hpp"
#include "premodtag/tsv.hpp"
#include "premodtag/unicode.hpp"

using namespace premodtag;
using Clock = std::chrono::steady_clock;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw Failure(message);
}

std::string fixture(const char* name) {
  return std::string(PREMODTAG_TEST_DATA) + "/" + name;
}

const Corpus& mini_corpus() {
  static const Corpus corpus = read_tsv(fixture("mini_corpus.tsv"));
  return corpus;
}

// ---------------------------------------------------------------------------
// 1. Tokenizer oracle suite
void criterion_tokenizer() {
  using Forms = std::vector<std::string>;
  const std::vector<std::pair<std::string, Forms>> cases = {
      {"peut-être", {"peut", "-", "être"}}, {"long-temps", {"long", "-", "temps"}},
      {"tandis que", {"tandis", "que"}},    {"à demi", {"à", "demi"}},
      {"quant à", {"quant", "à"}},          {"monsieur", {"monsieur"}},
  };
  for (const auto& [input, expected] : cases) {
    const Forms got = tokenize(input);
    std::ostringstream oss;
    oss << "tokenize(\"" << input << "\") gave " << got.size() << " tokens, expected "
        << expected.size();
    require(got == expected, oss.str());
  }
}

// ---------------------------------------------------------------------------
// 2. Split ratio reproduction on a 157,941-token synthetic corpus
Corpus synthetic_corpus(std::size_t total_tokens) {
  std::mt19937_64 rng(318008);
  Corpus corpus;
  std::size_t remaining = total_tokens;
  std::size_t doc_no = 1;
  std::size_t in_doc = 0;
  while (remaining > 0) {
    std::size_t len = 8 + rng() % 17;  // 8..24
    if (remaining < 32) len = remaining;
    len = std::min(len, remaining);
    std::vector<AnnotatedToken> toks;
    for (std::size_t t = 0; t < len; ++t) {
      const std::string word = "w" + std::to_string(rng() % 5000);
      toks.push_back(AnnotatedToken{word, word, t % 7 == 0 ? "VERcjg" : "NOMcom", "_"});
    }
    corpus.add_sentence("doc" + std::to_string(doc_no), std::move(toks));
    remaining -= len;
    if (++in_doc == 1000) {
      in_doc = 0;
      ++doc_no;
    }
  }
  return corpus;
}

void check_ratio(const Corpus& corpus, double train, double dev, double test,
                 const char* label) {
  SplitConfig config;
  config.train = train;
  config.dev = dev;
  config.test = test;
  config.seed = 20;
  const SplitResult r = split(corpus, config);
  const double total = static_cast<double>(corpus.token_count());
  const double shares[3] = {r.train.token_count() / total, r.dev.token_count() / total,
                            r.test.token_count() / total};
  const double targets[3] = {train, dev, test};
  for (int i = 0; i < 3; ++i) {
    std::ostringstream oss;
    oss << label << ": share " << shares[i] << " vs target " << targets[i];
    require(std::abs(shares[i] - targets[i]) <= 0.015, oss.str());
  }
  require(r.train.token_count() + r.dev.token_count() + r.test.token_count() ==
              corpus.token_count(),
          "split is not a partition");
}

void criterion_split_ratios() {
  const Corpus corpus = synthetic_corpus(157941);
  require(corpus.token_count() == 157941, "synthetic corpus size drifted");
  require(corpus.sentence_count() >= 100, "synthetic corpus too small for the tolerance");
  check_ratio(corpus, 0.84, 0.06, 0.10, "84/6/10");
  check_ratio(corpus, 0.94, 0.01, 0.05, "94/1/5");
}

// ---------------------------------------------------------------------------
// 3. Delta-accuracy zero oracle on the fixture corpus
void criterion_delta_zero() {
  const Corpus& mini = mini_corpus();
  const TaggerModel model = train(mini, ModelKind::majority, 0);
  const RobustnessReport report = run_robustness(model, mini, mini);
  require(report.per_pair.size() >= 5, "expected at least 5 variant pairs in the fixture");
  for (const auto& row : report.per_pair) {
    std::ostringstream oss;
    oss << "pair (" << row.pair.form_a << ", " << row.pair.form_b << ") has delta "
        << row.delta << ", expected exactly 0";
    require(row.delta == 0.0, oss.str());
  }
  require(report.median_delta == 0.0, "median delta is not exactly 0");
  require(report.geo_mean_delta == 0.0, "geometric mean delta is not exactly 0");
  require(report.weighted_geo_mean_delta == 0.0, "weighted geometric mean is not exactly 0");
  require(report.arith_mean_delta == 0.0, "arithmetic mean delta is not exactly 0");
  require(report.weighted_arith_mean_delta == 0.0, "weighted arithmetic mean is not exactly 0");
}

// ---------------------------------------------------------------------------
// 4. Delta-accuracy arithmetic oracle with injected synthetic deltas
void criterion_delta_arithmetic() {
  std::vector<PairResult> rows;
  const double injected[] = {0.025, 0.0, 0.0, 0.025, 0.0, 0.025, 0.0, 0.0};
  std::uint64_t weight = 1;
  for (double delta : injected) {
    PairResult row;
    row.pair = VariantPair{"a", "b", "l", "PRE", "_", weight, weight + 1};
    row.acc_a = 1.0;
    row.acc_b = 1.0 - delta;
    row.delta = delta;
    row.weight = weight;
    row.occurrences = 1;
    rows.push_back(row);
    ++weight;
  }
  const RobustnessReport report = aggregate(rows);

  // Brute-force reference sums, computed independently here.
  double sum = 0.0, wsum = 0.0, wtotal = 0.0;
  for (const auto& row : rows) {
    sum += row.delta;
    wsum += static_cast<double>(row.weight) * row.delta;
    wtotal += static_cast<double>(row.weight);
  }
  const double brute_mean = sum / static_cast<double>(rows.size());
  const double brute_weighted = wsum / wtotal;
  require(std::abs(report.arith_mean_delta - brute_mean) <= 1e-12,
          "arithmetic mean differs from brute force");
  require(std::abs(report.weighted_arith_mean_delta - brute_weighted) <= 1e-12,
          "weighted arithmetic mean differs from brute force");
  require(report.geo_mean_delta == 0.0, "geometric mean with a zero delta must be 0");
  require(report.weighted_geo_mean_delta == 0.0,
          "weighted geometric mean with a zero delta must be 0");
}

// ---------------------------------------------------------------------------
// 5. Swap-set neutralization on every mined pair
void criterion_swap_sets() {
  const Corpus& mini = mini_corpus();
  const auto pairs = extract_pairs(mini);
  require(!pairs.empty(), "no variant pairs mined from the fixture");
  for (const auto& pair : pairs) {
    const SwapSets sets = build_swap_sets(pair, mini);
    require(!sets.empty(), "pair unexpectedly absent from its own source corpus");
    require(sets.set_a.sentence_count() == sets.set_b.sentence_count(),
            "sentence counts differ between swap sets");
    require(sets.set_a.documents.size() == sets.set_b.documents.size(),
            "document counts differ between swap sets");
    // Brute-force comparison: equality after form relabeling.
    std::size_t targets_seen = 0;
    for (std::size_t d = 0; d < sets.set_a.documents.size(); ++d) {
      const auto& da = sets.set_a.documents[d];
      const auto& db = sets.set_b.documents[d];
      require(da.sentences.size() == db.sentences.size(), "sentence lists differ");
      for (std::size_t s = 0; s < da.sentences.size(); ++s) {
        const auto& sa = da.sentences[s];
        const auto& sb = db.sentences[s];
        require(sa.tokens.size() == sb.tokens.size(), "token counts differ");
        for (std::size_t t = 0; t < sa.tokens.size(); ++t) {
          const auto& ta = sa.tokens[t];
          const auto& tb = sb.tokens[t];
          const bool target = ta.lemma == pair.lemma &&
                              (ta.form == pair.form_a || ta.form == pair.form_b);
          if (target) {
            ++targets_seen;
            require(ta.form == pair.form_a, "set_a target not rewritten to form_a");
            require(tb.form == pair.form_b, "set_b target not rewritten to form_b");
            require(ta.lemma == tb.lemma && ta.pos == tb.pos && ta.morph == tb.morph,
                    "annotations differ at a target");
          } else {
            require(ta == tb, "contexts differ outside the target tokens");
          }
        }
      }
    }
    require(targets_seen == sets.occurrences, "occurrence count mismatch");
  }
}

// ---------------------------------------------------------------------------
// 6. NFKD inventory and idempotence
void criterion_nfkd() {
  Corpus corpus;
  corpus.add_sentence("doc1", {AnnotatedToken{"á", "_", "_", "_"}, AnnotatedToken{"à", "_", "_", "_"},
                               AnnotatedToken{"é", "_", "_", "_"}, AnnotatedToken{"è", "_", "_", "_"},
                               AnnotatedToken{"ó", "_", "_", "_"}, AnnotatedToken{"ò", "_", "_", "_"}});
  require(charset_inventory(corpus).size() == 6, "pre-NFKD inventory is not 6");
  const Corpus normalized = nfkd_normalize(corpus);
  require(charset_inventory(normalized).size() == 5, "post-NFKD inventory is not 5");
  require(normalized.token_count() == corpus.token_count(), "NFKD changed token counts");
  require(nfkd_normalize(normalized) == normalized, "NFKD is not a fixpoint on the corpus");

  std::mt19937_64 rng(271828);
  for (int i = 0; i < 10000; ++i) {
    std::u32string s;
    const std::size_t len = rng() % 32;
    for (std::size_t k = 0; k < len; ++k) s.push_back(1 + rng() % 0xFF);  // Latin-1 range
    const std::string text = uni::encode_utf8(s);
    const std::string once = uni::nfkd(text);
    if (uni::nfkd(once) != once) {
      std::ostringstream oss;
      oss << "NFKD not idempotent on sample " << i;
      throw Failure(oss.str());
    }
  }
}

// ---------------------------------------------------------------------------
// 7. Augmentation invariants
void criterion_augmentation() {
  const Corpus& mini = mini_corpus();

  AugmentConfig zero;
  zero.p_long_s = zero.p_eszett = zero.p_tilde = 0.0;
  zero.seed = 7;
  require(to_tsv(augment(mini, zero)) == to_tsv(mini), "p=0 is not the identity");

  AugmentConfig full;
  full.p_long_s = 1.0;
  full.p_eszett = 0.0;
  full.p_tilde = 0.0;
  const Corpus landscape = augment(mini, full);
  for (const auto& doc : landscape.documents)
    for (const auto& sent : doc.sentences)
      for (const auto& tok : sent.tokens) {
        const std::u32string cps = uni::decode_utf8(tok.form);
        for (std::size_t i = 0; i < cps.size(); ++i)
          if (cps[i] == U'ſ')
            require(i + 1 < cps.size() && uni::is_word_char(cps[i + 1]),
                    "word-final long s in '" + tok.form + "'");
      }

  AugmentConfig mixed;
  mixed.p_long_s = 0.4;
  mixed.p_eszett = 0.6;
  mixed.p_tilde = 0.5;
  mixed.seed = 99;
  const Corpus a = augment(mini, mixed);
  const Corpus b = augment(mini, mixed);
  require(to_tsv(a) == to_tsv(b), "same seed does not reproduce byte-identical output");
  require(a.token_count() == mini.token_count(), "augmentation changed token counts");
  for (std::size_t d = 0; d < mini.documents.size(); ++d)
    for (std::size_t s = 0; s < mini.documents[d].sentences.size(); ++s)
      for (std::size_t t = 0; t < mini.documents[d].sentences[s].tokens.size(); ++t) {
        const auto& before = mini.documents[d].sentences[s].tokens[t];
        const auto& after = a.documents[d].sentences[s].tokens[t];
        require(before.lemma == after.lemma && before.pos == after.pos &&
                    before.morph == after.morph,
                "augmentation touched an annotation");
      }
}

// ---------------------------------------------------------------------------
// 8. Tagger sanity on the fixture corpus
void criterion_tagger() {
  const Corpus& mini = mini_corpus();
  SplitConfig config;
  config.train = 0.8;
  config.dev = 0.0;
  config.test = 0.2;
  config.seed = 42;
  const SplitResult parts = split(mini, config);
  require(!parts.train.empty() && !parts.test.empty(), "fixture split degenerate");

  const TaggerModel majority = train(parts.train, ModelKind::majority, 7);
  const TaggerModel context = train(parts.train, ModelKind::context, 7);

  // Majority model scores 100% on its unambiguous training forms.
  std::set<std::string> unambiguous;
  for (const auto& [form, analyses] : majority.form_table)
    if (analyses.size() == 1) unambiguous.insert(form);
  const Corpus train_tagged = tag(majority, parts.train);
  std::size_t checked = 0;
  for (std::size_t d = 0; d < parts.train.documents.size(); ++d)
    for (std::size_t s = 0; s < parts.train.documents[d].sentences.size(); ++s)
      for (std::size_t t = 0; t < parts.train.documents[d].sentences[s].tokens.size(); ++t) {
        const auto& gold = parts.train.documents[d].sentences[s].tokens[t];
        const auto& pred = train_tagged.documents[d].sentences[s].tokens[t];
        if (!unambiguous.count(gold.form)) continue;
        ++checked;
        require(pred.lemma == gold.lemma && pred.pos == gold.pos && pred.morph == gold.morph,
                "majority model missed an unambiguous training form: " + gold.form);
      }
  require(checked > 1000, "too few unambiguous training tokens to be meaningful");

  // Context model >= majority model on held-out POS accuracy.
  const Corpus pred_majority = tag(majority, parts.test);
  const Corpus pred_context = tag(context, parts.test);
  const EvalReport em = evaluate(parts.test, pred_majority, majority, Task::pos);
  const EvalReport ec = evaluate(parts.test, pred_context, context, Task::pos);
  {
    std::ostringstream oss;
    oss << "context POS accuracy " << ec.all.accuracy() << " < majority "
        << em.all.accuracy();
    require(ec.all.accuracy() >= em.all.accuracy(), oss.str());
  }

  // Totality and determinism.
  for (const Corpus* tagged : {&pred_majority, &pred_context})
    for (const auto& doc : tagged->documents)
      for (const auto& sent : doc.sentences)
        for (const auto& tok : sent.tokens)
          require(tok.annotated(), "tag() left a token unannotated");
  require(tag(majority, parts.test) == pred_majority, "majority tagging is not deterministic");
  require(tag(context, parts.test) == pred_context, "context tagging is not deterministic");
  require(model_to_string(train(parts.train, ModelKind::context, 7)) ==
              model_to_string(context),
          "context training is not deterministic");
}

// ---------------------------------------------------------------------------
// 9. Validation oracle
void criterion_validation() {
  const Lexicon lexicon = load_lexicon(fixture("lemmas.txt"), fixture("named_entities.txt"),
                                       fixture("foreign.txt"));
  const Tagset tagset = load_tagset(std::string(PREMODTAG_DATA) + "/cattex.tagset");

  require(lemma_valid("tres_obeissant", lexicon), "tres_obeissant should be valid by parts");

  Corpus bad;
  bad.add_sentence("doc1", {AnnotatedToken{"bien", "bien", "LOCconj", "_"}});
  const ValidationReport flagged = validate(bad, lexicon, tagset);
  require(flagged.invalid_pos.size() == 1 && flagged.invalid_pos[0].tag == "LOCconj",
          "LOCconj was not flagged as an invalid tag");

  // Monotonicity under 100 random lexicon extensions.
  std::mt19937_64 rng(23);
  Lexicon growing;
  growing.lemmas = {"roi"};
  growing.named_entities = {"Paris"};
  growing.foreign = {"sir"};
  const Corpus& mini = mini_corpus();
  std::size_t last = validate(mini, growing, tagset).flagged_tokens;
  std::vector<std::string> pool;
  for (const auto& entry : lexicon.lemmas) pool.push_back(entry);
  std::sort(pool.begin(), pool.end());
  for (int i = 0; i < 100; ++i) {
    growing.lemmas.insert(pool[rng() % pool.size()]);
    const std::size_t now = validate(mini, growing, tagset).flagged_tokens;
    std::ostringstream oss;
    oss << "findings grew from " << last << " to " << now << " at extension " << i;
    require(now <= last, oss.str());
    last = now;
  }
  require(last < validate(mini, Lexicon{{"roi"}, {"Paris"}, {"sir"}}, tagset).flagged_tokens,
          "extensions never reduced the findings");
}

// ---------------------------------------------------------------------------
// 10. TSV round trips over every fixture
void criterion_tsv_round_trip() {
  std::size_t checked = 0;
  for (const auto& entry :
       std::filesystem::directory_iterator(std::string(PREMODTAG_TEST_DATA))) {
    if (entry.path().extension() != ".tsv") continue;
    ++checked;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string content = buf.str();
    const Corpus corpus = read_tsv_string(content);
    require(to_tsv(corpus) == content,
            "write(read(x)) is not byte-identical for " + entry.path().string());
    require(read_tsv_string(to_tsv(corpus)) == corpus,
            "read(write(c)) is not structurally identical for " + entry.path().string());
  }
  require(checked >= 2, "expected at least two TSV fixtures");
}

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  std::function<void()> fn;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "tokenizer oracle suite", 1.0, criterion_tokenizer},
      {2, "split ratio reproduction (157,941 tokens)", 5.0, criterion_split_ratios},
      {3, "delta-accuracy zero oracle", 5.0, criterion_delta_zero},
      {4, "delta-accuracy arithmetic oracle", 1.0, criterion_delta_arithmetic},
      {5, "swap-set neutralization", 10.0, criterion_swap_sets},
      {6, "NFKD inventory and idempotence", 10.0, criterion_nfkd},
      {7, "augmentation invariants", 10.0, criterion_augmentation},
      {8, "tagger sanity", 30.0, criterion_tagger},
      {9, "validation oracle", 10.0, criterion_validation},
      {10, "TSV round trip", 10.0, criterion_tsv_round_trip},
  };

  const auto suite_start = Clock::now();
  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = Clock::now();
    std::string error;
    try {
      criterion.fn();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (error.empty() && seconds > criterion.budget_seconds) {
      std::ostringstream oss;
      oss << "exceeded runtime budget (" << seconds << "s > " << criterion.budget_seconds
          << "s)";
      error = oss.str();
    }
    if (error.empty()) {
      std::printf("PASS  %2d  %-45s (%.2fs)\n", criterion.id, criterion.title, seconds);
    } else {
      std::printf("FAIL  %2d  %-45s (%.2fs): %s\n", criterion.id, criterion.title, seconds,
                  error.c_str());
      ++failures;
    }
  }
  const double total = std::chrono::duration<double>(Clock::now() - suite_start).count();
  std::printf("----  %d/%zu criteria passed in %.2fs\n",
              static_cast<int>(criteria.size()) - failures, criteria.size(), total);
  if (total > 120.0) {
    std::printf("FAIL  suite exceeded the 2-minute budget\n");
    ++failures;
  }
  return failures == 0 ? 0 : 1;
}
