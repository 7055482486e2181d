#include "premodtag/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include "premodtag/errors.hpp"
#include "premodtag/parallel.hpp"
#include "premodtag/unicode.hpp"

namespace premodtag {

std::vector<VariantPair> extract_pairs(const Corpus& gold) {
  // (lemma, pos, morph) -> form -> count
  std::map<Analysis, std::map<std::string, std::uint64_t>> groups;
  for (const auto& doc : gold.documents)
    for (const auto& sent : doc.sentences)
      for (const auto& tok : sent.tokens)
        ++groups[Analysis{tok.lemma, tok.pos, tok.morph}][tok.form];

  std::vector<VariantPair> pairs;
  for (const auto& [key, forms] : groups) {
    if (forms.size() < 2) continue;
    for (auto a = forms.begin(); a != forms.end(); ++a) {
      for (auto b = std::next(a); b != forms.end(); ++b) {
        VariantPair pair;
        pair.form_a = a->first;
        pair.form_b = b->first;
        pair.freq_a = a->second;
        pair.freq_b = b->second;
        if (pair.form_b < pair.form_a) {
          std::swap(pair.form_a, pair.form_b);
          std::swap(pair.freq_a, pair.freq_b);
        }
        pair.lemma = key.lemma;
        pair.pos = key.pos;
        pair.morph = key.morph;
        pairs.push_back(std::move(pair));
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

SwapSets build_swap_sets(const VariantPair& pair, const Corpus& test) {
  SwapSets sets;
  auto matches = [&](const AnnotatedToken& tok) {
    return tok.lemma == pair.lemma && (tok.form == pair.form_a || tok.form == pair.form_b);
  };
  for (const auto& doc : test.documents) {
    Document doc_a, doc_b;
    doc_a.id = doc.id;
    doc_a.century = doc.century;
    doc_a.genre = doc.genre;
    doc_b = doc_a;
    for (const auto& sent : doc.sentences) {
      bool hit = false;
      for (const auto& tok : sent.tokens)
        if (matches(tok)) hit = true;
      if (!hit) continue;
      Sentence sent_a = sent, sent_b = sent;
      for (std::size_t t = 0; t < sent.tokens.size(); ++t) {
        if (!matches(sent.tokens[t])) continue;
        sent_a.tokens[t].form = pair.form_a;
        sent_b.tokens[t].form = pair.form_b;
        ++sets.occurrences;
      }
      doc_a.sentences.push_back(std::move(sent_a));
      doc_b.sentences.push_back(std::move(sent_b));
    }
    if (!doc_a.sentences.empty()) {
      sets.set_a.documents.push_back(std::move(doc_a));
      sets.set_b.documents.push_back(std::move(doc_b));
    }
  }
  return sets;
}

namespace {

Corpus strip_annotations(const Corpus& corpus) {
  Corpus out = corpus;
  for (auto& doc : out.documents)
    for (auto& sent : doc.sentences)
      for (auto& tok : sent.tokens) {
        tok.lemma = kEmptyMarker;
        tok.pos = kEmptyMarker;
        tok.morph = kEmptyMarker;
      }
  return out;
}

// Accuracy over the rewritten targets: tokens carrying the given form with the
// pair's lemma in the gold copy.
double target_accuracy(const Corpus& gold, const Corpus& tagged, const VariantPair& pair,
                       const std::string& form, Task task) {
  std::uint64_t correct = 0, support = 0;
  for (std::size_t d = 0; d < gold.documents.size(); ++d) {
    for (std::size_t s = 0; s < gold.documents[d].sentences.size(); ++s) {
      const auto& gs = gold.documents[d].sentences[s];
      const auto& ts = tagged.documents[d].sentences[s];
      for (std::size_t t = 0; t < gs.tokens.size(); ++t) {
        const auto& gt = gs.tokens[t];
        if (gt.form != form || gt.lemma != pair.lemma) continue;
        ++support;
        const bool ok = task == Task::lemma
                            ? uni::nfkd(ts.tokens[t].lemma) == uni::nfkd(gt.lemma)
                            : ts.tokens[t].pos == gt.pos;
        if (ok) ++correct;
      }
    }
  }
  return support == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(support);
}

}  // namespace

std::optional<PairResult> evaluate_pair(const TaggerModel& model, const VariantPair& pair,
                                        const SwapSets& sets, Task task) {
  if (sets.empty()) return std::nullopt;
  const Corpus tagged_a = tag(model, strip_annotations(sets.set_a));
  const Corpus tagged_b = tag(model, strip_annotations(sets.set_b));
  PairResult result;
  result.pair = pair;
  result.acc_a = target_accuracy(sets.set_a, tagged_a, pair, pair.form_a, task);
  result.acc_b = target_accuracy(sets.set_b, tagged_b, pair, pair.form_b, task);
  result.delta = std::abs(result.acc_a - result.acc_b);
  result.weight = std::min(pair.freq_a, pair.freq_b);
  result.occurrences = sets.occurrences;
  return result;
}

RobustnessReport aggregate(std::vector<PairResult> rows, std::vector<SkippedPair> skipped) {
  if (rows.empty()) throw Error("no variant pairs to aggregate");
  RobustnessReport report;
  report.skipped = std::move(skipped);

  std::vector<double> deltas;
  deltas.reserve(rows.size());
  for (const auto& row : rows) deltas.push_back(row.delta);
  std::sort(deltas.begin(), deltas.end());
  const std::size_t n = deltas.size();
  report.median_delta =
      n % 2 == 1 ? deltas[n / 2] : (deltas[n / 2 - 1] + deltas[n / 2]) / 2.0;

  bool any_zero = false;
  double log_sum = 0.0, weighted_log_sum = 0.0;
  double sum = 0.0, weighted_sum = 0.0, weight_sum = 0.0;
  for (const auto& row : rows) {
    if (row.delta == 0.0) any_zero = true;
    else {
      log_sum += std::log(row.delta);
      weighted_log_sum += static_cast<double>(row.weight) * std::log(row.delta);
    }
    sum += row.delta;
    weighted_sum += static_cast<double>(row.weight) * row.delta;
    weight_sum += static_cast<double>(row.weight);
  }
  report.arith_mean_delta = sum / static_cast<double>(n);
  report.weighted_arith_mean_delta =
      weight_sum == 0.0 ? report.arith_mean_delta : weighted_sum / weight_sum;
  report.geo_mean_delta = any_zero ? 0.0 : std::exp(log_sum / static_cast<double>(n));
  report.weighted_geo_mean_delta =
      any_zero ? 0.0
               : (weight_sum == 0.0 ? report.geo_mean_delta
                                    : std::exp(weighted_log_sum / weight_sum));

  report.per_pair = std::move(rows);
  return report;
}

RobustnessReport run_robustness(const TaggerModel& model, const Corpus& gold,
                                const Corpus& test, Task task, unsigned jobs) {
  const auto pairs = extract_pairs(gold);
  std::vector<std::optional<PairResult>> slots(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::size_t i) {
    const SwapSets sets = build_swap_sets(pairs[i], test);
    slots[i] = evaluate_pair(model, pairs[i], sets, task);
  });
  std::vector<PairResult> rows;
  std::vector<SkippedPair> skipped;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (slots[i])
      rows.push_back(*slots[i]);
    else
      skipped.push_back({pairs[i], "no occurrence of either variant in the test set"});
  }
  if (rows.empty()) {
    RobustnessReport report;
    report.skipped = std::move(skipped);
    return report;
  }
  return aggregate(std::move(rows), std::move(skipped));
}

std::string robustness_pairs_tsv(const RobustnessReport& report) {
  std::ostringstream out;
  out << "form_a\tform_b\tlemma\tpos\tmorph\tfreq_a\tfreq_b\toccurrences\tacc_a\tacc_b\t"
         "delta\n";
  out << std::setprecision(17);
  for (const auto& row : report.per_pair) {
    const auto& p = row.pair;
    out << p.form_a << '\t' << p.form_b << '\t' << p.lemma << '\t' << p.pos << '\t' << p.morph
        << '\t' << p.freq_a << '\t' << p.freq_b << '\t' << row.occurrences << '\t' << row.acc_a
        << '\t' << row.acc_b << '\t' << row.delta << '\n';
  }
  for (const auto& skip : report.skipped) {
    const auto& p = skip.pair;
    out << p.form_a << '\t' << p.form_b << '\t' << p.lemma << '\t' << p.pos << '\t' << p.morph
        << '\t' << p.freq_a << '\t' << p.freq_b << "\t0\tskipped\tskipped\tskipped\n";
  }
  return out.str();
}

std::string format_robustness_summary(const RobustnessReport& report) {
  std::ostringstream out;
  out << "pairs evaluated            " << report.per_pair.size() << "\n"
      << "pairs skipped              " << report.skipped.size() << "\n";
  out << std::fixed << std::setprecision(6);
  out << "median delta               " << report.median_delta << "\n"
      << "geometric mean delta       " << report.geo_mean_delta << "\n"
      << "weighted geo mean delta    " << report.weighted_geo_mean_delta << "\n"
      << "arithmetic mean delta      " << report.arith_mean_delta << "\n"
      << "weighted arith mean delta  " << report.weighted_arith_mean_delta << "\n";
  return out.str();
}

}  // namespace premodtag
