#include "premodtag/evaluator.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "premodtag/errors.hpp"
#include "premodtag/unicode.hpp"

namespace premodtag {

namespace {

void check_alignment(const Corpus& gold, const Corpus& predicted) {
  if (gold.documents.size() != predicted.documents.size())
    throw AlignmentError("document count differs: " + std::to_string(gold.documents.size()) +
                         " vs " + std::to_string(predicted.documents.size()));
  for (std::size_t d = 0; d < gold.documents.size(); ++d) {
    const auto& gd = gold.documents[d];
    const auto& pd = predicted.documents[d];
    if (gd.sentences.size() != pd.sentences.size())
      throw AlignmentError("sentence count differs in document '" + gd.id + "'");
    for (std::size_t s = 0; s < gd.sentences.size(); ++s) {
      const auto& gs = gd.sentences[s];
      const auto& ps = pd.sentences[s];
      if (gs.tokens.size() != ps.tokens.size())
        throw AlignmentError("token count differs at " + gd.id + ":" + gs.id);
      for (std::size_t t = 0; t < gs.tokens.size(); ++t)
        if (gs.tokens[t].form != ps.tokens[t].form)
          throw AlignmentError("form mismatch at " + token_ref(gd, gs, t) + ": '" +
                               gs.tokens[t].form + "' vs '" + ps.tokens[t].form + "'");
    }
  }
}

}  // namespace

EvalReport evaluate(const Corpus& gold, const Corpus& predicted, const TaggerModel& model,
                    Task task) {
  check_alignment(gold, predicted);
  EvalReport report;
  report.task = task;
  const auto& ambiguous_set = model.ambiguous_forms(task);

  for (std::size_t d = 0; d < gold.documents.size(); ++d) {
    for (std::size_t s = 0; s < gold.documents[d].sentences.size(); ++s) {
      const auto& gs = gold.documents[d].sentences[s];
      const auto& ps = predicted.documents[d].sentences[s];
      for (std::size_t t = 0; t < gs.tokens.size(); ++t) {
        const auto& gt = gs.tokens[t];
        const auto& pt = ps.tokens[t];
        std::string gold_label, pred_label;
        if (task == Task::lemma) {
          gold_label = uni::nfkd(gt.lemma);
          pred_label = uni::nfkd(pt.lemma);
        } else {
          gold_label = gt.pos;
          pred_label = pt.pos;
        }
        const bool correct = gold_label == pred_label;
        ++report.confusion[{gold_label, pred_label}];

        auto bump = [&](StratumScore& score) {
          ++score.support;
          if (correct) ++score.correct;
        };
        bump(report.all);
        const bool known = model.known_forms.count(gt.form) > 0;
        if (!known) bump(report.unknown_tokens);
        if (known && ambiguous_set.count(gt.form) > 0) bump(report.ambiguous);
        if (task == Task::lemma && model.known_lemmas_nfkd.count(uni::nfkd(gt.lemma)) == 0)
          bump(report.unknown_targets);
      }
    }
  }
  return report;
}

std::vector<ConfusionCell> top_confusions(const EvalReport& report, std::size_t n) {
  std::vector<ConfusionCell> cells;
  for (const auto& [pair, count] : report.confusion)
    if (pair.first != pair.second) cells.push_back({pair.first, pair.second, count});
  std::sort(cells.begin(), cells.end(), [](const ConfusionCell& a, const ConfusionCell& b) {
    if (a.count != b.count) return a.count > b.count;
    if (a.gold != b.gold) return a.gold < b.gold;
    return a.predicted < b.predicted;
  });
  if (cells.size() > n) cells.resize(n);
  return cells;
}

std::string format_eval_report(const EvalReport& report) {
  std::ostringstream out;
  out << "task              " << (report.task == Task::lemma ? "lemma" : "pos") << "\n";
  auto row = [&](const char* name, const StratumScore& s) {
    out << std::left << std::setw(18) << name;
    if (s.support == 0) {
      out << "n/a      (0 tokens)\n";
    } else {
      out << std::fixed << std::setprecision(4) << s.accuracy() << "   (" << s.correct << "/"
          << s.support << ")\n";
    }
  };
  row("all", report.all);
  row("ambiguous", report.ambiguous);
  row("unknown tokens", report.unknown_tokens);
  if (report.task == Task::lemma) row("unknown targets", report.unknown_targets);
  return out.str();
}

std::string confusion_tsv(const EvalReport& report) {
  std::ostringstream out;
  out << "gold\tpredicted\tcount\n";
  for (const auto& [pair, count] : report.confusion)
    out << pair.first << '\t' << pair.second << '\t' << count << '\n';
  return out.str();
}

}  // namespace premodtag
