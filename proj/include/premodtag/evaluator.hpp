#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "premodtag/corpus.hpp"
#include "premodtag/tagger.hpp"

namespace premodtag {

struct StratumScore {
  std::uint64_t correct = 0;
  std::uint64_t support = 0;

  // Vacuously 1.0 on an empty stratum.
  double accuracy() const {
    return support == 0 ? 1.0 : static_cast<double>(correct) / static_cast<double>(support);
  }
};

// Stratified accuracies following the usual taxonomy: all tokens, ambiguous
// forms (task-specific), forms unseen in training, and (lemma task only) gold
// lemmas unseen in training. Lemma comparison is exact equality after NFKD;
// the confusion matrix for the lemma task is keyed on NFKD lemmas so its
// diagonal coincides with correct predictions.
struct EvalReport {
  Task task = Task::pos;
  StratumScore all;
  StratumScore ambiguous;
  StratumScore unknown_tokens;
  StratumScore unknown_targets;  // lemma task only; zero support otherwise
  std::map<std::pair<std::string, std::string>, std::uint64_t> confusion;  // (gold, predicted)
};

// Gold and predicted must be token-aligned (same shape, same forms);
// AlignmentError names the first divergence.
EvalReport evaluate(const Corpus& gold, const Corpus& predicted, const TaggerModel& model,
                    Task task);

struct ConfusionCell {
  std::string gold;
  std::string predicted;
  std::uint64_t count = 0;

  bool operator==(const ConfusionCell&) const = default;
};

// Off-diagonal cells, count descending, ties lexicographic on (gold, predicted).
std::vector<ConfusionCell> top_confusions(const EvalReport& report, std::size_t n);

std::string format_eval_report(const EvalReport& report);
std::string confusion_tsv(const EvalReport& report);

}  // namespace premodtag
