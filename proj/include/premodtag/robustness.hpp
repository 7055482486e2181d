#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "premodtag/corpus.hpp"
#include "premodtag/tagger.hpp"

namespace premodtag {

// Two distinct surface forms attested with the same (lemma, POS, morphology),
// canonically ordered so that form_a < form_b.
struct VariantPair {
  std::string form_a;
  std::string form_b;
  std::string lemma;
  std::string pos;
  std::string morph;
  std::uint64_t freq_a = 0;  // occurrence counts in the pair-source corpus
  std::uint64_t freq_b = 0;

  auto operator<=>(const VariantPair&) const = default;
};

// All unordered pairs of distinct forms sharing an exact (lemma, POS, morph)
// triple, deduplicated and sorted.
std::vector<VariantPair> extract_pairs(const Corpus& gold);

// Context-neutralized swap sets: every test sentence containing either form
// with the pair's lemma, duplicated; in set_a all such occurrences are
// rewritten to form_a, in set_b to form_b. Both sets share sentence lists,
// contexts and occurrence counts. Empty when no sentence matches.
struct SwapSets {
  Corpus set_a;
  Corpus set_b;
  std::size_t occurrences = 0;

  bool empty() const { return occurrences == 0; }
};

SwapSets build_swap_sets(const VariantPair& pair, const Corpus& test);

struct PairResult {
  VariantPair pair;
  double acc_a = 0.0;
  double acc_b = 0.0;
  double delta = 0.0;          // |acc_a - acc_b|
  std::uint64_t weight = 0;    // training frequency of the swapped-in rarer variant
  std::size_t occurrences = 0;

  bool operator==(const PairResult&) const = default;
};

// Accuracy over the rewritten target tokens only. Returns nullopt (pair
// skipped) when the sets are empty.
std::optional<PairResult> evaluate_pair(const TaggerModel& model, const VariantPair& pair,
                                        const SwapSets& sets, Task task = Task::lemma);

struct SkippedPair {
  VariantPair pair;
  std::string reason;
};

struct RobustnessReport {
  std::vector<PairResult> per_pair;
  std::vector<SkippedPair> skipped;
  double median_delta = 0.0;
  double geo_mean_delta = 0.0;
  double weighted_geo_mean_delta = 0.0;
  double arith_mean_delta = 0.0;
  double weighted_arith_mean_delta = 0.0;
};

// Median, geometric / weighted geometric means (0 if any delta is 0) and
// arithmetic / weighted arithmetic means. Throws on empty rows. Weighted
// means fall back to the unweighted value when all weights are 0.
RobustnessReport aggregate(std::vector<PairResult> rows,
                           std::vector<SkippedPair> skipped = {});

// Full harness: mine pairs from `gold`, build swap sets on `test`, evaluate
// each pair under the model, aggregate.
RobustnessReport run_robustness(const TaggerModel& model, const Corpus& gold,
                                const Corpus& test, Task task = Task::lemma,
                                unsigned jobs = 1);

std::string robustness_pairs_tsv(const RobustnessReport& report);
std::string format_robustness_summary(const RobustnessReport& report);

}  // namespace premodtag
