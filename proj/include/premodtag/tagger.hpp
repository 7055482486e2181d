#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "premodtag/corpus.hpp"

namespace premodtag {

enum class ModelKind { majority, context };
enum class Task { lemma, pos };

struct Analysis {
  std::string lemma;
  std::string pos;
  std::string morph;

  auto operator<=>(const Analysis&) const = default;
};

// Native statistical baseline honoring the train/tag contract: a frequency
// table over training forms, suffix-exchange rules for unknown lemmas, and an
// averaged perceptron over local context for POS (context kind).
struct TaggerModel {
  ModelKind kind = ModelKind::majority;

  // form -> analysis -> training count
  std::map<std::string, std::map<Analysis, std::uint64_t>> form_table;
  // (pos, form suffix) -> replacement suffix -> training count
  std::map<std::pair<std::string, std::string>, std::map<std::string, std::uint64_t>>
      suffix_rules;
  std::vector<std::string> tags;  // sorted tag inventory
  std::string top_tag;            // globally most frequent tag
  // feature -> averaged per-tag weights, indexed like `tags` (context kind)
  std::map<std::string, std::vector<double>> weights;

  // Derived from form_table by finalize():
  std::unordered_set<std::string> known_forms;
  std::unordered_set<std::string> known_lemmas;
  std::unordered_set<std::string> known_lemmas_nfkd;
  std::unordered_set<std::string> lemma_ambiguous_forms;  // >= 2 distinct lemmas
  std::unordered_set<std::string> pos_ambiguous_forms;    // >= 2 distinct tags

  const std::unordered_set<std::string>& ambiguous_forms(Task task) const {
    return task == Task::lemma ? lemma_ambiguous_forms : pos_ambiguous_forms;
  }

  void finalize();
};

// Deterministic given seed. Throws TrainingError on an empty corpus or on
// unannotated tokens (positions listed in the message).
TaggerModel train(const Corpus& corpus, ModelKind kind, std::uint64_t seed);

// Total: annotates every token of the input (existing annotations are
// overwritten). Pure and deterministic; parallel over sentences when jobs > 1.
Corpus tag(const TaggerModel& model, const Corpus& input, unsigned jobs = 1);

// Lemma for an unknown form via the longest matching suffix rule under the
// given tag; falls back to the identity lemma. Exposed for tests.
std::string apply_suffix_rules(const TaggerModel& model, std::string_view form,
                               std::string_view pos);

// Versioned tab-separated model file; load(save(m)) reproduces m exactly.
std::string model_to_string(const TaggerModel& model);
TaggerModel model_from_string(std::string_view content);
void save_model(const TaggerModel& model, const std::filesystem::path& path);
TaggerModel load_model(const std::filesystem::path& path);

}  // namespace premodtag
