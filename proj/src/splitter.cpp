#include "premodtag/splitter.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "premodtag/errors.hpp"
#include "premodtag/hash.hpp"

namespace premodtag {

namespace {

struct Unit {
  std::size_t doc = 0;
  std::size_t first_sentence = 0;
  std::size_t n_sentences = 0;
  std::size_t tokens = 0;
  std::uint64_t order = 0;
};

std::size_t sentence_tokens(const Document& doc, std::size_t first, std::size_t count) {
  std::size_t n = 0;
  for (std::size_t s = first; s < first + count; ++s) n += doc.sentences[s].tokens.size();
  return n;
}

}  // namespace

SplitResult split(const Corpus& corpus, const SplitConfig& config) {
  if (corpus.empty()) throw EmptyCorpusError("cannot split an empty corpus");
  const double ratios[3] = {config.train, config.dev, config.test};
  double sum = 0.0;
  for (double r : ratios) {
    if (r < 0.0) throw ConfigError("split ratios must be non-negative");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("split ratios must sum to 1");

  std::vector<Unit> units;
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    const auto& doc = corpus.documents[d];
    if (config.unit == SplitUnit::document) {
      Unit u{d, 0, doc.sentences.size(), sentence_tokens(doc, 0, doc.sentences.size()), 0};
      u.order = rng::key({config.seed, rng::fnv1a64(doc.id)});
      units.push_back(u);
    } else {
      for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
        Unit u{d, s, 1, doc.sentences[s].tokens.size(), 0};
        u.order = rng::key({config.seed, rng::fnv1a64(doc.id), rng::fnv1a64(doc.sentences[s].id)});
        units.push_back(u);
      }
    }
  }
  // Stable shuffle: sort by seeded hash, ties broken by corpus position.
  std::sort(units.begin(), units.end(), [](const Unit& a, const Unit& b) {
    if (a.order != b.order) return a.order < b.order;
    if (a.doc != b.doc) return a.doc < b.doc;
    return a.first_sentence < b.first_sentence;
  });

  // Greedy assignment to the set with the largest token deficit.
  std::vector<std::vector<int>> target(corpus.documents.size());
  for (std::size_t d = 0; d < corpus.documents.size(); ++d)
    target[d].assign(corpus.documents[d].sentences.size(), 0);
  double assigned[3] = {0.0, 0.0, 0.0};
  double processed = 0.0;
  for (const auto& u : units) {
    processed += static_cast<double>(u.tokens);
    int best = -1;
    double best_deficit = 0.0;
    for (int s = 0; s < 3; ++s) {
      const double deficit = ratios[s] * processed - assigned[s];
      if (best == -1 || deficit > best_deficit) {
        best = s;
        best_deficit = deficit;
      }
    }
    assigned[best] += static_cast<double>(u.tokens);
    for (std::size_t k = 0; k < u.n_sentences; ++k)
      target[u.doc][u.first_sentence + k] = best;
  }

  SplitResult result;
  Corpus* outputs[3] = {&result.train, &result.dev, &result.test};
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    const auto& doc = corpus.documents[d];
    Document parts[3];
    for (auto& p : parts) {
      p.id = doc.id;
      p.century = doc.century;
      p.genre = doc.genre;
    }
    for (std::size_t s = 0; s < doc.sentences.size(); ++s)
      parts[target[d][s]].sentences.push_back(doc.sentences[s]);
    for (int s = 0; s < 3; ++s)
      if (!parts[s].sentences.empty()) outputs[s]->documents.push_back(std::move(parts[s]));
  }
  return result;
}

namespace {

std::string stratum_name(const Document& doc, Stratify stratify) {
  switch (stratify) {
    case Stratify::century:
      return "century=" + std::to_string(doc.century.value());
    case Stratify::genre:
      return "genre=" + doc.genre.value();
    case Stratify::both:
      return "century=" + std::to_string(doc.century.value()) + ",genre=" + doc.genre.value();
  }
  return {};
}

}  // namespace

Corpus sample_ood(const Corpus& corpus, std::size_t n_samples, std::size_t sample_tokens,
                  Stratify stratify) {
  if (n_samples == 0 || sample_tokens == 0)
    throw ConfigError("n_samples and sample_tokens must be positive");
  const bool need_century = stratify != Stratify::genre;
  const bool need_genre = stratify != Stratify::century;
  for (const auto& doc : corpus.documents) {
    if (need_century && !doc.century)
      throw StratumError("document '" + doc.id + "' has no century metadata");
    if (need_genre && !doc.genre)
      throw StratumError("document '" + doc.id + "' has no genre metadata");
  }

  // Strata in deterministic order of their name; documents keep corpus order.
  std::map<std::string, std::vector<std::size_t>> strata;
  for (std::size_t d = 0; d < corpus.documents.size(); ++d)
    strata[stratum_name(corpus.documents[d], stratify)].push_back(d);

  // Quotas: n_samples spread as evenly as possible, first strata get the remainder.
  std::vector<std::pair<std::string, std::size_t>> quotas;
  const std::size_t k = strata.size();
  std::size_t index = 0;
  for (const auto& [name, docs] : strata) {
    std::size_t quota = n_samples / k + (index < n_samples % k ? 1 : 0);
    quotas.emplace_back(name, quota);
    ++index;
  }

  Corpus out;
  std::size_t sample_no = 0;
  for (const auto& [name, quota] : quotas) {
    const auto& docs = strata.at(name);
    std::size_t taken = 0;
    for (std::size_t d : docs) {
      const auto& doc = corpus.documents[d];
      std::size_t s = 0;
      while (taken < quota && s < doc.sentences.size()) {
        // Accumulate a contiguous run until the token target is reached.
        std::size_t run_tokens = 0;
        std::size_t run_len = 0;
        while (s + run_len < doc.sentences.size() && run_tokens < sample_tokens) {
          run_tokens += doc.sentences[s + run_len].tokens.size();
          ++run_len;
        }
        if (run_tokens < sample_tokens) break;  // document exhausted mid-run
        Document sample;
        sample.id = doc.id + ":ood" + std::to_string(++sample_no);
        sample.century = doc.century;
        sample.genre = doc.genre;
        sample.sentences.assign(doc.sentences.begin() + static_cast<std::ptrdiff_t>(s),
                                doc.sentences.begin() + static_cast<std::ptrdiff_t>(s + run_len));
        out.documents.push_back(std::move(sample));
        s += run_len;
        ++taken;
      }
      if (taken >= quota) break;
    }
    if (taken < quota)
      throw StratumError("insufficient material in stratum " + name + ": needed " +
                         std::to_string(quota) + " samples, found " + std::to_string(taken));
  }
  return out;
}

}  // namespace premodtag
