#include "premodtag/tagger.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "premodtag/errors.hpp"
#include "premodtag/hash.hpp"
#include "premodtag/parallel.hpp"
#include "premodtag/unicode.hpp"

namespace premodtag {

namespace {

constexpr int kEpochs = 5;
constexpr const char* kModelMagic = "premodtag-model";
constexpr int kModelVersion = 1;

// Highest count wins; ties go to the lexicographically smallest key. Relies on
// std::map iteration being in key order.
template <typename Map>
const typename Map::key_type* most_frequent(const Map& counts) {
  const typename Map::key_type* best = nullptr;
  std::uint64_t best_count = 0;
  for (const auto& [key, count] : counts) {
    if (best == nullptr || count > best_count) {
      best = &key;
      best_count = count;
    }
  }
  return best;
}

std::size_t common_prefix_len(const std::u32string& a, const std::u32string& b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

// Perceptron feature templates: current form, lowercased form, prefixes and
// suffixes up to 4 code points, neighbour forms, previous predicted tag.
std::vector<std::string> features(const std::vector<std::string>& forms, std::size_t i,
                                  const std::string& prev_tag) {
  std::vector<std::string> out;
  out.reserve(14);
  const std::string& form = forms[i];
  out.push_back("w=" + form);
  out.push_back("wl=" + uni::to_lower(form));
  const std::u32string cps = uni::decode_utf8(form);
  for (std::size_t k = 1; k <= 4 && k <= cps.size(); ++k) {
    out.push_back("p" + std::to_string(k) + "=" + uni::encode_utf8(cps.substr(0, k)));
    out.push_back("s" + std::to_string(k) + "=" +
                  uni::encode_utf8(cps.substr(cps.size() - k)));
  }
  out.push_back(i == 0 ? "w-1=<s>" : "w-1=" + forms[i - 1]);
  out.push_back(i + 1 == forms.size() ? "w+1=</s>" : "w+1=" + forms[i + 1]);
  out.push_back("t-1=" + prev_tag);
  return out;
}

struct Perceptron {
  const std::vector<std::string>& tags;
  std::map<std::string, std::vector<double>> w;        // current weights
  std::map<std::string, std::vector<double>> totals;   // accumulated for averaging
  std::map<std::string, std::vector<std::uint64_t>> stamp;
  std::uint64_t now = 0;

  explicit Perceptron(const std::vector<std::string>& tag_list) : tags(tag_list) {}

  std::size_t predict(const std::vector<std::string>& feats) const {
    std::vector<double> scores(tags.size(), 0.0);
    for (const auto& f : feats) {
      const auto it = w.find(f);
      if (it == w.end()) continue;
      for (std::size_t t = 0; t < tags.size(); ++t) scores[t] += it->second[t];
    }
    std::size_t best = 0;
    for (std::size_t t = 1; t < tags.size(); ++t)
      if (scores[t] > scores[best]) best = t;
    return best;
  }

  void bump(const std::string& f, std::size_t tag, double delta) {
    auto& wv = w[f];
    auto& tv = totals[f];
    auto& sv = stamp[f];
    if (wv.empty()) {
      wv.assign(tags.size(), 0.0);
      tv.assign(tags.size(), 0.0);
      sv.assign(tags.size(), 0);
    }
    tv[tag] += static_cast<double>(now - sv[tag]) * wv[tag];
    sv[tag] = now;
    wv[tag] += delta;
  }

  void update(const std::vector<std::string>& feats, std::size_t gold, std::size_t pred) {
    for (const auto& f : feats) {
      bump(f, gold, 1.0);
      bump(f, pred, -1.0);
    }
  }

  std::map<std::string, std::vector<double>> averaged() const {
    std::map<std::string, std::vector<double>> avg;
    if (now == 0) return avg;
    for (const auto& [f, wv] : w) {
      std::vector<double> row(tags.size(), 0.0);
      const auto& tv = totals.at(f);
      const auto& sv = stamp.at(f);
      bool any = false;
      for (std::size_t t = 0; t < tags.size(); ++t) {
        const double total = tv[t] + static_cast<double>(now - sv[t]) * wv[t];
        row[t] = total / static_cast<double>(now);
        if (row[t] != 0.0) any = true;
      }
      if (any) avg.emplace(f, std::move(row));
    }
    return avg;
  }
};

std::size_t predict_with(const std::map<std::string, std::vector<double>>& weights,
                         std::size_t n_tags, const std::vector<std::string>& feats) {
  std::vector<double> scores(n_tags, 0.0);
  for (const auto& f : feats) {
    const auto it = weights.find(f);
    if (it == weights.end()) continue;
    for (std::size_t t = 0; t < n_tags; ++t) scores[t] += it->second[t];
  }
  std::size_t best = 0;
  for (std::size_t t = 1; t < n_tags; ++t)
    if (scores[t] > scores[best]) best = t;
  return best;
}

const Analysis* conditional_analysis(const TaggerModel& model, const std::string& form,
                                     const std::string& pos) {
  const auto it = model.form_table.find(form);
  if (it == model.form_table.end()) return nullptr;
  const Analysis* best = nullptr;
  std::uint64_t best_count = 0;
  for (const auto& [analysis, count] : it->second) {
    if (analysis.pos != pos) continue;
    if (best == nullptr || count > best_count) {
      best = &analysis;
      best_count = count;
    }
  }
  return best;
}

const Analysis* majority_analysis(const TaggerModel& model, const std::string& form) {
  const auto it = model.form_table.find(form);
  if (it == model.form_table.end()) return nullptr;
  return most_frequent(it->second);
}

}  // namespace

void TaggerModel::finalize() {
  known_forms.clear();
  known_lemmas.clear();
  known_lemmas_nfkd.clear();
  lemma_ambiguous_forms.clear();
  pos_ambiguous_forms.clear();
  for (const auto& [form, analyses] : form_table) {
    known_forms.insert(form);
    std::unordered_set<std::string> lemmas, poses;
    for (const auto& [analysis, count] : analyses) {
      known_lemmas.insert(analysis.lemma);
      known_lemmas_nfkd.insert(uni::nfkd(analysis.lemma));
      lemmas.insert(analysis.lemma);
      poses.insert(analysis.pos);
    }
    if (lemmas.size() >= 2) lemma_ambiguous_forms.insert(form);
    if (poses.size() >= 2) pos_ambiguous_forms.insert(form);
  }
}

TaggerModel train(const Corpus& corpus, ModelKind kind, std::uint64_t seed) {
  if (corpus.empty()) throw TrainingError("training corpus is empty");

  std::vector<std::string> unannotated;
  for (const auto& doc : corpus.documents)
    for (const auto& sent : doc.sentences)
      for (std::size_t i = 0; i < sent.tokens.size(); ++i)
        if (!sent.tokens[i].annotated()) unannotated.push_back(token_ref(doc, sent, i));
  if (!unannotated.empty()) {
    std::string msg = "unannotated tokens in training corpus:";
    for (std::size_t i = 0; i < unannotated.size() && i < 10; ++i) msg += " " + unannotated[i];
    if (unannotated.size() > 10)
      msg += " (+" + std::to_string(unannotated.size() - 10) + " more)";
    throw TrainingError(msg);
  }

  TaggerModel model;
  model.kind = kind;

  std::map<std::string, std::uint64_t> tag_counts;
  for (const auto& doc : corpus.documents) {
    for (const auto& sent : doc.sentences) {
      for (const auto& tok : sent.tokens) {
        model.form_table[tok.form][Analysis{tok.lemma, tok.pos, tok.morph}] += 1;
        ++tag_counts[tok.pos];
        const std::u32string form_cps = uni::decode_utf8(tok.form);
        const std::u32string lemma_cps = uni::decode_utf8(tok.lemma);
        const std::size_t lcp = common_prefix_len(form_cps, lemma_cps);
        model.suffix_rules[{tok.pos, uni::encode_utf8(form_cps.substr(lcp))}]
                          [uni::encode_utf8(lemma_cps.substr(lcp))] += 1;
      }
    }
  }
  for (const auto& [tag, count] : tag_counts) model.tags.push_back(tag);
  model.top_tag = *most_frequent(tag_counts);
  model.finalize();

  if (kind == ModelKind::context) {
    // Flatten sentences once; epochs reorder by a seeded hash of (epoch, index).
    std::vector<std::pair<std::vector<std::string>, std::vector<std::size_t>>> data;
    std::map<std::string, std::size_t> tag_index;
    for (std::size_t t = 0; t < model.tags.size(); ++t) tag_index[model.tags[t]] = t;
    for (const auto& doc : corpus.documents) {
      for (const auto& sent : doc.sentences) {
        std::vector<std::string> forms;
        std::vector<std::size_t> gold;
        for (const auto& tok : sent.tokens) {
          forms.push_back(tok.form);
          gold.push_back(tag_index.at(tok.pos));
        }
        data.emplace_back(std::move(forms), std::move(gold));
      }
    }
    Perceptron perceptron(model.tags);
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    for (int epoch = 0; epoch < kEpochs; ++epoch) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto ka = rng::key({seed, static_cast<std::uint64_t>(epoch), a});
        const auto kb = rng::key({seed, static_cast<std::uint64_t>(epoch), b});
        return ka != kb ? ka < kb : a < b;
      });
      for (std::size_t si : order) {
        const auto& [forms, gold] = data[si];
        std::string prev_tag = "<s>";
        for (std::size_t i = 0; i < forms.size(); ++i) {
          ++perceptron.now;
          const auto feats = features(forms, i, prev_tag);
          const std::size_t pred = perceptron.predict(feats);
          if (pred != gold[i]) perceptron.update(feats, gold[i], pred);
          prev_tag = model.tags[pred];  // decode-time history is predicted, match it
        }
      }
    }
    model.weights = perceptron.averaged();
  }
  return model;
}

std::string apply_suffix_rules(const TaggerModel& model, std::string_view form,
                               std::string_view pos) {
  const std::u32string cps = uni::decode_utf8(form);
  const std::string pos_key(pos);
  for (std::size_t len = cps.size() + 1; len-- > 0;) {
    const std::string suffix = uni::encode_utf8(cps.substr(cps.size() - len));
    const auto it = model.suffix_rules.find({pos_key, suffix});
    if (it == model.suffix_rules.end()) continue;
    const std::string* replacement = most_frequent(it->second);
    std::string lemma = uni::encode_utf8(cps.substr(0, cps.size() - len)) + *replacement;
    if (!lemma.empty()) return lemma;
  }
  return std::string(form);
}

Corpus tag(const TaggerModel& model, const Corpus& input, unsigned jobs) {
  if (model.form_table.empty() || model.tags.empty())
    throw Error("model is not trained");

  Corpus out = input;
  std::map<std::string, std::size_t> tag_index;
  for (std::size_t t = 0; t < model.tags.size(); ++t) tag_index[model.tags[t]] = t;

  // Sentences are independent; collect pointers for the parallel loop.
  std::vector<Sentence*> sentences;
  for (auto& doc : out.documents)
    for (auto& sent : doc.sentences) sentences.push_back(&sent);

  auto tag_sentence = [&](std::size_t si) {
    Sentence& sent = *sentences[si];
    std::vector<std::string> forms;
    forms.reserve(sent.tokens.size());
    for (const auto& tok : sent.tokens) forms.push_back(tok.form);

    std::string prev_tag = "<s>";
    for (std::size_t i = 0; i < sent.tokens.size(); ++i) {
      AnnotatedToken& tok = sent.tokens[i];
      const bool known = model.known_forms.count(tok.form) > 0;
      if (model.kind == ModelKind::majority) {
        if (known) {
          const Analysis* best = majority_analysis(model, tok.form);
          tok.lemma = best->lemma;
          tok.pos = best->pos;
          tok.morph = best->morph;
        } else {
          tok.pos = model.top_tag;
          tok.lemma = apply_suffix_rules(model, tok.form, tok.pos);
          tok.morph = kEmptyMarker;
        }
      } else {
        const auto feats = features(forms, i, prev_tag);
        const std::size_t pred = predict_with(model.weights, model.tags.size(), feats);
        tok.pos = model.tags[pred];
        if (known) {
          const Analysis* best = conditional_analysis(model, tok.form, tok.pos);
          if (best == nullptr) best = majority_analysis(model, tok.form);
          tok.lemma = best->lemma;
          tok.morph = best->morph;
        } else {
          tok.lemma = apply_suffix_rules(model, tok.form, tok.pos);
          tok.morph = kEmptyMarker;
        }
        prev_tag = tok.pos;
      }
    }
  };
  parallel_for(sentences.size(), jobs, tag_sentence);
  return out;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw FormatError("bad float in model file: '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::uint64_t parse_count(std::string_view s, std::size_t lineno) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw FormatError("bad count in model file: '" + std::string(s) + "'", lineno);
  return v;
}

}  // namespace

namespace {

bool is_section_name(std::string_view line) {
  return line == "[tags]" || line == "[form_table]" || line == "[suffix_rules]" ||
         line == "[weights]";
}

}  // namespace

std::string model_to_string(const TaggerModel& model) {
  std::ostringstream out;
  out << kModelMagic << '\t' << kModelVersion << '\n';
  out << "kind\t" << (model.kind == ModelKind::majority ? "majority" : "context") << '\n';
  out << "top_tag\t" << model.top_tag << '\n';
  out << "[tags]\n";
  for (const auto& tag : model.tags) {
    if (is_section_name(tag))
      throw SerializationError("tag collides with a model section name: " + tag);
    out << tag << '\n';
  }
  out << "[form_table]\n";
  for (const auto& [form, analyses] : model.form_table)
    for (const auto& [a, count] : analyses)
      out << form << '\t' << a.lemma << '\t' << a.pos << '\t' << a.morph << '\t' << count
          << '\n';
  out << "[suffix_rules]\n";
  for (const auto& [key, replacements] : model.suffix_rules)
    for (const auto& [replacement, count] : replacements)
      out << key.first << '\t' << key.second << '\t' << replacement << '\t' << count << '\n';
  if (model.kind == ModelKind::context) {
    out << "[weights]\n";
    for (const auto& [feature, row] : model.weights) {
      out << feature;
      for (double v : row) out << '\t' << fmt_double(v);
      out << '\n';
    }
  }
  return out.str();
}

TaggerModel model_from_string(std::string_view content) {
  TaggerModel model;
  std::size_t pos = 0;
  std::size_t lineno = 0;
  std::string section;
  bool magic_seen = false;
  while (pos < content.size()) {
    const auto eol = content.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos) ? content.substr(pos)
                                                            : content.substr(pos, eol - pos);
    pos = (eol == std::string_view::npos) ? content.size() : eol + 1;
    ++lineno;
    if (line.empty()) continue;
    if (!magic_seen) {
      const auto fields = split_tabs(line);
      if (fields.size() != 2 || fields[0] != kModelMagic ||
          fields[1] != std::to_string(kModelVersion))
        throw FormatError("not a premodtag model file (or unsupported version)", lineno);
      magic_seen = true;
      continue;
    }
    if (is_section_name(line)) {
      section = std::string(line);
      continue;
    }
    const auto fields = split_tabs(line);
    if (section.empty()) {
      if (fields.size() != 2) throw FormatError("bad model header line", lineno);
      if (fields[0] == "kind") {
        if (fields[1] == "majority")
          model.kind = ModelKind::majority;
        else if (fields[1] == "context")
          model.kind = ModelKind::context;
        else
          throw FormatError("unknown model kind", lineno);
      } else if (fields[0] == "top_tag") {
        model.top_tag = std::string(fields[1]);
      } else {
        throw FormatError("unknown model header key", lineno);
      }
    } else if (section == "[tags]") {
      model.tags.emplace_back(line);
    } else if (section == "[form_table]") {
      if (fields.size() != 5) throw FormatError("bad form_table row", lineno);
      std::uint64_t count = parse_count(fields[4], lineno);
      model.form_table[std::string(fields[0])]
                      [Analysis{std::string(fields[1]), std::string(fields[2]),
                                std::string(fields[3])}] = count;
    } else if (section == "[suffix_rules]") {
      if (fields.size() != 4) throw FormatError("bad suffix_rules row", lineno);
      std::uint64_t count = parse_count(fields[3], lineno);
      model.suffix_rules[{std::string(fields[0]), std::string(fields[1])}]
                        [std::string(fields[2])] = count;
    } else {  // section == "[weights]"
      if (fields.size() != model.tags.size() + 1)
        throw FormatError("bad weights row", lineno);
      std::vector<double> row;
      row.reserve(model.tags.size());
      for (std::size_t i = 1; i < fields.size(); ++i) row.push_back(parse_double(fields[i]));
      model.weights.emplace(std::string(fields[0]), std::move(row));
    }
  }
  if (!magic_seen) throw FormatError("empty model file");
  model.finalize();
  return model;
}

void save_model(const TaggerModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open model file for writing: " + path.string());
  const std::string payload = model_to_string(model);
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw IoError("failed writing model: " + path.string());
}

TaggerModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_string(buf.str());
}

}  // namespace premodtag
