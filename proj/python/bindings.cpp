#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "premodtag/augment.hpp"
#include "premodtag/corpus.hpp"
#include "premodtag/errors.hpp"
#include "premodtag/evaluator.hpp"
#include "premodtag/lexicon.hpp"
#include "premodtag/robustness.hpp"
#include "premodtag/splitter.hpp"
#include "premodtag/tagger.hpp"
#include "premodtag/tokenizer.hpp"
#include "premodtag/tsv.hpp"
#include "premodtag/unicode.hpp"
#include "premodtag/version.hpp"

namespace py = pybind11;
using namespace premodtag;

namespace {

ModelKind parse_kind(const std::string& kind) {
  if (kind == "majority") return ModelKind::majority;
  if (kind == "context") return ModelKind::context;
  throw ConfigError("model kind must be 'majority' or 'context'");
}

Task parse_task(const std::string& task) {
  if (task == "lemma") return Task::lemma;
  if (task == "pos") return Task::pos;
  throw ConfigError("task must be 'lemma' or 'pos'");
}

Stratify parse_stratify(const std::string& s) {
  if (s == "century") return Stratify::century;
  if (s == "genre") return Stratify::genre;
  if (s == "both") return Stratify::both;
  throw ConfigError("stratify must be 'century', 'genre' or 'both'");
}

py::dict confusion_dict(const EvalReport& report) {
  py::dict d;
  for (const auto& [pair, count] : report.confusion)
    d[py::make_tuple(pair.first, pair.second)] = count;
  return d;
}

}  // namespace

PYBIND11_MODULE(_premodtag, m) {
  m.doc() = "corpus annotation and evaluation toolkit for pre-orthographic French";
  m.attr("__version__") = std::string(kVersion);

  py::register_exception<Error>(m, "Error");

  py::class_<AnnotatedToken>(m, "AnnotatedToken")
      .def(py::init<>())
      .def(py::init([](std::string form, std::string lemma, std::string pos,
                       std::string morph) {
             return AnnotatedToken{std::move(form), std::move(lemma), std::move(pos),
                                   std::move(morph)};
           }),
           py::arg("form"), py::arg("lemma") = kEmptyMarker, py::arg("pos") = kEmptyMarker,
           py::arg("morph") = kEmptyMarker)
      .def_readwrite("form", &AnnotatedToken::form)
      .def_readwrite("lemma", &AnnotatedToken::lemma)
      .def_readwrite("pos", &AnnotatedToken::pos)
      .def_readwrite("morph", &AnnotatedToken::morph)
      .def("__eq__", [](const AnnotatedToken& a, const AnnotatedToken& b) { return a == b; })
      .def("__repr__", [](const AnnotatedToken& t) {
        return "AnnotatedToken(" + t.form + "/" + t.lemma + "/" + t.pos + "/" + t.morph + ")";
      });

  py::class_<Sentence>(m, "Sentence")
      .def(py::init<>())
      .def_readwrite("id", &Sentence::id)
      .def_readwrite("tokens", &Sentence::tokens)
      .def("__len__", [](const Sentence& s) { return s.tokens.size(); });

  py::class_<Document>(m, "Document")
      .def(py::init<>())
      .def_readwrite("id", &Document::id)
      .def_readwrite("century", &Document::century)
      .def_readwrite("genre", &Document::genre)
      .def_readwrite("sentences", &Document::sentences);

  py::class_<Corpus>(m, "Corpus")
      .def(py::init<>())
      .def_readwrite("documents", &Corpus::documents)
      .def("token_count", &Corpus::token_count)
      .def("sentence_count", &Corpus::sentence_count)
      .def("add_sentence", &Corpus::add_sentence, py::arg("doc_id"), py::arg("tokens"))
      .def("__eq__", [](const Corpus& a, const Corpus& b) { return a == b; })
      .def("__len__", &Corpus::token_count)
      .def("__repr__", [](const Corpus& c) {
        return "Corpus(" + std::to_string(c.documents.size()) + " documents, " +
               std::to_string(c.token_count()) + " tokens)";
      });

  py::class_<Tagset>(m, "Tagset")
      .def_readonly("name", &Tagset::name)
      .def_readonly("codes", &Tagset::codes)
      .def("contains", &Tagset::contains);

  // corpus model -----------------------------------------------------------
  m.def("read_tsv", [](const std::string& path) { return read_tsv(path); }, py::arg("path"));
  m.def("read_tsv_string", &read_tsv_string, py::arg("content"));
  m.def("write_tsv", [](const Corpus& c, const std::string& path) { write_tsv(c, path); },
        py::arg("corpus"), py::arg("path"));
  m.def("to_tsv", &to_tsv, py::arg("corpus"));
  m.def("load_tagset", [](const std::string& path) { return load_tagset(path); },
        py::arg("path"));
  m.def("nfkd", [](const std::string& text) { return uni::nfkd(text); }, py::arg("text"));
  m.def("nfkd_normalize", &nfkd_normalize, py::arg("corpus"));
  m.def("charset_inventory", [](const Corpus& corpus) {
    std::vector<std::string> out;
    for (char32_t cp : charset_inventory(corpus)) out.push_back(uni::encode_utf8(cp));
    return out;
  }, py::arg("corpus"));

  // tokenizer ---------------------------------------------------------------
  m.def("tokenize", [](const std::string& text, bool split_elision) {
    TokenizerConfig config;
    config.split_elision = split_elision;
    return tokenize(text, config);
  }, py::arg("text"), py::arg("split_elision") = true);
  m.def("tokenize_corpus", [](const std::string& text, const std::string& doc_id,
                              bool split_elision) {
    TokenizerConfig config;
    config.split_elision = split_elision;
    return tokenize_corpus(text, config, doc_id);
  }, py::arg("text"), py::arg("doc_id") = "doc1", py::arg("split_elision") = true);

  // lexicon -----------------------------------------------------------------
  py::class_<Lexicon>(m, "Lexicon")
      .def_readonly("lemmas", &Lexicon::lemmas)
      .def_readonly("named_entities", &Lexicon::named_entities)
      .def_readonly("foreign", &Lexicon::foreign)
      .def("is_listed", &Lexicon::is_listed);
  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("unknown_lemmas", &ValidationReport::unknown_lemmas)
      .def_readonly("total_tokens", &ValidationReport::total_tokens)
      .def_readonly("flagged_tokens", &ValidationReport::flagged_tokens)
      .def("coverage", &ValidationReport::coverage)
      .def_property_readonly("invalid_compounds", [](const ValidationReport& r) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& f : r.invalid_compounds) out.emplace_back(f.lemma, f.part);
        return out;
      })
      .def_property_readonly("invalid_pos", [](const ValidationReport& r) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& f : r.invalid_pos) out.emplace_back(f.position, f.tag);
        return out;
      });
  m.def("load_lexicon", [](const std::string& a, const std::string& b, const std::string& c) {
    return load_lexicon(a, b, c);
  }, py::arg("lemma_path"), py::arg("ne_path"), py::arg("foreign_path"));
  m.def("validate", &validate, py::arg("corpus"), py::arg("lexicon"), py::arg("tagset"));
  m.def("lemma_valid", &lemma_valid, py::arg("lemma"), py::arg("lexicon"));

  // augment -----------------------------------------------------------------
  m.def("augment", [](const Corpus& corpus, double p_long_s, double p_eszett, double p_tilde,
                      std::uint64_t seed) {
    return augment(corpus, AugmentConfig{p_long_s, p_eszett, p_tilde, seed});
  }, py::arg("corpus"), py::arg("p_long_s") = 0.02, py::arg("p_eszett") = 0.01,
     py::arg("p_tilde") = 0.01, py::arg("seed") = 0);

  // splitter ----------------------------------------------------------------
  m.def("split", [](const Corpus& corpus, double train, double dev, double test,
                    std::uint64_t seed, const std::string& unit) {
    SplitConfig config;
    config.train = train;
    config.dev = dev;
    config.test = test;
    config.seed = seed;
    config.unit = unit == "document" ? SplitUnit::document : SplitUnit::sentence;
    SplitResult r = split(corpus, config);
    return py::make_tuple(std::move(r.train), std::move(r.dev), std::move(r.test));
  }, py::arg("corpus"), py::arg("train") = 0.84, py::arg("dev") = 0.06,
     py::arg("test") = 0.10, py::arg("seed") = 0, py::arg("unit") = "sentence");
  m.def("sample_ood", [](const Corpus& corpus, std::size_t n_samples,
                         std::size_t sample_tokens, const std::string& stratify) {
    return sample_ood(corpus, n_samples, sample_tokens, parse_stratify(stratify));
  }, py::arg("corpus"), py::arg("n_samples"), py::arg("sample_tokens"),
     py::arg("stratify") = "century");

  // tagger ------------------------------------------------------------------
  py::class_<TaggerModel>(m, "TaggerModel")
      .def_property_readonly("kind", [](const TaggerModel& m_) {
        return m_.kind == ModelKind::majority ? "majority" : "context";
      })
      .def_property_readonly("known_forms", [](const TaggerModel& m_) { return m_.known_forms; })
      .def_property_readonly("known_lemmas",
                             [](const TaggerModel& m_) { return m_.known_lemmas; })
      .def("ambiguous_forms", [](const TaggerModel& m_, const std::string& task) {
        return m_.ambiguous_forms(parse_task(task));
      }, py::arg("task") = "lemma")
      .def_readonly("top_tag", &TaggerModel::top_tag);
  m.def("train", [](const Corpus& corpus, const std::string& kind, std::uint64_t seed) {
    return train(corpus, parse_kind(kind), seed);
  }, py::arg("corpus"), py::arg("kind") = "context", py::arg("seed") = 0);
  m.def("tag", &tag, py::arg("model"), py::arg("corpus"), py::arg("jobs") = 1);
  m.def("save_model", [](const TaggerModel& model, const std::string& path) {
    save_model(model, path);
  }, py::arg("model"), py::arg("path"));
  m.def("load_model", [](const std::string& path) { return load_model(path); },
        py::arg("path"));
  m.def("apply_suffix_rules", &apply_suffix_rules, py::arg("model"), py::arg("form"),
        py::arg("pos"));

  // evaluator ---------------------------------------------------------------
  py::class_<StratumScore>(m, "StratumScore")
      .def_readonly("correct", &StratumScore::correct)
      .def_readonly("support", &StratumScore::support)
      .def("accuracy", &StratumScore::accuracy);
  py::class_<EvalReport>(m, "EvalReport")
      .def_readonly("all", &EvalReport::all)
      .def_readonly("ambiguous", &EvalReport::ambiguous)
      .def_readonly("unknown_tokens", &EvalReport::unknown_tokens)
      .def_readonly("unknown_targets", &EvalReport::unknown_targets)
      .def_property_readonly("confusion", &confusion_dict);
  m.def("evaluate", [](const Corpus& gold, const Corpus& predicted, const TaggerModel& model,
                       const std::string& task) {
    return evaluate(gold, predicted, model, parse_task(task));
  }, py::arg("gold"), py::arg("predicted"), py::arg("model"), py::arg("task") = "lemma");
  m.def("top_confusions", [](const EvalReport& report, std::size_t n) {
    std::vector<std::tuple<std::string, std::string, std::uint64_t>> out;
    for (const auto& cell : top_confusions(report, n))
      out.emplace_back(cell.gold, cell.predicted, cell.count);
    return out;
  }, py::arg("report"), py::arg("n") = 10);

  // robustness ----------------------------------------------------------------
  py::class_<VariantPair>(m, "VariantPair")
      .def_readonly("form_a", &VariantPair::form_a)
      .def_readonly("form_b", &VariantPair::form_b)
      .def_readonly("lemma", &VariantPair::lemma)
      .def_readonly("pos", &VariantPair::pos)
      .def_readonly("morph", &VariantPair::morph)
      .def_readonly("freq_a", &VariantPair::freq_a)
      .def_readonly("freq_b", &VariantPair::freq_b)
      .def("__repr__", [](const VariantPair& p) {
        return "VariantPair(" + p.form_a + " / " + p.form_b + " -> " + p.lemma + ")";
      });
  py::class_<PairResult>(m, "PairResult")
      .def_readonly("pair", &PairResult::pair)
      .def_readonly("acc_a", &PairResult::acc_a)
      .def_readonly("acc_b", &PairResult::acc_b)
      .def_readonly("delta", &PairResult::delta)
      .def_readonly("weight", &PairResult::weight)
      .def_readonly("occurrences", &PairResult::occurrences);
  py::class_<RobustnessReport>(m, "RobustnessReport")
      .def_readonly("per_pair", &RobustnessReport::per_pair)
      .def_readonly("median_delta", &RobustnessReport::median_delta)
      .def_readonly("geo_mean_delta", &RobustnessReport::geo_mean_delta)
      .def_readonly("weighted_geo_mean_delta", &RobustnessReport::weighted_geo_mean_delta)
      .def_readonly("arith_mean_delta", &RobustnessReport::arith_mean_delta)
      .def_readonly("weighted_arith_mean_delta", &RobustnessReport::weighted_arith_mean_delta)
      .def_property_readonly("skipped", [](const RobustnessReport& r) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& s : r.skipped)
          out.emplace_back(s.pair.form_a + "/" + s.pair.form_b, s.reason);
        return out;
      });
  m.def("extract_pairs", &extract_pairs, py::arg("gold"));
  m.def("run_robustness", [](const TaggerModel& model, const Corpus& gold, const Corpus& test,
                             const std::string& task, unsigned jobs) {
    return run_robustness(model, gold, test, parse_task(task), jobs);
  }, py::arg("model"), py::arg("gold"), py::arg("test"), py::arg("task") = "lemma",
     py::arg("jobs") = 1);
}
