// premodtag: annotation and evaluation toolkit for pre-orthographic French.
// Subcommands cover the full pipeline: tokenize, validate, augment, split,
// train, tag, eval, robustness, normalize, inventory. Every file-producing
// run writes a JSON manifest with the effective configuration and content
// digests, so results are reproducible bit for bit.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "premodtag/augment.hpp"
#include "premodtag/corpus.hpp"
#include "premodtag/digest.hpp"
#include "premodtag/errors.hpp"
#include "premodtag/evaluator.hpp"
#include "premodtag/lexicon.hpp"
#include "premodtag/manifest.hpp"
#include "premodtag/robustness.hpp"
#include "premodtag/splitter.hpp"
#include "premodtag/tagger.hpp"
#include "premodtag/tokenizer.hpp"
#include "premodtag/tsv.hpp"
#include "premodtag/unicode.hpp"
#include "premodtag/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace premodtag;

namespace {

// JSON config files: top-level keys feed global options, one nested object
// per subcommand. Explicit command-line flags win over config values
// (CLI11's default behaviour).
class ConfigJSON : public CLI::Config {
public:
  std::string to_config(const CLI::App* app, bool default_also, bool,
                        std::string) const override {
    json j = json::object();
    for (const CLI::Option* opt : app->get_options({})) {
      if (!opt->get_configurable() || opt->get_lnames().empty()) continue;
      const std::string name = opt->get_lnames()[0];
      if (!opt->get_default_str().empty() || default_also) j[name] = opt->get_default_str();
      if (opt->count() == 1)
        j[name] = opt->results().at(0);
      else if (opt->count() > 1)
        j[name] = opt->results();
    }
    return j.dump(2);
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    input >> j;
    std::vector<CLI::ConfigItem> items;
    collect(j, {}, items);
    return items;
  }

private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void collect(const json& j, std::vector<std::string> parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        auto deeper = parents;
        deeper.push_back(key);
        collect(value, deeper, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array())
        for (const auto& elem : value) item.inputs.push_back(scalar(elem));
      else
        item.inputs.push_back(scalar(value));
      items.push_back(std::move(item));
    }
  }
};

std::string read_stream_or_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Corpus load_corpus(const std::string& path, RunManifest& manifest) {
  const std::string content = read_stream_or_file(path);
  manifest.inputs.emplace_back(path, sha256_hex(content));
  return read_tsv_string(content);
}

void write_payload(const std::string& path, const std::string& payload,
                   RunManifest& manifest) {
  if (path == "-") {
    std::cout << payload;
    return;
  }
  const fs::path tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw IoError("failed writing: " + path);
  }
  fs::rename(tmp, path);
  manifest.outputs.emplace_back(path, sha256_hex(payload));
}

// One manifest per run, next to the first file output. Stdout-only runs
// leave no manifest behind.
void finish_manifest(RunManifest& manifest) {
  if (manifest.outputs.empty()) return;
  manifest.write_atomic(manifest.outputs.front().first + ".manifest.json");
}

std::string default_doc_id(const std::string& input) {
  if (input == "-") return "stdin";
  return fs::path(input).stem().string();
}

std::set<char32_t> parse_charset(const std::string& chars) {
  std::set<char32_t> out;
  for (char32_t cp : uni::decode_utf8(chars)) out.insert(cp);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corpus annotation and evaluation toolkit for pre-orthographic French"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<ConfigJSON>());
  app.set_config("--config", "", "JSON config file (explicit flags win)");

  int exit_code = 0;

  // ---- tokenize ---------------------------------------------------------
  auto* cmd_tokenize = app.add_subcommand("tokenize", "tokenize raw text into unannotated TSV");
  {
    auto input = std::make_shared<std::string>("-");
    auto output = std::make_shared<std::string>("-");
    auto doc_id = std::make_shared<std::string>();
    auto punct = std::make_shared<std::string>();
    auto elision = std::make_shared<std::string>();
    auto no_split_elision = std::make_shared<bool>(false);
    cmd_tokenize->add_option("input", *input, "raw text file, or - for stdin");
    cmd_tokenize->add_option("-o,--output", *output, "output TSV file, or - for stdout");
    cmd_tokenize->add_option("--doc-id", *doc_id, "document id (default: input stem)");
    cmd_tokenize->add_option("--punctuation", *punct,
                             "characters split as standalone tokens (hyphen is always split)");
    cmd_tokenize->add_option("--elision-markers", *elision, "elision marker characters");
    cmd_tokenize->add_flag("--no-split-elision", *no_split_elision,
                           "keep apostrophes word-internal");
    cmd_tokenize->callback([=, &exit_code] {
      RunManifest manifest;
      manifest.subcommand = "tokenize";
      TokenizerConfig config;
      if (!punct->empty()) config.punctuation = parse_charset(*punct);
      if (!elision->empty()) config.elision_markers = parse_charset(*elision);
      config.split_elision = !*no_split_elision;
      const std::string text = read_stream_or_file(*input);
      manifest.inputs.emplace_back(*input, sha256_hex(text));
      const std::string id = doc_id->empty() ? default_doc_id(*input) : *doc_id;
      const Corpus corpus = tokenize_corpus(text, config, id);
      manifest.config = {{"doc_id", id},
                         {"split_elision", config.split_elision},
                         {"punctuation",
                          uni::encode_utf8(std::u32string(config.punctuation.begin(),
                                                          config.punctuation.end()))}};
      const std::string payload = corpus.empty() ? "" : to_tsv(corpus);
      write_payload(*output, payload, manifest);
      finish_manifest(manifest);
      exit_code = 0;
    });
  }

  // ---- normalize --------------------------------------------------------
  auto* cmd_normalize = app.add_subcommand("normalize", "NFKD-normalize forms and lemmas");
  {
    auto input = std::make_shared<std::string>("-");
    auto output = std::make_shared<std::string>("-");
    cmd_normalize->add_option("input", *input, "TSV corpus, or - for stdin");
    cmd_normalize->add_option("-o,--output", *output, "output TSV, or - for stdout");
    cmd_normalize->callback([=] {
      RunManifest manifest;
      manifest.subcommand = "normalize";
      const Corpus corpus = load_corpus(*input, manifest);
      write_payload(*output, to_tsv(nfkd_normalize(corpus)), manifest);
      finish_manifest(manifest);
    });
  }

  // ---- inventory --------------------------------------------------------
  auto* cmd_inventory = app.add_subcommand("inventory", "distinct code points over all forms");
  {
    auto input = std::make_shared<std::string>("-");
    auto output = std::make_shared<std::string>("-");
    cmd_inventory->add_option("input", *input, "TSV corpus, or - for stdin");
    cmd_inventory->add_option("-o,--output", *output, "output TSV, or - for stdout");
    cmd_inventory->callback([=] {
      RunManifest manifest;
      manifest.subcommand = "inventory";
      const Corpus corpus = load_corpus(*input, manifest);
      const auto inventory = charset_inventory(corpus);
      std::ostringstream out;
      for (char32_t cp : inventory) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "U+%04X", static_cast<unsigned>(cp));
        out << buf << '\t' << uni::encode_utf8(cp) << '\n';
      }
      write_payload(*output, out.str(), manifest);
      finish_manifest(manifest);
      std::cerr << "inventory size: " << inventory.size() << "\n";
    });
  }

  // ---- validate ---------------------------------------------------------
  auto* cmd_validate = app.add_subcommand("validate", "check a corpus against authority lists");
  {
    auto input = std::make_shared<std::string>("-");
    auto lemmas = std::make_shared<std::string>();
    auto nes = std::make_shared<std::string>();
    auto foreign = std::make_shared<std::string>();
    auto tagset_path = std::make_shared<std::string>();
    auto report_path = std::make_shared<std::string>();
    auto max_findings = std::make_shared<long long>(0);
    cmd_validate->add_option("input", *input, "TSV corpus, or - for stdin");
    cmd_validate->add_option("--lemmas", *lemmas, "lemma authority list")->required();
    cmd_validate->add_option("--named-entities", *nes, "named-entity list")->required();
    cmd_validate->add_option("--foreign", *foreign, "foreign-word list")->required();
    cmd_validate->add_option("--tagset", *tagset_path, "tagset file")->required();
    cmd_validate->add_option("--report", *report_path, "write findings as TSV");
    cmd_validate->add_option("--max-findings", *max_findings,
                             "exit 1 when more than this many tokens are flagged");
    cmd_validate->callback([=, &exit_code] {
      RunManifest manifest;
      manifest.subcommand = "validate";
      const Corpus corpus = load_corpus(*input, manifest);
      const Lexicon lexicon = load_lexicon(*lemmas, *nes, *foreign);
      const Tagset tagset = load_tagset(*tagset_path);
      for (const auto* p : {lemmas.get(), nes.get(), foreign.get(), tagset_path.get()})
        manifest.add_input(*p);
      const ValidationReport report = validate(corpus, lexicon, tagset);
      manifest.config = {{"max_findings", *max_findings}, {"tagset", tagset.name}};
      if (!report_path->empty())
        write_payload(*report_path, validation_report_tsv(report), manifest);
      finish_manifest(manifest);
      std::cout << format_validation_summary(report);
      exit_code =
          report.flagged_tokens > static_cast<std::size_t>(std::max(0LL, *max_findings)) ? 1
                                                                                         : 0;
    });
  }

  // ---- augment ----------------------------------------------------------
  auto* cmd_augment = app.add_subcommand("augment", "inject early-modern print glyphs");
  {
    auto input = std::make_shared<std::string>("-");
    auto output = std::make_shared<std::string>("-");
    auto config = std::make_shared<AugmentConfig>();
    cmd_augment->add_option("input", *input, "TSV corpus, or - for stdin");
    cmd_augment->add_option("-o,--output", *output, "output TSV, or - for stdout");
    cmd_augment->add_option("--seed", config->seed, "random seed")->envname("PREMODTAG_SEED");
    cmd_augment->add_option("--p-long-s", config->p_long_s, "probability of s -> ſ");
    cmd_augment->add_option("--p-eszett", config->p_eszett, "probability of ss -> ß");
    cmd_augment->add_option("--p-tilde", config->p_tilde,
                            "probability of vowel+nasal -> tilded vowel");
    cmd_augment->callback([=] {
      RunManifest manifest;
      manifest.subcommand = "augment";
      const Corpus corpus = load_corpus(*input, manifest);
      manifest.config = {{"seed", config->seed},
                         {"p_long_s", config->p_long_s},
                         {"p_eszett", config->p_eszett},
                         {"p_tilde", config->p_tilde}};
      write_payload(*output, to_tsv(augment(corpus, *config)), manifest);
      finish_manifest(manifest);
    });
  }

  // ---- split ------------------------------------------------------------
  auto* cmd_split = app.add_subcommand("split", "deterministic train/dev/test partition");
  {
    auto input = std::make_shared<std::string>("-");
    auto outdir = std::make_shared<std::string>();
    auto ratios = std::make_shared<std::string>("0.84,0.06,0.10");
    auto seed = std::make_shared<std::uint64_t>(0);
    auto unit = std::make_shared<std::string>("sentence");
    cmd_split->add_option("input", *input, "TSV corpus, or - for stdin");
    cmd_split->add_option("outdir", *outdir, "output directory")->required();
    cmd_split->add_option("--ratios", *ratios, "train,dev,test fractions summing to 1");
    cmd_split->add_option("--seed", *seed, "random seed")->envname("PREMODTAG_SEED");
    cmd_split->add_option("--unit", *unit, "split unit: sentence or document")
        ->check(CLI::IsMember({"sentence", "document"}));
    cmd_split->callback([=] {
      RunManifest manifest;
      manifest.subcommand = "split";
      const Corpus corpus = load_corpus(*input, manifest);
      SplitConfig config;
      config.seed = *seed;
      config.unit = *unit == "document" ? SplitUnit::document : SplitUnit::sentence;
      double parts[3];
      std::size_t i = 0;
      std::stringstream ss(*ratios);
      std::string piece;
      while (std::getline(ss, piece, ',')) {
        if (i >= 3) throw ConfigError("expected exactly 3 ratios");
        try {
          parts[i++] = std::stod(piece);
        } catch (const std::exception&) {
          throw ConfigError("bad ratio value: '" + piece + "'");
        }
      }
      if (i != 3) throw ConfigError("expected exactly 3 ratios");
      config.train = parts[0];
      config.dev = parts[1];
      config.test = parts[2];
      const SplitResult result = split(corpus, config);
      fs::create_directories(*outdir);
      const fs::path dir(*outdir);
      write_payload((dir / "train.tsv").string(), to_tsv(result.train), manifest);
      write_payload((dir / "dev.tsv").string(), to_tsv(result.dev), manifest);
      write_payload((dir / "test.tsv").string(), to_tsv(result.test), manifest);
      manifest.config = {{"ratios", *ratios},
                         {"seed", *seed},
                         {"unit", *unit},
                         {"achieved",
                          {{"train_tokens", result.train.token_count()},
                           {"dev_tokens", result.dev.token_count()},
                           {"test_tokens", result.test.token_count()},
                           {"total_tokens", corpus.token_count()}}}};
      manifest.write_atomic(dir / "manifest.json");
    });
  }

  // ---- train ------------------------------------------------------------
  auto* cmd_train = app.add_subcommand("train", "train a tagger/lemmatizer model");
  {
    auto input = std::make_shared<std::string>("-");
    auto output = std::make_shared<std::string>();
    auto kind = std::make_shared<std::string>("context");
    auto seed = std::make_shared<std::uint64_t>(0);
    cmd_train->add_option("input", *input, "annotated TSV corpus, or - for stdin");
    cmd_train->add_option("-o,--output", *output, "model file")->required();
    cmd_train->add_option("--kind", *kind, "model kind")
        ->check(CLI::IsMember({"majority", "context"}));
    cmd_train->add_option("--seed", *seed, "random seed")->envname("PREMODTAG_SEED");
    cmd_train->callback([=] {
      RunManifest manifest;
      manifest.subcommand = "train";
      const Corpus corpus = load_corpus(*input, manifest);
      const ModelKind mk = *kind == "majority" ? ModelKind::majority : ModelKind::context;
      const TaggerModel model = train(corpus, mk, *seed);
      manifest.config = {{"kind", *kind}, {"seed", *seed}};
      write_payload(*output, model_to_string(model), manifest);
      finish_manifest(manifest);
    });
  }

  // ---- tag --------------------------------------------------------------
  auto* cmd_tag = app.add_subcommand("tag", "annotate a corpus with a trained model");
  {
    auto model_path = std::make_shared<std::string>();
    auto input = std::make_shared<std::string>("-");
    auto output = std::make_shared<std::string>("-");
    auto jobs = std::make_shared<unsigned>(1);
    cmd_tag->add_option("model", *model_path, "model file")->required();
    cmd_tag->add_option("input", *input, "TSV corpus, or - for stdin");
    cmd_tag->add_option("-o,--output", *output, "output TSV, or - for stdout");
    cmd_tag->add_option("-j,--jobs", *jobs, "worker threads");
    cmd_tag->callback([=] {
      RunManifest manifest;
      manifest.subcommand = "tag";
      const TaggerModel model = load_model(*model_path);
      manifest.add_input(*model_path);
      const Corpus corpus = load_corpus(*input, manifest);
      manifest.config = {{"jobs", *jobs}};
      write_payload(*output, to_tsv(tag(model, corpus, *jobs)), manifest);
      finish_manifest(manifest);
    });
  }

  // ---- eval -------------------------------------------------------------
  auto* cmd_eval = app.add_subcommand("eval", "stratified accuracy against a gold corpus");
  {
    auto gold_path = std::make_shared<std::string>();
    auto pred_path = std::make_shared<std::string>();
    auto model_path = std::make_shared<std::string>();
    auto task = std::make_shared<std::string>("lemma");
    auto confusion_path = std::make_shared<std::string>();
    cmd_eval->add_option("gold", *gold_path, "gold TSV corpus")->required();
    cmd_eval->add_option("predicted", *pred_path, "predicted TSV corpus")->required();
    cmd_eval->add_option("--model", *model_path, "model file (defines the strata)")
        ->required();
    cmd_eval->add_option("--task", *task, "lemma or pos")
        ->check(CLI::IsMember({"lemma", "pos"}));
    cmd_eval->add_option("--confusion", *confusion_path, "write confusion matrix TSV");
    cmd_eval->callback([=] {
      RunManifest manifest;
      manifest.subcommand = "eval";
      const Corpus gold = load_corpus(*gold_path, manifest);
      const Corpus predicted = load_corpus(*pred_path, manifest);
      const TaggerModel model = load_model(*model_path);
      manifest.add_input(*model_path);
      const Task t = *task == "pos" ? Task::pos : Task::lemma;
      const EvalReport report = evaluate(gold, predicted, model, t);
      manifest.config = {{"task", *task}};
      if (!confusion_path->empty())
        write_payload(*confusion_path, confusion_tsv(report), manifest);
      finish_manifest(manifest);
      std::cout << format_eval_report(report);
    });
  }

  // ---- robustness -------------------------------------------------------
  auto* cmd_robust = app.add_subcommand(
      "robustness", "spelling-variation robustness: swap sets and delta-accuracy stats");
  {
    auto model_path = std::make_shared<std::string>();
    auto gold_path = std::make_shared<std::string>();
    auto test_path = std::make_shared<std::string>();
    auto task = std::make_shared<std::string>("lemma");
    auto pairs_path = std::make_shared<std::string>();
    auto jobs = std::make_shared<unsigned>(1);
    cmd_robust->add_option("--model", *model_path, "model file")->required();
    cmd_robust->add_option("--gold", *gold_path, "corpus mined for variant pairs")->required();
    cmd_robust->add_option("--test", *test_path, "corpus providing contexts")->required();
    cmd_robust->add_option("--task", *task, "lemma or pos")
        ->check(CLI::IsMember({"lemma", "pos"}));
    cmd_robust->add_option("--pairs-out", *pairs_path, "write per-pair results TSV");
    cmd_robust->add_option("-j,--jobs", *jobs, "worker threads");
    cmd_robust->callback([=] {
      RunManifest manifest;
      manifest.subcommand = "robustness";
      const TaggerModel model = load_model(*model_path);
      manifest.add_input(*model_path);
      const Corpus gold = load_corpus(*gold_path, manifest);
      const Corpus test = load_corpus(*test_path, manifest);
      const Task t = *task == "pos" ? Task::pos : Task::lemma;
      const RobustnessReport report = run_robustness(model, gold, test, t, *jobs);
      manifest.config = {{"task", *task}, {"jobs", *jobs}};
      if (!pairs_path->empty())
        write_payload(*pairs_path, robustness_pairs_tsv(report), manifest);
      finish_manifest(manifest);
      std::cout << format_robustness_summary(report);
    });
  }

  // Global options (--config, --version) remain reachable after a subcommand.
  for (CLI::App* sub : {cmd_tokenize, cmd_normalize, cmd_inventory, cmd_validate, cmd_augment,
                        cmd_split, cmd_train, cmd_tag, cmd_eval, cmd_robust})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
