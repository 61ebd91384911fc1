#include "textproj/pipeline.h"

#include <algorithm>
#include <cstdlib>
#include <set>

#include <spdlog/spdlog.h>

#include "textproj/coding.h"
#include "textproj/error.h"
#include "textproj/pos.h"
#include "textproj/topics.h"
#include "textproj/viz.h"

namespace textproj {

namespace fs = std::filesystem;

namespace {

std::string type_of(const nlohmann::json& v) {
  if (v.is_object()) return "object";
  if (v.is_array()) return "array";
  if (v.is_string()) return "string";
  if (v.is_boolean()) return "boolean";
  if (v.is_number_integer() || v.is_number_unsigned()) return "integer";
  if (v.is_number()) return "number";
  return "null";
}

bool type_matches(const nlohmann::json& v, const std::string& type) {
  const std::string actual = type_of(v);
  return actual == type || (type == "number" && actual == "integer");
}

void validate_at(const nlohmann::json& v, const nlohmann::json& schema,
                 const std::string& path, std::vector<std::string>* out) {
  const std::string where = path.empty() ? "/" : path;
  if (schema.contains("type")) {
    const auto& t = schema.at("type");
    bool ok = false;
    if (t.is_array()) {
      for (const auto& alt : t) ok = ok || type_matches(v, alt.get<std::string>());
    } else {
      ok = type_matches(v, t.get<std::string>());
    }
    if (!ok) {
      out->push_back(where + ": expected " + t.dump() + ", got " + type_of(v));
      return;
    }
  }
  if (schema.contains("enum")) {
    const auto& e = schema.at("enum");
    if (std::find(e.begin(), e.end(), v) == e.end()) {
      out->push_back(where + ": value " + v.dump() + " not in " + e.dump());
    }
  }
  if (v.is_number()) {
    if (schema.contains("minimum") && v.get<double>() < schema.at("minimum").get<double>()) {
      out->push_back(where + ": " + v.dump() + " is below the minimum " +
                     schema.at("minimum").dump());
    }
    if (schema.contains("maximum") && v.get<double>() > schema.at("maximum").get<double>()) {
      out->push_back(where + ": " + v.dump() + " is above the maximum " +
                     schema.at("maximum").dump());
    }
  }
  if (v.is_array()) {
    if (schema.contains("minItems") && v.size() < schema.at("minItems").get<std::size_t>()) {
      out->push_back(where + ": fewer than " + schema.at("minItems").dump() + " items");
    }
    if (schema.contains("items")) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        validate_at(v[i], schema.at("items"), path + "/" + std::to_string(i), out);
      }
    }
  }
  if (v.is_object()) {
    if (schema.contains("required")) {
      for (const auto& r : schema.at("required")) {
        if (!v.contains(r.get<std::string>())) {
          out->push_back(where + ": missing required property '" + r.get<std::string>() + "'");
        }
      }
    }
    const nlohmann::json props = schema.value("properties", nlohmann::json::object());
    const bool closed = schema.contains("additionalProperties") &&
                        schema.at("additionalProperties").is_boolean() &&
                        !schema.at("additionalProperties").get<bool>();
    for (const auto& [key, value] : v.items()) {
      if (props.contains(key)) {
        validate_at(value, props.at(key), path + "/" + key, out);
      } else if (closed) {
        out->push_back(where + ": unknown property '" + key + "'");
      }
    }
  }
}

}  // namespace

std::vector<std::string> validate_json(const nlohmann::json& instance,
                                       const nlohmann::json& schema) {
  std::vector<std::string> out;
  validate_at(instance, schema, "", &out);
  return out;
}

const nlohmann::json& pipeline_schema() {
  static const nlohmann::json schema = nlohmann::json::parse(R"({
  "title": "textproj pipeline configuration",
  "type": "object",
  "required": ["corpus", "stages"],
  "additionalProperties": false,
  "properties": {
    "output_dir": {"type": "string", "description": "Bundle directory; default 'out'"},
    "seed": {"type": "integer", "minimum": 0, "description": "Required when topics or viz run; TEXTPROJ_SEED is the fallback"},
    "stages": {
      "type": "array",
      "items": {"type": "string", "enum": ["clones", "ngram", "topics", "pos", "coding", "viz"]}
    },
    "corpus": {
      "type": "object",
      "required": ["root"],
      "additionalProperties": false,
      "properties": {
        "root": {"type": "string"},
        "manifest": {"type": "string"},
        "ignore_patterns": {"type": "array", "items": {"type": "string"}},
        "ignore_file": {"type": "string"},
        "class_map": {
          "type": "array",
          "items": {
            "type": "object",
            "required": ["pattern", "class"],
            "additionalProperties": false,
            "properties": {
              "pattern": {"type": "string"},
              "class": {"type": "string", "enum": ["contracting", "planning_control", "reporting", "config_change_mgmt", "evaluation", "requirements_analysis", "software_design", "software_elements", "logistics"]}
            }
          }
        }
      }
    },
    "clones": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "min_length": {"type": "integer", "minimum": 2},
        "max_gap": {"type": "integer", "minimum": 0},
        "max_fusion_instances": {"type": "integer", "minimum": 2}
      }
    },
    "ngram": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "n": {"type": "integer", "minimum": 1},
        "smoothing": {"type": "string", "enum": ["none", "add_one"]},
        "series_queries": {"type": "array", "items": {"type": "string"}}
      }
    },
    "topics": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "k": {"type": "integer", "minimum": 1},
        "alpha": {"type": "number", "minimum": 0},
        "beta": {"type": "number", "minimum": 0},
        "iterations": {"type": "integer", "minimum": 1},
        "stopwords": {"type": "string"}
      }
    },
    "coding": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "codebook": {"type": "string"},
        "min_occurrence": {"type": "integer", "minimum": 0}
      }
    },
    "viz": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "canvas": {"type": "string"},
        "max_words": {"type": "integer", "minimum": 1},
        "connector": {"type": "string"},
        "min_weight": {"type": "integer", "minimum": 1},
        "flow_terms": {"type": "array", "items": {"type": "string"}}
      }
    }
  }
})");
  return schema;
}

const nlohmann::json& example_pipeline_config() {
  static const nlohmann::json example = nlohmann::json::parse(R"({
  "output_dir": "out",
  "seed": 42,
  "stages": ["clones", "ngram", "topics", "pos", "viz"],
  "corpus": {
    "root": "rfc",
    "manifest": "rfc/manifest.json",
    "ignore_file": "rfc/ignore.txt",
    "class_map": [{"pattern": "^rfc", "class": "requirements_analysis"}]
  },
  "clones": {"min_length": 20, "max_gap": 2},
  "ngram": {"n": 3, "smoothing": "add_one", "series_queries": ["request"]},
  "topics": {"k": 10, "iterations": 1000},
  "viz": {"canvas": "800x600", "max_words": 50, "connector": "is", "min_weight": 2,
          "flow_terms": ["request", "response", "header"]}
})");
  return example;
}

std::optional<std::uint64_t> resolve_seed(std::optional<std::uint64_t> explicit_seed) {
  if (explicit_seed) return explicit_seed;
  const char* env = std::getenv("TEXTPROJ_SEED");
  if (env == nullptr || *env == '\0') return std::nullopt;
  const std::string s(env);
  if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 19) {
    throw ConfigError("TEXTPROJ_SEED must be an unsigned integer, got '" + s + "'");
  }
  return std::stoull(s);
}

const std::vector<std::string>& known_stages() {
  static const std::vector<std::string> stages = {"clones", "ngram", "topics",
                                                  "pos",    "coding", "viz"};
  return stages;
}

PipelineConfig parse_pipeline_config(const nlohmann::json& j, const fs::path& base_dir,
                                     std::optional<std::uint64_t> seed_override) {
  const auto problems = validate_json(j, pipeline_schema());
  if (!problems.empty()) {
    std::string msg = "invalid pipeline configuration:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ConfigError(msg);
  }
  PipelineConfig c;
  c.base_dir = base_dir;
  auto resolve = [&](const std::string& p) {
    fs::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  auto must_exist = [&](const fs::path& p, const char* what) {
    if (!fs::exists(p)) {
      throw ConfigError(std::string(what) + " '" + p.string() + "' does not exist");
    }
  };

  c.output_dir = resolve(j.value("output_dir", std::string("out")));
  c.stages = j.at("stages").get<std::vector<std::string>>();
  const auto& corpus = j.at("corpus");
  c.corpus_root = resolve(corpus.at("root").get<std::string>());
  must_exist(c.corpus_root, "corpus root");
  if (corpus.contains("manifest")) {
    c.manifest = resolve(corpus.at("manifest").get<std::string>());
    must_exist(*c.manifest, "manifest");
  }
  if (corpus.contains("ignore_patterns")) {
    c.ignore_patterns = corpus.at("ignore_patterns").get<std::vector<std::string>>();
  }
  if (corpus.contains("ignore_file")) {
    const fs::path p = resolve(corpus.at("ignore_file").get<std::string>());
    must_exist(p, "ignore file");
    c.ignore_file = p;
    for (auto& pattern : read_pattern_file(p)) c.ignore_patterns.push_back(std::move(pattern));
  }
  for (const auto& rule : corpus.value("class_map", nlohmann::json::array())) {
    c.class_map.push_back({rule.at("pattern").get<std::string>(),
                           parse_source_class(rule.at("class").get<std::string>())});
  }

  const auto clones = j.value("clones", nlohmann::json::object());
  c.clones.min_length = clones.value("min_length", c.clones.min_length);
  c.clones.max_gap = clones.value("max_gap", c.clones.max_gap);
  c.clones.max_fusion_instances = clones.value("max_fusion_instances", c.clones.max_fusion_instances);

  const auto ngram = j.value("ngram", nlohmann::json::object());
  c.ngram_n = ngram.value("n", c.ngram_n);
  c.smoothing = parse_smoothing(ngram.value("smoothing", std::string("add_one")));
  c.series_queries = ngram.value("series_queries", std::vector<std::string>{});

  const auto topics = j.value("topics", nlohmann::json::object());
  c.topics = topics.value("k", c.topics);
  if (topics.contains("alpha")) c.alpha = topics.at("alpha").get<double>();
  c.beta = topics.value("beta", c.beta);
  c.iterations = topics.value("iterations", c.iterations);
  if (topics.contains("stopwords")) {
    const fs::path p = resolve(topics.at("stopwords").get<std::string>());
    must_exist(p, "stop-word file");
    c.stopwords = read_stopword_file(p);
  }

  const auto coding = j.value("coding", nlohmann::json::object());
  if (coding.contains("codebook")) {
    c.codebook = resolve(coding.at("codebook").get<std::string>());
    must_exist(*c.codebook, "codebook");
  }
  c.min_occurrence = coding.value("min_occurrence", c.min_occurrence);

  const auto viz = j.value("viz", nlohmann::json::object());
  c.canvas = viz.value("canvas", c.canvas);
  parse_canvas(c.canvas);
  c.max_words = viz.value("max_words", c.max_words);
  c.connector = viz.value("connector", c.connector);
  c.min_weight = viz.value("min_weight", c.min_weight);
  c.flow_terms = viz.value("flow_terms", std::vector<std::string>{});

  std::optional<std::uint64_t> seed = seed_override;
  if (!seed && j.contains("seed")) seed = j.at("seed").get<std::uint64_t>();
  c.seed = resolve_seed(seed);
  const bool stochastic = std::any_of(c.stages.begin(), c.stages.end(), [](const std::string& s) {
    return s == "topics" || s == "viz";
  });
  if (stochastic && !c.seed) {
    throw ConfigError("a seed is required for the topics and viz stages (config 'seed' or TEXTPROJ_SEED)");
  }
  const bool coding_enabled = std::find(c.stages.begin(), c.stages.end(), "coding") != c.stages.end();
  if (coding_enabled && !c.codebook) {
    throw ConfigError("the coding stage needs coding.codebook");
  }
  return c;
}

PipelineConfig load_pipeline_config(const fs::path& path,
                                    std::optional<std::uint64_t> seed_override) {
  if (!fs::exists(path)) throw ConfigError("config file '" + path.string() + "' does not exist");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("cannot parse config '" + path.string() + "': " + e.what());
  }
  return parse_pipeline_config(j, path.parent_path(), seed_override);
}

// ---------------------------------------------------------------------------

namespace {

class Bundle {
 public:
  explicit Bundle(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  void write_json(const std::string& name, const nlohmann::json& j) {
    write_text(name, j.dump(2) + "\n");
  }
  void write_text(const std::string& name, const std::string& text) {
    write_file(dir_ / name, text);
    outputs_.push_back(name);
  }
  const fs::path& dir() const { return dir_; }
  std::vector<std::string>& outputs() { return outputs_; }

 private:
  fs::path dir_;
  std::vector<std::string> outputs_;
};

bool enabled(const PipelineConfig& c, const std::string& stage) {
  return std::find(c.stages.begin(), c.stages.end(), stage) != c.stages.end();
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
  PipelineResult result;
  Bundle bundle(config.output_dir);
  ReportInputs report;

  for (const std::string& s : config.stages) {
    if (std::find(known_stages().begin(), known_stages().end(), s) == known_stages().end()) {
      throw ConfigError("unknown stage '" + s + "'");
    }
  }
  if (config.stages.empty()) {
    spdlog::info("no stages enabled");
    for (const auto& f : render_report(report, config.output_dir / "report").files) {
      bundle.outputs().push_back("report/" + f);
    }
    result.outputs = bundle.outputs();
    return result;
  }

  spdlog::info("ingesting {}", config.corpus_root.string());
  IngestOptions options;
  options.class_map = config.class_map;
  IngestResult ingested = ingest_path(config.corpus_root, options);
  for (const FileError& e : ingested.errors) {
    spdlog::warn("skipped {}: {}", e.path, e.message);
  }
  const Manifest manifest = config.manifest ? read_manifest(*config.manifest) : Manifest{};
  std::vector<Document> docs;
  std::vector<fs::path> config_files;
  for (const auto& f : {config.manifest, config.ignore_file}) {
    if (f) config_files.push_back(fs::weakly_canonical(*f));
  }
  for (Document& d : ingested.documents) {
    const fs::path path = fs::weakly_canonical(config.corpus_root / d.id);
    if (std::find(config_files.begin(), config_files.end(), path) != config_files.end()) continue;
    docs.push_back(std::move(d));
  }
  Corpus corpus;
  try {
    corpus = build_corpus(std::move(docs), manifest);
  } catch (const Error& e) {
    throw ConfigError(std::string("corpus: ") + e.what());
  }
  bundle.write_json("corpus.json", corpus_to_json(corpus));
  spdlog::info("corpus has {} documents", corpus.size());

  auto run_stage = [&](const std::string& name, auto&& body) {
    if (!enabled(config, name)) return;
    spdlog::info("stage {}", name);
    try {
      body();
    } catch (const std::exception& e) {
      spdlog::error("stage {} failed: {}", name, e.what());
      result.failures.push_back(name + ": " + e.what());
      report.missing.push_back(name + " (" + e.what() + ")");
    }
  };

  const std::vector<PreparedDocument> words =
      prepare_corpus(corpus, TokenizerConfig{}, config.ignore_patterns);

  run_stage("clones", [&] {
    const auto prepared =
        prepare_corpus(corpus, clone_tokenizer_config(), config.ignore_patterns);
    const auto groups = detect_gapped_clones(prepared, config.clones);
    const CloneStats stats = clone_stats(prepared, groups);
    bundle.write_json("clones.json", {{"min_length", config.clones.min_length},
                                      {"max_gap", config.clones.max_gap},
                                      {"groups", clone_groups_to_json(groups)}});
    bundle.write_json("clone_stats.json", clone_stats_to_json(stats));
    std::vector<TreemapItem> items;
    nlohmann::json rows = nlohmann::json::array();
    for (const DocumentCloneStats& d : stats.documents) {
      if (d.total_lines > 0) {
        items.push_back({d.document_id, static_cast<double>(d.total_lines), d.coverage});
      }
      rows.push_back({{"document", d.document_id},
                      {"lines", d.total_lines},
                      {"clone coverage", d.coverage},
                      {"clone groups", d.clone_group_count},
                      {"clones", d.clone_instance_count}});
    }
    rows.push_back({{"document", "(corpus)"},
                    {"lines", stats.total_lines},
                    {"clone coverage", stats.coverage},
                    {"clone groups", stats.clone_group_count},
                    {"clones", stats.clone_instance_count}});
    report.tables.push_back({"Clone statistics", rows});
    if (!items.empty()) report.treemap = treemap(items, parse_canvas(config.canvas));
    spdlog::info("clones: {} groups, coverage {:.3f}", groups.size(), stats.coverage);
  });

  run_stage("ngram", [&] {
    std::vector<std::vector<std::string>> sequences;
    for (const PreparedDocument& d : words) sequences.push_back(kept_words(d));
    const NGramModel model = train_word_model(sequences, config.ngram_n, config.smoothing);
    nlohmann::json out = {{"n", model.n},
                          {"smoothing", std::string(to_string(model.smoothing))},
                          {"vocabulary_size", model.vocabulary.size()},
                          {"total_tokens", model.total_tokens},
                          {"window_count", model.window_count}};
    nlohmann::json entropy = nlohmann::json::array();
    for (std::size_t d = 0; d < sequences.size(); ++d) {
      if (sequences[d].size() < config.ngram_n) continue;
      std::vector<std::vector<std::string>> rest;
      for (std::size_t k = 0; k < sequences.size(); ++k) {
        if (k != d) rest.push_back(sequences[k]);
      }
      nlohmann::json row = {{"document", words[d].stream.document_id}};
      try {
        const NGramModel held = train_word_model(rest, config.ngram_n, config.smoothing);
        const EntropyResult e = cross_entropy(held, sequences[d]);
        row["cross_entropy"] = e.infinite ? nlohmann::json("inf") : nlohmann::json(e.bits_per_token);
      } catch (const TrainingError&) {
        row["cross_entropy"] = nullptr;
      }
      entropy.push_back(row);
    }
    out["held_out_cross_entropy"] = entropy;
    nlohmann::json series = nlohmann::json::array();
    for (const std::string& q : config.series_queries) {
      series.push_back(series_to_json(q, frequency_series(corpus, q)));
    }
    out["series"] = series;
    bundle.write_json("ngram.json", out);
    report.tables.push_back({"Held-out cross-entropy (bits per token)", entropy});
  });

  run_stage("topics", [&] {
    LdaConfig lda;
    lda.topics = config.topics;
    lda.alpha = config.alpha;
    lda.beta = config.beta;
    lda.iterations = config.iterations;
    lda.seed = *config.seed;
    lda.stopwords = config.stopwords;
    const TopicModel model = fit_lda(corpus, lda);
    nlohmann::json topics = nlohmann::json::array();
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t k = 0; k < model.topics; ++k) {
      std::vector<std::string> top;
      for (const WeightedWord& w : top_words(model, k, 10)) top.push_back(w.word);
      std::string joined;
      for (const auto& w : top) joined += (joined.empty() ? "" : ", ") + w;
      topics.push_back({{"topic", k}, {"top_words", top}});
      rows.push_back({{"topic", k}, {"top words", joined}});
    }
    nlohmann::json mixtures = nlohmann::json::array();
    for (const std::string& id : model.document_ids) {
      mixtures.push_back({{"document_id", id}, {"mixture", doc_topics(model, id)}});
    }
    bundle.write_json("topics.json", {{"k", model.topics},
                                      {"alpha", model.alpha},
                                      {"beta", model.beta},
                                      {"iterations", model.iterations},
                                      {"seed", model.seed},
                                      {"topics", topics},
                                      {"documents", mixtures},
                                      {"network", topic_network_to_json(topic_network(model, 0.2))}});
    report.tables.push_back({"Topics", rows});
  });

  run_stage("pos", [&] {
    const BaselineTagger tagger;
    nlohmann::json docs_out = nlohmann::json::array();
    std::vector<ERGraph> graphs;
    nlohmann::json smell_rows = nlohmann::json::array();
    for (const Document& d : corpus.documents()) {
      std::vector<SmellFinding> smells;
      std::vector<ERGraph> doc_graphs;
      std::size_t sentences = 0, terms = 0;
      for (const TaggedSentence& s : tag_document(d, tagger)) {
        ++sentences;
        terms += extract_terms(s.tokens).size();
        doc_graphs.push_back(extract_er(s.tokens));
        for (auto& f : detect_passive(s.tokens, d.id)) smells.push_back(std::move(f));
      }
      const ERGraph g = merge_er(doc_graphs);
      graphs.push_back(g);
      docs_out.push_back({{"document_id", d.id},
                          {"sentences", sentences},
                          {"terms", terms},
                          {"er", er_to_json(g)},
                          {"smells", smells_to_json(smells)}});
      smell_rows.push_back({{"document", d.id},
                            {"sentences", sentences},
                            {"passive voice findings", smells.size()}});
    }
    bundle.write_json("pos.json", docs_out);
    bundle.write_text("er.dot", er_to_dot(merge_er(graphs)));
    report.tables.push_back({"Passive voice", smell_rows});
  });

  run_stage("coding", [&] {
    const Codebook cb = load_codebook(*config.codebook);
    const auto violations = validate_codebook(cb, &corpus);
    nlohmann::json v = nlohmann::json::array();
    for (const Violation& x : violations) v.push_back({{"kind", x.kind}, {"message", x.message}});
    const AxialGraph condensed = condense_graph(axial_graph(cb), config.min_occurrence);
    bundle.write_json("coding.json", {{"violations", v},
                                      {"counts", occurrence_counts(cb)},
                                      {"min_occurrence", config.min_occurrence},
                                      {"condensed", axial_graph_to_json(condensed)},
                                      {"saturation", saturation_curve(cb.segments, 10)}});
    bundle.write_text("axial.dot", axial_graph_to_dot(condensed));
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [code, n] : occurrence_counts(cb)) rows.push_back({{"code", code}, {"occurrences", n}});
    report.tables.push_back({"Code occurrences", rows});
  });

  run_stage("viz", [&] {
    const Canvas canvas = parse_canvas(config.canvas);
    const auto& stop = config.stopwords.empty() ? default_stopwords() : config.stopwords;
    WordCloudConfig wc;
    wc.max_words = config.max_words;
    wc.canvas = canvas;
    wc.seed = *config.seed;
    wc.stopwords = stop;
    report.word_cloud = word_cloud(word_frequencies(words), wc);
    bundle.write_json("wordcloud.json", word_cloud_to_json(*report.word_cloud));

    const auto punct = prepare_corpus(corpus, TokenizerConfig{true, true}, config.ignore_patterns);
    report.phrase_net = phrase_net(punct, config.connector, config.min_weight, stop);
    bundle.write_json("phrasenet.json", phrase_net_to_json(*report.phrase_net));

    if (config.flow_terms.empty()) {
      report.missing.push_back("text flow (no viz.flow_terms configured)");
    } else {
      try {
        report.text_flow = text_flow(corpus, config.flow_terms, canvas);
        bundle.write_json("textflow.json", text_flow_to_json(*report.text_flow));
      } catch (const ConfigError& e) {
        report.missing.push_back(std::string("text flow (") + e.what() + ")");
      }
    }
  });

  for (const auto& f : render_report(report, config.output_dir / "report").files) {
    bundle.outputs().push_back("report/" + f);
  }
  result.outputs = bundle.outputs();
  result.exit_code = result.failures.empty() ? 0 : 1;
  return result;
}

}  // namespace textproj
