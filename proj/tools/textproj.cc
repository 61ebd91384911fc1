// textproj: command-line front end for the text analysis library.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "textproj/clones.h"
#include "textproj/coding.h"
#include "textproj/corpus.h"
#include "textproj/error.h"
#include "textproj/ngram.h"
#include "textproj/pipeline.h"
#include "textproj/pos.h"
#include "textproj/topics.h"
#include "textproj/viz.h"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace textproj;

namespace {

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_file(out, text);
    spdlog::info("wrote {}", out);
  }
}

void emit_json(const std::string& out, const json& j) { emit(out, j.dump(2) + "\n"); }

json load_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError("cannot parse " + path + ": " + e.what());
  }
}

std::vector<std::string> ignore_patterns(const std::string& file) {
  return file.empty() ? std::vector<std::string>{} : read_pattern_file(file);
}

std::vector<const Document*> select_documents(const Corpus& corpus, const std::string& doc) {
  std::vector<const Document*> out;
  if (doc.empty()) {
    for (const Document& d : corpus.documents()) out.push_back(&d);
  } else {
    out.push_back(&corpus.at(doc));
  }
  return out;
}

std::uint64_t require_seed(std::optional<std::uint64_t> seed) {
  const auto s = resolve_seed(seed);
  if (!s) throw ConfigError("a seed is required: pass --seed or set TEXTPROJ_SEED");
  return *s;
}

// ---------------------------------------------------------------------------

void add_corpus(CLI::App& app) {
  auto* cmd = app.add_subcommand("corpus", "Ingest plain-text documents");
  cmd->require_subcommand(1);
  auto* ingest = cmd->add_subcommand("ingest", "Build corpus.json from a directory");
  static std::string root, manifest, class_map, out = "corpus.json";
  ingest->add_option("--root", root, "Directory to ingest")->required();
  ingest->add_option("--manifest", manifest, "JSON manifest with links and versions");
  ingest->add_option("--class-map", class_map,
                     "JSON list of {\"pattern\": regex, \"class\": source class}");
  ingest->add_option("--out", out, "Output file ('-' for stdout)");
  ingest->callback([] {
    IngestOptions options;
    if (!class_map.empty()) {
      for (const auto& r : load_json(class_map)) {
        options.class_map.push_back({r.at("pattern").get<std::string>(),
                                     parse_source_class(r.at("class").get<std::string>())});
      }
    }
    IngestResult res = ingest_path(root, options);
    for (const FileError& e : res.errors) spdlog::warn("skipped {}: {}", e.path, e.message);
    const Manifest m = manifest.empty() ? Manifest{} : read_manifest(manifest);
    const Corpus corpus = build_corpus(std::move(res.documents), m);
    emit_json(out, corpus_to_json(corpus));
  });
}

void add_clones(CLI::App& app) {
  auto* cmd = app.add_subcommand("clones", "Clone detection and coverage");
  cmd->require_subcommand(1);
  static std::string corpus_path, ignore, clones_path, out;
  static CloneConfig config;
  static int group_id = 0;

  auto* detect = cmd->add_subcommand("detect", "Detect exact and gapped clones");
  detect->add_option("--corpus", corpus_path)->required();
  detect->add_option("--min-length", config.min_length, "Minimum clone length in tokens")
      ->capture_default_str();
  detect->add_option("--max-gap", config.max_gap, "Maximum line edits inside a gapped clone")
      ->capture_default_str();
  detect->add_option("--ignore", ignore, "File of regular expressions to ignore");
  detect->add_option("--out", out);
  detect->callback([] {
    const Corpus corpus = load_corpus(corpus_path);
    const auto docs = prepare_corpus(corpus, clone_tokenizer_config(), ignore_patterns(ignore));
    const auto groups = detect_gapped_clones(docs, config);
    emit_json(out, {{"min_length", config.min_length},
                    {"max_gap", config.max_gap},
                    {"groups", clone_groups_to_json(groups)}});
  });

  auto* stats = cmd->add_subcommand("stats", "Coverage and counts per document");
  stats->add_option("--corpus", corpus_path)->required();
  stats->add_option("--clones", clones_path)->required();
  stats->add_option("--ignore", ignore);
  stats->add_option("--out", out);
  stats->callback([] {
    const Corpus corpus = load_corpus(corpus_path);
    const auto docs = prepare_corpus(corpus, clone_tokenizer_config(), ignore_patterns(ignore));
    const auto groups = clone_groups_from_json(load_json(clones_path).at("groups"));
    emit_json(out, clone_stats_to_json(clone_stats(docs, groups)));
  });

  auto* diff = cmd->add_subcommand("diff", "Line differences of a clone group");
  diff->add_option("group", group_id, "Clone group id")->required();
  diff->add_option("--corpus", corpus_path)->required();
  diff->add_option("--clones", clones_path)->required();
  diff->add_option("--ignore", ignore);
  diff->add_option("--out", out);
  diff->callback([] {
    const Corpus corpus = load_corpus(corpus_path);
    const auto docs = prepare_corpus(corpus, clone_tokenizer_config(), ignore_patterns(ignore));
    const auto groups = clone_groups_from_json(load_json(clones_path).at("groups"));
    for (const CloneGroup& g : groups) {
      if (g.id == group_id) {
        const auto diffs = diff_instances(g, corpus, docs);
        emit_json(out, diff_to_json(g, diffs));
        return;
      }
    }
    throw LookupError("no clone group with id " + std::to_string(group_id));
  });
}

void add_ngram(CLI::App& app) {
  auto* cmd = app.add_subcommand("ngram", "N-gram models, profiles and series");
  cmd->require_subcommand(1);
  static std::string corpus_path, model_path, smoothing = "add_one", out, text_path,
                     category, profiles_dir, query, doc, ignore;
  static std::size_t n = 3;

  auto* train = cmd->add_subcommand("train", "Train a word n-gram model");
  train->add_option("--corpus", corpus_path)->required();
  train->add_option("--n", n)->capture_default_str();
  train->add_option("--smoothing", smoothing, "none or add_one")->capture_default_str();
  train->add_option("--ignore", ignore);
  train->add_option("--out", out);
  train->callback([] {
    const Corpus corpus = load_corpus(corpus_path);
    std::vector<std::vector<std::string>> seqs;
    for (const auto& d : prepare_corpus(corpus, {}, ignore_patterns(ignore))) {
      seqs.push_back(kept_words(d));
    }
    emit_json(out, model_to_json(train_word_model(seqs, n, parse_smoothing(smoothing))));
  });

  auto* entropy = cmd->add_subcommand("entropy", "Cross-entropy of documents under a model");
  entropy->add_option("--model", model_path)->required();
  entropy->add_option("--corpus", corpus_path)->required();
  entropy->add_option("--doc", doc, "Only this document");
  entropy->add_option("--out", out);
  entropy->callback([] {
    const NGramModel model = model_from_json(load_json(model_path));
    const Corpus corpus = load_corpus(corpus_path);
    json rows = json::array();
    for (const Document* d : select_documents(corpus, doc)) {
      std::vector<std::string> words;
      for (const Token& t : tokenize(*d).tokens) words.push_back(t.normalized);
      const EntropyResult e = cross_entropy(model, words);
      rows.push_back({{"document_id", d->id},
                      {"tokens", e.tokens},
                      {"bits_per_token", e.infinite ? json("inf") : json(e.bits_per_token)},
                      {"zero_probability_events", e.zero_probability_events}});
    }
    emit_json(out, rows);
  });

  auto* profile = cmd->add_subcommand("profile", "Train a character n-gram profile");
  profile->add_option("--text", text_path, "Training text file")->required();
  profile->add_option("--category", category)->required();
  profile->add_option("--out", out);
  profile->callback([] {
    emit_json(out, profile_to_json(train_char_profile(read_file(text_path), category)));
  });

  auto* categorize_cmd = cmd->add_subcommand("categorize", "Rank categories for a text");
  categorize_cmd->add_option("--profiles", profiles_dir, "Directory of profile JSON files")
      ->required();
  categorize_cmd->add_option("--text", text_path)->required();
  categorize_cmd->add_option("--out", out);
  categorize_cmd->callback([] {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(profiles_dir)) {
      if (e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<CategoryProfile> profiles;
    for (const auto& f : files) profiles.push_back(profile_from_json(load_json(f.string())));
    emit_json(out, categorization_to_json(categorize(profiles, read_file(text_path))));
  });

  auto* series = cmd->add_subcommand("series", "Relative n-gram frequency per version");
  series->add_option("--corpus", corpus_path)->required();
  series->add_option("--query", query)->required();
  series->add_option("--out", out);
  series->callback([] {
    const Corpus corpus = load_corpus(corpus_path);
    emit_json(out, series_to_json(query, frequency_series(corpus, query)));
  });
}

void add_topics(CLI::App& app) {
  auto* cmd = app.add_subcommand("topics", "LDA topic models");
  cmd->require_subcommand(1);
  static std::string corpus_path, model_path, stopwords, out;
  static LdaConfig config;
  static std::optional<std::uint64_t> seed;
  static std::optional<double> alpha;
  static std::size_t topic = 0, top = 10;
  static double threshold = 0.2;

  auto* fit = cmd->add_subcommand("fit", "Fit LDA by collapsed Gibbs sampling");
  fit->add_option("--corpus", corpus_path)->required();
  fit->add_option("--k", config.topics)->capture_default_str();
  fit->add_option("--seed", seed, "Random seed (else TEXTPROJ_SEED)");
  fit->add_option("--iterations", config.iterations)->capture_default_str();
  fit->add_option("--alpha", alpha, "Default 50/k");
  fit->add_option("--beta", config.beta)->capture_default_str();
  fit->add_option("--stopwords", stopwords, "Stop-word file");
  fit->add_option("--out", out);
  fit->callback([] {
    config.seed = require_seed(seed);
    config.alpha = alpha;
    if (!stopwords.empty()) config.stopwords = read_stopword_file(stopwords);
    emit_json(out, topic_model_to_json(fit_lda(load_corpus(corpus_path), config)));
  });

  auto* show = cmd->add_subcommand("show", "Top words of a topic");
  show->add_option("--model", model_path)->required();
  show->add_option("--topic", topic)->required();
  show->add_option("--top", top)->capture_default_str();
  show->add_option("--out", out);
  show->callback([] {
    const TopicModel m = topic_model_from_json(load_json(model_path));
    json words = json::array();
    for (const WeightedWord& w : top_words(m, topic, top)) {
      words.push_back({{"word", w.word}, {"probability", w.probability}});
    }
    emit_json(out, {{"topic", topic}, {"words", words}});
  });

  auto* network = cmd->add_subcommand("network", "Document-topic network");
  network->add_option("--model", model_path)->required();
  network->add_option("--threshold", threshold)->capture_default_str();
  network->add_option("--out", out);
  network->callback([] {
    const TopicModel m = topic_model_from_json(load_json(model_path));
    emit_json(out, topic_network_to_json(topic_network(m, threshold)));
  });
}

void add_pos(CLI::App& app) {
  auto* cmd = app.add_subcommand("pos", "Tagging, terms, ER graphs and smells");
  cmd->require_subcommand(1);
  static std::string corpus_path, doc, out, format = "json";

  auto common = [](CLI::App* sub) {
    sub->add_option("--corpus", corpus_path)->required();
    sub->add_option("--doc", doc, "Only this document");
    sub->add_option("--out", out);
  };
  auto tagged = [] {
    const Corpus corpus = load_corpus(corpus_path);
    const BaselineTagger tagger;
    std::vector<TaggedSentence> all;
    for (const Document* d : select_documents(corpus, doc)) {
      for (auto& s : tag_document(*d, tagger)) all.push_back(std::move(s));
    }
    return all;
  };

  auto* tag_cmd = cmd->add_subcommand("tag", "Tag sentences");
  common(tag_cmd);
  tag_cmd->callback([tagged] { emit_json(out, tagged_to_json(tagged())); });

  auto* terms = cmd->add_subcommand("terms", "Extract multiword terms");
  common(terms);
  terms->callback([tagged] {
    std::vector<Term> all;
    for (const TaggedSentence& s : tagged()) {
      for (auto& t : extract_terms(s.tokens)) all.push_back(std::move(t));
    }
    emit_json(out, terms_to_json(all));
  });

  auto* er = cmd->add_subcommand("er", "Entity-relationship graph");
  common(er);
  er->add_option("--format", format, "json or dot")
      ->check(CLI::IsMember({"json", "dot"}))
      ->capture_default_str();
  er->callback([tagged] {
    std::vector<ERGraph> graphs;
    for (const TaggedSentence& s : tagged()) graphs.push_back(extract_er(s.tokens));
    const ERGraph g = merge_er(graphs);
    if (format == "dot") {
      emit(out, er_to_dot(g));
    } else {
      emit_json(out, er_to_json(g));
    }
  });

  auto* smells = cmd->add_subcommand("smells", "Passive-voice findings");
  common(smells);
  smells->callback([tagged] {
    std::vector<SmellFinding> all;
    for (const TaggedSentence& s : tagged()) {
      for (auto& f : detect_passive(s.tokens, s.sentence.document_id)) all.push_back(std::move(f));
    }
    emit_json(out, smells_to_json(all));
  });
}

void add_coding(CLI::App& app) {
  auto* cmd = app.add_subcommand("coding", "Qualitative coding analytics");
  cmd->require_subcommand(1);
  static std::string codebook, corpus_path, out, unit = "document";
  static std::uint64_t min_occurrence = 7;
  static std::vector<std::string> coders;
  static bool per_code = false;
  static std::size_t batch = 10;
  static std::string format = "json";

  auto* validate = cmd->add_subcommand("validate", "Check a codebook");
  validate->add_option("--codebook", codebook)->required();
  validate->add_option("--corpus", corpus_path, "Check segment spans against this corpus");
  validate->add_option("--out", out);
  validate->callback([] {
    const Codebook cb = load_codebook(codebook);
    std::optional<Corpus> corpus;
    if (!corpus_path.empty()) corpus = load_corpus(corpus_path);
    const auto v = validate_codebook(cb, corpus ? &*corpus : nullptr);
    json rows = json::array();
    for (const Violation& x : v) rows.push_back({{"kind", x.kind}, {"message", x.message}});
    emit_json(out, {{"valid", v.empty()}, {"violations", rows}});
    if (!v.empty()) throw Error(std::to_string(v.size()) + " codebook violation(s)");
  });

  auto* counts = cmd->add_subcommand("counts", "Occurrences per code");
  counts->add_option("--codebook", codebook)->required();
  counts->add_option("--out", out);
  counts->callback([] { emit_json(out, occurrence_counts(load_codebook(codebook))); });

  auto* condense = cmd->add_subcommand("condense", "Axial graph above a minimum occurrence");
  condense->add_option("--codebook", codebook)->required();
  condense->add_option("--min", min_occurrence)->capture_default_str();
  condense->add_option("--format", format, "json or dot")
      ->check(CLI::IsMember({"json", "dot"}))
      ->capture_default_str();
  condense->add_option("--out", out);
  condense->callback([] {
    const AxialGraph g = condense_graph(axial_graph(load_codebook(codebook)), min_occurrence);
    if (format == "dot") {
      emit(out, axial_graph_to_dot(g));
    } else {
      emit_json(out, axial_graph_to_json(g));
    }
  });

  auto* agree = cmd->add_subcommand("agreement", "Percent agreement and Cohen's kappa");
  agree->add_option("--codebook", codebook)->required();
  agree->add_option("--coder", coders, "Exactly two coder ids")->required()->expected(2);
  agree->add_option("--unit", unit, "document or segment")
      ->check(CLI::IsMember({"document", "segment"}))
      ->capture_default_str();
  agree->add_flag("--per-code", per_code, "Binary presence agreement per code");
  agree->add_option("--out", out);
  agree->callback([] {
    const Codebook cb = load_codebook(codebook);
    const AgreementUnit u = unit == "segment" ? AgreementUnit::kSegment : AgreementUnit::kDocument;
    if (per_code) {
      json j = json::object();
      for (const auto& [code, a] : per_code_agreement(cb.segments, coders[0], coders[1], u)) {
        j[code] = agreement_to_json(a);
      }
      emit_json(out, j);
    } else {
      emit_json(out, agreement_to_json(agreement(cb.segments, coders[0], coders[1], u)));
    }
  });

  auto* saturation = cmd->add_subcommand("saturation", "New codes per batch of segments");
  saturation->add_option("--codebook", codebook)->required();
  saturation->add_option("--batch", batch)->capture_default_str();
  saturation->add_option("--out", out);
  saturation->callback(
      [] { emit_json(out, saturation_curve(load_codebook(codebook).segments, batch)); });
}

void add_viz(CLI::App& app) {
  auto* cmd = app.add_subcommand("viz", "SVG visualizations and report bundle");
  cmd->require_subcommand(1);
  static std::string corpus_path, out_dir = "viz", canvas = "800x600", connector = "is",
                     items_path, stats_path, ignore, inputs_dir;
  static std::optional<std::uint64_t> seed;
  static std::size_t max_words = 50;
  static std::uint64_t min_weight = 2;
  static std::vector<std::string> terms;

  auto* cloud = cmd->add_subcommand("wordcloud", "Word cloud of frequent words");
  cloud->add_option("--corpus", corpus_path)->required();
  cloud->add_option("--out", out_dir)->capture_default_str();
  cloud->add_option("--seed", seed);
  cloud->add_option("--canvas", canvas)->capture_default_str();
  cloud->add_option("--max-words", max_words)->capture_default_str();
  cloud->add_option("--ignore", ignore);
  cloud->callback([] {
    const Corpus corpus = load_corpus(corpus_path);
    WordCloudConfig config;
    config.seed = require_seed(seed);
    config.canvas = parse_canvas(canvas);
    config.max_words = max_words;
    config.stopwords = default_stopwords();
    const auto layout =
        word_cloud(word_frequencies(prepare_corpus(corpus, {}, ignore_patterns(ignore))), config);
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "wordcloud.svg", word_cloud_svg(layout));
    write_file(fs::path(out_dir) / "wordcloud.json", word_cloud_to_json(layout).dump(2) + "\n");
  });

  auto* net = cmd->add_subcommand("phrasenet", "Phrase net for a connector word");
  net->add_option("--corpus", corpus_path)->required();
  net->add_option("--connector", connector)->capture_default_str();
  net->add_option("--min-weight", min_weight)->capture_default_str();
  net->add_option("--out", out_dir)->capture_default_str();
  net->add_option("--canvas", canvas)->capture_default_str();
  net->add_option("--ignore", ignore);
  net->callback([] {
    const Corpus corpus = load_corpus(corpus_path);
    const auto docs = prepare_corpus(corpus, TokenizerConfig{true, true}, ignore_patterns(ignore));
    const auto g = phrase_net(docs, connector, min_weight, default_stopwords());
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "phrasenet.svg", phrase_net_svg(g, parse_canvas(canvas)));
    write_file(fs::path(out_dir) / "phrasenet.json", phrase_net_to_json(g).dump(2) + "\n");
  });

  auto* tree = cmd->add_subcommand("treemap", "Treemap of sizes colored by a 0..1 value");
  auto* source = tree->add_option_group("source");
  source->add_option("--items", items_path, "JSON list of {id, size, color}");
  source->add_option("--stats", stats_path, "clone_stats.json: lines as size, coverage as color");
  source->require_option(1);
  tree->add_option("--out", out_dir)->capture_default_str();
  tree->add_option("--canvas", canvas)->capture_default_str();
  tree->callback([] {
    std::vector<TreemapItem> items;
    if (!items_path.empty()) {
      for (const auto& r : load_json(items_path)) {
        items.push_back({r.at("id").get<std::string>(), r.at("size").get<double>(),
                         r.at("color").get<double>()});
      }
    } else {
      for (const auto& r : load_json(stats_path).at("documents")) {
        if (r.at("total_lines").get<std::size_t>() == 0) continue;
        items.push_back({r.at("document_id").get<std::string>(),
                         r.at("total_lines").get<double>(), r.at("coverage").get<double>()});
      }
    }
    const auto layout = treemap(items, parse_canvas(canvas));
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "treemap.svg", treemap_svg(layout));
    write_file(fs::path(out_dir) / "treemap.json", treemap_to_json(layout).dump(2) + "\n");
  });

  auto* flow = cmd->add_subcommand("textflow", "Term streams over versions");
  flow->add_option("--corpus", corpus_path)->required();
  flow->add_option("--terms", terms)->required()->delimiter(',');
  flow->add_option("--out", out_dir)->capture_default_str();
  flow->add_option("--canvas", canvas)->capture_default_str();
  flow->callback([] {
    const auto layout = text_flow(load_corpus(corpus_path), terms, parse_canvas(canvas));
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "textflow.svg", text_flow_svg(layout));
    write_file(fs::path(out_dir) / "textflow.json", text_flow_to_json(layout).dump(2) + "\n");
  });

  auto* report = cmd->add_subcommand("report", "HTML bundle from viz JSON outputs");
  report->add_option("--inputs", inputs_dir, "Directory holding *.json outputs")->required();
  report->add_option("--out", out_dir)->capture_default_str();
  report->callback([] {
    ReportInputs inputs;
    const fs::path in(inputs_dir);
    auto have = [&](const char* name) { return fs::exists(in / name); };
    if (have("treemap.json")) {
      const json j = load_json((in / "treemap.json").string());
      TreemapLayout t;
      t.canvas = {j.at("width").get<double>(), j.at("height").get<double>()};
      for (const auto& r : j.at("rects")) {
        t.rects.push_back({r.at("id").get<std::string>(),
                           {r.at("x").get<double>(), r.at("y").get<double>(),
                            r.at("width").get<double>(), r.at("height").get<double>()},
                           r.at("size").get<double>(),
                           r.at("color_value").get<double>()});
      }
      inputs.treemap = t;
    } else {
      inputs.missing.push_back("treemap.json");
    }
    if (have("wordcloud.json")) {
      const json j = load_json((in / "wordcloud.json").string());
      WordCloudLayout w;
      w.canvas = {j.at("width").get<double>(), j.at("height").get<double>()};
      for (const auto& e : j.at("entries")) {
        const auto b = e.at("box").get<std::vector<double>>();
        w.entries.push_back({e.at("word").get<std::string>(), e.at("frequency").get<std::uint64_t>(),
                             e.at("font_size").get<double>(), e.at("x").get<double>(),
                             e.at("y").get<double>(), {b.at(0), b.at(1), b.at(2), b.at(3)}});
      }
      inputs.word_cloud = w;
    } else {
      inputs.missing.push_back("wordcloud.json");
    }
    if (have("phrasenet.json")) {
      const json j = load_json((in / "phrasenet.json").string());
      PhraseNetGraph g;
      g.connector = j.at("connector").get<std::string>();
      for (const auto& n : j.at("nodes")) {
        g.nodes.push_back({n.at("word").get<std::string>(), n.at("frequency").get<std::uint64_t>()});
      }
      for (const auto& e : j.at("edges")) {
        g.edges.push_back({e.at("from").get<std::string>(), e.at("to").get<std::string>(),
                           e.at("weight").get<std::uint64_t>()});
      }
      inputs.phrase_net = g;
    } else {
      inputs.missing.push_back("phrasenet.json");
    }
    if (have("textflow.json")) {
      const json j = load_json((in / "textflow.json").string());
      TextFlowLayout t;
      t.versions = j.at("versions").get<std::vector<std::string>>();
      t.scale = j.at("scale").get<double>();
      for (const auto& s : j.at("streams")) {
        FlowStream fs_;
        fs_.term = s.at("term").get<std::string>();
        for (const auto& p : s.at("points")) {
          fs_.points.push_back({p.at("version").get<std::string>(), p.at("frequency").get<double>(),
                                p.at("thickness").get<double>(), p.at("top").get<double>(),
                                p.at("bottom").get<double>()});
        }
        t.streams.push_back(std::move(fs_));
      }
      inputs.text_flow = t;
    } else {
      inputs.missing.push_back("textflow.json");
    }
    if (have("clone_stats.json")) {
      json rows = json::array();
      for (const auto& r : load_json((in / "clone_stats.json").string()).at("documents")) rows.push_back(r);
      inputs.tables.push_back({"Clone statistics", rows});
    }
    const ReportResult r = render_report(inputs, out_dir);
    for (const auto& m : r.missing) spdlog::warn("missing input: {}", m);
  });
}

void add_run(CLI::App& app, int* exit_code) {
  auto* cmd = app.add_subcommand("run", "Run the full pipeline from a JSON config");
  static std::string config_path, out_dir;
  static std::optional<std::uint64_t> seed;
  cmd->add_option("--config", config_path, "Pipeline configuration (see --schema)")->required();
  cmd->add_option("--out", out_dir, "Override output_dir");
  cmd->add_option("--seed", seed, "Override the configured seed");
  cmd->callback([exit_code] {
    PipelineConfig config = load_pipeline_config(config_path, seed);
    if (!out_dir.empty()) config.output_dir = out_dir;
    const PipelineResult r = run_pipeline(config);
    for (const auto& f : r.failures) spdlog::error("{}", f);
    spdlog::info("wrote {} files to {}", r.outputs.size(), config.output_dir.string());
    *exit_code = r.exit_code;
  });
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("textproj");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");

  CLI::App app{"Text analysis toolkit for software project artifacts"};
  app.require_subcommand(0, 1);
  bool show_schema = false;
  bool verbose = false;
  app.set_version_flag("--version", std::string("textproj ") + kVersion);
  app.add_flag("--schema", show_schema, "Print the pipeline config schema and an example");
  app.add_flag("-v,--verbose", verbose, "Debug logging");

  int exit_code = 0;
  add_corpus(app);
  add_clones(app);
  add_ngram(app);
  add_topics(app);
  add_pos(app);
  add_coding(app);
  add_viz(app);
  add_run(app, &exit_code);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const IngestError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  if (verbose) spdlog::set_level(spdlog::level::debug);
  if (show_schema) {
    std::cout << json{{"schema", pipeline_schema()}, {"example", example_pipeline_config()}}.dump(2)
              << "\n";
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }
  return exit_code;
}
