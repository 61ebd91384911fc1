// Acceptance checks. Prints one line per criterion and exits non-zero when
// any criterion fails. With --rfc-corpus the coverage check runs on the full
// RFC texts in $TEXTPROJ_RFC_DIR instead (exit 77 when it is not set).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "support/lda_fixture.h"
#include "support/test_support.h"
#include "textproj/clones.h"
#include "textproj/coding.h"
#include "textproj/ngram.h"
#include "textproj/pipeline.h"
#include "textproj/pos.h"
#include "textproj/topics.h"
#include "textproj/viz.h"

#include <spdlog/spdlog.h>

namespace fs = std::filesystem;
using namespace textproj;
namespace t = textproj::testing;

namespace {

// Tolerances and limits.
constexpr int kOracleCorpora = 100;
constexpr std::size_t kOracleMaxTokens = 300;
constexpr int kOracleAlphabet = 5;
constexpr double kOracleSeconds = 30.0;
constexpr double kMediaTypeSeconds = 10.0;
constexpr double kCoverageLow = 0.10;
constexpr double kCoverageHigh = 0.45;
constexpr double kCoverageSeconds = 60.0;
constexpr int kLawCorpora = 50;
constexpr double kNaturalnessMargin = 0.5;  // bits per token
constexpr double kNaturalnessSeconds = 30.0;
constexpr std::uint64_t kShuffleSeed = 7;
constexpr double kLanguageAccuracy = 0.95;
constexpr std::size_t kTopicOverlap = 3;
constexpr double kLdaSeconds = 60.0;
constexpr double kKappaTolerance = 1e-9;
constexpr int kCloudSets = 1000;
constexpr double kTreemapAreaTolerance = 0.01;

struct Result {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, double limit_seconds, const std::function<Result()>& check) {
  const auto start = std::chrono::steady_clock::now();
  Result r;
  try {
    r = check();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream timing;
  timing.precision(2);
  timing << std::fixed << seconds << " s";
  if (limit_seconds > 0) {
    timing << " of " << limit_seconds << " s";
    if (seconds >= limit_seconds) {
      r.pass = false;
      r.detail += "; over time limit";
    }
  }
  if (!r.pass) ++failures;
  std::printf("criterion %2d %s  %s: %s (%s)\n", id, r.pass ? "PASS" : "FAIL", name.c_str(), r.detail.c_str(),
              timing.str().c_str());
  std::fflush(stdout);
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream o;
  o.precision(digits);
  o << std::fixed << v;
  return o.str();
}

std::vector<PreparedDocument> clone_prepare(const Corpus& c, std::span<const std::string> ignore = {}) {
  return prepare_corpus(c, clone_tokenizer_config(), ignore);
}

Corpus random_corpus(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> ndocs(1, 3);
  const int docs = ndocs(rng);
  std::vector<std::pair<std::string, std::string>> texts;
  for (int d = 0; d < docs; ++d) {
    texts.emplace_back("d" + std::to_string(d),
                       t::random_symbol_text(rng, kOracleMaxTokens / static_cast<std::size_t>(docs), kOracleAlphabet));
  }
  return t::make_corpus(texts);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Group covering the lines of both media-type registration blocks.
Result media_type_group(const Document& rfc2616, std::span<const std::string> ignore) {
  const Corpus c({rfc2616});
  const auto docs = clone_prepare(c, ignore);
  CloneConfig config;
  config.min_length = 20;
  config.max_gap = 2;
  const auto groups = detect_gapped_clones(docs, config);
  if (clone_groups_to_json(groups) != clone_groups_to_json(detect_gapped_clones(docs, config))) {
    return {false, "non-deterministic groups"};
  }
  const std::string& text = rfc2616.text;
  auto line_of = [&](const std::string& needle) -> std::uint32_t {
    const auto pos = text.find(needle);
    if (pos == std::string::npos) return 0;
    return static_cast<std::uint32_t>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n') + 1);
  };
  const std::uint32_t message = line_of("Media Type name:         message");
  const std::uint32_t application = line_of("Media Type name:         application");
  if (message == 0 || application == 0) return {false, "registration blocks not found in text"};
  for (const CloneGroup& g : groups) {
    bool a = false, b = false;
    for (const CloneInstance& i : g.instances) {
      a |= i.first_line <= message && message <= i.last_line;
      b |= i.first_line <= application && application <= i.last_line;
    }
    if (a && b) {
      bool changed = false;
      for (const InstanceDiff& d : diff_instances(g, c, docs)) {
        for (const LineEdit& e : d.edits) {
          changed |= e.kind == LineEditKind::kChanged && e.reference_text.find("message") != std::string::npos &&
                     e.instance_text.find("application") != std::string::npos;
        }
      }
      if (!changed) return {false, "group found but no message/application line edit"};
      return {true, "group " + std::to_string(g.id) + " spans lines " + std::to_string(g.instances[0].first_line) +
                        "-" + std::to_string(g.instances[0].last_line) + " and " +
                        std::to_string(g.instances[1].first_line) + "-" +
                        std::to_string(g.instances[1].last_line) + ", " + std::to_string(g.gap_edits) +
                        " line edits"};
    }
  }
  return {false, "no group covers both blocks (" + std::to_string(groups.size()) + " groups)"};
}

Result corpus_coverage(const Corpus& corpus, std::span<const std::string> ignore) {
  const auto docs = clone_prepare(corpus, ignore);
  const double cov = clone_coverage(docs, detect_gapped_clones(docs, {}));
  return {cov >= kCoverageLow && cov <= kCoverageHigh,
          "coverage " + fmt(cov) + " over " + std::to_string(corpus.size()) + " documents, min_length 20, max_gap 2, "
          "bundled ignore patterns; accepted range [" + fmt(kCoverageLow, 2) + ", " + fmt(kCoverageHigh, 2) + "]"};
}

int rfc_corpus_mode() {
  const char* dir = std::getenv("TEXTPROJ_RFC_DIR");
  if (!dir || !*dir) {
    std::printf("TEXTPROJ_RFC_DIR is not set; skipping the full-text RFC checks\n");
    return 77;
  }
  std::vector<Document> docs;
  for (Document& d : ingest_path(dir).documents) {
    if (d.id.starts_with("rfc")) docs.push_back(std::move(d));
  }
  const Corpus corpus(std::move(docs));
  const auto ignore = t::rfc_ignore_patterns();
  std::printf("full-text RFC corpus: %zu documents from %s\n", corpus.size(), dir);
  if (corpus.find("rfc2616.txt")) {
    report(2, "media-type clone in full RFC 2616", kMediaTypeSeconds,
           [&] { return media_type_group(corpus.at("rfc2616.txt"), ignore); });
  }
  report(3, "RFC corpus coverage (full texts)", kCoverageSeconds, [&] { return corpus_coverage(corpus, ignore); });
  return failures == 0 ? 0 : 1;
}

}  // namespace

namespace {

std::map<std::string, std::string> tree_contents(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), root).generic_string()] = slurp(e.path());
  }
  return out;
}

Result coverage_laws() {
  // Every fixture document twice, no ignore patterns.
  const Corpus rfc = t::rfc_corpus();
  std::vector<std::pair<std::string, std::string>> doubled;
  for (const Document& d : rfc.documents()) {
    doubled.emplace_back("a/" + d.id, d.text);
    doubled.emplace_back("b/" + d.id, d.text);
  }
  const auto dup = clone_prepare(t::make_corpus(doubled));
  const double dup_cov = clone_coverage(dup, detect_gapped_clones(dup, {}));

  std::string distinct;
  for (int i = 0; i < 400; ++i) distinct += "w" + std::to_string(i) + (i % 9 == 8 ? "\n" : " ");
  const auto clean = clone_prepare(t::make_corpus({{"x", distinct}, {"y", "another text with no shared words\n"}}));
  const double clean_cov = clone_coverage(clean, detect_gapped_clones(clean, {}));

  std::mt19937_64 rng(13);
  int monotone = 0;
  for (int round = 0; round < kLawCorpora; ++round) {
    const auto docs = clone_prepare(random_corpus(rng));
    bool ok = true;
    double previous = -1.0;
    for (std::size_t min_length = 9; min_length >= 3; --min_length) {
      CloneConfig c;
      c.min_length = min_length;
      const double cov = clone_coverage(docs, detect_gapped_clones(docs, c));
      ok &= cov >= previous && cov <= 1.0;
      previous = cov;
    }
    previous = -1.0;
    for (std::size_t gap = 0; gap <= 4; ++gap) {
      CloneConfig c;
      c.min_length = 6;
      c.max_gap = gap;
      const double cov = clone_coverage(docs, detect_gapped_clones(docs, c));
      ok &= cov >= previous && cov <= 1.0;
      previous = cov;
    }
    monotone += ok;
  }
  return {dup_cov == 1.0 && clean_cov == 0.0 && monotone == kLawCorpora,
          "duplicated corpus " + fmt(dup_cov) + ", clone-free corpus " + fmt(clean_cov) + ", monotone on " +
              std::to_string(monotone) + "/" + std::to_string(kLawCorpora) + " random corpora"};
}

// Leave-one-out: a trigram add-one model on ten documents scores the eleventh
// against a seeded shuffle of the same tokens.
Result naturalness(const Corpus& rfc, std::span<const std::string> ignore) {
  const auto docs = prepare_corpus(rfc, {}, ignore);
  std::vector<std::vector<std::string>> words;
  for (const auto& d : docs) words.push_back(kept_words(d));
  std::mt19937_64 rng(kShuffleSeed);
  double weighted = 0.0, smallest = std::numeric_limits<double>::infinity();
  std::size_t tokens = 0;
  int positive = 0;
  std::string weakest;
  for (std::size_t held = 0; held < words.size(); ++held) {
    std::vector<std::vector<std::string>> train;
    for (std::size_t d = 0; d < words.size(); ++d) {
      if (d != held) train.push_back(words[d]);
    }
    const NGramModel m = train_word_model(train, 3, Smoothing::kAddOne);
    auto shuffled = words[held];
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const double margin =
        cross_entropy(m, shuffled).bits_per_token - cross_entropy(m, words[held]).bits_per_token;
    positive += margin > 0.0;
    if (margin < smallest) {
      smallest = margin;
      weakest = docs[held].stream.document_id;
    }
    weighted += margin * static_cast<double>(words[held].size());
    tokens += words[held].size();
  }
  const double pooled = weighted / static_cast<double>(tokens);
  return {pooled >= kNaturalnessMargin && positive == static_cast<int>(words.size()),
          "pooled margin " + fmt(pooled) + " bits/token (required " + fmt(kNaturalnessMargin, 1) + "), " +
              std::to_string(positive) + "/" + std::to_string(words.size()) +
              " held-out documents positive, smallest " + fmt(smallest) + " on " + weakest};
}

Result language(const Corpus& rfc) {
  const auto dir = t::fixture_dir() / "lang";
  const std::vector<CategoryProfile> profiles = {
      train_char_profile(slurp(dir / "train" / "english.txt"), "english"),
      train_char_profile(slurp(dir / "train" / "german.txt"), "german")};
  int correct = 0, total = 0;
  for (const auto& entry : fs::directory_iterator(dir / "heldout")) {
    const std::string expected = entry.path().filename().string().starts_with("de_") ? "german" : "english";
    correct += categorize(profiles, slurp(entry.path())).ranking.front().category == expected;
    ++total;
  }
  int english = 0;
  for (const Document& d : rfc.documents()) {
    english += categorize(profiles, d.text).ranking.front().category == "english";
  }
  const double accuracy = total ? static_cast<double>(correct) / total : 0.0;
  return {total == 20 && accuracy >= kLanguageAccuracy && english == static_cast<int>(rfc.size()),
          std::to_string(correct) + "/" + std::to_string(total) + " excerpts correct, " + std::to_string(english) +
              "/" + std::to_string(rfc.size()) + " RFC documents classified english"};
}

std::size_t overlap(const std::vector<std::string>& truth, const std::vector<WeightedWord>& fitted) {
  std::size_t n = 0;
  for (const auto& w : fitted) n += static_cast<std::size_t>(std::count(truth.begin(), truth.end(), w.word));
  return n;
}

Result lda_recovery() {
  const t::Synthetic s = t::synthetic_corpus(11);
  LdaConfig config;
  config.topics = 3;
  config.alpha = 0.1;
  config.iterations = 300;
  config.seed = 5;
  std::size_t checks = 0;
  std::string count_error;
  const TopicModel m = fit_lda(s.documents, config, [&](std::size_t sweep, const TopicModel& state) {
    if (sweep % 100 != 0) return;
    ++checks;
    std::string e = check_counts(state);
    if (e.empty()) e = t::oracle_counts(state);
    if (!e.empty() && count_error.empty()) count_error = "sweep " + std::to_string(sweep) + ": " + e;
  });
  std::vector<int> perm = {0, 1, 2};
  std::size_t best = 0;
  do {
    std::size_t worst = 5;
    for (int k = 0; k < 3; ++k) {
      worst = std::min(worst, overlap(s.true_top5[static_cast<std::size_t>(k)],
                                      top_words(m, static_cast<std::size_t>(perm[static_cast<std::size_t>(k)]), 5)));
    }
    best = std::max(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best >= kTopicOverlap && checks == 3 && count_error.empty(),
          "worst matched top-5 overlap " + std::to_string(best) + " (required " + std::to_string(kTopicOverlap) +
              "), count checks at " + std::to_string(checks) + " sweeps" +
              (count_error.empty() ? " all consistent" : ", " + count_error)};
}

// Soft check on the RFC fixture; one re-seed is allowed.
Result http_topic(const Corpus& rfc) {
  std::string detail;
  for (std::uint64_t seed : {42u, 43u}) {
    LdaConfig config;
    config.topics = 4;
    config.iterations = 300;
    config.seed = seed;
    const TopicModel m = fit_lda(rfc, config);
    const auto mix = doc_topics(m, "rfc2616.txt");
    const auto dominant = static_cast<std::size_t>(std::max_element(mix.begin(), mix.end()) - mix.begin());
    int hits = 0;
    std::string top;
    for (const auto& w : top_words(m, dominant, 10)) {
      hits += w.word == "request" || w.word == "response" || w.word == "header";
      top += (top.empty() ? "" : " ") + w.word;
    }
    detail += "seed " + std::to_string(seed) + ": " + std::to_string(hits) + " of request/response/header in [" +
              top + "]";
    if (hits >= 2) return {true, detail};
    detail += "; ";
  }
  return {false, detail};
}

constexpr const char* kHttpSentence =
    "Most HTTP communication is initiated by a user agent and consists of a request to be "
    "applied to a resource on some origin server.";

Result er_extraction() {
  const BaselineTagger tagger;
  const ERGraph g = extract_er(tag_text(kHttpSentence, tagger));
  const std::vector<std::string> entities = {"HTTP communication", "user agent", "request", "resource",
                                             "origin server"};
  const std::vector<std::tuple<std::string, std::string, std::string>> expected = {
      {"HTTP communication", "is initiated by", "user agent"},
      {"user agent", "consists of", "request"},
      {"request", "to be applied to", "resource"},
      {"resource", "on", "origin server"}};
  std::vector<std::tuple<std::string, std::string, std::string>> actual;
  for (const auto& r : g.relationships) actual.emplace_back(r.from, r.label, r.to);
  std::string shown;
  for (const auto& [from, label, to] : actual) shown += (shown.empty() ? "" : ", ") + from + " -" + label + "-> " + to;
  return {g.entities == entities && actual == expected,
          std::to_string(g.entities.size()) + " entities, relationships: " + shown};
}

Result passive_voice() {
  const BaselineTagger tagger;
  const auto comments = detect_passive(
      tag_text("Comments can be included in some HTTP header fields by surrounding the comment text with "
               "parentheses.",
               tagger));
  const auto initiated = detect_passive(tag_text(kHttpSentence, tagger));
  const auto active = detect_passive(tag_text("The server stores the message.", tagger));
  const bool ok = comments.size() == 1 && comments[0].evidence == "be included" && !initiated.empty() &&
                  initiated[0].evidence == "is initiated" && active.empty();
  return {ok, "\"" + (comments.empty() ? std::string("-") : comments[0].evidence) + "\" and \"" +
                  (initiated.empty() ? std::string("-") : initiated[0].evidence) + "\" flagged, " +
                  std::to_string(active.size()) + " findings in the active sentence"};
}

Result coding_analytics() {
  const Codebook book = load_codebook(t::fixture_dir() / "coding" / "problem_causes.json");
  const AxialGraph full = axial_graph(book);
  const AxialGraph g = condense_graph(full, 7);
  bool kept_22 = false, all_frequent = true;
  for (const AxialNode& n : g.nodes) {
    kept_22 |= n.count == 22;
    all_frequent &= n.count >= 7;
  }
  std::size_t expected_nodes = 0;
  for (const AxialNode& n : full.nodes) expected_nodes += n.count >= 7;
  const std::vector<std::string> a = {"y", "y", "y", "y", "y", "n", "n", "n", "n", "n"};
  const std::vector<std::string> b = {"y", "y", "y", "y", "n", "y", "n", "n", "n", "n"};
  const double same = kappa_from_labels(a, a).kappa;
  const double hand = kappa_from_labels(a, b).kappa;
  const bool ok = kept_22 && all_frequent && g.nodes.size() == expected_nodes &&
                  std::abs(same - 1.0) <= kKappaTolerance && std::abs(hand - 0.6) <= kKappaTolerance;
  std::ostringstream kappas;
  kappas.precision(12);
  kappas << "kappa identical " << same << ", hand fixture " << hand;
  return {ok, std::to_string(g.nodes.size()) + " of " + std::to_string(full.nodes.size()) +
                  " nodes kept at threshold 7 (count-22 node " + (kept_22 ? "kept" : "missing") + "), " +
                  kappas.str()};
}

bool inside(const Box& b, const Canvas& c) {
  const double eps = 1e-9;
  return b.x >= -eps && b.y >= -eps && b.x + b.width <= c.width + eps && b.y + b.height <= c.height + eps;
}

std::string cloud_check() {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> count(1, 60), freq(1, 500), len(2, 12);
  for (int round = 0; round < kCloudSets; ++round) {
    std::vector<WordCount> words;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      std::string w = "w" + std::to_string(i);
      w.resize(static_cast<std::size_t>(len(rng)), 'x');
      words.push_back({w, static_cast<std::uint64_t>(freq(rng))});
    }
    std::sort(words.begin(), words.end(), [](const WordCount& a, const WordCount& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    WordCloudConfig config;
    config.seed = static_cast<std::uint64_t>(round);
    const WordCloudLayout layout = word_cloud(words, config);
    for (std::size_t a = 0; a < layout.entries.size(); ++a) {
      if (!inside(layout.entries[a].box, layout.canvas)) return "set " + std::to_string(round) + " leaves canvas";
      for (std::size_t b = a + 1; b < layout.entries.size(); ++b) {
        if (overlaps(layout.entries[a].box, layout.entries[b].box)) return "set " + std::to_string(round) + " overlaps";
      }
    }
  }
  return "";
}

std::string treemap_check(double& worst_error) {
  std::ifstream in(t::fixture_dir() / "treemap" / "specifications.json");
  const auto j = nlohmann::json::parse(in);
  std::vector<TreemapItem> items;
  for (const auto& row : j) items.push_back({row.at("id"), row.at("size"), row.at("color")});
  if (items.size() != 28) return "fixture has " + std::to_string(items.size()) + " items";
  const TreemapLayout layout = treemap(items, {800, 600});
  double total_size = 0.0, total_area = 0.0;
  for (const auto& i : items) total_size += i.size;
  const double canvas_area = layout.canvas.width * layout.canvas.height;
  worst_error = 0.0;
  for (const TreemapRect& r : layout.rects) {
    const double area = r.box.width * r.box.height;
    total_area += area;
    if (!inside(r.box, layout.canvas)) return r.id + " leaves canvas";
    const double share = r.size / total_size;
    worst_error = std::max(worst_error, std::abs(area / canvas_area - share) / share);
  }
  if (worst_error > kTreemapAreaTolerance) return "area off by " + fmt(100 * worst_error, 2) + "%";
  if (std::abs(total_area - canvas_area) > 1e-6 * canvas_area) return "areas do not fill the canvas";
  for (std::size_t a = 0; a < layout.rects.size(); ++a) {
    for (std::size_t b = a + 1; b < layout.rects.size(); ++b) {
      if (overlaps(layout.rects[a].box, layout.rects[b].box)) return layout.rects[a].id + " overlaps " + layout.rects[b].id;
    }
  }
  return "";
}

std::string phrase_net_check(bool& cacheable) {
  const auto docs = prepare_corpus(t::rfc_corpus(), {true, true}, t::rfc_ignore_patterns());
  const auto& stop = default_stopwords();
  const std::set<std::string> stopset(stop.begin(), stop.end());
  std::map<std::tuple<std::string, std::string, std::string>, std::uint64_t> triples;
  for (const PreparedDocument& d : docs) {
    std::vector<std::string> w;
    for (std::size_t i = 0; i < d.stream.tokens.size(); ++i) {
      w.push_back(d.stream.tokens[i].is_word && !d.skip[i] ? d.stream.tokens[i].normalized : "\x01");
    }
    for (std::size_t i = 2; i < w.size(); ++i) ++triples[{w[i - 2], w[i - 1], w[i]}];
  }
  for (const char* connector : {"is", "of", "and", "to"}) {
    std::map<std::pair<std::string, std::string>, std::uint64_t> expected, actual;
    for (const auto& [triple, n] : triples) {
      const auto& [a, c, b] = triple;
      if (c != connector || a == "\x01" || b == "\x01" || stopset.count(a) || stopset.count(b)) continue;
      expected[{a, b}] += n;
    }
    const auto g = phrase_net(docs, connector, 1, stop);
    for (const auto& e : g.edges) actual[{e.from, e.to}] = e.weight;
    if (actual != expected) return std::string("weights differ for connector \"") + connector + "\"";
    if (std::string(connector) == "is") {
      cacheable = std::any_of(g.edges.begin(), g.edges.end(), [](const PhraseNetEdge& e) {
        return e.from == "response" && e.to == "cacheable";
      });
    }
  }
  return "";
}

Result visualization() {
  const std::string cloud = cloud_check();
  double worst = 0.0;
  const std::string tiles = treemap_check(worst);
  bool cacheable = false;
  const std::string net = phrase_net_check(cacheable);
  const bool ok = cloud.empty() && tiles.empty() && net.empty() && cacheable;
  return {ok, "word cloud " + (cloud.empty() ? std::to_string(kCloudSets) + " sets disjoint" : cloud) +
                  ", treemap " + (tiles.empty() ? "tiles exactly, worst area error " + fmt(100 * worst, 4) + "%" : tiles) +
                  ", phrase net " + (net.empty() ? "matches triple counts" : net) +
                  (cacheable ? ", response -is-> cacheable present" : ", response -is-> cacheable missing")};
}

Result pipeline_determinism() {
  std::ifstream in(t::fixture_dir() / "pipeline.json");
  PipelineConfig c = parse_pipeline_config(nlohmann::json::parse(in), t::fixture_dir());
  const fs::path a = fs::temp_directory_path() / "textproj_acceptance_a";
  const fs::path b = fs::temp_directory_path() / "textproj_acceptance_b";
  fs::remove_all(a);
  fs::remove_all(b);
  c.output_dir = a;
  const PipelineResult first = run_pipeline(c);
  c.output_dir = b;
  const PipelineResult second = run_pipeline(c);
  const auto ta = tree_contents(a);
  const auto tb = tree_contents(b);
  fs::remove_all(a);
  fs::remove_all(b);
  const bool ok = first.exit_code == 0 && second.exit_code == 0 && !ta.empty() && ta == tb;
  std::size_t bytes = 0;
  for (const auto& [name, content] : ta) bytes += content.size();
  return {ok, std::to_string(ta.size()) + " files (" + std::to_string(bytes) + " bytes) per run, trees " +
                  (ta == tb ? "identical" : "differ") + ", exit codes " + std::to_string(first.exit_code) + "/" +
                  std::to_string(second.exit_code)};
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_level(spdlog::level::off);
  if (argc > 1 && std::string(argv[1]) == "--rfc-corpus") return rfc_corpus_mode();

  const Corpus rfc = t::rfc_corpus();
  const auto ignore = t::rfc_ignore_patterns();

  report(1, "clone oracle equivalence", kOracleSeconds, [] {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> len(3, 7);
    int equal = 0;
    for (int round = 0; round < kOracleCorpora; ++round) {
      const auto docs = clone_prepare(random_corpus(rng));
      const std::size_t min_length = len(rng);
      equal += t::group_keys(detect_exact_clones(docs, min_length)) == t::brute_force_maximal_repeats(docs, min_length);
    }
    return Result{equal == kOracleCorpora, std::to_string(equal) + "/" + std::to_string(kOracleCorpora) +
                                               " random corpora match the brute-force maximal repeats"};
  });
  report(2, "media-type clone in RFC 2616", kMediaTypeSeconds, [&] { return media_type_group(rfc.at("rfc2616.txt"), ignore); });
  report(3, "RFC corpus coverage (excerpt fixture)", kCoverageSeconds, [&] { return corpus_coverage(rfc, ignore); });
  report(4, "coverage laws", 0, coverage_laws);
  report(5, "naturalness", kNaturalnessSeconds, [&] { return naturalness(rfc, ignore); });
  report(6, "language categorization", 0, [&] { return language(rfc); });
  report(7, "LDA recovery", kLdaSeconds, lda_recovery);
  report(7, "LDA HTTP topic (soft, one re-seed)", 0, [&] { return http_topic(rfc); });
  report(8, "ER extraction", 0, er_extraction);
  report(9, "passive voice", 0, passive_voice);
  report(10, "coding analytics", 0, coding_analytics);
  report(11, "visualization properties", 0, visualization);
  report(12, "pipeline determinism", 0, pipeline_determinism);

  std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
