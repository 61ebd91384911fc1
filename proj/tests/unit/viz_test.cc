#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "support/test_support.h"
#include "textproj/error.h"
#include "textproj/topics.h"
#include "textproj/viz.h"

using namespace textproj;
using textproj::testing::make_corpus;

namespace {

bool inside(const Box& b, const Canvas& c) {
  const double eps = 1e-9;
  return b.x >= -eps && b.y >= -eps && b.x + b.width <= c.width + eps && b.y + b.height <= c.height + eps;
}

std::vector<TreemapItem> specification_items() {
  std::ifstream in(textproj::testing::fixture_dir() / "treemap" / "specifications.json");
  const auto j = nlohmann::json::parse(in);
  std::vector<TreemapItem> items;
  for (const auto& row : j) items.push_back({row.at("id"), row.at("size"), row.at("color")});
  return items;
}

void expect_exact_tiling(const TreemapLayout& layout, std::span<const TreemapItem> items, double tolerance) {
  double total_size = 0.0, total_area = 0.0;
  for (const auto& i : items) total_size += i.size;
  const double canvas_area = layout.canvas.width * layout.canvas.height;
  ASSERT_EQ(layout.rects.size(), items.size());
  for (const TreemapRect& r : layout.rects) {
    const double area = r.box.width * r.box.height;
    total_area += area;
    ASSERT_TRUE(inside(r.box, layout.canvas)) << r.id;
    ASSERT_NEAR(area / canvas_area, r.size / total_size, tolerance * r.size / total_size) << r.id;
  }
  ASSERT_NEAR(total_area, canvas_area, 1e-6 * canvas_area);
  for (std::size_t a = 0; a < layout.rects.size(); ++a) {
    for (std::size_t b = a + 1; b < layout.rects.size(); ++b) {
      ASSERT_FALSE(overlaps(layout.rects[a].box, layout.rects[b].box))
          << layout.rects[a].id << " " << layout.rects[b].id;
    }
  }
}

// Every adjacent triple counted through a full map; punctuation and ignored
// tokens become a separator that never matches.
std::map<std::tuple<std::string, std::string, std::string>, std::uint64_t> all_triples(
    std::span<const PreparedDocument> docs) {
  std::map<std::tuple<std::string, std::string, std::string>, std::uint64_t> out;
  for (const PreparedDocument& d : docs) {
    std::vector<std::string> w;
    for (std::size_t i = 0; i < d.stream.tokens.size(); ++i) {
      w.push_back(d.stream.tokens[i].is_word && !d.skip[i] ? d.stream.tokens[i].normalized : "\x01");
    }
    for (std::size_t i = 2; i < w.size(); ++i) ++out[{w[i - 2], w[i - 1], w[i]}];
  }
  return out;
}

}  // namespace

TEST(Canvas, Parsing) {
  const Canvas c = parse_canvas("640x480");
  EXPECT_EQ(c.width, 640.0);
  EXPECT_EQ(c.height, 480.0);
  EXPECT_THROW(parse_canvas("640"), ConfigError);
  EXPECT_THROW(parse_canvas("0x10"), ConfigError);
  EXPECT_THROW(parse_canvas("axb"), ConfigError);
}

TEST(Boxes, TouchingIsNotOverlapping) {
  EXPECT_FALSE(overlaps({0, 0, 10, 10}, {10, 0, 5, 5}));
  EXPECT_TRUE(overlaps({0, 0, 10, 10}, {9, 9, 5, 5}));
  EXPECT_FALSE(overlaps({0, 0, 10, 10}, {0, 10, 10, 10}));
}

TEST(WordFrequencies, CountsWordsAndSkipsNumbers) {
  const auto docs = prepare_corpus(make_corpus({{"a", "Server server 200 client."}, {"b", "client server"}}), {}, {});
  const auto f = word_frequencies(docs);
  EXPECT_EQ(f, (std::vector<WordCount>{{"server", 3}, {"client", 2}}));
}

TEST(WordCloudProperty, BoxesDisjointAndInsideCanvas) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> count(1, 60), freq(1, 500), len(2, 12);
  for (int round = 0; round < 1000; ++round) {
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
    ASSERT_FALSE(layout.entries.empty());
    ASSERT_LE(layout.entries.size(), config.max_words);
    for (std::size_t a = 0; a < layout.entries.size(); ++a) {
      ASSERT_TRUE(inside(layout.entries[a].box, layout.canvas));
      for (std::size_t b = a + 1; b < layout.entries.size(); ++b) {
        ASSERT_FALSE(overlaps(layout.entries[a].box, layout.entries[b].box)) << "round " << round;
      }
    }
  }
}

TEST(WordCloud, FontSizesFollowFrequencyAndSeedIsDeterministic) {
  const std::vector<WordCount> words = {{"server", 30}, {"client", 20}, {"request", 20}, {"mail", 5}};
  WordCloudConfig config;
  config.seed = 7;
  const auto a = word_cloud(words, config);
  const auto b = word_cloud(words, config);
  EXPECT_EQ(word_cloud_svg(a), word_cloud_svg(b));
  ASSERT_EQ(a.entries.size(), 4u);
  EXPECT_DOUBLE_EQ(a.entries[0].font_size, 64.0);
  EXPECT_DOUBLE_EQ(a.entries[1].font_size, a.entries[2].font_size);
  EXPECT_DOUBLE_EQ(a.entries[3].font_size, 12.0);
  EXPECT_DOUBLE_EQ(a.entries[0].box.width, 0.6 * 64.0 * 6);
  EXPECT_DOUBLE_EQ(a.entries[0].box.height, 1.2 * 64.0);
  config.stopwords = {"server"};
  EXPECT_EQ(word_cloud(words, config).entries[0].word, "client");
  WordCloudConfig tiny;
  tiny.canvas = {20, 20};
  EXPECT_THROW(word_cloud(words, tiny), LayoutError);
}

TEST(WordCloud, RfcCloudShowsProtocolVocabulary) {
  const auto docs = prepare_corpus(textproj::testing::rfc_corpus(), {}, textproj::testing::rfc_ignore_patterns());
  WordCloudConfig config;
  config.stopwords = default_stopwords();
  const auto layout = word_cloud(word_frequencies(docs), config);
  std::set<std::string> top;
  for (std::size_t i = 0; i < 10 && i < layout.entries.size(); ++i) top.insert(layout.entries[i].word);
  EXPECT_TRUE(top.count("request"));
  EXPECT_TRUE(top.count("response"));
  EXPECT_TRUE(top.count("server"));
}

TEST(PhraseNet, HandCountedTriples) {
  const auto docs = prepare_corpus(
      make_corpus({{"a", "Data is good. Data is good, data is bad. The data is cached"}}), {true, true}, {});
  const std::vector<std::string> stop = {"the"};
  const auto g = phrase_net(docs, "IS", 1, stop);
  EXPECT_EQ(g.connector, "is");
  ASSERT_EQ(g.edges.size(), 3u);
  EXPECT_EQ(g.edges[0].from, "data");
  EXPECT_EQ(g.edges[0].to, "good");
  EXPECT_EQ(g.edges[0].weight, 2u);
  EXPECT_EQ(g.nodes[0].word, "data");
  EXPECT_EQ(g.nodes[0].frequency, 4u);
  EXPECT_EQ(phrase_net(docs, "is", 2, stop).edges.size(), 1u);
  EXPECT_THROW(phrase_net(docs, "", 1, stop), ConfigError);
}

TEST(PhraseNet, WeightsEqualBruteForceTripleCounts) {
  const auto docs = prepare_corpus(textproj::testing::rfc_corpus(), {true, true},
                                   textproj::testing::rfc_ignore_patterns());
  const auto& stop = default_stopwords();
  const std::set<std::string> stopset(stop.begin(), stop.end());
  const auto triples = all_triples(docs);
  for (const char* connector : {"is", "of", "and", "to"}) {
    std::map<std::pair<std::string, std::string>, std::uint64_t> expected;
    for (const auto& [t, n] : triples) {
      const auto& [a, c, b] = t;
      if (c != connector || a == "\x01" || b == "\x01" || stopset.count(a) || stopset.count(b)) continue;
      expected[{a, b}] += n;
    }
    const auto g = phrase_net(docs, connector, 1, stop);
    std::map<std::pair<std::string, std::string>, std::uint64_t> actual;
    for (const auto& e : g.edges) actual[{e.from, e.to}] = e.weight;
    ASSERT_EQ(actual, expected) << connector;
  }
  const auto is_net = phrase_net(docs, "is", 1, stop);
  const bool cacheable = std::any_of(is_net.edges.begin(), is_net.edges.end(), [](const PhraseNetEdge& e) {
    return e.from == "response" && e.to == "cacheable";
  });
  EXPECT_TRUE(cacheable);
}

TEST(Treemap, SpecificationFixtureTilesExactly) {
  const auto items = specification_items();
  ASSERT_EQ(items.size(), 28u);
  const TreemapLayout layout = treemap(items, {800, 600});
  expect_exact_tiling(layout, items, 0.01);
  EXPECT_EQ(layout.rects.front().id, "AB");
  const std::string svg = treemap_svg(layout);
  EXPECT_NE(svg.find(ramp_color(0.716)), std::string::npos);
}

TEST(TreemapProperty, RandomItemsTileExactly) {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> count(1, 40);
  std::uniform_real_distribution<double> size(0.5, 100.0), unit(0.0, 1.0);
  for (int round = 0; round < 200; ++round) {
    std::vector<TreemapItem> items;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) items.push_back({"i" + std::to_string(i), size(rng), unit(rng)});
    expect_exact_tiling(treemap(items, {300 + 500 * unit(rng), 200 + 500 * unit(rng)}), items, 0.01);
  }
}

TEST(Treemap, InvalidInputs) {
  EXPECT_THROW(treemap({}, {}), LayoutError);
  const std::vector<TreemapItem> zero = {{"a", 0.0, 0.5}};
  EXPECT_THROW(treemap(zero, {}), ConfigError);
  const std::vector<TreemapItem> color = {{"a", 1.0, 1.5}};
  EXPECT_THROW(treemap(color, {}), ConfigError);
  EXPECT_EQ(ramp_color(0.0), "#28aa3c");
  EXPECT_EQ(ramp_color(1.0), "#d72828");
}

TEST(TextFlow, StreamsStackSymmetricallyOnOneScale) {
  const TextFlowLayout layout = text_flow(textproj::testing::rfc_corpus(),
                                          std::vector<std::string>{"request", "response", "mailbox"});
  ASSERT_EQ(layout.versions.size(), 10u);  // rfc2616 and rfc2617 share 1999-06
  EXPECT_TRUE(std::is_sorted(layout.versions.begin(), layout.versions.end()));
  ASSERT_EQ(layout.streams.size(), 3u);
  const double center = layout.canvas.height / 2;
  for (std::size_t v = 0; v < layout.versions.size(); ++v) {
    double top = layout.streams.front().points[v].top;
    for (std::size_t s = 0; s < layout.streams.size(); ++s) {
      const FlowPoint& p = layout.streams[s].points[v];
      ASSERT_NEAR(p.thickness, layout.scale * p.frequency, 1e-9);
      ASSERT_NEAR(p.top, top, 1e-9);
      ASSERT_NEAR(p.bottom - p.top, p.thickness, 1e-9);
      top = p.bottom;
    }
    ASSERT_NEAR(layout.streams.front().points[v].top + top, 2 * center, 1e-9);
  }
  EXPECT_THROW(text_flow(textproj::testing::rfc_corpus(), std::vector<std::string>{}), ConfigError);
}

TEST(TextFlow, SingleVersionIsRejected) {
  Document d;
  d.id = "a";
  d.version_label = "1.0";
  d.text = "request";
  const Corpus c({d});
  EXPECT_THROW(text_flow(c, std::vector<std::string>{"request"}), ConfigError);
}

TEST(Report, WritesIndexAndSvgsAndRecordsMissing) {
  const auto dir = std::filesystem::temp_directory_path() / "textproj_viz_report";
  std::filesystem::remove_all(dir);
  ReportInputs inputs;
  inputs.treemap = treemap(specification_items(), {});
  inputs.tables.push_back({"Clone <stats>", nlohmann::json::array({{{"id", "A"}, {"coverage", 0.35}}})});
  inputs.missing.push_back("phrase net");
  const ReportResult r = render_report(inputs, dir);
  EXPECT_NE(std::find(r.files.begin(), r.files.end(), "index.html"), r.files.end());
  EXPECT_NE(std::find(r.files.begin(), r.files.end(), "treemap.svg"), r.files.end());
  for (const auto& f : r.files) EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  std::ifstream in(dir / "index.html");
  const std::string html{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  EXPECT_NE(html.find("Clone &lt;stats&gt;"), std::string::npos);
  EXPECT_NE(html.find("phrase net"), std::string::npos);
  EXPECT_EQ(html_escape("a<b & \"c\""), "a&lt;b &amp; &quot;c&quot;");
  std::filesystem::remove_all(dir);
}
