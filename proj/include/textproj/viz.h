#ifndef TEXTPROJ_VIZ_H_
#define TEXTPROJ_VIZ_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "textproj/corpus.h"

namespace textproj {

struct Canvas {
  double width = 800.0;
  double height = 600.0;
};

// "WxH", e.g. "800x600". Throws ConfigError otherwise.
Canvas parse_canvas(std::string_view text);

struct Box {
  double x = 0.0;  // top-left corner
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;
};

// Positive-area intersection; touching edges do not count.
bool overlaps(const Box& a, const Box& b);

using WordCount = std::pair<std::string, std::uint64_t>;

// Normalized word frequencies over the kept tokens, pure numbers excluded;
// frequency descending, ties by word.
std::vector<WordCount> word_frequencies(std::span<const PreparedDocument> docs);

// ---------------------------------------------------------------------------
// Word cloud
// ---------------------------------------------------------------------------

struct WordCloudConfig {
  std::size_t max_words = 50;
  Canvas canvas;
  std::uint64_t seed = 0;
  double min_font = 12.0;
  double max_font = 64.0;
  std::vector<std::string> stopwords;
};

struct WordCloudEntry {
  std::string word;
  std::uint64_t frequency = 0;
  double font_size = 0.0;
  double x = 0.0;  // box center
  double y = 0.0;
  Box box;
};

struct WordCloudLayout {
  Canvas canvas;
  std::vector<WordCloudEntry> entries;  // placement order
};

// The most frequent non-stop words, placed greedily on an Archimedean spiral
// from the canvas center with a seeded start angle. Font size interpolates
// linearly between max_font and min_font over the dense frequency rank; a
// word box is 0.6 * font * length wide and 1.2 * font high. Words that fit
// nowhere are dropped, except the first, which raises LayoutError.
WordCloudLayout word_cloud(std::span<const WordCount> frequencies,
                           const WordCloudConfig& config);

std::string word_cloud_svg(const WordCloudLayout& layout);
nlohmann::json word_cloud_to_json(const WordCloudLayout& layout);

// ---------------------------------------------------------------------------
// Phrase net
// ---------------------------------------------------------------------------

struct PhraseNetNode {
  std::string word;
  std::uint64_t frequency = 0;
};

struct PhraseNetEdge {
  std::string from;
  std::string to;
  std::uint64_t weight = 0;
};

struct PhraseNetGraph {
  std::string connector;
  std::vector<PhraseNetNode> nodes;  // frequency descending, then word
  std::vector<PhraseNetEdge> edges;  // weight descending, then endpoints
};

// Counts word triples (w1, connector, w2) of adjacent tokens; punctuation
// between words breaks a triple. Stop words are not allowed as w1 or w2.
// Throws ConfigError for an empty connector.
PhraseNetGraph phrase_net(std::span<const PreparedDocument> docs,
                          std::string_view connector, std::uint64_t min_weight,
                          std::span<const std::string> stopwords);

std::string phrase_net_svg(const PhraseNetGraph& graph, const Canvas& canvas);
nlohmann::json phrase_net_to_json(const PhraseNetGraph& graph);

// ---------------------------------------------------------------------------
// Treemap
// ---------------------------------------------------------------------------

struct TreemapItem {
  std::string id;
  double size = 0.0;
  double color = 0.0;  // 0 green .. 1 red
};

struct TreemapRect {
  std::string id;
  Box box;
  double size = 0.0;
  double color = 0.0;
};

struct TreemapLayout {
  Canvas canvas;
  std::vector<TreemapRect> rects;  // size descending, then id
};

// Squarified layout. Throws LayoutError for an empty item set and
// ConfigError for non-positive sizes or colors outside [0, 1].
TreemapLayout treemap(std::span<const TreemapItem> items, const Canvas& canvas);

// "#rrggbb" on a linear green-to-red ramp.
std::string ramp_color(double value);

std::string treemap_svg(const TreemapLayout& layout);
nlohmann::json treemap_to_json(const TreemapLayout& layout);

// ---------------------------------------------------------------------------
// Text flow
// ---------------------------------------------------------------------------

struct FlowPoint {
  std::string version;
  double frequency = 0.0;
  double thickness = 0.0;
  double top = 0.0;
  double bottom = 0.0;
};

struct FlowStream {
  std::string term;
  std::vector<FlowPoint> points;  // one per version
};

struct TextFlowLayout {
  Canvas canvas;
  std::vector<std::string> versions;
  std::vector<FlowStream> streams;
  double scale = 0.0;  // thickness per unit of relative frequency
};

// Relative term frequency per version, stacked symmetrically around the
// horizontal center line; one scale for the whole layout. Throws
// ConfigError with fewer than two versions or no terms.
TextFlowLayout text_flow(const Corpus& corpus, std::span<const std::string> terms,
                         const Canvas& canvas = {});

std::string text_flow_svg(const TextFlowLayout& layout);
nlohmann::json text_flow_to_json(const TextFlowLayout& layout);

// ---------------------------------------------------------------------------
// Report bundle
// ---------------------------------------------------------------------------

struct ReportTable {
  std::string title;
  nlohmann::json rows;  // array of flat objects, or any JSON value
};

struct ReportInputs {
  std::optional<WordCloudLayout> word_cloud;
  std::optional<PhraseNetGraph> phrase_net;
  std::optional<TreemapLayout> treemap;
  std::optional<TextFlowLayout> text_flow;
  std::vector<ReportTable> tables;
  std::vector<std::string> missing;  // inputs that could not be produced
};

struct ReportResult {
  std::vector<std::string> files;  // relative to the output directory
  std::vector<std::string> missing;
};

// Writes index.html plus one SVG per visualization into out_dir.
ReportResult render_report(const ReportInputs& inputs,
                           const std::filesystem::path& out_dir);

std::string html_escape(std::string_view text);

}  // namespace textproj

#endif  // TEXTPROJ_VIZ_H_
