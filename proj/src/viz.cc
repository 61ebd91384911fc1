#include "textproj/viz.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "textproj/error.h"
#include "textproj/ngram.h"

namespace textproj {

namespace {

// Fixed-precision formatting keeps the SVG output byte-stable.
std::string num(double v) {
  if (std::abs(v) < 5e-4) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

std::size_t code_points(std::string_view s) {
  std::size_t n = 0;
  for (char c : s) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string svg_open(const Canvas& c) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(c.width) +
         "\" height=\"" + num(c.height) + "\" viewBox=\"0 0 " + num(c.width) + " " +
         num(c.height) + "\">\n";
}

}  // namespace

std::string html_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

Canvas parse_canvas(std::string_view text) {
  const auto x = text.find('x');
  try {
    if (x == std::string_view::npos) throw std::invalid_argument("no x");
    std::size_t used = 0;
    const std::string w(text.substr(0, x)), h(text.substr(x + 1));
    Canvas c{std::stod(w, &used), 0.0};
    if (used != w.size()) throw std::invalid_argument("width");
    c.height = std::stod(h, &used);
    if (used != h.size()) throw std::invalid_argument("height");
    if (!(c.width > 0 && c.height > 0)) throw std::invalid_argument("size");
    return c;
  } catch (const std::exception&) {
    throw ConfigError("canvas must look like WIDTHxHEIGHT with positive sizes, got '" +
                      std::string(text) + "'");
  }
}

bool overlaps(const Box& a, const Box& b) {
  return a.x < b.x + b.width && b.x < a.x + a.width && a.y < b.y + b.height &&
         b.y < a.y + a.height;
}

std::vector<WordCount> word_frequencies(std::span<const PreparedDocument> docs) {
  std::map<std::string, std::uint64_t> counts;
  for (const PreparedDocument& d : docs) {
    for (const std::string& w : kept_words(d)) {
      if (std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        continue;
      }
      ++counts[w];
    }
  }
  std::vector<WordCount> out(counts.begin(), counts.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const WordCount& a, const WordCount& b) { return a.second > b.second; });
  return out;
}

// ---------------------------------------------------------------------------

WordCloudLayout word_cloud(std::span<const WordCount> frequencies,
                           const WordCloudConfig& config) {
  if (config.max_words == 0) throw ConfigError("max_words must be at least 1");
  if (!(config.min_font > 0 && config.max_font >= config.min_font)) {
    throw ConfigError("font sizes must satisfy 0 < min_font <= max_font");
  }
  const std::set<std::string> stop(config.stopwords.begin(), config.stopwords.end());
  std::vector<WordCount> words;
  for (const WordCount& wc : frequencies) {
    if (stop.count(wc.first) == 0 && wc.second > 0) words.push_back(wc);
  }
  std::stable_sort(words.begin(), words.end(), [](const WordCount& a, const WordCount& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (words.size() > config.max_words) words.resize(config.max_words);

  std::vector<std::uint64_t> levels;
  for (const WordCount& wc : words) {
    if (levels.empty() || levels.back() != wc.second) levels.push_back(wc.second);
  }

  WordCloudLayout layout;
  layout.canvas = config.canvas;
  const double cx = config.canvas.width / 2.0, cy = config.canvas.height / 2.0;
  const double max_radius = std::hypot(cx, cy);
  std::mt19937_64 rng(config.seed);
  std::size_t level = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0 && words[i].second != words[i - 1].second) ++level;
    const double font =
        levels.size() <= 1
            ? config.max_font
            : config.max_font - (config.max_font - config.min_font) *
                                    static_cast<double>(level) /
                                    static_cast<double>(levels.size() - 1);
    const double w = font * 0.6 * static_cast<double>(code_points(words[i].first));
    const double h = font * 1.2;
    const double start =
        static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 * std::numbers::pi;

    bool placed = false;
    for (double t = 0.0;; t += 0.1) {
      const double r = 2.0 * t;
      if (r > max_radius) break;
      const double x = cx + r * std::cos(start + t);
      const double y = cy + r * std::sin(start + t);
      const Box box{x - w / 2.0, y - h / 2.0, w, h};
      if (box.x < 0 || box.y < 0 || box.x + w > config.canvas.width ||
          box.y + h > config.canvas.height) {
        continue;
      }
      const bool clash = std::any_of(layout.entries.begin(), layout.entries.end(),
                                     [&](const WordCloudEntry& e) { return overlaps(e.box, box); });
      if (clash) continue;
      layout.entries.push_back({words[i].first, words[i].second, font, x, y, box});
      placed = true;
      break;
    }
    if (!placed && i == 0) {
      throw LayoutError("canvas " + num(config.canvas.width) + "x" +
                        num(config.canvas.height) + " is too small for the word '" +
                        words[0].first + "'");
    }
  }
  return layout;
}

std::string word_cloud_svg(const WordCloudLayout& layout) {
  std::string out = svg_open(layout.canvas);
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const WordCloudEntry& e : layout.entries) {
    out += "<text x=\"" + num(e.x) + "\" y=\"" + num(e.y) +
           "\" font-family=\"monospace\" font-size=\"" + num(e.font_size) +
           "\" text-anchor=\"middle\" dominant-baseline=\"central\">" +
           html_escape(e.word) + "</text>\n";
  }
  return out + "</svg>\n";
}

nlohmann::json word_cloud_to_json(const WordCloudLayout& layout) {
  nlohmann::json entries = nlohmann::json::array();
  for (const WordCloudEntry& e : layout.entries) {
    entries.push_back({{"word", e.word},
                       {"frequency", e.frequency},
                       {"font_size", e.font_size},
                       {"x", e.x},
                       {"y", e.y},
                       {"box", {e.box.x, e.box.y, e.box.width, e.box.height}}});
  }
  return {{"width", layout.canvas.width}, {"height", layout.canvas.height}, {"entries", entries}};
}

// ---------------------------------------------------------------------------

PhraseNetGraph phrase_net(std::span<const PreparedDocument> docs,
                          std::string_view connector, std::uint64_t min_weight,
                          std::span<const std::string> stopwords) {
  std::string conn(connector);
  std::transform(conn.begin(), conn.end(), conn.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (conn.empty()) throw ConfigError("phrase net connector must not be empty");
  const std::set<std::string> stop(stopwords.begin(), stopwords.end());

  std::map<std::string, std::uint64_t> frequency;
  std::map<std::pair<std::string, std::string>, std::uint64_t> weights;
  for (const PreparedDocument& d : docs) {
    const auto& t = d.stream.tokens;
    auto usable = [&](std::size_t i) {
      return t[i].is_word && (d.skip.empty() || !d.skip[i]);
    };
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (usable(i)) ++frequency[t[i].normalized];
    }
    for (std::size_t i = 0; i + 2 < t.size(); ++i) {
      if (!usable(i) || !usable(i + 1) || !usable(i + 2)) continue;
      if (t[i + 1].normalized != conn) continue;
      if (stop.count(t[i].normalized) != 0 || stop.count(t[i + 2].normalized) != 0) continue;
      ++weights[{t[i].normalized, t[i + 2].normalized}];
    }
  }

  PhraseNetGraph g;
  g.connector = conn;
  std::set<std::string> endpoints;
  for (const auto& [pair, w] : weights) {
    if (w < std::max<std::uint64_t>(min_weight, 1)) continue;
    g.edges.push_back({pair.first, pair.second, w});
    endpoints.insert(pair.first);
    endpoints.insert(pair.second);
  }
  std::stable_sort(g.edges.begin(), g.edges.end(),
                   [](const PhraseNetEdge& a, const PhraseNetEdge& b) { return a.weight > b.weight; });
  for (const std::string& w : endpoints) g.nodes.push_back({w, frequency[w]});
  std::stable_sort(g.nodes.begin(), g.nodes.end(),
                   [](const PhraseNetNode& a, const PhraseNetNode& b) {
                     return a.frequency > b.frequency;
                   });
  return g;
}

std::string phrase_net_svg(const PhraseNetGraph& g, const Canvas& canvas) {
  std::string out = svg_open(canvas);
  out +=
      "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" "
      "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 "
      "L0,10 z\" fill=\"#555\"/></marker></defs>\n";
  const double cx = canvas.width / 2.0, cy = canvas.height / 2.0;
  const double radius = std::min(cx, cy) * 0.75;
  std::map<std::string, std::pair<double, double>> pos;
  std::uint64_t max_freq = 1, max_weight = 1;
  for (const PhraseNetNode& n : g.nodes) max_freq = std::max(max_freq, n.frequency);
  for (const PhraseNetEdge& e : g.edges) max_weight = std::max(max_weight, e.weight);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(i) /
                     static_cast<double>(std::max<std::size_t>(1, g.nodes.size()));
    pos[g.nodes[i].word] = {cx + radius * std::cos(a), cy + radius * std::sin(a)};
  }
  for (const PhraseNetEdge& e : g.edges) {
    const auto [x1, y1] = pos[e.from];
    const auto [x2, y2] = pos[e.to];
    const double width = 1.0 + 4.0 * static_cast<double>(e.weight) / static_cast<double>(max_weight);
    out += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
           num(y2) + "\" stroke=\"#555\" stroke-width=\"" + num(width) +
           "\" marker-end=\"url(#arrow)\"><title>" + html_escape(e.from + " " + g.connector + " " + e.to) +
           " (" + std::to_string(e.weight) + ")</title></line>\n";
  }
  for (const PhraseNetNode& n : g.nodes) {
    const auto [x, y] = pos[n.word];
    const double size = 10.0 + 20.0 * static_cast<double>(n.frequency) / static_cast<double>(max_freq);
    out += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"" +
           num(size) + "\" text-anchor=\"middle\">" + html_escape(n.word) + "</text>\n";
  }
  return out + "</svg>\n";
}

nlohmann::json phrase_net_to_json(const PhraseNetGraph& g) {
  nlohmann::json nodes = nlohmann::json::array(), edges = nlohmann::json::array();
  for (const PhraseNetNode& n : g.nodes) nodes.push_back({{"word", n.word}, {"frequency", n.frequency}});
  for (const PhraseNetEdge& e : g.edges) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"connector", g.connector}, {"weight", e.weight}});
  }
  return {{"connector", g.connector}, {"nodes", nodes}, {"edges", edges}};
}

// ---------------------------------------------------------------------------

namespace {

double worst_ratio(std::span<const double> row, double side) {
  double sum = 0.0, lo = row.front(), hi = row.front();
  for (double a : row) {
    sum += a;
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  const double s2 = sum * sum, w2 = side * side;
  return std::max(w2 * hi / s2, s2 / (w2 * lo));
}

}  // namespace

TreemapLayout treemap(std::span<const TreemapItem> items, const Canvas& canvas) {
  if (items.empty()) throw LayoutError("treemap needs at least one item");
  for (const TreemapItem& it : items) {
    if (!(it.size > 0.0)) throw ConfigError("treemap item '" + it.id + "' has non-positive size");
    if (!(it.color >= 0.0 && it.color <= 1.0)) {
      throw ConfigError("treemap item '" + it.id + "' has a color value outside [0, 1]");
    }
  }
  std::vector<TreemapItem> sorted(items.begin(), items.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const TreemapItem& a, const TreemapItem& b) {
    return a.size != b.size ? a.size > b.size : a.id < b.id;
  });
  double total = 0.0;
  for (const TreemapItem& it : sorted) total += it.size;
  const double scale = canvas.width * canvas.height / total;
  std::vector<double> areas;
  for (const TreemapItem& it : sorted) areas.push_back(it.size * scale);

  TreemapLayout layout;
  layout.canvas = canvas;
  // Interior edges are snapped to multiples of 2^-16 so that neighbouring
  // rectangles share bit-identical coordinates.
  const auto snap = [](double v) { return std::round(v * 65536.0) / 65536.0; };
  double x0 = 0.0, y0 = 0.0;
  const double x1 = canvas.width, y1 = canvas.height;
  std::size_t next = 0;
  while (next < sorted.size()) {
    const double side = std::min(x1 - x0, y1 - y0);
    std::size_t end = next + 1;
    while (end < sorted.size() &&
           worst_ratio(std::span(areas).subspan(next, end + 1 - next), side) <=
               worst_ratio(std::span(areas).subspan(next, end - next), side)) {
      ++end;
    }
    double row_sum = 0.0;
    for (std::size_t i = next; i < end; ++i) row_sum += areas[i];
    const bool last_row = end == sorted.size();
    const bool vertical = x1 - x0 >= y1 - y0;  // row is a column at the left
    const double start = vertical ? x0 : y0;
    const double limit = vertical ? x1 : y1;
    const double stop = last_row ? limit : std::min(limit, snap(start + row_sum / side));
    double along = vertical ? y0 : x0;
    const double along_limit = vertical ? y1 : x1;
    double cumulative = 0.0;
    for (std::size_t i = next; i < end; ++i) {
      cumulative += areas[i];
      const double edge =
          i + 1 == end ? along_limit
                       : std::min(along_limit, snap((vertical ? y0 : x0) + cumulative / row_sum * side));
      Box b = vertical ? Box{start, along, stop - start, edge - along}
                       : Box{along, start, edge - along, stop - start};
      layout.rects.push_back({sorted[i].id, b, sorted[i].size, sorted[i].color});
      along = edge;
    }
    (vertical ? x0 : y0) = stop;
    next = end;
  }
  return layout;
}

std::string ramp_color(double value) {
  const double v = std::clamp(value, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(40 + v * (215 - 40)));
  const int g = static_cast<int>(std::lround(170 - v * (170 - 40)));
  const int b = static_cast<int>(std::lround(60 - v * (60 - 40)));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string treemap_svg(const TreemapLayout& layout) {
  std::string out = svg_open(layout.canvas);
  for (const TreemapRect& r : layout.rects) {
    out += "<rect x=\"" + num(r.box.x) + "\" y=\"" + num(r.box.y) + "\" width=\"" +
           num(r.box.width) + "\" height=\"" + num(r.box.height) + "\" fill=\"" +
           ramp_color(r.color) + "\" stroke=\"white\" stroke-width=\"1\"><title>" +
           html_escape(r.id) + ": " + num(r.color * 100.0) + "%</title></rect>\n";
    if (r.box.width > 30 && r.box.height > 14) {
      out += "<text x=\"" + num(r.box.x + 4) + "\" y=\"" + num(r.box.y + 13) +
             "\" font-family=\"sans-serif\" font-size=\"11\">" + html_escape(r.id) + "</text>\n";
    }
  }
  return out + "</svg>\n";
}

nlohmann::json treemap_to_json(const TreemapLayout& layout) {
  nlohmann::json rects = nlohmann::json::array();
  for (const TreemapRect& r : layout.rects) {
    rects.push_back({{"id", r.id},
                     {"x", r.box.x},
                     {"y", r.box.y},
                     {"width", r.box.width},
                     {"height", r.box.height},
                     {"size", r.size},
                     {"color_value", r.color},
                     {"fill", ramp_color(r.color)}});
  }
  return {{"width", layout.canvas.width}, {"height", layout.canvas.height}, {"rects", rects}};
}

// ---------------------------------------------------------------------------

TextFlowLayout text_flow(const Corpus& corpus, std::span<const std::string> terms,
                         const Canvas& canvas) {
  if (terms.empty()) throw ConfigError("text flow needs at least one term");
  TextFlowLayout layout;
  layout.canvas = canvas;
  for (const std::string& term : terms) {
    FlowStream stream;
    stream.term = term;
    for (const SeriesPoint& p : frequency_series(corpus, term)) {
      stream.points.push_back({p.version, p.frequency, 0.0, 0.0, 0.0});
    }
    layout.streams.push_back(std::move(stream));
  }
  for (const FlowPoint& p : layout.streams.front().points) layout.versions.push_back(p.version);
  if (layout.versions.size() < 2) {
    throw ConfigError("text flow needs at least two versions, found " +
                      std::to_string(layout.versions.size()));
  }
  double max_stack = 0.0;
  for (std::size_t v = 0; v < layout.versions.size(); ++v) {
    double stack = 0.0;
    for (const FlowStream& s : layout.streams) stack += s.points[v].frequency;
    max_stack = std::max(max_stack, stack);
  }
  layout.scale = max_stack > 0.0 ? 0.8 * canvas.height / max_stack : 0.0;
  for (std::size_t v = 0; v < layout.versions.size(); ++v) {
    double stack = 0.0;
    for (FlowStream& s : layout.streams) {
      s.points[v].thickness = s.points[v].frequency * layout.scale;
      stack += s.points[v].thickness;
    }
    double y = canvas.height / 2.0 - stack / 2.0;
    for (FlowStream& s : layout.streams) {
      s.points[v].top = y;
      y += s.points[v].thickness;
      s.points[v].bottom = y;
    }
  }
  return layout;
}

std::string text_flow_svg(const TextFlowLayout& layout) {
  static const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2",
                                   "#59a14f", "#edc948", "#b07aa1", "#ff9da7"};
  const Canvas& c = layout.canvas;
  std::string out = svg_open(c);
  const double margin = 40.0;
  const std::size_t nv = layout.versions.size();
  auto x_at = [&](std::size_t v) {
    return nv <= 1 ? c.width / 2.0
                   : margin + (c.width - 2 * margin) * static_cast<double>(v) /
                                  static_cast<double>(nv - 1);
  };
  for (std::size_t s = 0; s < layout.streams.size(); ++s) {
    const FlowStream& st = layout.streams[s];
    std::string d;
    for (std::size_t v = 0; v < nv; ++v) {
      d += (v == 0 ? "M" : " L") + num(x_at(v)) + "," + num(st.points[v].top);
    }
    for (std::size_t v = nv; v-- > 0;) d += " L" + num(x_at(v)) + "," + num(st.points[v].bottom);
    out += "<path d=\"" + d + " Z\" fill=\"" + kPalette[s % 8] + "\" opacity=\"0.85\"><title>" +
           html_escape(st.term) + "</title></path>\n";
  }
  for (std::size_t v = 0; v < nv; ++v) {
    out += "<text x=\"" + num(x_at(v)) + "\" y=\"" + num(c.height - 8) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
           html_escape(layout.versions[v]) + "</text>\n";
  }
  for (std::size_t s = 0; s < layout.streams.size(); ++s) {
    out += "<text x=\"8\" y=\"" + num(16.0 + 14.0 * static_cast<double>(s)) +
           "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + kPalette[s % 8] + "\">" +
           html_escape(layout.streams[s].term) + "</text>\n";
  }
  return out + "</svg>\n";
}

nlohmann::json text_flow_to_json(const TextFlowLayout& layout) {
  nlohmann::json streams = nlohmann::json::array();
  for (const FlowStream& s : layout.streams) {
    nlohmann::json points = nlohmann::json::array();
    for (const FlowPoint& p : s.points) {
      points.push_back({{"version", p.version},
                        {"frequency", p.frequency},
                        {"thickness", p.thickness},
                        {"top", p.top},
                        {"bottom", p.bottom}});
    }
    streams.push_back({{"term", s.term}, {"points", points}});
  }
  return {{"versions", layout.versions}, {"scale", layout.scale}, {"streams", streams}};
}

// ---------------------------------------------------------------------------

namespace {

std::string cell(const nlohmann::json& v) {
  if (v.is_string()) return html_escape(v.get<std::string>());
  if (v.is_number_float()) return num(v.get<double>());
  return html_escape(v.dump());
}

std::string table_html(const ReportTable& t) {
  std::string out = "<h2>" + html_escape(t.title) + "</h2>\n";
  const bool tabular = t.rows.is_array() && !t.rows.empty() &&
                       std::all_of(t.rows.begin(), t.rows.end(),
                                   [](const nlohmann::json& r) { return r.is_object(); });
  if (!tabular) {
    return out + "<pre>" + html_escape(t.rows.dump(2)) + "</pre>\n";
  }
  std::vector<std::string> columns;
  for (const auto& row : t.rows) {
    for (const auto& [k, v] : row.items()) {
      if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
    }
  }
  out += "<table>\n<tr>";
  for (const std::string& c : columns) out += "<th>" + html_escape(c) + "</th>";
  out += "</tr>\n";
  for (const auto& row : t.rows) {
    out += "<tr>";
    for (const std::string& c : columns) {
      out += "<td>" + (row.contains(c) ? cell(row.at(c)) : std::string()) + "</td>";
    }
    out += "</tr>\n";
  }
  return out + "</table>\n";
}

}  // namespace

ReportResult render_report(const ReportInputs& inputs,
                           const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  ReportResult result;
  result.missing = inputs.missing;
  std::string body;
  auto add_svg = [&](const std::string& file, const std::string& title, const std::string& svg) {
    write_file(out_dir / file, svg);
    result.files.push_back(file);
    body += "<section>\n<h2>" + html_escape(title) + "</h2>\n" + svg + "</section>\n";
  };
  if (inputs.treemap) add_svg("treemap.svg", "Clone coverage treemap", treemap_svg(*inputs.treemap));
  if (inputs.word_cloud) add_svg("wordcloud.svg", "Word cloud", word_cloud_svg(*inputs.word_cloud));
  if (inputs.phrase_net) {
    add_svg("phrasenet.svg", "Phrase net (\"" + inputs.phrase_net->connector + "\")",
            phrase_net_svg(*inputs.phrase_net, Canvas{}));
  }
  if (inputs.text_flow) add_svg("textflow.svg", "Text flow", text_flow_svg(*inputs.text_flow));
  for (const ReportTable& t : inputs.tables) body += "<section>\n" + table_html(t) + "</section>\n";

  std::string html =
      "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
      "<title>Text analysis report</title>\n<style>\nbody{font-family:sans-serif;margin:2em}"
      "table{border-collapse:collapse}td,th{border:1px solid #ccc;padding:2px 6px;"
      "text-align:left}\n</style>\n</head>\n<body>\n<h1>Text analysis report</h1>\n";
  if (body.empty()) html += "<p>no analyses</p>\n";
  html += body;
  if (!inputs.missing.empty()) {
    html += "<section>\n<h2>Missing inputs</h2>\n<ul>\n";
    for (const std::string& m : inputs.missing) html += "<li>" + html_escape(m) + "</li>\n";
    html += "</ul>\n</section>\n";
  }
  html += "</body>\n</html>\n";
  write_file(out_dir / "index.html", html);
  result.files.insert(result.files.begin(), "index.html");
  return result;
}

}  // namespace textproj
