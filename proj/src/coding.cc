#include "textproj/coding.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "textproj/error.h"

namespace textproj {

Codebook codebook_from_json(const nlohmann::json& j) {
  Codebook cb;
  try {
    for (const auto& c : j.value("codes", nlohmann::json::array())) {
      cb.codes.push_back({c.at("id").get<std::string>(),
                          c.value("name", c.at("id").get<std::string>()),
                          c.value("rationale", std::string()),
                          c.value("category_path", std::vector<std::string>{})});
    }
    for (const auto& s : j.value("segments", nlohmann::json::array())) {
      cb.segments.push_back({s.at("document_id").get<std::string>(),
                             s.at("start").get<std::size_t>(),
                             s.at("end").get<std::size_t>(),
                             s.at("code_id").get<std::string>(),
                             s.value("coder_id", std::string())});
    }
    for (const auto& e : j.value("axial_edges", nlohmann::json::array())) {
      cb.axial_edges.push_back({e.at("from").get<std::string>(),
                                e.at("to").get<std::string>(),
                                e.value("kind", std::string()),
                                e.value("weight", std::uint64_t{1})});
    }
    if (j.contains("core_category") && !j.at("core_category").is_null()) {
      cb.core_category = j.at("core_category").get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed codebook: ") + e.what());
  }
  return cb;
}

nlohmann::json codebook_to_json(const Codebook& cb) {
  nlohmann::json codes = nlohmann::json::array();
  for (const Code& c : cb.codes) {
    codes.push_back({{"id", c.id},
                     {"name", c.name},
                     {"rationale", c.rationale},
                     {"category_path", c.category_path}});
  }
  nlohmann::json segments = nlohmann::json::array();
  for (const CodedSegment& s : cb.segments) {
    segments.push_back({{"document_id", s.document_id},
                        {"start", s.start},
                        {"end", s.end},
                        {"code_id", s.code_id},
                        {"coder_id", s.coder_id}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const AxialEdge& e : cb.axial_edges) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"kind", e.kind}, {"weight", e.weight}});
  }
  return {{"codes", codes},
          {"segments", segments},
          {"axial_edges", edges},
          {"core_category", cb.core_category ? nlohmann::json(*cb.core_category)
                                             : nlohmann::json()}};
}

Codebook load_codebook(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return codebook_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("cannot parse codebook " + path.string() + ": " + e.what());
  }
}

std::vector<Violation> validate_codebook(const Codebook& cb, const Corpus* corpus) {
  std::vector<Violation> out;
  std::set<std::string> ids;
  for (const Code& c : cb.codes) {
    if (!ids.insert(c.id).second) {
      out.push_back({"duplicate_code_id", "code id '" + c.id + "' is defined more than once"});
    }
    if (c.rationale.find_first_not_of(" \t\r\n") == std::string::npos) {
      out.push_back({"empty_rationale", "code '" + c.id + "' has no rationale"});
    }
  }
  for (std::size_t k = 0; k < cb.segments.size(); ++k) {
    const CodedSegment& s = cb.segments[k];
    const std::string where = "segment " + std::to_string(k);
    if (ids.count(s.code_id) == 0) {
      out.push_back({"dangling_code", where + " refers to unknown code '" + s.code_id + "'"});
    }
    if (s.end <= s.start) {
      out.push_back({"span_out_of_bounds", where + " has an empty or reversed span"});
    } else if (corpus != nullptr) {
      const Document* d = corpus->find(s.document_id);
      if (d == nullptr) {
        out.push_back({"unknown_document",
                       where + " refers to unknown document '" + s.document_id + "'"});
      } else if (s.end > d->text.size()) {
        out.push_back({"span_out_of_bounds",
                       where + " ends at " + std::to_string(s.end) + " beyond document '" +
                           s.document_id + "' (" + std::to_string(d->text.size()) + " bytes)"});
      }
    }
  }
  for (const AxialEdge& e : cb.axial_edges) {
    for (const std::string* end : {&e.from, &e.to}) {
      if (ids.count(*end) == 0) {
        out.push_back({"dangling_edge", "axial edge " + e.from + " -> " + e.to +
                                            " refers to unknown code '" + *end + "'"});
      }
    }
    if (e.weight == 0) {
      out.push_back({"invalid_weight", "axial edge " + e.from + " -> " + e.to + " has weight 0"});
    }
  }
  if (cb.core_category && ids.count(*cb.core_category) == 0) {
    bool is_category = false;
    for (const Code& c : cb.codes) {
      if (std::find(c.category_path.begin(), c.category_path.end(), *cb.core_category) !=
          c.category_path.end()) {
        is_category = true;
      }
    }
    if (!is_category) {
      out.push_back({"unknown_core_category",
                     "core category '" + *cb.core_category + "' is neither a code nor a category"});
    }
  }
  return out;
}

std::map<std::string, std::uint64_t> occurrence_counts(const Codebook& cb) {
  std::map<std::string, std::uint64_t> counts;
  for (const Code& c : cb.codes) counts.emplace(c.id, 0);
  for (const CodedSegment& s : cb.segments) {
    auto it = counts.find(s.code_id);
    if (it != counts.end()) ++it->second;
  }
  return counts;
}

AxialGraph axial_graph(const Codebook& cb) {
  const auto counts = occurrence_counts(cb);
  AxialGraph g;
  std::set<std::string> seen;
  for (const Code& c : cb.codes) {
    if (!seen.insert(c.id).second) continue;
    g.nodes.push_back({c.id, c.name, counts.at(c.id)});
  }
  g.edges = cb.axial_edges;
  g.core_category = cb.core_category;
  return g;
}

AxialGraph condense_graph(const AxialGraph& graph, std::uint64_t min_occurrence) {
  AxialGraph out;
  std::set<std::string> kept;
  for (const AxialNode& n : graph.nodes) {
    if (n.count >= min_occurrence) {
      out.nodes.push_back(n);
      kept.insert(n.id);
    }
  }
  for (const AxialEdge& e : graph.edges) {
    if (kept.count(e.from) != 0 && kept.count(e.to) != 0) out.edges.push_back(e);
  }
  if (graph.core_category && kept.count(*graph.core_category) != 0) {
    out.core_category = graph.core_category;
  }
  return out;
}

nlohmann::json axial_graph_to_json(const AxialGraph& g) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const AxialNode& n : g.nodes) {
    nodes.push_back({{"id", n.id}, {"name", n.name}, {"count", n.count}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const AxialEdge& e : g.edges) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"kind", e.kind}, {"weight", e.weight}});
  }
  return {{"nodes", nodes},
          {"edges", edges},
          {"core_category",
           g.core_category ? nlohmann::json(*g.core_category) : nlohmann::json()}};
}

std::string axial_graph_to_dot(const AxialGraph& g) {
  auto quote = [](std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << "digraph axial {\n";
  for (const AxialNode& n : g.nodes) {
    os << "  " << quote(n.id) << " [label=" << quote(n.name + " (" + std::to_string(n.count) + ")");
    if (g.core_category && *g.core_category == n.id) os << ", penwidth=2";
    os << "];\n";
  }
  for (const AxialEdge& e : g.edges) {
    os << "  " << quote(e.from) << " -> " << quote(e.to) << " [label="
       << quote(e.kind.empty() ? std::to_string(e.weight) : e.kind + " " + std::to_string(e.weight))
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------

Agreement kappa_from_labels(std::span<const std::string> a,
                            std::span<const std::string> b) {
  if (a.size() != b.size()) throw ConfigError("label sequences differ in length");
  if (a.empty()) throw UndefinedMetricError("agreement is undefined without shared units");
  const double n = static_cast<double>(a.size());
  std::map<std::string, std::pair<double, double>> marginals;
  double agree = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) agree += 1.0;
    marginals[a[i]].first += 1.0;
    marginals[b[i]].second += 1.0;
  }
  Agreement r;
  r.units = a.size();
  r.percent_agreement = agree / n;
  for (const auto& [label, m] : marginals) {
    r.expected_agreement += (m.first / n) * (m.second / n);
  }
  if (std::abs(1.0 - r.expected_agreement) < 1e-12) {
    r.degenerate = true;
    r.kappa = 1.0;
  } else {
    r.kappa = (r.percent_agreement - r.expected_agreement) / (1.0 - r.expected_agreement);
  }
  return r;
}

namespace {

using UnitKey = std::tuple<std::string, std::size_t, std::size_t>;

UnitKey unit_of(const CodedSegment& s, AgreementUnit unit) {
  if (unit == AgreementUnit::kDocument) return {s.document_id, 0, 0};
  return {s.document_id, s.start, s.end};
}

std::map<UnitKey, std::set<std::string>> codes_by_unit(
    std::span<const CodedSegment> segments, std::string_view coder,
    AgreementUnit unit) {
  std::map<UnitKey, std::set<std::string>> out;
  for (const CodedSegment& s : segments) {
    if (s.coder_id == coder) out[unit_of(s, unit)].insert(s.code_id);
  }
  return out;
}

}  // namespace

Agreement agreement(std::span<const CodedSegment> segments, std::string_view coder_a,
                    std::string_view coder_b, AgreementUnit unit) {
  const auto a = codes_by_unit(segments, coder_a, unit);
  const auto b = codes_by_unit(segments, coder_b, unit);
  std::vector<std::string> la, lb;
  for (const auto& [key, codes_a] : a) {
    auto it = b.find(key);
    if (it == b.end()) continue;
    if (codes_a.size() != 1 || it->second.size() != 1) {
      throw ConfigError("unit '" + std::get<0>(key) +
                        "' carries several codes from one coder; use per-code agreement");
    }
    la.push_back(*codes_a.begin());
    lb.push_back(*it->second.begin());
  }
  if (la.empty()) {
    throw UndefinedMetricError("coders '" + std::string(coder_a) + "' and '" +
                               std::string(coder_b) + "' share no coded units");
  }
  return kappa_from_labels(la, lb);
}

std::map<std::string, Agreement> per_code_agreement(
    std::span<const CodedSegment> segments, std::string_view coder_a,
    std::string_view coder_b, AgreementUnit unit) {
  const auto a = codes_by_unit(segments, coder_a, unit);
  const auto b = codes_by_unit(segments, coder_b, unit);
  std::vector<std::pair<const std::set<std::string>*, const std::set<std::string>*>> shared;
  std::set<std::string> codes;
  for (const auto& [key, codes_a] : a) {
    auto it = b.find(key);
    if (it == b.end()) continue;
    shared.emplace_back(&codes_a, &it->second);
    codes.insert(codes_a.begin(), codes_a.end());
    codes.insert(it->second.begin(), it->second.end());
  }
  if (shared.empty()) {
    throw UndefinedMetricError("coders '" + std::string(coder_a) + "' and '" +
                               std::string(coder_b) + "' share no coded units");
  }
  std::map<std::string, Agreement> out;
  for (const std::string& code : codes) {
    std::vector<std::string> la, lb;
    for (const auto& [sa, sb] : shared) {
      la.push_back(sa->count(code) != 0 ? "1" : "0");
      lb.push_back(sb->count(code) != 0 ? "1" : "0");
    }
    out.emplace(code, kappa_from_labels(la, lb));
  }
  return out;
}

nlohmann::json agreement_to_json(const Agreement& a) {
  return {{"units", a.units},
          {"percent_agreement", a.percent_agreement},
          {"expected_agreement", a.expected_agreement},
          {"kappa", a.kappa},
          {"degenerate", a.degenerate}};
}

std::vector<std::size_t> saturation_curve(std::span<const CodedSegment> segments,
                                          std::size_t batch_size) {
  if (batch_size == 0) throw ConfigError("saturation batch size must be at least 1");
  std::vector<std::size_t> curve;
  std::set<std::string> seen;
  for (std::size_t b = 0; b < segments.size(); b += batch_size) {
    std::size_t fresh = 0;
    for (std::size_t i = b; i < std::min(segments.size(), b + batch_size); ++i) {
      if (seen.insert(segments[i].code_id).second) ++fresh;
    }
    curve.push_back(fresh);
  }
  return curve;
}

}  // namespace textproj
