#include "textproj/corpus.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include <boost/regex.hpp>

#include "textproj/error.h"

namespace textproj {
namespace fs = std::filesystem;

namespace {

struct ClassName {
  SourceClass value;
  std::string_view name;
};

constexpr std::array<ClassName, 9> kClassNames = {{
    {SourceClass::kContracting, "contracting"},
    {SourceClass::kPlanningControl, "planning_control"},
    {SourceClass::kReporting, "reporting"},
    {SourceClass::kConfigChangeMgmt, "config_change_mgmt"},
    {SourceClass::kEvaluation, "evaluation"},
    {SourceClass::kRequirementsAnalysis, "requirements_analysis"},
    {SourceClass::kSoftwareDesign, "software_design"},
    {SourceClass::kSoftwareElements, "software_elements"},
    {SourceClass::kLogistics, "logistics"},
}};

constexpr std::array<SourceClass, 9> kAllClasses = {
    SourceClass::kContracting,          SourceClass::kPlanningControl,
    SourceClass::kReporting,            SourceClass::kConfigChangeMgmt,
    SourceClass::kEvaluation,           SourceClass::kRequirementsAnalysis,
    SourceClass::kSoftwareDesign,       SourceClass::kSoftwareElements,
    SourceClass::kLogistics,
};

bool parse_int(std::string_view s, long long* out) {
  if (s.empty()) return false;
  const char* first = s.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// YYYY, YYYY-MM or YYYY-MM-DD mapped to a comparable integer.
bool parse_iso_date(std::string_view s, long long* out) {
  auto digits = [](std::string_view part, std::size_t n) {
    return part.size() == n &&
           std::all_of(part.begin(), part.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  long long year = 0, month = 0, day = 0;
  if (s.size() >= 4 && digits(s.substr(0, 4), 4)) {
    year = std::stoll(std::string(s.substr(0, 4)));
  } else {
    return false;
  }
  if (s.size() == 4) {
    *out = year * 10000;
    return true;
  }
  if (s.size() < 7 || s[4] != '-' || !digits(s.substr(5, 2), 2)) return false;
  month = std::stoll(std::string(s.substr(5, 2)));
  if (month < 1 || month > 12) return false;
  if (s.size() == 7) {
    *out = year * 10000 + month * 100;
    return true;
  }
  if (s.size() != 10 || s[7] != '-' || !digits(s.substr(8, 2), 2)) return false;
  day = std::stoll(std::string(s.substr(8, 2)));
  if (day < 1 || day > 31) return false;
  *out = year * 10000 + month * 100 + day;
  return true;
}

}  // namespace

std::string_view to_string(SourceClass c) {
  for (const auto& entry : kClassNames) {
    if (entry.value == c) return entry.name;
  }
  return "requirements_analysis";
}

SourceClass parse_source_class(std::string_view name) {
  for (const auto& entry : kClassNames) {
    if (entry.name == name) return entry.value;
  }
  throw ConfigError("unknown source class '" + std::string(name) + "'");
}

std::span<const SourceClass> all_source_classes() { return kAllClasses; }

// ---------------------------------------------------------------------------

Corpus::Corpus(std::vector<Document> documents, std::vector<Link> links)
    : documents_(std::move(documents)), links_(std::move(links)) {
  std::sort(documents_.begin(), documents_.end(),
            [](const Document& a, const Document& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < documents_.size(); ++i) {
    if (documents_[i].id.empty()) throw IngestError("document with empty id");
    if (documents_[i].text.empty()) {
      throw IngestError("document '" + documents_[i].id + "' has empty text");
    }
    if (i > 0 && documents_[i].id == documents_[i - 1].id) {
      throw IngestError("duplicate document id '" + documents_[i].id + "'");
    }
  }
  for (const Link& link : links_) {
    if (!find(link.from_id) || !find(link.to_id)) {
      throw IngestError("link " + link.from_id + " -> " + link.to_id +
                        " does not resolve within the corpus");
    }
  }
}

const Document* Corpus::find(std::string_view id) const {
  auto it = std::lower_bound(
      documents_.begin(), documents_.end(), id,
      [](const Document& d, std::string_view key) { return d.id < key; });
  if (it == documents_.end() || it->id != id) return nullptr;
  return &*it;
}

const Document& Corpus::at(std::string_view id) const {
  const Document* doc = find(id);
  if (!doc) throw LookupError("unknown document '" + std::string(id) + "'");
  return *doc;
}

// ---------------------------------------------------------------------------

bool is_valid_utf8(std::string_view bytes) {
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(bytes[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(bytes[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong encodings, surrogates and out-of-range code points.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += len;
  }
  return true;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IngestError("cannot read '" + path.string() + "'");
  return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("cannot write '" + path.string() + "'");
}

IngestResult ingest_path(const fs::path& root, const IngestOptions& options) {
  std::error_code ec;
  if (!fs::exists(root, ec) || !fs::is_directory(root, ec)) {
    throw IngestError("ingestion root '" + root.string() +
                      "' does not exist or is not a directory");
  }

  std::vector<std::pair<boost::regex, SourceClass>> rules;
  for (const ClassRule& rule : options.class_map) {
    try {
      rules.emplace_back(boost::regex(rule.pattern, boost::regex::perl | boost::regex::no_mod_s),
                         rule.source_class);
    } catch (const boost::regex_error& e) {
      throw ConfigError("invalid class pattern '" + rule.pattern +
                        "': " + e.what());
    }
  }

  std::vector<fs::path> files;
  fs::recursive_directory_iterator it(
      root, fs::directory_options::skip_permission_denied, ec);
  if (ec) {
    throw IngestError("cannot read ingestion root '" + root.string() +
                      "': " + ec.message());
  }
  for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) break;
    const fs::path& p = it->path();
    const std::string name = p.filename().string();
    if (!name.empty() && name[0] == '.') {
      if (it->is_directory()) it.disable_recursion_pending();
      continue;
    }
    if (!it->is_regular_file()) continue;
    if (!options.extensions.empty()) {
      const std::string ext = p.extension().string();
      if (std::find(options.extensions.begin(), options.extensions.end(),
                    ext) == options.extensions.end()) {
        continue;
      }
    }
    files.push_back(p);
  }
  if (ec) {
    throw IngestError("error while scanning '" + root.string() +
                      "': " + ec.message());
  }

  IngestResult result;
  for (const fs::path& p : files) {
    const std::string id = fs::relative(p, root).generic_string();
    std::string text;
    try {
      text = read_file(p);
    } catch (const IngestError& e) {
      result.errors.push_back({id, e.what()});
      continue;
    }
    if (text.empty()) {
      result.errors.push_back({id, "file is empty"});
      continue;
    }
    if (!is_valid_utf8(text)) {
      result.errors.push_back({id, "file is not valid UTF-8"});
      continue;
    }
    Document doc;
    doc.id = id;
    doc.path = p.generic_string();
    doc.text = std::move(text);
    for (const auto& [re, cls] : rules) {
      if (boost::regex_search(id, re)) {
        doc.source_class = cls;
        break;
      }
    }
    result.documents.push_back(std::move(doc));
  }
  std::sort(result.documents.begin(), result.documents.end(),
            [](const Document& a, const Document& b) { return a.id < b.id; });
  std::sort(result.errors.begin(), result.errors.end(),
            [](const FileError& a, const FileError& b) {
              return a.path < b.path;
            });
  return result;
}

Manifest parse_manifest(const nlohmann::json& j) {
  Manifest m;
  if (!j.is_object()) throw ConfigError("manifest must be a JSON object");
  if (j.contains("links")) {
    for (const auto& l : j.at("links")) {
      m.links.push_back({l.at("from").get<std::string>(),
                         l.at("to").get<std::string>(),
                         l.value("kind", std::string())});
    }
  }
  if (j.contains("versions")) {
    for (const auto& [id, label] : j.at("versions").items()) {
      m.versions[id] = label.is_string() ? label.get<std::string>()
                                         : label.dump();
    }
  }
  return m;
}

Manifest read_manifest(const fs::path& path) {
  try {
    return parse_manifest(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed manifest '" + path.string() +
                      "': " + e.what());
  }
}

Corpus build_corpus(std::vector<Document> documents,
                    const Manifest& manifest) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    index[documents[i].id] = i;
  }
  for (const auto& [id, label] : manifest.versions) {
    auto it = index.find(id);
    if (it == index.end()) {
      throw IngestError("manifest version entry for unknown document '" + id +
                        "'");
    }
    documents[it->second].version_label = label;
  }
  return Corpus(std::move(documents), manifest.links);
}

// ---------------------------------------------------------------------------

VersionOrderKind version_order_kind(std::span<const std::string> labels) {
  long long v = 0;
  if (std::all_of(labels.begin(), labels.end(),
                  [&](const std::string& s) { return parse_int(s, &v); })) {
    return VersionOrderKind::kInteger;
  }
  if (std::all_of(labels.begin(), labels.end(), [&](const std::string& s) {
        return parse_iso_date(s, &v);
      })) {
    return VersionOrderKind::kIsoDate;
  }
  return VersionOrderKind::kLexicographic;
}

std::vector<std::string> order_versions(std::span<const std::string> labels) {
  std::vector<std::string> out(labels.begin(), labels.end());
  const VersionOrderKind kind = version_order_kind(out);
  auto key = [kind](const std::string& s) {
    long long v = 0;
    if (kind == VersionOrderKind::kInteger) {
      parse_int(s, &v);
    } else if (kind == VersionOrderKind::kIsoDate) {
      parse_iso_date(s, &v);
    }
    return v;
  };
  std::sort(out.begin(), out.end(),
            [&](const std::string& a, const std::string& b) {
              if (kind == VersionOrderKind::kLexicographic) return a < b;
              const long long ka = key(a), kb = key(b);
              return ka != kb ? ka < kb : a < b;
            });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::pair<std::string, std::vector<const Document*>>>
documents_by_version(const Corpus& corpus) {
  std::vector<std::string> labels;
  for (const Document& d : corpus.documents()) {
    if (!d.version_label) {
      throw ConfigError("document '" + d.id +
                        "' has no version label; version order is unknown");
    }
    labels.push_back(*d.version_label);
  }
  std::vector<std::pair<std::string, std::vector<const Document*>>> out;
  for (const std::string& label : order_versions(labels)) {
    out.emplace_back(label, std::vector<const Document*>{});
    for (const Document& d : corpus.documents()) {
      if (*d.version_label == label) out.back().second.push_back(&d);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

nlohmann::json corpus_to_json(const Corpus& corpus) {
  nlohmann::json docs = nlohmann::json::array();
  for (const Document& d : corpus.documents()) {
    nlohmann::json jd = {{"id", d.id},
                         {"path", d.path},
                         {"source_class", std::string(to_string(d.source_class))},
                         {"text", d.text},
                         {"metadata", d.metadata}};
    jd["version_label"] =
        d.version_label ? nlohmann::json(*d.version_label) : nlohmann::json();
    docs.push_back(std::move(jd));
  }
  nlohmann::json links = nlohmann::json::array();
  for (const Link& l : corpus.links()) {
    links.push_back({{"from", l.from_id}, {"to", l.to_id}, {"kind", l.kind}});
  }
  return {{"documents", docs}, {"links", links}};
}

Corpus corpus_from_json(const nlohmann::json& j) {
  try {
    std::vector<Document> docs;
    for (const auto& jd : j.at("documents")) {
      Document d;
      d.id = jd.at("id").get<std::string>();
      d.path = jd.value("path", d.id);
      d.source_class = parse_source_class(
          jd.value("source_class", std::string("requirements_analysis")));
      d.text = jd.at("text").get<std::string>();
      if (jd.contains("version_label") && !jd.at("version_label").is_null()) {
        d.version_label = jd.at("version_label").get<std::string>();
      }
      if (jd.contains("metadata")) {
        d.metadata =
            jd.at("metadata").get<std::map<std::string, std::string>>();
      }
      docs.push_back(std::move(d));
    }
    std::vector<Link> links;
    if (j.contains("links")) {
      for (const auto& l : j.at("links")) {
        links.push_back({l.at("from").get<std::string>(),
                         l.at("to").get<std::string>(),
                         l.value("kind", std::string())});
      }
    }
    return Corpus(std::move(docs), std::move(links));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed corpus JSON: ") + e.what());
  }
}

Corpus load_corpus(const fs::path& path) {
  std::string text = read_file(path);
  try {
    return corpus_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("corpus file '" + path.string() +
                      "' is not valid JSON: " + e.what());
  }
}

}  // namespace textproj
