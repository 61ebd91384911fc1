#include <algorithm>

#include <boost/regex.hpp>

#include "textproj/corpus.h"
#include "textproj/error.h"

namespace textproj {

namespace {

bool is_core_char(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80;
}

bool is_joiner(unsigned char c) { return c == '-' || c == '_'; }

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace

TokenStream tokenize_text(std::string_view document_id, std::string_view text,
                          const TokenizerConfig& config) {
  TokenStream out;
  out.document_id = std::string(document_id);
  std::uint32_t line = 1;

  auto emit = [&](std::size_t start, std::size_t end, bool word) {
    Token t;
    t.surface = std::string(text.substr(start, end - start));
    t.normalized = config.lowercase ? lower_ascii(t.surface) : t.surface;
    t.line = line;
    t.start = start;
    t.end = end;
    t.is_word = word;
    out.tokens.push_back(std::move(t));
  };
  auto emit_punct = [&](std::size_t start, std::size_t end) {
    if (!config.keep_punctuation) return;
    for (std::size_t k = start; k < end; ++k) emit(k, k + 1, false);
  };

  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (is_core_char(c) || is_joiner(c)) {
      std::size_t j = i;
      while (j < n && (is_core_char(static_cast<unsigned char>(text[j])) ||
                       is_joiner(static_cast<unsigned char>(text[j])))) {
        ++j;
      }
      std::size_t ws = i, we = j;
      while (ws < we && is_joiner(static_cast<unsigned char>(text[ws]))) ++ws;
      while (we > ws && is_joiner(static_cast<unsigned char>(text[we - 1]))) {
        --we;
      }
      if (ws == we) {
        emit_punct(i, j);
      } else {
        emit_punct(i, ws);
        emit(ws, we, true);
        emit_punct(we, j);
      }
      i = j;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
      ++i;
      continue;
    }
    emit_punct(i, i + 1);
    ++i;
  }
  return out;
}

TokenStream tokenize(const Document& doc, const TokenizerConfig& config) {
  return tokenize_text(doc.id, doc.text, config);
}

// ---------------------------------------------------------------------------

std::vector<IgnoredRegion> apply_ignore_patterns(
    const Document& doc, std::span<const std::string> patterns) {
  std::vector<boost::regex> compiled;
  compiled.reserve(patterns.size());
  for (const std::string& p : patterns) {
    try {
      compiled.emplace_back(p, boost::regex::perl | boost::regex::no_mod_s);
    } catch (const boost::regex_error& e) {
      throw ConfigError("invalid ignore pattern '" + p + "': " + e.what());
    }
  }

  std::vector<IgnoredRegion> raw;
  for (std::size_t k = 0; k < compiled.size(); ++k) {
    auto begin = boost::sregex_iterator(doc.text.begin(), doc.text.end(),
                                        compiled[k]);
    for (auto it = begin; it != boost::sregex_iterator(); ++it) {
      const auto& m = *it;
      if (m.length(std::size_t{0}) == 0) continue;
      const auto start = static_cast<std::size_t>(m.position(std::size_t{0}));
      raw.push_back({doc.id, start, start + static_cast<std::size_t>(m.length(std::size_t{0})),
                     patterns[k]});
    }
  }
  std::sort(raw.begin(), raw.end(),
            [](const IgnoredRegion& a, const IgnoredRegion& b) {
              return a.start != b.start ? a.start < b.start : a.end < b.end;
            });

  // Overlapping or touching regions merge; the reason lists each contributing
  // pattern once, in order of first appearance.
  std::vector<IgnoredRegion> merged;
  std::vector<std::vector<std::string>> reasons;
  for (IgnoredRegion& r : raw) {
    if (!merged.empty() && r.start <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, r.end);
      auto& rs = reasons.back();
      if (std::find(rs.begin(), rs.end(), r.reason) == rs.end()) {
        rs.push_back(r.reason);
      }
    } else {
      reasons.push_back({r.reason});
      merged.push_back(std::move(r));
    }
  }
  for (std::size_t k = 0; k < merged.size(); ++k) {
    std::string joined;
    for (const std::string& s : reasons[k]) {
      if (!joined.empty()) joined += " | ";
      joined += s;
    }
    merged[k].reason = std::move(joined);
  }
  return merged;
}

std::vector<std::string> read_pattern_file(const std::filesystem::path& path) {
  std::vector<std::string> out;
  const std::string text = read_file(path);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] != '#') out.push_back(line);
    pos = nl + 1;
  }
  return out;
}

std::size_t PreparedDocument::kept_token_count() const {
  return static_cast<std::size_t>(std::count(skip.begin(), skip.end(), 0));
}

PreparedDocument prepare_document(const Document& doc,
                                  const TokenizerConfig& config,
                                  std::span<const std::string> ignore_patterns) {
  PreparedDocument out;
  out.stream = tokenize(doc, config);
  out.ignored = apply_ignore_patterns(doc, ignore_patterns);
  out.skip.assign(out.stream.tokens.size(), 0);
  // Regions and tokens are both sorted by offset.
  std::size_t r = 0;
  for (std::size_t t = 0; t < out.stream.tokens.size(); ++t) {
    const Token& tok = out.stream.tokens[t];
    while (r < out.ignored.size() && out.ignored[r].end <= tok.start) ++r;
    if (r < out.ignored.size() && out.ignored[r].start < tok.end) {
      out.skip[t] = 1;
    }
  }
  return out;
}

std::vector<PreparedDocument> prepare_corpus(
    const Corpus& corpus, const TokenizerConfig& config,
    std::span<const std::string> ignore_patterns) {
  std::vector<PreparedDocument> out;
  out.reserve(corpus.size());
  for (const Document& d : corpus.documents()) {
    out.push_back(prepare_document(d, config, ignore_patterns));
  }
  return out;
}

}  // namespace textproj
