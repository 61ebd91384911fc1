#ifndef TEXTPROJ_TESTS_TEST_SUPPORT_H_
#define TEXTPROJ_TESTS_TEST_SUPPORT_H_

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "textproj/clones.h"
#include "textproj/corpus.h"

namespace textproj::testing {

inline std::filesystem::path fixture_dir() { return TEXTPROJ_FIXTURES; }

inline std::filesystem::path rfc_dir() { return fixture_dir() / "rfc"; }

inline Corpus make_corpus(const std::vector<std::pair<std::string, std::string>>& texts) {
  std::vector<Document> docs;
  for (const auto& [id, text] : texts) {
    Document d;
    d.id = id;
    d.path = id;
    d.text = text;
    docs.push_back(std::move(d));
  }
  return Corpus(std::move(docs));
}

inline Corpus rfc_corpus() {
  IngestResult r = ingest_path(rfc_dir());
  std::vector<Document> docs;
  for (Document& d : r.documents) {
    if (d.id == "ignore.txt") continue;
    docs.push_back(std::move(d));
  }
  return build_corpus(std::move(docs), read_manifest(rfc_dir() / "manifest.json"));
}

inline std::vector<std::string> rfc_ignore_patterns() {
  return read_pattern_file(rfc_dir() / "ignore.txt");
}

// Space-separated symbols from a small alphabet with random line breaks.
inline std::string random_symbol_text(std::mt19937_64& rng, std::size_t tokens,
                                      int alphabet) {
  std::uniform_int_distribution<int> sym(0, alphabet - 1);
  std::uniform_int_distribution<int> brk(0, 6);
  std::string text;
  for (std::size_t i = 0; i < tokens; ++i) {
    text += static_cast<char>('a' + sym(rng));
    text += (brk(rng) == 0) ? '\n' : ' ';
  }
  return text;
}

// ---------------------------------------------------------------------------
// Brute-force maximal repeats
// ---------------------------------------------------------------------------

using InstanceKey = std::tuple<std::string, std::size_t, std::size_t>;
using GroupKey = std::set<InstanceKey>;

// Enumerates every window of at least min_length kept tokens, keeps those that
// occur at least twice and are left- and right-maximal: not all occurrences
// share the same preceding token, nor the same following token. A document
// edge or an ignored token counts as a context symbol unique to its position.
inline std::set<GroupKey> brute_force_maximal_repeats(
    const std::vector<PreparedDocument>& docs, std::size_t min_length) {
  struct Pos {
    std::size_t doc, first;
  };
  std::map<std::vector<std::string>, std::vector<Pos>> occurrences;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const auto& toks = docs[d].stream.tokens;
    const auto& skip = docs[d].skip;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      std::vector<std::string> w;
      for (std::size_t j = i; j < toks.size() && !skip[j]; ++j) {
        w.push_back(toks[j].normalized);
        if (w.size() >= min_length) occurrences[w].push_back({d, i});
      }
    }
  }
  std::set<GroupKey> out;
  long unique = -1;
  for (const auto& [w, occ] : occurrences) {
    if (occ.size() < 2) continue;
    auto context = [&](const Pos& p, bool left) -> std::string {
      const auto& toks = docs[p.doc].stream.tokens;
      const auto& skip = docs[p.doc].skip;
      if (left) {
        if (p.first == 0 || skip[p.first - 1]) return "#" + std::to_string(unique--);
        return toks[p.first - 1].normalized;
      }
      const std::size_t after = p.first + w.size();
      if (after >= toks.size() || skip[after]) return "#" + std::to_string(unique--);
      return toks[after].normalized;
    };
    std::set<std::string> left, right;
    for (const Pos& p : occ) {
      left.insert(context(p, true));
      right.insert(context(p, false));
    }
    if (left.size() < 2 || right.size() < 2) continue;
    GroupKey g;
    for (const Pos& p : occ) {
      g.insert({docs[p.doc].stream.document_id, p.first, p.first + w.size() - 1});
    }
    out.insert(g);
  }
  return out;
}

inline std::set<GroupKey> group_keys(const std::vector<CloneGroup>& groups) {
  std::set<GroupKey> out;
  for (const CloneGroup& g : groups) {
    GroupKey k;
    for (const CloneInstance& i : g.instances) k.insert({i.document_id, i.first_token, i.last_token});
    out.insert(k);
  }
  return out;
}

// Lines touched by clone instances over lines with a kept token, counted
// directly from the token streams.
inline double oracle_coverage(const std::vector<PreparedDocument>& docs,
                              const std::vector<CloneGroup>& groups) {
  std::size_t covered = 0, total = 0;
  for (const PreparedDocument& d : docs) {
    std::set<std::uint32_t> all, hit;
    for (std::size_t t = 0; t < d.stream.tokens.size(); ++t) {
      if (!d.skip[t]) all.insert(d.stream.tokens[t].line);
    }
    for (const CloneGroup& g : groups) {
      for (const CloneInstance& i : g.instances) {
        if (i.document_id != d.stream.document_id) continue;
        for (std::size_t t = i.first_token; t <= i.last_token; ++t) {
          if (!d.skip[t]) hit.insert(d.stream.tokens[t].line);
        }
      }
    }
    covered += hit.size();
    total += all.size();
  }
  return total == 0 ? 0.0 : static_cast<double>(covered) / static_cast<double>(total);
}

}  // namespace textproj::testing

#endif  // TEXTPROJ_TESTS_TEST_SUPPORT_H_
