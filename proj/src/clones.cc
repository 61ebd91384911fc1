#include "textproj/clones.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>
#include <unordered_map>

#include "textproj/error.h"
#include "textproj/kernels.h"
#include "textproj/suffix_array.h"

namespace textproj {

namespace {

// Token ids of every document, in a shared vocabulary.
struct TokenIndex {
  std::vector<std::vector<std::int32_t>> ids;
  std::int32_t vocabulary_size = 0;
};

TokenIndex index_tokens(std::span<const PreparedDocument> docs) {
  TokenIndex index;
  std::unordered_map<std::string, std::int32_t> vocab;
  index.ids.resize(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const auto& tokens = docs[d].stream.tokens;
    index.ids[d].reserve(tokens.size());
    for (const Token& t : tokens) {
      auto [it, inserted] = vocab.try_emplace(
          t.normalized, static_cast<std::int32_t>(vocab.size()));
      index.ids[d].push_back(it->second);
    }
  }
  index.vocabulary_size = static_cast<std::int32_t>(vocab.size());
  return index;
}

bool skipped(const PreparedDocument& doc, std::size_t t) {
  return !doc.skip.empty() && doc.skip[t];
}

struct Span {
  int doc = 0;
  std::size_t first = 0;
  std::size_t last = 0;

  auto key() const { return std::tie(doc, first, last); }
  bool operator<(const Span& o) const { return key() < o.key(); }
  bool operator==(const Span& o) const { return key() == o.key(); }
};

CloneInstance make_instance(std::span<const PreparedDocument> docs,
                            const Span& s) {
  const auto& tokens = docs[s.doc].stream.tokens;
  return {docs[s.doc].stream.document_id, s.first, s.last, tokens[s.first].line,
          tokens[s.last].line};
}

// Canonical order: longer first, then by the first instance position, then by
// the remaining instances.
void sort_and_number(std::span<const PreparedDocument> docs,
                     std::vector<CloneGroup>* groups) {
  std::map<std::string, int> doc_rank;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    doc_rank[docs[d].stream.document_id] = static_cast<int>(d);
  }
  auto inst_key = [&](const CloneInstance& i) {
    return std::make_tuple(i.document_id, i.first_token, i.last_token);
  };
  for (CloneGroup& g : *groups) {
    std::sort(g.instances.begin(), g.instances.end(),
              [&](const CloneInstance& a, const CloneInstance& b) {
                return inst_key(a) < inst_key(b);
              });
  }
  std::sort(groups->begin(), groups->end(),
            [&](const CloneGroup& a, const CloneGroup& b) {
              if (a.length_tokens != b.length_tokens) {
                return a.length_tokens > b.length_tokens;
              }
              const std::size_t n = std::min(a.instances.size(), b.instances.size());
              for (std::size_t k = 0; k < n; ++k) {
                auto ka = inst_key(a.instances[k]);
                auto kb = inst_key(b.instances[k]);
                if (ka != kb) return ka < kb;
              }
              if (a.instances.size() != b.instances.size()) {
                return a.instances.size() < b.instances.size();
              }
              return a.gap_edits < b.gap_edits;
            });
  for (std::size_t k = 0; k < groups->size(); ++k) {
    (*groups)[k].id = static_cast<int>(k + 1);
  }
}

// Left-context state of an lcp interval: no suffix yet, a single shared
// preceding symbol, or diverse.
constexpr std::int64_t kNoneYet = -1;
constexpr std::int64_t kDiverse = -2;

std::int64_t combine(std::int64_t a, std::int64_t b) {
  if (a == kNoneYet) return b;
  if (b == kNoneYet) return a;
  if (a == b) return a;
  return kDiverse;
}

// Per-line token ranges [begin, end) of a span, restricted to kept tokens.
std::vector<std::pair<std::size_t, std::size_t>> span_lines(
    const PreparedDocument& doc, std::size_t first, std::size_t last) {
  std::vector<std::pair<std::size_t, std::size_t>> lines;
  const auto& tokens = doc.stream.tokens;
  std::size_t t = first;
  while (t <= last) {
    while (t <= last && skipped(doc, t)) ++t;
    if (t > last) break;
    const std::uint32_t line = tokens[t].line;
    std::size_t e = t;
    while (e <= last && tokens[e].line == line && !skipped(doc, e)) ++e;
    lines.emplace_back(t, e);
    t = e;
    while (t <= last && tokens[t].line == line) ++t;
  }
  return lines;
}

struct LineView {
  const std::vector<std::int32_t>* ids;
  std::vector<std::pair<std::size_t, std::size_t>> lines;

  bool same(std::size_t i, const LineView& o, std::size_t j) const {
    const auto [b1, e1] = lines[i];
    const auto [b2, e2] = o.lines[j];
    return e1 - b1 == e2 - b2 &&
           std::equal(ids->begin() + b1, ids->begin() + e1, o.ids->begin() + b2);
  }
};

LineView line_view(std::span<const PreparedDocument> docs,
                   const TokenIndex& index, const Span& s) {
  return {&index.ids[s.doc], span_lines(docs[s.doc], s.first, s.last)};
}

// Levenshtein distance over lines, abandoning once it exceeds `bound`
// (returns bound + 1 then).
std::size_t line_distance(const LineView& a, const LineView& b,
                          std::size_t bound) {
  const std::size_t n = a.lines.size(), m = b.lines.size();
  if ((n > m ? n - m : m - n) > bound) return bound + 1;
  const std::size_t inf = bound + 1;
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = std::min(j, inf);
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t lo = i > bound ? i - bound : 1;
    const std::size_t hi = std::min(m, i + bound);
    std::fill(cur.begin(), cur.end(), inf);
    cur[0] = std::min(i, inf);
    std::size_t row_min = cur[0];
    for (std::size_t j = lo; j <= hi; ++j) {
      const std::size_t sub = prev[j - 1] + (a.same(i - 1, b, j - 1) ? 0 : 1);
      std::size_t v = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
      cur[j] = std::min(v, inf);
      row_min = std::min(row_min, cur[j]);
    }
    if (row_min >= inf) return inf;
    std::swap(prev, cur);
  }
  return std::min(prev[m], inf);
}

// Kept tokens of the line just before (forward = false) or after a span
// boundary, clipped at the boundary. Empty when the line is missing or
// touches ignored text.
std::pair<std::size_t, std::size_t> boundary_line(const PreparedDocument& doc,
                                                  const Span& s, bool forward) {
  const auto& tokens = doc.stream.tokens;
  if (!forward) {
    if (s.first == 0 || skipped(doc, s.first - 1)) return {0, 0};
    const std::uint32_t line = tokens[s.first - 1].line;
    std::size_t b = s.first - 1;
    while (b > 0 && tokens[b - 1].line == line) {
      if (skipped(doc, b - 1)) return {0, 0};
      --b;
    }
    return {b, s.first};
  }
  const std::size_t n = tokens.size();
  if (s.last + 1 >= n || skipped(doc, s.last + 1)) return {0, 0};
  const std::uint32_t line = tokens[s.last + 1].line;
  std::size_t e = s.last + 1;
  while (e < n && tokens[e].line == line) {
    if (skipped(doc, e)) return {0, 0};
    ++e;
  }
  return {s.last + 1, e};
}

// Token-level edit distance of at most one between two id ranges.
bool one_token_apart(const std::vector<std::int32_t>& x, std::pair<std::size_t, std::size_t> rx,
                     const std::vector<std::int32_t>& y, std::pair<std::size_t, std::size_t> ry) {
  const std::size_t n = rx.second - rx.first, m = ry.second - ry.first;
  if (n < 2 || m < 2 || (n > m ? n - m : m - n) > 1) return false;
  auto at_x = [&](std::size_t i) { return x[rx.first + i]; };
  auto at_y = [&](std::size_t j) { return y[ry.first + j]; };
  std::size_t i = 0;
  while (i < n && i < m && at_x(i) == at_y(i)) ++i;
  if (i == n && i == m) return false;
  std::size_t k = 0;
  while (k < n - i && k < m - i && at_x(n - 1 - k) == at_y(m - 1 - k)) ++k;
  return i + k + 1 >= std::max(n, m);
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<kernels::CoverageInput> coverage_inputs(
    std::span<const PreparedDocument> docs, std::span<const CloneGroup> groups,
    std::vector<std::vector<std::uint32_t>>* line_storage) {
  std::map<std::string, std::size_t> pos;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    pos[docs[d].stream.document_id] = d;
  }
  line_storage->assign(docs.size(), {});
  std::vector<kernels::CoverageInput> inputs(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    auto& lines = (*line_storage)[d];
    lines.reserve(docs[d].stream.tokens.size());
    for (const Token& t : docs[d].stream.tokens) lines.push_back(t.line);
    inputs[d].token_lines = lines;
    inputs[d].skip = docs[d].skip;
  }
  for (const CloneGroup& g : groups) {
    for (const CloneInstance& inst : g.instances) {
      auto it = pos.find(inst.document_id);
      if (it == pos.end()) continue;
      inputs[it->second].spans.push_back({inst.first_token, inst.last_token});
    }
  }
  return inputs;
}

}  // namespace

TokenizerConfig clone_tokenizer_config() {
  TokenizerConfig config;
  config.keep_punctuation = true;
  config.lowercase = true;
  return config;
}

std::vector<CloneGroup> detect_exact_clones(
    std::span<const PreparedDocument> docs, std::size_t min_length) {
  if (min_length < 2) {
    throw ConfigError("min_length must be at least 2 (got " +
                      std::to_string(min_length) + ")");
  }
  const TokenIndex index = index_tokens(docs);

  // Concatenate kept runs separated by unique sentinels.
  std::vector<std::int32_t> text;
  std::vector<std::int32_t> pos_doc;
  std::vector<std::size_t> pos_token;
  std::int32_t next_sentinel = index.vocabulary_size;
  auto push_sentinel = [&] {
    text.push_back(next_sentinel++);
    pos_doc.push_back(-1);
    pos_token.push_back(0);
  };
  for (std::size_t d = 0; d < docs.size(); ++d) {
    bool in_run = false;
    for (std::size_t t = 0; t < index.ids[d].size(); ++t) {
      if (skipped(docs[d], t)) {
        if (in_run) push_sentinel();
        in_run = false;
        continue;
      }
      text.push_back(index.ids[d][t]);
      pos_doc.push_back(static_cast<std::int32_t>(d));
      pos_token.push_back(t);
      in_run = true;
    }
    if (in_run) push_sentinel();
  }
  if (text.empty()) return {};

  const auto sa = build_suffix_array(text, next_sentinel);
  const auto lcp = build_lcp(text, sa);
  const std::size_t n = text.size();

  auto left_symbol = [&](std::int32_t p) -> std::int64_t {
    // A missing or sentinel predecessor is unique, hence diverse.
    if (p == 0 || text[p - 1] >= index.vocabulary_size) return kDiverse;
    return text[p - 1];
  };

  std::vector<CloneGroup> groups;
  auto emit = [&](std::size_t lb, std::size_t rb, std::size_t length) {
    CloneGroup g;
    g.length_tokens = length;
    for (std::size_t k = lb; k <= rb; ++k) {
      const std::size_t p = static_cast<std::size_t>(sa[k]);
      const Span s{pos_doc[p], pos_token[p], pos_token[p + length - 1]};
      g.instances.push_back(make_instance(docs, s));
    }
    groups.push_back(std::move(g));
  };

  struct Interval {
    std::size_t lcp;
    std::size_t lb;
    std::int64_t left;
  };
  std::vector<Interval> stack = {{0, 0, kNoneYet}};
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t cur = i < n ? static_cast<std::size_t>(lcp[i]) : 0;
    std::int64_t pending = left_symbol(sa[i - 1]);
    std::size_t lb = i - 1;
    while (cur < stack.back().lcp) {
      Interval top = stack.back();
      stack.pop_back();
      top.left = combine(top.left, pending);
      if (top.lcp >= min_length && top.left == kDiverse) {
        emit(top.lb, i - 1, top.lcp);
      }
      pending = top.left;
      lb = top.lb;
    }
    if (cur > stack.back().lcp) {
      stack.push_back({cur, lb, pending});
    } else {
      stack.back().left = combine(stack.back().left, pending);
    }
  }

  sort_and_number(docs, &groups);
  return groups;
}

std::vector<CloneGroup> detect_gapped_clones(
    std::span<const PreparedDocument> docs, const CloneConfig& config) {
  std::vector<CloneGroup> exact = detect_exact_clones(docs, config.min_length);
  const std::size_t max_gap = config.max_gap;
  if (max_gap == 0 || exact.empty()) return exact;

  const TokenIndex index = index_tokens(docs);
  std::map<std::string, int> doc_pos;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    doc_pos[docs[d].stream.document_id] = static_cast<int>(d);
  }
  // Prefix counts of skipped tokens, to refuse fusion across ignored text.
  std::vector<std::vector<std::size_t>> skip_prefix(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const std::size_t nt = docs[d].stream.tokens.size();
    skip_prefix[d].assign(nt + 1, 0);
    for (std::size_t t = 0; t < nt; ++t) {
      skip_prefix[d][t + 1] = skip_prefix[d][t] + (skipped(docs[d], t) ? 1 : 0);
    }
  }

  struct Side {
    Span span;
    std::uint32_t first_line;
    std::uint32_t last_line;
  };
  struct Pair {
    std::size_t group;
    Side a, b;
  };
  std::vector<Pair> pairs;
  std::vector<std::size_t> pairs_per_group(exact.size(), 0);
  for (std::size_t g = 0; g < exact.size(); ++g) {
    const auto& inst = exact[g].instances;
    if (inst.size() > config.max_fusion_instances) continue;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      for (std::size_t j = i + 1; j < inst.size(); ++j) {
        auto side = [&](const CloneInstance& c) {
          return Side{{doc_pos.at(c.document_id), c.first_token, c.last_token},
                      c.first_line, c.last_line};
        };
        pairs.push_back({g, side(inst[i]), side(inst[j])});
        ++pairs_per_group[g];
      }
    }
  }

  // Buckets per ordered document pair, sorted by position on side a.
  std::map<std::pair<int, int>, std::vector<std::size_t>> buckets;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    buckets[{pairs[p].a.span.doc, pairs[p].b.span.doc}].push_back(p);
  }

  auto between_clean = [&](const Span& before, const Span& after) {
    const auto& pre = skip_prefix[before.doc];
    return pre[after.first] == pre[before.last + 1];
  };

  DisjointSets sets(pairs.size());
  std::vector<std::uint8_t> linked(pairs.size(), 0);
  for (auto& [docs_key, members] : buckets) {
    std::sort(members.begin(), members.end(), [&](std::size_t x, std::size_t y) {
      const auto kx = std::make_tuple(pairs[x].a.span.first, pairs[x].b.span.first, x);
      const auto ky = std::make_tuple(pairs[y].a.span.first, pairs[y].b.span.first, y);
      return kx < ky;
    });
    for (std::size_t mi = 0; mi < members.size(); ++mi) {
      const Pair& p = pairs[members[mi]];
      auto start = std::upper_bound(
          members.begin(), members.end(), p.a.span.last,
          [&](std::size_t value, std::size_t m) {
            return value < pairs[m].a.span.first;
          });
      for (auto it = start; it != members.end(); ++it) {
        const Pair& q = pairs[*it];
        if (q.a.first_line > p.a.last_line + max_gap + 1) break;
        if (q.b.span.first <= p.b.span.last) continue;
        if (q.b.first_line > p.b.last_line + max_gap + 1) continue;
        if (!between_clean(p.a.span, q.a.span) ||
            !between_clean(p.b.span, q.b.span)) {
          continue;
        }
        const Span fa{p.a.span.doc, p.a.span.first, q.a.span.last};
        const Span fb{p.b.span.doc, p.b.span.first, q.b.span.last};
        const std::size_t d = line_distance(line_view(docs, index, fa),
                                            line_view(docs, index, fb), max_gap);
        if (d >= 1 && d <= max_gap) {
          sets.unite(members[mi], *it);
          linked[members[mi]] = 1;
          linked[*it] = 1;
        }
      }
    }
  }

  // Fused spans per component.
  std::map<std::size_t, std::pair<Span, Span>> fused;
  std::vector<std::size_t> absorbed(exact.size(), 0);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (!linked[p]) continue;
    ++absorbed[pairs[p].group];
    const std::size_t root = sets.find(p);
    auto it = fused.find(root);
    if (it == fused.end()) {
      fused.emplace(root, std::make_pair(pairs[p].a.span, pairs[p].b.span));
    } else {
      Span& a = it->second.first;
      Span& b = it->second.second;
      a.first = std::min(a.first, pairs[p].a.span.first);
      a.last = std::max(a.last, pairs[p].a.span.last);
      b.first = std::min(b.first, pairs[p].b.span.first);
      b.last = std::max(b.last, pairs[p].b.span.last);
    }
  }

  // Boundary lines that differ by one token are absorbed while the gap
  // budget lasts.
  for (auto& [root, ab] : fused) {
    Span& a = ab.first;
    Span& b = ab.second;
    std::size_t d = line_distance(line_view(docs, index, a), line_view(docs, index, b), max_gap);
    for (const bool forward : {false, true}) {
      while (d < max_gap) {
        const auto la = boundary_line(docs[a.doc], a, forward);
        const auto lb = boundary_line(docs[b.doc], b, forward);
        if (la.first == la.second || lb.first == lb.second) break;
        if (!one_token_apart(index.ids[a.doc], la, index.ids[b.doc], lb)) break;
        Span na = a, nb = b;
        if (forward) {
          na.last = la.second - 1;
          nb.last = lb.second - 1;
        } else {
          na.first = la.first;
          nb.first = lb.first;
        }
        if (na.doc == nb.doc && !(na.last < nb.first || nb.last < na.first)) break;
        a = na;
        b = nb;
        ++d;
      }
    }
  }

  // Fused pairs sharing a span end up in one group.
  std::map<Span, std::size_t> span_ids;
  std::vector<Span> spans;
  auto span_id = [&](const Span& s) {
    auto [it, inserted] = span_ids.try_emplace(s, spans.size());
    if (inserted) spans.push_back(s);
    return it->second;
  };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& [root, ab] : fused) {
    edges.emplace_back(span_id(ab.first), span_id(ab.second));
  }
  DisjointSets span_sets(spans.size());
  for (const auto& [x, y] : edges) span_sets.unite(x, y);
  std::map<std::size_t, std::vector<Span>> members_of;
  for (std::size_t s = 0; s < spans.size(); ++s) {
    members_of[span_sets.find(s)].push_back(spans[s]);
  }

  std::vector<CloneGroup> result;
  for (std::size_t g = 0; g < exact.size(); ++g) {
    if (pairs_per_group[g] > 0 && absorbed[g] == pairs_per_group[g]) continue;
    result.push_back(std::move(exact[g]));
  }
  for (auto& [root, members] : members_of) {
    std::sort(members.begin(), members.end());
    CloneGroup g;
    g.length_tokens = SIZE_MAX;
    const LineView reference = line_view(docs, index, members.front());
    for (const Span& s : members) {
      g.instances.push_back(make_instance(docs, s));
      g.length_tokens = std::min(g.length_tokens, s.last - s.first + 1);
      const LineView view = line_view(docs, index, s);
      const std::size_t unbounded = reference.lines.size() + view.lines.size();
      g.gap_edits = std::max(g.gap_edits, line_distance(reference, view, unbounded));
    }
    result.push_back(std::move(g));
  }
  sort_and_number(docs, &result);
  return result;
}

// ---------------------------------------------------------------------------

CloneStats clone_stats(std::span<const PreparedDocument> docs,
                       std::span<const CloneGroup> groups) {
  std::vector<std::vector<std::uint32_t>> storage;
  const auto inputs = coverage_inputs(docs, groups, &storage);
  const auto coverage = kernels::line_coverage(inputs, kernels::Exec::kParallel);

  CloneStats stats;
  std::map<std::string, std::size_t> pos;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    DocumentCloneStats row;
    row.document_id = docs[d].stream.document_id;
    row.covered_lines = coverage[d].covered_lines;
    row.total_lines = coverage[d].total_lines;
    row.coverage = row.total_lines == 0
                       ? 0.0
                       : static_cast<double>(row.covered_lines) /
                             static_cast<double>(row.total_lines);
    pos[row.document_id] = d;
    stats.documents.push_back(std::move(row));
    stats.covered_lines += coverage[d].covered_lines;
    stats.total_lines += coverage[d].total_lines;
  }
  for (const CloneGroup& g : groups) {
    std::vector<std::size_t> touched;
    for (const CloneInstance& inst : g.instances) {
      auto it = pos.find(inst.document_id);
      if (it == pos.end()) continue;
      ++stats.documents[it->second].clone_instance_count;
      ++stats.clone_instance_count;
      touched.push_back(it->second);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (std::size_t d : touched) ++stats.documents[d].clone_group_count;
    if (!touched.empty()) ++stats.clone_group_count;
  }
  stats.coverage = stats.total_lines == 0
                       ? 0.0
                       : static_cast<double>(stats.covered_lines) /
                             static_cast<double>(stats.total_lines);
  return stats;
}

double clone_coverage(std::span<const PreparedDocument> docs,
                      std::span<const CloneGroup> groups) {
  const CloneStats stats = clone_stats(docs, groups);
  if (stats.total_lines == 0) {
    throw UndefinedMetricError("clone coverage is undefined: no analyzable lines");
  }
  return stats.coverage;
}

double clone_coverage(const PreparedDocument& doc,
                      std::span<const CloneGroup> groups) {
  return clone_coverage(std::span<const PreparedDocument>(&doc, 1), groups);
}

// ---------------------------------------------------------------------------

std::string_view to_string(LineEditKind kind) {
  switch (kind) {
    case LineEditKind::kChanged:
      return "changed";
    case LineEditKind::kInserted:
      return "inserted";
    case LineEditKind::kDeleted:
      return "deleted";
  }
  return "changed";
}

std::vector<InstanceDiff> diff_instances(const CloneGroup& group,
                                         const Corpus& corpus,
                                         std::span<const PreparedDocument> docs) {
  std::vector<InstanceDiff> out;
  if (group.instances.empty()) return out;
  std::map<std::string, int> doc_pos;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    doc_pos[docs[d].stream.document_id] = static_cast<int>(d);
  }
  auto span_of = [&](const CloneInstance& inst) {
    auto it = doc_pos.find(inst.document_id);
    if (it == doc_pos.end()) {
      throw LookupError("clone instance refers to unknown document '" +
                        inst.document_id + "'");
    }
    return Span{it->second, inst.first_token, inst.last_token};
  };
  const TokenIndex index = index_tokens(docs);

  auto line_text = [&](const Span& s, std::pair<std::size_t, std::size_t> r) {
    const PreparedDocument& pd = docs[s.doc];
    const Document& doc = corpus.at(pd.stream.document_id);
    const auto& toks = pd.stream.tokens;
    return doc.text.substr(toks[r.first].start,
                           toks[r.second - 1].end - toks[r.first].start);
  };
  auto line_no = [&](const Span& s, std::pair<std::size_t, std::size_t> r) {
    return docs[s.doc].stream.tokens[r.first].line;
  };

  const Span ref_span = span_of(group.instances.front());
  const LineView ref = line_view(docs, index, ref_span);
  for (std::size_t k = 1; k < group.instances.size(); ++k) {
    InstanceDiff diff;
    diff.instance = group.instances[k];
    if (group.gap_edits == 0) {
      out.push_back(std::move(diff));
      continue;
    }
    const Span span = span_of(group.instances[k]);
    const LineView view = line_view(docs, index, span);
    const std::size_t n = ref.lines.size(), m = view.lines.size();
    std::vector<std::vector<std::size_t>> dp(n + 1, std::vector<std::size_t>(m + 1));
    for (std::size_t i = 0; i <= n; ++i) dp[i][0] = i;
    for (std::size_t j = 0; j <= m; ++j) dp[0][j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= m; ++j) {
        dp[i][j] = std::min({dp[i - 1][j - 1] + (ref.same(i - 1, view, j - 1) ? 0 : 1),
                             dp[i - 1][j] + 1, dp[i][j - 1] + 1});
      }
    }
    std::vector<LineEdit> edits;
    std::size_t i = n, j = m;
    while (i > 0 || j > 0) {
      if (i > 0 && j > 0 &&
          dp[i][j] == dp[i - 1][j - 1] + (ref.same(i - 1, view, j - 1) ? 0 : 1)) {
        if (!ref.same(i - 1, view, j - 1)) {
          edits.push_back({LineEditKind::kChanged, line_no(ref_span, ref.lines[i - 1]),
                           line_text(ref_span, ref.lines[i - 1]),
                           line_no(span, view.lines[j - 1]),
                           line_text(span, view.lines[j - 1])});
        }
        --i;
        --j;
      } else if (i > 0 && dp[i][j] == dp[i - 1][j] + 1) {
        edits.push_back({LineEditKind::kDeleted, line_no(ref_span, ref.lines[i - 1]),
                         line_text(ref_span, ref.lines[i - 1]), std::nullopt, ""});
        --i;
      } else {
        edits.push_back({LineEditKind::kInserted, std::nullopt, "",
                         line_no(span, view.lines[j - 1]),
                         line_text(span, view.lines[j - 1])});
        --j;
      }
    }
    std::reverse(edits.begin(), edits.end());
    diff.edits = std::move(edits);
    out.push_back(std::move(diff));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json instance_to_json(const CloneInstance& i) {
  return {{"document_id", i.document_id},
          {"first_token", i.first_token},
          {"last_token", i.last_token},
          {"first_line", i.first_line},
          {"last_line", i.last_line}};
}

}  // namespace

nlohmann::json clone_groups_to_json(std::span<const CloneGroup> groups) {
  nlohmann::json out = nlohmann::json::array();
  for (const CloneGroup& g : groups) {
    nlohmann::json instances = nlohmann::json::array();
    for (const CloneInstance& i : g.instances) instances.push_back(instance_to_json(i));
    out.push_back({{"id", g.id},
                   {"length_tokens", g.length_tokens},
                   {"gap_edits", g.gap_edits},
                   {"instances", instances}});
  }
  return out;
}

std::vector<CloneGroup> clone_groups_from_json(const nlohmann::json& j) {
  std::vector<CloneGroup> groups;
  try {
    for (const auto& jg : j) {
      CloneGroup g;
      g.id = jg.at("id").get<int>();
      g.length_tokens = jg.at("length_tokens").get<std::size_t>();
      g.gap_edits = jg.at("gap_edits").get<std::size_t>();
      for (const auto& ji : jg.at("instances")) {
        g.instances.push_back({ji.at("document_id").get<std::string>(),
                               ji.at("first_token").get<std::size_t>(),
                               ji.at("last_token").get<std::size_t>(),
                               ji.at("first_line").get<std::uint32_t>(),
                               ji.at("last_line").get<std::uint32_t>()});
      }
      groups.push_back(std::move(g));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed clone groups: ") + e.what());
  }
  return groups;
}

nlohmann::json clone_stats_to_json(const CloneStats& stats) {
  nlohmann::json rows = nlohmann::json::array();
  for (const DocumentCloneStats& r : stats.documents) {
    rows.push_back({{"document_id", r.document_id},
                    {"coverage", r.coverage},
                    {"clone_groups", r.clone_group_count},
                    {"clones", r.clone_instance_count},
                    {"covered_lines", r.covered_lines},
                    {"total_lines", r.total_lines}});
  }
  return {{"documents", rows},
          {"coverage", stats.coverage},
          {"clone_groups", stats.clone_group_count},
          {"clones", stats.clone_instance_count},
          {"covered_lines", stats.covered_lines},
          {"total_lines", stats.total_lines}};
}

nlohmann::json diff_to_json(const CloneGroup& group,
                            std::span<const InstanceDiff> diffs) {
  nlohmann::json out = {{"group", group.id},
                        {"gap_edits", group.gap_edits},
                        {"reference", group.instances.empty()
                                          ? nlohmann::json()
                                          : instance_to_json(group.instances.front())}};
  nlohmann::json jd = nlohmann::json::array();
  for (const InstanceDiff& d : diffs) {
    nlohmann::json edits = nlohmann::json::array();
    for (const LineEdit& e : d.edits) {
      nlohmann::json je = {{"kind", std::string(to_string(e.kind))}};
      je["reference_line"] = e.reference_line ? nlohmann::json(*e.reference_line)
                                              : nlohmann::json();
      je["reference_text"] = e.reference_text;
      je["instance_line"] = e.instance_line ? nlohmann::json(*e.instance_line)
                                            : nlohmann::json();
      je["instance_text"] = e.instance_text;
      edits.push_back(std::move(je));
    }
    jd.push_back({{"instance", instance_to_json(d.instance)}, {"edits", edits}});
  }
  out["instances"] = jd;
  return out;
}

}  // namespace textproj
