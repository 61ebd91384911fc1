#include "textproj/ngram.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "textproj/error.h"
#include "textproj/kernels.h"

namespace textproj {

std::string_view to_string(Smoothing s) {
  return s == Smoothing::kNone ? "none" : "add_one";
}

Smoothing parse_smoothing(std::string_view name) {
  if (name == "none") return Smoothing::kNone;
  if (name == "add_one" || name == "add-one") return Smoothing::kAddOne;
  throw ConfigError("unknown smoothing '" + std::string(name) +
                    "' (expected none or add_one)");
}

std::uint64_t NGramModel::count(const Context& context,
                                const std::string& next) const {
  auto it = counts.find(context);
  if (it == counts.end()) return 0;
  auto jt = it->second.find(next);
  return jt == it->second.end() ? 0 : jt->second;
}

std::uint64_t NGramModel::context_total(const Context& context) const {
  auto it = counts.find(context);
  if (it == counts.end()) return 0;
  std::uint64_t total = 0;
  for (const auto& [w, c] : it->second) total += c;
  return total;
}

bool NGramModel::in_vocabulary(const std::string& token) const {
  return std::binary_search(vocabulary.begin(), vocabulary.end(), token);
}

double NGramModel::probability(const Context& context,
                               const std::string& next) const {
  const std::string event =
      in_vocabulary(next) ? next : std::string(kUnknownMarker);
  const auto c = static_cast<double>(count(context, event));
  const auto total = static_cast<double>(context_total(context));
  if (smoothing == Smoothing::kAddOne) {
    return (c + 1.0) / (total + static_cast<double>(vocabulary.size()) + 1.0);
  }
  return total == 0.0 ? 0.0 : c / total;
}

namespace {

// Context of position i in a sequence padded with n-1 start markers.
Context context_at(const std::vector<std::string>& tokens, std::size_t i,
                   std::size_t n, const NGramModel* model) {
  Context ctx;
  ctx.reserve(n - 1);
  for (std::size_t k = n - 1; k >= 1; --k) {
    if (i < k) {
      ctx.emplace_back(kStartMarker);
    } else {
      const std::string& t = tokens[i - k];
      ctx.push_back(model == nullptr || model->in_vocabulary(t)
                        ? t
                        : std::string(kUnknownMarker));
    }
  }
  return ctx;
}

}  // namespace

NGramModel train_word_model(std::span<const std::vector<std::string>> sequences,
                            std::size_t n, Smoothing smoothing) {
  if (n == 0) throw ConfigError("n-gram order must be at least 1");
  std::uint64_t total = 0;
  for (const auto& s : sequences) total += s.size();
  if (total < n) {
    throw TrainingError("cannot train a " + std::to_string(n) +
                        "-gram model on " + std::to_string(total) + " tokens");
  }

  // Map tokens to ids (0 = start marker) and count padded windows.
  std::unordered_map<std::string, std::int32_t> ids;
  std::vector<std::string> names = {std::string(kStartMarker)};
  ids.emplace(names[0], 0);
  std::vector<kernels::IdSeq> padded;
  padded.reserve(sequences.size());
  NGramModel model;
  model.n = n;
  model.smoothing = smoothing;
  model.total_tokens = total;
  for (const auto& s : sequences) {
    kernels::IdSeq seq(n - 1, 0);
    for (const std::string& t : s) {
      auto [it, inserted] = ids.try_emplace(t, static_cast<std::int32_t>(names.size()));
      if (inserted) names.push_back(t);
      seq.push_back(it->second);
    }
    if (s.size() >= n) model.window_count += s.size() - n + 1;
    padded.push_back(std::move(seq));
  }
  for (const auto& wc : kernels::count_windows(padded, n, kernels::Exec::kParallel)) {
    Context ctx;
    for (std::size_t k = 0; k + 1 < n; ++k) ctx.push_back(names[wc.window[k]]);
    model.counts[std::move(ctx)][names[wc.window.back()]] += wc.count;
  }
  model.vocabulary.assign(names.begin() + 1, names.end());
  std::sort(model.vocabulary.begin(), model.vocabulary.end());
  return model;
}

NGramModel train_word_model(std::span<const TokenStream> streams, std::size_t n,
                            Smoothing smoothing) {
  std::vector<std::vector<std::string>> sequences;
  sequences.reserve(streams.size());
  for (const TokenStream& s : streams) {
    std::vector<std::string> words;
    for (const Token& t : s.tokens) {
      if (t.is_word) words.push_back(t.normalized);
    }
    sequences.push_back(std::move(words));
  }
  return train_word_model(sequences, n, smoothing);
}

EntropyResult cross_entropy(const NGramModel& model,
                            std::span<const std::vector<std::string>> sequences) {
  EntropyResult result;
  for (const auto& s : sequences) result.tokens += s.size();
  if (result.tokens < model.n || result.tokens == 0) {
    throw ConfigError("cross-entropy needs at least " + std::to_string(model.n) +
                      " tokens (got " + std::to_string(result.tokens) + ")");
  }
  double bits = 0.0;
  for (const auto& s : sequences) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double p = model.probability(context_at(s, i, model.n, &model), s[i]);
      if (p <= 0.0) {
        ++result.zero_probability_events;
      } else {
        bits -= std::log2(p);
      }
    }
  }
  if (result.zero_probability_events > 0) {
    result.infinite = true;
    result.bits_per_token = std::numeric_limits<double>::infinity();
  } else {
    result.bits_per_token = bits / static_cast<double>(result.tokens);
  }
  return result;
}

EntropyResult cross_entropy(const NGramModel& model,
                            const std::vector<std::string>& tokens) {
  return cross_entropy(model, std::span<const std::vector<std::string>>(&tokens, 1));
}

std::vector<std::string> kept_words(const PreparedDocument& doc) {
  std::vector<std::string> words;
  const auto& tokens = doc.stream.tokens;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    if (!tokens[t].is_word) continue;
    if (!doc.skip.empty() && doc.skip[t]) continue;
    words.push_back(tokens[t].normalized);
  }
  return words;
}

nlohmann::json model_to_json(const NGramModel& model) {
  nlohmann::json contexts = nlohmann::json::array();
  for (const auto& [ctx, next] : model.counts) {
    contexts.push_back({{"context", ctx}, {"next", next}});
  }
  return {{"n", model.n},
          {"smoothing", std::string(to_string(model.smoothing))},
          {"total_tokens", model.total_tokens},
          {"window_count", model.window_count},
          {"vocabulary", model.vocabulary},
          {"counts", contexts}};
}

NGramModel model_from_json(const nlohmann::json& j) {
  NGramModel model;
  try {
    model.n = j.at("n").get<std::size_t>();
    model.smoothing = parse_smoothing(j.at("smoothing").get<std::string>());
    model.total_tokens = j.at("total_tokens").get<std::uint64_t>();
    model.window_count = j.at("window_count").get<std::uint64_t>();
    model.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
    for (const auto& c : j.at("counts")) {
      model.counts[c.at("context").get<Context>()] =
          c.at("next").get<std::map<std::string, std::uint64_t>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed n-gram model: ") + e.what());
  }
  std::sort(model.vocabulary.begin(), model.vocabulary.end());
  return model;
}

// ---------------------------------------------------------------------------

namespace {

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    const auto b = static_cast<unsigned char>(s[i]);
    std::size_t len = b < 0x80 ? 1 : (b >> 5) == 0x6 ? 2 : (b >> 4) == 0xE ? 3
                                 : (b >> 3) == 0x1E  ? 4
                                                     : 1;
    if (i + len > s.size()) len = 1;
    char32_t cp = len == 1 ? b : len == 2 ? (b & 0x1F) : len == 3 ? (b & 0x0F) : (b & 0x07);
    for (std::size_t k = 1; k < len; ++k) {
      cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

bool is_letter(char32_t c) {
  if ((c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z')) return true;
  return c >= 0xC0 && c != 0xD7 && c != 0xF7;
}

char32_t lower(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 32;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
  return c;
}

std::vector<std::u32string> letter_runs(std::string_view text) {
  std::vector<std::u32string> words;
  std::u32string cur;
  for (char32_t c : decode_utf8(text)) {
    if (is_letter(c)) {
      cur.push_back(lower(c));
    } else if (!cur.empty()) {
      words.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

std::size_t code_points(std::string_view text) {
  std::size_t n = 0;
  for (char c : text) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

kernels::RankedProfile ranked(std::vector<std::string> grams) {
  kernels::RankedProfile p;
  p.grams = std::move(grams);
  for (std::size_t r = 0; r < p.grams.size(); ++r) p.rank.emplace(p.grams[r], r);
  return p;
}

}  // namespace

std::vector<std::string> char_profile(std::string_view text, std::size_t size) {
  const auto words = letter_runs(text);
  const auto counts =
      kernels::count_char_grams(words, kMaxCharGram, kernels::Exec::kParallel);
  std::vector<std::pair<std::string, std::uint64_t>> entries(counts.begin(),
                                                             counts.end());
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (entries.size() > size) entries.resize(size);
  std::vector<std::string> grams;
  grams.reserve(entries.size());
  for (auto& [g, c] : entries) grams.push_back(std::move(g));
  return grams;
}

CategoryProfile train_char_profile(std::string_view text, std::string category,
                                   std::size_t size) {
  const std::size_t n = code_points(text);
  if (n < kMinTrainingChars) {
    throw TrainingError("profile '" + category + "' needs at least " +
                        std::to_string(kMinTrainingChars) +
                        " characters of training text (got " +
                        std::to_string(n) + ")");
  }
  return {std::move(category), char_profile(text, size)};
}

std::uint64_t out_of_place_distance(std::span<const std::string> text_profile,
                                    std::span<const std::string> category_profile,
                                    std::uint64_t penalty) {
  const kernels::RankedProfile t = ranked({text_profile.begin(), text_profile.end()});
  const kernels::RankedProfile c =
      ranked({category_profile.begin(), category_profile.end()});
  return kernels::out_of_place_matrix(std::span(&t, 1), std::span(&c, 1), penalty,
                                      kernels::Exec::kSerial)[0];
}

std::vector<Categorization> categorize_all(
    std::span<const CategoryProfile> profiles, std::span<const std::string> texts,
    std::size_t size) {
  if (profiles.empty()) throw ConfigError("categorization needs at least one profile");
  std::vector<kernels::RankedProfile> categories;
  for (const CategoryProfile& p : profiles) categories.push_back(ranked(p.grams));
  std::vector<kernels::RankedProfile> inputs;
  for (const std::string& t : texts) inputs.push_back(ranked(char_profile(t, size)));
  const auto matrix = kernels::out_of_place_matrix(inputs, categories, size,
                                                   kernels::Exec::kParallel);

  std::vector<Categorization> out(texts.size());
  for (std::size_t t = 0; t < texts.size(); ++t) {
    Categorization& c = out[t];
    for (std::size_t k = 0; k < profiles.size(); ++k) {
      c.ranking.push_back({profiles[k].category, matrix[t * profiles.size() + k]});
    }
    std::sort(c.ranking.begin(), c.ranking.end(),
              [](const CategoryScore& a, const CategoryScore& b) {
                return a.distance != b.distance ? a.distance < b.distance
                                                : a.category < b.category;
              });
    const bool all_equal = c.ranking.front().distance == c.ranking.back().distance;
    c.low_confidence = code_points(texts[t]) < kMinCategorizeChars || all_equal;
  }
  return out;
}

Categorization categorize(std::span<const CategoryProfile> profiles,
                          std::string_view text, std::size_t size) {
  const std::string owned(text);
  return categorize_all(profiles, std::span(&owned, 1), size).front();
}

nlohmann::json profile_to_json(const CategoryProfile& profile) {
  return {{"category", profile.category}, {"grams", profile.grams}};
}

CategoryProfile profile_from_json(const nlohmann::json& j) {
  try {
    return {j.at("category").get<std::string>(),
            j.at("grams").get<std::vector<std::string>>()};
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed category profile: ") + e.what());
  }
}

nlohmann::json categorization_to_json(const Categorization& c) {
  nlohmann::json ranking = nlohmann::json::array();
  for (const CategoryScore& s : c.ranking) {
    ranking.push_back({{"category", s.category}, {"distance", s.distance}});
  }
  return {{"ranking", ranking}, {"low_confidence", c.low_confidence}};
}

// ---------------------------------------------------------------------------

std::vector<SeriesPoint> frequency_series(const Corpus& corpus,
                                          std::string_view query,
                                          const TokenizerConfig& config) {
  std::vector<std::string> pattern_words;
  for (const Token& t : tokenize_text("query", query, config).tokens) {
    if (t.is_word) pattern_words.push_back(t.normalized);
  }
  if (pattern_words.empty()) throw ConfigError("frequency query has no words");

  std::unordered_map<std::string, std::int32_t> ids;
  auto id_of = [&](const std::string& w) {
    return ids.try_emplace(w, static_cast<std::int32_t>(ids.size())).first->second;
  };
  std::vector<std::int32_t> pattern;
  for (const auto& w : pattern_words) pattern.push_back(id_of(w));
  const std::size_t n = pattern.size();

  std::vector<SeriesPoint> series;
  for (const auto& [version, docs] : documents_by_version(corpus)) {
    std::vector<kernels::IdSeq> seqs;
    SeriesPoint point;
    point.version = version;
    for (const Document* d : docs) {
      kernels::IdSeq seq;
      for (const Token& t : tokenize(*d, config).tokens) {
        if (t.is_word) seq.push_back(id_of(t.normalized));
      }
      if (seq.size() >= n) point.windows += seq.size() - n + 1;
      seqs.push_back(std::move(seq));
    }
    for (std::uint64_t c :
         kernels::count_pattern(seqs, pattern, kernels::Exec::kParallel)) {
      point.occurrences += c;
    }
    point.frequency = point.windows == 0
                          ? 0.0
                          : static_cast<double>(point.occurrences) /
                                static_cast<double>(point.windows);
    series.push_back(std::move(point));
  }
  return series;
}

nlohmann::json series_to_json(std::string_view query,
                              std::span<const SeriesPoint> series) {
  nlohmann::json points = nlohmann::json::array();
  for (const SeriesPoint& p : series) {
    points.push_back({{"version", p.version},
                      {"occurrences", p.occurrences},
                      {"windows", p.windows},
                      {"frequency", p.frequency}});
  }
  return {{"query", std::string(query)}, {"series", points}};
}

}  // namespace textproj
