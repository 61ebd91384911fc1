#ifndef TEXTPROJ_NGRAM_H_
#define TEXTPROJ_NGRAM_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "textproj/corpus.h"

namespace textproj {

inline constexpr std::string_view kStartMarker = "<s>";
inline constexpr std::string_view kUnknownMarker = "<unk>";

enum class Smoothing { kNone, kAddOne };

std::string_view to_string(Smoothing s);
Smoothing parse_smoothing(std::string_view name);

using Context = std::vector<std::string>;

// Word-level n-gram counts. Every sequence is padded on the left with n-1
// start markers, so each token is counted once as the successor of its
// (possibly padded) context.
struct NGramModel {
  std::size_t n = 1;
  Smoothing smoothing = Smoothing::kAddOne;
  std::map<Context, std::map<std::string, std::uint64_t>> counts;
  std::vector<std::string> vocabulary;  // observed tokens, sorted
  std::uint64_t total_tokens = 0;
  std::uint64_t window_count = 0;  // unpadded windows of length n

  std::uint64_t count(const Context& context, const std::string& next) const;
  std::uint64_t context_total(const Context& context) const;
  bool in_vocabulary(const std::string& token) const;
  // Size of the event space: observed tokens plus the unknown marker.
  std::size_t event_space() const { return vocabulary.size() + 1; }

  // P(next | context); unknown tokens are mapped to the unknown marker.
  // Without smoothing unseen events have probability 0.
  double probability(const Context& context, const std::string& next) const;
};

// Throws ConfigError for n == 0 and TrainingError when the combined token
// count is below n.
NGramModel train_word_model(std::span<const std::vector<std::string>> sequences,
                            std::size_t n, Smoothing smoothing);
NGramModel train_word_model(std::span<const TokenStream> streams, std::size_t n,
                            Smoothing smoothing);

struct EntropyResult {
  double bits_per_token = 0.0;  // +inf when an event had probability 0
  bool infinite = false;
  std::size_t tokens = 0;
  std::size_t zero_probability_events = 0;
};

// Average of -log2 P(token | context) over every token of every sequence,
// each sequence padded like in training. Throws ConfigError when the
// evaluation holds fewer than n tokens.
EntropyResult cross_entropy(const NGramModel& model,
                            std::span<const std::vector<std::string>> sequences);
EntropyResult cross_entropy(const NGramModel& model,
                            const std::vector<std::string>& tokens);

// Normalized word tokens of a prepared document that are not ignored.
std::vector<std::string> kept_words(const PreparedDocument& doc);

nlohmann::json model_to_json(const NGramModel& model);
NGramModel model_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Character profiles
// ---------------------------------------------------------------------------

inline constexpr std::size_t kProfileSize = 300;
inline constexpr std::size_t kMaxCharGram = 5;
inline constexpr std::size_t kMinTrainingChars = 500;
inline constexpr std::size_t kMinCategorizeChars = 50;

struct CategoryProfile {
  std::string category;
  std::vector<std::string> grams;  // index = rank
};

// Ranked 1..5-grams of code points over the lowercased letter runs of the
// text, each run padded with one space on either side. Frequency descending,
// ties in byte order; at most `size` entries.
std::vector<std::string> char_profile(std::string_view text,
                                      std::size_t size = kProfileSize);

// Throws TrainingError when the text has fewer than 500 code points.
CategoryProfile train_char_profile(std::string_view text, std::string category,
                                   std::size_t size = kProfileSize);

struct CategoryScore {
  std::string category;
  std::uint64_t distance = 0;
};

struct Categorization {
  std::vector<CategoryScore> ranking;  // ascending distance, then name
  // Set when the text has fewer than 50 code points or every category is at
  // the same distance.
  bool low_confidence = false;
};

// Out-of-place distance of the text's profile to each category; grams the
// category lacks cost `size`. Throws ConfigError without profiles.
Categorization categorize(std::span<const CategoryProfile> profiles,
                          std::string_view text,
                          std::size_t size = kProfileSize);
std::vector<Categorization> categorize_all(
    std::span<const CategoryProfile> profiles,
    std::span<const std::string> texts, std::size_t size = kProfileSize);

std::uint64_t out_of_place_distance(std::span<const std::string> text_profile,
                                    std::span<const std::string> category_profile,
                                    std::uint64_t penalty);

nlohmann::json profile_to_json(const CategoryProfile& profile);
CategoryProfile profile_from_json(const nlohmann::json& j);
nlohmann::json categorization_to_json(const Categorization& c);

// ---------------------------------------------------------------------------
// Frequency series
// ---------------------------------------------------------------------------

struct SeriesPoint {
  std::string version;
  std::uint64_t occurrences = 0;
  std::uint64_t windows = 0;  // windows of the query length, all documents
  double frequency = 0.0;     // occurrences / windows, 0 without windows
};

// Relative frequency of the query n-gram per version, versions in ascending
// order. The query is tokenized like the documents. Throws ConfigError for
// an empty query or a document without version label.
std::vector<SeriesPoint> frequency_series(const Corpus& corpus,
                                          std::string_view query,
                                          const TokenizerConfig& config = {});

nlohmann::json series_to_json(std::string_view query,
                              std::span<const SeriesPoint> series);

}  // namespace textproj

#endif  // TEXTPROJ_NGRAM_H_
