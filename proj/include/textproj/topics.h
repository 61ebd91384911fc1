#ifndef TEXTPROJ_TOPICS_H_
#define TEXTPROJ_TOPICS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "textproj/corpus.h"

namespace textproj {

struct LdaConfig {
  std::size_t topics = 10;
  std::optional<double> alpha;  // defaults to 50 / topics
  double beta = 0.01;
  std::size_t iterations = 1000;
  std::uint64_t seed = 0;
  std::vector<std::string> stopwords = {};  // empty: bundled English list
  std::size_t min_token_length = 3;
};

struct TopicDocument {
  std::string id;
  std::vector<std::string> words;
};

// State of a collapsed Gibbs sampler after its last sweep. Matrices are
// dense and row-major.
struct TopicModel {
  std::size_t topics = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  std::vector<std::string> vocabulary;  // sorted
  std::vector<std::string> document_ids;
  std::vector<std::size_t> document_lengths;
  std::vector<std::uint32_t> topic_word;   // topics x vocabulary
  std::vector<std::uint32_t> doc_topic;    // documents x topics
  std::vector<std::uint32_t> topic_total;  // per topic
  // Word ids and topic assignments per document; empty after loading from
  // JSON.
  std::vector<std::vector<std::int32_t>> words;
  std::vector<std::vector<std::int32_t>> assignments;

  std::uint32_t n_kw(std::size_t k, std::size_t w) const {
    return topic_word[k * vocabulary.size() + w];
  }
  std::uint32_t n_dk(std::size_t d, std::size_t k) const {
    return doc_topic[d * topics + k];
  }
};

const std::vector<std::string>& default_stopwords();
std::vector<std::string> read_stopword_file(const std::filesystem::path& path);

// Lowercased word tokens that survive stop-word, length and number filters.
std::vector<std::string> topic_words(const Document& doc,
                                     std::span<const std::string> stopwords,
                                     std::size_t min_token_length = 3);

// Called after every completed sweep with its 1-based number.
using SweepCallback = std::function<void(std::size_t, const TopicModel&)>;

// Throws ConfigError for topics or iterations of 0, TrainingError for an
// empty vocabulary or more topics than tokens.
TopicModel fit_lda(std::span<const TopicDocument> documents,
                   const LdaConfig& config, const SweepCallback& on_sweep = {});
TopicModel fit_lda(const Corpus& corpus, const LdaConfig& config,
                   const SweepCallback& on_sweep = {});

// Empty when the sampler state is consistent, else a description of the
// first inconsistency.
std::string check_counts(const TopicModel& model);

struct WeightedWord {
  std::string word;
  double probability = 0.0;
};

// Words by (n_kw + beta) / (n_k + V beta) descending, ties by word. Throws
// LookupError for an unknown topic.
std::vector<WeightedWord> top_words(const TopicModel& model, std::size_t topic,
                                    std::size_t k);

// (n_dk + alpha) / (len_d + K alpha). Throws LookupError for an unknown
// document.
std::vector<double> doc_topics(const TopicModel& model,
                               std::string_view document_id);

struct TopicEdge {
  std::string document_id;
  std::size_t topic = 0;
  double weight = 0.0;
};

// Document-topic edges whose mixture weight is at least the threshold, in
// document then topic order. Throws ConfigError outside [0, 1].
std::vector<TopicEdge> topic_network(const TopicModel& model, double threshold);

nlohmann::json topic_model_to_json(const TopicModel& model);
TopicModel topic_model_from_json(const nlohmann::json& j);
nlohmann::json topic_network_to_json(std::span<const TopicEdge> edges);

}  // namespace textproj

#endif  // TEXTPROJ_TOPICS_H_
