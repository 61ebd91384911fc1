#include "textproj/topics.h"

#include <algorithm>
#include <random>
#include <set>

#include "textproj/error.h"

namespace textproj {

const std::vector<std::string>& default_stopwords() {
  static const std::vector<std::string> words = {
      "a", "about", "above", "after", "again", "against", "all", "also", "am",
      "an", "and", "any", "are", "as", "at", "be", "because", "been", "before",
      "being", "below", "between", "both", "but", "by", "can", "could", "did",
      "do", "does", "doing", "down", "during", "each", "either", "few", "for",
      "from", "further", "had", "has", "have", "having", "he", "her", "here",
      "hers", "herself", "him", "himself", "his", "how", "however", "i", "if",
      "in", "into", "is", "it", "its", "itself", "just", "may", "me", "might",
      "more", "most", "must", "my", "myself", "no", "nor", "not", "now", "of",
      "off", "on", "once", "only", "or", "other", "our", "ours", "ourselves",
      "out", "over", "own", "same", "shall", "she", "should", "so", "some",
      "such", "than", "that", "the", "their", "theirs", "them", "themselves",
      "then", "there", "these", "they", "this", "those", "through", "thus",
      "to", "too", "under", "until", "up", "upon", "us", "very", "was", "we",
      "were", "what", "when", "where", "whether", "which", "while", "who",
      "whom", "why", "will", "with", "within", "without", "would", "you",
      "your", "yours", "yourself", "yourselves"};
  return words;
}

std::vector<std::string> read_stopword_file(const std::filesystem::path& path) {
  std::vector<std::string> words;
  for (const Token& t : tokenize_text("stopwords", read_file(path)).tokens) {
    words.push_back(t.normalized);
  }
  return words;
}

std::vector<std::string> topic_words(const Document& doc,
                                     std::span<const std::string> stopwords,
                                     std::size_t min_token_length) {
  const std::set<std::string> stop(stopwords.begin(), stopwords.end());
  std::vector<std::string> out;
  for (const Token& t : tokenize(doc).tokens) {
    const std::string& w = t.normalized;
    if (w.size() < min_token_length) continue;
    if (std::all_of(w.begin(), w.end(),
                    [](char c) { return c >= '0' && c <= '9'; })) {
      continue;
    }
    if (stop.count(w) != 0) continue;
    out.push_back(w);
  }
  return out;
}

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TopicModel fit_lda(std::span<const TopicDocument> documents,
                   const LdaConfig& config, const SweepCallback& on_sweep) {
  if (config.topics == 0) throw ConfigError("topic count must be at least 1");
  if (config.iterations == 0) throw ConfigError("iterations must be at least 1");
  if (config.beta <= 0.0) throw ConfigError("beta must be positive");
  const std::size_t K = config.topics;
  const double alpha = config.alpha.value_or(50.0 / static_cast<double>(K));
  if (alpha <= 0.0) throw ConfigError("alpha must be positive");

  TopicModel m;
  m.topics = K;
  m.alpha = alpha;
  m.beta = config.beta;
  m.seed = config.seed;
  m.iterations = config.iterations;

  std::set<std::string> vocab;
  std::size_t total = 0;
  for (const TopicDocument& d : documents) {
    vocab.insert(d.words.begin(), d.words.end());
    total += d.words.size();
  }
  if (vocab.empty()) {
    throw TrainingError("topic model vocabulary is empty after filtering");
  }
  if (K > total) {
    throw TrainingError("more topics (" + std::to_string(K) + ") than tokens (" +
                        std::to_string(total) + ")");
  }
  m.vocabulary.assign(vocab.begin(), vocab.end());
  const std::size_t V = m.vocabulary.size();
  const std::size_t D = documents.size();

  m.topic_word.assign(K * V, 0);
  m.doc_topic.assign(D * K, 0);
  m.topic_total.assign(K, 0);
  m.words.resize(D);
  m.assignments.resize(D);

  std::mt19937_64 rng(config.seed);
  for (std::size_t d = 0; d < D; ++d) {
    m.document_ids.push_back(documents[d].id);
    m.document_lengths.push_back(documents[d].words.size());
    for (const std::string& w : documents[d].words) {
      const auto wid = static_cast<std::int32_t>(
          std::lower_bound(m.vocabulary.begin(), m.vocabulary.end(), w) -
          m.vocabulary.begin());
      const auto z = static_cast<std::int32_t>(
          std::min(K - 1, static_cast<std::size_t>(uniform01(rng) * K)));
      m.words[d].push_back(wid);
      m.assignments[d].push_back(z);
      ++m.topic_word[z * V + wid];
      ++m.doc_topic[d * K + z];
      ++m.topic_total[z];
    }
  }

  const double vbeta = static_cast<double>(V) * m.beta;
  std::vector<double> weights(K);
  for (std::size_t it = 1; it <= config.iterations; ++it) {
    for (std::size_t d = 0; d < D; ++d) {
      auto& z_d = m.assignments[d];
      const auto& w_d = m.words[d];
      std::uint32_t* ndk = &m.doc_topic[d * K];
      for (std::size_t i = 0; i < w_d.size(); ++i) {
        const std::size_t w = w_d[i];
        std::size_t z = z_d[i];
        --m.topic_word[z * V + w];
        --ndk[z];
        --m.topic_total[z];

        double sum = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
          sum += (ndk[k] + alpha) * (m.topic_word[k * V + w] + m.beta) /
                 (m.topic_total[k] + vbeta);
          weights[k] = sum;
        }
        const double u = uniform01(rng) * sum;
        z = static_cast<std::size_t>(
            std::upper_bound(weights.begin(), weights.end(), u) - weights.begin());
        if (z >= K) z = K - 1;

        z_d[i] = static_cast<std::int32_t>(z);
        ++m.topic_word[z * V + w];
        ++ndk[z];
        ++m.topic_total[z];
      }
    }
    if (on_sweep) on_sweep(it, m);
  }
  return m;
}

TopicModel fit_lda(const Corpus& corpus, const LdaConfig& config,
                   const SweepCallback& on_sweep) {
  const auto& stop =
      config.stopwords.empty() ? default_stopwords() : config.stopwords;
  std::vector<TopicDocument> docs;
  for (const Document& d : corpus.documents()) {
    docs.push_back({d.id, topic_words(d, stop, config.min_token_length)});
  }
  return fit_lda(docs, config, on_sweep);
}

std::string check_counts(const TopicModel& m) {
  const std::size_t K = m.topics, V = m.vocabulary.size();
  for (std::size_t d = 0; d < m.document_ids.size(); ++d) {
    std::uint64_t sum = 0;
    for (std::size_t k = 0; k < K; ++k) sum += m.n_dk(d, k);
    if (sum != m.document_lengths[d]) {
      return "document '" + m.document_ids[d] + "' topic counts sum to " +
             std::to_string(sum) + ", length is " +
             std::to_string(m.document_lengths[d]);
    }
  }
  for (std::size_t k = 0; k < K; ++k) {
    std::uint64_t sum = 0;
    for (std::size_t w = 0; w < V; ++w) sum += m.n_kw(k, w);
    if (sum != m.topic_total[k]) {
      return "topic " + std::to_string(k) + " word counts sum to " +
             std::to_string(sum) + ", total is " + std::to_string(m.topic_total[k]);
    }
  }
  if (!m.assignments.empty()) {
    std::vector<std::uint32_t> tw(K * V, 0), dt(m.document_ids.size() * K, 0);
    for (std::size_t d = 0; d < m.assignments.size(); ++d) {
      for (std::size_t i = 0; i < m.assignments[d].size(); ++i) {
        ++tw[m.assignments[d][i] * V + m.words[d][i]];
        ++dt[d * K + m.assignments[d][i]];
      }
    }
    if (tw != m.topic_word) return "topic-word counts disagree with assignments";
    if (dt != m.doc_topic) return "document-topic counts disagree with assignments";
  }
  return {};
}

std::vector<WeightedWord> top_words(const TopicModel& m, std::size_t topic,
                                    std::size_t k) {
  if (topic >= m.topics) {
    throw LookupError("topic " + std::to_string(topic) + " out of range (K = " +
                      std::to_string(m.topics) + ")");
  }
  const std::size_t V = m.vocabulary.size();
  const double denom = m.topic_total[topic] + static_cast<double>(V) * m.beta;
  std::vector<WeightedWord> words;
  words.reserve(V);
  for (std::size_t w = 0; w < V; ++w) {
    words.push_back({m.vocabulary[w], (m.n_kw(topic, w) + m.beta) / denom});
  }
  // Equal counts give bit-identical probabilities, so ties compare exactly.
  std::stable_sort(words.begin(), words.end(),
                   [](const WeightedWord& a, const WeightedWord& b) {
                     return a.probability > b.probability;
                   });
  if (words.size() > k) words.resize(k);
  return words;
}

std::vector<double> doc_topics(const TopicModel& m, std::string_view document_id) {
  auto it = std::find(m.document_ids.begin(), m.document_ids.end(), document_id);
  if (it == m.document_ids.end()) {
    throw LookupError("document '" + std::string(document_id) +
                      "' is not part of the topic model");
  }
  const std::size_t d = static_cast<std::size_t>(it - m.document_ids.begin());
  const double denom =
      static_cast<double>(m.document_lengths[d]) + static_cast<double>(m.topics) * m.alpha;
  std::vector<double> mix(m.topics);
  for (std::size_t k = 0; k < m.topics; ++k) mix[k] = (m.n_dk(d, k) + m.alpha) / denom;
  return mix;
}

std::vector<TopicEdge> topic_network(const TopicModel& m, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ConfigError("topic network threshold must lie in [0, 1]");
  }
  std::vector<TopicEdge> edges;
  for (const std::string& id : m.document_ids) {
    const auto mix = doc_topics(m, id);
    for (std::size_t k = 0; k < mix.size(); ++k) {
      if (mix[k] >= threshold) edges.push_back({id, k, mix[k]});
    }
  }
  return edges;
}

nlohmann::json topic_model_to_json(const TopicModel& m) {
  nlohmann::json topic_word = nlohmann::json::array();
  for (std::size_t k = 0; k < m.topics; ++k) {
    topic_word.push_back(std::vector<std::uint32_t>(
        m.topic_word.begin() + k * m.vocabulary.size(),
        m.topic_word.begin() + (k + 1) * m.vocabulary.size()));
  }
  nlohmann::json doc_topic = nlohmann::json::array();
  for (std::size_t d = 0; d < m.document_ids.size(); ++d) {
    doc_topic.push_back(std::vector<std::uint32_t>(
        m.doc_topic.begin() + d * m.topics, m.doc_topic.begin() + (d + 1) * m.topics));
  }
  return {{"topics", m.topics},
          {"alpha", m.alpha},
          {"beta", m.beta},
          {"seed", m.seed},
          {"iterations", m.iterations},
          {"vocabulary", m.vocabulary},
          {"document_ids", m.document_ids},
          {"document_lengths", m.document_lengths},
          {"topic_word", topic_word},
          {"doc_topic", doc_topic}};
}

TopicModel topic_model_from_json(const nlohmann::json& j) {
  TopicModel m;
  try {
    m.topics = j.at("topics").get<std::size_t>();
    m.alpha = j.at("alpha").get<double>();
    m.beta = j.at("beta").get<double>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.iterations = j.at("iterations").get<std::size_t>();
    m.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
    m.document_ids = j.at("document_ids").get<std::vector<std::string>>();
    m.document_lengths = j.at("document_lengths").get<std::vector<std::size_t>>();
    for (const auto& row : j.at("topic_word")) {
      const auto r = row.get<std::vector<std::uint32_t>>();
      if (r.size() != m.vocabulary.size()) throw ConfigError("topic_word row size");
      m.topic_word.insert(m.topic_word.end(), r.begin(), r.end());
    }
    for (const auto& row : j.at("doc_topic")) {
      const auto r = row.get<std::vector<std::uint32_t>>();
      if (r.size() != m.topics) throw ConfigError("doc_topic row size");
      m.doc_topic.insert(m.doc_topic.end(), r.begin(), r.end());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed topic model: ") + e.what());
  }
  if (m.topic_word.size() != m.topics * m.vocabulary.size() ||
      m.doc_topic.size() != m.document_ids.size() * m.topics ||
      m.document_lengths.size() != m.document_ids.size()) {
    throw ConfigError("malformed topic model: matrix shapes disagree");
  }
  m.topic_total.assign(m.topics, 0);
  for (std::size_t k = 0; k < m.topics; ++k) {
    for (std::size_t w = 0; w < m.vocabulary.size(); ++w) m.topic_total[k] += m.n_kw(k, w);
  }
  return m;
}

nlohmann::json topic_network_to_json(std::span<const TopicEdge> edges) {
  nlohmann::json out = nlohmann::json::array();
  for (const TopicEdge& e : edges) {
    out.push_back({{"document_id", e.document_id}, {"topic", e.topic}, {"weight", e.weight}});
  }
  return out;
}

}  // namespace textproj
