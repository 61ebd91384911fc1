#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "support/test_support.h"
#include "textproj/error.h"
#include "textproj/ngram.h"

using namespace textproj;
using textproj::testing::make_corpus;

namespace {

std::vector<std::string> split(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Document versioned(std::string id, std::string version, std::string text) {
  Document d;
  d.id = std::move(id);
  d.path = d.id;
  d.version_label = std::move(version);
  d.text = std::move(text);
  return d;
}

}  // namespace

TEST(WordModel, CountsOfRepeatedToken) {
  const std::vector<std::vector<std::string>> seqs = {split("a a a a")};
  const NGramModel m = train_word_model(seqs, 3, Smoothing::kNone);
  EXPECT_EQ(m.total_tokens, 4u);
  EXPECT_EQ(m.window_count, 2u);
  EXPECT_EQ(m.count({"a", "a"}, "a"), 2u);
  EXPECT_EQ(m.count({"<s>", "a"}, "a"), 1u);
  EXPECT_EQ(m.count({"<s>", "<s>"}, "a"), 1u);
  EXPECT_EQ(m.vocabulary, std::vector<std::string>{"a"});
  EXPECT_EQ(cross_entropy(m, seqs).bits_per_token, 0.0);
}

TEST(WordModel, AlternatingBigrams) {
  const std::vector<std::vector<std::string>> seqs = {split("a b a b")};
  const NGramModel m = train_word_model(seqs, 2, Smoothing::kAddOne);
  EXPECT_EQ(m.count({"a"}, "b"), 2u);
  EXPECT_EQ(m.count({"b"}, "a"), 1u);
  EXPECT_EQ(m.count({"b"}, "b"), 0u);
  EXPECT_EQ(m.context_total({"a"}), 2u);
  EXPECT_EQ(m.event_space(), 3u);
  EXPECT_DOUBLE_EQ(m.probability({"a"}, "b"), 3.0 / 5.0);
  EXPECT_DOUBLE_EQ(m.probability({"a"}, "zzz"), 1.0 / 5.0);
  EXPECT_DOUBLE_EQ(m.probability({"<s>"}, "a"), 2.0 / 4.0);
  const auto e = cross_entropy(m, split("a b"));
  EXPECT_NEAR(e.bits_per_token, (1.0 - std::log2(0.6)) / 2.0, 1e-12);
  EXPECT_EQ(e.tokens, 2u);
}

TEST(WordModel, UnsmoothedUnseenEventIsInfinite) {
  const std::vector<std::vector<std::string>> seqs = {split("a b a b")};
  const NGramModel m = train_word_model(seqs, 2, Smoothing::kNone);
  const auto e = cross_entropy(m, split("b b"));
  EXPECT_TRUE(e.infinite);
  EXPECT_TRUE(std::isinf(e.bits_per_token));
  EXPECT_EQ(e.zero_probability_events, 2u);
}

TEST(WordModel, InvalidInputs) {
  const std::vector<std::vector<std::string>> seqs = {split("a b")};
  EXPECT_THROW(train_word_model(seqs, 0, Smoothing::kAddOne), ConfigError);
  EXPECT_THROW(train_word_model(seqs, 3, Smoothing::kAddOne), TrainingError);
  const NGramModel m = train_word_model(seqs, 2, Smoothing::kAddOne);
  EXPECT_THROW(cross_entropy(m, split("a")), ConfigError);
  EXPECT_THROW(parse_smoothing("kneser"), ConfigError);
  EXPECT_EQ(parse_smoothing(to_string(Smoothing::kAddOne)), Smoothing::kAddOne);
}

TEST(WordModelProperty, ProbabilitiesSumToOne) {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 30; ++round) {
    const auto seqs = std::vector<std::vector<std::string>>{
        split(textproj::testing::random_symbol_text(rng, 80, 6))};
    for (const Smoothing s : {Smoothing::kAddOne, Smoothing::kNone}) {
      const NGramModel m = train_word_model(seqs, 3, s);
      for (const auto& [context, nexts] : m.counts) {
        double total = m.probability(context, std::string(kUnknownMarker));
        for (const std::string& w : m.vocabulary) total += m.probability(context, w);
        ASSERT_NEAR(total, 1.0, 1e-9);
      }
    }
  }
}

TEST(WordModelProperty, WindowCountAndDuplicationInvariance) {
  std::mt19937_64 rng(22);
  for (int round = 0; round < 30; ++round) {
    std::vector<std::vector<std::string>> seqs;
    std::size_t expected_windows = 0;
    for (int d = 0; d < 3; ++d) {
      seqs.push_back(split(textproj::testing::random_symbol_text(rng, 2 + rng() % 30, 4)));
      expected_windows += seqs.back().size() >= 3 ? seqs.back().size() - 2 : 0;
    }
    const NGramModel m = train_word_model(seqs, 3, Smoothing::kAddOne);
    ASSERT_EQ(m.window_count, expected_windows);
    const auto eval = std::vector<std::vector<std::string>>{
        split(textproj::testing::random_symbol_text(rng, 40, 4))};
    auto doubled = eval;
    doubled.push_back(eval[0]);
    ASSERT_NEAR(cross_entropy(m, eval).bits_per_token, cross_entropy(m, doubled).bits_per_token, 1e-12);
    ASSERT_EQ(model_to_json(model_from_json(model_to_json(m))), model_to_json(m));
  }
}

TEST(Naturalness, HeldOutTextBeatsShuffledText) {
  const Corpus rfc = textproj::testing::rfc_corpus();
  const auto docs = prepare_corpus(rfc, {}, textproj::testing::rfc_ignore_patterns());
  std::vector<std::vector<std::string>> words;
  for (const auto& d : docs) words.push_back(kept_words(d));
  std::mt19937_64 rng(7);
  double weighted_margin = 0.0;
  std::size_t tokens = 0;
  for (std::size_t held = 0; held < words.size(); ++held) {
    std::vector<std::vector<std::string>> train;
    for (std::size_t d = 0; d < words.size(); ++d) {
      if (d != held) train.push_back(words[d]);
    }
    const NGramModel m = train_word_model(train, 3, Smoothing::kAddOne);
    auto shuffled = words[held];
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const double natural = cross_entropy(m, words[held]).bits_per_token;
    const double scrambled = cross_entropy(m, shuffled).bits_per_token;
    EXPECT_GT(scrambled, natural) << docs[held].stream.document_id;
    weighted_margin += (scrambled - natural) * static_cast<double>(words[held].size());
    tokens += words[held].size();
  }
  EXPECT_GE(weighted_margin / static_cast<double>(tokens), 0.5);
}

TEST(CharProfile, PaddedGramsOfOneWord) {
  const auto p = char_profile("The");
  ASSERT_EQ(p.size(), 14u);
  EXPECT_EQ(p[0], " ");
  for (const char* g : {" th", "the", "he ", " the", "the ", " the "}) {
    EXPECT_NE(std::find(p.begin(), p.end(), g), p.end()) << g;
  }
  EXPECT_TRUE(std::is_sorted(p.begin() + 1, p.end()));
  EXPECT_EQ(char_profile("the the the", 3).size(), 3u);
}

TEST(CharProfile, ShortTrainingTextIsRejected) {
  EXPECT_THROW(train_char_profile(std::string(499, 'a'), "x"), TrainingError);
  EXPECT_NO_THROW(train_char_profile(std::string(500, 'a'), "x"));
}

TEST(Categorize, OutOfPlaceZeroOnlyForIdenticalProfiles) {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 50; ++round) {
    const auto a = char_profile(textproj::testing::random_symbol_text(rng, 200, 8));
    const auto b = char_profile(textproj::testing::random_symbol_text(rng, 200, 8));
    ASSERT_EQ(out_of_place_distance(a, a, kProfileSize), 0u);
    ASSERT_EQ(out_of_place_distance(a, b, kProfileSize) == 0, a == b);
  }
  const std::vector<std::string> letters = {"a", "b"};
  const std::vector<std::string> other = {"x", "y"};
  EXPECT_EQ(out_of_place_distance(letters, other, 300), 600u);
}

TEST(Categorize, LanguagesOfHeldOutExcerpts) {
  const auto dir = textproj::testing::fixture_dir() / "lang";
  const std::vector<CategoryProfile> profiles = {
      train_char_profile(slurp(dir / "train" / "english.txt"), "english"),
      train_char_profile(slurp(dir / "train" / "german.txt"), "german")};
  int correct = 0, total = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir / "heldout")) {
    const std::string expected = entry.path().filename().string().starts_with("de_") ? "german" : "english";
    const Categorization c = categorize(profiles, slurp(entry.path()));
    correct += c.ranking.front().category == expected ? 1 : 0;
    ++total;
  }
  EXPECT_EQ(total, 20);
  EXPECT_GE(static_cast<double>(correct) / total, 0.95);
  const Corpus rfc = textproj::testing::rfc_corpus();
  for (const Document& d : rfc.documents()) {
    EXPECT_EQ(categorize(profiles, d.text).ranking.front().category, "english") << d.id;
  }
}

TEST(Categorize, LowConfidenceAndErrors) {
  const std::string text(600, 'a');
  const std::vector<CategoryProfile> same = {train_char_profile(text, "one"), train_char_profile(text, "two")};
  const Categorization tie = categorize(same, "some words of text that are long enough to pass fifty chars");
  EXPECT_TRUE(tie.low_confidence);
  EXPECT_EQ(tie.ranking[0].category, "one");
  const std::vector<CategoryProfile> one = {train_char_profile(text, "one"),
                                            train_char_profile(std::string(600, 'b'), "bee")};
  EXPECT_TRUE(categorize(one, "short").low_confidence);
  EXPECT_FALSE(categorize(one, std::string(60, 'a')).low_confidence);
  EXPECT_THROW(categorize({}, "text"), ConfigError);
}

TEST(Series, AbsentQueryIsZeroAndUniformTextIsOne) {
  const Corpus c({versioned("a", "1.0", "request request request"), versioned("b", "2.0", "response")});
  const auto series = frequency_series(c, "request");
  ASSERT_EQ(series.size(), 2u);
  EXPECT_EQ(series[0].version, "1.0");
  EXPECT_DOUBLE_EQ(series[0].frequency, 1.0);
  EXPECT_EQ(series[1].occurrences, 0u);
  EXPECT_DOUBLE_EQ(series[1].frequency, 0.0);
  for (const auto& p : frequency_series(c, "absent word")) EXPECT_EQ(p.frequency, 0.0);
  EXPECT_THROW(frequency_series(c, "  "), ConfigError);
  EXPECT_THROW(frequency_series(make_corpus({{"x", "request"}}), "request"), ConfigError);
}

TEST(Series, RequestCountsPerVersionByHand) {
  const Corpus c({versioned("a", "1.1", "A request and a Request."),
                  versioned("b", "1.0", "the request line"),
                  versioned("c", "1.1", "no match here")});
  const auto series = frequency_series(c, "request");
  ASSERT_EQ(series.size(), 2u);
  EXPECT_EQ(series[0].version, "1.0");
  EXPECT_EQ(series[0].occurrences, 1u);
  EXPECT_EQ(series[0].windows, 3u);
  EXPECT_EQ(series[1].version, "1.1");
  EXPECT_EQ(series[1].occurrences, 2u);
  EXPECT_EQ(series[1].windows, 8u);
  EXPECT_DOUBLE_EQ(series[1].frequency, 0.25);
}
