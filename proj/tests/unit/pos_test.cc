#include <gtest/gtest.h>

#include <random>

#include "support/test_support.h"
#include "textproj/pos.h"

using namespace textproj;

namespace {

const BaselineTagger kTagger;

constexpr const char* kFig5 =
    "Most HTTP communication is initiated by a user agent and consists of a request to be "
    "applied to a resource on some origin server.";

std::vector<std::string> tags_of(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& t : tag_text(text, kTagger)) out.push_back(t.tag);
  return out;
}

}  // namespace

TEST(Tagger, ClosedClassAndSuffixRules) {
  EXPECT_EQ(tags_of("The server stores the message ."),
            (std::vector<std::string>{"DT", "NN", "VBZ", "DT", "NN", "."}));
  EXPECT_EQ(tags_of("Comments can be included"),
            (std::vector<std::string>{"NNS", "MD", "VB", "VBN"}));
  EXPECT_EQ(tags_of("quickly")[0], "RB");
  EXPECT_EQ(tags_of("the configuration")[1], "NN");
  EXPECT_EQ(tags_of("a reliable stream")[1], "JJ");
  EXPECT_EQ(tags_of("send 200 bytes")[1], "CD");
  EXPECT_EQ(tags_of("uses IMAP")[1], "NNP");
}

TEST(TaggerProperty, OnePennTagPerToken) {
  const Corpus rfc = textproj::testing::rfc_corpus();
  for (const Document& d : rfc.documents()) {
    for (const TaggedSentence& s : tag_document(d, kTagger)) {
      ASSERT_EQ(s.tokens.size(), s.sentence.tokens.size());
      for (const TaggedToken& t : s.tokens) ASSERT_TRUE(is_penn_tag(t.tag)) << t.tag;
    }
  }
  EXPECT_FALSE(is_penn_tag("XYZ"));
  EXPECT_EQ(penn_tagset().size(), std::set<std::string>(penn_tagset().begin(), penn_tagset().end()).size());
}

TEST(Sentences, SplitsAtTerminatorsBlankLinesAndEnd) {
  const std::string text = "First one. Second one? Third e.g. Continued here!\n\nAfter blank\ncontinues";
  const auto s = split_sentences("d", text);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(text.substr(s[0].start, s[0].end - s[0].start), "First one.");
  EXPECT_EQ(text.substr(s[1].start, s[1].end - s[1].start), "Second one?");
  EXPECT_EQ(text.substr(s[2].start, s[2].end - s[2].start), "Third e.g. Continued here!");
  EXPECT_EQ(text.substr(s[3].start, s[3].end - s[3].start), "After blank\ncontinues");
  EXPECT_TRUE(split_sentences("d", "").empty());
  EXPECT_EQ(split_sentences("d", "version 1.1 is here").size(), 1u);
}

TEST(Terms, NounRunsWithQualifiers) {
  const auto tagged = tag_text("The reliable, additional data stream contains mail.", kTagger);
  const auto terms = extract_terms(tagged);
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[0].text, "data stream");
  EXPECT_EQ(terms[0].qualifiers, (std::vector<std::string>{"reliable", "additional"}));
  EXPECT_EQ(terms[1].text, "mail");
  EXPECT_TRUE(terms[1].qualifiers.empty());
}

TEST(ER, FiveEntitiesAndFourRelationshipsOfHttpSentence) {
  const ERGraph g = extract_er(tag_text(kFig5, kTagger));
  EXPECT_EQ(g.entities, (std::vector<std::string>{"HTTP communication", "user agent", "request",
                                                  "resource", "origin server"}));
  ASSERT_EQ(g.relationships.size(), 4u);
  std::vector<std::string> labels;
  for (const auto& r : g.relationships) labels.push_back(r.label);
  EXPECT_EQ(labels, (std::vector<std::string>{"is initiated by", "consists of", "to be applied to", "on"}));
  EXPECT_EQ(g.relationships[0].from, "HTTP communication");
  EXPECT_EQ(g.relationships[0].to, "user agent");
  EXPECT_EQ(g.relationships[3].to, "origin server");
  const std::string dot = er_to_dot(g);
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("\"is initiated by\""), std::string::npos);
}

TEST(ER, MinimalAndHandDerivedSentences) {
  const ERGraph minimal = extract_er(tag_text("Server stores message", kTagger));
  EXPECT_EQ(minimal.entities, (std::vector<std::string>{"Server", "message"}));
  ASSERT_EQ(minimal.relationships.size(), 1u);
  EXPECT_EQ(minimal.relationships[0].label, "stores");
  // client -sends-> request -to-> server
  const ERGraph g = extract_er(tag_text("The client sends a request to the server.", kTagger));
  EXPECT_EQ(g.entities, (std::vector<std::string>{"client", "request", "server"}));
  ASSERT_EQ(g.relationships.size(), 2u);
  EXPECT_EQ(g.relationships[0].label, "sends");
  EXPECT_EQ(g.relationships[1].label, "to");
  EXPECT_EQ(g.relationships[1].from, "request");
  const ERGraph single = extract_er(tag_text("The server.", kTagger));
  EXPECT_EQ(single.entities.size(), 1u);
  EXPECT_TRUE(single.relationships.empty());
}

TEST(ER, MergeIsCaseInsensitiveAndKeepsFirstSpelling) {
  const ERGraph a = extract_er(tag_text("The Server sends a response.", kTagger));
  const ERGraph b = extract_er(tag_text("The client uses the server.", kTagger));
  const std::vector<ERGraph> both = {a, b};
  const ERGraph m = merge_er(both);
  EXPECT_EQ(m.entities, (std::vector<std::string>{"Server", "response", "client"}));
  ASSERT_EQ(m.relationships.size(), 2u);
  EXPECT_EQ(m.relationships[1].to, "Server");
}

TEST(Passive, PaperSentencesAreFlagged) {
  const std::string comments = "Comments can be included in some HTTP header fields by surrounding the comment text with parentheses.";
  const auto f = detect_passive(tag_text(comments, kTagger), "d");
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].evidence, "be included");
  EXPECT_EQ(comments.substr(f[0].evidence_start, f[0].evidence_end - f[0].evidence_start), "be included");
  const auto g = detect_passive(tag_text(kFig5, kTagger));
  ASSERT_FALSE(g.empty());
  EXPECT_EQ(g[0].evidence, "is initiated");
}

TEST(Passive, ActiveSentencesAreNotFlagged) {
  EXPECT_TRUE(detect_passive(tag_text("The server stores the message.", kTagger)).empty());
  EXPECT_TRUE(detect_passive(tag_text("The client is sending a request.", kTagger)).empty());
  const auto negated = detect_passive(tag_text("It was not sent.", kTagger));
  ASSERT_EQ(negated.size(), 1u);
  EXPECT_EQ(negated[0].evidence, "was not sent");
  EXPECT_TRUE(detect_passive(tag_text("It was not always sent.", kTagger)).empty());
}

TEST(PassiveProperty, NeverFiresWithoutParticiple) {
  const Corpus rfc = textproj::testing::rfc_corpus();
  for (const Document& d : rfc.documents()) {
    for (const TaggedSentence& s : tag_document(d, kTagger)) {
      const bool has_vbn = std::any_of(s.tokens.begin(), s.tokens.end(),
                                       [](const TaggedToken& t) { return t.tag == "VBN"; });
      if (!has_vbn) ASSERT_TRUE(detect_passive(s.tokens, d.id).empty());
    }
  }
}

TEST(Json, SerializersProduceExpectedShapes) {
  const auto tagged = tag_document(textproj::testing::rfc_corpus().at("rfc2616.txt"), kTagger);
  const auto j = tagged_to_json(tagged);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), tagged.size());
  const auto terms = extract_terms(tagged[0].tokens);
  EXPECT_EQ(terms_to_json(terms).size(), terms.size());
  const auto er = er_to_json(extract_er(tag_text(kFig5, kTagger)));
  EXPECT_EQ(er.at("nodes").size(), 5u);
  EXPECT_EQ(er.at("edges").size(), 4u);
}
