#ifndef TEXTPROJ_POS_H_
#define TEXTPROJ_POS_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "textproj/corpus.h"

namespace textproj {

struct TaggedToken {
  Token token;
  std::string tag;  // Penn Treebank tag
};

// The Penn Treebank tags (including punctuation tags) accepted in output.
const std::vector<std::string>& penn_tagset();
bool is_penn_tag(std::string_view tag);

class Tagger {
 public:
  virtual ~Tagger() = default;
  // One tag per token of a single sentence.
  virtual std::vector<std::string> tags(std::span<const Token> sentence) const = 0;
};

// Lexicon and rule based tagger. Per token, first match wins:
//   1. punctuation and numbers;
//   2. closed-class lexicon (determiners, prepositions, pronouns, modals,
//      forms of be/have/do, a few adverbs and adjectives) and inflected forms
//      of a small verb lexicon (base forms only after "to" or a modal);
//   3. suffix rules: -tion/-sion/-ness/-ment/-ity -> NN (plural NNS),
//      -ize/-ise/-ate family -> VB/VBZ/VBN/VBG, -ive/-al/-able/-ible/-ful/
//      -ous/-less -> JJ, -ly -> RB, -ed -> VBN, -ing -> VBG, -s after a noun,
//      adjective or determiner -> NNS, lowercase hyphenated -> JJ;
//   4. acronyms and capitalized words after the first token -> NNP;
//   5. NN.
class BaselineTagger : public Tagger {
 public:
  std::vector<std::string> tags(std::span<const Token> sentence) const override;
};

std::vector<TaggedToken> tag(std::span<const Token> sentence, const Tagger& tagger);

struct Sentence {
  std::string document_id;
  std::size_t start = 0;  // byte offsets into the document text
  std::size_t end = 0;
  std::vector<Token> tokens;  // punctuation kept, original casing
};

// Sentences end at '.', '?' or '!' followed by whitespace and an uppercase
// letter (unless the period closes a known abbreviation), at blank lines and
// at the end of the text.
std::vector<Sentence> split_sentences(const Document& doc);
std::vector<Sentence> split_sentences(std::string_view document_id,
                                      std::string_view text);

struct TaggedSentence {
  Sentence sentence;
  std::vector<TaggedToken> tokens;
};

std::vector<TaggedSentence> tag_document(const Document& doc, const Tagger& tagger);
// Convenience for a single sentence of plain text.
std::vector<TaggedToken> tag_text(std::string_view text, const Tagger& tagger);

struct Term {
  std::string text;                     // the noun run, original casing
  std::vector<std::string> qualifiers;  // preceding adjectives, in order
  std::size_t first = 0;                // token index of the first noun
  std::size_t last = 0;
};

// Maximal NN/NNS/NNP/NNPS runs; adjectives directly before a run (commas
// between adjectives allowed) are attached as qualifiers.
std::vector<Term> extract_terms(std::span<const TaggedToken> sentence);

struct Relationship {
  std::string from;
  std::string to;
  std::string label;
};

struct ERGraph {
  std::vector<std::string> entities;  // textual order, case-insensitively unique
  std::vector<Relationship> relationships;
};

// Noun runs become entities. Consecutive entities are related when the
// tokens between them contain a verb, preposition or "to"; the label keeps the
// verbs, modals, particles, "to" and prepositions in order.
ERGraph extract_er(std::span<const TaggedToken> sentence);
// Union with case-insensitive entity merging; the first spelling wins.
ERGraph merge_er(std::span<const ERGraph> graphs);

struct SmellFinding {
  std::string document_id;
  std::size_t sentence_start = 0;
  std::size_t sentence_end = 0;
  std::string kind = "passive_voice";
  std::string evidence;  // auxiliary through participle
  std::size_t evidence_start = 0;
  std::size_t evidence_end = 0;
};

// A form of "be" followed within two tokens by a VBN.
std::vector<SmellFinding> detect_passive(std::span<const TaggedToken> sentence,
                                         std::string_view document_id = "");

nlohmann::json tagged_to_json(std::span<const TaggedSentence> sentences);
nlohmann::json terms_to_json(std::span<const Term> terms);
nlohmann::json er_to_json(const ERGraph& graph);
std::string er_to_dot(const ERGraph& graph);
nlohmann::json smells_to_json(std::span<const SmellFinding> findings);

}  // namespace textproj

#endif  // TEXTPROJ_POS_H_
