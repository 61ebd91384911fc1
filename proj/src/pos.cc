#include "textproj/pos.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace textproj {

const std::vector<std::string>& penn_tagset() {
  static const std::vector<std::string> tags = {
      "CC",  "CD",  "DT",  "EX",   "FW",  "IN",  "JJ",  "JJR", "JJS", "LS",
      "MD",  "NN",  "NNS", "NNP",  "NNPS", "PDT", "POS", "PRP", "PRP$", "RB",
      "RBR", "RBS", "RP",  "SYM",  "TO",  "UH",  "VB",  "VBD", "VBG", "VBN",
      "VBP", "VBZ", "WDT", "WP",   "WP$", "WRB", "-LRB-", "-RRB-", ",", ".",
      ":",   "``",  "''",  "#",    "$"};
  return tags;
}

bool is_penn_tag(std::string_view tag) {
  const auto& tags = penn_tagset();
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_noun(std::string_view tag) { return tag.substr(0, 2) == "NN"; }
bool is_verb(std::string_view tag) { return tag.substr(0, 2) == "VB"; }
bool is_adjective(std::string_view tag) { return tag.substr(0, 2) == "JJ"; }

const std::unordered_map<std::string, std::string>& closed_class() {
  static const auto* lexicon = [] {
    auto* m = new std::unordered_map<std::string, std::string>;
    auto add = [&](std::string_view tag, std::initializer_list<const char*> words) {
      for (const char* w : words) m->emplace(w, tag);
    };
    add("DT", {"the", "a", "an", "this", "that", "these", "those", "some", "any",
               "each", "every", "no", "all", "both", "either", "neither",
               "another"});
    add("IN", {"of", "in", "on", "at", "by", "for", "from", "with", "about",
               "into", "through", "over", "under", "between", "among", "after",
               "before", "during", "without", "within", "upon", "against",
               "across", "via", "than", "since", "until", "because", "although",
               "while", "whether", "if", "as", "per"});
    add("TO", {"to"});
    add("CC", {"and", "or", "but", "nor"});
    add("PRP", {"i", "you", "he", "she", "it", "we", "they", "me", "him", "us",
                "them"});
    add("PRP$", {"my", "your", "his", "its", "our", "their", "her"});
    add("MD", {"can", "could", "may", "might", "must", "shall", "should", "will",
               "would"});
    add("VBZ", {"is", "has", "does"});
    add("VBP", {"are", "am", "have", "do"});
    add("VBD", {"was", "were", "had", "did"});
    add("VB", {"be"});
    add("VBN", {"been"});
    add("VBG", {"being", "having"});
    add("WDT", {"which"});
    add("WP", {"who", "what", "whom"});
    add("WP$", {"whose"});
    add("WRB", {"where", "when", "how", "why"});
    add("EX", {"there"});
    add("RB", {"not", "also", "only", "very", "then", "thus", "however",
               "always", "never", "often", "already", "just", "here", "too"});
    add("JJS", {"most", "least"});
    add("JJR", {"more", "less"});
    add("JJ", {"necessary", "new", "other", "such", "same", "several", "many",
               "few", "own", "possible", "available", "simple", "generic",
               "different", "similar", "specific", "valid", "invalid", "current"});
    add("NN", {"thing", "something", "nothing", "anything", "everything",
               "string", "ring"});
    return m;
  }();
  return *lexicon;
}

struct VerbForm {
  std::string tag;
  bool base = false;
};

std::string s_form(const std::string& v) {
  if (ends_with(v, "s") || ends_with(v, "x") || ends_with(v, "ch") || ends_with(v, "sh")) {
    return v + "es";
  }
  if (ends_with(v, "y") && v.size() > 1 && std::string("aeiou").find(v[v.size() - 2]) == std::string::npos) {
    return v.substr(0, v.size() - 1) + "ies";
  }
  return v + "s";
}

std::string ed_form(const std::string& v) {
  if (ends_with(v, "e")) return v + "d";
  if (ends_with(v, "y") && v.size() > 1 && std::string("aeiou").find(v[v.size() - 2]) == std::string::npos) {
    return v.substr(0, v.size() - 1) + "ied";
  }
  return v + "ed";
}

std::string ing_form(const std::string& v) {
  if (ends_with(v, "e") && !ends_with(v, "ee")) return v.substr(0, v.size() - 1) + "ing";
  return v + "ing";
}

const std::unordered_map<std::string, VerbForm>& verb_lexicon() {
  static const auto* lexicon = [] {
    auto* m = new std::unordered_map<std::string, VerbForm>;
    for (const std::string v :
         {"consist", "store", "contain", "include", "require", "use", "send",
          "receive", "apply", "support", "define", "specify", "provide", "allow",
          "indicate", "identify", "describe", "return", "accept", "reject",
          "process", "create", "delete", "modify", "check", "perform", "follow",
          "make", "take", "give", "mean", "refer", "occur", "cause", "ignore",
          "generate", "represent", "contain", "need", "select", "enable"}) {
      m->emplace(v, VerbForm{"VB", true});
      m->emplace(s_form(v), VerbForm{"VBZ"});
      m->emplace(ing_form(v), VerbForm{"VBG"});
      m->emplace(ed_form(v), VerbForm{"VBN"});
    }
    for (const auto& [form, tag] : std::initializer_list<std::pair<const char*, const char*>>{
             {"sent", "VBN"}, {"made", "VBN"}, {"taken", "VBN"}, {"took", "VBD"},
             {"given", "VBN"}, {"gave", "VBD"}, {"meant", "VBN"},
             {"referred", "VBN"}, {"referring", "VBG"}, {"occurred", "VBN"},
             {"occurring", "VBG"}, {"known", "VBN"}, {"done", "VBN"},
             {"written", "VBN"}, {"chosen", "VBN"}, {"seen", "VBN"}}) {
      (*m)[form] = VerbForm{tag};
    }
    return m;
  }();
  return *lexicon;
}

std::string punctuation_tag(std::string_view s) {
  if (s == "(" || s == "[" || s == "{") return "-LRB-";
  if (s == ")" || s == "]" || s == "}") return "-RRB-";
  if (s == ",") return ",";
  if (s == "." || s == "?" || s == "!") return ".";
  if (s == ":" || s == ";") return ":";
  if (s == "\"") return "''";
  if (s == "`") return "``";
  if (s == "#") return "#";
  if (s == "$") return "$";
  return "SYM";
}

bool all_upper_acronym(std::string_view s) {
  bool letters = false;
  for (char c : s) {
    if (std::islower(static_cast<unsigned char>(c))) return false;
    if (std::isupper(static_cast<unsigned char>(c))) letters = true;
  }
  return letters && s.size() >= 2;
}

// Suffix rules on the lowercased word; empty when none applies.
std::string suffix_tag(const std::string& w, std::string_view previous_tag,
                       bool first) {
  static const char* kNounSuffixes[] = {"tion", "sion", "ness", "ment", "ity"};
  for (const char* s : kNounSuffixes) {
    if (ends_with(w, s) && w.size() > std::string_view(s).size() + 1) return "NN";
    const std::string plural = std::string(s == std::string("ity") ? "itie" : s) + "s";
    if (ends_with(w, plural) && w.size() > plural.size() + 1) return "NNS";
  }
  if (w.size() >= 6) {
    for (const char* stem : {"ize", "ise", "ate"}) {
      const std::string st(stem);
      if (ends_with(w, st)) return "VB";
      if (ends_with(w, st + "s")) return "VBZ";
      if (ends_with(w, st + "d")) return "VBN";
      if (ends_with(w, st.substr(0, 2) + "ing")) return "VBG";
    }
  }
  for (const char* s : {"ive", "able", "ible", "ful", "ous", "less"}) {
    if (ends_with(w, s) && w.size() > std::string_view(s).size() + 1) return "JJ";
  }
  if (ends_with(w, "al") && w.size() >= 5) return "JJ";
  if (ends_with(w, "ly") && w.size() >= 5) return "RB";
  if (ends_with(w, "ed") && w.size() >= 5 && !ends_with(w, "eed")) return "VBN";
  if (ends_with(w, "ing") && w.size() >= 6) return "VBG";
  if (ends_with(w, "s") && w.size() >= 4 && !ends_with(w, "ss") &&
      !ends_with(w, "us") && !ends_with(w, "is") &&
      (first || is_noun(previous_tag) || is_adjective(previous_tag) ||
       previous_tag == "DT" || previous_tag == "CD")) {
    return "NNS";
  }
  if (w.find('-') != std::string::npos) return "JJ";
  return {};
}

}  // namespace

std::vector<std::string> BaselineTagger::tags(std::span<const Token> sentence) const {
  std::vector<std::string> out;
  out.reserve(sentence.size());
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    const Token& t = sentence[i];
    const std::string previous = out.empty() ? std::string() : out.back();
    const std::string w = lower(t.surface);
    const bool first = i == 0 || previous == "." || previous == ":";

    if (!t.is_word) {
      out.push_back(punctuation_tag(t.surface));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(w[0]))) {
      out.push_back("CD");
      continue;
    }
    if (auto it = closed_class().find(w); it != closed_class().end()) {
      out.push_back(it->second);
      continue;
    }
    if (auto it = verb_lexicon().find(w); it != verb_lexicon().end()) {
      const VerbForm& form = it->second;
      if (!form.base || previous == "TO" || previous == "MD") {
        out.push_back(form.tag);
        continue;
      }
    }
    const bool capitalized = std::isupper(static_cast<unsigned char>(t.surface[0])) != 0;
    if (all_upper_acronym(t.surface)) {
      out.push_back("NNP");
      continue;
    }
    const bool lowercase_hyphenated =
        !capitalized && w.find('-') != std::string::npos;
    if (lowercase_hyphenated) {
      out.push_back("JJ");
      continue;
    }
    if (std::string s = suffix_tag(w, previous, first);
        !s.empty() && !(capitalized && !first)) {
      out.push_back(s);
      continue;
    }
    if (capitalized && !first) {
      out.push_back("NNP");
      continue;
    }
    out.push_back("NN");
  }
  return out;
}

std::vector<TaggedToken> tag(std::span<const Token> sentence, const Tagger& tagger) {
  const auto tags = tagger.tags(sentence);
  std::vector<TaggedToken> out;
  out.reserve(sentence.size());
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    out.push_back({sentence[i], i < tags.size() ? tags[i] : std::string("NN")});
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

const std::set<std::string>& abbreviations() {
  static const std::set<std::string> words = {
      "e.g.", "i.e.", "etc.", "cf.", "vs.", "fig.", "figs.", "sec.", "no.",
      "ref.", "mr.", "mrs.", "dr.", "prof.", "al.", "approx.", "resp.", "vol."};
  return words;
}

bool closes_abbreviation(std::string_view text, std::size_t period_end) {
  std::size_t b = period_end;
  while (b > 0 && !std::isspace(static_cast<unsigned char>(text[b - 1]))) --b;
  std::string chunk = lower(text.substr(b, period_end - b));
  while (!chunk.empty() && (chunk.front() == '(' || chunk.front() == '"')) {
    chunk.erase(chunk.begin());
  }
  return abbreviations().count(chunk) != 0;
}

bool blank_line_between(std::string_view text, std::size_t from, std::size_t to) {
  bool seen_newline = false;
  for (std::size_t i = from; i < to; ++i) {
    if (text[i] == '\n') {
      if (seen_newline) return true;
      seen_newline = true;
    } else if (text[i] != ' ' && text[i] != '\t' && text[i] != '\r') {
      seen_newline = false;
    }
  }
  return false;
}

}  // namespace

std::vector<Sentence> split_sentences(std::string_view document_id,
                                      std::string_view text) {
  TokenizerConfig config;
  config.keep_punctuation = true;
  const TokenStream stream = tokenize_text(document_id, text, config);
  const auto& tokens = stream.tokens;

  std::vector<Sentence> sentences;
  Sentence cur;
  auto flush = [&] {
    if (cur.tokens.empty()) return;
    cur.document_id = std::string(document_id);
    cur.start = cur.tokens.front().start;
    cur.end = cur.tokens.back().end;
    sentences.push_back(std::move(cur));
    cur = Sentence();
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    cur.tokens.push_back(tokens[i]);
    if (i + 1 == tokens.size()) break;
    const Token& t = tokens[i];
    const Token& next = tokens[i + 1];
    if (blank_line_between(text, t.end, next.start)) {
      flush();
      continue;
    }
    const bool terminal = t.surface == "." || t.surface == "?" || t.surface == "!";
    if (terminal && next.start > t.end &&
        std::isupper(static_cast<unsigned char>(next.surface[0])) &&
        !(t.surface == "." && closes_abbreviation(text, t.end))) {
      flush();
    }
  }
  flush();
  return sentences;
}

std::vector<Sentence> split_sentences(const Document& doc) {
  return split_sentences(doc.id, doc.text);
}

std::vector<TaggedSentence> tag_document(const Document& doc, const Tagger& tagger) {
  std::vector<TaggedSentence> out;
  for (Sentence& s : split_sentences(doc)) {
    auto tagged = tag(s.tokens, tagger);
    out.push_back({std::move(s), std::move(tagged)});
  }
  return out;
}

std::vector<TaggedToken> tag_text(std::string_view text, const Tagger& tagger) {
  TokenizerConfig config;
  config.keep_punctuation = true;
  const TokenStream stream = tokenize_text("text", text, config);
  return tag(stream.tokens, tagger);
}

// ---------------------------------------------------------------------------

namespace {

struct NounRun {
  std::size_t first;
  std::size_t last;
};

std::vector<NounRun> noun_runs(std::span<const TaggedToken> s) {
  std::vector<NounRun> runs;
  for (std::size_t i = 0; i < s.size();) {
    if (!is_noun(s[i].tag)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < s.size() && is_noun(s[j + 1].tag)) ++j;
    runs.push_back({i, j});
    i = j + 1;
  }
  return runs;
}

std::string join_surfaces(std::span<const TaggedToken> s, std::size_t first,
                          std::size_t last) {
  std::string out;
  for (std::size_t i = first; i <= last; ++i) {
    if (!out.empty()) out += ' ';
    out += s[i].token.surface;
  }
  return out;
}

}  // namespace

std::vector<Term> extract_terms(std::span<const TaggedToken> sentence) {
  std::vector<Term> terms;
  for (const NounRun& r : noun_runs(sentence)) {
    Term term;
    term.text = join_surfaces(sentence, r.first, r.last);
    term.first = r.first;
    term.last = r.last;
    std::size_t i = r.first;
    while (i > 0) {
      const std::string& t = sentence[i - 1].tag;
      if (t == "JJ") {
        term.qualifiers.insert(term.qualifiers.begin(), sentence[i - 1].token.surface);
        --i;
      } else if (t == "," && i >= 2 && sentence[i - 2].tag == "JJ") {
        --i;
      } else {
        break;
      }
    }
    terms.push_back(std::move(term));
  }
  return terms;
}

ERGraph extract_er(std::span<const TaggedToken> sentence) {
  ERGraph graph;
  const auto runs = noun_runs(sentence);
  std::vector<std::string> names;
  for (const NounRun& r : runs) names.push_back(join_surfaces(sentence, r.first, r.last));
  for (std::size_t k = 0; k + 1 < runs.size(); ++k) {
    std::string label;
    bool linking = false;
    for (std::size_t i = runs[k].last + 1; i < runs[k + 1].first; ++i) {
      const std::string& t = sentence[i].tag;
      if (is_verb(t) || t == "MD" || t == "TO" || t == "IN" || t == "RP") {
        if (!label.empty()) label += ' ';
        label += sentence[i].token.surface;
        if (is_verb(t) || t == "IN" || t == "TO" || t == "MD") linking = true;
      }
    }
    if (linking) graph.relationships.push_back({names[k], names[k + 1], label});
  }
  graph.entities = std::move(names);
  const ERGraph single[] = {std::move(graph)};
  return merge_er(single);
}

ERGraph merge_er(std::span<const ERGraph> graphs) {
  ERGraph out;
  std::map<std::string, std::string> canonical;
  auto name_of = [&](const std::string& entity) {
    auto [it, inserted] = canonical.try_emplace(lower(entity), entity);
    if (inserted) out.entities.push_back(entity);
    return it->second;
  };
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (const ERGraph& g : graphs) {
    for (const std::string& e : g.entities) name_of(e);
    for (const Relationship& r : g.relationships) {
      Relationship m{name_of(r.from), name_of(r.to), r.label};
      if (seen.emplace(lower(m.from), lower(m.to), lower(m.label)).second) {
        out.relationships.push_back(std::move(m));
      }
    }
  }
  return out;
}

std::vector<SmellFinding> detect_passive(std::span<const TaggedToken> sentence,
                                         std::string_view document_id) {
  static const std::set<std::string> kBeForms = {"is",   "are",  "was",  "were",
                                                  "be",   "been", "being", "am"};
  std::vector<SmellFinding> out;
  if (sentence.empty()) return out;
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    if (kBeForms.count(lower(sentence[i].token.surface)) == 0) continue;
    for (std::size_t j = i + 1; j <= i + 2 && j < sentence.size(); ++j) {
      if (sentence[j].tag != "VBN") continue;
      SmellFinding f;
      f.document_id = std::string(document_id);
      f.sentence_start = sentence.front().token.start;
      f.sentence_end = sentence.back().token.end;
      f.evidence = join_surfaces(sentence, i, j);
      f.evidence_start = sentence[i].token.start;
      f.evidence_end = sentence[j].token.end;
      out.push_back(std::move(f));
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

nlohmann::json tagged_to_json(std::span<const TaggedSentence> sentences) {
  nlohmann::json out = nlohmann::json::array();
  for (const TaggedSentence& s : sentences) {
    nlohmann::json tokens = nlohmann::json::array();
    std::string inline_text;
    for (const TaggedToken& t : s.tokens) {
      tokens.push_back({{"surface", t.token.surface},
                        {"tag", t.tag},
                        {"start", t.token.start},
                        {"end", t.token.end}});
      if (!inline_text.empty()) inline_text += ' ';
      inline_text += t.token.surface + "_" + t.tag;
    }
    out.push_back({{"document_id", s.sentence.document_id},
                   {"start", s.sentence.start},
                   {"end", s.sentence.end},
                   {"tagged", inline_text},
                   {"tokens", tokens}});
  }
  return out;
}

nlohmann::json terms_to_json(std::span<const Term> terms) {
  nlohmann::json out = nlohmann::json::array();
  for (const Term& t : terms) {
    out.push_back({{"term", t.text}, {"qualifiers", t.qualifiers}});
  }
  return out;
}

nlohmann::json er_to_json(const ERGraph& graph) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Relationship& r : graph.relationships) {
    edges.push_back({{"from", r.from}, {"to", r.to}, {"label", r.label}});
  }
  return {{"nodes", graph.entities}, {"edges", edges}};
}

namespace {

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string er_to_dot(const ERGraph& graph) {
  std::ostringstream os;
  os << "digraph er {\n  node [shape=box];\n";
  for (const std::string& e : graph.entities) os << "  " << dot_quote(e) << ";\n";
  for (const Relationship& r : graph.relationships) {
    os << "  " << dot_quote(r.from) << " -> " << dot_quote(r.to)
       << " [label=" << dot_quote(r.label) << "];\n";
  }
  os << "}\n";
  return os.str();
}

nlohmann::json smells_to_json(std::span<const SmellFinding> findings) {
  nlohmann::json out = nlohmann::json::array();
  for (const SmellFinding& f : findings) {
    out.push_back({{"document_id", f.document_id},
                   {"kind", f.kind},
                   {"sentence_start", f.sentence_start},
                   {"sentence_end", f.sentence_end},
                   {"evidence", f.evidence},
                   {"evidence_start", f.evidence_start},
                   {"evidence_end", f.evidence_end}});
  }
  return out;
}

}  // namespace textproj
