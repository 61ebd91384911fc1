#ifndef TEXTPROJ_CORPUS_H_
#define TEXTPROJ_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace textproj {

// Closed set of artifact classes for textual software project data.
enum class SourceClass {
  kContracting,
  kPlanningControl,
  kReporting,
  kConfigChangeMgmt,
  kEvaluation,
  kRequirementsAnalysis,
  kSoftwareDesign,
  kSoftwareElements,
  kLogistics,
};

std::string_view to_string(SourceClass c);
// Throws ConfigError for names outside the closed set.
SourceClass parse_source_class(std::string_view name);
std::span<const SourceClass> all_source_classes();

struct Document {
  std::string id;
  std::string path;
  SourceClass source_class = SourceClass::kRequirementsAnalysis;
  std::optional<std::string> version_label;
  std::string text;
  std::map<std::string, std::string> metadata;
};

struct Link {
  std::string from_id;
  std::string to_id;
  std::string kind;
};

// An immutable-after-construction set of documents sorted by id, plus the
// links between them.
class Corpus {
 public:
  Corpus() = default;
  // Throws IngestError on duplicate ids, empty texts or dangling links.
  Corpus(std::vector<Document> documents, std::vector<Link> links = {});

  const std::vector<Document>& documents() const { return documents_; }
  const std::vector<Link>& links() const { return links_; }
  std::size_t size() const { return documents_.size(); }
  bool empty() const { return documents_.empty(); }

  const Document* find(std::string_view id) const;
  // Throws LookupError when the id is unknown.
  const Document& at(std::string_view id) const;

 private:
  std::vector<Document> documents_;
  std::vector<Link> links_;
};

// ---------------------------------------------------------------------------
// Tokenization
// ---------------------------------------------------------------------------

struct Token {
  std::string surface;
  std::string normalized;
  std::uint32_t line = 1;    // 1-based
  std::size_t start = 0;     // byte offset into Document::text
  std::size_t end = 0;       // one past the last byte
  bool is_word = true;       // false for punctuation tokens
};

struct TokenStream {
  std::string document_id;
  std::vector<Token> tokens;
};

struct TokenizerConfig {
  bool keep_punctuation = false;
  bool lowercase = true;
};

// Words are maximal runs of letters, digits, hyphens and underscores that
// contain at least one letter or digit; leading/trailing hyphens and
// underscores are not part of the word. Bytes >= 0x80 count as letters so
// UTF-8 words stay intact. Lowercasing is ASCII-only.
TokenStream tokenize(const Document& doc, const TokenizerConfig& config = {});
TokenStream tokenize_text(std::string_view document_id, std::string_view text,
                          const TokenizerConfig& config = {});

// ---------------------------------------------------------------------------
// Ignore patterns
// ---------------------------------------------------------------------------

struct IgnoredRegion {
  std::string document_id;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string reason;
};

// Regions for every match of every pattern (Perl syntax), merged so that the
// result is sorted and pairwise disjoint. Throws ConfigError naming the first
// invalid pattern.
std::vector<IgnoredRegion> apply_ignore_patterns(
    const Document& doc, std::span<const std::string> patterns);

// Reads one pattern per line; blank lines and lines starting with '#' are
// skipped.
std::vector<std::string> read_pattern_file(const std::filesystem::path& path);

// A document tokenized for analysis with the tokens that touch an ignored
// region flagged.
struct PreparedDocument {
  TokenStream stream;
  std::vector<IgnoredRegion> ignored;
  std::vector<std::uint8_t> skip;  // one flag per token

  std::size_t kept_token_count() const;
};

PreparedDocument prepare_document(const Document& doc,
                                  const TokenizerConfig& config,
                                  std::span<const std::string> ignore_patterns);
std::vector<PreparedDocument> prepare_corpus(
    const Corpus& corpus, const TokenizerConfig& config,
    std::span<const std::string> ignore_patterns);

// ---------------------------------------------------------------------------
// Ingestion
// ---------------------------------------------------------------------------

struct ClassRule {
  std::string pattern;  // regex searched in the document id
  SourceClass source_class;
};

struct IngestOptions {
  std::vector<ClassRule> class_map;
  // File extensions to ingest (with the dot). Empty means every regular file.
  std::vector<std::string> extensions = {".txt", ".text", ".md"};
};

struct FileError {
  std::string path;
  std::string message;
};

struct IngestResult {
  std::vector<Document> documents;  // sorted by id
  std::vector<FileError> errors;
};

// Throws IngestError when root is missing or unreadable; per-file problems
// (empty, invalid UTF-8, unreadable) are collected in IngestResult::errors.
IngestResult ingest_path(const std::filesystem::path& root,
                         const IngestOptions& options = {});

bool is_valid_utf8(std::string_view bytes);

struct Manifest {
  std::vector<Link> links;
  std::map<std::string, std::string> versions;
};

Manifest read_manifest(const std::filesystem::path& path);
Manifest parse_manifest(const nlohmann::json& j);

// Applies version labels and links. Throws IngestError for ids that do not
// resolve.
Corpus build_corpus(std::vector<Document> documents, const Manifest& manifest);

// ---------------------------------------------------------------------------
// Version ordering
// ---------------------------------------------------------------------------

enum class VersionOrderKind { kInteger, kIsoDate, kLexicographic };

// Picks integer order when every label is an integer, else ISO date order
// (YYYY, YYYY-MM or YYYY-MM-DD) when every label is a date, else
// lexicographic.
VersionOrderKind version_order_kind(std::span<const std::string> labels);

// Distinct labels in ascending version order.
std::vector<std::string> order_versions(std::span<const std::string> labels);

// Documents grouped per version in ascending order. Throws ConfigError when a
// document has no version label.
std::vector<std::pair<std::string, std::vector<const Document*>>>
documents_by_version(const Corpus& corpus);

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

nlohmann::json corpus_to_json(const Corpus& corpus);
Corpus corpus_from_json(const nlohmann::json& j);
Corpus load_corpus(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace textproj

#endif  // TEXTPROJ_CORPUS_H_
