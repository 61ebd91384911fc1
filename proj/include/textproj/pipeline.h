#ifndef TEXTPROJ_PIPELINE_H_
#define TEXTPROJ_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "textproj/clones.h"
#include "textproj/corpus.h"
#include "textproj/ngram.h"

namespace textproj {

inline constexpr const char* kVersion = "0.1.0";

// Violations of a JSON document against a schema. Supports the keywords
// type, properties, required, additionalProperties (boolean), items, enum,
// minimum, maximum and minItems; paths use JSON pointer syntax.
std::vector<std::string> validate_json(const nlohmann::json& instance,
                                       const nlohmann::json& schema);

const nlohmann::json& pipeline_schema();
const nlohmann::json& example_pipeline_config();

// Seed from the explicit value, else from TEXTPROJ_SEED. Throws ConfigError
// when TEXTPROJ_SEED is set but not an unsigned integer.
std::optional<std::uint64_t> resolve_seed(std::optional<std::uint64_t> explicit_seed);

struct PipelineConfig {
  std::filesystem::path base_dir;  // relative paths resolve against this
  std::filesystem::path output_dir;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> stages;  // in the order given

  std::filesystem::path corpus_root;
  std::optional<std::filesystem::path> manifest;
  std::vector<std::string> ignore_patterns;
  std::optional<std::filesystem::path> ignore_file;  // not ingested as a document
  std::vector<ClassRule> class_map;

  CloneConfig clones;

  std::size_t ngram_n = 3;
  Smoothing smoothing = Smoothing::kAddOne;
  std::vector<std::string> series_queries;

  std::size_t topics = 10;
  std::optional<double> alpha;
  double beta = 0.01;
  std::size_t iterations = 1000;
  std::vector<std::string> stopwords;  // empty: bundled list

  std::optional<std::filesystem::path> codebook;
  std::uint64_t min_occurrence = 7;

  std::string canvas = "800x600";
  std::size_t max_words = 50;
  std::string connector = "is";
  std::uint64_t min_weight = 2;
  std::vector<std::string> flow_terms;
};

const std::vector<std::string>& known_stages();

// Validates against the schema, resolves paths and the seed and checks that
// referenced files exist. Throws ConfigError.
PipelineConfig parse_pipeline_config(const nlohmann::json& j,
                                     const std::filesystem::path& base_dir,
                                     std::optional<std::uint64_t> seed_override = {});
PipelineConfig load_pipeline_config(const std::filesystem::path& path,
                                    std::optional<std::uint64_t> seed_override = {});

struct PipelineResult {
  int exit_code = 0;
  std::vector<std::string> outputs;   // relative to the output directory
  std::vector<std::string> failures;  // "stage: message"
};

// Runs the enabled stages in dependency order and renders report/ from the
// available outputs. A failing stage sets exit code 1; later stages that do
// not depend on it still run. Throws ConfigError for an unusable corpus.
PipelineResult run_pipeline(const PipelineConfig& config);

}  // namespace textproj

#endif  // TEXTPROJ_PIPELINE_H_
