#ifndef TEXTPROJ_ERROR_H_
#define TEXTPROJ_ERROR_H_

#include <stdexcept>
#include <string>

namespace textproj {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user-supplied settings: invalid regex, out-of-range parameter,
// malformed config or schema violations.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IngestError : public Error {
 public:
  using Error::Error;
};

// Model training or fitting could not proceed (too little data, empty
// vocabulary, ...).
class TrainingError : public Error {
 public:
  using Error::Error;
};

// A query referenced something that does not exist (document, topic, group).
class LookupError : public Error {
 public:
  using Error::Error;
};

// A metric is mathematically undefined for the given input.
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

class LayoutError : public Error {
 public:
  using Error::Error;
};

}  // namespace textproj

#endif  // TEXTPROJ_ERROR_H_
