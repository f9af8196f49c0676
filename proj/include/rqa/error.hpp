#pragma once

#include <stdexcept>
#include <string>

namespace rqa {

/// Base class for every error raised by the library. Callers that only care
/// about "the analysis could not proceed" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid alphabet definitions, transliteration tables or unusable text.
class AlphabetError : public Error {
 public:
  using Error::Error;
};

/// Embedding or recurrence precondition violated (sequence too short, bad config).
class EmbeddingError : public Error {
 public:
  using Error::Error;
};

/// Statistical routine called outside its domain.
class StatsError : public Error {
 public:
  using Error::Error;
};

/// Run configuration or I/O problem in the batch driver.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace rqa
