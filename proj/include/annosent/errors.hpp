#pragma once

#include <stdexcept>
#include <string>

namespace annosent {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// lexicon
struct MalformedLine : Error {
  MalformedLine(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line(line) {}
  std::size_t line;
};
struct ScoreOutOfRange : Error {
  using Error::Error;
};
struct DuplicateEntry : Error {
  using Error::Error;
};

// textprep
struct StoplistContainsNegation : Error {
  using Error::Error;
};

// ingest
struct XmlSyntaxError : Error {
  using Error::Error;
};
struct SchemaViolation : Error {
  using Error::Error;
};
struct DanglingReference : Error {
  using Error::Error;
};
struct PdfUnreadable : Error {
  using Error::Error;
};
struct PdfEncrypted : Error {
  using Error::Error;
};

// store
struct SchemaMismatch : Error {
  using Error::Error;
};
struct IoFailure : Error {
  using Error::Error;
};
struct StoreLocked : Error {
  using Error::Error;
};

// aggregate / queries
struct UnknownDocument : Error {
  using Error::Error;
};
struct MissingScore : Error {
  using Error::Error;
};

}  // namespace annosent
