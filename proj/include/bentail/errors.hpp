#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bentail {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Formula text could not be parsed. offset is a byte position into the input;
// expected names the token class the parser wanted there.
struct SyntaxError : Error {
  SyntaxError(std::size_t offset, std::string expected);
  std::size_t offset;
  std::string expected;
};

// An atom name was not registered and the signature is sealed.
struct UnknownAtomError : Error {
  explicit UnknownAtomError(const std::string& name);
  std::string name;
};

// A formula mentions an atom the world's signature does not carry.
struct AtomNotInWorldError : Error {
  explicit AtomNotInWorldError(const std::string& name);
  std::string name;
};

// Signature grew past its enumeration limit.
struct AtomLimitError : Error {
  using Error::Error;
};

// All max-support worlds carry zero prior mass, so the mu->1 closed form
// has a zero denominator.
struct ZeroMassSupportError : Error {
  ZeroMassSupportError() : Error("max-support worlds carry zero prior mass") {}
};

// A preference relation failed the irreflexive/transitive check.
struct PreferenceError : Error {
  using Error::Error;
};

// Malformed input files, config values, distributions.
struct InputError : Error {
  using Error::Error;
};

// --- classifier ---

struct MissingColumnError : Error {
  explicit MissingColumnError(const std::string& column);
  std::string column;
};

struct MalformedRowError : Error {
  MalformedRowError(std::size_t row, const std::string& what);
  std::size_t row;  // 1-based data row index
};

struct EmptyDatasetError : Error {
  EmptyDatasetError() : Error("dataset has no data rows") {}
};

struct DatasetTooSmallError : Error {
  DatasetTooSmallError() : Error("dataset too small to split (need at least 5 rows)") {}
};

struct EmptyGridError : Error {
  EmptyGridError() : Error("mu grid is empty") {}
};

struct UnknownColumnError : Error {
  explicit UnknownColumnError(const std::string& column);
  std::string column;
};

}  // namespace bentail
