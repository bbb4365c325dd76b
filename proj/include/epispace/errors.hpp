#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace epispace {

// Base class of every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Formula or interpretation text that does not conform to the grammar.
// `offset` is the byte position of the offending token in the input.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t at) : Error(msg), offset(at) {}
  std::size_t offset = 0;
};

// An identifier that is not an atom of the ambient signature.
struct UnknownAtomError : ParseError {
  UnknownAtomError(const std::string& name, std::size_t at)
      : ParseError("unknown atom '" + name + "'", at), atom(name) {}
  std::string atom;
};

// Malformed space/operator/assignment file. Diagnostics carry the file name,
// the 1-based line and the offending token.
struct FormatError : Error {
  FormatError(const std::string& file, int line, const std::string& msg)
      : Error(file + ":" + std::to_string(line) + ": " + msg),
        file(file),
        line(line) {}
  std::string file;
  int line = 0;
};

// No state of the space has the requested belief set.
struct NoSuchBeliefState : Error {
  using Error::Error;
};

// The relation read off an operator is not total or not transitive; the
// operator cannot be an extended credibility-limited revision operator.
struct NotAPreorder : Error {
  using Error::Error;
};

// An assignment breaks a structural constraint (belief set outside the
// credible set, or an inconsistent-input flag without a full credible set).
struct ConstraintViolation : Error {
  using Error::Error;
};

// A world set handed to a preorder operation is not a subset of its domain.
struct DomainError : Error {
  using Error::Error;
};

// The request would enumerate more objects than the configured bound allows.
struct ScaleExceeded : Error {
  using Error::Error;
};

}  // namespace epispace
