#pragma once

#include <stdexcept>
#include <string>

namespace zigzag {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A constructive operation could not produce a witness; the message carries
// the failing step.
struct ConstructionFailed : Error {
  explicit ConstructionFailed(const std::string& what) : Error("construction failed: " + what) {}
};

struct PreconditionViolated : Error {
  explicit PreconditionViolated(const std::string& what) : Error("precondition violated: " + what) {}
};

struct DegenerateGeometry : Error {
  explicit DegenerateGeometry(const std::string& what) : Error("degenerate geometry: " + what) {}
};

struct BackendMismatch : Error {
  explicit BackendMismatch(const std::string& what) : Error("backend mismatch: " + what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

struct MalformedScript : Error {
  explicit MalformedScript(const std::string& what) : Error("malformed script: " + what) {}
};

}  // namespace zigzag
