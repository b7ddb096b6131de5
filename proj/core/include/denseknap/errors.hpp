#pragma once

#include <stdexcept>
#include <string>

namespace denseknap {

// Raised when an instance file or inline JSON document violates the schema.
// `where` names the offending field (e.g. "edges[3].verts[1]").
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}

  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// Raised when an exact solver declines to run because its enumeration budget
// would be exceeded. Exact oracles refuse loudly; they never approximate.
class OracleRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace denseknap
