#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace treesearch {

/// Malformed instance, tree, or argument.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parse failure carrying the 1-based line it occurred on (0 if unknown).
class ParseError : public ValidationError {
 public:
  ParseError(int line, const std::string& what)
      : ValidationError(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// An instance exceeds a configured size or height cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A decision tree failed validation; carries the individual violations.
class InvalidTreeError : public ValidationError {
 public:
  explicit InvalidTreeError(std::vector<std::string> violations)
      : ValidationError(join(violations)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid decision tree";
    for (const auto& s : v) out += "\n  " + s;
    return out;
  }
  std::vector<std::string> violations_;
};

}  // namespace treesearch
