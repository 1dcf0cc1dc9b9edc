#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace taxmatch {

// One machine-readable problem found in input data.
struct Issue {
  std::string kind;     // e.g. "duplicate-id", "unknown-concept"
  std::string subject;  // offending id, when there is one
  std::string message;
};

// Bad input data (malformed files, broken invariants, unknown ids).
// Commands map this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(Issue issue)
      : std::runtime_error(issue.message), issues_{std::move(issue)} {}

  explicit ValidationError(std::vector<Issue> issues)
      : std::runtime_error(issues.empty() ? "validation failed"
                                          : issues.front().message),
        issues_(std::move(issues)) {}

  const std::vector<Issue>& issues() const { return issues_; }

 private:
  std::vector<Issue> issues_;
};

// A well-formed assignment instance that admits no solution.
// Commands map this to exit code 3.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(std::string constraint, const std::string& message)
      : std::runtime_error(message), constraint_(std::move(constraint)) {}

  // Short description of the binding constraint, e.g. "paper p3 has 1
  // eligible reviewers, needs 2".
  const std::string& constraint() const { return constraint_; }

 private:
  std::string constraint_;
};

}  // namespace taxmatch
