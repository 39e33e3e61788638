#pragma once

#include <stdexcept>
#include <string>

namespace subjectivity {

// Evaluation of g or h produced a non-finite (or negative, for h) value.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An assignment row has no positive weight to normalize.
class DegenerateAssignmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A hypothesis is normalized against a different subject set than the one
// it is being evaluated with.
class SubjectMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration would exceed a configured size cap.
class SizeCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative fit produced a non-finite risk.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A requested confidence level cannot be reached inside the search interval.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A risk level set Lambda(c) contains no class member.
class EmptyLevelSetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace subjectivity
