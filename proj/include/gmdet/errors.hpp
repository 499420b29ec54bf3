#pragma once

#include <stdexcept>
#include <string>

namespace gmdet {

// Malformed or unsupported input: bad shapes, undeclared poles, parse errors.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition of an algorithm is not met by otherwise well-formed input.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Laurent window was too small for the requested coefficient.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken internal invariant; always a bug or an unsupported degenerate case.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gmdet
