#ifndef QGLR_ERRORS_HPP
#define QGLR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qglr {

// Bad shapes, empty inputs, out-of-range labels, capacity overflows.
class InvalidInputError : public std::invalid_argument {
 public:
  explicit InvalidInputError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Malformed data files; carries a 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, long line = -1)
      : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ")"
                                    : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// Failed solves, non-converging eigeniterations, undefined statistics.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qglr

#endif
