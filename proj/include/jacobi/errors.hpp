#ifndef JACOBI_ERRORS_HPP
#define JACOBI_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jacobi {

/// Malformed family text. `position()` is the 0-based byte offset of the
/// offending character.
class SpecError : public std::runtime_error {
public:
  SpecError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// A value left the domain where it is defined: a non-positive a_n, a
/// logarithm of a non-positive number, an index past the end of a table.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace jacobi

#endif
