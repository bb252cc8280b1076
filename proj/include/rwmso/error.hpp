#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rwmso {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Malformed concrete syntax (formulas, parse trees, graph files).
class ParseError : public Error {
  public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    auto offset() const -> std::size_t { return offset_; }

  private:
    std::size_t offset_;
};

// Operands disagree on the label width t.
class WidthMismatch : public Error {
  public:
    using Error::Error;
};

// Oracle-scale or exhaustive routine called on an input that is too large.
class ScaleGuardError : public Error {
  public:
    using Error::Error;
};

// A game or cross product needs more moves than the characteristic tree provides.
class BudgetError : public Error {
  public:
    using Error::Error;
};

} // namespace rwmso
