#ifndef MAXDIM_ERRORS_HPP
#define MAXDIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace maxdim {

struct CapExceeded : std::runtime_error {
  explicit CapExceeded(std::string const& what) : std::runtime_error(what) {}
};

struct InvalidPermutation : std::runtime_error {
  explicit InvalidPermutation(std::string const& what) : std::runtime_error(what) {}
};

struct NotNormal : std::runtime_error {
  explicit NotNormal(std::string const& what) : std::runtime_error(what) {}
};

struct NotHomomorphism : std::runtime_error {
  explicit NotHomomorphism(std::string const& what) : std::runtime_error(what) {}
};

struct MixedParents : std::runtime_error {
  explicit MixedParents(std::string const& what) : std::runtime_error(what) {}
};

struct NoMaximalOvergroup : std::runtime_error {
  explicit NoMaximalOvergroup(std::string const& what) : std::runtime_error(what) {}
};

struct EmptyDifference : std::runtime_error {
  explicit EmptyDifference(std::string const& what) : std::runtime_error(what) {}
};

struct LemmaViolation : std::runtime_error {
  explicit LemmaViolation(std::string const& what) : std::runtime_error(what) {}
};

struct UnsupportedPrime : std::runtime_error {
  explicit UnsupportedPrime(std::string const& what) : std::runtime_error(what) {}
};

struct PrimeDividesOrder : std::runtime_error {
  explicit PrimeDividesOrder(std::string const& what) : std::runtime_error(what) {}
};

struct DecompositionBudgetExceeded : std::runtime_error {
  explicit DecompositionBudgetExceeded(std::string const& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, std::string const& what)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

struct UnknownFamily : ParseError {
  UnknownFamily(int line_, std::string const& what) : ParseError(line_, what) {}
};

}  // namespace maxdim

#endif  // MAXDIM_ERRORS_HPP
