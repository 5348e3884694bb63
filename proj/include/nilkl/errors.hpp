#pragma once

#include <stdexcept>
#include <string>

namespace nilkl {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidStructure : Error {
  using Error::Error;
};
struct NotUnitary : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct UnknownKind : Error {
  using Error::Error;
};
struct NotNilpotent : Error {
  using Error::Error;
};
struct NotNormal : Error {
  using Error::Error;
};
struct NotCommuting : Error {
  using Error::Error;
};
struct JacobiViolation : Error {
  using Error::Error;
};
struct UnknownFamily : Error {
  using Error::Error;
};
struct ParamOutOfRange : Error {
  using Error::Error;
};
struct BadRange : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct TheoremViolation : Error {
  using Error::Error;
};

}  // namespace nilkl
