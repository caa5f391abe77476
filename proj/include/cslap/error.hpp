#pragma once

#include <stdexcept>
#include <string>

namespace cslap
{

// Failure categories; the C API maps each onto a status code.
enum class ErrorKind
{
  InvalidArgument,
  SizeMismatch,
  Singular,
  Breakdown,
  TooLarge,
};

class Error : public std::runtime_error
{
public:
  Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string &what)
{
  throw Error(kind, what);
}

inline void Require(bool cond, ErrorKind kind, const char *what)
{
  if (!cond)
  {
    throw Error(kind, what);
  }
}

}  // namespace cslap
