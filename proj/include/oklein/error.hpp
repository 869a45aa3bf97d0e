#pragma once

#include <stdexcept>
#include <string>

namespace oklein {

// Base for every error thrown by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Input outside an operation's mathematical domain (T = 0, Im zeta <= 0, ...).
class DomainError : public Error
{
  public:
    using Error::Error;
};

// Malformed catalog, unresolved ids, bad CLI configuration.
class ConfigError : public Error
{
  public:
    using Error::Error;
};

// A numerical procedure failed its own accuracy check.
class NumericalFailure : public Error
{
  public:
    using Error::Error;
};

}  // namespace oklein
