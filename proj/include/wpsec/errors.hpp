#pragma once

#include <stdexcept>
#include <string>

namespace wpsec {

// Base of every error raised by the library. Callers that only care about
// "something went wrong in the model" can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DecompositionFailure : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class ZfInfeasible : public Error {
 public:
  using Error::Error;
};

class InvalidInterval : public Error {
 public:
  using Error::Error;
};

class InvalidDistance : public Error {
 public:
  using Error::Error;
};

class ZeroChannel : public Error {
 public:
  using Error::Error;
};

// delta * eta * |f^H w_t|^2 >= 1: the recycled loop would need unbounded power.
class InfeasibleRecycling : public Error {
 public:
  using Error::Error;
};

class LeakageInfeasible : public Error {
 public:
  using Error::Error;
};

class InvalidAlpha : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace wpsec
