#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace koenigs {

enum class ErrorKind { validation, nonconvergence };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Iterative solvers throw this with their last-iterate state attached.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, std::map<std::string, double> diagnostics)
      : Error(ErrorKind::nonconvergence, what), diagnostics_(std::move(diagnostics)) {}
  const std::map<std::string, double>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::map<std::string, double> diagnostics_;
};

[[noreturn]] inline void invalid(const std::string& msg) {
  throw Error(ErrorKind::validation, msg);
}

inline void require(bool cond, const std::string& msg) {
  if (!cond) invalid(msg);
}

}  // namespace koenigs
