#pragma once

#include <stdexcept>
#include <string>

namespace netres {

// Failure classes surfaced by the library. The C API maps each one onto a
// distinct status code.
enum class ErrorKind {
  domain,   // input outside a formula's domain (e.g. |N| < 2 for flow robustness)
  config,   // invalid parameters or configuration
  lookup,   // unknown node or edge
  range,    // index/window outside a series
  numeric,  // non-finite values
  input,    // malformed input file
  io,       // filesystem failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace netres
