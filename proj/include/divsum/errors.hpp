#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace divsum {

enum class ErrorKind {
  kDomain,             // argument outside the operation's domain
  kCapability,         // valid input beyond what the implementation supports
  kResource,           // memory budget exceeded
  kSingularity,        // a closed form has a pole at the requested s
  kConvergenceDomain,  // infinite series/product requested with s <= 1
  kContract,           // caller-supplied function breaks its contract
  kLookup,             // unknown identity or quantity name
  kConsistency,        // internal cross-check disagreed
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kCapability: return "capability";
    case ErrorKind::kResource: return "resource";
    case ErrorKind::kSingularity: return "singularity";
    case ErrorKind::kConvergenceDomain: return "convergence-domain";
    case ErrorKind::kContract: return "contract";
    case ErrorKind::kLookup: return "lookup";
    case ErrorKind::kConsistency: return "consistency";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace divsum
