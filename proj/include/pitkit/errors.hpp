#ifndef PITKIT_ERRORS_HPP
#define PITKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pitkit {

// All library failures carry a stable machine-readable code (kebab-case)
// plus a human message.  Codes are part of the CLI contract.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace pitkit

#endif
