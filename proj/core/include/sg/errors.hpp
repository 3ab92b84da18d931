#pragma once

#include <stdexcept>
#include <string>

namespace sg {

// All contract violations surface as Error with a stable machine-readable
// code ("NotRREF", "NonSimpleZero", ...) plus a human sentence. The CLI
// front end maps codes to exit status and report fields.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace sg
