#pragma once

#include <stdexcept>
#include <string>

namespace toricgw {

// Validation: bad input (exit 2). Consistency: an internal identity failed (exit 3).
enum class ErrorKind { Validation, Consistency };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, std::string operation,
        std::string message, std::string datum = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }
  const std::string& operation() const noexcept { return operation_; }
  const std::string& message() const noexcept { return message_; }
  const std::string& datum() const noexcept { return datum_; }

 private:
  ErrorKind kind_;
  std::string module_;
  std::string operation_;
  std::string message_;
  std::string datum_;
};

[[noreturn]] void fail_validation(const std::string& module, const std::string& operation,
                                  const std::string& message, const std::string& datum = {});
[[noreturn]] void fail_consistency(const std::string& module, const std::string& operation,
                                   const std::string& message, const std::string& datum = {});

}  // namespace toricgw
