#include "toricgw/error.hpp"

namespace toricgw {

namespace {

std::string compose(ErrorKind kind, const std::string& module, const std::string& operation,
                    const std::string& message, const std::string& datum) {
  std::string out = module + "::" + operation + ": " + message;
  if (!datum.empty()) out += " [" + datum + "]";
  if (kind == ErrorKind::Consistency) out = "consistency failure in " + out;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, std::string module, std::string operation, std::string message,
             std::string datum)
    : std::runtime_error(compose(kind, module, operation, message, datum)),
      kind_(kind),
      module_(std::move(module)),
      operation_(std::move(operation)),
      message_(std::move(message)),
      datum_(std::move(datum)) {}

void fail_validation(const std::string& module, const std::string& operation,
                     const std::string& message, const std::string& datum) {
  throw Error(ErrorKind::Validation, module, operation, message, datum);
}

void fail_consistency(const std::string& module, const std::string& operation,
                      const std::string& message, const std::string& datum) {
  throw Error(ErrorKind::Consistency, module, operation, message, datum);
}

}  // namespace toricgw
