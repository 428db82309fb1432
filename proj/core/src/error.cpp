#include "facewall/error.hpp"

namespace facewall {

Error::Error(ErrorKind kind, std::string code, const std::string& message)
    : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

void fail(ErrorKind kind, std::string_view code, std::string_view detail) {
    std::string message(code);
    if (!detail.empty()) {
        message += ": ";
        message += detail;
    }
    throw Error(kind, std::string(code), message);
}

}  // namespace facewall
