#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace facewall {

/// Broad failure category. The CLI maps these onto exit codes.
enum class ErrorKind {
    kUsage,     // bad parameters supplied by the caller
    kInput,     // unreadable or invalid input file, bad lexicon, unknown names
    kStore,     // store I/O, schema or locking problems, missing analysis
    kInternal,  // broken invariant inside the pipeline
};

/// Exception carrying a short machine-readable code such as "bad-n" or
/// "schema-mismatch" next to the human-readable message.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& code() const noexcept { return code_; }

private:
    ErrorKind kind_;
    std::string code_;
};

[[noreturn]] void fail(ErrorKind kind, std::string_view code, std::string_view detail = {});

}  // namespace facewall
