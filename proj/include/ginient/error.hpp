#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ginient {

enum class ErrorCode {
    negative_value,
    too_few,
    non_finite,
    empty_tail,
    fewer_than_two,
    bad_parameter,
    no_convergence,
    unsupported_spec,
    not_applicable,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto an exit status without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace ginient
