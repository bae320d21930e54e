#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace ginient::cli {

// Exit codes of the ginient binary.
enum Exit : int { ok = 0, identity_failure = 1, input_error = 2, domain_error = 3 };

// Unreadable input or malformed command line; maps to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Reads one numeric column.  Skips blank lines and lines starting with '#',
// accepts LF or CRLF and a UTF-8 byte-order mark, and treats a non-numeric
// first data line as a header.  Diagnostics name the source as
// "name:line:column".
std::vector<double> read_column(std::istream& in, const std::string& name);

// 12 significant digits.
std::string format_number(double x);

// Runs the command line; returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ginient::cli
