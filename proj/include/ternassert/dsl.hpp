#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ternassert/assertions.hpp"
#include "ternassert/circuit.hpp"

namespace ternassert {

/// Syntax or validation failure in a .t3 source. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, std::string message, std::string expected);

    [[nodiscard]] int line() const { return line_; }
    [[nodiscard]] int column() const { return column_; }
    [[nodiscard]] const std::string& message() const { return message_; }
    [[nodiscard]] const std::string& expected() const { return expected_; }

private:
    int line_;
    int column_;
    std::string message_;
    std::string expected_;
};

struct Program {
    Circuit circuit;
    std::vector<AssertionSpec> assertions;

    friend bool operator==(const Program&, const Program&) = default;
};

/// Parses the line-oriented circuit format:
///
///     qutrits 2
///     init 2 0
///     gate ch1 0
///     cgate z+1 0 1
///     a1 0 1
///     slice after_entangle
///     assert entangled b row 0 0 1
///     measure 0 -> m0
///
/// Keywords and gate labels are case-insensitive, '#' starts a comment line, LF or
/// CRLF endings. Each assert directive allocates its ancillas after the declared qutrits.
Program parse(std::string_view text);
Program parse_file(const std::filesystem::path& path);

/// Canonical text: lower-case keywords, single spaces, LF endings, ops in order.
std::string serialize(const Circuit& circuit, std::span<const AssertionSpec> assertions);
inline std::string serialize(const Program& program) { return serialize(program.circuit, program.assertions); }

}  // namespace ternassert
