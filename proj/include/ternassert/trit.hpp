#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "ternassert/errors.hpp"

namespace ternassert {

/// A classical ternary digit. Arithmetic is modulo 3.
class Trit {
public:
    constexpr Trit() = default;
    constexpr explicit Trit(int v) : value_(static_cast<std::uint8_t>(v)) {
        if (v < 0 || v > 2) throw InputError("trit value must be 0, 1 or 2, got " + std::to_string(v));
    }

    [[nodiscard]] constexpr int value() const { return value_; }

    friend constexpr Trit operator+(Trit a, Trit b) { return Trit((a.value_ + b.value_) % 3); }
    friend constexpr Trit operator-(Trit a, Trit b) { return Trit((a.value_ + 3 - b.value_) % 3); }
    friend constexpr Trit operator*(int k, Trit a) { return Trit((((k % 3) + 3) % 3 * a.value_) % 3); }
    friend constexpr auto operator<=>(Trit, Trit) = default;

private:
    std::uint8_t value_ = 0;
};

using TritString = std::vector<Trit>;

/// Builds digits from a string such as "2202".
TritString trits_from_string(const std::string& digits);
std::string to_string(const TritString& digits);

}  // namespace ternassert
