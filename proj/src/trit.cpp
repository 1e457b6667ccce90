#include "ternassert/trit.hpp"

namespace ternassert {

TritString trits_from_string(const std::string& digits) {
    TritString out;
    out.reserve(digits.size());
    for (char c : digits) {
        if (c < '0' || c > '2') throw InputError("not a trit string: '" + digits + "'");
        out.emplace_back(c - '0');
    }
    return out;
}

std::string to_string(const TritString& digits) {
    std::string s;
    s.reserve(digits.size());
    for (Trit t : digits) s.push_back(static_cast<char>('0' + t.value()));
    return s;
}

}  // namespace ternassert
