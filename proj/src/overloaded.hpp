#pragma once

namespace ternassert::detail {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace ternassert::detail
