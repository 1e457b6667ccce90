#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "ternassert/state_vector.hpp"
#include "ternassert/trit.hpp"

namespace ternassert::testing {

inline StateVector random_state(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<Amplitude> amps(pow3(n));
    double norm = 0.0;
    for (auto& a : amps) {
        a = {g(rng), g(rng)};
        norm += std::norm(a);
    }
    for (auto& a : amps) a /= std::sqrt(norm);
    return StateVector::from_amplitudes(std::move(amps));
}

inline double max_abs_diff(const StateVector& a, const StateVector& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

/// Independent reference: maps every basis label through `permute` (digits -> digits)
/// by enumeration. Valid for any classical reversible gate.
inline StateVector apply_basis_map(const StateVector& s, const std::function<TritString(TritString)>& permute) {
    std::vector<Amplitude> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        TritString d = permute(s.digits_of(i));
        std::size_t j = 0;
        for (Trit t : d) j = j * 3 + static_cast<std::size_t>(t.value());
        out[j] += s[i];
    }
    return StateVector::from_amplitudes(std::move(out));
}

inline StateVector superpose(const std::vector<std::pair<std::string, Amplitude>>& terms) {
    const int n = static_cast<int>(terms.front().first.size());
    std::vector<Amplitude> amps(pow3(n));
    double norm = 0.0;
    for (const auto& [ket, a] : terms) {
        std::size_t j = 0;
        for (char c : ket) j = j * 3 + static_cast<std::size_t>(c - '0');
        amps[j] += a;
    }
    for (const auto& a : amps) norm += std::norm(a);
    for (auto& a : amps) a /= std::sqrt(norm);
    return StateVector::from_amplitudes(std::move(amps));
}

}  // namespace ternassert::testing

#include "ternassert/circuit.hpp"

namespace ternassert::testing {

inline constexpr GateLabel kAllLabels[] = {GateLabel::Z0,  GateLabel::ZPlus1, GateLabel::ZPlus2, GateLabel::Z01,
                                           GateLabel::Z02, GateLabel::Z12,    GateLabel::Ch1,    GateLabel::Ch2};
inline constexpr GateLabel kZLabels[] = {GateLabel::Z0,  GateLabel::ZPlus1, GateLabel::ZPlus2,
                                         GateLabel::Z01, GateLabel::Z02,    GateLabel::Z12};

/// Random unitary circuit mixing every op kind. Needs n >= 2.
inline Circuit random_circuit(int n, int length, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 3), qutrit(0, n - 1), label(0, 7), zlabel(0, 5), digit(0, 2);
    TritString init;
    for (int i = 0; i < n; ++i) init.push_back(Trit(digit(rng)));
    Circuit c(n, init);
    auto pair = [&] {
        int a = qutrit(rng), b = qutrit(rng);
        while (b == a) b = qutrit(rng);
        return std::pair{a, b};
    };
    for (int i = 0; i < length; ++i) {
        switch (kind(rng)) {
            case 0: c.gate(kAllLabels[label(rng)], qutrit(rng)); break;
            case 1: { auto [a, b] = pair(); c.cgate(kZLabels[zlabel(rng)], a, b); break; }
            case 2: { auto [a, b] = pair(); c.a1(a, b); break; }
            default: { auto [a, b] = pair(); c.a2(a, b); break; }
        }
    }
    return c;
}

}  // namespace ternassert::testing
