#include "ternassert/state_vector.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ternassert/errors.hpp"

namespace ternassert {

std::size_t pow3(int n) {
    std::size_t r = 1;
    for (int i = 0; i < n; ++i) r *= 3;
    return r;
}

StateVector StateVector::basis(int num_qutrits, std::span<const Trit> digits) {
    if (num_qutrits < 1) throw InputError("a state needs at least one qutrit");
    if (num_qutrits > kMaxQutrits)
        throw ResourceError("at most " + std::to_string(kMaxQutrits) + " qutrits are supported, got " +
                            std::to_string(num_qutrits));
    if (digits.size() != static_cast<std::size_t>(num_qutrits))
        throw InputError("expected " + std::to_string(num_qutrits) + " initial digits, got " +
                         std::to_string(digits.size()));
    std::vector<Amplitude> amps(pow3(num_qutrits));
    std::size_t index = 0;
    for (Trit d : digits) index = index * 3 + static_cast<std::size_t>(d.value());
    amps[index] = 1.0;
    return {num_qutrits, std::move(amps)};
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amps) {
    int n = 0;
    std::size_t dim = 1;
    while (dim < amps.size()) {
        dim *= 3;
        ++n;
    }
    if (n < 1 || dim != amps.size()) throw InputError("amplitude count must be 3^n with n >= 1");
    if (n > kMaxQutrits) throw ResourceError("state too large");
    return {n, std::move(amps)};
}

Amplitude StateVector::amplitude(std::span<const Trit> digits) const {
    if (digits.size() != static_cast<std::size_t>(num_qutrits_)) throw InputError("digit count mismatch");
    std::size_t index = 0;
    for (Trit d : digits) index = index * 3 + static_cast<std::size_t>(d.value());
    return amps_[index];
}

double StateVector::norm_squared() const {
    return std::accumulate(amps_.begin(), amps_.end(), 0.0,
                           [](double acc, const Amplitude& a) { return acc + std::norm(a); });
}

void StateVector::check_qutrit(int q, const char* what) const {
    if (q < 0 || q >= num_qutrits_)
        throw InputError(std::string(what) + " index " + std::to_string(q) + " out of range for " +
                         std::to_string(num_qutrits_) + " qutrits");
}

void StateVector::apply_single(const Gate3& gate, int q) {
    check_qutrit(q, "qutrit");
    const std::size_t s = stride(q);
    const std::size_t block = 3 * s;
    const auto& m = gate.matrix;
    for (std::size_t base = 0; base < amps_.size(); base += block) {
        for (std::size_t low = 0; low < s; ++low) {
            const std::size_t i0 = base + low;
            const Amplitude a0 = amps_[i0], a1 = amps_[i0 + s], a2 = amps_[i0 + 2 * s];
            amps_[i0] = m[0][0] * a0 + m[0][1] * a1 + m[0][2] * a2;
            amps_[i0 + s] = m[1][0] * a0 + m[1][1] * a1 + m[1][2] * a2;
            amps_[i0 + 2 * s] = m[2][0] * a0 + m[2][1] * a1 + m[2][2] * a2;
        }
    }
}

void StateVector::apply_controlled_ms(const Gate3& gate, int control, int target) {
    check_qutrit(control, "control");
    check_qutrit(target, "target");
    if (control == target) throw InputError("control and target must differ");
    const std::size_t cs = stride(control);
    const std::size_t ts = stride(target);
    const auto& m = gate.matrix;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        // Visit each target triple once, from its digit-0 member, with control reading 2.
        if ((i / cs) % 3 != 2 || (i / ts) % 3 != 0) continue;
        const Amplitude a0 = amps_[i], a1 = amps_[i + ts], a2 = amps_[i + 2 * ts];
        amps_[i] = m[0][0] * a0 + m[0][1] * a1 + m[0][2] * a2;
        amps_[i + ts] = m[1][0] * a0 + m[1][1] * a1 + m[1][2] * a2;
        amps_[i + 2 * ts] = m[2][0] * a0 + m[2][1] * a1 + m[2][2] * a2;
    }
}

void StateVector::apply_two_qutrit(const Matrix9& gate, int q1, int q2) {
    check_qutrit(q1, "first");
    check_qutrit(q2, "second");
    if (q1 == q2) throw InputError("two-qutrit gate needs distinct qutrits");
    const std::size_t s1 = stride(q1);
    const std::size_t s2 = stride(q2);
    std::array<Amplitude, 9> in{};
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i / s1) % 3 != 0 || (i / s2) % 3 != 0) continue;
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b) in[3 * a + b] = amps_[i + a * s1 + b * s2];
        for (std::size_t a = 0; a < 3; ++a) {
            for (std::size_t b = 0; b < 3; ++b) {
                Amplitude acc = 0.0;
                for (std::size_t k = 0; k < 9; ++k) acc += gate[3 * a + b][k] * in[k];
                amps_[i + a * s1 + b * s2] = acc;
            }
        }
    }
}

std::array<double, 3> StateVector::qutrit_probabilities(int q) const {
    check_qutrit(q, "qutrit");
    const std::size_t s = stride(q);
    std::array<double, 3> p{};
    for (std::size_t i = 0; i < amps_.size(); ++i) p[(i / s) % 3] += std::norm(amps_[i]);
    return p;
}

Trit StateVector::measure_and_collapse(int q, double uniform_draw) {
    auto p = qutrit_probabilities(q);
    double total = 0.0;
    for (double& pd : p) {
        if (pd < kDeadBranch) pd = 0.0;
        total += pd;
    }
    if (total < kDeadBranch) throw NumericalError("qutrit " + std::to_string(q) + " has no measurable outcome");

    int outcome = 2;
    double cumulative = 0.0;
    const double threshold = uniform_draw * total;
    for (int d = 0; d < 3; ++d) {
        if (p[d] == 0.0) continue;
        cumulative += p[d];
        if (threshold < cumulative) {
            outcome = d;
            break;
        }
        outcome = d;  // keeps the last live branch if rounding pushes the draw past the end
    }

    const std::size_t s = stride(q);
    const double scale = 1.0 / std::sqrt(p[outcome]);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (static_cast<int>((i / s) % 3) == outcome)
            amps_[i] *= scale;
        else
            amps_[i] = 0.0;
    }
    return Trit(outcome);
}

TritString StateVector::digits_of(std::size_t index) const {
    TritString d(static_cast<std::size_t>(num_qutrits_));
    for (int k = num_qutrits_ - 1; k >= 0; --k) {
        d[static_cast<std::size_t>(k)] = Trit(static_cast<int>(index % 3));
        index /= 3;
    }
    return d;
}

std::string StateVector::basis_label(std::size_t index) const { return to_string(digits_of(index)); }

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.num_qutrits() != b.num_qutrits())
        throw InputError("fidelity needs equal qutrit counts (" + std::to_string(a.num_qutrits()) + " vs " +
                         std::to_string(b.num_qutrits()) + ")");
    Amplitude inner = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) inner += std::conj(a[i]) * b[i];
    return std::norm(inner);
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    std::vector<Amplitude> amps(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) amps[i * b.size() + j] = a[i] * b[j];
    return StateVector::from_amplitudes(std::move(amps));
}

StateVector plus_state() {
    const double s = 1.0 / std::sqrt(3.0);
    return StateVector::from_amplitudes({s, s, s});
}

StateVector minus_state(int i) {
    if (i != 1 && i != 2) throw InputError("|-_i> needs i in {1,2}");
    const double s = 1.0 / std::sqrt(3.0);
    return StateVector::from_amplitudes({s, s * omega_pow(i), s * omega_pow(2 * i)});
}

}  // namespace ternassert
