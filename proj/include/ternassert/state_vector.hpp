#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ternassert/gates.hpp"
#include "ternassert/trit.hpp"

namespace ternassert {

/// Largest register the dense simulator accepts (3^12 = 531441 amplitudes).
inline constexpr int kMaxQutrits = 12;
/// Branch probabilities below this are treated as impossible.
inline constexpr double kDeadBranch = 1e-12;

std::size_t pow3(int n);

/// Dense pure state of n qutrits.
///
/// Qutrit 0 is the leftmost ket digit, i.e. the most significant trit:
/// |d0 d1 ... d(n-1)> lives at flat index sum_k d_k * 3^(n-1-k).
class StateVector {
public:
    /// Computational basis state |digits>.
    static StateVector basis(int num_qutrits, std::span<const Trit> digits);
    static StateVector basis(const TritString& digits) { return basis(static_cast<int>(digits.size()), digits); }
    /// Takes ownership of raw amplitudes; size must be a power of three. Not renormalized.
    static StateVector from_amplitudes(std::vector<Amplitude> amps);

    [[nodiscard]] int num_qutrits() const { return num_qutrits_; }
    [[nodiscard]] std::size_t size() const { return amps_.size(); }
    [[nodiscard]] std::span<const Amplitude> amplitudes() const { return amps_; }
    [[nodiscard]] const Amplitude& operator[](std::size_t i) const { return amps_[i]; }
    [[nodiscard]] Amplitude amplitude(std::span<const Trit> digits) const;

    [[nodiscard]] double norm_squared() const;

    void apply_single(const Gate3& gate, int q);
    /// Applies `gate` to the target on every basis component whose control trit is 2.
    void apply_controlled_ms(const Gate3& gate, int control, int target);
    /// 9x9 matrix on the ordered pair (q1, q2), pair index 3*d(q1) + d(q2).
    void apply_two_qutrit(const Matrix9& gate, int q1, int q2);
    void apply_two_qutrit(const Gate9& gate, int q1, int q2) { apply_two_qutrit(gate.matrix, q1, q2); }

    [[nodiscard]] std::array<double, 3> qutrit_probabilities(int q) const;

    /// Projective measurement of qutrit q. Outcome d is the first digit whose cumulative
    /// probability exceeds `uniform_draw`; the state collapses and is renormalized.
    Trit measure_and_collapse(int q, double uniform_draw);

    /// Basis label of a flat index, e.g. "2202".
    [[nodiscard]] std::string basis_label(std::size_t index) const;
    [[nodiscard]] TritString digits_of(std::size_t index) const;

private:
    StateVector(int n, std::vector<Amplitude> amps) : num_qutrits_(n), amps_(std::move(amps)) {}
    void check_qutrit(int q, const char* what) const;
    [[nodiscard]] std::size_t stride(int q) const { return pow3(num_qutrits_ - 1 - q); }

    int num_qutrits_ = 0;
    std::vector<Amplitude> amps_;
};

/// |<a|b>|^2. Throws InputError when the qutrit counts differ.
double fidelity(const StateVector& a, const StateVector& b);

/// Tensor product a (x) b with a's qutrits on the left.
StateVector tensor(const StateVector& a, const StateVector& b);

/// The Chrestenson-basis single-qutrit states.
StateVector plus_state();
StateVector minus_state(int i);  // |-_i>, i in {1,2}

}  // namespace ternassert
