#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ternassert {

using Amplitude = std::complex<double>;
using Matrix3 = std::array<std::array<Amplitude, 3>, 3>;
using Matrix9 = std::array<std::array<Amplitude, 9>, 9>;

/// Primitive cube root of unity exp(2*pi*i/3).
Amplitude omega();
/// omega^k for any integer k.
Amplitude omega_pow(int k);

enum class GateLabel { Z0, ZPlus1, ZPlus2, Z01, Z02, Z12, Ch1, Ch2 };

/// Lower-case DSL spelling: "z0", "z+1", "z+2", "z01", "z02", "z12", "ch1", "ch2".
std::string_view label_name(GateLabel label);
/// Case-insensitive inverse of label_name.
std::optional<GateLabel> parse_label(std::string_view text);
bool is_z_label(GateLabel label);

/// Single-qutrit gate. Every primitive has unit quantum cost.
struct Gate3 {
    GateLabel label = GateLabel::Z0;
    Matrix3 matrix{};
    int cost = 1;

    friend bool operator==(const Gate3&, const Gate3&) = default;
};

enum class CompositeKind { A1, A2 };

std::string_view composite_name(CompositeKind kind);
/// Multiplier m in |c,t> -> |c, t + m*c mod 3>.
int composite_multiplier(CompositeKind kind);

/// Semantic two-qutrit form of a composite gate. Ordered pair (control, target); flat index 3*c + t.
struct Gate9 {
    CompositeKind kind = CompositeKind::A1;
    Matrix9 matrix{};
    int cost = 4;
    int depth = 4;
};

/// The six M-S permutation gates. Throws InputError for Ch1/Ch2.
Gate3 z_gate(GateLabel label);
/// Normalized Chrestenson gate (1/sqrt(3) prefactor). k must be 1 or 2.
Gate3 chrestenson(int k);
/// Any primitive gate by label.
Gate3 gate_for(GateLabel label);

struct SingleOp {
    Gate3 gate;
    int qutrit = 0;

    friend bool operator==(const SingleOp&, const SingleOp&) = default;
};

/// M-S controlled gate: `gate` hits the target only when the control reads |2>.
struct ControlledOp {
    Gate3 gate;
    int control = 0;
    int target = 0;

    friend bool operator==(const ControlledOp&, const ControlledOp&) = default;
};

using PrimitiveOp = std::variant<SingleOp, ControlledOp>;

/// Four-gate M-S realisation of A1/A2:
///   A1: C[+2], Z(+1) on control, C[+1], Z(+2) on control
///   A2: C[+1], Z(+1) on control, C[+2], Z(+2) on control
std::vector<PrimitiveOp> a_gate_sequence(CompositeKind kind, int control, int target);

/// 9x9 permutation |c,t> -> |c, (t + m*c) mod 3>.
Gate9 a_gate_unitary(CompositeKind kind);

}  // namespace ternassert
