#include "ternassert/gates.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "ternassert/errors.hpp"

namespace ternassert {
namespace {

constexpr std::array<std::pair<GateLabel, std::string_view>, 8> kLabelNames{{
    {GateLabel::Z0, "z0"},
    {GateLabel::ZPlus1, "z+1"},
    {GateLabel::ZPlus2, "z+2"},
    {GateLabel::Z01, "z01"},
    {GateLabel::Z02, "z02"},
    {GateLabel::Z12, "z12"},
    {GateLabel::Ch1, "ch1"},
    {GateLabel::Ch2, "ch2"},
}};

// Image of |0>, |1>, |2> under each permutation gate.
std::array<int, 3> permutation_of(GateLabel label) {
    switch (label) {
        case GateLabel::Z0: return {0, 1, 2};
        case GateLabel::ZPlus1: return {1, 2, 0};
        case GateLabel::ZPlus2: return {2, 0, 1};
        case GateLabel::Z01: return {1, 0, 2};
        case GateLabel::Z02: return {2, 1, 0};
        case GateLabel::Z12: return {0, 2, 1};
        default: throw InputError("not a Z gate: " + std::string(label_name(label)));
    }
}

}  // namespace

Amplitude omega() { return std::polar(1.0, 2.0 * std::numbers::pi / 3.0); }

Amplitude omega_pow(int k) {
    const int r = ((k % 3) + 3) % 3;
    return std::polar(1.0, 2.0 * std::numbers::pi * r / 3.0);
}

std::string_view label_name(GateLabel label) {
    for (const auto& [l, name] : kLabelNames)
        if (l == label) return name;
    return "?";
}

std::optional<GateLabel> parse_label(std::string_view text) {
    std::string lower(text);
    std::ranges::transform(lower, lower.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const auto& [l, name] : kLabelNames)
        if (name == lower) return l;
    return std::nullopt;
}

bool is_z_label(GateLabel label) { return label != GateLabel::Ch1 && label != GateLabel::Ch2; }

std::string_view composite_name(CompositeKind kind) { return kind == CompositeKind::A1 ? "a1" : "a2"; }

int composite_multiplier(CompositeKind kind) { return kind == CompositeKind::A1 ? 1 : 2; }

Gate3 z_gate(GateLabel label) {
    const auto perm = permutation_of(label);
    Gate3 g{label, {}, 1};
    for (int in = 0; in < 3; ++in) g.matrix[perm[in]][in] = 1.0;
    return g;
}

Gate3 chrestenson(int k) {
    if (k != 1 && k != 2) throw InputError("Chrestenson index must be 1 or 2, got " + std::to_string(k));
    // Ch1[r][c] = w^(r*c) / sqrt(3); Ch2 is its conjugate.
    const double scale = 1.0 / std::sqrt(3.0);
    const int sign = k == 1 ? 1 : -1;
    Gate3 g{k == 1 ? GateLabel::Ch1 : GateLabel::Ch2, {}, 1};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) g.matrix[r][c] = scale * omega_pow(sign * r * c);
    return g;
}

Gate3 gate_for(GateLabel label) {
    if (label == GateLabel::Ch1) return chrestenson(1);
    if (label == GateLabel::Ch2) return chrestenson(2);
    return z_gate(label);
}

std::vector<PrimitiveOp> a_gate_sequence(CompositeKind kind, int control, int target) {
    if (control == target) throw InputError("A-gate control and target must differ");
    const GateLabel first = kind == CompositeKind::A1 ? GateLabel::ZPlus2 : GateLabel::ZPlus1;
    const GateLabel second = kind == CompositeKind::A1 ? GateLabel::ZPlus1 : GateLabel::ZPlus2;
    return {
        ControlledOp{z_gate(first), control, target},
        SingleOp{z_gate(GateLabel::ZPlus1), control},
        ControlledOp{z_gate(second), control, target},
        SingleOp{z_gate(GateLabel::ZPlus2), control},
    };
}

Gate9 a_gate_unitary(CompositeKind kind) {
    const int m = composite_multiplier(kind);
    Gate9 g{kind, {}, 4, 4};
    for (int c = 0; c < 3; ++c)
        for (int t = 0; t < 3; ++t) g.matrix[3 * c + (t + m * c) % 3][3 * c + t] = 1.0;
    return g;
}

}  // namespace ternassert
