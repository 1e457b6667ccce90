#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "ternassert/gates.hpp"
#include "ternassert/trit.hpp"

namespace ternassert {

/// A1 or A2 between two qutrits of the circuit.
struct CompositeOp {
    CompositeKind kind = CompositeKind::A1;
    int control = 0;
    int target = 1;

    friend bool operator==(const CompositeOp&, const CompositeOp&) = default;
};

/// Measurement into a named classical register. Only allowed as a circuit suffix.
struct MeasureOp {
    int qutrit = 0;
    std::string reg;

    friend bool operator==(const MeasureOp&, const MeasureOp&) = default;
};

using GateOp = std::variant<SingleOp, ControlledOp, CompositeOp, MeasureOp>;

/// Named snapshot taken after the first `position` ops.
struct Slice {
    std::string name;
    std::size_t position = 0;

    friend bool operator==(const Slice&, const Slice&) = default;
};

class Circuit {
public:
    explicit Circuit(int num_qutrits);
    Circuit(int num_qutrits, TritString init_digits);

    [[nodiscard]] int num_qutrits() const { return num_qutrits_; }
    [[nodiscard]] const TritString& init_digits() const { return init_; }
    [[nodiscard]] const std::vector<GateOp>& ops() const { return ops_; }
    [[nodiscard]] const std::vector<Slice>& slices() const { return slices_; }
    [[nodiscard]] bool has_measurements() const;
    /// Index of the first MeasureOp, or ops().size().
    [[nodiscard]] std::size_t unitary_length() const;

    /// Validates indices and the measurement-suffix rule.
    Circuit& add(GateOp op);
    Circuit& gate(GateLabel label, int q) { return add(SingleOp{gate_for(label), q}); }
    Circuit& cgate(GateLabel label, int control, int target) { return add(ControlledOp{gate_for(label), control, target}); }
    Circuit& a1(int control, int target) { return add(CompositeOp{CompositeKind::A1, control, target}); }
    Circuit& a2(int control, int target) { return add(CompositeOp{CompositeKind::A2, control, target}); }
    Circuit& measure(int q, std::string reg) { return add(MeasureOp{q, std::move(reg)}); }
    /// Marks a snapshot at the current end of the op list. Names must be unique and
    /// positions non-decreasing.
    Circuit& slice(std::string name);
    Circuit& slice_at(std::string name, std::size_t position);

    friend bool operator==(const Circuit&, const Circuit&) = default;

private:
    void check_qutrit(int q) const;

    int num_qutrits_ = 0;
    TritString init_;
    std::vector<GateOp> ops_;
    std::vector<Slice> slices_;
};

/// Appends b's ops after a's; qutrit counts must agree. Slices of b are shifted.
Circuit concat(const Circuit& a, const Circuit& b);

/// Expands composites into their four-gate M-S sequences and drops measurements.
std::vector<PrimitiveOp> primitive_expansion(const Circuit& circuit);

struct Metrics {
    int quantum_cost = 0;
    int depth = 0;

    friend bool operator==(const Metrics&, const Metrics&) = default;
};

/// Unit cost per primitive gate, 4 per A1/A2, 0 per measurement.
int quantum_cost(const Circuit& circuit);
/// ASAP layering over the primitive expansion; measurements excluded.
int depth_asap(const Circuit& circuit);
Metrics metrics(const Circuit& circuit);

}  // namespace ternassert
