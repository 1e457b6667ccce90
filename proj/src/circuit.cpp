#include "ternassert/circuit.hpp"

#include <algorithm>
#include <string>

#include "ternassert/errors.hpp"
#include "overloaded.hpp"

namespace ternassert {
using detail::Overloaded;

Circuit::Circuit(int num_qutrits) : Circuit(num_qutrits, TritString(static_cast<std::size_t>(std::max(num_qutrits, 0)))) {}

Circuit::Circuit(int num_qutrits, TritString init_digits) : num_qutrits_(num_qutrits), init_(std::move(init_digits)) {
    if (num_qutrits < 1) throw InputError("a circuit needs at least one qutrit");
    if (init_.size() != static_cast<std::size_t>(num_qutrits))
        throw InputError("init has " + std::to_string(init_.size()) + " digits for " + std::to_string(num_qutrits) +
                         " qutrits");
}

void Circuit::check_qutrit(int q) const {
    if (q < 0 || q >= num_qutrits_)
        throw InputError("qutrit " + std::to_string(q) + " out of range for " + std::to_string(num_qutrits_) +
                         " qutrits");
}

bool Circuit::has_measurements() const {
    return std::ranges::any_of(ops_, [](const GateOp& op) { return std::holds_alternative<MeasureOp>(op); });
}

std::size_t Circuit::unitary_length() const {
    const auto it = std::ranges::find_if(ops_, [](const GateOp& op) { return std::holds_alternative<MeasureOp>(op); });
    return static_cast<std::size_t>(it - ops_.begin());
}

Circuit& Circuit::add(GateOp op) {
    const bool measured = has_measurements();
    std::visit(Overloaded{
                   [&](const SingleOp& s) { check_qutrit(s.qutrit); },
                   [&](const ControlledOp& c) {
                       check_qutrit(c.control);
                       check_qutrit(c.target);
                       if (c.control == c.target) throw InputError("control and target must differ");
                       if (!is_z_label(c.gate.label)) throw InputError("controlled gates must be Z permutations");
                   },
                   [&](const CompositeOp& c) {
                       check_qutrit(c.control);
                       check_qutrit(c.target);
                       if (c.control == c.target) throw InputError("control and target must differ");
                   },
                   [&](const MeasureOp& m) {
                       check_qutrit(m.qutrit);
                       if (m.reg.empty()) throw InputError("measurement register needs a name");
                       for (const auto& other : ops_)
                           if (const auto* prev = std::get_if<MeasureOp>(&other); prev && prev->reg == m.reg)
                               throw InputError("duplicate register name '" + m.reg + "'");
                   },
               },
               op);
    if (measured && !std::holds_alternative<MeasureOp>(op))
        throw InputError("gates after a measurement are not supported");
    ops_.push_back(std::move(op));
    return *this;
}

Circuit& Circuit::slice(std::string name) { return slice_at(std::move(name), ops_.size()); }

Circuit& Circuit::slice_at(std::string name, std::size_t position) {
    if (position > ops_.size()) throw InputError("slice position past the end of the circuit");
    if (!slices_.empty() && position < slices_.back().position) throw InputError("slice positions must not decrease");
    if (std::ranges::any_of(slices_, [&](const Slice& s) { return s.name == name; }))
        throw InputError("duplicate slice name '" + name + "'");
    slices_.push_back({std::move(name), position});
    return *this;
}

Circuit concat(const Circuit& a, const Circuit& b) {
    if (a.num_qutrits() != b.num_qutrits()) throw InputError("cannot concatenate circuits of different widths");
    Circuit out(a.num_qutrits(), a.init_digits());
    for (const auto& op : a.ops()) out.add(op);
    for (const auto& s : a.slices()) out.slice_at(s.name, s.position);
    for (const auto& op : b.ops()) out.add(op);
    for (const auto& s : b.slices()) out.slice_at(s.name, s.position + a.ops().size());
    return out;
}

std::vector<PrimitiveOp> primitive_expansion(const Circuit& circuit) {
    std::vector<PrimitiveOp> out;
    for (const auto& op : circuit.ops()) {
        std::visit(Overloaded{
                       [&](const SingleOp& s) { out.emplace_back(s); },
                       [&](const ControlledOp& c) { out.emplace_back(c); },
                       [&](const CompositeOp& c) {
                           auto seq = a_gate_sequence(c.kind, c.control, c.target);
                           out.insert(out.end(), seq.begin(), seq.end());
                       },
                       [](const MeasureOp&) {},
                   },
                   op);
    }
    return out;
}

int quantum_cost(const Circuit& circuit) {
    int cost = 0;
    for (const auto& op : circuit.ops()) {
        cost += std::visit(Overloaded{
                               [](const SingleOp& s) { return s.gate.cost; },
                               [](const ControlledOp& c) { return c.gate.cost; },
                               [](const CompositeOp& c) { return a_gate_unitary(c.kind).cost; },
                               [](const MeasureOp&) { return 0; },
                           },
                           op);
    }
    return cost;
}

int depth_asap(const Circuit& circuit) {
    std::vector<int> layer(static_cast<std::size_t>(circuit.num_qutrits()), 0);
    int depth = 0;
    for (const auto& prim : primitive_expansion(circuit)) {
        std::visit(Overloaded{
                       [&](const SingleOp& s) {
                           auto& l = layer[static_cast<std::size_t>(s.qutrit)];
                           depth = std::max(depth, ++l);
                       },
                       [&](const ControlledOp& c) {
                           auto& lc = layer[static_cast<std::size_t>(c.control)];
                           auto& lt = layer[static_cast<std::size_t>(c.target)];
                           lc = lt = std::max(lc, lt) + 1;
                           depth = std::max(depth, lc);
                       },
                   },
                   prim);
    }
    return depth;
}

Metrics metrics(const Circuit& circuit) { return {quantum_cost(circuit), depth_asap(circuit)}; }

}  // namespace ternassert
