#include "ternassert/simulator.hpp"

#include <string>

#include "overloaded.hpp"
#include "ternassert/errors.hpp"

namespace ternassert {
namespace {

using detail::Overloaded;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void apply_primitive(StateVector& state, const PrimitiveOp& op) {
    std::visit(Overloaded{
                   [&](const SingleOp& s) { state.apply_single(s.gate, s.qutrit); },
                   [&](const ControlledOp& c) { state.apply_controlled_ms(c.gate, c.control, c.target); },
               },
               op);
}

}  // namespace

void apply_op(StateVector& state, const GateOp& op) {
    std::visit(Overloaded{
                   [&](const SingleOp& s) { state.apply_single(s.gate, s.qutrit); },
                   [&](const ControlledOp& c) { state.apply_controlled_ms(c.gate, c.control, c.target); },
                   [&](const CompositeOp& c) {
                       for (const auto& prim : a_gate_sequence(c.kind, c.control, c.target)) apply_primitive(state, prim);
                   },
                   [](const MeasureOp&) { throw InputError("apply_op cannot apply a measurement"); },
               },
               op);
}

SimulationResult simulate(const Circuit& circuit) {
    return simulate(circuit, StateVector::basis(circuit.init_digits()));
}

SimulationResult simulate(const Circuit& circuit, StateVector initial) {
    if (initial.num_qutrits() != circuit.num_qutrits())
        throw InputError("initial state has " + std::to_string(initial.num_qutrits()) + " qutrits, circuit has " +
                         std::to_string(circuit.num_qutrits()));
    SimulationResult result{std::move(initial), {}};
    const auto& ops = circuit.ops();
    const auto& slices = circuit.slices();
    const std::size_t unitary = circuit.unitary_length();
    std::size_t next_slice = 0;
    auto take_slices = [&](std::size_t position) {
        while (next_slice < slices.size() && slices[next_slice].position == position) {
            result.slices.emplace_back(slices[next_slice].name, result.final_state);
            ++next_slice;
        }
    };
    take_slices(0);
    for (std::size_t i = 0; i < unitary; ++i) {
        apply_op(result.final_state, ops[i]);
        take_slices(i + 1);
    }
    // Slices inside the measurement suffix see the pre-measurement state.
    while (next_slice < slices.size()) {
        result.slices.emplace_back(slices[next_slice].name, result.final_state);
        ++next_slice;
    }
    return result;
}

double shot_uniform(std::uint64_t seed, std::uint64_t shot, std::uint64_t draw) {
    const std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ shot) ^ draw);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

ShotResult simulate_shots(const Circuit& circuit, std::size_t shots, std::uint64_t seed,
                          std::optional<StateVector> initial) {
    if (shots == 0) throw InputError("shots must be positive");
    std::vector<const MeasureOp*> measures;
    for (const auto& op : circuit.ops())
        if (const auto* m = std::get_if<MeasureOp>(&op)) measures.push_back(m);
    if (measures.empty()) throw InputError("circuit has no measurements to sample");

    const StateVector prepared = initial ? simulate(circuit, std::move(*initial)).final_state
                                         : simulate(circuit).final_state;
    ShotResult result;
    result.shots = shots;
    for (const auto* m : measures) result.registers.push_back(m->reg);

    std::string key(measures.size(), '0');
    for (std::size_t shot = 0; shot < shots; ++shot) {
        StateVector state = prepared;
        for (std::size_t k = 0; k < measures.size(); ++k) {
            const Trit d = state.measure_and_collapse(measures[k]->qutrit, shot_uniform(seed, shot, k));
            key[k] = static_cast<char>('0' + d.value());
        }
        ++result.histogram[key];
    }
    return result;
}

}  // namespace ternassert
