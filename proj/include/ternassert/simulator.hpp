#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ternassert/circuit.hpp"
#include "ternassert/state_vector.hpp"

namespace ternassert {

struct SimulationResult {
    StateVector final_state;
    std::vector<std::pair<std::string, StateVector>> slices;
};

/// Applies one unitary op in place. A1/A2 run as their M-S sequences. MeasureOp is rejected.
void apply_op(StateVector& state, const GateOp& op);

/// Runs the unitary part of `circuit` (measurements are ignored) from its initial basis state.
SimulationResult simulate(const Circuit& circuit);
/// Same, from an arbitrary initial state of matching size.
SimulationResult simulate(const Circuit& circuit, StateVector initial);

/// Counter-based uniform draws in [0,1): draw k of shot i under seed s is a pure
/// function of (s, i, k).
double shot_uniform(std::uint64_t seed, std::uint64_t shot, std::uint64_t draw);

/// Outcome tuples (one digit per register, in measurement order) -> counts.
using Histogram = std::map<std::string, std::size_t>;

struct ShotResult {
    std::vector<std::string> registers;
    Histogram histogram;
    std::size_t shots = 0;
};

/// Samples the measurement suffix `shots` times. Requires at least one MeasureOp.
ShotResult simulate_shots(const Circuit& circuit, std::size_t shots, std::uint64_t seed,
                          std::optional<StateVector> initial = std::nullopt);

}  // namespace ternassert
