#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ternassert/circuit.hpp"
#include "ternassert/simulator.hpp"
#include "ternassert/state_vector.hpp"

namespace ternassert {

enum class EntangledGroup { A, B };
enum class SuperpositionTarget { Plus, Minus1, Minus2 };

struct ClassicalFamily {
    Trit expected;
    friend bool operator==(const ClassicalFamily&, const ClassicalFamily&) = default;
};

/// Group A states: digit sum constant mod 3. Group B: digit difference constant mod 3.
struct EntangledFamily {
    EntangledGroup group = EntangledGroup::B;
    int row = 0;
    friend bool operator==(const EntangledFamily&, const EntangledFamily&) = default;
};

struct SuperpositionFamily {
    SuperpositionTarget target = SuperpositionTarget::Plus;
    friend bool operator==(const SuperpositionFamily&, const SuperpositionFamily&) = default;
};

/// Superposition check on q1 before the entangling step plus a group-B entanglement
/// check on (q1, q2) after it. Passes iff the (EA, SA) ancillas read `expected_row`.
struct CombinedFamily {
    std::array<Trit, 2> expected_row{};
    friend bool operator==(const CombinedFamily&, const CombinedFamily&) = default;
};

using AssertionFamily = std::variant<ClassicalFamily, EntangledFamily, SuperpositionFamily, CombinedFamily>;

struct AssertionSpec {
    AssertionFamily family;
    std::vector<int> targets;
    /// Combined: {EA ancilla, SA ancilla}.
    std::vector<int> ancillas;
    TritString ancilla_init;
    /// Number of program ops preceding the assertion.
    std::size_t position = 0;

    friend bool operator==(const AssertionSpec&, const AssertionSpec&) = default;
};

std::string_view family_name(const AssertionFamily& family);
std::string_view group_name(EntangledGroup group);
std::string_view target_name(SuperpositionTarget target);

/// Ancilla digit that makes a classical assertion of `expected` pass: 2*expected mod 3.
Trit classical_ancilla(Trit expected);
/// Ancilla digit per entangled-group row: rows 0/1/2 -> |0>/|2>/|1>.
Trit entangled_ancilla(int row);
/// |+> -> |0>, |-1> -> |1>, |-2> -> |2>.
Trit superposition_ancilla(SuperpositionTarget target);

AssertionSpec classical_assertion(int q, Trit expected, int ancilla, std::size_t position = 0);
AssertionSpec entanglement_assertion(int q1, int q2, EntangledGroup group, int row, int ancilla,
                                     std::size_t position = 0);
AssertionSpec superposition_assertion(int q, SuperpositionTarget target, int ancilla, std::size_t position = 0);
AssertionSpec combined_assertion(int q1, int q2, std::array<Trit, 2> expected_row, int ea_ancilla, int sa_ancilla,
                                 std::size_t position = 0);

/// A contiguous run of assertion gates. `deferred` blocks go after the last unitary op
/// of the program instead of at the spec's position.
struct AssertionBlock {
    std::string tag;  // "" for single-block families, "sa"/"ea" for combined
    std::vector<GateOp> ops;
    bool deferred = false;
};

std::vector<AssertionBlock> assertion_blocks(const AssertionSpec& spec);
/// The assertion's gates alone on an n-qutrit register (no measurement).
Circuit assertion_subcircuit(const AssertionSpec& spec, int num_qutrits);

/// Per-shot pass predicate on the digits this assertion's ancillas read.
bool assertion_passes(const AssertionSpec& spec, std::span<const Trit> outcome);

/// Base program with every assertion woven in and its ancillas measured.
struct ExpandedProgram {
    Circuit circuit;
    /// Measurement registers owned by each spec, same order as the specs.
    std::vector<std::vector<std::string>> registers;
};

/// Ancillas must be exactly base.num_qutrits(), +1, ... in declaration order.
/// Assertion blocks are inserted at their position, after user slices at that position;
/// each stage gets an automatic slice "assertK.psiJ" ("assertK.sa.psiJ" for combined).
ExpandedProgram expand(const Circuit& base, std::span<const AssertionSpec> specs);

/// Extends a base-register state with the ancillas' initial digits.
StateVector with_ancillas(const StateVector& base_state, std::span<const AssertionSpec> specs);

inline constexpr std::size_t kMinShotsForEstimate = 100;

struct AssertionReport {
    Histogram histogram;  // over this assertion's registers
    std::size_t pass_count = 0;
    std::size_t shots = 0;
    double pass_rate = 0.0;
    /// Estimated |c_0|^2, |c_1|^2, |c_2|^2 from ancilla frequencies (single-ancilla families).
    std::optional<std::array<double, 3>> estimated_sq_coeffs;
    /// Estimates exist but rest on fewer than kMinShotsForEstimate shots.
    bool low_shot_estimate = false;

    [[nodiscard]] bool verdict(double min_pass_rate = 1.0) const { return pass_rate >= min_pass_rate; }
};

/// Runs all assertions in one expanded program and reports each on its own registers.
/// `initial` (if given) replaces the base circuit's initial basis state.
std::vector<AssertionReport> run_assertions(const Circuit& base, std::span<const AssertionSpec> specs,
                                            std::size_t shots, std::uint64_t seed,
                                            std::optional<StateVector> initial = std::nullopt);

AssertionReport run_assertion(const Circuit& base, const AssertionSpec& spec, std::size_t shots,
                              std::uint64_t seed, std::optional<StateVector> initial = std::nullopt);

}  // namespace ternassert
