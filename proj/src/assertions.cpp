#include "ternassert/assertions.hpp"

#include <algorithm>
#include <string>

#include "overloaded.hpp"
#include "ternassert/errors.hpp"

namespace ternassert {
namespace {

using detail::Overloaded;

void require_distinct(const std::vector<int>& qutrits) {
    for (std::size_t i = 0; i < qutrits.size(); ++i)
        for (std::size_t j = i + 1; j < qutrits.size(); ++j)
            if (qutrits[i] == qutrits[j])
                throw InputError("assertion qutrits must be distinct (qutrit " + std::to_string(qutrits[i]) +
                                 " used twice)");
}

AssertionSpec make_spec(AssertionFamily family, std::vector<int> targets, std::vector<int> ancillas, TritString init,
                        std::size_t position) {
    std::vector<int> all = targets;
    all.insert(all.end(), ancillas.begin(), ancillas.end());
    require_distinct(all);
    for (int q : all)
        if (q < 0) throw InputError("negative qutrit index");
    return {std::move(family), std::move(targets), std::move(ancillas), std::move(init), position};
}

std::vector<GateOp> superposition_ops(int q, int ancilla) {
    return {SingleOp{chrestenson(1), ancilla}, CompositeOp{CompositeKind::A1, ancilla, q},
            SingleOp{chrestenson(2), ancilla}};
}

}  // namespace

std::string_view family_name(const AssertionFamily& family) {
    return std::visit(Overloaded{
                          [](const ClassicalFamily&) { return std::string_view("classical"); },
                          [](const EntangledFamily&) { return std::string_view("entangled"); },
                          [](const SuperpositionFamily&) { return std::string_view("superposition"); },
                          [](const CombinedFamily&) { return std::string_view("combined"); },
                      },
                      family);
}

std::string_view group_name(EntangledGroup group) { return group == EntangledGroup::A ? "a" : "b"; }

std::string_view target_name(SuperpositionTarget target) {
    switch (target) {
        case SuperpositionTarget::Plus: return "plus";
        case SuperpositionTarget::Minus1: return "minus1";
        case SuperpositionTarget::Minus2: return "minus2";
    }
    return "?";
}

Trit classical_ancilla(Trit expected) { return 2 * expected; }

Trit entangled_ancilla(int row) {
    if (row < 0 || row > 2) throw InputError("entangled-state row must be 0, 1 or 2, got " + std::to_string(row));
    return Trit((3 - row) % 3);
}

Trit superposition_ancilla(SuperpositionTarget target) {
    switch (target) {
        case SuperpositionTarget::Plus: return Trit(0);
        case SuperpositionTarget::Minus1: return Trit(1);
        case SuperpositionTarget::Minus2: return Trit(2);
    }
    throw InputError("unknown superposition target");
}

AssertionSpec classical_assertion(int q, Trit expected, int ancilla, std::size_t position) {
    return make_spec(ClassicalFamily{expected}, {q}, {ancilla}, {classical_ancilla(expected)}, position);
}

AssertionSpec entanglement_assertion(int q1, int q2, EntangledGroup group, int row, int ancilla, std::size_t position) {
    const Trit init = entangled_ancilla(row);
    return make_spec(EntangledFamily{group, row}, {q1, q2}, {ancilla}, {init}, position);
}

AssertionSpec superposition_assertion(int q, SuperpositionTarget target, int ancilla, std::size_t position) {
    return make_spec(SuperpositionFamily{target}, {q}, {ancilla}, {superposition_ancilla(target)}, position);
}

AssertionSpec combined_assertion(int q1, int q2, std::array<Trit, 2> expected_row, int ea_ancilla, int sa_ancilla,
                                 std::size_t position) {
    return make_spec(CombinedFamily{expected_row}, {q1, q2}, {ea_ancilla, sa_ancilla}, {Trit(0), Trit(0)}, position);
}

std::vector<AssertionBlock> assertion_blocks(const AssertionSpec& spec) {
    const auto& t = spec.targets;
    const auto& a = spec.ancillas;
    return std::visit(
        Overloaded{
            [&](const ClassicalFamily&) {
                return std::vector<AssertionBlock>{{"", {CompositeOp{CompositeKind::A1, t[0], a[0]}}, false}};
            },
            [&](const EntangledFamily& f) {
                const CompositeKind second = f.group == EntangledGroup::A ? CompositeKind::A1 : CompositeKind::A2;
                return std::vector<AssertionBlock>{
                    {"", {CompositeOp{CompositeKind::A1, t[0], a[0]}, CompositeOp{second, t[1], a[0]}}, false}};
            },
            [&](const SuperpositionFamily&) {
                return std::vector<AssertionBlock>{{"", superposition_ops(t[0], a[0]), false}};
            },
            [&](const CombinedFamily&) {
                // The entanglement half reads beta through A1 and alpha through A2, which
                // yields the beta digit on the EA ancilla for every entangler input.
                return std::vector<AssertionBlock>{
                    {"sa", superposition_ops(t[0], a[1]), false},
                    {"ea",
                     {CompositeOp{CompositeKind::A1, t[1], a[0]}, CompositeOp{CompositeKind::A2, t[0], a[0]}},
                     true},
                };
            },
        },
        spec.family);
}

Circuit assertion_subcircuit(const AssertionSpec& spec, int num_qutrits) {
    Circuit c(num_qutrits);
    for (const auto& block : assertion_blocks(spec))
        for (const auto& op : block.ops) c.add(op);
    return c;
}

bool assertion_passes(const AssertionSpec& spec, std::span<const Trit> outcome) {
    if (outcome.size() != spec.ancillas.size()) throw InputError("outcome width does not match the ancilla count");
    if (const auto* combined = std::get_if<CombinedFamily>(&spec.family))
        return outcome[0] == combined->expected_row[0] && outcome[1] == combined->expected_row[1];
    return outcome[0] == Trit(0);
}

ExpandedProgram expand(const Circuit& base, std::span<const AssertionSpec> specs) {
    const int n = base.num_qutrits();
    const std::size_t unitary = base.unitary_length();

    TritString init = base.init_digits();
    int next_ancilla = n;
    for (const auto& spec : specs) {
        for (int q : spec.targets)
            if (q < 0 || q >= n) throw InputError("assertion target " + std::to_string(q) + " is not a program qutrit");
        if (spec.ancilla_init.size() != spec.ancillas.size())
            throw InputError("ancilla_init length must match the ancilla count");
        for (std::size_t k = 0; k < spec.ancillas.size(); ++k) {
            if (spec.ancillas[k] != next_ancilla)
                throw InputError("ancilla " + std::to_string(spec.ancillas[k]) + " expected at index " +
                                 std::to_string(next_ancilla));
            init.push_back(spec.ancilla_init[k]);
            ++next_ancilla;
        }
        if (spec.position > unitary) throw InputError("assertion placed after the measurement suffix");
    }

    ExpandedProgram out{Circuit(next_ancilla, std::move(init)), {}};
    Circuit& c = out.circuit;
    const auto& base_slices = base.slices();
    std::size_t next_slice = 0;

    auto emit_block = [&](std::size_t k, const AssertionBlock& block) {
        const std::string prefix = "assert" + std::to_string(k) + (block.tag.empty() ? "" : "." + block.tag);
        int stage = 0;
        for (const auto& op : block.ops) {
            c.add(op);
            c.slice(prefix + ".psi" + std::to_string(++stage));
        }
    };

    for (std::size_t p = 0; p <= unitary; ++p) {
        while (next_slice < base_slices.size() && base_slices[next_slice].position == p) c.slice(base_slices[next_slice++].name);
        for (std::size_t k = 0; k < specs.size(); ++k) {
            if (specs[k].position != p) continue;
            for (const auto& block : assertion_blocks(specs[k]))
                if (!block.deferred) emit_block(k, block);
        }
        if (p < unitary) c.add(base.ops()[p]);
    }
    for (std::size_t k = 0; k < specs.size(); ++k)
        for (const auto& block : assertion_blocks(specs[k]))
            if (block.deferred) emit_block(k, block);
    while (next_slice < base_slices.size()) c.slice(base_slices[next_slice++].name);

    for (std::size_t i = unitary; i < base.ops().size(); ++i) c.add(base.ops()[i]);
    for (std::size_t k = 0; k < specs.size(); ++k) {
        std::vector<std::string> regs;
        const bool combined = std::holds_alternative<CombinedFamily>(specs[k].family);
        for (std::size_t a = 0; a < specs[k].ancillas.size(); ++a) {
            std::string reg = "assert" + std::to_string(k);
            if (combined) reg += a == 0 ? ".ea" : ".sa";
            c.measure(specs[k].ancillas[a], reg);
            regs.push_back(std::move(reg));
        }
        out.registers.push_back(std::move(regs));
    }
    return out;
}

StateVector with_ancillas(const StateVector& base_state, std::span<const AssertionSpec> specs) {
    TritString ancilla_digits;
    for (const auto& spec : specs) ancilla_digits.insert(ancilla_digits.end(), spec.ancilla_init.begin(), spec.ancilla_init.end());
    if (ancilla_digits.empty()) return base_state;
    return tensor(base_state, StateVector::basis(ancilla_digits));
}

std::vector<AssertionReport> run_assertions(const Circuit& base, std::span<const AssertionSpec> specs,
                                            std::size_t shots, std::uint64_t seed,
                                            std::optional<StateVector> initial) {
    const ExpandedProgram program = expand(base, specs);
    std::optional<StateVector> full_initial;
    if (initial) full_initial = with_ancillas(*initial, specs);
    const ShotResult result = simulate_shots(program.circuit, shots, seed, std::move(full_initial));

    std::vector<AssertionReport> reports;
    for (std::size_t k = 0; k < specs.size(); ++k) {
        const AssertionSpec& spec = specs[k];
        std::vector<std::size_t> columns;
        for (const auto& reg : program.registers[k]) {
            const auto it = std::ranges::find(result.registers, reg);
            columns.push_back(static_cast<std::size_t>(it - result.registers.begin()));
        }

        AssertionReport report;
        report.shots = shots;
        for (const auto& [key, count] : result.histogram) {
            std::string sub;
            TritString digits;
            for (std::size_t col : columns) {
                sub.push_back(key[col]);
                digits.emplace_back(key[col] - '0');
            }
            report.histogram[sub] += count;
            if (assertion_passes(spec, digits)) report.pass_count += count;
        }
        report.pass_rate = static_cast<double>(report.pass_count) / static_cast<double>(shots);

        if (spec.ancillas.size() == 1) {
            std::array<double, 3> freq{};
            for (const auto& [sub, count] : report.histogram)
                freq[static_cast<std::size_t>(sub[0] - '0')] = static_cast<double>(count) / static_cast<double>(shots);
            std::array<double, 3> est = freq;
            if (const auto* classical = std::get_if<ClassicalFamily>(&spec.family)) {
                // outcome = ancilla_init + digit, so digit x shows up as outcome x + 2v.
                for (int x = 0; x < 3; ++x)
                    est[static_cast<std::size_t>(x)] =
                        freq[static_cast<std::size_t>((Trit(x) + classical_ancilla(classical->expected)).value())];
            }
            report.estimated_sq_coeffs = est;
            report.low_shot_estimate = shots < kMinShotsForEstimate;
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

AssertionReport run_assertion(const Circuit& base, const AssertionSpec& spec, std::size_t shots, std::uint64_t seed,
                              std::optional<StateVector> initial) {
    return run_assertions(base, std::span(&spec, 1), shots, seed, std::move(initial)).front();
}

}  // namespace ternassert
