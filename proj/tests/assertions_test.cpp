#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "ternassert/assertions.hpp"
#include "ternassert/errors.hpp"
#include "ternassert/simulator.hpp"

using namespace ternassert;

namespace {

// Projects qutrit q onto digit d and renormalizes; returns the branch probability.
double project(StateVector& s, int q, int d) {
    std::vector<Amplitude> out(s.size());
    double p = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.digits_of(i)[static_cast<std::size_t>(q)] == Trit(d)) {
            out[i] = s[i];
            p += std::norm(s[i]);
        }
    if (p > 0)
        for (auto& a : out) a /= std::sqrt(p);
    s = StateVector::from_amplitudes(std::move(out));
    return p;
}

StateVector run_block(const AssertionSpec& spec, const StateVector& psi) {
    const int n = psi.num_qutrits();
    StateVector full = with_ancillas(psi, std::span(&spec, 1));
    return simulate(assertion_subcircuit(spec, n + static_cast<int>(spec.ancillas.size())), full).final_state;
}

struct GroupRow {
    EntangledGroup group;
    int row;
    const char* kets[3];
    int ancilla;
};
// Kets of each asserted family with the ancilla digit that selects it.
constexpr GroupRow kTableII[] = {
    {EntangledGroup::B, 0, {"00", "11", "22"}, 0}, {EntangledGroup::B, 1, {"02", "10", "21"}, 2},
    {EntangledGroup::B, 2, {"01", "12", "20"}, 1}, {EntangledGroup::A, 0, {"00", "12", "21"}, 0},
    {EntangledGroup::A, 1, {"01", "10", "22"}, 2}, {EntangledGroup::A, 2, {"02", "11", "20"}, 1},
};

}  // namespace

TEST_CASE("ancilla tables") {
    CHECK(classical_ancilla(Trit(0)) == Trit(0));
    CHECK(classical_ancilla(Trit(1)) == Trit(2));
    CHECK(classical_ancilla(Trit(2)) == Trit(1));
    CHECK(entangled_ancilla(1) == Trit(2));
    CHECK(superposition_ancilla(SuperpositionTarget::Minus2) == Trit(2));
    CHECK_THROWS_AS(entangled_ancilla(3), InputError);
}

TEST_CASE("classical assertion on all expected/actual pairs") {
    for (int expected = 0; expected < 3; ++expected)
        for (int actual = 0; actual < 3; ++actual) {
            const Circuit base(1, {Trit(actual)});
            const auto spec = classical_assertion(0, Trit(expected), 1);
            const auto report = run_assertion(base, spec, 64, 3);
            CHECK(report.pass_rate == (expected == actual ? 1.0 : 0.0));
            CHECK(report.histogram.size() == 1);
            CHECK(report.low_shot_estimate);
        }
}

TEST_CASE("classical assertion on a superposition") {
    const std::array<double, 3> p = {0.5, 0.3, 0.2};
    const StateVector psi = StateVector::from_amplitudes({std::sqrt(p[0]), Amplitude(0, std::sqrt(p[1])), -std::sqrt(p[2])});
    for (int expected = 0; expected < 3; ++expected) {
        const auto report = run_assertion(Circuit(1), classical_assertion(0, Trit(expected), 1), 10000, 42, psi);
        REQUIRE(report.estimated_sq_coeffs.has_value());
        CHECK_FALSE(report.low_shot_estimate);
        for (int k = 0; k < 3; ++k) {
            const double sigma = std::sqrt(p[k] * (1 - p[k]) / 10000.0);
            CHECK(std::abs((*report.estimated_sq_coeffs)[k] - p[k]) < 3 * sigma);
        }
        CHECK(report.pass_rate == doctest::Approx(p[expected]).epsilon(0.05));
    }
    StateVector post = run_block(classical_assertion(0, Trit(0), 1), psi);
    CHECK(project(post, 1, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fidelity(post, StateVector::basis(trits_from_string("00"))) > 1 - 1e-9);
}

TEST_CASE("entanglement assertion accepts every listed family") {
    std::mt19937_64 rng(8);
    for (const auto& row : kTableII) {
        CHECK(entangled_ancilla(row.row) == Trit(row.ancilla));
        // random coefficients a, b, c on the three kets
        std::vector<std::pair<std::string, Amplitude>> terms;
        std::normal_distribution<double> g;
        for (const char* k : row.kets) terms.push_back({k, {g(rng), g(rng)}});
        const StateVector psi = testing::superpose(terms);
        const auto spec = entanglement_assertion(0, 1, row.group, row.row, 2);
        StateVector out = run_block(spec, psi);
        CHECK(out.qutrit_probabilities(2)[0] == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(fidelity(out, tensor(psi, StateVector::basis(trits_from_string("0")))) > 1 - 1e-9);
        CHECK(run_assertion(Circuit(2), spec, 200, 1, psi).pass_rate == 1.0);
    }
}

TEST_CASE("entanglement assertion on a general two-qutrit state") {
    // a..i as labelled on the group-A kets with ancilla |0>.
    const std::vector<std::pair<std::string, Amplitude>> terms = {
        {"00", {0.3, 0.1}},  {"12", {0.2, -0.2}}, {"21", {0.1, 0.0}},  {"01", {0.25, 0.05}}, {"10", {-0.1, 0.3}},
        {"22", {0.15, 0.0}}, {"02", {0.0, 0.35}}, {"11", {-0.2, 0.1}}, {"20", {0.05, -0.3}},
    };
    const StateVector psi = testing::superpose(terms);
    double expected_p0 = 0.0;
    for (const char* k : {"00", "12", "21"}) expected_p0 += std::norm(psi.amplitude(trits_from_string(k)));

    StateVector out = run_block(entanglement_assertion(0, 1, EntangledGroup::A, 0, 2), psi);
    CHECK(out.qutrit_probabilities(2)[0] == doctest::Approx(expected_p0).epsilon(1e-9));
    CHECK(project(out, 2, 0) == doctest::Approx(expected_p0).epsilon(1e-9));
    std::vector<std::pair<std::string, Amplitude>> branch;
    for (const char* k : {"00", "12", "21"}) branch.push_back({std::string(k) + "0", psi.amplitude(trits_from_string(k))});
    CHECK(fidelity(out, testing::superpose(branch)) > 1 - 1e-9);
}

TEST_CASE("superposition assertion table") {
    // Output ancilla digit for (state, initial ancilla).
    const StateVector states[3] = {plus_state(), minus_state(1), minus_state(2)};
    constexpr int kOut[3][3] = {{0, 1, 2}, {2, 0, 1}, {1, 2, 0}};
    for (int s = 0; s < 3; ++s)
        for (int init = 0; init < 3; ++init) {
            const auto spec = superposition_assertion(0, SuperpositionTarget::Plus, 1);
            const StateVector in = tensor(states[s], StateVector::basis(TritString{Trit(init)}));
            const StateVector out = simulate(assertion_subcircuit(spec, 2), in).final_state;
            CHECK(fidelity(out, tensor(states[s], StateVector::basis(TritString{Trit(kOut[s][init])}))) > 1 - 1e-9);
        }
    const SuperpositionTarget targets[3] = {SuperpositionTarget::Plus, SuperpositionTarget::Minus1,
                                            SuperpositionTarget::Minus2};
    for (int s = 0; s < 3; ++s)
        for (int t = 0; t < 3; ++t) {
            const auto report = run_assertion(Circuit(1), superposition_assertion(0, targets[t], 1), 100, 9, states[s]);
            CHECK(report.pass_rate == (s == t ? 1.0 : 0.0));
        }
}

TEST_CASE("phase variants of the entangled state") {
    const auto ea = entanglement_assertion(0, 1, EntangledGroup::B, 0, 2);
    std::vector<StateVector> posts;
    for (int k = 0; k < 3; ++k) {
        const StateVector psi =
            testing::superpose({{"00", 1.0}, {"11", omega_pow(k)}, {"22", omega_pow(2 * k)}});
        const StateVector out = run_block(ea, psi);
        CHECK(out.qutrit_probabilities(2)[0] == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(fidelity(out, tensor(psi, StateVector::basis(trits_from_string("0")))) > 1 - 1e-9);
    }
}

TEST_CASE("combined assertion blocks and outcome rule") {
    const auto spec = combined_assertion(0, 1, {Trit(0), Trit(0)}, 2, 3, 1);
    const auto blocks = assertion_blocks(spec);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].tag == "sa");
    CHECK_FALSE(blocks[0].deferred);
    CHECK(blocks[1].tag == "ea");
    CHECK(blocks[1].deferred);
    const TritString ok = trits_from_string("00"), bad = trits_from_string("01");
    CHECK(assertion_passes(spec, ok));
    CHECK_FALSE(assertion_passes(spec, bad));
    CHECK_THROWS_AS(assertion_passes(spec, TritString{Trit(0)}), InputError);
}

TEST_CASE("expansion layout") {
    Circuit base(2);
    base.gate(GateLabel::Ch1, 0).slice("mid").a1(0, 1);
    const std::vector<AssertionSpec> specs = {
        superposition_assertion(0, SuperpositionTarget::Plus, 2, 1),
        entanglement_assertion(0, 1, EntangledGroup::B, 0, 3, 2),
    };
    const auto program = expand(base, specs);
    CHECK(program.circuit.num_qutrits() == 4);
    CHECK(program.registers == std::vector<std::vector<std::string>>{{"assert0"}, {"assert1"}});
    std::vector<std::string> names;
    for (const auto& s : program.circuit.slices()) names.push_back(s.name);
    CHECK(names == std::vector<std::string>{"mid", "assert0.psi1", "assert0.psi2", "assert0.psi3", "assert1.psi1",
                                             "assert1.psi2"});
    CHECK(program.circuit.ops().size() == 1 + 3 + 1 + 2 + 2);

    const auto reports = run_assertions(base, specs, 300, 5);
    CHECK(reports[0].pass_rate == 1.0);
    CHECK(reports[1].pass_rate == 1.0);

    const std::vector<AssertionSpec> wrong_ancilla = {classical_assertion(0, Trit(0), 3)};
    CHECK_THROWS_AS(expand(base, wrong_ancilla), InputError);
    const std::vector<AssertionSpec> past_end = {classical_assertion(0, Trit(0), 2, 9)};
    CHECK_THROWS_AS(expand(base, past_end), InputError);
    CHECK_THROWS_AS(classical_assertion(1, Trit(0), 1), InputError);
}

TEST_CASE("assertion metrics") {
    auto m = [](const AssertionSpec& spec, int n) { return metrics(assertion_subcircuit(spec, n)); };
    CHECK(m(classical_assertion(0, Trit(1), 1), 2) == Metrics{4, 4});
    CHECK(m(entanglement_assertion(0, 1, EntangledGroup::B, 0, 2), 3) == Metrics{8, 7});
    CHECK(m(entanglement_assertion(0, 1, EntangledGroup::A, 0, 2), 3) == Metrics{8, 7});
    CHECK(m(superposition_assertion(0, SuperpositionTarget::Plus, 1), 2) == Metrics{6, 6});
    const auto combined = combined_assertion(0, 1, {Trit(0), Trit(0)}, 2, 3);
    CHECK(quantum_cost(assertion_subcircuit(combined, 4)) == 14);
    int serial = 0;
    for (const auto& block : assertion_blocks(combined)) {
        Circuit c(4);
        for (const auto& op : block.ops) c.add(op);
        serial += depth_asap(c);
    }
    CHECK(serial == 13);
}
