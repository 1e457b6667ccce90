#include "ternassert/corpus.hpp"

#include <cmath>
#include <utility>

#include "ternassert/errors.hpp"

namespace ternassert {
namespace {

using Term = std::pair<std::string, Amplitude>;

StateVector from_terms(const std::vector<Term>& terms, double scale = 1.0) {
    const std::size_t width = terms.front().first.size();
    std::vector<Amplitude> amps(pow3(static_cast<int>(width)));
    for (const auto& [ket, amp] : terms) {
        std::size_t index = 0;
        for (char c : ket) index = index * 3 + static_cast<std::size_t>(c - '0');
        amps[index] += scale * amp;
    }
    return StateVector::from_amplitudes(std::move(amps));
}

StateVector ket(const std::string& digits) { return StateVector::basis(trits_from_string(digits)); }

std::string digits(std::initializer_list<int> ds) {
    std::string s;
    for (int d : ds) s.push_back(static_cast<char>('0' + d));
    return s;
}

// sum_x w^(alpha*x) |x, x+beta> / sqrt(3), the entangler output for classical input |alpha beta>.
std::vector<Term> entangler_terms(int alpha, int beta, const std::string& suffix) {
    std::vector<Term> terms;
    for (int x = 0; x < 3; ++x) terms.push_back({digits({x, (x + beta) % 3}) + suffix, omega_pow(alpha * x)});
    return terms;
}

}  // namespace

CorpusEntry half_adder(bool with_bug, Trit a, Trit b) {
    Circuit c(3, {a, b, Trit(0)});
    c.slice("input");
    if (with_bug) c.gate(GateLabel::ZPlus1, 0).slice("after_bug");
    c.cgate(GateLabel::ZPlus2, 1, 0).slice("after_cadd");
    c.cgate(GateLabel::Z12, 0, 1).slice("after_cswap");
    c.cgate(GateLabel::ZPlus1, 1, 2).slice("after_carry");
    c.cgate(GateLabel::Z12, 0, 1);
    c.gate(GateLabel::ZPlus1, 1);
    c.cgate(GateLabel::ZPlus1, 1, 0);
    c.gate(GateLabel::ZPlus2, 1);
    const std::size_t end = c.ops().size();

    CorpusEntry entry{with_bug ? "half_adder_bug" : "half_adder",
                      {c, {classical_assertion(2, Trit(1), 3, end)}},
                      {},
                      {}};

    const int a_in = (a.value() + (with_bug ? 1 : 0)) % 3;
    const int sum = (a_in + b.value()) % 3;
    const int carry = a_in + b.value() >= 3 ? 1 : 0;
    const int ancilla_out = (2 + carry) % 3;
    if (with_bug && a == Trit(2) && b == Trit(2)) {
        entry.expected_slices = {
            {"input", ket("2202")},       {"after_bug", ket("0202")},   {"after_cadd", ket("2202")},
            {"after_cswap", ket("2102")}, {"after_carry", ket("2102")},
        };
    }
    entry.expected_slices.push_back({"assert0.psi1", ket(digits({sum, b.value(), carry, ancilla_out}))});
    entry.expected_report = {carry == 1, digits({ancilla_out})};
    return entry;
}

CorpusEntry superposition_demo(bool with_bug) {
    Circuit c(1, {Trit(1)});
    c.gate(with_bug ? GateLabel::Ch2 : GateLabel::Ch1, 0).slice("psi0");
    CorpusEntry entry{with_bug ? "superposition_demo_bug" : "superposition_demo",
                      {c, {superposition_assertion(0, SuperpositionTarget::Minus1, 1, 1)}},
                      {},
                      {}};

    const double r3 = 1.0 / std::sqrt(3.0);
    const Amplitude w = omega_pow(1);
    const Amplitude w2 = omega_pow(2);
    if (with_bug) {
        entry.expected_slices = {
            {"psi0", from_terms({{"01", 1.0}, {"11", w2}, {"21", w}}, r3)},
            {"assert0.psi1", from_terms({{"00", 1.0}, {"01", w}, {"02", w2},
                                         {"10", w2}, {"11", 1.0}, {"12", w},
                                         {"20", w}, {"21", w2}, {"22", 1.0}}, 1.0 / 3.0)},
            {"assert0.psi2", from_terms({{"00", 1.0}, {"11", w}, {"22", w2},
                                         {"10", w2}, {"21", 1.0}, {"02", w},
                                         {"20", w}, {"01", w2}, {"12", 1.0}}, 1.0 / 3.0)},
            {"assert0.psi3", from_terms({{"02", 1.0}, {"12", w2}, {"22", w}}, r3)},
        };
        entry.expected_report = {false, "2"};
    } else {
        entry.expected_slices = {
            {"psi0", from_terms({{"01", 1.0}, {"11", w}, {"21", w2}}, r3)},
            {"assert0.psi3", from_terms({{"00", 1.0}, {"10", w}, {"20", w2}}, r3)},
        };
        entry.expected_report = {true, "0"};
    }
    return entry;
}

CorpusEntry corbaci_entangler(bool with_bug, Trit alpha, Trit beta) {
    Circuit c(2, {alpha, beta});
    if (with_bug) c.gate(GateLabel::ZPlus1, 1);
    c.gate(GateLabel::Ch1, 0);
    c.a1(0, 1).slice("entangled");
    std::string name = with_bug ? "corbaci_entangler_bug" : "corbaci_entangler";
    if (alpha != Trit(0) || beta != Trit(0)) name += "_" + to_string({alpha, beta});
    CorpusEntry entry{name, {c, {entanglement_assertion(0, 1, EntangledGroup::B, 0, 2, c.ops().size())}}, {}, {}};

    const int b = (beta.value() + (with_bug ? 1 : 0)) % 3;
    const std::vector<Term> out = entangler_terms(alpha.value(), b, "0");
    entry.expected_slices = {{"entangled", from_terms(out, 1.0 / std::sqrt(3.0))}};
    // The ancilla picks up q1 + 2*q2 = 2*b on every term.
    const int outcome = (2 * b) % 3;
    entry.expected_slices.push_back({"assert0.psi2", from_terms(entangler_terms(alpha.value(), b, digits({outcome})),
                                                                1.0 / std::sqrt(3.0))});
    entry.expected_report = {outcome == 0, digits({outcome})};
    return entry;
}

CorpusEntry combined_demo(bool with_bug, Trit alpha, Trit beta) {
    Circuit c(2, {alpha, beta});
    if (with_bug) c.gate(GateLabel::ZPlus1, 0);
    c.gate(GateLabel::Ch1, 0);
    const std::size_t sa_position = c.ops().size();
    c.a1(0, 1).slice("entangled");
    std::string name = "combined_demo_";
    name += with_bug ? "bug_" : "";
    name += to_string({alpha, beta});
    CorpusEntry entry{name, {c, {combined_assertion(0, 1, {Trit(0), Trit(0)}, 2, 3, sa_position)}}, {}, {}};

    const int a = (alpha.value() + (with_bug ? 1 : 0)) % 3;
    const int third = beta.value();
    const int fourth = (3 - a) % 3;
    const double r3 = 1.0 / std::sqrt(3.0);
    entry.expected_slices = {
        {"entangled", from_terms(entangler_terms(a, beta.value(), digits({0, fourth})), r3)},
        {"assert0.ea.psi2", from_terms(entangler_terms(a, beta.value(), digits({third, fourth})), r3)},
    };
    entry.expected_report = {third == 0 && fourth == 0, digits({third, fourth})};
    return entry;
}

std::vector<std::string> corpus_names() {
    return {"half_adder", "superposition_demo", "corbaci_entangler", "combined_demo"};
}

CorpusEntry corpus_entry(const std::string& name, bool with_bug, const std::optional<TritString>& input) {
    auto pair_input = [&](Trit d0, Trit d1) -> std::pair<Trit, Trit> {
        if (!input) return {d0, d1};
        if (input->size() != 2) throw InputError("--input needs exactly two trits for " + name);
        return {(*input)[0], (*input)[1]};
    };
    if (name == "half_adder") {
        const auto [a, b] = pair_input(Trit(2), Trit(2));
        return half_adder(with_bug, a, b);
    }
    if (name == "superposition_demo") {
        if (input) throw InputError("superposition_demo takes no --input");
        return superposition_demo(with_bug);
    }
    if (name == "corbaci_entangler") {
        const auto [a, b] = pair_input(Trit(0), Trit(0));
        return corbaci_entangler(with_bug, a, b);
    }
    if (name == "combined_demo") {
        const auto [a, b] = pair_input(Trit(0), Trit(0));
        return combined_demo(with_bug, a, b);
    }
    throw InputError("unknown corpus entry '" + name + "'");
}

std::vector<CorpusFile> corpus_files() {
    std::vector<CorpusFile> files;
    auto add = [&](CorpusEntry e) {
        std::string filename = e.name + ".t3";
        files.push_back({std::move(filename), std::move(e)});
    };
    add(half_adder(false));
    add(half_adder(true));
    add(superposition_demo(false));
    add(superposition_demo(true));
    add(corbaci_entangler(false));
    add(corbaci_entangler(true));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) add(combined_demo(false, Trit(a), Trit(b)));
    add(combined_demo(true, Trit(0), Trit(0)));
    return files;
}

}  // namespace ternassert
