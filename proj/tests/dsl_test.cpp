#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "test_support.hpp"
#include "ternassert/corpus.hpp"
#include "ternassert/dsl.hpp"

using namespace ternassert;

namespace {

int error_line(std::string_view text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_words(const std::string& line) {
    std::vector<std::string> words;
    std::istringstream in(line);
    for (std::string w; in >> w;) words.push_back(w);
    return words;
}

std::string join(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
}

// Random program with slices and assertions spread over the unitary part.
Program random_program(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> n_of(2, 4), len(0, 10), coin(0, 2), digit(0, 2), family(0, 3);
    const int n = n_of(rng);
    Circuit c = testing::random_circuit(n, len(rng), rng);
    Circuit with_slices(n, c.init_digits());
    int slice_id = 0;
    for (const auto& op : c.ops()) {
        if (coin(rng) == 0) with_slices.slice("s" + std::to_string(slice_id++));
        with_slices.add(op);
    }
    if (coin(rng) == 0) with_slices.slice("end_" + std::to_string(slice_id));

    std::vector<AssertionSpec> specs;
    std::uniform_int_distribution<std::size_t> pos_of(0, with_slices.ops().size());
    std::vector<std::size_t> positions(static_cast<std::size_t>(coin(rng) + 1));
    for (auto& p : positions) p = pos_of(rng);
    std::ranges::sort(positions);
    int next_ancilla = n;
    std::uniform_int_distribution<int> q_of(0, n - 1);
    for (std::size_t p : positions) {
        const int q1 = q_of(rng);
        int q2 = q_of(rng);
        while (q2 == q1) q2 = q_of(rng);
        switch (family(rng)) {
            case 0: specs.push_back(classical_assertion(q1, Trit(digit(rng)), next_ancilla++, p)); break;
            case 1:
                specs.push_back(entanglement_assertion(q1, q2, coin(rng) ? EntangledGroup::A : EntangledGroup::B,
                                                       digit(rng), next_ancilla++, p));
                break;
            case 2:
                specs.push_back(superposition_assertion(q1, SuperpositionTarget(digit(rng)), next_ancilla++, p));
                break;
            default:
                specs.push_back(
                    combined_assertion(q1, q2, {Trit(digit(rng)), Trit(digit(rng))}, next_ancilla, next_ancilla + 1, p));
                next_ancilla += 2;
        }
    }
    if (coin(rng) == 0) with_slices.measure(q_of(rng), "m");
    return {with_slices, specs};
}

}  // namespace

TEST_CASE("parse a small program") {
    const Program p = parse(
        "# entangler\r\n"
        "QUTRITS 2\r\n"
        "init 2 0\n"
        "\n"
        "gate CH1 0\n"
        "cgate z+1 0 1\n"
        "a1 0 1\n"
        "slice after_entangle\n"
        "assert entangled b row 0 0 1\n"
        "measure 0 -> m0\n");
    CHECK(p.circuit.num_qutrits() == 2);
    CHECK(p.circuit.init_digits() == trits_from_string("20"));
    REQUIRE(p.circuit.ops().size() == 4);
    CHECK(std::get<SingleOp>(p.circuit.ops()[0]).gate.label == GateLabel::Ch1);
    CHECK(std::get<ControlledOp>(p.circuit.ops()[1]).target == 1);
    CHECK(std::get<CompositeOp>(p.circuit.ops()[2]).kind == CompositeKind::A1);
    CHECK(std::get<MeasureOp>(p.circuit.ops()[3]).reg == "m0");
    CHECK(p.circuit.slices() == std::vector<Slice>{{"after_entangle", 3}});
    REQUIRE(p.assertions.size() == 1);
    CHECK(p.assertions[0] == entanglement_assertion(0, 1, EntangledGroup::B, 0, 2, 3));
}

TEST_CASE("missing init means all zeros") {
    const Program p = parse("qutrits 3\ngate z+1 2\n");
    CHECK(p.circuit.init_digits() == trits_from_string("000"));
}

TEST_CASE("parse errors carry line, column and expectation") {
    try {
        parse("qutrits 2\ngate ch1 0\ngate z+3 1\n");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 6);
        CHECK(std::string(e.what()).find("line 3, column 6") != std::string::npos);
        CHECK_FALSE(e.expected().empty());
    }
    CHECK(error_line("gate ch1 0\n") == 1);
    CHECK(error_line("qutrits 13\n") == 1);
    CHECK(error_line("qutrits 2\ngate ch1 0\ninit 0 0\n") == 3);
    CHECK(error_line("qutrits 2\ninit 0 3\n") == 2);
    CHECK(error_line("qutrits 2\ngate ch1 2\n") == 2);
    CHECK(error_line("qutrits 2\ncgate ch1 0 1\n") == 2);
    CHECK(error_line("qutrits 2\na2 1 1\n") == 2);
    CHECK(error_line("qutrits 2\nmeasure 0 -> m\ngate ch1 0\n") == 3);
    CHECK(error_line("qutrits 2\nmeasure 0 -> m\nmeasure 1 -> m\n") == 3);
    CHECK(error_line("qutrits 2\nslice a\ngate ch1 0\nslice a\n") == 4);
    CHECK(error_line("qutrits 2\nslice a\nslice b\n") == 3);
    CHECK(error_line("qutrits 2\nslice assert0.psi1\n") == 2);
    CHECK(error_line("qutrits 2\ngate ch1 0 extra\n") == 2);
    CHECK(error_line("qutrits 2\nassert classical 2 == 1\n") == 2);
    CHECK(error_line("qutrits 2\nassert entangled c row 0 0 1\n") == 2);
    CHECK(error_line("qutrits 2\nassert superposition 0 minus3\n") == 2);
    CHECK(error_line("qutrits 2\nassert combined 0 0 expect 0 0\n") == 2);
    CHECK(error_line("qutrits 12\nassert classical 0 == 1\n") == 2);
    CHECK(error_line("") == 1);
}

TEST_CASE("serialize is canonical") {
    const std::string text = "qutrits 2\ninit 0 1\ngate ch1 0\nslice s\nassert superposition 0 plus\na2 0 1\n";
    CHECK(serialize(parse(text)) == text);
    CHECK(serialize(parse("Qutrits 2\nINIT 0 1\nGate Ch1 0\nslice s\nassert SUPERPOSITION 0 Plus\nA2 0 1")) == text);
}

TEST_CASE("property: parse inverts serialize") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const Program p = random_program(rng);
        const std::string text = serialize(p);
        const Program back = parse(text);
        CHECK(back == p);
        CHECK(serialize(back) == text);
    }
}

TEST_CASE("corpus round trip and single-token corruption") {
    for (const auto& file : corpus_files()) {
        CAPTURE(file.filename);
        const std::string text = serialize(file.entry.program);
        CHECK(parse(text) == file.entry.program);
        const auto lines = split_lines(text);
        for (std::size_t l = 0; l < lines.size(); ++l) {
            const auto words = split_words(lines[l]);
            for (std::size_t w = 0; w < words.size(); ++w) {
                auto replaced = words, removed = words;
                replaced[w] = "@junk";
                removed.erase(removed.begin() + static_cast<std::ptrdiff_t>(w));
                for (const auto& variant : {replaced, removed}) {
                    std::string line;
                    for (const auto& v : variant) line += (line.empty() ? "" : " ") + v;
                    auto corrupted = lines;
                    corrupted[l] = line;
                    CAPTURE(line);
                    CHECK(error_line(join(corrupted)) == static_cast<int>(l) + 1);
                }
            }
        }
    }
}
