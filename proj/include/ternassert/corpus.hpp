#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ternassert/dsl.hpp"
#include "ternassert/state_vector.hpp"

namespace ternassert {

struct ExpectedSlice {
    std::string name;  // slice name in the expanded program
    StateVector state;
};

/// Deterministic assertion outcome of a corpus circuit.
struct ExpectedReport {
    bool pass = false;
    std::string outcome;  // ancilla digits, in register order
};

struct CorpusEntry {
    std::string name;
    Program program;
    std::vector<ExpectedSlice> expected_slices;
    ExpectedReport expected_report;
};

/// Ternary half adder (A, B, Cout) with an attached assert(Cout == |1>).
/// The buggy variant prepends a stray Z(+1) on A.
CorpusEntry half_adder(bool with_bug, Trit a = Trit(2), Trit b = Trit(2));

/// Ch1|1> = |-1> checked by a superposition assertion; the bug uses Ch2 instead.
CorpusEntry superposition_demo(bool with_bug);

/// Ch1 on alpha, controlled-add alpha -> beta, then a group-B row-0 entanglement
/// assertion. The bug is a stray Z(+1) on beta.
CorpusEntry corbaci_entangler(bool with_bug, Trit alpha = Trit(0), Trit beta = Trit(0));

/// Entangler with the combined superposition + entanglement assertion.
/// `with_bug` prepends a stray Z(+1) on alpha.
CorpusEntry combined_demo(bool with_bug, Trit alpha, Trit beta);

std::vector<std::string> corpus_names();

/// Looks up "half_adder", "superposition_demo", "corbaci_entangler" or "combined_demo".
/// `input` overrides the classical input digits. Throws InputError for unknown names.
CorpusEntry corpus_entry(const std::string& name, bool with_bug, const std::optional<TritString>& input);

struct CorpusFile {
    std::string filename;  // e.g. "half_adder_bug.t3"
    CorpusEntry entry;
};

/// Every entry shipped under corpus/.
std::vector<CorpusFile> corpus_files();

}  // namespace ternassert
