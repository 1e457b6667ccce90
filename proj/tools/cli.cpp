#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>

#include "ternassert/assertions.hpp"
#include "ternassert/corpus.hpp"
#include "ternassert/dsl.hpp"
#include "ternassert/errors.hpp"
#include "ternassert/oracle.hpp"
#include "ternassert/simulator.hpp"

namespace ternassert::cli {
namespace {

using nlohmann::json;

constexpr double kPrintThreshold = 1e-9;
constexpr double kOracleTolerance = 1e-9;

struct Options {
    std::string input;
    std::size_t shots = 1024;
    std::uint64_t seed = 0;
    bool json = false;
    bool slices = false;
    bool bug = false;
    std::string input_digits;
    double min_pass_rate = 1.0;
    std::string export_dir;
};

struct LoadedProgram {
    std::string name;
    Program program;
};

// Thrown for command-line misuse detected after CLI11 parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

LoadedProgram load(const Options& opt) {
    constexpr std::string_view prefix = "corpus:";
    if (opt.input.starts_with(prefix)) {
        std::optional<TritString> digits;
        try {
            if (!opt.input_digits.empty()) digits = trits_from_string(opt.input_digits);
            CorpusEntry e = corpus_entry(opt.input.substr(prefix.size()), opt.bug, digits);
            return {e.name, std::move(e.program)};
        } catch (const InputError& e) {
            throw UsageError(e.what());
        }
    }
    if (opt.bug || !opt.input_digits.empty()) throw UsageError("--bug and --input only apply to corpus: inputs");
    try {
        return {std::filesystem::path(opt.input).stem().string(), parse_file(opt.input)};
    } catch (const InputError& e) {
        throw UsageError(e.what());
    }
}

std::string clean_number(double x) {
    if (std::abs(x) < 1e-12) x = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

json amplitudes_json(const StateVector& s) {
    json arr = json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (std::abs(s[i]) < kPrintThreshold) continue;
        arr.push_back({{"basis", s.basis_label(i)}, {"amplitude", format_amplitude(s[i])}});
    }
    return arr;
}

void print_state(std::ostream& out, const StateVector& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (std::abs(s[i]) < kPrintThreshold) continue;
        out << "  |" << s.basis_label(i) << "⟩  " << format_amplitude(s[i]) << "\n";
    }
}

json circuit_json(const std::string& name, const Circuit& c) {
    const Metrics m = metrics(c);
    return {{"name", name}, {"qutrits", c.num_qutrits()}, {"cost", m.quantum_cost}, {"depth", m.depth}};
}

json targets_json(const AssertionSpec& spec) { return spec.targets; }

int cmd_simulate(const Options& opt, std::ostream& out) {
    const LoadedProgram lp = load(opt);
    const ExpandedProgram expanded = expand(lp.program.circuit, lp.program.assertions);
    const SimulationResult result = simulate(expanded.circuit);
    if (opt.json) {
        json j{{"circuit", circuit_json(lp.name, expanded.circuit)}, {"final_state", amplitudes_json(result.final_state)}};
        if (opt.slices) {
            json slices = json::array();
            for (const auto& [name, state] : result.slices)
                slices.push_back({{"name", name}, {"amplitudes", amplitudes_json(state)}});
            j["slices"] = std::move(slices);
        }
        out << j.dump(2) << "\n";
        return kOk;
    }
    out << "circuit " << lp.name << ": " << expanded.circuit.num_qutrits() << " qutrits, "
        << expanded.circuit.ops().size() << " ops\n";
    if (opt.slices) {
        for (const auto& [name, state] : result.slices) {
            out << "slice " << name << ":\n";
            print_state(out, state);
        }
    }
    out << "final state:\n";
    print_state(out, result.final_state);
    return kOk;
}

int cmd_assert(const Options& opt, std::ostream& out) {
    const LoadedProgram lp = load(opt);
    const auto& specs = lp.program.assertions;
    if (specs.empty()) throw UsageError("'" + lp.name + "' contains no assert directives");
    const ExpandedProgram expanded = expand(lp.program.circuit, specs);
    const auto reports = run_assertions(lp.program.circuit, specs, opt.shots, opt.seed);

    bool all_pass = true;
    json assertions = json::array();
    for (std::size_t k = 0; k < specs.size(); ++k) {
        const auto& r = reports[k];
        const bool ok = r.verdict(opt.min_pass_rate);
        all_pass = all_pass && ok;
        json coeffs = nullptr;
        if (r.estimated_sq_coeffs) coeffs = *r.estimated_sq_coeffs;
        assertions.push_back({{"family", std::string(family_name(specs[k].family))},
                              {"targets", targets_json(specs[k])},
                              {"histogram", r.histogram},
                              {"pass_count", r.pass_count},
                              {"pass_rate", r.pass_rate},
                              {"passed", ok},
                              {"estimated_sq_coeffs", coeffs}});
    }

    if (opt.json) {
        json j{{"circuit", circuit_json(lp.name, expanded.circuit)},
               {"assertions", std::move(assertions)},
               {"seed", opt.seed},
               {"shots", opt.shots}};
        out << j.dump(2) << "\n";
    } else {
        out << "circuit " << lp.name << ": " << opt.shots << " shots, seed " << opt.seed << "\n";
        for (std::size_t k = 0; k < specs.size(); ++k) {
            const auto& r = reports[k];
            out << "assert" << k << " " << family_name(specs[k].family) << " on";
            for (int q : specs[k].targets) out << " q" << q;
            out << "\n  histogram:";
            for (const auto& [key, count] : r.histogram) out << " " << key << "=" << count;
            out << "\n  pass_rate: " << clean_number(r.pass_rate) << " (" << r.pass_count << "/" << r.shots << ")\n";
            if (r.estimated_sq_coeffs) {
                const auto& c = *r.estimated_sq_coeffs;
                out << "  estimated |c|^2: " << clean_number(c[0]) << " " << clean_number(c[1]) << " "
                    << clean_number(c[2]) << (r.low_shot_estimate ? " (low shot count)" : "") << "\n";
            }
            out << "  verdict: " << (r.verdict(opt.min_pass_rate) ? "PASS" : "ASSERTION ERROR") << "\n";
        }
    }
    return all_pass ? kOk : kAssertionError;
}

int cmd_metrics(const Options& opt, std::ostream& out) {
    const LoadedProgram lp = load(opt);
    const auto& specs = lp.program.assertions;
    const ExpandedProgram expanded = expand(lp.program.circuit, specs);
    const int n = expanded.circuit.num_qutrits();
    const Metrics whole = metrics(expanded.circuit);
    const Metrics program = metrics(lp.program.circuit);

    json j{{"circuit", circuit_json(lp.name, expanded.circuit)},
           {"program", {{"cost", program.quantum_cost}, {"depth", program.depth}}},
           {"assertions", json::array()}};
    for (std::size_t k = 0; k < specs.size(); ++k) {
        const Metrics m = metrics(assertion_subcircuit(specs[k], n));
        json a{{"family", std::string(family_name(specs[k].family))}, {"cost", m.quantum_cost}, {"depth", m.depth}};
        const auto blocks = assertion_blocks(specs[k]);
        if (blocks.size() > 1) {
            int serial = 0;
            json parts = json::object();
            for (const auto& block : blocks) {
                Circuit c(n);
                for (const auto& op : block.ops) c.add(op);
                const Metrics bm = metrics(c);
                serial += bm.depth;
                parts[block.tag] = {{"cost", bm.quantum_cost}, {"depth", bm.depth}};
            }
            a["serial_sum_depth"] = serial;
            a["blocks"] = std::move(parts);
        }
        j["assertions"].push_back(std::move(a));
    }

    if (opt.json) {
        out << j.dump(2) << "\n";
        return kOk;
    }
    out << "circuit " << lp.name << ": cost " << whole.quantum_cost << ", depth " << whole.depth << "\n";
    out << "program without assertions: cost " << program.quantum_cost << ", depth " << program.depth << "\n";
    for (std::size_t k = 0; k < specs.size(); ++k) {
        const auto& a = j["assertions"][k];
        out << "assert" << k << " " << a["family"].get<std::string>() << ": cost " << a["cost"].get<int>()
            << ", depth " << a["depth"].get<int>();
        if (a.contains("serial_sum_depth")) {
            out << ", serial-sum depth " << a["serial_sum_depth"].get<int>() << " (";
            bool first = true;
            for (const auto& [tag, bm] : a["blocks"].items()) {
                out << (first ? "" : ", ") << tag << " " << bm["cost"].get<int>() << "/" << bm["depth"].get<int>();
                first = false;
            }
            out << ")";
        }
        out << "\n";
    }
    return kOk;
}

int cmd_oracle_check(const Options& opt, std::ostream& out) {
    const LoadedProgram lp = load(opt);
    const ExpandedProgram expanded = expand(lp.program.circuit, lp.program.assertions);
    if (expanded.circuit.num_qutrits() > kDenseMaxQutrits)
        throw UsageError("oracle check supports at most " + std::to_string(kDenseMaxQutrits) + " qutrits, '" + lp.name +
                         "' has " + std::to_string(expanded.circuit.num_qutrits()));
    const double f = oracle_fidelity(expanded.circuit);
    const bool ok = f > 1.0 - kOracleTolerance;
    if (opt.json) {
        out << json{{"circuit", circuit_json(lp.name, expanded.circuit)}, {"fidelity", f}, {"passed", ok}}.dump(2) << "\n";
    } else {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.15f", f);
        out << "oracle fidelity for " << lp.name << ": " << buf << (ok ? " OK" : " MISMATCH") << "\n";
    }
    return ok ? kOk : kSimulationError;
}

int cmd_list_corpus(std::ostream& out) {
    out << "built-in entries (use corpus:<name> [--bug] [--input TT]):\n";
    for (const auto& name : corpus_names()) out << "  " << name << "\n";
    out << "shipped files:\n";
    for (const auto& f : corpus_files()) out << "  " << f.filename << "\n";
    return kOk;
}

int cmd_export_corpus(const Options& opt, std::ostream& out) {
    const std::filesystem::path dir(opt.export_dir);
    std::filesystem::create_directories(dir);
    for (const auto& f : corpus_files()) {
        std::ofstream file(dir / f.filename, std::ios::binary);
        file << serialize(f.entry.program);
        if (!file) throw std::runtime_error("failed to write " + (dir / f.filename).string());
        out << (dir / f.filename).string() << "\n";
    }
    return kOk;
}

}  // namespace

std::string format_amplitude(std::complex<double> a) {
    double re = std::abs(a.real()) < 1e-12 ? 0.0 : a.real();
    double im = std::abs(a.imag()) < 1e-12 ? 0.0 : a.imag();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g%+.6gi", re + 0.0, im + 0.0);
    return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Qutrit circuit simulator with dynamic assertion circuits", "t3"};
    app.require_subcommand(1);
    Options opt;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("source", opt.input, "a .t3 file or corpus:<name>")->required();
        sub->add_flag("--json", opt.json, "machine-readable output");
        sub->add_flag("--bug", opt.bug, "corpus: use the variant with the injected bug");
        sub->add_option("--input", opt.input_digits, "corpus: classical input digits, e.g. 10");
    };

    auto* simulate_cmd = app.add_subcommand("simulate", "print the final state (and slices)");
    add_input(simulate_cmd);
    simulate_cmd->add_flag("--slices", opt.slices, "also print every named slice");

    auto* assert_cmd = app.add_subcommand("assert", "run every assertion over many shots");
    add_input(assert_cmd);
    assert_cmd->add_option("--shots", opt.shots, "shots per run")->check(CLI::PositiveNumber);
    assert_cmd->add_option("--seed", opt.seed, "RNG seed");
    assert_cmd->add_option("--min-pass-rate", opt.min_pass_rate, "pass threshold for the run verdict")
        ->check(CLI::Range(0.0, 1.0));

    auto* metrics_cmd = app.add_subcommand("metrics", "quantum cost and depth");
    add_input(metrics_cmd);

    auto* oracle_cmd = app.add_subcommand("oracle-check", "compare the simulator against the dense unitary");
    add_input(oracle_cmd);

    auto* list_cmd = app.add_subcommand("list-corpus", "list built-in circuits");
    auto* export_cmd = app.add_subcommand("export-corpus", "write the corpus .t3 files");
    export_cmd->add_option("dir", opt.export_dir, "output directory")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (simulate_cmd->parsed()) return cmd_simulate(opt, out);
        if (assert_cmd->parsed()) return cmd_assert(opt, out);
        if (metrics_cmd->parsed()) return cmd_metrics(opt, out);
        if (oracle_cmd->parsed()) return cmd_oracle_check(opt, out);
        if (list_cmd->parsed()) return cmd_list_corpus(out);
        if (export_cmd->parsed()) return cmd_export_corpus(opt, out);
    } catch (const ParseError& e) {
        err << opt.input << ":" << e.line() << ":" << e.column() << ": error: " << e.message();
        if (!e.expected().empty()) err << " (expected " << e.expected() << ")";
        err << "\n";
        return kUsageError;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "simulation error: " << e.what() << "\n";
        return kSimulationError;
    }
    return kUsageError;
}

}  // namespace ternassert::cli
