#include "ternassert/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "overloaded.hpp"
#include "ternassert/errors.hpp"

namespace ternassert {

ParseError::ParseError(int line, int column, std::string message, std::string expected)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message +
                         (expected.empty() ? "" : " (expected " + expected + ")")),
      line_(line),
      column_(column),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

namespace {

using detail::Overloaded;

struct Token {
    std::string text;
    int column = 1;
};

std::string lower(std::string_view s) {
    std::string out(s);
    std::ranges::transform(out, out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        tokens.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    return tokens;
}

bool is_name(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::ranges::all_of(s, [](unsigned char c) { return std::isalnum(c) || c == '_' || c == '.' || c == '-'; });
}

// Names the assertion expansion generates for itself.
bool is_reserved(std::string_view s) {
    return s.size() > 6 && lower(s.substr(0, 6)) == "assert" && std::isdigit(static_cast<unsigned char>(s[6]));
}

class LineParser {
public:
    LineParser(int line_no, std::vector<Token> tokens, int end_column)
        : line_(line_no), tokens_(std::move(tokens)), end_column_(end_column) {}

    [[noreturn]] void fail(const std::string& message, const std::string& expected) const {
        const int column = pos_ < tokens_.size() ? tokens_[pos_].column : end_column_;
        throw ParseError(line_, column, message, expected);
    }

    [[noreturn]] void fail_previous(const std::string& message, const std::string& expected) const {
        const std::size_t idx = pos_ == 0 ? 0 : pos_ - 1;
        throw ParseError(line_, tokens_[idx].column, message, expected);
    }

    const Token& next(const std::string& expected) {
        if (pos_ >= tokens_.size()) fail("unexpected end of line", expected);
        return tokens_[pos_++];
    }

    std::string keyword(const std::string& expected) { return lower(next(expected).text); }

    void expect_keyword(std::string_view word) {
        const std::string quoted = "'" + std::string(word) + "'";
        if (keyword(quoted) != word) fail_previous("unexpected token", quoted);
    }

    int integer(const std::string& expected) {
        const Token& t = next(expected);
        int value = 0;
        const auto* first = t.text.data();
        const auto* last = first + t.text.size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last || value < 0) fail_previous("'" + t.text + "' is not a non-negative integer", expected);
        return value;
    }

    Trit trit() {
        const int v = integer("trit 0, 1 or 2");
        if (v > 2) fail_previous("trit out of range", "trit 0, 1 or 2");
        return Trit(v);
    }

    int qutrit(int limit) {
        const int q = integer("qutrit index");
        if (q >= limit)
            fail_previous("qutrit index " + std::to_string(q) + " out of range",
                          "index below " + std::to_string(limit));
        return q;
    }

    std::string name() {
        const Token& t = next("name");
        if (!is_name(t.text)) fail_previous("'" + t.text + "' is not a valid name", "name");
        if (is_reserved(t.text)) fail_previous("names 'assert<digit>...' are reserved", "name");
        return t.text;
    }

    void finish() {
        if (pos_ < tokens_.size()) fail("unexpected token '" + tokens_[pos_].text + "'", "end of line");
    }

    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
    std::vector<Token> tokens_;
    int end_column_;
    std::size_t pos_ = 0;
};

}  // namespace

Program parse(std::string_view text) {
    std::optional<int> num_qutrits;
    std::optional<Circuit> circuit;
    std::vector<AssertionSpec> assertions;
    std::vector<std::string> register_names;
    int ancillas = 0;
    int line_no = 0;
    int last_line_no = 0;

    auto ensure_circuit = [&](TritString init) {
        if (!circuit) circuit.emplace(*num_qutrits, std::move(init));
    };

    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

        auto tokens = tokenize(raw);
        if (tokens.empty() || tokens.front().text.front() == '#') {
            if (end == text.size()) break;
            continue;
        }
        last_line_no = line_no;
        LineParser p(line_no, std::move(tokens), static_cast<int>(raw.size()) + 1);

        if (!num_qutrits) {
            if (p.keyword("'qutrits'") != "qutrits") p.fail_previous("file must start with a qutrits header", "'qutrits'");
            const int n = p.integer("qutrit count");
            if (n < 1 || n > kMaxQutrits)
                p.fail_previous("qutrit count must be between 1 and " + std::to_string(kMaxQutrits),
                                "qutrit count");
            p.finish();
            num_qutrits = n;
            if (end == text.size()) break;
            continue;
        }

        const std::string kw = p.keyword("statement");
        const int n = *num_qutrits;
        try {
            if (kw == "init") {
                if (circuit) p.fail_previous("init must directly follow the qutrits header", "statement");
                TritString init;
                for (int i = 0; i < n; ++i) init.push_back(p.trit());
                p.finish();
                ensure_circuit(std::move(init));
            } else if (kw == "gate" || kw == "cgate" || kw == "a1" || kw == "a2" || kw == "measure") {
                ensure_circuit(TritString(static_cast<std::size_t>(n)));
                const bool measured = circuit->has_measurements();
                if (kw == "gate") {
                    const Token& t = p.next("gate label");
                    const auto label = parse_label(t.text);
                    if (!label) p.fail_previous("unknown gate label '" + t.text + "'", "z0|z+1|z+2|z01|z02|z12|ch1|ch2");
                    const int q = p.qutrit(n);
                    p.finish();
                    if (measured) p.fail_previous("gates must precede all measurements", "measure");
                    circuit->gate(*label, q);
                } else if (kw == "cgate") {
                    const Token& t = p.next("Z gate label");
                    const auto label = parse_label(t.text);
                    if (!label || !is_z_label(*label))
                        p.fail_previous("unknown controlled gate label '" + t.text + "'", "z0|z+1|z+2|z01|z02|z12");
                    const int control = p.qutrit(n);
                    const int target = p.qutrit(n);
                    if (control == target) p.fail_previous("control and target must differ", "distinct target");
                    p.finish();
                    if (measured) p.fail_previous("gates must precede all measurements", "measure");
                    circuit->cgate(*label, control, target);
                } else if (kw == "a1" || kw == "a2") {
                    const int control = p.qutrit(n);
                    const int target = p.qutrit(n);
                    if (control == target) p.fail_previous("control and target must differ", "distinct target");
                    p.finish();
                    if (measured) p.fail_previous("gates must precede all measurements", "measure");
                    if (kw == "a1")
                        circuit->a1(control, target);
                    else
                        circuit->a2(control, target);
                } else {
                    const int q = p.qutrit(n);
                    p.expect_keyword("->");
                    const std::string reg = p.name();
                    p.finish();
                    if (std::ranges::find(register_names, reg) != register_names.end())
                        p.fail_previous("duplicate register name '" + reg + "'", "unique register name");
                    register_names.push_back(reg);
                    circuit->measure(q, reg);
                }
            } else if (kw == "slice") {
                ensure_circuit(TritString(static_cast<std::size_t>(n)));
                const std::string name = p.name();
                p.finish();
                const auto& slices = circuit->slices();
                if (std::ranges::any_of(slices, [&](const Slice& s) { return s.name == name; }))
                    p.fail_previous("duplicate slice name '" + name + "'", "unique slice name");
                if (!slices.empty() && slices.back().position == circuit->ops().size())
                    p.fail_previous("two slices at the same position", "a gate between slices");
                circuit->slice(name);
            } else if (kw == "assert") {
                ensure_circuit(TritString(static_cast<std::size_t>(n)));
                if (circuit->has_measurements()) p.fail_previous("assertions must precede all measurements", "measure");
                const std::size_t position = circuit->ops().size();
                const int ancilla = n + ancillas;
                const std::string kind = p.keyword("classical|entangled|superposition|combined");
                if (kind == "classical") {
                    const int q = p.qutrit(n);
                    p.expect_keyword("==");
                    const Trit expected = p.trit();
                    p.finish();
                    assertions.push_back(classical_assertion(q, expected, ancilla, position));
                } else if (kind == "entangled") {
                    const std::string g = p.keyword("'a' or 'b'");
                    if (g != "a" && g != "b") p.fail_previous("unknown entangled group '" + g + "'", "'a' or 'b'");
                    p.expect_keyword("row");
                    const int row = p.integer("row 0, 1 or 2");
                    if (row > 2) p.fail_previous("row out of range", "row 0, 1 or 2");
                    const int q1 = p.qutrit(n);
                    const int q2 = p.qutrit(n);
                    if (q1 == q2) p.fail_previous("qutrits under test must differ", "distinct qutrit");
                    p.finish();
                    assertions.push_back(entanglement_assertion(
                        q1, q2, g == "a" ? EntangledGroup::A : EntangledGroup::B, row, ancilla, position));
                } else if (kind == "superposition") {
                    const int q = p.qutrit(n);
                    const std::string t = p.keyword("plus|minus1|minus2");
                    SuperpositionTarget target{};
                    if (t == "plus")
                        target = SuperpositionTarget::Plus;
                    else if (t == "minus1")
                        target = SuperpositionTarget::Minus1;
                    else if (t == "minus2")
                        target = SuperpositionTarget::Minus2;
                    else
                        p.fail_previous("unknown superposition target '" + t + "'", "plus|minus1|minus2");
                    p.finish();
                    assertions.push_back(superposition_assertion(q, target, ancilla, position));
                } else if (kind == "combined") {
                    const int q1 = p.qutrit(n);
                    const int q2 = p.qutrit(n);
                    if (q1 == q2) p.fail_previous("qutrits under test must differ", "distinct qutrit");
                    p.expect_keyword("expect");
                    const Trit e0 = p.trit();
                    const Trit e1 = p.trit();
                    p.finish();
                    assertions.push_back(combined_assertion(q1, q2, {e0, e1}, ancilla, ancilla + 1, position));
                } else {
                    p.fail_previous("unknown assertion kind '" + kind + "'", "classical|entangled|superposition|combined");
                }
                ancillas += static_cast<int>(assertions.back().ancillas.size());
                if (n + ancillas > kMaxQutrits)
                    p.fail_previous("assertion ancillas exceed the " + std::to_string(kMaxQutrits) + "-qutrit limit",
                                    "fewer assertions");
            } else {
                p.fail_previous("unknown statement '" + kw + "'", "init|gate|cgate|a1|a2|slice|measure|assert");
            }
        } catch (const InputError& e) {
            throw ParseError(p.line(), 1, e.what(), "");
        }
        if (end == text.size()) break;
    }

    if (!num_qutrits) throw ParseError(std::max(last_line_no, 1), 1, "missing qutrits header", "'qutrits'");
    ensure_circuit(TritString(static_cast<std::size_t>(*num_qutrits)));
    return {std::move(*circuit), std::move(assertions)};
}

Program parse_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

namespace {

std::string render_op(const GateOp& op) {
    return std::visit(
        Overloaded{
            [](const SingleOp& s) { return "gate " + std::string(label_name(s.gate.label)) + " " + std::to_string(s.qutrit); },
            [](const ControlledOp& c) {
                return "cgate " + std::string(label_name(c.gate.label)) + " " + std::to_string(c.control) + " " +
                       std::to_string(c.target);
            },
            [](const CompositeOp& c) {
                return std::string(composite_name(c.kind)) + " " + std::to_string(c.control) + " " + std::to_string(c.target);
            },
            [](const MeasureOp& m) { return "measure " + std::to_string(m.qutrit) + " -> " + m.reg; },
        },
        op);
}

std::string render_assertion(const AssertionSpec& spec) {
    const auto& t = spec.targets;
    return std::visit(
        Overloaded{
            [&](const ClassicalFamily& f) {
                return "assert classical " + std::to_string(t[0]) + " == " + std::to_string(f.expected.value());
            },
            [&](const EntangledFamily& f) {
                return "assert entangled " + std::string(group_name(f.group)) + " row " + std::to_string(f.row) + " " +
                       std::to_string(t[0]) + " " + std::to_string(t[1]);
            },
            [&](const SuperpositionFamily& f) {
                return "assert superposition " + std::to_string(t[0]) + " " + std::string(target_name(f.target));
            },
            [&](const CombinedFamily& f) {
                return "assert combined " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " expect " +
                       std::to_string(f.expected_row[0].value()) + " " + std::to_string(f.expected_row[1].value());
            },
        },
        spec.family);
}

}  // namespace

std::string serialize(const Circuit& circuit, std::span<const AssertionSpec> assertions) {
    std::string out = "qutrits " + std::to_string(circuit.num_qutrits()) + "\ninit";
    for (Trit d : circuit.init_digits()) out += " " + std::to_string(d.value());
    out += "\n";
    const auto& ops = circuit.ops();
    const auto& slices = circuit.slices();
    std::size_t s = 0;
    for (std::size_t p = 0; p <= ops.size(); ++p) {
        for (; s < slices.size() && slices[s].position == p; ++s) out += "slice " + slices[s].name + "\n";
        for (const auto& spec : assertions)
            if (spec.position == p) out += render_assertion(spec) + "\n";
        if (p < ops.size()) out += render_op(ops[p]) + "\n";
    }
    return out;
}

}  // namespace ternassert
