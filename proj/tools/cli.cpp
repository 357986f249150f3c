#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <variant>

#include "lpeg/bfa.hpp"
#include "lpeg/conversion.hpp"
#include "lpeg/dfa.hpp"
#include "lpeg/error.hpp"
#include "lpeg/grammar.hpp"
#include "lpeg/interp.hpp"
#include "lpeg/regex.hpp"

namespace lpeg::cli {

namespace {

// Unreadable or malformed input named on the command line.
class InputError : public Error {
public:
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw InputError("cannot write " + path);
}

Grammar load_grammar(const std::string& path) {
    std::string text = read_file(path);
    try {
        return parse_grammar(text);
    } catch (const Error& e) {
        throw InputError(path + ": " + e.what());
    }
}

Dfa load_dfa(const std::string& path) {
    std::string text = read_file(path);
    try {
        return dfa_from_json(text);
    } catch (const Error& e) {
        throw InputError(path + ": " + e.what());
    }
}

using Operand = std::variant<Grammar, Dfa>;

// DFA JSON starts with an object; anything else is read as a grammar.
Operand load_operand(const std::string& path) {
    std::string text = read_file(path);
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return load_dfa(path);
    return load_grammar(path);
}

MatchMode parse_mode(const std::string& s) { return s == "prefix" ? MatchMode::Prefix : MatchMode::Exact; }

// New symbols lead to a rejecting sink.
Dfa widen(const Dfa& d, std::string_view alphabet) {
    Dfa out;
    out.alphabet = normalize_alphabet(d.alphabet + std::string(alphabet));
    if (out.alphabet == d.alphabet) return d;
    for (std::uint32_t q = 0; q < d.size(); ++q) out.add_state(d.accepting[q]);
    std::uint32_t sink = out.add_state(false);
    for (std::uint32_t q = 0; q <= d.size(); ++q)
        for (std::size_t i = 0; i < out.alphabet.size(); ++i) {
            int j = q < d.size() ? d.symbol_index(out.alphabet[i]) : -1;
            out.next[q][i] = j < 0 ? sink : d.next[q][static_cast<std::size_t>(j)];
        }
    out.start = d.start;
    return out;
}

std::string in_quotes(std::string_view w) { return "\"" + std::string(w) + "\""; }

struct Budgets {
    std::size_t bfa_states = 100000;
    std::size_t dfa_states = 1000000;

    PipelineOptions pipeline(bool minimize = true) const {
        PipelineOptions p;
        p.construct.max_states = bfa_states;
        p.determinize.max_states = dfa_states;
        p.minimize = minimize;
        return p;
    }
};

void add_budgets(CLI::App* cmd, Budgets& b) {
    cmd->add_option("--max-bfa-states", b.bfa_states, "BFA size budget")->capture_default_str();
    cmd->add_option("--max-dfa-states", b.dfa_states, "DFA state budget")->capture_default_str();
}

Dfa to_dfa(const Operand& op, MatchMode mode, const Budgets& budgets) {
    if (const auto* d = std::get_if<Dfa>(&op)) return *d;
    return lpeg_to_dfa(std::get<Grammar>(op), mode, budgets.pipeline());
}

const std::string& operand_alphabet(const Operand& op) {
    return std::visit(
        [](const auto& x) -> const std::string& {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Dfa>)
                return x.alphabet;
            else
                return x.alphabet();
        },
        op);
}

int cmd_check(const std::string& path, std::ostream& out) {
    Grammar g = load_grammar(path);
    LpegJudgement j = is_lpeg(g);
    out << "LPEG: " << (j.is_lpeg ? "yes" : "no") << "\n";
    for (const auto& v : j.violations) {
        out << "  " << v.rule << ": " << to_compact(v.expr) << " (" << v.reason << ")\n";
    }
    auto diags = check_wellformed(g);
    out << "well-formed: " << (diags.empty() ? "yes" : "no") << "\n";
    for (const auto& d : diags) out << "  " << d.rule << ": " << d.message << "\n";
    return j.is_lpeg ? kOk : kNegative;
}

int cmd_equiv_interp(const Operand& a, const Operand& b, MatchMode mode, std::size_t max_len,
                     double max_strings, std::ostream& out, std::ostream& err) {
    std::string sigma = normalize_alphabet(operand_alphabet(a) + operand_alphabet(b));
    double total = 0;
    for (std::size_t n = 0; n <= max_len; ++n) total += std::pow(static_cast<double>(sigma.size()), n);
    if (total > max_strings) {
        err << "error: " << total << " strings up to length " << max_len << " exceed --max-strings\n";
        return kResource;
    }
    auto member = [mode](const Operand& op, const std::string& w) {
        if (const auto* d = std::get_if<Dfa>(&op)) return dfa_match(*d, w);
        return lang_member(std::get<Grammar>(op), w, mode);
    };
    std::optional<std::string> witness;
    for_each_string(sigma, max_len, [&](const std::string& w) {
        if (member(a, w) != member(b, w)) witness = w;
        return !witness;
    });
    if (!witness) {
        out << "equivalent up to length " << max_len << "\n";
        return kOk;
    }
    out << "not equivalent\ncounterexample: " << in_quotes(*witness) << "\n";
    return kNegative;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Linear PEG toolkit", "lpeg"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string mode_text = "exact";
    auto add_mode = [&mode_text](CLI::App* cmd) {
        cmd->add_option("--mode", mode_text, "prefix or exact")
            ->check(CLI::IsMember({"prefix", "exact"}))
            ->capture_default_str();
    };
    Budgets budgets;

    std::string file, file2, text, output, bfa_dot, alphabet, via = "dfa", what;
    bool no_minimize = false, unanchored = false;
    std::size_t max_len = 8;
    double max_strings = 1e7;

    auto* check = app.add_subcommand("check", "LPEG judgement and well-formedness");
    check->add_option("file", file, "grammar file")->required();

    auto* compile = app.add_subcommand("compile", "grammar to DFA JSON");
    compile->add_option("file", file, "grammar file")->required();
    add_mode(compile);
    compile->add_option("-o,--output", output, "DFA JSON path (stdout when omitted)");
    compile->add_option("--emit-bfa", bfa_dot, "also write the BFA as DOT");
    compile->add_flag("--no-minimize", no_minimize, "keep the unminimized DFA");
    add_budgets(compile, budgets);

    auto* match = app.add_subcommand("match", "DFA membership");
    auto* dfa_opt = match->add_option("--dfa", file, "DFA JSON");
    auto* grammar_opt = match->add_option("--grammar", file2, "grammar file");
    dfa_opt->excludes(grammar_opt);
    add_mode(match);
    match->add_option("string", text, "input")->required();
    add_budgets(match, budgets);

    auto* run = app.add_subcommand("run", "interpreter consume on the start expression");
    run->add_option("file", file, "grammar file")->required();
    run->add_option("string", text, "input")->required();

    auto* r2l = app.add_subcommand("regex2lpeg", "regex to LPEG grammar");
    r2l->add_option("regex", text, "regex")->required();
    r2l->add_option("--alphabet", alphabet, "extra alphabet symbols");
    r2l->add_flag("--unanchored", unanchored, "no end-of-input continuation");

    auto* d2l = app.add_subcommand("dfa2lpeg", "DFA JSON to LPEG grammar");
    d2l->add_option("file", file, "DFA JSON")->required();

    auto* equiv = app.add_subcommand("equiv", "language equivalence of two grammars or DFAs");
    equiv->add_option("a", file, "grammar or DFA JSON")->required();
    equiv->add_option("b", file2, "grammar or DFA JSON")->required();
    equiv->add_option("--via", via, "dfa (exact) or interp (bounded)")
        ->check(CLI::IsMember({"dfa", "interp"}))
        ->capture_default_str();
    equiv->add_option("--max-len", max_len, "string length bound for --via interp")->capture_default_str();
    equiv->add_option("--max-strings", max_strings, "enumeration budget for --via interp")->capture_default_str();
    add_mode(equiv);
    add_budgets(equiv, budgets);

    auto* dot = app.add_subcommand("export-dot", "Graphviz DOT on stdout");
    dot->add_option("kind", what, "grammar, bfa or dfa")->required()->check(CLI::IsMember({"grammar", "bfa", "dfa"}));
    dot->add_option("file", file, "grammar file or DFA JSON")->required();
    add_mode(dot);
    add_budgets(dot, budgets);

    std::vector<std::string> argv_store{"lpeg"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    const MatchMode mode = parse_mode(mode_text);
    try {
        if (check->parsed()) return cmd_check(file, out);

        if (compile->parsed()) {
            Grammar g = load_grammar(file);
            PipelineOptions p = budgets.pipeline(!no_minimize);
            if (!bfa_dot.empty()) write_file(bfa_dot, bfa_to_dot(lpeg_to_bfa(g, mode, p)));
            Dfa d = lpeg_to_dfa(g, mode, p);
            std::string json = dfa_to_json(d);
            if (output.empty()) {
                out << json << "\n";
            } else {
                write_file(output, json + "\n");
                out << "DFA: " << d.size() << " states\n";
            }
            return kOk;
        }

        if (match->parsed()) {
            Dfa d;
            if (!file.empty())
                d = load_dfa(file);
            else if (!file2.empty())
                d = lpeg_to_dfa(load_grammar(file2), mode, budgets.pipeline());
            else {
                err << "error: match needs --dfa or --grammar\n";
                return kUsage;
            }
            bool ok = dfa_match(d, text);
            out << (ok ? "accepted" : "rejected") << "\n";
            return ok ? kOk : kNegative;
        }

        if (run->parsed()) {
            Grammar g = load_grammar(file);
            MatchResult r = consume(g, g.start(), text);
            out << to_string(r) << "\n";
            return r.success ? kOk : kNegative;
        }

        if (r2l->parsed()) {
            RegexPtr r;
            try {
                r = parse_regex(text);
            } catch (const ParseError& e) {
                throw InputError(std::string("regex: ") + e.what());
            }
            out << print_grammar(regex_to_lpeg(r, alphabet, !unanchored));
            return kOk;
        }

        if (d2l->parsed()) {
            out << print_grammar(dfa_to_lpeg(load_dfa(file)));
            return kOk;
        }

        if (equiv->parsed()) {
            Operand a = load_operand(file);
            Operand b = load_operand(file2);
            std::string sigma = normalize_alphabet(operand_alphabet(a) + operand_alphabet(b));
            for (Operand* op : {&a, &b})
                if (auto* g = std::get_if<Grammar>(op)) g->set_alphabet(sigma);
            if (via == "interp") return cmd_equiv_interp(a, b, mode, max_len, max_strings, out, err);
            EquivResult r = dfa_equiv(widen(to_dfa(a, mode, budgets), sigma), widen(to_dfa(b, mode, budgets), sigma));
            if (r.equal) {
                out << "equivalent\n";
                return kOk;
            }
            out << "not equivalent\ncounterexample: " << in_quotes(r.counterexample.value_or("")) << "\n";
            return kNegative;
        }

        if (dot->parsed()) {
            if (what == "dfa") {
                out << dfa_to_dot(to_dfa(load_operand(file), mode, budgets));
            } else {
                Grammar g = load_grammar(file);
                if (what == "bfa")
                    out << bfa_to_dot(lpeg_to_bfa(g, mode, budgets.pipeline()));
                else
                    out << dfa_to_dot(lpeg_to_dfa(g, mode, budgets.pipeline()));
            }
            return kOk;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ResourceError& e) {
        err << "error: budget exceeded: " << e.what() << "\n";
        return kResource;
    } catch (const GrammarError& e) {
        err << "error: " << e.what() << "\n";
        return kNegative;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

} // namespace lpeg::cli
