// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lpeg/conversion.hpp"
#include "lpeg/interp.hpp"
#include "support/support.hpp"

using namespace lpeg;
using lpeg::testing::Rng;

namespace {

// Pinned limits.
constexpr double kJudgementSeconds = 1.0;
constexpr double kAstarbSeconds = 5.0;
constexpr double kRandomLpegSeconds = 60.0;
constexpr double kScalingSeconds = 10.0;
constexpr double kScalingRatio = 20.0;
constexpr std::size_t kRandomLpegs = 300;
constexpr std::size_t kRandomLpegMaxLen = 8;
constexpr std::size_t kChoicePairs = 200;
constexpr std::size_t kChoicePairMaxLen = 6;
constexpr std::size_t kRandomRegexes = 200;
constexpr std::size_t kRegexDepth = 5;
constexpr std::size_t kRegexMaxLen = 8;
constexpr std::size_t kRoundTripDfas = 50;
constexpr std::size_t kRoundTripMaxStates = 5;
constexpr std::size_t kPipelineBfas = 100;
constexpr std::size_t kBfaMaxLen = 8;
constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string quoted(const std::string& w) { return "\"" + w + "\""; }

Outcome judgement_examples() {
    Outcome out;
    auto t0 = Clock::now();
    Grammar ex1 = parse_grammar("A <- 'a' A / 'b' B / 'c'\nB <- 'a' B / 'b' A / 'c'\n");
    Grammar ex2 = parse_grammar("A <- !('a' A) 'a' A / 'b'\n");
    Grammar ex3 = parse_grammar("A <- 'a' A 'a' / B*\nB <- 'a' B / 'b'\n");
    if (!is_lpeg(ex1).is_lpeg) out.fail("grammar 1 rejected");
    if (!is_lpeg(ex2).is_lpeg) out.fail("grammar 2 rejected");
    LpegJudgement j3 = is_lpeg(ex3);
    std::set<std::string> seen;
    for (const auto& v : j3.violations) seen.insert(to_compact(v.expr));
    if (j3.is_lpeg) out.fail("grammar 3 accepted");
    if (seen != std::set<std::string>{"aAa", "B*"}) {
        std::string got;
        for (const auto& s : seen) got += " " + s;
        out.fail("grammar 3 violations were" + got);
    }
    double t = seconds_since(t0);
    if (t >= kJudgementSeconds) out.fail("took " + std::to_string(t) + " s");
    if (out.pass) out.detail = "grammars 1 and 2 accepted, grammar 3 rejected at aAa and B*";
    return out;
}

Outcome algebra_examples() {
    Outcome out;
    const BoolFn q0 = BoolFn::state(0), q1 = BoolFn::state(1), q2 = BoolFn::state(2);
    const BoolFn q3 = BoolFn::state(3), q4 = BoolFn::state(4);

    BoolFn phi_result = phi((q1 & q2) | q3, q4, {2, 3});
    BoolFn phi_printed = (q1 & (q2 | q4)) | (q3 | q4);
    if (!(canonical(phi_result) == canonical(phi_printed))) out.fail("phi gave " + to_string(phi_result));

    if (!eval_p(q0 & ~q1, {0})) out.fail("eval_P(q0 & !q1, {q0}) was false");

    BoolFn ef = eval_f(q0 & (q1 | q2), {1});
    if (!(canonical(ef) == canonical(q0))) out.fail("eval_F gave " + to_string(ef));
    bool printed_matches = canonical(ef) == canonical(q0 & q2);
    if (printed_matches) out.fail("eval_F unexpectedly equals the printed q0 & q2");
    std::printf("  note: eval_F(q0 & (q1 | q2), {q1}) = %s; the printed value q0 & q2 is an erratum\n",
                to_string(ef).c_str());
    if (out.pass) out.detail = "phi, eval_P and eval_F match by canonical form";
    return out;
}

Outcome astarb() {
    Outcome out;
    auto t0 = Clock::now();
    Grammar g = parse_grammar("A <- 'a' A / 'b'\n");
    Dfa exact = lpeg_to_dfa(g, MatchMode::Exact);
    Dfa prefix = lpeg_to_dfa(g, MatchMode::Prefix);
    auto in_astarb = [](const std::string& w) {
        return !w.empty() && w.back() == 'b' && std::count(w.begin(), w.end(), 'b') == 1;
    };
    auto in_astarb_any = [](const std::string& w) { return w.find('b') != std::string::npos; };
    std::size_t nonempty = 0;
    for (const auto& w : lpeg::testing::all_strings("ab", 12)) {
        if (!w.empty()) ++nonempty;
        bool e = dfa_match(exact, w), p = dfa_match(prefix, w);
        if (e != lang_member(g, w, MatchMode::Exact) || e != in_astarb(w)) out.fail("exact mode differs on " + quoted(w));
        if (p != lang_member(g, w, MatchMode::Prefix) || p != in_astarb_any(w))
            out.fail("prefix mode differs on " + quoted(w));
    }
    if (nonempty != 8190) out.fail("enumerated " + std::to_string(nonempty) + " non-empty strings");
    Bfa b = lpeg_to_bfa(g, MatchMode::Exact);
    if (!bfa_accepts(b, "b")) out.fail("BFA rejects \"b\"");
    if (bfa_accepts(b, "a")) out.fail("BFA accepts \"a\"");
    double t = seconds_since(t0);
    if (t >= kAstarbSeconds) out.fail("took " + std::to_string(t) + " s");
    if (out.pass) out.detail = "8190 non-empty strings plus the empty string, both modes, BFA accepts b and rejects a";
    return out;
}

Outcome random_lpegs() {
    Outcome out;
    auto t0 = Clock::now();
    Rng rng(kSeed);
    const auto inputs = lpeg::testing::all_strings("ab", kRandomLpegMaxLen);
    std::size_t checked = 0;
    for (std::size_t i = 0; i < kRandomLpegs && out.pass; ++i) {
        Grammar g = lpeg::testing::random_wellformed_lpeg(rng);
        for (MatchMode mode : {MatchMode::Exact, MatchMode::Prefix}) {
            Dfa d = lpeg_to_dfa(g, mode);
            for (const auto& w : inputs) {
                ++checked;
                if (dfa_match(d, w) != lang_member(g, w, mode)) {
                    out.fail(std::string(mode == MatchMode::Exact ? "exact" : "prefix") + " mismatch on " + quoted(w) +
                             " for\n" + print_grammar(g));
                    break;
                }
            }
        }
    }
    double t = seconds_since(t0);
    if (t >= kRandomLpegSeconds) out.fail("took " + std::to_string(t) + " s");
    if (out.pass)
        out.detail = std::to_string(kRandomLpegs) + " grammars, " + std::to_string(checked) + " string checks, " +
                     std::to_string(t).substr(0, 5) + " s";
    return out;
}

Outcome choice_pairs() {
    Outcome out;
    Rng rng(kSeed + 1);
    const auto inputs = lpeg::testing::all_strings("ab", kChoicePairMaxLen);
    std::size_t made = 0;
    while (made < kChoicePairs && out.pass) {
        Grammar base = lpeg::testing::random_lpeg(rng, {"ab", 2, 3});
        ExprPtr e1 = lpeg::testing::random_linear(rng, base, 1 + made % 4);
        ExprPtr e2 = lpeg::testing::random_linear(rng, base, 1 + (made / 4) % 4);
        Grammar g = base;
        g.set_start(choice(e1, e2));
        if (!check_wellformed(g).empty()) continue;
        ++made;
        Bfa b = lpeg_to_bfa(g, MatchMode::Exact);
        for (const auto& w : inputs) {
            MatchResult r = consume(g, g.start(), w);
            std::set<std::size_t> got = bfa_consume_anchored(b, w);
            std::set<std::size_t> want;
            if (r.success) want.insert(r.length);
            if (got != want) {
                out.fail("on " + quoted(w) + " interpreter says " + to_string(r) + " for start " + to_compact(g.start()));
                break;
            }
        }
    }
    if (out.pass) out.detail = std::to_string(made) + " pairs, all strings up to length 6";
    return out;
}

Outcome regex_translation() {
    Outcome out;
    std::vector<std::pair<RegexPtr, std::string>> cases;
    for (const char* text : {"", "a", "ab", "a|b", "a*", "(a|b)*abb", "a*b|c"}) cases.emplace_back(parse_regex(text), text);
    Rng rng(kSeed + 2);
    for (std::size_t i = 0; i < kRandomRegexes; ++i) {
        RegexPtr r = lpeg::testing::random_regex(rng, "ab", 1 + i % kRegexDepth);
        cases.emplace_back(r, to_string(r));
    }
    for (const auto& [r, text] : cases) {
        std::string sigma = normalize_alphabet("ab" + regex_alphabet(r));
        Grammar g = regex_to_lpeg(r, sigma);
        if (!is_lpeg(g).is_lpeg) {
            out.fail("output for " + text + " is not an LPEG");
            break;
        }
        Dfa d = lpeg_to_dfa(g, MatchMode::Exact);
        for (const auto& w : lpeg::testing::all_strings(sigma, kRegexMaxLen)) {
            bool want = lpeg::testing::regex_matches(r, w);
            if (lang_member(g, w, MatchMode::Exact) != want) {
                out.fail("interpreter disagrees with the regex oracle on " + quoted(w) + " for " + text);
                break;
            }
            if (dfa_match(d, w) != want) {
                out.fail("pipeline DFA disagrees with the regex oracle on " + quoted(w) + " for " + text);
                break;
            }
        }
        if (!out.pass) break;
    }
    if (out.pass) out.detail = "7 fixed + " + std::to_string(kRandomRegexes) + " random regexes, strings up to length 8";
    return out;
}

Outcome dfa_round_trip() {
    Outcome out;
    Rng rng(kSeed + 3);
    for (std::size_t i = 0; i < kRoundTripDfas && out.pass; ++i) {
        Dfa d = lpeg::testing::random_dfa(rng, "ab", kRoundTripMaxStates);
        Dfa back = lpeg_to_dfa(dfa_to_lpeg(d), MatchMode::Exact);
        EquivResult r = dfa_equiv(d, back);
        if (!r.equal) out.fail("round trip differs on " + quoted(*r.counterexample) + " for\n" + dfa_to_json(d));
    }
    if (out.pass) out.detail = std::to_string(kRoundTripDfas) + " random DFAs equal by product construction";
    return out;
}

Outcome scaling() {
    Outcome out;
    auto t0 = Clock::now();
    Dfa d = lpeg_to_dfa(parse_grammar("A <- 'a' A / 'b'\n"), MatchMode::Exact);
    auto best_time = [&](std::size_t n) {
        std::string w(n, 'a');
        w += 'b';
        double best = 1e9;
        for (int rep = 0; rep < 7; ++rep) {
            auto s = Clock::now();
            bool ok = dfa_match(d, w);
            best = std::min(best, seconds_since(s));
            if (!ok) out.fail("a^" + std::to_string(n) + "b rejected");
        }
        return best;
    };
    double small = best_time(100000);
    double large = best_time(1000000);
    double ratio = large / std::max(small, 1e-9);
    if (ratio > kScalingRatio) out.fail("ratio " + std::to_string(ratio));
    double t = seconds_since(t0);
    if (t >= kScalingSeconds) out.fail("took " + std::to_string(t) + " s");
    std::ostringstream s;
    s.precision(3);
    s << "n=1e5 " << small * 1e3 << " ms, n=1e6 " << large * 1e3 << " ms, ratio " << ratio;
    if (out.pass) out.detail = s.str();
    return out;
}

Outcome determinization() {
    Outcome out;
    Rng rng(kSeed + 4);
    const auto inputs = lpeg::testing::all_strings("ab", kBfaMaxLen);
    for (std::size_t i = 0; i < kPipelineBfas && out.pass; ++i) {
        Grammar g = lpeg::testing::random_wellformed_lpeg(rng);
        MatchMode mode = i % 2 == 0 ? MatchMode::Exact : MatchMode::Prefix;
        Bfa b = lpeg_to_bfa(g, mode);
        Dfa d = bfa_to_dfa(b);
        for (const auto& w : inputs) {
            if (bfa_accepts(b, w) != dfa_match(d, w)) {
                out.fail("disagreement on " + quoted(w) + " for\n" + print_grammar(g));
                break;
            }
        }
    }
    if (out.pass) out.detail = std::to_string(kPipelineBfas) + " pipeline BFAs, all strings up to length 8";
    return out;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "LPEG judgement on the worked examples", judgement_examples},
        {2, "boolean algebra worked values", algebra_examples},
        {3, "A <- aA/b in exact and prefix mode", astarb},
        {4, "random LPEGs: interpreter vs DFA", random_lpegs},
        {5, "choice rewriting preserves consume", choice_pairs},
        {6, "regex to LPEG translation", regex_translation},
        {7, "DFA -> LPEG -> DFA round trip", dfa_round_trip},
        {8, "linear-time DFA matching", scaling},
        {9, "determinization soundness", determinization},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::printf("%s criterion %d: %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, seconds_since(t0),
                    o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
