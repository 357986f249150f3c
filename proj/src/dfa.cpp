#include "lpeg/dfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include <json.hpp>

#include "lpeg/error.hpp"
#include "lpeg/grammar.hpp"

namespace lpeg {

namespace {

using json = nlohmann::json;

std::string dot_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

Dfa reachable_part(const Dfa& d) {
    std::vector<std::uint32_t> index(d.size(), UINT32_MAX);
    std::vector<std::uint32_t> order;
    std::deque<std::uint32_t> queue{d.start};
    index[d.start] = 0;
    order.push_back(d.start);
    while (!queue.empty()) {
        std::uint32_t s = queue.front();
        queue.pop_front();
        for (std::uint32_t t : d.next[s]) {
            if (index[t] != UINT32_MAX) continue;
            index[t] = static_cast<std::uint32_t>(order.size());
            order.push_back(t);
            queue.push_back(t);
        }
    }
    Dfa out;
    out.alphabet = d.alphabet;
    for (std::uint32_t s : order) {
        std::uint32_t q = out.add_state(d.accepting[s]);
        for (std::size_t i = 0; i < d.alphabet.size(); ++i) out.next[q][i] = index[d.next[s][i]];
    }
    out.start = 0;
    return out;
}

/// Hopcroft partition refinement; returns block id per state.
std::vector<std::uint32_t> hopcroft(const Dfa& d) {
    const std::size_t n = d.size();
    const std::size_t k = d.alphabet.size();

    // inverse[i][t] = states s with next[s][i] == t
    std::vector<std::vector<std::vector<std::uint32_t>>> inverse(k, std::vector<std::vector<std::uint32_t>>(n));
    for (std::uint32_t s = 0; s < n; ++s)
        for (std::size_t i = 0; i < k; ++i) inverse[i][d.next[s][i]].push_back(s);

    std::vector<std::vector<std::uint32_t>> blocks;
    std::vector<std::uint32_t> block_of(n);
    {
        std::vector<std::uint32_t> acc, rej;
        for (std::uint32_t s = 0; s < n; ++s) (d.accepting[s] ? acc : rej).push_back(s);
        for (auto* part : {&acc, &rej}) {
            if (part->empty()) continue;
            for (std::uint32_t s : *part) block_of[s] = static_cast<std::uint32_t>(blocks.size());
            blocks.push_back(std::move(*part));
        }
    }

    std::vector<std::vector<bool>> queued(blocks.size(), std::vector<bool>(k, false));
    std::deque<std::pair<std::uint32_t, std::size_t>> work;
    auto push = [&](std::uint32_t block, std::size_t sym) {
        if (queued.size() <= block) queued.resize(block + 1, std::vector<bool>(k, false));
        if (queued[block][sym]) return;
        queued[block][sym] = true;
        work.emplace_back(block, sym);
    };
    {
        std::uint32_t smallest = 0;
        for (std::uint32_t b = 1; b < blocks.size(); ++b)
            if (blocks[b].size() < blocks[smallest].size()) smallest = b;
        for (std::size_t i = 0; i < k && !blocks.empty(); ++i) push(smallest, i);
    }

    std::vector<std::uint32_t> hits(n, 0);
    std::vector<bool> marked(n, false);
    while (!work.empty()) {
        auto [splitter, sym] = work.front();
        work.pop_front();
        queued[splitter][sym] = false;

        std::vector<std::uint32_t> preimage;
        for (std::uint32_t t : blocks[splitter])
            for (std::uint32_t s : inverse[sym][t]) preimage.push_back(s);

        std::vector<std::uint32_t> touched;
        for (std::uint32_t s : preimage) {
            if (marked[s]) continue;
            marked[s] = true;
            std::uint32_t b = block_of[s];
            if (hits[b]++ == 0) touched.push_back(b);
        }
        for (std::uint32_t b : touched) {
            if (hits[b] < blocks[b].size()) {
                std::vector<std::uint32_t> inside, outside;
                for (std::uint32_t s : blocks[b]) (marked[s] ? inside : outside).push_back(s);
                auto fresh = static_cast<std::uint32_t>(blocks.size());
                blocks[b] = std::move(inside);
                blocks.push_back(std::move(outside));
                for (std::uint32_t s : blocks[fresh]) block_of[s] = fresh;
                queued.resize(blocks.size(), std::vector<bool>(k, false));
                for (std::size_t i = 0; i < k; ++i) {
                    if (queued[b][i])
                        push(fresh, i);
                    else
                        push(blocks[b].size() <= blocks[fresh].size() ? b : fresh, i);
                }
            }
            hits[b] = 0;
        }
        for (std::uint32_t s : preimage) marked[s] = false;
    }
    return block_of;
}

} // namespace

int Dfa::symbol_index(char c) const {
    std::size_t i = alphabet.find(c);
    return i == std::string::npos ? -1 : static_cast<int>(i);
}

std::string Dfa::name(std::uint32_t q) const {
    return q < names.size() ? names[q] : "s" + std::to_string(q);
}

std::uint32_t Dfa::add_state(bool accept) {
    next.emplace_back(alphabet.size(), 0);
    accepting.push_back(accept);
    return static_cast<std::uint32_t>(next.size() - 1);
}

void validate_dfa(const Dfa& d) {
    if (d.size() == 0) throw Error("DFA has no states");
    if (d.start >= d.size()) throw Error("DFA start state out of range");
    if (d.accepting.size() != d.size()) throw Error("DFA accepting vector has the wrong length");
    if (normalize_alphabet(d.alphabet) != d.alphabet) throw Error("DFA alphabet must be sorted and distinct");
    for (const auto& row : d.next) {
        if (row.size() != d.alphabet.size()) throw Error("DFA transition function is not total");
        for (std::uint32_t t : row)
            if (t >= d.size()) throw Error("DFA transition target out of range");
    }
}

bool dfa_match(const Dfa& d, std::string_view w) {
    std::uint32_t s = d.start;
    for (char c : w) {
        int i = d.symbol_index(c);
        if (i < 0) return false;
        s = d.next[s][static_cast<std::size_t>(i)];
    }
    return d.accepting[s];
}

Dfa dfa_minimize(const Dfa& input) {
    validate_dfa(input);
    Dfa d = reachable_part(input);
    std::vector<std::uint32_t> block_of = hopcroft(d);

    // quotient, then breadth-first renumbering from the start block
    std::map<std::uint32_t, std::uint32_t> number;
    std::deque<std::uint32_t> queue;
    std::vector<std::uint32_t> representative;
    auto visit = [&](std::uint32_t state) {
        auto [it, fresh] = number.emplace(block_of[state], static_cast<std::uint32_t>(representative.size()));
        if (fresh) {
            representative.push_back(state);
            queue.push_back(state);
        }
        return it->second;
    };
    Dfa out;
    out.alphabet = d.alphabet;
    visit(d.start);
    while (!queue.empty()) {
        std::uint32_t s = queue.front();
        queue.pop_front();
        std::uint32_t q = number.at(block_of[s]);
        while (out.size() <= q) out.add_state(false);
        out.accepting[q] = d.accepting[s];
        for (std::size_t i = 0; i < d.alphabet.size(); ++i) {
            std::uint32_t t = visit(d.next[s][i]);
            while (out.size() <= t) out.add_state(false);
            out.next[q][i] = t;
        }
    }
    out.start = 0;
    return out;
}

EquivResult dfa_equiv(const Dfa& a, const Dfa& b) {
    if (a.alphabet != b.alphabet)
        throw Error("alphabet mismatch: '" + a.alphabet + "' vs '" + b.alphabet + "'");
    validate_dfa(a);
    validate_dfa(b);
    struct Visit {
        std::uint64_t parent;
        char symbol;
    };
    auto key = [&](std::uint32_t x, std::uint32_t y) { return std::uint64_t{x} * b.size() + y; };
    std::map<std::uint64_t, Visit> seen;
    std::deque<std::pair<std::uint32_t, std::uint32_t>> queue{{a.start, b.start}};
    const std::uint64_t root = key(a.start, b.start);
    seen.emplace(root, Visit{root, '\0'});
    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        if (a.accepting[x] != b.accepting[y]) {
            std::string w;
            for (std::uint64_t k = key(x, y); k != root; k = seen.at(k).parent) w += seen.at(k).symbol;
            std::reverse(w.begin(), w.end());
            return EquivResult{false, w};
        }
        for (std::size_t i = 0; i < a.alphabet.size(); ++i) {
            std::uint32_t nx = a.next[x][i], ny = b.next[y][i];
            if (seen.emplace(key(nx, ny), Visit{key(x, y), a.alphabet[i]}).second) queue.emplace_back(nx, ny);
        }
    }
    return EquivResult{true, std::nullopt};
}

std::string dfa_to_json(const Dfa& d) {
    validate_dfa(d);
    json j;
    j["alphabet"] = json::array();
    for (char c : d.alphabet) j["alphabet"].push_back(std::string(1, c));
    j["states"] = json::array();
    j["accepting"] = json::array();
    j["transitions"] = json::object();
    for (std::uint32_t q = 0; q < d.size(); ++q) {
        j["states"].push_back(d.name(q));
        if (d.accepting[q]) j["accepting"].push_back(d.name(q));
        json row = json::object();
        for (std::size_t i = 0; i < d.alphabet.size(); ++i) row[std::string(1, d.alphabet[i])] = d.name(d.next[q][i]);
        j["transitions"][d.name(q)] = row;
    }
    j["start"] = d.name(d.start);
    return j.dump(2) + "\n";
}

Dfa dfa_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid DFA JSON: ") + e.what());
    }
    try {
        Dfa d;
        std::string symbols;
        for (const auto& s : j.at("alphabet")) {
            std::string sym = s.get<std::string>();
            if (sym.size() != 1) throw ParseError("alphabet entries must be single characters: '" + sym + "'");
            symbols += sym;
        }
        d.alphabet = normalize_alphabet(symbols);
        if (d.alphabet.size() != symbols.size()) throw ParseError("duplicate alphabet symbol");

        std::map<std::string, std::uint32_t> index;
        for (const auto& s : j.at("states")) {
            std::string name = s.get<std::string>();
            if (!index.emplace(name, static_cast<std::uint32_t>(d.size())).second)
                throw ParseError("duplicate state " + name);
            d.add_state(false);
            d.names.push_back(name);
        }
        auto lookup = [&](const std::string& name) {
            auto it = index.find(name);
            if (it == index.end()) throw ParseError("unknown state " + name);
            return it->second;
        };
        d.start = lookup(j.at("start").get<std::string>());
        for (const auto& s : j.at("accepting")) d.accepting[lookup(s.get<std::string>())] = true;

        std::optional<std::uint32_t> sink;
        std::vector<std::vector<bool>> defined(d.size(), std::vector<bool>(d.alphabet.size(), false));
        if (j.contains("transitions")) {
            for (const auto& [from, row] : j.at("transitions").items()) {
                std::uint32_t q = lookup(from);
                for (const auto& [sym, to] : row.items()) {
                    int i = sym.size() == 1 ? d.symbol_index(sym[0]) : -1;
                    if (i < 0) throw ParseError("transition on symbol '" + sym + "' outside the alphabet");
                    d.next[q][static_cast<std::size_t>(i)] = lookup(to.get<std::string>());
                    defined[q][static_cast<std::size_t>(i)] = true;
                }
            }
        }
        const std::size_t declared = d.size();
        for (std::uint32_t q = 0; q < declared; ++q) {
            for (std::size_t i = 0; i < d.alphabet.size(); ++i) {
                if (defined[q][i]) continue;
                if (!sink) {
                    std::string name = "sink";
                    while (index.contains(name)) name += "_";
                    sink = d.add_state(false);
                    d.names.push_back(name);
                    for (std::size_t k = 0; k < d.alphabet.size(); ++k) d.next[*sink][k] = *sink;
                }
                d.next[q][i] = *sink;
            }
        }
        validate_dfa(d);
        return d;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed DFA JSON: ") + e.what());
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

std::string dfa_to_dot(const Dfa& d) {
    std::ostringstream out;
    out << "digraph DFA {\n  rankdir=LR;\n  start [shape=point];\n";
    for (std::uint32_t q = 0; q < d.size(); ++q)
        out << "  \"" << dot_escape(d.name(q)) << "\" [shape=" << (d.accepting[q] ? "doublecircle" : "circle")
            << "];\n";
    out << "  start -> \"" << dot_escape(d.name(d.start)) << "\";\n";
    for (std::uint32_t q = 0; q < d.size(); ++q) {
        // one edge per target, labels merged
        std::map<std::uint32_t, std::string> labels;
        for (std::size_t i = 0; i < d.alphabet.size(); ++i) {
            std::string& l = labels[d.next[q][i]];
            if (!l.empty()) l += ",";
            l += d.alphabet[i];
        }
        for (const auto& [t, l] : labels)
            out << "  \"" << dot_escape(d.name(q)) << "\" -> \"" << dot_escape(d.name(t)) << "\" [label=\""
                << dot_escape(l) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace lpeg
