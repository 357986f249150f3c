#include "lpeg/interp.hpp"

#include <unordered_map>

#include "lpeg/error.hpp"

namespace lpeg {

namespace {

constexpr std::size_t kFail = static_cast<std::size_t>(-1);

class Evaluator {
public:
    Evaluator(const Grammar& g, std::string_view input, const InterpOptions& options)
        : g_(g), input_(input), memoize_(options.memoize),
          max_depth_(options.max_depth.value_or(10 * input.size() + 100)) {}

    /// End position after matching `e` at `pos`, or kFail.
    std::size_t eval(const Expr& e, std::size_t pos) {
        switch (e.kind) {
        case ExprKind::Empty:
            return pos;
        case ExprKind::Char:
            return pos < input_.size() && input_[pos] == e.symbol ? pos + 1 : kFail;
        case ExprKind::Any:
            return pos < input_.size() && g_.alphabet().find(input_[pos]) != std::string::npos ? pos + 1 : kFail;
        case ExprKind::Class:
            return pos < input_.size() && e.text.find(input_[pos]) != std::string::npos ? pos + 1 : kFail;
        case ExprKind::Seq: {
            std::size_t mid = eval(*e.lhs, pos);
            return mid == kFail ? kFail : eval(*e.rhs, mid);
        }
        case ExprKind::Choice: {
            std::size_t r = eval(*e.lhs, pos);
            return r != kFail ? r : eval(*e.rhs, pos);
        }
        case ExprKind::Opt: {
            std::size_t r = eval(*e.lhs, pos);
            return r != kFail ? r : pos;
        }
        case ExprKind::Star:
            return repeat(*e.lhs, pos);
        case ExprKind::Plus: {
            std::size_t first = eval(*e.lhs, pos);
            return first == kFail ? kFail : repeat(*e.lhs, first);
        }
        case ExprKind::Not:
            return eval(*e.lhs, pos) == kFail ? pos : kFail;
        case ExprKind::And:
            return eval(*e.lhs, pos) == kFail ? kFail : pos;
        case ExprKind::NonTerminal:
            return call(e, pos);
        case ExprKind::Alt:
            throw GrammarError("unordered alternation only exists inside the conversion pipeline");
        }
        return kFail;
    }

private:
    std::size_t repeat(const Expr& body, std::size_t pos) {
        while (true) {
            std::size_t next = eval(body, pos);
            if (next == kFail) return pos;
            if (next == pos)
                throw GrammarError("repetition body matched without consuming input: " + to_compact(std::make_shared<Expr>(body)));
            pos = next;
        }
    }

    std::size_t call(const Expr& e, std::size_t pos) {
        const ExprPtr* body = g_.find(e.text);
        if (body == nullptr) throw GrammarError("undefined nonterminal " + e.text);
        if (memoize_) {
            auto it = memo_.find(Key{body->get(), pos});
            if (it != memo_.end()) return it->second;
        }
        if (++depth_ > max_depth_)
            throw ResourceError("interpreter recursion depth limit (" + std::to_string(max_depth_) +
                                ") exceeded in " + e.text + "; the grammar is not well-formed");
        std::size_t r = eval(**body, pos);
        --depth_;
        if (memoize_) memo_.emplace(Key{body->get(), pos}, r);
        return r;
    }

    struct Key {
        const Expr* rule;
        std::size_t pos;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            return std::hash<const void*>{}(k.rule) * 31 + std::hash<std::size_t>{}(k.pos);
        }
    };

    const Grammar& g_;
    std::string_view input_;
    bool memoize_;
    std::size_t max_depth_;
    std::size_t depth_ = 0;
    std::unordered_map<Key, std::size_t, KeyHash> memo_;
};

} // namespace

std::string to_string(const MatchResult& r) {
    return r.success ? "Consumed(" + std::to_string(r.length) + ")" : "Fail";
}

MatchResult consume(const Grammar& g, const ExprPtr& e, std::string_view input, const InterpOptions& options) {
    Evaluator ev(g, input, options);
    std::size_t end = ev.eval(*e, 0);
    return end == kFail ? MatchResult::fail() : MatchResult::consumed(end);
}

bool lang_member(const Grammar& g, std::string_view input, MatchMode mode) {
    MatchResult r = consume(g, g.start(), input);
    if (!r.success) return false;
    return mode == MatchMode::Prefix || r.length == input.size();
}

void for_each_string(std::string_view alphabet, std::size_t max_len,
                     const std::function<bool(const std::string&)>& visit) {
    const std::string sigma = normalize_alphabet(alphabet);
    for (std::size_t len = 0; len <= max_len; ++len) {
        if (len > 0 && sigma.empty()) return;
        std::vector<std::size_t> digits(len, 0);
        std::string s(len, len > 0 ? sigma[0] : '\0');
        while (true) {
            if (!visit(s)) return;
            // odometer, last position fastest
            std::ptrdiff_t i = static_cast<std::ptrdiff_t>(len) - 1;
            while (i >= 0 && digits[i] + 1 == sigma.size()) {
                digits[i] = 0;
                s[i] = sigma[0];
                --i;
            }
            if (i < 0) break;
            s[i] = sigma[++digits[i]];
        }
    }
}

std::optional<std::string> expr_equiv_bounded(const Grammar& g1, const Grammar& g2, std::size_t max_len) {
    std::optional<std::string> witness;
    for_each_string(g1.alphabet() + g2.alphabet(), max_len, [&](const std::string& w) {
        if (consume(g1, g1.start(), w) != consume(g2, g2.start(), w)) {
            witness = w;
            return false;
        }
        return true;
    });
    return witness;
}

} // namespace lpeg
