#include "qtwtl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <utility>

namespace qtwtl {

namespace {

enum class Tok {
    End, LBracket, RBracket, LParen, RParen, Comma, Dot,
    AndAnd, OrOr, Arrow, Bang, HoldOp, KwTrue, KwFalse,
    Ident, Number, CmpOp
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double num = 0.0;
    bool integral = false;
    Cmp cmp = Cmp::Ge;
    int line = 1;
    int col = 1;
};

std::string describe(const Token& t) {
    switch (t.kind) {
        case Tok::End: return "end of input";
        default: return "'" + t.text + "'";
    }
}

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto make = [&](Tok k, std::string text) {
        Token t;
        t.kind = k;
        t.text = std::move(text);
        t.line = line;
        t.col = col;
        return t;
    };
    auto advance = [&](std::size_t n) {
        col += static_cast<int>(n);
        i += n;
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == 'H' && i + 1 < src.size() && src[i + 1] == '^') {
            out.push_back(make(Tok::HoldOp, "H^"));
            advance(2);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
                ++j;
            }
            std::string word = src.substr(i, j - i);
            Tok k = word == "true" ? Tok::KwTrue : word == "false" ? Tok::KwFalse : Tok::Ident;
            out.push_back(make(k, word));
            advance(j - i);
            continue;
        }
        bool neg_number = c == '-' && i + 1 < src.size() &&
                          (std::isdigit(static_cast<unsigned char>(src[i + 1])) || src[i + 1] == '.') &&
                          src[i + 1] != '>';
        if (std::isdigit(static_cast<unsigned char>(c)) || neg_number) {
            std::size_t j = i + (neg_number ? 1 : 0);
            bool integral = true;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && src[j] == '.' && j + 1 < src.size() &&
                std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
                integral = false;
                ++j;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
                    integral = false;
                    ++k;
                    while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
                    j = k;
                }
            }
            std::string lexeme = src.substr(i, j - i);
            Token t = make(Tok::Number, lexeme);
            t.num = std::strtod(lexeme.c_str(), nullptr);
            t.integral = integral;
            out.push_back(t);
            advance(j - i);
            continue;
        }
        auto two = [&](char a, char b) {
            return c == a && i + 1 < src.size() && src[i + 1] == b;
        };
        if (two('&', '&')) { out.push_back(make(Tok::AndAnd, "&&")); advance(2); continue; }
        if (two('|', '|')) { out.push_back(make(Tok::OrOr, "||")); advance(2); continue; }
        if (two('-', '>')) { out.push_back(make(Tok::Arrow, "->")); advance(2); continue; }
        if (two('!', '=')) {
            Token t = make(Tok::CmpOp, "!=");
            t.cmp = Cmp::Ne;
            out.push_back(t);
            advance(2);
            continue;
        }
        if (two('<', '=')) {
            Token t = make(Tok::CmpOp, "<=");
            t.cmp = Cmp::Le;
            out.push_back(t);
            advance(2);
            continue;
        }
        if (two('>', '=')) {
            Token t = make(Tok::CmpOp, ">=");
            t.cmp = Cmp::Ge;
            out.push_back(t);
            advance(2);
            continue;
        }
        switch (c) {
            case '<': {
                Token t = make(Tok::CmpOp, "<");
                t.cmp = Cmp::Lt;
                out.push_back(t);
                advance(1);
                continue;
            }
            case '>': {
                Token t = make(Tok::CmpOp, ">");
                t.cmp = Cmp::Gt;
                out.push_back(t);
                advance(1);
                continue;
            }
            case '!': out.push_back(make(Tok::Bang, "!")); advance(1); continue;
            case '[': out.push_back(make(Tok::LBracket, "[")); advance(1); continue;
            case ']': out.push_back(make(Tok::RBracket, "]")); advance(1); continue;
            case '(': out.push_back(make(Tok::LParen, "(")); advance(1); continue;
            case ')': out.push_back(make(Tok::RParen, ")")); advance(1); continue;
            case ',': out.push_back(make(Tok::Comma, ",")); advance(1); continue;
            case '.': out.push_back(make(Tok::Dot, ".")); advance(1); continue;
            default:
                throw SyntaxError("unexpected character '" + std::string(1, c) + "'",
                                  line, col, {});
        }
    }
    out.push_back(make(Tok::End, ""));
    return out;
}

// Internal control-flow signal for backtracking; converted into a SyntaxError
// at the entry point using the furthest failure position seen.
struct ParseFail {};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    QualityPtr parse_quality_formula() {
        auto q = quality();
        expect_end();
        return q;
    }

    TemporalPtr parse_temporal_formula() {
        auto t = temporal();
        expect_end();
        return t;
    }

    SyntaxError make_error() const {
        const Token& t = toks_[err_pos_];
        std::string msg = "unexpected " + describe(t);
        if (!err_expected_.empty()) {
            msg += "; expected ";
            for (std::size_t i = 0; i < err_expected_.size(); ++i) {
                if (i) msg += i + 1 == err_expected_.size() ? " or " : ", ";
                msg += err_expected_[i];
            }
        }
        msg += " at line " + std::to_string(t.line) + ", column " + std::to_string(t.col);
        return SyntaxError(msg, t.line, t.col, err_expected_);
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t err_pos_ = 0;
    std::vector<std::string> err_expected_;

    const Token& cur() const { return toks_[pos_]; }
    bool at(Tok k) const { return cur().kind == k; }
    bool next_is(Tok k) const {
        return pos_ + 1 < toks_.size() && toks_[pos_ + 1].kind == k;
    }

    bool accept(Tok k) {
        if (!at(k)) return false;
        ++pos_;
        return true;
    }

    [[noreturn]] void fail(const std::string& expected) {
        if (pos_ > err_pos_) {
            err_pos_ = pos_;
            err_expected_.clear();
        }
        if (pos_ == err_pos_ &&
            std::find(err_expected_.begin(), err_expected_.end(), expected) ==
                err_expected_.end()) {
            err_expected_.push_back(expected);
        }
        throw ParseFail{};
    }

    void expect(Tok k, const std::string& label) {
        if (!accept(k)) fail(label);
    }

    void expect_end() {
        if (!at(Tok::End)) fail("end of input");
    }

    int expect_window_int(const std::string& label) {
        if (at(Tok::Number) && cur().integral && cur().num >= 0) {
            int v = static_cast<int>(cur().num);
            ++pos_;
            return v;
        }
        fail(label);
    }

    std::string expect_ident(const std::string& label) {
        if (at(Tok::Ident)) {
            std::string s = cur().text;
            ++pos_;
            return s;
        }
        fail(label);
    }

    double expect_number() {
        if (at(Tok::Number)) {
            double v = cur().num;
            ++pos_;
            return v;
        }
        fail("a number");
    }

    Cmp expect_cmp() {
        if (at(Tok::CmpOp)) {
            Cmp c = cur().cmp;
            ++pos_;
            return c;
        }
        fail("a comparison operator");
    }

    // ---- quality layer ----

    QualityPtr quality() {
        auto a = quality_or();
        if (accept(Tok::Arrow)) {
            return q_implies(std::move(a), quality());
        }
        return a;
    }

    QualityPtr quality_or() {
        auto first = quality_and();
        if (!at(Tok::OrOr)) return first;
        std::vector<QualityPtr> ops{std::move(first)};
        while (accept(Tok::OrOr)) ops.push_back(quality_and());
        return q_or(std::move(ops));
    }

    QualityPtr quality_and() {
        auto first = quality_term();
        if (!at(Tok::AndAnd)) return first;
        std::vector<QualityPtr> ops{std::move(first)};
        while (accept(Tok::AndAnd)) ops.push_back(quality_term());
        return q_and(std::move(ops));
    }

    QualityPtr quality_term() {
        if (at(Tok::Ident) && next_is(Tok::LParen)) {
            const std::string& w = cur().text;
            if (w == "A_min" || w == "A_max" || w == "A_avg") return aggregate_atom();
            if (w == "C") return count_atom();
        }
        // Prefer the temporal reading; quality alternatives pick up the cases
        // the temporal layer cannot start (A_/C atoms behind ! or parens).
        std::size_t save = pos_;
        try {
            return q_temporal(temporal());
        } catch (ParseFail&) {
            pos_ = save;
        }
        if (accept(Tok::Bang)) return q_not(quality_term());
        if (accept(Tok::LParen)) {
            auto q = quality();
            expect(Tok::RParen, "')'");
            return q;
        }
        fail("a formula");
    }

    QualityPtr aggregate_atom() {
        Agg sigma = cur().text == "A_min" ? Agg::Min
                  : cur().text == "A_max" ? Agg::Max
                                          : Agg::Avg;
        ++pos_;  // A_*
        ++pos_;  // (
        std::string param = expect_ident("a parameter name");
        expect(Tok::RParen, "')'");
        Cmp cmp = expect_cmp();
        double bound = expect_number();
        return q_aggregate(sigma, std::move(param), cmp, bound);
    }

    QualityPtr count_atom() {
        ++pos_;  // C
        ++pos_;  // (
        auto phi = temporal();
        expect(Tok::RParen, "')'");
        Cmp cmp = expect_cmp();
        double bound = expect_number();
        return q_count(std::move(phi), cmp, bound);
    }

    // ---- temporal layer ----
    //
    // Binary loops snapshot before consuming an operator and back off when the
    // right-hand side is not temporal, leaving the operator for the quality
    // layer (e.g. `H^1 p && C(...) >= 0.5`).

    TemporalPtr temporal() {
        auto a = temporal_or();
        if (at(Tok::Arrow)) {
            std::size_t save = pos_;
            ++pos_;
            try {
                auto b = temporal();
                return t_or(t_not(std::move(a)), std::move(b));
            } catch (ParseFail&) {
                pos_ = save;
            }
        }
        return a;
    }

    TemporalPtr temporal_or() {
        auto a = temporal_and();
        while (at(Tok::OrOr)) {
            std::size_t save = pos_;
            ++pos_;
            try {
                a = t_or(std::move(a), temporal_and());
            } catch (ParseFail&) {
                pos_ = save;
                break;
            }
        }
        return a;
    }

    TemporalPtr temporal_and() {
        auto a = temporal_concat();
        while (at(Tok::AndAnd)) {
            std::size_t save = pos_;
            ++pos_;
            try {
                a = t_and(std::move(a), temporal_concat());
            } catch (ParseFail&) {
                pos_ = save;
                break;
            }
        }
        return a;
    }

    TemporalPtr temporal_concat() {
        auto a = temporal_factor();
        if (at(Tok::Dot)) {
            std::size_t save = pos_;
            ++pos_;
            try {
                return t_concat(std::move(a), temporal_concat());
            } catch (ParseFail&) {
                pos_ = save;
            }
        }
        return a;
    }

    TemporalPtr temporal_factor() {
        if (accept(Tok::KwTrue)) return t_true();
        if (accept(Tok::KwFalse)) return t_false();
        if (accept(Tok::HoldOp)) {
            int d = expect_window_int("a nonnegative hold duration");
            bool neg = accept(Tok::Bang);
            std::string p = expect_ident("a proposition name");
            return hold(d, std::move(p), neg);
        }
        if (accept(Tok::LBracket)) {
            auto inner = temporal();
            expect(Tok::RBracket, "']'");
            if (accept(Tok::LBracket)) {
                int lo = expect_window_int("a nonnegative window bound");
                expect(Tok::Comma, "','");
                int hi = expect_window_int("a nonnegative window bound");
                expect(Tok::RBracket, "']'");
                return within(std::move(inner), lo, hi);
            }
            return inner;  // bare brackets are grouping
        }
        if (accept(Tok::Bang)) return t_not(temporal_factor());
        if (accept(Tok::LParen)) {
            auto t = temporal();
            expect(Tok::RParen, "')'");
            return t;
        }
        fail("a temporal formula");
    }
};

} // namespace

QualityPtr parse(const std::string& text) {
    Parser p(lex(text));
    try {
        return p.parse_quality_formula();
    } catch (ParseFail&) {
        throw p.make_error();
    }
}

TemporalPtr parse_temporal(const std::string& text) {
    Parser p(lex(text));
    try {
        return p.parse_temporal_formula();
    } catch (ParseFail&) {
        throw p.make_error();
    }
}

} // namespace qtwtl
