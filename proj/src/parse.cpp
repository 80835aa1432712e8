#include "liederiv/parse.hpp"

#include <cctype>
#include <optional>

#include "liederiv/errors.hpp"

namespace liederiv {
namespace {

struct Token {
    enum class Kind { Integer, XVar, DVar, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind;
    BigInt value;  // Integer
    int index = 0; // XVar / DVar
};

std::vector<Token> tokenize(const std::string& text, bool allow_d) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({Token::Kind::Integer, BigInt(text.substr(i, j - i)), 0});
            i = j;
            continue;
        }
        if (c == 'x' || (allow_d && c == 'd')) {
            if (i + 1 >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i + 1])))
                throw ParseError(std::string("expected digit after '") + c + "'");
            const int idx = text[i + 1] - '0';
            if (idx < 1 || idx > 9)
                throw ParseError(std::string("index out of range after '") + c + "' (1..9)");
            out.push_back({c == 'x' ? Token::Kind::XVar : Token::Kind::DVar, BigInt(0), idx});
            i += 2;
            continue;
        }
        switch (c) {
            case '+': out.push_back({Token::Kind::Plus, BigInt(0), 0}); break;
            case '-': out.push_back({Token::Kind::Minus, BigInt(0), 0}); break;
            case '*': out.push_back({Token::Kind::Star, BigInt(0), 0}); break;
            case '/': out.push_back({Token::Kind::Slash, BigInt(0), 0}); break;
            case '^': out.push_back({Token::Kind::Caret, BigInt(0), 0}); break;
            case '(': out.push_back({Token::Kind::LParen, BigInt(0), 0}); break;
            case ')': out.push_back({Token::Kind::RParen, BigInt(0), 0}); break;
            default: throw ParseError(std::string("unexpected character '") + c + "'");
        }
        ++i;
    }
    out.push_back({Token::Kind::End, BigInt(0), 0});
    return out;
}

// A parsed value: either a scalar rational function or a derivation
// (scalar * d_i sums). Mixing the two only works through multiplication.
struct Value {
    RationalFunction scalar;
    std::optional<std::vector<RationalFunction>> dcoeffs;

    explicit Value(RationalFunction s) : scalar(std::move(s)) {}
    Value(int num_vars, int d_index) : scalar(num_vars) {
        dcoeffs.emplace(num_vars, RationalFunction(num_vars));
        (*dcoeffs)[d_index - 1] = RationalFunction::constant(num_vars, Rational(1));
    }
    bool is_derivation() const { return dcoeffs.has_value(); }
};

class Parser {
public:
    Parser(std::vector<Token> tokens, int num_vars)
        : tokens_(std::move(tokens)), num_vars_(num_vars) {}

    Value parse() {
        Value v = expr();
        expect(Token::Kind::End, "trailing input");
        return v;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    Token next() { return tokens_[pos_++]; }
    void expect(Token::Kind k, const char* what) {
        if (peek().kind != k) throw ParseError(std::string("parse error: ") + what);
        ++pos_;
    }

    Value expr() {
        Value acc = term();
        while (peek().kind == Token::Kind::Plus || peek().kind == Token::Kind::Minus) {
            const bool minus = next().kind == Token::Kind::Minus;
            Value rhs = term();
            acc = add(acc, rhs, minus);
        }
        return acc;
    }

    Value term() {
        Value acc = factor();
        while (peek().kind == Token::Kind::Star || peek().kind == Token::Kind::Slash) {
            const bool divide = next().kind == Token::Kind::Slash;
            Value rhs = factor();
            acc = divide ? div(acc, rhs) : mul(acc, rhs);
        }
        return acc;
    }

    Value factor() {
        if (peek().kind == Token::Kind::Minus) {
            ++pos_;
            Value v = factor();
            return negate(v);
        }
        Value v = primary();
        if (peek().kind == Token::Kind::Caret) {
            ++pos_;
            if (peek().kind != Token::Kind::Integer)
                throw ParseError("parse error: exponent must be a nonnegative integer");
            const BigInt e = next().value;
            if (e > 64) throw ParseError("parse error: exponent too large");
            if (v.is_derivation()) throw ParseError("parse error: cannot exponentiate d-terms");
            v.scalar = v.scalar.pow(static_cast<unsigned>(e));
        }
        return v;
    }

    Value primary() {
        const Token t = next();
        switch (t.kind) {
            case Token::Kind::Integer:
                return Value(RationalFunction::constant(num_vars_, Rational(t.value)));
            case Token::Kind::XVar:
                return Value(RationalFunction::variable(num_vars_, t.index));
            case Token::Kind::DVar:
                return Value(num_vars_, t.index);
            case Token::Kind::LParen: {
                Value v = expr();
                expect(Token::Kind::RParen, "expected ')'");
                return v;
            }
            default: throw ParseError("parse error: unexpected token");
        }
    }

    static Value negate(Value v) {
        if (v.is_derivation()) {
            for (auto& c : *v.dcoeffs) c = -c;
        } else {
            v.scalar = -v.scalar;
        }
        return v;
    }

    static Value add(Value a, const Value& b, bool minus) {
        if (a.is_derivation() != b.is_derivation()) {
            // Allow 0 + D and D + 0.
            if (!a.is_derivation() && a.scalar.is_zero()) {
                Value r = b;
                return minus ? negate(r) : r;
            }
            if (!b.is_derivation() && b.scalar.is_zero()) return a;
            throw ParseError("parse error: cannot add scalars and d-terms");
        }
        if (a.is_derivation()) {
            for (std::size_t i = 0; i < a.dcoeffs->size(); ++i) {
                if (minus)
                    (*a.dcoeffs)[i] -= (*b.dcoeffs)[i];
                else
                    (*a.dcoeffs)[i] += (*b.dcoeffs)[i];
            }
        } else {
            a.scalar = minus ? a.scalar - b.scalar : a.scalar + b.scalar;
        }
        return a;
    }

    static Value mul(Value a, const Value& b) {
        if (a.is_derivation() && b.is_derivation())
            throw ParseError("parse error: cannot multiply two d-terms");
        if (b.is_derivation()) {
            Value r = b;
            for (auto& c : *r.dcoeffs) c *= a.scalar;
            return r;
        }
        if (a.is_derivation()) {
            for (auto& c : *a.dcoeffs) c *= b.scalar;
            return a;
        }
        a.scalar *= b.scalar;
        return a;
    }

    static Value div(Value a, const Value& b) {
        if (b.is_derivation()) throw ParseError("parse error: cannot divide by a d-term");
        if (b.scalar.is_zero()) throw ParseError("parse error: division by zero");
        if (a.is_derivation()) {
            for (auto& c : *a.dcoeffs) c /= b.scalar;
            return a;
        }
        a.scalar /= b.scalar;
        return a;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int num_vars_;
};

int inferred_num_vars(const std::vector<Token>& tokens, int requested) {
    int max_index = 0;
    for (const auto& t : tokens) {
        if (t.kind == Token::Kind::XVar || t.kind == Token::Kind::DVar)
            max_index = std::max(max_index, t.index);
    }
    if (requested == 0) return std::max(max_index, 1);
    if (max_index > requested)
        throw ParseError("parse error: index exceeds the requested variable count");
    return requested;
}

Value parse_value(const std::string& text, int num_vars, bool allow_d) {
    auto tokens = tokenize(text, allow_d);
    const int n = inferred_num_vars(tokens, num_vars);
    return Parser(std::move(tokens), n).parse();
}

} // namespace

RationalFunction parse_rational_function(const std::string& text, int num_vars) {
    Value v = parse_value(text, num_vars, false);
    return v.scalar;
}

Polynomial parse_polynomial(const std::string& text, int num_vars) {
    RationalFunction f = parse_rational_function(text, num_vars);
    if (!f.is_polynomial()) throw ParseError("parse error: expected a polynomial");
    return f.num();
}

Derivation parse_derivation(const std::string& text, int num_vars) {
    Value v = parse_value(text, num_vars, true);
    if (!v.is_derivation()) {
        if (v.scalar.is_zero()) return Derivation(v.scalar.num_vars());
        throw ParseError("parse error: expected a derivation");
    }
    return Derivation(std::move(*v.dcoeffs));
}

std::vector<Derivation> parse_derivation_list(const std::string& text, int num_vars) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ';') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);

    // One shared variable count: infer across all parts unless given.
    int n = num_vars;
    if (n == 0) {
        for (const auto& p : parts) {
            auto tokens = tokenize(p, true);
            n = std::max(n, inferred_num_vars(tokens, 0));
        }
    }
    std::vector<Derivation> out;
    for (const auto& p : parts) {
        bool blank = true;
        for (char c : p)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;
        out.push_back(parse_derivation(p, n));
    }
    if (out.empty()) throw ParseError("parse error: empty derivation list");
    return out;
}

} // namespace liederiv
