#ifndef STEREO_PARSE_HPP
#define STEREO_PARSE_HPP

// Polynomial expressions over a declared variable pair.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/' | <juxtaposition>) unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' | '**') <nonnegative integer literal>
//   primary := number | variable | '(' expr ')'
//
// Numbers are integers, "p/q" written with '/', or finite decimals; the
// divisor of '/' must reduce to a nonzero constant. An identifier that is
// not a declared variable is split into a product of declared names when
// possible, so "xy" reads as x*y and "uv^2" as u*v^2. U+2212 is accepted
// as a minus sign.

#include "stereo/errors.hpp"
#include "stereo/poly.hpp"

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace stereo {

namespace detail {

struct Token {
    enum class Type { number, variable, plus, minus, star, slash, caret, lparen, rparen, end };
    Type type;
    std::size_t pos;
    std::string text; // number literal
    int var = -1;     // index into the variable pair
};

class Lexer {
public:
    Lexer(std::string_view src, const Variables& vars) : src_(src), vars_(vars) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        std::size_t i = 0;
        while (i < src_.size()) {
            unsigned char c = static_cast<unsigned char>(src_[i]);
            if (std::isspace(c)) {
                ++i;
                continue;
            }
            if (src_.compare(i, 3, "\xE2\x88\x92") == 0) {
                out.push_back({Token::Type::minus, i, {}});
                i += 3;
                continue;
            }
            if (std::isdigit(c) || (c == '.' && i + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i + 1])))) {
                std::size_t start = i;
                while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i])))
                    ++i;
                if (i < src_.size() && src_[i] == '.') {
                    ++i;
                    while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i])))
                        ++i;
                }
                out.push_back({Token::Type::number, start, std::string(src_.substr(start, i - start))});
                continue;
            }
            if (std::isalpha(c) || c == '_') {
                std::size_t start = i;
                while (i < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i])) || src_[i] == '_'))
                    ++i;
                split_identifier(src_.substr(start, i - start), start, out);
                continue;
            }
            switch (c) {
            case '+': out.push_back({Token::Type::plus, i, {}}); break;
            case '-': out.push_back({Token::Type::minus, i, {}}); break;
            case '/': out.push_back({Token::Type::slash, i, {}}); break;
            case '^': out.push_back({Token::Type::caret, i, {}}); break;
            case '(': out.push_back({Token::Type::lparen, i, {}}); break;
            case ')': out.push_back({Token::Type::rparen, i, {}}); break;
            case '*':
                if (i + 1 < src_.size() && src_[i + 1] == '*') {
                    out.push_back({Token::Type::caret, i, {}});
                    ++i;
                } else {
                    out.push_back({Token::Type::star, i, {}});
                }
                break;
            default:
                throw ParseError(ParseError::Kind::syntax, i, std::string("unexpected character '") + src_[i] + "'");
            }
            ++i;
        }
        out.push_back({Token::Type::end, src_.size(), {}});
        return out;
    }

private:
    // Longest-match segmentation of an identifier into declared variable names.
    void split_identifier(std::string_view ident, std::size_t pos, std::vector<Token>& out) const
    {
        std::vector<int> pieces;
        if (!segment(ident, pieces))
            throw ParseError(ParseError::Kind::unknown_variable, pos, "unknown variable '" + std::string(ident) + "'");
        std::size_t offset = pos;
        for (int v : pieces) {
            Token t{Token::Type::variable, offset, {}};
            t.var = v;
            out.push_back(t);
            offset += vars_[static_cast<std::size_t>(v)].size();
        }
    }

    bool segment(std::string_view rest, std::vector<int>& pieces) const
    {
        if (rest.empty())
            return true;
        int order[2] = {0, 1};
        if (vars_[1].size() > vars_[0].size())
            std::swap(order[0], order[1]);
        for (int v : order) {
            const std::string& name = vars_[static_cast<std::size_t>(v)];
            if (rest.substr(0, name.size()) == name) {
                pieces.push_back(v);
                if (segment(rest.substr(name.size()), pieces))
                    return true;
                pieces.pop_back();
            }
        }
        return false;
    }

    std::string_view src_;
    const Variables& vars_;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, const Variables& vars) : toks_(std::move(tokens)), vars_(vars) {}

    BiPoly run()
    {
        BiPoly p = expr();
        if (peek().type != Token::Type::end)
            throw ParseError(ParseError::Kind::syntax, peek().pos, "unexpected token");
        return p;
    }

private:
    using T = Token::Type;

    const Token& peek() const { return toks_[i_]; }
    const Token& next() { return toks_[i_++]; }

    BiPoly expr()
    {
        BiPoly acc = term();
        while (peek().type == T::plus || peek().type == T::minus) {
            bool minus = next().type == T::minus;
            BiPoly rhs = term();
            if (minus)
                acc -= rhs;
            else
                acc += rhs;
        }
        return acc;
    }

    BiPoly term()
    {
        BiPoly acc = unary();
        while (true) {
            T t = peek().type;
            if (t == T::star) {
                next();
                acc *= unary();
            } else if (t == T::slash) {
                std::size_t pos = next().pos;
                BiPoly d = unary();
                if (!d.is_constant() || d.is_zero())
                    throw ParseError(ParseError::Kind::syntax, pos, "divisor must be a nonzero constant");
                acc *= Rational(1 / d.constant_term());
            } else if (t == T::variable || t == T::lparen) {
                acc *= power();
            } else {
                return acc;
            }
        }
    }

    BiPoly unary()
    {
        if (peek().type == T::minus) {
            next();
            return -unary();
        }
        if (peek().type == T::plus) {
            next();
            return unary();
        }
        return power();
    }

    BiPoly power()
    {
        BiPoly base = primary();
        if (peek().type != T::caret)
            return base;
        next();
        const Token& e = peek();
        if (e.type == T::minus)
            throw ParseError(ParseError::Kind::negative_exponent, e.pos, "negative exponent");
        if (e.type == T::plus)
            next();
        const Token& lit = next();
        if (lit.type != T::number) {
            auto kind = (lit.type == T::variable || lit.type == T::lparen) ? ParseError::Kind::non_integer_exponent
                                                                             : ParseError::Kind::syntax;
            throw ParseError(kind, lit.pos, "exponent must be a nonnegative integer literal");
        }
        if (lit.text.find('.') != std::string::npos)
            throw ParseError(ParseError::Kind::non_integer_exponent, lit.pos, "exponent must be an integer");
        if (lit.text.size() > 6)
            throw ParseError(ParseError::Kind::syntax, lit.pos, "exponent too large");
        return pow(base, static_cast<unsigned>(std::stoul(lit.text)));
    }

    BiPoly primary()
    {
        const Token& t = next();
        switch (t.type) {
        case T::number:
            return BiPoly::constant(vars_, parse_rational(t.text));
        case T::variable:
            return BiPoly::variable(vars_, t.var);
        case T::lparen: {
            BiPoly inner = expr();
            if (peek().type != T::rparen)
                throw ParseError(ParseError::Kind::syntax, peek().pos, "expected ')'");
            next();
            return inner;
        }
        case T::end:
            throw ParseError(ParseError::Kind::syntax, t.pos, "unexpected end of expression");
        default:
            throw ParseError(ParseError::Kind::syntax, t.pos, "unexpected token");
        }
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
    const Variables& vars_;
};

inline bool is_identifier(const std::string& s)
{
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0])))
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

} // namespace detail

inline void validate_variables(const Variables& vars)
{
    for (const auto& v : vars)
        if (!detail::is_identifier(v))
            throw Error("invalid variable name '" + v + "'");
    if (vars[0] == vars[1])
        throw Error("variable names must be distinct");
}

inline BiPoly parse_polynomial(std::string_view text, const Variables& vars)
{
    validate_variables(vars);
    detail::Lexer lexer(text, vars);
    detail::Parser parser(lexer.run(), vars);
    return parser.run();
}

} // namespace stereo

#endif // STEREO_PARSE_HPP
