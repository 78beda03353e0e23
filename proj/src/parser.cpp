#include "lgcalc/parser.hpp"

#include <cctype>
#include <sstream>

namespace lg {

ParseError::ParseError(int line, int column, const std::string& message)
    : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " +
            message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
    enum Kind { Num, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End } kind;
    std::string text;
    int line, col;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) step();
        tok_.line = line_;
        tok_.col = col_;
        tok_.text.clear();
        if (pos_ >= src_.size()) {
            tok_.kind = Token::End;
            return;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            tok_.kind = Token::Num;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                tok_.text += src_[pos_];
                step();
            }
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            tok_.kind = Token::Ident;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                tok_.text += src_[pos_];
                step();
            }
            return;
        }
        switch (c) {
            case '+': tok_.kind = Token::Plus; break;
            case '-': tok_.kind = Token::Minus; break;
            case '*': tok_.kind = Token::Star; break;
            case '^': tok_.kind = Token::Caret; break;
            case '/': tok_.kind = Token::Slash; break;
            case '(': tok_.kind = Token::LParen; break;
            case ')': tok_.kind = Token::RParen; break;
            default:
                throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
        }
        tok_.text = c;
        step();
    }

    void step() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_{Token::End, "", 1, 1};
};

class Parser {
public:
    Parser(const std::string& src, RingPtr ring) : lex_(src), ring_(std::move(ring)) {}

    Poly run() {
        Poly p = expr();
        const Token& t = lex_.peek();
        if (t.kind != Token::End)
            throw ParseError(t.line, t.col, "unexpected trailing input '" + t.text + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const Token& t, const std::string& msg) {
        throw ParseError(t.line, t.col, msg);
    }

    Poly expr() {
        Poly p = term();
        while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
            Token op = lex_.take();
            Poly q = term();
            p = (op.kind == Token::Plus) ? p + q : p - q;
        }
        return p;
    }

    Poly term() {
        Poly p = factor();
        while (lex_.peek().kind == Token::Star) {
            lex_.take();
            p = p * factor();
        }
        return p;
    }

    Poly factor() {
        // Unary minus binds looser than '^': -x^2 reads as -(x^2).
        if (lex_.peek().kind == Token::Minus) {
            lex_.take();
            return -factor();
        }
        Poly p = atom();
        if (lex_.peek().kind == Token::Caret) {
            lex_.take();
            Token t = lex_.peek();
            if (t.kind != Token::Num) fail(t, "expected natural-number exponent after '^'");
            lex_.take();
            unsigned long e = 0;
            try {
                e = std::stoul(t.text);
            } catch (const std::exception&) {
                fail(t, "exponent out of range");
            }
            if (e > 4096) fail(t, "exponent out of range");
            p = p.pow(static_cast<unsigned>(e));
        }
        return p;
    }

    Poly atom() {
        Token t = lex_.peek();
        switch (t.kind) {
            case Token::Num: {
                lex_.take();
                std::string text = t.text;
                if (lex_.peek().kind == Token::Slash) {
                    lex_.take();
                    Token d = lex_.peek();
                    if (d.kind != Token::Num)
                        fail(d, "expected positive integer denominator after '/'");
                    lex_.take();
                    bool all_zero = d.text.find_first_not_of('0') == std::string::npos;
                    if (all_zero) fail(d, "zero denominator");
                    text += "/" + d.text;
                }
                return Poly::constant(ring_, Rational::from_string(text));
            }
            case Token::Ident: {
                lex_.take();
                try {
                    return Poly::variable(ring_, t.text);
                } catch (const Error&) {
                    fail(t, "unknown variable '" + t.text + "'");
                }
            }
            case Token::LParen: {
                lex_.take();
                Poly p = expr();
                Token r = lex_.peek();
                if (r.kind != Token::RParen) fail(r, "expected ')'");
                lex_.take();
                return p;
            }
            default:
                fail(t, t.kind == Token::End ? "unexpected end of input"
                                             : "unexpected token '" + t.text + "'");
        }
    }

    Lexer lex_;
    RingPtr ring_;
};

}  // namespace

Poly parse_poly(const std::string& text, const RingPtr& ring) {
    return Parser(text, ring).run();
}

}  // namespace lg
