// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
#include <cctype>

#include "wrshapes/analyzer.hpp"

namespace wrshapes::lang {

namespace {

struct Token {
    enum class Kind { Ident, Int, Assign, Semi, LParen, RParen, LBrace, RBrace, Le, Ge, Plus,
                      Minus, Question, End };
    Kind kind;
    std::string text;
    long value = 0;
    SourcePos pos;
};

class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

  private:
    void advance() {
        skip_ws_and_comments();
        current_.pos = pos_;
        if (at_end()) {
            current_.kind = Token::Kind::End;
            current_.text.clear();
            return;
        }
        char c = text_[i_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string ident;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[i_])) ||
                                 text_[i_] == '_')) {
                ident += get();
            }
            current_.kind = Token::Kind::Ident;
            current_.text = std::move(ident);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long v = 0;
            std::string digits;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[i_]))) {
                digits += get();
            }
            try {
                v = std::stol(digits);
            } catch (const std::exception&) {
                throw ParseError(current_.pos, "integer literal out of range");
            }
            current_.kind = Token::Kind::Int;
            current_.value = v;
            current_.text = std::move(digits);
            return;
        }
        switch (c) {
            case ':':
                get();
                if (at_end() || text_[i_] != '=') {
                    throw ParseError(current_.pos, "expected ':='");
                }
                get();
                current_.kind = Token::Kind::Assign;
                return;
            case ';': get(); current_.kind = Token::Kind::Semi; return;
            case '(': get(); current_.kind = Token::Kind::LParen; return;
            case ')': get(); current_.kind = Token::Kind::RParen; return;
            case '{': get(); current_.kind = Token::Kind::LBrace; return;
            case '}': get(); current_.kind = Token::Kind::RBrace; return;
            case '+': get(); current_.kind = Token::Kind::Plus; return;
            case '-': get(); current_.kind = Token::Kind::Minus; return;
            case '?': get(); current_.kind = Token::Kind::Question; return;
            case '<':
                get();
                if (at_end() || text_[i_] != '=') {
                    throw ParseError(current_.pos, "expected '<='");
                }
                get();
                current_.kind = Token::Kind::Le;
                return;
            case '>':
                get();
                if (at_end() || text_[i_] != '=') {
                    throw ParseError(current_.pos, "expected '>='");
                }
                get();
                current_.kind = Token::Kind::Ge;
                return;
            default:
                throw ParseError(current_.pos, std::string("unexpected character '") + c + "'");
        }
    }

    void skip_ws_and_comments() {
        for (;;) {
            while (!at_end() && std::isspace(static_cast<unsigned char>(text_[i_]))) {
                get();
            }
            if (!at_end() && text_[i_] == '/' && i_ + 1 < text_.size() && text_[i_ + 1] == '/') {
                while (!at_end() && text_[i_] != '\n') {
                    get();
                }
                continue;
            }
            return;
        }
    }

    char get() {
        char c = text_[i_++];
        if (c == '\n') {
            ++pos_.line;
            pos_.col = 1;
        } else {
            ++pos_.col;
        }
        return c;
    }

    bool at_end() const { return i_ >= text_.size(); }

    std::string_view text_;
    std::size_t i_ = 0;
    SourcePos pos_{1, 1};
    Token current_;
};

class Parser {
  public:
    explicit Parser(std::string_view text) : lex_(text) {}

    Program parse() {
        Program p;
        while (lex_.peek().kind != Token::Kind::End) {
            p.stmts.push_back(statement());
        }
        p.vars = std::move(vars_);
        return p;
    }

  private:
    Token expect(Token::Kind kind, const char* what) {
        if (lex_.peek().kind != kind) {
            throw ParseError(lex_.peek().pos, std::string("expected ") + what);
        }
        return lex_.take();
    }

    int var_id(const std::string& name) {
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i] == name) {
                return static_cast<int>(i);
            }
        }
        vars_.push_back(name);
        return static_cast<int>(vars_.size() - 1);
    }

    long signed_int() {
        bool neg = false;
        if (lex_.peek().kind == Token::Kind::Minus) {
            lex_.take();
            neg = true;
        }
        Token t = expect(Token::Kind::Int, "integer");
        return neg ? -t.value : t.value;
    }

    Stmt statement() {
        Token t = lex_.peek();
        if (t.kind == Token::Kind::Ident && t.text == "if") {
            return if_stmt();
        }
        if (t.kind == Token::Kind::Ident && t.text == "while") {
            return while_stmt();
        }
        if (t.kind == Token::Kind::Ident && t.text == "assume") {
            return assume_stmt();
        }
        if (t.kind == Token::Kind::Ident) {
            return assign_stmt();
        }
        throw ParseError(t.pos, "expected statement");
    }

    Stmt assign_stmt() {
        Token name = lex_.take();
        SourcePos pos = name.pos;
        expect(Token::Kind::Assign, "':='");
        int var = var_id(name.text);
        if (lex_.peek().kind == Token::Kind::Question) {
            lex_.take();
            expect(Token::Kind::Semi, "';'");
            return Stmt{Havoc{var}, pos};
        }
        Assign a;
        a.var = var;
        if (lex_.peek().kind == Token::Kind::Minus || lex_.peek().kind == Token::Kind::Int) {
            bool neg = false;
            if (lex_.peek().kind == Token::Kind::Minus) {
                lex_.take();
                neg = true;
            }
            if (lex_.peek().kind == Token::Kind::Int) {
                Token v = lex_.take();
                a.add = neg ? -v.value : v.value;
                expect(Token::Kind::Semi, "';'");
                return Stmt{a, pos};
            }
            // "-" followed by an identifier: negated source variable
            Token src = expect(Token::Kind::Ident, "identifier or integer");
            a.src = var_id(src.text);
            a.sign = -1;
        } else {
            Token src = expect(Token::Kind::Ident, "identifier or integer");
            a.src = var_id(src.text);
            a.sign = 1;
        }
        if (lex_.peek().kind == Token::Kind::Plus) {
            lex_.take();
            Token v = expect(Token::Kind::Int, "integer");
            a.add = v.value;
        } else if (lex_.peek().kind == Token::Kind::Minus) {
            lex_.take();
            Token v = expect(Token::Kind::Int, "integer");
            a.add = -v.value;
        }
        expect(Token::Kind::Semi, "';'");
        return Stmt{a, pos};
    }

    Stmt assume_stmt() {
        Token kw = lex_.take();
        expect(Token::Kind::LParen, "'('");
        Cond c = condition();
        expect(Token::Kind::RParen, "')'");
        expect(Token::Kind::Semi, "';'");
        return Stmt{Assume{c}, kw.pos};
    }

    Stmt if_stmt() {
        Token kw = lex_.take();
        expect(Token::Kind::LParen, "'('");
        Cond c = condition();
        expect(Token::Kind::RParen, "')'");
        If node;
        node.cond = c;
        node.then_body = block();
        if (lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == "else") {
            lex_.take();
            node.else_body = block();
        }
        return Stmt{std::move(node), kw.pos};
    }

    Stmt while_stmt() {
        Token kw = lex_.take();
        expect(Token::Kind::LParen, "'('");
        Cond c = condition();
        expect(Token::Kind::RParen, "')'");
        While node;
        node.cond = c;
        node.body = block();
        return Stmt{std::move(node), kw.pos};
    }

    std::vector<Stmt> block() {
        expect(Token::Kind::LBrace, "'{'");
        std::vector<Stmt> body;
        while (lex_.peek().kind != Token::Kind::RBrace) {
            if (lex_.peek().kind == Token::Kind::End) {
                throw ParseError(lex_.peek().pos, "unterminated block");
            }
            body.push_back(statement());
        }
        lex_.take();
        return body;
    }

    // cond := lin "<=" INT | ID ">=" INT | "true" | "?"
    // lin  := ["-"] ID [("+"|"-") ID]
    Cond condition() {
        Cond c;
        Token t = lex_.peek();
        if (t.kind == Token::Kind::Question) {
            lex_.take();
            c.kind = Cond::Kind::Nondet;
            return c;
        }
        if (t.kind == Token::Kind::Ident && t.text == "true") {
            lex_.take();
            c.kind = Cond::Kind::True;
            return c;
        }
        c.kind = Cond::Kind::Lin;
        int a = 1;
        if (t.kind == Token::Kind::Minus) {
            lex_.take();
            a = -1;
        }
        Token x = expect(Token::Kind::Ident, "identifier");
        c.a = a;
        c.x = var_id(x.text);
        if (lex_.peek().kind == Token::Kind::Plus || lex_.peek().kind == Token::Kind::Minus) {
            int b = lex_.take().kind == Token::Kind::Plus ? 1 : -1;
            Token y = expect(Token::Kind::Ident, "identifier");
            c.b = b;
            c.y = var_id(y.text);
        }
        if (lex_.peek().kind == Token::Kind::Ge) {
            if (c.b != 0 || c.a != 1) {
                throw ParseError(lex_.peek().pos, "'>=' applies to a single variable");
            }
            lex_.take();
            c.c = -signed_int();
            c.a = -1;  // x >= k  ==>  -x <= -k
            return c;
        }
        expect(Token::Kind::Le, "'<=' or '>='");
        c.c = signed_int();
        return c;
    }

    Lexer lex_;
    std::vector<std::string> vars_;
};

}  // namespace

Program parse_program(std::string_view text) {
    return Parser(text).parse();
}

}  // namespace wrshapes::lang
