#include "aspfr/parser.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <utility>

namespace aspfr {

namespace {

std::string describePosition(SourcePosition pos) {
    std::ostringstream os;
    os << "line " << pos.line << ", column " << pos.column;
    return os.str();
}

} // namespace

SyntaxError::SyntaxError(SourcePosition pos, const std::string& expected, const std::string& found)
    : std::runtime_error("syntax error at " + describePosition(pos) + ": expected " + expected +
                         ", found " + found),
      pos_(pos) {}

ArityClash::ArityClash(SourcePosition pos, const std::string& predicate, std::size_t first,
                       std::size_t second)
    : std::runtime_error("arity clash at " + describePosition(pos) + ": predicate '" + predicate +
                         "' used with arity " + std::to_string(second) + " after arity " +
                         std::to_string(first)),
      predicate_(predicate) {}

namespace {

enum class TokenKind {
    symbol,     // lowercase/digit-leading identifier or quoted name
    variable,   // uppercase or underscore-leading identifier
    lparen,
    rparen,
    lbracket,
    rbracket,
    pipe,
    comma,
    dot,
    question,
    implies,    // ":-"
    end,
};

struct Token {
    TokenKind kind;
    std::string text;
    SourcePosition pos;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skipLayout();
        SourcePosition pos = pos_;
        if (eof()) {
            return {TokenKind::end, "", pos};
        }
        char c = peek();
        switch (c) {
        case '(': advance(); return {TokenKind::lparen, "(", pos};
        case ')': advance(); return {TokenKind::rparen, ")", pos};
        case '[': advance(); return {TokenKind::lbracket, "[", pos};
        case ']': advance(); return {TokenKind::rbracket, "]", pos};
        case '|': advance(); return {TokenKind::pipe, "|", pos};
        case ',': advance(); return {TokenKind::comma, ",", pos};
        case '.': advance(); return {TokenKind::dot, ".", pos};
        case '?': advance(); return {TokenKind::question, "?", pos};
        case ':':
            advance();
            if (!eof() && peek() == '-') {
                advance();
                return {TokenKind::implies, ":-", pos};
            }
            throw SyntaxError(pos, "':-'", "':'");
        case '\'':
            return quoted(pos);
        default:
            break;
        }
        if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
            return {TokenKind::variable, identifier(), pos};
        }
        if (std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c))) {
            return {TokenKind::symbol, identifier(), pos};
        }
        throw SyntaxError(pos, "a token", std::string("'") + c + "'");
    }

private:
    bool eof() const { return index_ >= text_.size(); }
    char peek() const { return text_[index_]; }

    void advance() {
        if (text_[index_] == '\n') {
            ++pos_.line;
            pos_.column = 1;
        } else {
            ++pos_.column;
        }
        ++index_;
    }

    void skipLayout() {
        while (!eof()) {
            char c = peek();
            if (c == '%') {
                while (!eof() && peek() != '\n') {
                    advance();
                }
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string identifier() {
        std::string out;
        while (!eof()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                out += c;
                advance();
            } else {
                break;
            }
        }
        return out;
    }

    Token quoted(SourcePosition pos) {
        advance(); // opening quote
        std::string out;
        while (!eof() && peek() != '\'') {
            out += peek();
            advance();
        }
        if (eof()) {
            throw SyntaxError(pos, "closing quote", "end of input");
        }
        advance(); // closing quote
        return {TokenKind::symbol, out, pos};
    }

    std::string_view text_;
    std::size_t index_ = 0;
    SourcePosition pos_;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { shift(); }

    Program program() {
        Program p;
        while (current_.kind != TokenKind::end) {
            p.rules.push_back(rule());
        }
        return p;
    }

    Query query() {
        Atom a = atom();
        expect(TokenKind::question, "'?'");
        expect(TokenKind::end, "end of input");
        Query q{std::move(a)};
        if (!q.atom.isGround()) {
            throw SyntaxError(start_, "a ground query atom", "an atom with variables");
        }
        return q;
    }

    Atom bareAtom() {
        Atom a = atom();
        if (current_.kind == TokenKind::question || current_.kind == TokenKind::dot) {
            shift();
        }
        expect(TokenKind::end, "end of input");
        return a;
    }

private:
    void shift() { current_ = lexer_.next(); }

    void expect(TokenKind kind, const std::string& what) {
        if (current_.kind != kind) {
            throw SyntaxError(current_.pos, what, found());
        }
        if (kind != TokenKind::end) {
            shift();
        }
    }

    std::string found() const {
        if (current_.kind == TokenKind::end) {
            return "end of input";
        }
        return "'" + current_.text + "'";
    }

    Rule rule() {
        Rule r;
        start_ = current_.pos;
        r.head.push_back(atom());
        // In head position a bare "v" symbol separates disjuncts.
        while (current_.kind == TokenKind::symbol && current_.text == "v") {
            shift();
            r.head.push_back(atom());
        }
        if (current_.kind == TokenKind::implies) {
            shift();
            r.body.push_back(literal());
            while (current_.kind == TokenKind::comma) {
                shift();
                r.body.push_back(literal());
            }
        }
        expect(TokenKind::dot, "'.'");
        return r;
    }

    Literal literal() {
        if (current_.kind == TokenKind::symbol && current_.text == "not") {
            shift();
            return Literal{atom(), true};
        }
        return Literal{atom(), false};
    }

    Atom atom() {
        if (current_.kind != TokenKind::symbol) {
            throw SyntaxError(current_.pos, "a predicate name", found());
        }
        Atom a;
        SourcePosition pos = current_.pos;
        a.predicate = current_.text;
        shift();
        if (current_.kind == TokenKind::lparen) {
            shift();
            if (current_.kind != TokenKind::rparen) {
                a.args.push_back(term());
                while (current_.kind == TokenKind::comma) {
                    shift();
                    a.args.push_back(term());
                }
            }
            expect(TokenKind::rparen, "')'");
        }
        checkArity(a, pos);
        return a;
    }

    Term term() {
        if (current_.kind == TokenKind::variable) {
            Term t = Term::var(current_.text);
            shift();
            return t;
        }
        if (current_.kind == TokenKind::lbracket) {
            return list();
        }
        if (current_.kind != TokenKind::symbol) {
            throw SyntaxError(current_.pos, "a term", found());
        }
        std::string functor = current_.text;
        shift();
        std::vector<Term> args;
        if (current_.kind == TokenKind::lparen) {
            shift();
            if (current_.kind != TokenKind::rparen) {
                args.push_back(term());
                while (current_.kind == TokenKind::comma) {
                    shift();
                    args.push_back(term());
                }
            }
            expect(TokenKind::rparen, "')'");
        }
        return Term::fun(std::move(functor), std::move(args));
    }

    // "[]" -> nil, "[a,b]" -> cons(a,cons(b,nil)), "[H|T]" -> cons(H,T).
    Term list() {
        shift(); // '['
        if (current_.kind == TokenKind::rbracket) {
            shift();
            return Term::fun("nil");
        }
        std::vector<Term> items;
        items.push_back(term());
        while (current_.kind == TokenKind::comma) {
            shift();
            items.push_back(term());
        }
        Term tail = Term::fun("nil");
        if (current_.kind == TokenKind::pipe) {
            shift();
            tail = term();
        }
        expect(TokenKind::rbracket, "']'");
        for (auto it = items.rbegin(); it != items.rend(); ++it) {
            tail = Term::fun("cons", {*it, std::move(tail)});
        }
        return tail;
    }

    void checkArity(const Atom& a, SourcePosition pos) {
        auto [it, inserted] = arities_.emplace(a.predicate, a.args.size());
        if (!inserted && it->second != a.args.size()) {
            throw ArityClash(pos, a.predicate, it->second, a.args.size());
        }
    }

    Lexer lexer_;
    Token current_{TokenKind::end, "", {}};
    SourcePosition start_;
    std::map<std::string, std::size_t> arities_;
};

} // namespace

Program parseProgram(std::string_view text) {
    Parser parser(text);
    return parser.program();
}

Query parseQuery(std::string_view text) {
    Parser parser(text);
    return parser.query();
}

Atom parseAtom(std::string_view text) {
    Parser parser(text);
    return parser.bareAtom();
}

} // namespace aspfr
