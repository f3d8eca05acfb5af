#ifndef ASPFR_PARSER_HPP
#define ASPFR_PARSER_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "aspfr/ast.hpp"

namespace aspfr {

struct SourcePosition {
    int line = 1;
    int column = 1;
};

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(SourcePosition pos, const std::string& expected, const std::string& found);
    SourcePosition position() const { return pos_; }

private:
    SourcePosition pos_;
};

class ArityClash : public std::runtime_error {
public:
    ArityClash(SourcePosition pos, const std::string& predicate, std::size_t first, std::size_t second);
    const std::string& predicate() const { return predicate_; }

private:
    std::string predicate_;
};

// Grammar: "%" line comments; rules "h1 v h2 :- b1, not b2."; queries
// "atom?". List sugar [..] desugars to cons/nil during parsing.
Program parseProgram(std::string_view text);
Query parseQuery(std::string_view text);
Atom parseAtom(std::string_view text);

} // namespace aspfr

#endif
