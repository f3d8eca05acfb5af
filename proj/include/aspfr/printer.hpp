#ifndef ASPFR_PRINTER_HPP
#define ASPFR_PRINTER_HPP

#include <string>

#include "aspfr/ast.hpp"

namespace aspfr {

// Inverse of the parser: cons/nil terms are re-sugared into list notation,
// and parse(render(x)) is structurally identical to x.
std::string render(const Term& t);
std::string render(const Atom& a);
std::string render(const Literal& l);
std::string render(const Rule& r);
std::string render(const Program& p);
std::string render(const Query& q);

} // namespace aspfr

#endif
