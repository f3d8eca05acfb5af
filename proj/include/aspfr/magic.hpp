#ifndef ASPFR_MAGIC_HPP
#define ASPFR_MAGIC_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aspfr/ast.hpp"

namespace aspfr {

inline constexpr const char* kMagicPrefix = "magic_";

bool isMagicPredicate(const std::string& predicate);

class ReservedPrefixError : public std::runtime_error {
public:
    explicit ReservedPrefixError(const std::string& predicate)
        : std::runtime_error("predicate '" + predicate + "' uses the reserved prefix 'magic_'") {}
};

// Throws ReservedPrefixError if any predicate of p starts with "magic_".
void rejectReservedPrefix(const Program& p);

// Same predicate arguments under the "magic_"-prefixed predicate.
Atom magicAtomOf(const Atom& a);

// If the query mentions a functor absent from the program, extend the
// program with a fact over a fresh predicate carrying the query arguments
// so the universe covers the query terms.
std::pair<Program, Query> seedQuery(const Program& p, const Query& q);

struct RewrittenProgram {
    std::vector<Rule> magicRules;    // seed fact first, then emission order
    std::vector<Rule> modifiedRules; // emission order
    std::vector<Rule> edb;
    Query query;

    // magicRules ∪ modifiedRules ∪ EDB(P), in the declared output order.
    Program combined() const;
};

// The magic-set rewriting for ground queries: a seed fact, one magic rule
// per IDB atom occurrence reached from the query predicate, and modified
// rules guarded by the magic versions of their head atoms.
RewrittenProgram dmsRewrite(const Program& p, const Query& q);

} // namespace aspfr

#endif
