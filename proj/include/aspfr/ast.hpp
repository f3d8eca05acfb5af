#ifndef ASPFR_AST_HPP
#define ASPFR_AST_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace aspfr {

// A term is either a variable or a functional term. Arity-0 functional
// terms are constants. The same functor symbol at different arities
// denotes distinct functors.
struct Term {
    enum class Kind { variable, function };

    Kind kind = Kind::function;
    std::string name;
    std::vector<Term> args;

    static Term var(std::string name);
    static Term fun(std::string functor, std::vector<Term> args = {});

    bool isVariable() const { return kind == Kind::variable; }
    bool isConstant() const { return kind == Kind::function && args.empty(); }
    bool isGround() const;
    void collectVariables(std::set<std::string>& out) const;
};

int compare(const Term& a, const Term& b);
bool operator==(const Term& a, const Term& b);
bool operator!=(const Term& a, const Term& b);
bool operator<(const Term& a, const Term& b);

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    std::size_t arity() const { return args.size(); }
    bool isGround() const;
    void collectVariables(std::set<std::string>& out) const;
};

int compare(const Atom& a, const Atom& b);
bool operator==(const Atom& a, const Atom& b);
bool operator!=(const Atom& a, const Atom& b);
bool operator<(const Atom& a, const Atom& b);

struct Literal {
    Atom atom;
    bool negated = false;
};

int compare(const Literal& a, const Literal& b);
bool operator==(const Literal& a, const Literal& b);
bool operator!=(const Literal& a, const Literal& b);
bool operator<(const Literal& a, const Literal& b);

// head is a non-empty disjunction of atoms; body a conjunction of literals.
struct Rule {
    std::vector<Atom> head;
    std::vector<Literal> body;

    // A fact has an empty body, a single head atom, and a ground head.
    bool isFact() const;
    bool isGround() const;
    std::vector<Atom> positiveBody() const;
    std::vector<Atom> negativeBody() const;
    // H(r) ∪ B+(r) ∪ B-(r), in that order, duplicates kept.
    std::vector<Atom> atoms() const;
    std::set<std::string> variables() const;
};

int compare(const Rule& a, const Rule& b);
bool operator==(const Rule& a, const Rule& b);
bool operator!=(const Rule& a, const Rule& b);
bool operator<(const Rule& a, const Rule& b);

struct Program {
    std::vector<Rule> rules;

    std::vector<Rule> facts() const;
    std::set<std::string> predicates() const;
    // All functor/arity pairs occurring anywhere in the program.
    std::set<std::pair<std::string, std::size_t>> functors() const;
};

// A query is a single ground atom.
struct Query {
    Atom atom;
};

// Idempotent variable binding: bound values never mention domain variables.
class Substitution {
public:
    const Term* find(const std::string& variable) const;
    void bind(std::string variable, Term value);
    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }

    Term apply(const Term& t) const;
    Atom apply(const Atom& a) const;
    Literal apply(const Literal& l) const;
    Rule apply(const Rule& r) const;

    const std::map<std::string, Term>& bindings() const { return map_; }

private:
    std::map<std::string, Term> map_;
};

bool operator==(const Substitution& a, const Substitution& b);

// Most general unifier with occurs-check, or nullopt.
std::optional<Substitution> unify(const Atom& a, const Atom& b);
std::optional<Substitution> unify(const Term& a, const Term& b);

std::size_t hashValue(const Term& t);
std::size_t hashValue(const Atom& a);
std::size_t hashValue(const Rule& r);

struct AtomHash {
    std::size_t operator()(const Atom& a) const { return hashValue(a); }
};
struct RuleHash {
    std::size_t operator()(const Rule& r) const { return hashValue(r); }
};

} // namespace aspfr

#endif
