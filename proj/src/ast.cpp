#include "aspfr/ast.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <utility>

namespace aspfr {

Term Term::var(std::string name) {
    Term t;
    t.kind = Kind::variable;
    t.name = std::move(name);
    return t;
}

Term Term::fun(std::string functor, std::vector<Term> args) {
    Term t;
    t.kind = Kind::function;
    t.name = std::move(functor);
    t.args = std::move(args);
    return t;
}

bool Term::isGround() const {
    if (kind == Kind::variable) {
        return false;
    }
    return std::all_of(args.begin(), args.end(), [](const Term& a) { return a.isGround(); });
}

void Term::collectVariables(std::set<std::string>& out) const {
    if (kind == Kind::variable) {
        out.insert(name);
        return;
    }
    for (const Term& a : args) {
        a.collectVariables(out);
    }
}

int compare(const Term& a, const Term& b) {
    if (a.kind != b.kind) {
        return a.kind == Term::Kind::variable ? -1 : 1;
    }
    if (int c = a.name.compare(b.name)) {
        return c < 0 ? -1 : 1;
    }
    if (a.args.size() != b.args.size()) {
        return a.args.size() < b.args.size() ? -1 : 1;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (int c = compare(a.args[i], b.args[i])) {
            return c;
        }
    }
    return 0;
}

bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
bool operator!=(const Term& a, const Term& b) { return compare(a, b) != 0; }
bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

bool Atom::isGround() const {
    return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.isGround(); });
}

void Atom::collectVariables(std::set<std::string>& out) const {
    for (const Term& t : args) {
        t.collectVariables(out);
    }
}

int compare(const Atom& a, const Atom& b) {
    if (int c = a.predicate.compare(b.predicate)) {
        return c < 0 ? -1 : 1;
    }
    if (a.args.size() != b.args.size()) {
        return a.args.size() < b.args.size() ? -1 : 1;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (int c = compare(a.args[i], b.args[i])) {
            return c;
        }
    }
    return 0;
}

bool operator==(const Atom& a, const Atom& b) { return compare(a, b) == 0; }
bool operator!=(const Atom& a, const Atom& b) { return compare(a, b) != 0; }
bool operator<(const Atom& a, const Atom& b) { return compare(a, b) < 0; }

int compare(const Literal& a, const Literal& b) {
    if (a.negated != b.negated) {
        return a.negated ? 1 : -1;
    }
    return compare(a.atom, b.atom);
}

bool operator==(const Literal& a, const Literal& b) { return compare(a, b) == 0; }
bool operator!=(const Literal& a, const Literal& b) { return compare(a, b) != 0; }
bool operator<(const Literal& a, const Literal& b) { return compare(a, b) < 0; }

bool Rule::isFact() const {
    return body.empty() && head.size() == 1 && head.front().isGround();
}

bool Rule::isGround() const {
    for (const Atom& a : head) {
        if (!a.isGround()) {
            return false;
        }
    }
    for (const Literal& l : body) {
        if (!l.atom.isGround()) {
            return false;
        }
    }
    return true;
}

std::vector<Atom> Rule::positiveBody() const {
    std::vector<Atom> out;
    for (const Literal& l : body) {
        if (!l.negated) {
            out.push_back(l.atom);
        }
    }
    return out;
}

std::vector<Atom> Rule::negativeBody() const {
    std::vector<Atom> out;
    for (const Literal& l : body) {
        if (l.negated) {
            out.push_back(l.atom);
        }
    }
    return out;
}

std::vector<Atom> Rule::atoms() const {
    std::vector<Atom> out = head;
    for (const Literal& l : body) {
        out.push_back(l.atom);
    }
    return out;
}

std::set<std::string> Rule::variables() const {
    std::set<std::string> out;
    for (const Atom& a : head) {
        a.collectVariables(out);
    }
    for (const Literal& l : body) {
        l.atom.collectVariables(out);
    }
    return out;
}

int compare(const Rule& a, const Rule& b) {
    if (a.head.size() != b.head.size()) {
        return a.head.size() < b.head.size() ? -1 : 1;
    }
    if (a.body.size() != b.body.size()) {
        return a.body.size() < b.body.size() ? -1 : 1;
    }
    for (std::size_t i = 0; i < a.head.size(); ++i) {
        if (int c = compare(a.head[i], b.head[i])) {
            return c;
        }
    }
    for (std::size_t i = 0; i < a.body.size(); ++i) {
        if (int c = compare(a.body[i], b.body[i])) {
            return c;
        }
    }
    return 0;
}

bool operator==(const Rule& a, const Rule& b) { return compare(a, b) == 0; }
bool operator!=(const Rule& a, const Rule& b) { return compare(a, b) != 0; }
bool operator<(const Rule& a, const Rule& b) { return compare(a, b) < 0; }

std::vector<Rule> Program::facts() const {
    std::vector<Rule> out;
    for (const Rule& r : rules) {
        if (r.isFact()) {
            out.push_back(r);
        }
    }
    return out;
}

std::set<std::string> Program::predicates() const {
    std::set<std::string> out;
    for (const Rule& r : rules) {
        for (const Atom& a : r.atoms()) {
            out.insert(a.predicate);
        }
    }
    return out;
}

namespace {

void collectFunctors(const Term& t, std::set<std::pair<std::string, std::size_t>>& out) {
    if (t.kind == Term::Kind::function) {
        out.emplace(t.name, t.args.size());
    }
    for (const Term& a : t.args) {
        collectFunctors(a, out);
    }
}

} // namespace

std::set<std::pair<std::string, std::size_t>> Program::functors() const {
    std::set<std::pair<std::string, std::size_t>> out;
    for (const Rule& r : rules) {
        for (const Atom& a : r.atoms()) {
            for (const Term& t : a.args) {
                collectFunctors(t, out);
            }
        }
    }
    return out;
}

const Term* Substitution::find(const std::string& variable) const {
    auto it = map_.find(variable);
    return it == map_.end() ? nullptr : &it->second;
}

void Substitution::bind(std::string variable, Term value) {
    map_.insert_or_assign(std::move(variable), std::move(value));
}

Term Substitution::apply(const Term& t) const {
    if (t.kind == Term::Kind::variable) {
        const Term* bound = find(t.name);
        return bound ? *bound : t;
    }
    Term out = Term::fun(t.name);
    out.args.reserve(t.args.size());
    for (const Term& a : t.args) {
        out.args.push_back(apply(a));
    }
    return out;
}

Atom Substitution::apply(const Atom& a) const {
    Atom out;
    out.predicate = a.predicate;
    out.args.reserve(a.args.size());
    for (const Term& t : a.args) {
        out.args.push_back(apply(t));
    }
    return out;
}

Literal Substitution::apply(const Literal& l) const {
    return Literal{apply(l.atom), l.negated};
}

Rule Substitution::apply(const Rule& r) const {
    Rule out;
    out.head.reserve(r.head.size());
    for (const Atom& a : r.head) {
        out.head.push_back(apply(a));
    }
    out.body.reserve(r.body.size());
    for (const Literal& l : r.body) {
        out.body.push_back(apply(l));
    }
    return out;
}

bool operator==(const Substitution& a, const Substitution& b) {
    return a.bindings() == b.bindings();
}

namespace {

// Follow variable bindings to the representative term.
const Term& walk(const Term& t, const std::map<std::string, Term>& bindings) {
    const Term* cur = &t;
    while (cur->kind == Term::Kind::variable) {
        auto it = bindings.find(cur->name);
        if (it == bindings.end()) {
            break;
        }
        cur = &it->second;
    }
    return *cur;
}

bool occurs(const std::string& variable, const Term& t, const std::map<std::string, Term>& bindings) {
    const Term& w = walk(t, bindings);
    if (w.kind == Term::Kind::variable) {
        return w.name == variable;
    }
    for (const Term& a : w.args) {
        if (occurs(variable, a, bindings)) {
            return true;
        }
    }
    return false;
}

bool unifyTerms(const Term& a, const Term& b, std::map<std::string, Term>& bindings) {
    const Term wa = walk(a, bindings);
    const Term wb = walk(b, bindings);
    if (wa.kind == Term::Kind::variable) {
        if (wb.kind == Term::Kind::variable && wb.name == wa.name) {
            return true;
        }
        if (occurs(wa.name, wb, bindings)) {
            return false;
        }
        bindings.emplace(wa.name, wb);
        return true;
    }
    if (wb.kind == Term::Kind::variable) {
        if (occurs(wb.name, wa, bindings)) {
            return false;
        }
        bindings.emplace(wb.name, wa);
        return true;
    }
    if (wa.name != wb.name || wa.args.size() != wb.args.size()) {
        return false;
    }
    for (std::size_t i = 0; i < wa.args.size(); ++i) {
        if (!unifyTerms(wa.args[i], wb.args[i], bindings)) {
            return false;
        }
    }
    return true;
}

// Deep-resolve a term through the binding map. Terminates because the
// occurs-check keeps the binding relation acyclic.
Term resolve(const Term& t, const std::map<std::string, Term>& bindings) {
    const Term& w = walk(t, bindings);
    if (w.kind == Term::Kind::variable) {
        return w;
    }
    Term out = Term::fun(w.name);
    out.args.reserve(w.args.size());
    for (const Term& a : w.args) {
        out.args.push_back(resolve(a, bindings));
    }
    return out;
}

Substitution finish(const std::map<std::string, Term>& bindings) {
    Substitution s;
    for (const auto& [variable, value] : bindings) {
        s.bind(variable, resolve(value, bindings));
    }
    return s;
}

} // namespace

std::optional<Substitution> unify(const Term& a, const Term& b) {
    std::map<std::string, Term> bindings;
    if (!unifyTerms(a, b, bindings)) {
        return std::nullopt;
    }
    return finish(bindings);
}

std::optional<Substitution> unify(const Atom& a, const Atom& b) {
    if (a.predicate != b.predicate || a.args.size() != b.args.size()) {
        return std::nullopt;
    }
    std::map<std::string, Term> bindings;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!unifyTerms(a.args[i], b.args[i], bindings)) {
            return std::nullopt;
        }
    }
    return finish(bindings);
}

namespace {

std::size_t combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

} // namespace

std::size_t hashValue(const Term& t) {
    std::size_t h = std::hash<std::string>{}(t.name);
    h = combine(h, t.kind == Term::Kind::variable ? 1u : 2u);
    for (const Term& a : t.args) {
        h = combine(h, hashValue(a));
    }
    return h;
}

std::size_t hashValue(const Atom& a) {
    std::size_t h = std::hash<std::string>{}(a.predicate);
    for (const Term& t : a.args) {
        h = combine(h, hashValue(t));
    }
    return h;
}

std::size_t hashValue(const Rule& r) {
    std::size_t h = 0x5bd1e995;
    for (const Atom& a : r.head) {
        h = combine(h, hashValue(a));
    }
    for (const Literal& l : r.body) {
        h = combine(h, combine(hashValue(l.atom), l.negated ? 7u : 3u));
    }
    return h;
}

} // namespace aspfr
