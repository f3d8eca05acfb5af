#include "aspfr/magic.hpp"

#include <deque>
#include <set>

#include "aspfr/analysis.hpp"

namespace aspfr {

bool isMagicPredicate(const std::string& predicate) {
    return predicate.rfind(kMagicPrefix, 0) == 0;
}

void rejectReservedPrefix(const Program& p) {
    for (const std::string& pred : p.predicates()) {
        if (isMagicPredicate(pred)) {
            throw ReservedPrefixError(pred);
        }
    }
}

Atom magicAtomOf(const Atom& a) {
    if (isMagicPredicate(a.predicate)) {
        throw ReservedPrefixError(a.predicate);
    }
    Atom out = a;
    out.predicate = kMagicPrefix + a.predicate;
    return out;
}

namespace {

void collectQueryFunctors(const Term& t, std::set<std::pair<std::string, std::size_t>>& out) {
    if (t.kind == Term::Kind::function) {
        out.emplace(t.name, t.args.size());
    }
    for (const Term& a : t.args) {
        collectQueryFunctors(a, out);
    }
}

} // namespace

std::pair<Program, Query> seedQuery(const Program& p, const Query& q) {
    std::set<std::pair<std::string, std::size_t>> queryFunctors;
    for (const Term& t : q.atom.args) {
        collectQueryFunctors(t, queryFunctors);
    }
    auto known = p.functors();
    bool missing = false;
    for (const auto& f : queryFunctors) {
        if (!known.count(f)) {
            missing = true;
            break;
        }
    }
    if (!missing) {
        return {p, q};
    }
    std::set<std::string> predicates = p.predicates();
    std::string fresh = "aux";
    for (int i = 1; predicates.count(fresh) || fresh == q.atom.predicate; ++i) {
        fresh = "aux" + std::to_string(i);
    }
    Program extended = p;
    Rule fact;
    fact.head.push_back(Atom{fresh, q.atom.args});
    extended.rules.push_back(std::move(fact));
    return {extended, q};
}

RewrittenProgram dmsRewrite(const Program& p, const Query& q) {
    rejectReservedPrefix(p);
    EdbIdbPartition part = classifyEdbIdb(p);

    RewrittenProgram out;
    out.query = q;

    Rule seed;
    seed.head.push_back(magicAtomOf(q.atom));
    out.magicRules.push_back(std::move(seed));

    std::deque<std::string> pending{q.atom.predicate};
    std::set<std::string> done;
    std::set<Rule> emittedMagic, emittedModified;

    while (!pending.empty()) {
        std::string current = pending.front();
        pending.pop_front();
        if (!done.insert(current).second) {
            continue;
        }
        for (const Rule& r : part.idbRules) {
            for (const Atom& headOccurrence : r.head) {
                if (headOccurrence.predicate != current) {
                    continue;
                }
                // Modified rule: one magic guard per head atom. Identical
                // for every head occurrence of the same rule, so emit once.
                Rule modified;
                modified.head = r.head;
                for (const Atom& h : r.head) {
                    modified.body.push_back(Literal{magicAtomOf(h), false});
                }
                modified.body.insert(modified.body.end(), r.body.begin(), r.body.end());
                if (emittedModified.insert(modified).second) {
                    out.modifiedRules.push_back(modified);
                }
                // One magic rule per other IDB atom occurrence of the rule.
                Atom magicHead = magicAtomOf(headOccurrence);
                for (const Atom& a : r.atoms()) {
                    if (a == headOccurrence || !part.idbPredicates.count(a.predicate)) {
                        continue;
                    }
                    Rule magicRule;
                    magicRule.head.push_back(magicAtomOf(a));
                    magicRule.body.push_back(Literal{magicHead, false});
                    if (emittedMagic.insert(magicRule).second) {
                        out.magicRules.push_back(std::move(magicRule));
                    }
                    if (!done.count(a.predicate)) {
                        pending.push_back(a.predicate);
                    }
                }
            }
        }
    }

    out.edb = part.edbRules;
    return out;
}

Program RewrittenProgram::combined() const {
    Program p;
    p.rules = magicRules;
    p.rules.insert(p.rules.end(), modifiedRules.begin(), modifiedRules.end());
    p.rules.insert(p.rules.end(), edb.begin(), edb.end());
    return p;
}

} // namespace aspfr
