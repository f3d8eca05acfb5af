#ifndef ASPFR_TEST_HELPERS_HPP
#define ASPFR_TEST_HELPERS_HPP

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "aspfr/analysis.hpp"
#include "aspfr/ast.hpp"
#include "aspfr/grounder.hpp"
#include "aspfr/magic.hpp"
#include "aspfr/parser.hpp"
#include "aspfr/printer.hpp"
#include "aspfr/solver.hpp"

namespace aspfr::testing {

inline Program P(const std::string& text) {
    return parseProgram(text);
}

inline Query Q(const std::string& text) {
    return parseQuery(text);
}

inline Atom A(const std::string& text) {
    return parseAtom(text);
}

inline GroundProgram G(const std::string& text) {
    Program p = parseProgram(text);
    GroundProgram g;
    g.rules = p.rules;
    for (const Rule& r : g.rules) {
        g.derivedAtoms.insert(r.head.begin(), r.head.end());
    }
    return g;
}

inline Interpretation I(const std::vector<std::string>& atoms) {
    Interpretation out;
    for (const std::string& a : atoms) {
        out.insert(A(a));
    }
    return out;
}

// A corpus instance: a stratified, fr-safe program whose ground query has
// finitely many relevant atoms by construction (body argument terms are
// bare variables or constants, so top-down propagation only shrinks terms).
struct CorpusInstance {
    std::string name;
    Program program;
    Query query;
};

inline std::vector<CorpusInstance> handwrittenCorpus() {
    std::vector<CorpusInstance> out;
    auto add = [&](const std::string& name, const std::string& prog, const std::string& query) {
        out.push_back({name, P(prog), Q(query)});
    };
    add("less-than",
        "lessThan(X,s(X)).\n"
        "lessThan(X,s(Y)) :- lessThan(X,Y).\n"
        "greaterThan(s(X),Y) :- not lessThan(X,Y).\n",
        "greaterThan(s(s(0)),0)?");
    add("less-than-negative",
        "lessThan(X,s(X)).\n"
        "lessThan(X,s(Y)) :- lessThan(X,Y).\n"
        "greaterThan(s(X),Y) :- not lessThan(X,Y).\n",
        "greaterThan(0,s(0))?");
    add("edb-only", "e(a). e(b).\n", "e(a)?");
    add("edb-miss", "e(a). e(b).\n", "e(c)?");
    add("positive-chain",
        "p(X) :- q(X). q(X) :- r(X). r(a). r(b).\n",
        "p(a)?");
    add("shrinking-functor",
        "num(0). num(s(X)) :- num(X).\n"
        "even(0). even(s(s(X))) :- even(X).\n",
        "even(s(s(s(s(0)))))?");
    add("shrinking-functor-odd",
        "num(0). num(s(X)) :- num(X).\n"
        "even(0). even(s(s(X))) :- even(X).\n",
        "even(s(s(s(0))))?");
    add("disjunctive-choice",
        "a(X) v b(X) :- c(X). c(0). c(1).\n",
        "a(0)?");
    add("disjunctive-forced",
        "a(X) v b(X) :- c(X). b(X) :- a(X). a(X) :- b(X). c(0).\n",
        "a(0)?");
    add("negation-strata",
        "holds(X) :- item(X), not blocked(X).\n"
        "blocked(X) :- bad(X).\n"
        "item(i1). item(i2). bad(i2).\n",
        "holds(i1)?");
    add("negation-strata-blocked",
        "holds(X) :- item(X), not blocked(X).\n"
        "blocked(X) :- bad(X).\n"
        "item(i1). item(i2). bad(i2).\n",
        "holds(i2)?");
    add("list-member",
        "member(X,cons(X,T)).\n"
        "member(X,cons(H,T)) :- member(X,T).\n",
        "member(b,[a,b,c])?");
    add("list-member-miss",
        "member(X,cons(X,T)).\n"
        "member(X,cons(H,T)) :- member(X,T).\n",
        "member(d,[a,b,c])?");
    add("double-negation",
        "p(X) :- d(X), not q(X).\n"
        "q(X) :- d(X), not r(X).\n"
        "r(X) :- e(X).\n"
        "d(0). d(1). e(0).\n",
        "p(0)?");
    add("head-disjunction-negation",
        "win(X) v lose(X) :- pos(X).\n"
        "draw(X) :- pos(X), not win(X), not lose(X).\n"
        "pos(0).\n",
        "draw(0)?");
    return out;
}

// Random corpus generator. Layered predicates keep the program stratified;
// every rule variable occurs in every head atom (fr-safety); body argument
// terms are variables or constants so relevance stays finite.
inline CorpusInstance randomCorpusInstance(std::mt19937& rng, int index) {
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };

    const std::vector<std::string> constants = {"c0", "c1", "c2"};
    int edbCount = 1 + pick(2);
    int idbCount = 2 + pick(3); // total predicates ≤ 6
    std::vector<std::string> preds;
    for (int i = 0; i < edbCount; ++i) {
        preds.push_back("e" + std::to_string(i));
    }
    for (int i = 0; i < idbCount; ++i) {
        preds.push_back("p" + std::to_string(i));
    }

    Program prog;
    for (int i = 0; i < edbCount; ++i) {
        int facts = 1 + pick(3);
        for (int f = 0; f < facts; ++f) {
            Rule fact;
            fact.head.push_back(Atom{preds[i], {Term::fun(constants[pick(3)])}});
            prog.rules.push_back(fact);
        }
    }

    // IDB predicate p_i may depend positively on any earlier predicate and
    // negatively on strictly earlier ones.
    for (int i = 0; i < idbCount; ++i) {
        const std::string& pred = preds[edbCount + i];
        int rules = 1 + pick(2);
        for (int r = 0; r < rules && prog.rules.size() < 10; ++r) {
            Rule rule;
            bool useVar = pick(4) != 0;
            Term headArg = useVar ? Term::var("X") : Term::fun(constants[pick(3)]);
            if (useVar && pick(4) == 0) {
                headArg = Term::fun("f", {headArg});
            }
            rule.head.push_back(Atom{pred, {headArg}});
            if (pick(5) == 0 && i + 1 < idbCount) {
                // Disjunctive head over the same variable set.
                rule.head.push_back(Atom{preds[edbCount + i + 1 + pick(idbCount - i - 1)],
                                         {headArg.kind == Term::Kind::variable
                                              ? headArg
                                              : Term::fun(constants[pick(3)])}});
            }
            // fr-safety: every rule variable must occur in every head atom.
            std::set<std::string> headVars;
            bool allHeadsShareVars = true;
            for (const Atom& h : rule.head) {
                std::set<std::string> vs;
                h.collectVariables(vs);
                if (&h == &rule.head.front()) {
                    headVars = vs;
                } else if (vs != headVars) {
                    allHeadsShareVars = false;
                }
            }
            if (!allHeadsShareVars) {
                rule.head.resize(1);
            }
            int bodyLits = 1 + pick(2);
            for (int b = 0; b < bodyLits; ++b) {
                int target = pick(edbCount + i); // earlier predicate
                bool negate = target < edbCount + i && pick(3) == 0 &&
                              target != edbCount + i; // strictly earlier is guaranteed
                Term arg = headVars.count("X") ? Term::var("X")
                                               : Term::fun(constants[pick(3)]);
                if (pick(3) == 0) {
                    arg = Term::fun(constants[pick(3)]);
                }
                // Keep at least one positive literal binding the variable.
                if (b == 0) {
                    negate = false;
                    if (headVars.count("X")) {
                        arg = Term::var("X");
                    }
                }
                rule.body.push_back(Literal{Atom{preds[target], {arg}}, negate});
            }
            prog.rules.push_back(rule);
        }
    }

    // Ground query over an IDB predicate, with bounded functor depth.
    Term qArg = Term::fun(constants[pick(3)]);
    for (int d = pick(3); d > 0; --d) {
        qArg = Term::fun("f", {qArg});
    }
    Query query{Atom{preds[edbCount + pick(idbCount)], {qArg}}};
    return {"random-" + std::to_string(index), prog, query};
}

inline std::vector<CorpusInstance> fullCorpus(std::size_t minimumSize = 60) {
    std::vector<CorpusInstance> corpus = handwrittenCorpus();
    std::mt19937 rng(20240817);
    for (int i = 0; corpus.size() < minimumSize; ++i) {
        CorpusInstance candidate = randomCorpusInstance(rng, i);
        if (!checkFrSafety(candidate.program, candidate.query).safe) {
            continue;
        }
        if (!isStratified(candidate.program).stratified) {
            continue;
        }
        corpus.push_back(std::move(candidate));
    }
    return corpus;
}

// Ground instances of p relevant to the query: rule instances obtained by
// unifying a head atom with a relevant atom. Sound for the corpus, where
// every rule variable occurs in every head atom.
inline GroundProgram relevantGroundRestriction(const Program& p, const RelevanceReport& relevant) {
    GroundProgram out;
    std::set<Rule> seen;
    for (const Rule& r : p.rules) {
        for (const Atom& h : r.head) {
            for (const Atom& a : relevant.explored) {
                std::optional<Substitution> theta = unify(h, a);
                if (!theta) {
                    continue;
                }
                Rule instance = theta->apply(r);
                if (!instance.isGround()) {
                    continue;
                }
                if (seen.insert(instance).second) {
                    out.rules.push_back(instance);
                }
            }
        }
    }
    for (const Rule& r : out.rules) {
        out.derivedAtoms.insert(r.head.begin(), r.head.end());
    }
    return out;
}

// Structural equality modulo a consistent bijection of variable names.
inline bool sameUpToRenaming(const Rule& a, const Rule& b) {
    if (a.head.size() != b.head.size() || a.body.size() != b.body.size()) {
        return false;
    }
    std::map<std::string, std::string> fwd, bwd;
    auto matchTerm = [&](auto&& self, const Term& x, const Term& y) -> bool {
        if (x.kind != y.kind) {
            return false;
        }
        if (x.kind == Term::Kind::variable) {
            auto [itF, newF] = fwd.emplace(x.name, y.name);
            auto [itB, newB] = bwd.emplace(y.name, x.name);
            return itF->second == y.name && itB->second == x.name;
        }
        if (x.name != y.name || x.args.size() != y.args.size()) {
            return false;
        }
        for (std::size_t i = 0; i < x.args.size(); ++i) {
            if (!self(self, x.args[i], y.args[i])) {
                return false;
            }
        }
        return true;
    };
    auto matchAtom = [&](const Atom& x, const Atom& y) {
        if (x.predicate != y.predicate || x.args.size() != y.args.size()) {
            return false;
        }
        for (std::size_t i = 0; i < x.args.size(); ++i) {
            if (!matchTerm(matchTerm, x.args[i], y.args[i])) {
                return false;
            }
        }
        return true;
    };
    for (std::size_t i = 0; i < a.head.size(); ++i) {
        if (!matchAtom(a.head[i], b.head[i])) {
            return false;
        }
    }
    for (std::size_t i = 0; i < a.body.size(); ++i) {
        if (a.body[i].negated != b.body[i].negated || !matchAtom(a.body[i].atom, b.body[i].atom)) {
            return false;
        }
    }
    return true;
}

// Membership up to renaming, trying every body literal order of `text`.
inline bool containsUpToRenamingAndBodyOrder(const std::vector<Rule>& rules,
                                             const std::string& text) {
    Rule wanted = parseProgram(text).rules.front();
    for (const Rule& r : rules) {
        std::vector<Literal> body = wanted.body;
        std::sort(body.begin(), body.end());
        do {
            Rule permuted = wanted;
            permuted.body = body;
            if (sameUpToRenaming(r, permuted)) {
                return true;
            }
        } while (std::next_permutation(body.begin(), body.end()));
    }
    return false;
}

// Random ground programs for the solver oracle suite.
inline GroundProgram randomGroundProgram(std::mt19937& rng, int maxAtoms) {
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
    int atomCount = 2 + pick(maxAtoms - 1);
    std::vector<Atom> atoms;
    for (int i = 0; i < atomCount; ++i) {
        atoms.push_back(Atom{"a" + std::to_string(i), {}});
    }
    GroundProgram g;
    int ruleCount = 1 + pick(8);
    for (int r = 0; r < ruleCount; ++r) {
        Rule rule;
        int headSize = 1 + (pick(4) == 0 ? 1 : 0);
        for (int h = 0; h < headSize; ++h) {
            rule.head.push_back(atoms[pick(atomCount)]);
        }
        int bodySize = pick(4);
        for (int b = 0; b < bodySize; ++b) {
            rule.body.push_back(Literal{atoms[pick(atomCount)], pick(3) == 0});
        }
        g.rules.push_back(rule);
    }
    for (const Rule& r : g.rules) {
        g.derivedAtoms.insert(r.head.begin(), r.head.end());
    }
    return g;
}

} // namespace aspfr::testing

#endif
