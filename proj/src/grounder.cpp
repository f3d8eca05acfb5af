#include "aspfr/grounder.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <unordered_set>

#include "aspfr/printer.hpp"

namespace aspfr {

UnsafeRuleError::UnsafeRuleError(Rule rule, const std::string& variable)
    : std::runtime_error("unsafe rule '" + render(rule) + "': variable " + variable +
                         " does not occur in the positive body"),
      rule_(std::move(rule)) {}

LimitExceededError::LimitExceededError(const std::string& what, std::size_t partialSize)
    : std::runtime_error(what), partialSize_(partialSize) {}

namespace {

// One-way matching of a rule atom against a ground atom.
bool matchTerm(const Term& pattern, const Term& ground, std::map<std::string, Term>& bindings) {
    if (pattern.kind == Term::Kind::variable) {
        auto [it, inserted] = bindings.emplace(pattern.name, ground);
        return inserted || it->second == ground;
    }
    if (pattern.name != ground.name || pattern.args.size() != ground.args.size()) {
        return false;
    }
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        if (!matchTerm(pattern.args[i], ground.args[i], bindings)) {
            return false;
        }
    }
    return true;
}

bool matchAtom(const Atom& pattern, const Atom& ground, std::map<std::string, Term>& bindings) {
    if (pattern.predicate != ground.predicate || pattern.args.size() != ground.args.size()) {
        return false;
    }
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        if (!matchTerm(pattern.args[i], ground.args[i], bindings)) {
            return false;
        }
    }
    return true;
}

void checkRuleSafety(const Rule& r) {
    std::set<std::string> positiveVars;
    for (const Atom& a : r.positiveBody()) {
        a.collectVariables(positiveVars);
    }
    for (const std::string& v : r.variables()) {
        if (!positiveVars.count(v)) {
            throw UnsafeRuleError(r, v);
        }
    }
}

Rule instantiate(const Rule& r, const std::map<std::string, Term>& bindings) {
    Substitution s;
    for (const auto& [variable, value] : bindings) {
        s.bind(variable, value);
    }
    return s.apply(r);
}

std::set<Atom> factAtoms(const std::vector<Rule>& rules) {
    std::set<Atom> out;
    for (const Rule& r : rules) {
        if (r.isFact()) {
            out.insert(r.head.front());
        }
    }
    return out;
}

std::set<Atom> headAtoms(const std::vector<Rule>& rules) {
    std::set<Atom> out;
    for (const Rule& r : rules) {
        out.insert(r.head.begin(), r.head.end());
    }
    return out;
}

std::vector<Rule> phiFixpointCounted(const std::vector<Rule>& module, const std::vector<Rule>& r,
                                     const ComponentOrdering& ordering, std::size_t index,
                                     const GroundingLimits& limits, std::size_t& iterations) {
    std::set<Atom> baseHeads = headAtoms(r);
    std::vector<Rule> current;
    iterations = 0;
    for (;;) {
        if (++iterations > limits.maxIterations) {
            throw LimitExceededError("iteration limit exceeded while grounding component " +
                                         std::to_string(index),
                                     current.size());
        }
        std::set<Atom> heads = baseHeads;
        for (const Rule& rule : current) {
            heads.insert(rule.head.begin(), rule.head.end());
        }
        std::vector<Atom> atomList(heads.begin(), heads.end());
        std::vector<Rule> next = simpl(inst(module, atomList), r, ordering, index);
        if (next.size() + r.size() > limits.maxGroundRules) {
            throw LimitExceededError("ground rule limit exceeded while grounding component " +
                                         std::to_string(index),
                                     next.size());
        }
#ifndef NDEBUG
        {
            // The iteration is ⊆-monotone.
            std::set<Rule> before(current.begin(), current.end());
            std::set<Rule> after(next.begin(), next.end());
            assert(std::includes(after.begin(), after.end(), before.begin(), before.end()));
        }
#endif
        if (next.size() == current.size()) {
            return next;
        }
        current = std::move(next);
    }
}

} // namespace

std::vector<Rule> inst(const std::vector<Rule>& module, const std::vector<Atom>& atoms) {
    std::map<std::string, std::vector<const Atom*>> byPredicate;
    for (const Atom& a : atoms) {
        byPredicate[a.predicate].push_back(&a);
    }

    std::vector<Rule> out;
    std::unordered_set<Rule, RuleHash> seen;
    for (const Rule& r : module) {
        checkRuleSafety(r);
        std::vector<Atom> positive = r.positiveBody();
        std::map<std::string, Term> bindings;
        auto emit = [&]() {
            Rule instance = instantiate(r, bindings);
            assert(instance.isGround());
            if (seen.insert(instance).second) {
                out.push_back(std::move(instance));
            }
        };
        // Depth-first match of positive body atoms, left to right.
        std::function<void(std::size_t)> descend = [&](std::size_t i) {
            if (i == positive.size()) {
                emit();
                return;
            }
            auto it = byPredicate.find(positive[i].predicate);
            if (it == byPredicate.end()) {
                return;
            }
            for (const Atom* candidate : it->second) {
                std::map<std::string, Term> saved = bindings;
                if (matchAtom(positive[i], *candidate, bindings)) {
                    descend(i + 1);
                }
                bindings = std::move(saved);
            }
        };
        descend(0);
    }
    return out;
}

std::vector<Rule> simpl(const std::vector<Rule>& t, const std::vector<Rule>& r,
                        const ComponentOrdering& ordering, std::size_t index) {
    std::set<Atom> facts = factAtoms(r);
    std::set<Atom> heads = headAtoms(r);

    std::vector<Rule> out;
    for (const Rule& rg : t) {
        bool settled = std::any_of(rg.head.begin(), rg.head.end(),
                                   [&](const Atom& h) { return facts.count(h) > 0; });
        if (!settled) {
            for (const Literal& l : rg.body) {
                if (l.negated && facts.count(l.atom)) {
                    settled = true;
                    break;
                }
            }
        }
        if (settled) {
            continue;
        }
        Rule simplified;
        simplified.head = rg.head;
        for (const Literal& l : rg.body) {
            if (!l.negated) {
                if (!facts.count(l.atom)) {
                    simplified.body.push_back(l);
                }
                continue;
            }
            std::size_t c = ordering.componentOf(l.atom.predicate);
            bool settledFalse = c != ComponentOrdering::npos && c < index && !heads.count(l.atom);
            if (!settledFalse) {
                simplified.body.push_back(l);
            }
        }
        out.push_back(std::move(simplified));
    }
    return out;
}

std::vector<Rule> phiFixpoint(const std::vector<Rule>& module, const std::vector<Rule>& r,
                              const ComponentOrdering& ordering, std::size_t index,
                              const GroundingLimits& limits) {
    std::size_t iterations = 0;
    return phiFixpointCounted(module, r, ordering, index, limits, iterations);
}

GroundProgram intelligentInstantiation(const Program& p, const ComponentOrdering& ordering,
                                       const GroundingLimits& limits, GroundingStats* stats) {
    EdbIdbPartition part = classifyEdbIdb(p);
    std::vector<Rule> accumulated = part.edbRules;
    std::unordered_set<Rule, RuleHash> seen(accumulated.begin(), accumulated.end());

    for (std::size_t i = 0; i < ordering.order.size(); ++i) {
        std::vector<Rule> module = moduleOf(p, ordering, i);
        std::size_t iterations = 0;
        std::vector<Rule> fixpoint =
            phiFixpointCounted(module, accumulated, ordering, i, limits, iterations);
        std::size_t added = fixpoint.size();
        for (Rule& rule : fixpoint) {
            if (seen.insert(rule).second) {
                accumulated.push_back(std::move(rule));
            }
        }
        if (stats) {
            std::string name;
            for (const std::string& pred : ordering.order[i]) {
                if (!name.empty()) {
                    name += ",";
                }
                name += pred;
            }
            stats->perComponent.push_back({name, added, iterations});
        }
    }

    GroundProgram out;
    out.rules = std::move(accumulated);
    out.derivedAtoms = headAtoms(out.rules);
    return out;
}

} // namespace aspfr
