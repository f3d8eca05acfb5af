#ifndef ASPFR_GROUNDER_HPP
#define ASPFR_GROUNDER_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "aspfr/analysis.hpp"
#include "aspfr/ast.hpp"

namespace aspfr {

struct GroundingLimits {
    std::size_t maxGroundRules = 1'000'000;
    std::size_t maxIterations = 100'000;
};

struct GroundProgram {
    std::vector<Rule> rules;
    std::set<Atom> derivedAtoms; // atoms appearing in heads
};

class UnsafeRuleError : public std::runtime_error {
public:
    UnsafeRuleError(Rule rule, const std::string& variable);
    const Rule& rule() const { return rule_; }

private:
    Rule rule_;
};

class LimitExceededError : public std::runtime_error {
public:
    LimitExceededError(const std::string& what, std::size_t partialSize);
    std::size_t partialSize() const { return partialSize_; }

private:
    std::size_t partialSize_;
};

// All instances of the module's rules whose positive body is contained in
// the given atom set, found by matching positive body literals against the
// set. Rules with a variable outside the positive body are rejected: their
// instance set is infinite over an infinite universe.
std::vector<Rule> inst(const std::vector<Rule>& module, const std::vector<Atom>& atoms);

// Fact-driven simplification of t w.r.t. the accumulated ground rules r:
// delete rules whose head or negative body meets Facts(r), then drop
// positive body atoms in Facts(r) and negative body atoms on predicates of
// lower components with no deriving rule in r.
std::vector<Rule> simpl(const std::vector<Rule>& t, const std::vector<Rule>& r,
                        const ComponentOrdering& ordering, std::size_t index);

// Least fixpoint of S -> Simpl(Inst_module(heads(r ∪ S)), r) from ∅.
std::vector<Rule> phiFixpoint(const std::vector<Rule>& module, const std::vector<Rule>& r,
                              const ComponentOrdering& ordering, std::size_t index,
                              const GroundingLimits& limits);

struct ComponentStats {
    std::string component;
    std::size_t rules = 0;
    std::size_t iterations = 0;
};

struct GroundingStats {
    std::vector<ComponentStats> perComponent;
};

// P_0 = EDB(p); P_i = P_{i-1} ∪ Φ^∞ over the i-th module.
GroundProgram intelligentInstantiation(const Program& p, const ComponentOrdering& ordering,
                                       const GroundingLimits& limits,
                                       GroundingStats* stats = nullptr);

} // namespace aspfr

#endif
