#ifndef ASPFR_ANALYSIS_HPP
#define ASPFR_ANALYSIS_HPP

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aspfr/ast.hpp"

namespace aspfr {

struct EdbIdbPartition {
    std::set<std::string> edbPredicates;
    std::set<std::string> idbPredicates;
    std::vector<Rule> edbRules; // rules whose head predicates are all EDB
    std::vector<Rule> idbRules;

    bool isEdb(const std::string& predicate) const {
        return edbPredicates.count(predicate) > 0 || idbPredicates.count(predicate) == 0;
    }
};

// A predicate is EDB iff all of its defining rules are facts; predicates
// without defining rules count as EDB.
EdbIdbPartition classifyEdbIdb(const Program& p);

// Positive dependency graph over IDB predicates: edge q -> p if some rule
// has p in the head and q in the positive body.
struct DependencyGraph {
    std::set<std::string> nodes;
    std::set<std::pair<std::string, std::string>> edges; // (q, p)
};

DependencyGraph dependencyGraph(const Program& p);

// A component is a maximal strongly connected predicate set, kept sorted;
// the component list is ordered by smallest member.
using Component = std::vector<std::string>;

std::vector<Component> components(const DependencyGraph& g);

struct ComponentGraph {
    std::vector<Component> nodes;
    std::set<std::pair<std::size_t, std::size_t>> positiveEdges; // (from, to)
    std::set<std::pair<std::size_t, std::size_t>> negativeEdges;
};

ComponentGraph componentGraph(const Program& p);

struct StratificationResult {
    bool stratified = true;
    // On failure, one dependency cycle through a negative dependency.
    std::vector<std::string> cycle;
};

StratificationResult isStratified(const Program& p);

struct ComponentOrdering {
    std::vector<Component> order;
    // Component index of a predicate, or npos.
    std::size_t componentOf(const std::string& predicate) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

class NoOrderingError : public std::runtime_error {
public:
    NoOrderingError() : std::runtime_error("no component ordering satisfies the path conditions") {}
};

ComponentOrdering componentOrdering(const Program& p);

// Rules defining predicates of the i-th component, excluding rules that
// also define a predicate of an earlier component.
std::vector<Rule> moduleOf(const Program& p, const ComponentOrdering& ordering, std::size_t i);

struct FrSafetyViolation {
    Rule rule;
    Atom headAtom;
    std::string variable;
};

struct FrSafetyReport {
    bool safe = true;
    std::vector<FrSafetyViolation> violations;
};

// Syntactic condition licensing the magic rewriting: every rule whose head
// predicate is reachable from the query predicate must have all of its
// variables in each reachable head atom.
FrSafetyReport checkFrSafety(const Program& p, const Query& q);

struct RelevanceReport {
    std::set<Atom> explored;
    enum class Status { complete, budget_exhausted } status = Status::complete;
};

// Least set of ground atoms containing the query and closed under ground
// rule instances whose head meets the set; explored by unification, never
// by enumerating the universe.
RelevanceReport relevantAtoms(const Program& p, const Query& q, std::size_t budget);

// Structured text report for the CLI `analyze` command.
std::string analysisReport(const Program& p);

} // namespace aspfr

#endif
