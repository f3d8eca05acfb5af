#ifndef ASPFR_SOLVER_HPP
#define ASPFR_SOLVER_HPP

#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "aspfr/grounder.hpp"
#include "aspfr/magic.hpp"

namespace aspfr {

using Interpretation = std::set<Atom>;

enum class EntailmentMode { brave, cautious };

class TooLargeError : public std::runtime_error {
public:
    explicit TooLargeError(std::size_t atoms)
        : std::runtime_error("ground program too large for exhaustive enumeration (" +
                             std::to_string(atoms) + " atoms)") {}
};

class PreconditionViolationError : public std::runtime_error {
public:
    explicit PreconditionViolationError(const std::string& what) : std::runtime_error(what) {}
};

// Gelfond-Lifschitz reduct: drop rules whose negative body meets i, strip
// negative literals from the rest.
GroundProgram reduct(const GroundProgram& g, const Interpretation& i);

bool isModel(const GroundProgram& g, const Interpretation& i);

struct StableModelResult {
    std::vector<Interpretation> models; // lexicographic by sorted atom list
    bool capReached = false;
};

// Stable models via splitting on the atom dependency graph: components are
// evaluated in topological order, positive normal components by least
// fixpoint, others by local enumeration with a minimality check.
StableModelResult stableModels(const GroundProgram& g,
                               std::optional<std::size_t> cap = std::nullopt);

// Visitor form; return false from the visitor to stop enumeration early.
void forEachStableModel(const GroundProgram& g, const std::function<bool(const Interpretation&)>& fn);

// Exhaustive oracle: enumerate all interpretations, keep minimal models of
// their own reduct. Enforces an atom-count bound.
std::vector<Interpretation> bruteForceStableModels(const GroundProgram& g);

struct AnswerReport {
    bool answer = false;
    EntailmentMode mode = EntailmentMode::cautious;
    std::optional<Interpretation> witness;
    std::size_t modelCount = 0;
    bool noModels = false;
};

// Cautious: query in every stable model (vacuously true with none);
// brave: query in some stable model.
AnswerReport entails(const GroundProgram& g, const Query& q, EntailmentMode mode);

// Unfounded-set test: every rule with a head in x is either already
// settled by i without x, or depends positively on x.
bool isUnfoundedSet(const GroundProgram& g, const Interpretation& i, const std::set<Atom>& x);

// False non-magic atoms certified by n: EDB instances, or atoms whose
// magic version is in n. Restricted to the non-magic atoms occurring in
// the ground program, m, or n.
std::set<Atom> killedAtoms(const GroundProgram& gDms, const Interpretation& m,
                           const Interpretation& n, const std::set<std::string>& edbPredicates);

// EDB facts ∪ M* ∪ the part of i whose magic version is in M*, where M*
// is the least model of the (positive, normal) magic rules.
Interpretation magicVariant(const Interpretation& i, const Program& p, const RewrittenProgram& rw,
                            const GroundingLimits& limits = {});

// Least model of the magic rules alone, exposed for the property suites.
Interpretation magicLeastModel(const RewrittenProgram& rw, const GroundingLimits& limits = {});

} // namespace aspfr

#endif
