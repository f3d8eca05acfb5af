#include "aspfr/solver.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <deque>
#include <map>
#include <unordered_map>

#include "aspfr/printer.hpp"

namespace aspfr {

GroundProgram reduct(const GroundProgram& g, const Interpretation& i) {
    GroundProgram out;
    for (const Rule& r : g.rules) {
        bool blocked = false;
        for (const Literal& l : r.body) {
            if (l.negated && i.count(l.atom)) {
                blocked = true;
                break;
            }
        }
        if (blocked) {
            continue;
        }
        Rule stripped;
        stripped.head = r.head;
        for (const Literal& l : r.body) {
            if (!l.negated) {
                stripped.body.push_back(l);
            }
        }
        out.rules.push_back(std::move(stripped));
    }
    for (const Rule& r : out.rules) {
        out.derivedAtoms.insert(r.head.begin(), r.head.end());
    }
    return out;
}

bool isModel(const GroundProgram& g, const Interpretation& i) {
    for (const Rule& r : g.rules) {
        bool bodyTrue = true;
        for (const Literal& l : r.body) {
            bool member = i.count(l.atom) > 0;
            if (l.negated ? member : !member) {
                bodyTrue = false;
                break;
            }
        }
        if (!bodyTrue) {
            continue;
        }
        bool headTrue = std::any_of(r.head.begin(), r.head.end(),
                                    [&](const Atom& h) { return i.count(h) > 0; });
        if (!headTrue) {
            return false;
        }
    }
    return true;
}

namespace {

constexpr std::size_t kBruteForceAtomLimit = 22;
constexpr std::size_t kLocalEnumerationLimit = 24;

struct IndexedProgram {
    std::vector<Atom> atoms; // id -> atom
    std::unordered_map<Atom, int, AtomHash> ids;
    struct IndexedRule {
        std::vector<int> head, pos, neg;
    };
    std::vector<IndexedRule> rules;

    int idOf(const Atom& a) {
        auto [it, inserted] = ids.emplace(a, static_cast<int>(atoms.size()));
        if (inserted) {
            atoms.push_back(a);
        }
        return it->second;
    }
};

IndexedProgram indexProgram(const GroundProgram& g) {
    IndexedProgram ix;
    for (const Rule& r : g.rules) {
        IndexedProgram::IndexedRule ir;
        for (const Atom& h : r.head) {
            ir.head.push_back(ix.idOf(h));
        }
        for (const Literal& l : r.body) {
            (l.negated ? ir.neg : ir.pos).push_back(ix.idOf(l.atom));
        }
        ix.rules.push_back(std::move(ir));
    }
    return ix;
}

// Tarjan over integer nodes, iterative.
std::vector<std::vector<int>> sccsOf(int n, const std::vector<std::vector<int>>& adj) {
    std::vector<int> index(n, -1), low(n, 0), stackIndex(n, -1);
    std::vector<int> stack;
    std::vector<std::vector<int>> sccs;
    int counter = 0;
    struct Frame {
        int node;
        std::size_t child;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) {
            continue;
        }
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stackIndex[root] = static_cast<int>(stack.size());
        stack.push_back(root);
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.child < adj[f.node].size()) {
                int next = adj[f.node][f.child++];
                if (index[next] == -1) {
                    index[next] = low[next] = counter++;
                    stackIndex[next] = static_cast<int>(stack.size());
                    stack.push_back(next);
                    frames.push_back({next, 0});
                } else if (stackIndex[next] != -1) {
                    low[f.node] = std::min(low[f.node], index[next]);
                }
            } else {
                if (low[f.node] == index[f.node]) {
                    std::vector<int> scc;
                    int popped;
                    do {
                        popped = stack.back();
                        stack.pop_back();
                        stackIndex[popped] = -1;
                        scc.push_back(popped);
                    } while (popped != f.node);
                    sccs.push_back(std::move(scc));
                }
                int done = f.node;
                frames.pop_back();
                if (!frames.empty()) {
                    low[frames.back().node] = std::min(low[frames.back().node], low[done]);
                }
            }
        }
    }
    return sccs;
}

struct LocalRule {
    std::uint64_t head = 0, pos = 0, neg = 0;
};

// Stable models of a small component program over k local atoms, returned
// as bit masks in increasing order.
std::vector<std::uint64_t> localStableModels(std::size_t k, const std::vector<LocalRule>& rules) {
    bool anyNegation = std::any_of(rules.begin(), rules.end(),
                                   [](const LocalRule& r) { return r.neg != 0; });
    bool anyDisjunction = std::any_of(rules.begin(), rules.end(), [](const LocalRule& r) {
        return (r.head & (r.head - 1)) != 0;
    });

    if (!anyNegation && !anyDisjunction) {
        // Positive normal program: the least model is the unique stable model.
        std::uint64_t model = 0;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const LocalRule& r : rules) {
                if ((r.pos & ~model) == 0 && (r.head & model) == 0) {
                    model |= r.head;
                    changed = true;
                }
            }
        }
        return {model};
    }

    if (k > kLocalEnumerationLimit) {
        throw TooLargeError(k);
    }

    auto isLocalModel = [&](std::uint64_t m, const std::vector<LocalRule>& rs) {
        for (const LocalRule& r : rs) {
            if ((r.pos & ~m) == 0 && (r.neg & m) == 0 && (r.head & m) == 0) {
                return false;
            }
        }
        return true;
    };

    std::vector<std::uint64_t> out;
    const std::uint64_t limit = k == 64 ? ~0ull : (1ull << k);
    for (std::uint64_t m = 0; m < limit; ++m) {
        // Reduct w.r.t. m, then minimality among its models.
        std::vector<LocalRule> red;
        for (const LocalRule& r : rules) {
            if ((r.neg & m) == 0) {
                red.push_back({r.head, r.pos, 0});
            }
        }
        if (!isLocalModel(m, red)) {
            continue;
        }
        // Candidate-reduction first: greedily drop single atoms while the
        // result stays a model.
        std::uint64_t shrunk = m;
        bool reduced = true;
        while (reduced) {
            reduced = false;
            for (std::uint64_t bit = 1; bit <= shrunk && bit != 0; bit <<= 1) {
                if ((shrunk & bit) && isLocalModel(shrunk & ~bit, red)) {
                    shrunk &= ~bit;
                    reduced = true;
                }
            }
        }
        bool minimal = shrunk == m;
        if (minimal && m != 0) {
            // Single-atom reduction can miss smaller models; confirm by
            // enumerating proper submasks.
            for (std::uint64_t sub = (m - 1) & m;; sub = (sub - 1) & m) {
                if (isLocalModel(sub, red)) {
                    minimal = false;
                    break;
                }
                if (sub == 0) {
                    break;
                }
            }
        }
        if (minimal) {
            out.push_back(m);
        }
    }
    return out;
}

class SplittingSolver {
public:
    explicit SplittingSolver(const GroundProgram& g) : ix_(indexProgram(g)) {
        const int n = static_cast<int>(ix_.atoms.size());
        std::vector<std::vector<int>> adj(n);
        for (const auto& r : ix_.rules) {
            for (int h : r.head) {
                for (int b : r.pos) {
                    adj[b].push_back(h);
                }
                for (int b : r.neg) {
                    adj[b].push_back(h);
                }
            }
            // Atoms sharing a disjunctive head are evaluated together.
            for (std::size_t i = 1; i < r.head.size(); ++i) {
                adj[r.head[i - 1]].push_back(r.head[i]);
                adj[r.head[i]].push_back(r.head[i - 1]);
            }
        }
        components_ = sccsOf(n, adj);
        topoSort(adj);
        componentOf_.assign(n, -1);
        for (std::size_t c = 0; c < components_.size(); ++c) {
            for (int a : components_[c]) {
                componentOf_[a] = static_cast<int>(c);
            }
        }
        rulesByComponent_.resize(components_.size());
        for (std::size_t r = 0; r < ix_.rules.size(); ++r) {
            int home = componentOf_[ix_.rules[r].head.front()];
            for (int h : ix_.rules[r].head) {
                assert(componentOf_[h] == home);
            }
            rulesByComponent_[home].push_back(static_cast<int>(r));
        }
    }

    // Visits stable models; the visitor returns false to stop.
    bool enumerate(const std::function<bool(const Interpretation&)>& fn) {
        std::vector<char> truth(ix_.atoms.size(), 0);
        return descend(0, truth, fn);
    }

private:
    void topoSort(const std::vector<std::vector<int>>& adj) {
        // Order the condensation so bodies precede heads.
        std::size_t nc = components_.size();
        std::vector<int> compIndex(ix_.atoms.size());
        for (std::size_t c = 0; c < nc; ++c) {
            for (int a : components_[c]) {
                compIndex[a] = static_cast<int>(c);
            }
        }
        std::vector<std::set<int>> succ(nc);
        std::vector<int> indegree(nc, 0);
        for (std::size_t a = 0; a < adj.size(); ++a) {
            for (int b : adj[a]) {
                int ca = compIndex[a], cb = compIndex[b];
                if (ca != cb && succ[ca].insert(cb).second) {
                    ++indegree[cb];
                }
            }
        }
        std::deque<int> ready;
        for (std::size_t c = 0; c < nc; ++c) {
            if (indegree[c] == 0) {
                ready.push_back(static_cast<int>(c));
            }
        }
        std::vector<std::vector<int>> ordered;
        while (!ready.empty()) {
            int c = ready.front();
            ready.pop_front();
            ordered.push_back(std::move(components_[c]));
            for (int s : succ[c]) {
                if (--indegree[s] == 0) {
                    ready.push_back(s);
                }
            }
        }
        assert(ordered.size() == nc);
        components_ = std::move(ordered);
    }

    bool descend(std::size_t comp, std::vector<char>& truth,
                 const std::function<bool(const Interpretation&)>& fn) {
        if (comp == components_.size()) {
            Interpretation model;
            for (std::size_t a = 0; a < truth.size(); ++a) {
                if (truth[a]) {
                    model.insert(ix_.atoms[a]);
                }
            }
            return fn(model);
        }
        const std::vector<int>& atoms = components_[comp];
        std::map<int, int> localBit;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            localBit[atoms[i]] = static_cast<int>(i);
        }

        // Partially evaluate this component's rules against earlier truth.
        std::vector<LocalRule> local;
        for (int ri : rulesByComponent_[comp]) {
            const auto& r = ix_.rules[ri];
            LocalRule lr;
            bool dead = false;
            for (int b : r.pos) {
                auto it = localBit.find(b);
                if (it != localBit.end()) {
                    lr.pos |= 1ull << it->second;
                } else if (!truth[b]) {
                    dead = true;
                    break;
                }
            }
            if (!dead) {
                for (int b : r.neg) {
                    auto it = localBit.find(b);
                    if (it != localBit.end()) {
                        lr.neg |= 1ull << it->second;
                    } else if (truth[b]) {
                        dead = true;
                        break;
                    }
                }
            }
            if (dead) {
                continue;
            }
            for (int h : r.head) {
                lr.head |= 1ull << localBit.at(h);
            }
            local.push_back(lr);
        }

        for (std::uint64_t model : localStableModels(atoms.size(), local)) {
            for (std::size_t i = 0; i < atoms.size(); ++i) {
                truth[atoms[i]] = (model >> i) & 1 ? 1 : 0;
            }
            if (!descend(comp + 1, truth, fn)) {
                return false;
            }
        }
        for (int a : atoms) {
            truth[a] = 0;
        }
        return true;
    }

    IndexedProgram ix_;
    std::vector<std::vector<int>> components_;
    std::vector<int> componentOf_;
    std::vector<std::vector<int>> rulesByComponent_;
};

std::vector<std::string> renderedSorted(const Interpretation& m) {
    std::vector<std::string> out;
    out.reserve(m.size());
    for (const Atom& a : m) {
        out.push_back(render(a));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

void forEachStableModel(const GroundProgram& g,
                        const std::function<bool(const Interpretation&)>& fn) {
    SplittingSolver solver(g);
    solver.enumerate(fn);
}

StableModelResult stableModels(const GroundProgram& g, std::optional<std::size_t> cap) {
    StableModelResult result;
    forEachStableModel(g, [&](const Interpretation& m) {
        if (cap && result.models.size() >= *cap) {
            result.capReached = true;
            return false;
        }
        result.models.push_back(m);
        return true;
    });
    std::sort(result.models.begin(), result.models.end(),
              [](const Interpretation& a, const Interpretation& b) {
                  return renderedSorted(a) < renderedSorted(b);
              });
    return result;
}

std::vector<Interpretation> bruteForceStableModels(const GroundProgram& g) {
    IndexedProgram ix = indexProgram(g);
    const std::size_t n = ix.atoms.size();
    if (n > kBruteForceAtomLimit) {
        throw TooLargeError(n);
    }
    std::vector<LocalRule> rules;
    for (const auto& r : ix.rules) {
        LocalRule lr;
        for (int h : r.head) {
            lr.head |= 1ull << h;
        }
        for (int b : r.pos) {
            lr.pos |= 1ull << b;
        }
        for (int b : r.neg) {
            lr.neg |= 1ull << b;
        }
        rules.push_back(lr);
    }
    auto modelOf = [&](std::uint64_t m, const std::vector<LocalRule>& rs) {
        for (const LocalRule& r : rs) {
            if ((r.pos & ~m) == 0 && (r.head & m) == 0) {
                return false;
            }
        }
        return true;
    };

    std::vector<Interpretation> out;
    const std::uint64_t limit = 1ull << n;
    for (std::uint64_t m = 0; m < limit; ++m) {
        std::vector<LocalRule> red;
        for (const LocalRule& r : rules) {
            if ((r.neg & m) == 0) {
                red.push_back({r.head, r.pos, 0});
            }
        }
        if (!modelOf(m, red)) {
            continue;
        }
        bool minimal = true;
        if (m != 0) {
            for (std::uint64_t sub = (m - 1) & m;; sub = (sub - 1) & m) {
                if (modelOf(sub, red)) {
                    minimal = false;
                    break;
                }
                if (sub == 0) {
                    break;
                }
            }
        }
        if (minimal) {
            Interpretation model;
            for (std::size_t a = 0; a < n; ++a) {
                if ((m >> a) & 1) {
                    model.insert(ix.atoms[a]);
                }
            }
            out.push_back(std::move(model));
        }
    }
    std::sort(out.begin(), out.end(), [](const Interpretation& a, const Interpretation& b) {
        return renderedSorted(a) < renderedSorted(b);
    });
    return out;
}

AnswerReport entails(const GroundProgram& g, const Query& q, EntailmentMode mode) {
    AnswerReport report;
    report.mode = mode;
    bool decided = false;
    forEachStableModel(g, [&](const Interpretation& m) {
        ++report.modelCount;
        bool contains = m.count(q.atom) > 0;
        if (mode == EntailmentMode::brave) {
            if (contains) {
                report.answer = true;
                report.witness = m;
                decided = true;
                return false;
            }
        } else {
            if (!contains) {
                report.answer = false;
                report.witness = m;
                decided = true;
                return false;
            }
            if (!report.witness) {
                report.witness = m;
            }
        }
        return true;
    });
    if (!decided) {
        report.noModels = report.modelCount == 0;
        // Brave over no witnesses stays false; cautious quantifies
        // universally, so it is true whenever no countermodel was found.
        report.answer = mode == EntailmentMode::cautious;
    }
    return report;
}

bool isUnfoundedSet(const GroundProgram& g, const Interpretation& i, const std::set<Atom>& x) {
    for (const Rule& r : g.rules) {
        bool headMeetsX = std::any_of(r.head.begin(), r.head.end(),
                                      [&](const Atom& h) { return x.count(h) > 0; });
        if (!headMeetsX) {
            continue;
        }
        bool posOutsideI = false, negMeetsI = false, posMeetsX = false;
        for (const Literal& l : r.body) {
            if (l.negated) {
                negMeetsI = negMeetsI || i.count(l.atom) > 0;
            } else {
                posOutsideI = posOutsideI || i.count(l.atom) == 0;
                posMeetsX = posMeetsX || x.count(l.atom) > 0;
            }
        }
        bool headMeetsIMinusX = std::any_of(r.head.begin(), r.head.end(), [&](const Atom& h) {
            return i.count(h) > 0 && x.count(h) == 0;
        });
        if (!(posOutsideI || negMeetsI || posMeetsX || headMeetsIMinusX)) {
            return false;
        }
    }
    return true;
}

std::set<Atom> killedAtoms(const GroundProgram& gDms, const Interpretation& m,
                           const Interpretation& n, const std::set<std::string>& edbPredicates) {
    if (!std::includes(m.begin(), m.end(), n.begin(), n.end())) {
        throw PreconditionViolationError("killed atoms: N is not a subset of M");
    }
    if (!isModel(reduct(gDms, m), n)) {
        throw PreconditionViolationError("killed atoms: N is not a model of the reduct w.r.t. M");
    }
    std::set<Atom> universe;
    auto consider = [&](const Atom& a) {
        if (!isMagicPredicate(a.predicate)) {
            universe.insert(a);
        }
    };
    for (const Rule& r : gDms.rules) {
        for (const Atom& a : r.atoms()) {
            consider(a);
        }
    }
    for (const Atom& a : m) {
        consider(a);
    }
    for (const Atom& a : n) {
        consider(a);
    }
    std::set<Atom> killed;
    for (const Atom& a : universe) {
        if (n.count(a)) {
            continue;
        }
        if (edbPredicates.count(a.predicate) || n.count(magicAtomOf(a))) {
            killed.insert(a);
        }
    }
    return killed;
}

Interpretation magicLeastModel(const RewrittenProgram& rw, const GroundingLimits& limits) {
    Interpretation model;
    std::vector<const Rule*> rules;
    for (const Rule& r : rw.magicRules) {
        if (r.body.empty()) {
            if (!r.head.front().isGround()) {
                throw PreconditionViolationError("magic seed is not ground");
            }
            model.insert(r.head.front());
        } else {
            rules.push_back(&r);
        }
    }
    std::size_t iterations = 0;
    bool changed = true;
    while (changed) {
        if (++iterations > limits.maxIterations) {
            throw LimitExceededError("iteration limit exceeded computing the magic model",
                                     model.size());
        }
        changed = false;
        for (const Rule* r : rules) {
            const Atom& bodyAtom = r->body.front().atom;
            for (const Atom& candidate : std::vector<Atom>(model.begin(), model.end())) {
                std::optional<Substitution> theta = unify(bodyAtom, candidate);
                if (!theta) {
                    continue;
                }
                Atom derived = theta->apply(r->head.front());
                if (!derived.isGround()) {
                    throw PreconditionViolationError(
                        "magic rule derives a non-ground atom; the query is not fr-safe");
                }
                if (model.insert(derived).second) {
                    changed = true;
                    if (model.size() > limits.maxGroundRules) {
                        throw LimitExceededError("magic model exceeds the ground rule limit",
                                                 model.size());
                    }
                }
            }
        }
    }
    return model;
}

Interpretation magicVariant(const Interpretation& i, const Program& p, const RewrittenProgram& rw,
                            const GroundingLimits& limits) {
    Interpretation variant = magicLeastModel(rw, limits);
    for (const Rule& r : classifyEdbIdb(p).edbRules) {
        if (r.isFact()) {
            variant.insert(r.head.front());
        }
    }
    for (const Atom& a : i) {
        if (!isMagicPredicate(a.predicate) && variant.count(magicAtomOf(a))) {
            variant.insert(a);
        }
    }
    return variant;
}

} // namespace aspfr
