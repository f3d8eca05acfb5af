#include "aspfr/analysis.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <deque>
#include <map>
#include <sstream>

#include "aspfr/magic.hpp"
#include "aspfr/printer.hpp"

namespace aspfr {

EdbIdbPartition classifyEdbIdb(const Program& p) {
    std::map<std::string, bool> allFacts; // defining rules all facts so far
    for (const Rule& r : p.rules) {
        // Magic predicates are intensional by construction: the rewriting
        // defines them, so even a ground seed fact does not make them EDB.
        bool fact = r.isFact() && !isMagicPredicate(r.head.front().predicate);
        for (const Atom& a : r.head) {
            auto [it, inserted] = allFacts.emplace(a.predicate, fact);
            if (!inserted) {
                it->second = it->second && fact;
            }
        }
    }
    EdbIdbPartition out;
    for (const Rule& r : p.rules) {
        for (const Atom& a : r.atoms()) {
            if (auto it = allFacts.find(a.predicate); it != allFacts.end() && !it->second) {
                out.idbPredicates.insert(a.predicate);
            } else {
                out.edbPredicates.insert(a.predicate);
            }
        }
    }
    for (const Rule& r : p.rules) {
        bool idb = std::any_of(r.head.begin(), r.head.end(), [&](const Atom& a) {
            return out.idbPredicates.count(a.predicate) > 0;
        });
        (idb ? out.idbRules : out.edbRules).push_back(r);
    }
    return out;
}

DependencyGraph dependencyGraph(const Program& p) {
    EdbIdbPartition part = classifyEdbIdb(p);
    DependencyGraph g;
    g.nodes = part.idbPredicates;
    for (const Rule& r : p.rules) {
        for (const Atom& h : r.head) {
            if (!g.nodes.count(h.predicate)) {
                continue;
            }
            for (const Atom& b : r.positiveBody()) {
                if (g.nodes.count(b.predicate)) {
                    g.edges.emplace(b.predicate, h.predicate);
                }
            }
        }
    }
    return g;
}

namespace {

// Iterative Tarjan over string-labelled nodes.
class SccFinder {
public:
    SccFinder(const std::vector<std::string>& nodes,
              const std::map<std::string, std::vector<std::string>>& adj)
        : nodes_(nodes), adj_(adj) {}

    std::vector<Component> run() {
        for (const std::string& n : nodes_) {
            if (!index_.count(n)) {
                strongConnect(n);
            }
        }
        for (Component& c : sccs_) {
            std::sort(c.begin(), c.end());
        }
        std::sort(sccs_.begin(), sccs_.end(),
                  [](const Component& a, const Component& b) { return a.front() < b.front(); });
        return sccs_;
    }

private:
    struct Frame {
        std::string node;
        std::size_t child = 0;
    };

    void strongConnect(const std::string& root) {
        std::vector<Frame> frames{{root}};
        open(root);
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto& succ = successors(f.node);
            if (f.child < succ.size()) {
                const std::string& next = succ[f.child++];
                if (!index_.count(next)) {
                    open(next);
                    frames.push_back({next});
                } else if (onStack_.count(next)) {
                    low_[f.node] = std::min(low_[f.node], index_[next]);
                }
            } else {
                if (low_[f.node] == index_[f.node]) {
                    Component c;
                    std::string popped;
                    do {
                        popped = stack_.back();
                        stack_.pop_back();
                        onStack_.erase(popped);
                        c.push_back(popped);
                    } while (popped != f.node);
                    sccs_.push_back(std::move(c));
                }
                std::string done = f.node;
                frames.pop_back();
                if (!frames.empty()) {
                    low_[frames.back().node] = std::min(low_[frames.back().node], low_[done]);
                }
            }
        }
    }

    void open(const std::string& n) {
        index_[n] = counter_;
        low_[n] = counter_;
        ++counter_;
        stack_.push_back(n);
        onStack_.insert(n);
    }

    const std::vector<std::string>& successors(const std::string& n) {
        static const std::vector<std::string> none;
        auto it = adj_.find(n);
        return it == adj_.end() ? none : it->second;
    }

    const std::vector<std::string>& nodes_;
    const std::map<std::string, std::vector<std::string>>& adj_;
    std::map<std::string, std::size_t> index_, low_;
    std::vector<std::string> stack_;
    std::set<std::string> onStack_;
    std::vector<Component> sccs_;
    std::size_t counter_ = 0;
};

} // namespace

std::vector<Component> components(const DependencyGraph& g) {
    std::vector<std::string> nodes(g.nodes.begin(), g.nodes.end());
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& [q, p] : g.edges) {
        adj[q].push_back(p);
    }
    return SccFinder(nodes, adj).run();
}

ComponentGraph componentGraph(const Program& p) {
    ComponentGraph g;
    g.nodes = components(dependencyGraph(p));
    std::map<std::string, std::size_t> componentOf;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        for (const std::string& pred : g.nodes[i]) {
            componentOf[pred] = i;
        }
    }
    std::set<std::pair<std::size_t, std::size_t>> negCandidates;
    for (const Rule& r : p.rules) {
        for (const Atom& h : r.head) {
            auto hit = componentOf.find(h.predicate);
            if (hit == componentOf.end()) {
                continue;
            }
            for (const Literal& l : r.body) {
                auto bit = componentOf.find(l.atom.predicate);
                if (bit == componentOf.end()) {
                    continue;
                }
                if (l.negated) {
                    negCandidates.emplace(bit->second, hit->second);
                } else {
                    g.positiveEdges.emplace(bit->second, hit->second);
                }
            }
        }
    }
    // A "-" edge is suppressed whenever the same "+" edge exists.
    for (const auto& e : negCandidates) {
        if (!g.positiveEdges.count(e)) {
            g.negativeEdges.insert(e);
        }
    }
    return g;
}

namespace {

struct FullDependencies {
    std::vector<std::string> predicates;
    // p -> predicates it depends on, with polarity (true = negative).
    std::map<std::string, std::vector<std::pair<std::string, bool>>> depends;
};

FullDependencies fullDependencies(const Program& p) {
    FullDependencies d;
    std::set<std::string> preds = p.predicates();
    d.predicates.assign(preds.begin(), preds.end());
    for (const Rule& r : p.rules) {
        for (const Atom& h : r.head) {
            for (const Literal& l : r.body) {
                d.depends[h.predicate].emplace_back(l.atom.predicate, l.negated);
            }
        }
    }
    return d;
}

} // namespace

StratificationResult isStratified(const Program& p) {
    FullDependencies d = fullDependencies(p);
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& [from, deps] : d.depends) {
        for (const auto& [to, neg] : deps) {
            adj[from].push_back(to);
        }
    }
    std::vector<Component> sccs = SccFinder(d.predicates, adj).run();
    std::map<std::string, std::size_t> sccOf;
    for (std::size_t i = 0; i < sccs.size(); ++i) {
        for (const std::string& pred : sccs[i]) {
            sccOf[pred] = i;
        }
    }
    for (const auto& [from, deps] : d.depends) {
        for (const auto& [to, neg] : deps) {
            if (!neg || sccOf[from] != sccOf[to]) {
                continue;
            }
            // Negative dependency inside a cycle: recover a path to -> from
            // within the SCC to report it.
            StratificationResult out;
            out.stratified = false;
            std::map<std::string, std::string> parent;
            std::deque<std::string> queue{to};
            parent[to] = to;
            while (!queue.empty()) {
                std::string cur = queue.front();
                queue.pop_front();
                if (cur == from) {
                    break;
                }
                for (const std::string& next : adj[cur]) {
                    if (sccOf[next] == sccOf[from] && !parent.count(next)) {
                        parent[next] = cur;
                        queue.push_back(next);
                    }
                }
            }
            std::vector<std::string> path;
            for (std::string cur = from; ; cur = parent[cur]) {
                path.push_back(cur);
                if (cur == to) {
                    break;
                }
            }
            std::reverse(path.begin(), path.end()); // to .. from; edge from->to closes it
            out.cycle = std::move(path);
            return out;
        }
    }
    return {};
}

std::size_t ComponentOrdering::componentOf(const std::string& predicate) const {
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (std::binary_search(order[i].begin(), order[i].end(), predicate)) {
            return i;
        }
    }
    return npos;
}

namespace {

struct Reachability {
    // strong[i][j]: path i -> j using only "+" edges.
    // weak[i][j]: path i -> j using at least one "-" edge.
    std::vector<std::vector<bool>> strong, weak;
};

Reachability reachability(const ComponentGraph& g) {
    std::size_t n = g.nodes.size();
    Reachability r;
    r.strong.assign(n, std::vector<bool>(n, false));
    r.weak.assign(n, std::vector<bool>(n, false));
    for (std::size_t start = 0; start < n; ++start) {
        // BFS over (node, sawNegative) states.
        std::deque<std::pair<std::size_t, bool>> queue;
        std::vector<std::array<bool, 2>> seen(n, {false, false});
        auto push = [&](std::size_t node, bool neg) {
            if (!seen[node][neg]) {
                seen[node][neg] = true;
                queue.emplace_back(node, neg);
            }
        };
        for (const auto& [from, to] : g.positiveEdges) {
            if (from == start) {
                push(to, false);
            }
        }
        for (const auto& [from, to] : g.negativeEdges) {
            if (from == start) {
                push(to, true);
            }
        }
        while (!queue.empty()) {
            auto [node, neg] = queue.front();
            queue.pop_front();
            (neg ? r.weak : r.strong)[start][node] = true;
            for (const auto& [from, to] : g.positiveEdges) {
                if (from == node) {
                    push(to, neg);
                }
            }
            for (const auto& [from, to] : g.negativeEdges) {
                if (from == node) {
                    push(to, true);
                }
            }
        }
    }
    return r;
}

} // namespace

ComponentOrdering componentOrdering(const Program& p) {
    ComponentGraph g = componentGraph(p);
    Reachability reach = reachability(g);
    std::size_t n = g.nodes.size();
    std::vector<bool> placed(n, false);
    ComponentOrdering out;
    for (std::size_t step = 0; step < n; ++step) {
        bool found = false;
        for (std::size_t c = 0; c < n && !found; ++c) {
            if (placed[c]) {
                continue;
            }
            bool ok = true;
            for (std::size_t d = 0; d < n && ok; ++d) {
                if (d == c || placed[d]) {
                    continue;
                }
                if (reach.strong[d][c]) {
                    ok = false; // condition (a)
                } else if (reach.weak[d][c] && !reach.weak[c][d]) {
                    ok = false; // condition (b)
                }
            }
            if (ok) {
                placed[c] = true;
                out.order.push_back(g.nodes[c]);
                found = true;
            }
        }
        if (!found) {
            throw NoOrderingError();
        }
    }
    return out;
}

std::vector<Rule> moduleOf(const Program& p, const ComponentOrdering& ordering, std::size_t i) {
    std::vector<Rule> out;
    for (const Rule& r : p.rules) {
        bool defines = false;
        bool definesLower = false;
        for (const Atom& h : r.head) {
            std::size_t c = ordering.componentOf(h.predicate);
            if (c == i) {
                defines = true;
            } else if (c != ComponentOrdering::npos && c < i) {
                definesLower = true;
            }
        }
        if (defines && !definesLower) {
            out.push_back(r);
        }
    }
    return out;
}

FrSafetyReport checkFrSafety(const Program& p, const Query& q) {
    // Predicate-level over-approximation of the relevance relation: if a
    // head predicate is reachable, every predicate of Atoms(r) is.
    std::set<std::string> reachable{q.atom.predicate};
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Rule& r : p.rules) {
            bool hit = std::any_of(r.head.begin(), r.head.end(), [&](const Atom& h) {
                return reachable.count(h.predicate) > 0;
            });
            if (!hit) {
                continue;
            }
            for (const Atom& a : r.atoms()) {
                if (reachable.insert(a.predicate).second) {
                    changed = true;
                }
            }
        }
    }
    FrSafetyReport report;
    for (const Rule& r : p.rules) {
        std::set<std::string> ruleVars = r.variables();
        for (const Atom& h : r.head) {
            if (!reachable.count(h.predicate)) {
                continue;
            }
            std::set<std::string> headVars;
            h.collectVariables(headVars);
            for (const std::string& v : ruleVars) {
                if (!headVars.count(v)) {
                    report.safe = false;
                    report.violations.push_back({r, h, v});
                }
            }
        }
    }
    return report;
}

RelevanceReport relevantAtoms(const Program& p, const Query& q, std::size_t budget) {
    RelevanceReport report;
    report.explored.insert(q.atom);
    std::deque<Atom> frontier{q.atom};
    while (!frontier.empty()) {
        Atom current = frontier.front();
        frontier.pop_front();
        for (const Rule& r : p.rules) {
            for (const Atom& h : r.head) {
                std::optional<Substitution> theta = unify(h, current);
                if (!theta) {
                    continue;
                }
                Rule instance = theta->apply(r);
                if (!instance.isGround()) {
                    // A non-ground instance stands for infinitely many
                    // relevant ground atoms; the closure cannot complete.
                    report.status = RelevanceReport::Status::budget_exhausted;
                    continue;
                }
                for (const Atom& a : instance.atoms()) {
                    if (report.explored.count(a)) {
                        continue;
                    }
                    if (report.explored.size() >= budget) {
                        report.status = RelevanceReport::Status::budget_exhausted;
                        return report;
                    }
                    report.explored.insert(a);
                    frontier.push_back(a);
                }
            }
        }
    }
    return report;
}

namespace {

std::string renderComponent(const Component& c) {
    std::string out = "{";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i > 0) {
            out += ",";
        }
        out += c[i];
    }
    out += "}";
    return out;
}

std::string joinNames(const std::set<std::string>& names) {
    std::string out;
    for (const std::string& n : names) {
        if (!out.empty()) {
            out += " ";
        }
        out += n;
    }
    return out;
}

} // namespace

std::string analysisReport(const Program& p) {
    std::ostringstream os;
    EdbIdbPartition part = classifyEdbIdb(p);
    os << "[predicates]\n";
    os << "edb: " << joinNames(part.edbPredicates) << "\n";
    os << "idb: " << joinNames(part.idbPredicates) << "\n";

    DependencyGraph g = dependencyGraph(p);
    os << "[dependency-graph]\n";
    for (const std::string& n : g.nodes) {
        os << "node: " << n << "\n";
    }
    for (const auto& [q, pr] : g.edges) {
        os << "edge: " << q << " -> " << pr << "\n";
    }

    ComponentGraph cg = componentGraph(p);
    os << "[components]\n";
    for (const Component& c : cg.nodes) {
        os << "component: " << renderComponent(c) << "\n";
    }
    os << "[component-graph]\n";
    for (const auto& [from, to] : cg.positiveEdges) {
        os << "edge: " << renderComponent(cg.nodes[from]) << " ->+ " << renderComponent(cg.nodes[to])
           << "\n";
    }
    for (const auto& [from, to] : cg.negativeEdges) {
        os << "edge: " << renderComponent(cg.nodes[from]) << " ->- " << renderComponent(cg.nodes[to])
           << "\n";
    }

    StratificationResult strat = isStratified(p);
    os << "[stratification]\n";
    os << "stratified: " << (strat.stratified ? "yes" : "no") << "\n";
    if (!strat.stratified) {
        std::string cycle;
        for (const std::string& pred : strat.cycle) {
            if (!cycle.empty()) {
                cycle += " ";
            }
            cycle += pred;
        }
        os << "cycle: " << cycle << "\n";
        return os.str();
    }

    ComponentOrdering ordering = componentOrdering(p);
    os << "[ordering]\n";
    for (std::size_t i = 0; i < ordering.order.size(); ++i) {
        os << (i + 1) << ": " << renderComponent(ordering.order[i]) << "\n";
    }
    return os.str();
}

} // namespace aspfr
