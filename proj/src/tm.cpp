#include "aspfr/tm.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace aspfr {

namespace {

std::vector<std::string> splitWords(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string word;
    while (in >> word) {
        out.push_back(word);
    }
    return out;
}

std::string sanitizedBase(const std::string& name) {
    if (name == TMSpec::kBlank) {
        return "blank";
    }
    std::string base;
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            base += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    if (base.empty()) {
        base = "c";
    }
    return base;
}

std::map<std::string, std::string> renameAll(const std::vector<std::string>& names) {
    std::map<std::string, std::string> out;
    std::set<std::string> used;
    for (const std::string& name : names) {
        if (out.count(name)) {
            continue;
        }
        std::string constant = sanitizedBase(name);
        for (int i = 2; !used.insert(constant).second; ++i) {
            constant = sanitizedBase(name) + "_" + std::to_string(i);
        }
        out[name] = constant;
    }
    return out;
}

Term nilTerm() {
    return Term::fun("nil", {});
}

Term consTerm(Term head, Term tail) {
    return Term::fun("cons", {std::move(head), std::move(tail)});
}

Atom confAtom(Term state, Term left, Term symbol, Term right) {
    return Atom{"conf", {std::move(state), std::move(left), std::move(symbol), std::move(right)}};
}

} // namespace

void TMSpec::validate() const {
    std::set<std::string> sigma(alphabet.begin(), alphabet.end());
    std::set<std::string> stateSet(states.begin(), states.end());
    if (!sigma.count(kBlank)) {
        throw SpecInvalid("alphabet does not include the blank symbol '_'");
    }
    if (!stateSet.count(initial)) {
        throw SpecInvalid("initial state '" + initial + "' is not declared");
    }
    if (!stateSet.count(final)) {
        throw SpecInvalid("final state '" + final + "' is not declared");
    }
    if (initial == final) {
        throw SpecInvalid("initial and final state must be distinct");
    }
    for (const auto& [pair, action] : delta) {
        const auto& [s, v] = pair;
        if (s == final) {
            throw SpecInvalid("delta is defined on the final state '" + s + "'");
        }
        if (!stateSet.count(s) || !stateSet.count(action.state)) {
            throw SpecInvalid("delta references an undeclared state");
        }
        if (!sigma.count(v) || !sigma.count(action.symbol)) {
            throw SpecInvalid("delta references an undeclared symbol");
        }
    }
}

TMSpec parseTmSpec(const std::string& text) {
    TMSpec m;
    bool sawInitial = false, sawFinal = false;
    std::istringstream in(text);
    std::string line;
    std::size_t lineNumber = 0;
    while (std::getline(in, line)) {
        ++lineNumber;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::vector<std::string> words = splitWords(line);
        if (words.empty()) {
            continue;
        }
        auto fail = [&](const std::string& what) {
            throw SpecInvalid("line " + std::to_string(lineNumber) + ": " + what);
        };
        const std::string& key = words.front();
        std::vector<std::string> rest(words.begin() + 1, words.end());
        if (key == "alphabet:") {
            m.alphabet = rest;
        } else if (key == "states:") {
            m.states = rest;
        } else if (key == "initial:") {
            if (rest.size() != 1) {
                fail("expected exactly one initial state");
            }
            m.initial = rest.front();
            sawInitial = true;
        } else if (key == "final:") {
            if (rest.size() != 1) {
                fail("expected exactly one final state");
            }
            m.final = rest.front();
            sawFinal = true;
        } else if (key == "delta:") {
            if (rest.size() != 6 || rest[2] != "->" || (rest[5] != "L" && rest[5] != "R")) {
                fail("expected 'delta: s v -> s' v' L|R'");
            }
            TMSpec::Action action{rest[3], rest[4],
                                  rest[5] == "L" ? TMSpec::Direction::left
                                                 : TMSpec::Direction::right};
            if (!m.delta.emplace(std::make_pair(rest[0], rest[1]), action).second) {
                fail("duplicate transition for (" + rest[0] + ", " + rest[1] + ")");
            }
        } else {
            fail("unknown directive '" + key + "'");
        }
    }
    if (m.alphabet.empty()) {
        throw SpecInvalid("missing alphabet");
    }
    if (m.states.empty()) {
        throw SpecInvalid("missing states");
    }
    if (!sawInitial || !sawFinal) {
        throw SpecInvalid("missing initial or final state");
    }
    m.validate();
    return m;
}

TMInput parseTmInput(const TMSpec& m, const std::string& text) {
    std::set<std::string> sigma(m.alphabet.begin(), m.alphabet.end());
    TMInput x;
    for (const std::string& word : splitWords(text)) {
        for (char c : word) {
            std::string symbol(1, c);
            if (symbol == TMSpec::kBlank) {
                throw SpecInvalid("input contains the blank symbol");
            }
            if (!sigma.count(symbol)) {
                throw SpecInvalid("input symbol '" + symbol + "' is not in the alphabet");
            }
            x.symbols.push_back(symbol);
        }
    }
    return x;
}

TMEncodingNames encodingNames(const TMSpec& m) {
    TMEncodingNames names;
    names.stateConstant = renameAll(m.states);
    names.symbolConstant = renameAll(m.alphabet);
    return names;
}

Program encodeMachine(const TMSpec& m) {
    m.validate();
    TMEncodingNames names = encodingNames(m);
    auto state = [&](const std::string& s) { return Term::fun(names.stateConstant.at(s), {}); };
    auto symbol = [&](const std::string& v) { return Term::fun(names.symbolConstant.at(v), {}); };
    Term varL = Term::var("L"), varV = Term::var("V"), varR = Term::var("R");

    Program p;
    Rule finalRule;
    finalRule.head.push_back(confAtom(state(m.final), varL, varV, varR));
    p.rules.push_back(std::move(finalRule));

    for (const auto& [pair, action] : m.delta) {
        const auto& [s, v] = pair;
        if (action.direction == TMSpec::Direction::left) {
            // conf(s,[V|L],v,R) :- conf(s',L,V,[v'|R]).
            Rule r;
            r.head.push_back(confAtom(state(s), consTerm(varV, varL), symbol(v), varR));
            r.body.push_back(Literal{
                confAtom(state(action.state), varL, varV, consTerm(symbol(action.symbol), varR)),
                false});
            p.rules.push_back(std::move(r));
        } else {
            // conf(s,L,v,[V|R]) :- conf(s',[v'|L],V,R).
            Rule r;
            r.head.push_back(confAtom(state(s), varL, symbol(v), consTerm(varV, varR)));
            r.body.push_back(Literal{
                confAtom(state(action.state), consTerm(symbol(action.symbol), varL), varV, varR),
                false});
            p.rules.push_back(std::move(r));
            // conf(s,L,v,[]) :- conf(s',[v'|L],blank,[]).
            Rule extend;
            extend.head.push_back(confAtom(state(s), varL, symbol(v), nilTerm()));
            extend.body.push_back(
                Literal{confAtom(state(action.state), consTerm(symbol(action.symbol), varL),
                                 symbol(TMSpec::kBlank), nilTerm()),
                        false});
            p.rules.push_back(std::move(extend));
        }
    }
    return p;
}

Query encodeQuery(const TMSpec& m, const TMInput& x) {
    TMEncodingNames names = encodingNames(m);
    auto symbol = [&](const std::string& v) { return Term::fun(names.symbolConstant.at(v), {}); };
    Term initial = Term::fun(names.stateConstant.at(m.initial), {});
    if (x.symbols.empty()) {
        return Query{confAtom(initial, nilTerm(), symbol(TMSpec::kBlank), nilTerm())};
    }
    Term rest = nilTerm();
    for (std::size_t i = x.symbols.size(); i > 1; --i) {
        rest = consTerm(symbol(x.symbols[i - 1]), rest);
    }
    return Query{confAtom(initial, nilTerm(), symbol(x.symbols.front()), rest)};
}

SimulationResult simulateTm(const TMSpec& m, const TMInput& x, std::size_t maxSteps) {
    m.validate();
    std::vector<std::string> tape = x.symbols;
    if (tape.empty()) {
        tape.push_back(TMSpec::kBlank);
    }
    std::size_t head = 0;
    std::string state = m.initial;
    SimulationResult result;
    while (result.steps < maxSteps) {
        if (state == m.final) {
            result.verdict = TMVerdict::accepts;
            return result;
        }
        auto it = m.delta.find({state, tape[head]});
        if (it == m.delta.end()) {
            result.verdict = TMVerdict::rejects;
            return result;
        }
        tape[head] = it->second.symbol;
        state = it->second.state;
        if (it->second.direction == TMSpec::Direction::left) {
            if (head == 0) {
                // Semi-infinite tape: a left move at the edge keeps the
                // head in place, mirroring the encoding where the left
                // list is empty.
                result.verdict = TMVerdict::rejects;
                return result;
            }
            --head;
        } else {
            ++head;
            if (head == tape.size()) {
                tape.push_back(TMSpec::kBlank);
            }
        }
        ++result.steps;
    }
    result.verdict = TMVerdict::timeout;
    return result;
}

} // namespace aspfr
