#include "aspfr/printer.hpp"

#include <cctype>
#include <sstream>

namespace aspfr {

namespace {

bool needsQuotes(const std::string& name) {
    if (name.empty()) {
        return true;
    }
    char first = name.front();
    if (!std::islower(static_cast<unsigned char>(first)) &&
        !std::isdigit(static_cast<unsigned char>(first))) {
        return true;
    }
    for (char c : name) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
            return true;
        }
    }
    return false;
}

std::string symbol(const std::string& name) {
    return needsQuotes(name) ? "'" + name + "'" : name;
}

bool isCons(const Term& t) {
    return t.kind == Term::Kind::function && t.name == "cons" && t.args.size() == 2;
}

bool isNil(const Term& t) {
    return t.kind == Term::Kind::function && t.name == "nil" && t.args.empty();
}

void renderTerm(const Term& t, std::ostringstream& os);

void renderList(const Term& t, std::ostringstream& os) {
    os << '[';
    const Term* cur = &t;
    bool first = true;
    while (isCons(*cur)) {
        if (!first) {
            os << ',';
        }
        renderTerm(cur->args[0], os);
        first = false;
        cur = &cur->args[1];
    }
    if (!isNil(*cur)) {
        os << '|';
        renderTerm(*cur, os);
    }
    os << ']';
}

void renderTerm(const Term& t, std::ostringstream& os) {
    if (t.kind == Term::Kind::variable) {
        os << t.name;
        return;
    }
    if (isNil(t) || isCons(t)) {
        renderList(t, os);
        return;
    }
    os << symbol(t.name);
    if (!t.args.empty()) {
        os << '(';
        for (std::size_t i = 0; i < t.args.size(); ++i) {
            if (i > 0) {
                os << ',';
            }
            renderTerm(t.args[i], os);
        }
        os << ')';
    }
}

void renderAtom(const Atom& a, std::ostringstream& os) {
    os << symbol(a.predicate);
    if (!a.args.empty()) {
        os << '(';
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (i > 0) {
                os << ',';
            }
            renderTerm(a.args[i], os);
        }
        os << ')';
    }
}

} // namespace

std::string render(const Term& t) {
    std::ostringstream os;
    renderTerm(t, os);
    return os.str();
}

std::string render(const Atom& a) {
    std::ostringstream os;
    renderAtom(a, os);
    return os.str();
}

std::string render(const Literal& l) {
    std::ostringstream os;
    if (l.negated) {
        os << "not ";
    }
    renderAtom(l.atom, os);
    return os.str();
}

std::string render(const Rule& r) {
    std::ostringstream os;
    for (std::size_t i = 0; i < r.head.size(); ++i) {
        if (i > 0) {
            os << " v ";
        }
        renderAtom(r.head[i], os);
    }
    if (!r.body.empty()) {
        os << " :- ";
        for (std::size_t i = 0; i < r.body.size(); ++i) {
            if (i > 0) {
                os << ", ";
            }
            os << render(r.body[i]);
        }
    }
    os << '.';
    return os.str();
}

std::string render(const Program& p) {
    std::ostringstream os;
    for (const Rule& r : p.rules) {
        os << render(r) << '\n';
    }
    return os.str();
}

std::string render(const Query& q) {
    return render(q.atom) + "?";
}

} // namespace aspfr
