#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"

using namespace aspfr;
using namespace aspfr::testing;

TEST_CASE("terms distinguish variables from constants") {
    Term x = Term::var("X");
    Term c = Term::fun("c");
    CHECK(x.isVariable());
    CHECK_FALSE(x.isGround());
    CHECK(c.isConstant());
    CHECK(c.isGround());
    CHECK(x != c);
    Term fx = Term::fun("f", {x});
    CHECK_FALSE(fx.isGround());
    std::set<std::string> vars;
    fx.collectVariables(vars);
    CHECK(vars == std::set<std::string>{"X"});
}

TEST_CASE("same symbol at different arities is a different functor") {
    auto fs = P("p(f(a)). q(f(a,b)).").functors();
    CHECK(fs.count({"f", 1}) == 1);
    CHECK(fs.count({"f", 2}) == 1);
}

TEST_CASE("unify computes the textbook MGU") {
    auto s = unify(A("magic_lessThan(X,Y)"), A("magic_lessThan(s(0),0)"));
    REQUIRE(s.has_value());
    CHECK(*s->find("X") == Term::fun("s", {Term::fun("0")}));
    CHECK(*s->find("Y") == Term::fun("0"));
}

TEST_CASE("unify on identical atoms gives the empty substitution") {
    auto s = unify(A("p(X)"), A("p(X)"));
    REQUIRE(s.has_value());
    CHECK(s->empty());
}

TEST_CASE("unify fails on a functor clash") {
    CHECK_FALSE(unify(A("p(0)"), A("p(s(Y))")).has_value());
}

TEST_CASE("unify respects the occurs-check") {
    CHECK_FALSE(unify(A("p(X)"), A("p(f(X))")).has_value());
}

TEST_CASE("substitution application replaces simultaneously") {
    Substitution s;
    s.bind("X", Term::fun("0"));
    Rule r = P("p(X) :- q(X).").rules.front();
    CHECK(render(s.apply(r)) == "p(0) :- q(0).");

    Substitution empty;
    CHECK(empty.apply(r) == r);

    Substitution toSy;
    toSy.bind("X", Term::fun("s", {Term::var("Y")}));
    Rule r1 = P("lessThan(X,s(X)).").rules.front();
    CHECK(render(toSy.apply(r1)) == "lessThan(s(Y),s(s(Y))).");
}

TEST_CASE("unification soundness and substitution idempotence on random atoms") {
    std::mt19937 rng(7);
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
    auto randomTerm = [&](auto&& self, int depth) -> Term {
        int k = pick(depth > 0 ? 4 : 3);
        switch (k) {
        case 0: return Term::var(pick(2) ? "X" : "Y");
        case 1: return Term::fun("a");
        case 2: return Term::fun("b");
        default: return Term::fun("f", {self(self, depth - 1)});
        }
    };
    int unified = 0;
    for (int i = 0; i < 2000; ++i) {
        Atom a{"p", {randomTerm(randomTerm, 2), randomTerm(randomTerm, 2)}};
        Atom b{"p", {randomTerm(randomTerm, 2), randomTerm(randomTerm, 2)}};
        auto s = unify(a, b);
        if (s) {
            ++unified;
            CHECK(s->apply(a) == s->apply(b));
            CHECK(s->apply(s->apply(a)) == s->apply(a));
        }
    }
    CHECK(unified > 100); // the property was actually exercised
}

TEST_CASE("rule views expose H, B+, B-, Atoms") {
    Rule r = P("a(X) v b(X) :- c(X), not d(X).").rules.front();
    CHECK(r.head.size() == 2);
    CHECK(r.positiveBody() == std::vector<Atom>{A("c(X)")});
    CHECK(r.negativeBody() == std::vector<Atom>{A("d(X)")});
    CHECK(r.atoms() == std::vector<Atom>{A("a(X)"), A("b(X)"), A("c(X)"), A("d(X)")});
    CHECK(r.variables() == std::set<std::string>{"X"});
}

TEST_CASE("a fact has an empty body, one head atom, and a ground head") {
    CHECK(P("p(0).").rules.front().isFact());
    CHECK_FALSE(P("p(X).").rules.front().isFact());
    CHECK_FALSE(P("p(0) v q(0).").rules.front().isFact());
    CHECK_FALSE(P("p(0) :- q(0).").rules.front().isFact());
}

TEST_CASE("structural ordering is a strict weak order usable in sets") {
    std::set<Atom> s{A("p(a)"), A("p(b)"), A("p(a)")};
    CHECK(s.size() == 2);
    CHECK(A("p(a)") < A("p(b)"));
    CHECK_FALSE(A("p(b)") < A("p(a)"));
}

TEST_CASE("hash agrees with equality") {
    CHECK(hashValue(A("p(f(X),0)")) == hashValue(A("p(f(X),0)")));
    Rule r1 = P("p(X) :- q(X).").rules.front();
    Rule r2 = P("p(X) :- q(X).").rules.front();
    CHECK(hashValue(r1) == hashValue(r2));
}
