#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"

using namespace aspfr;
using namespace aspfr::testing;

namespace {

const char* kLessThan = "lessThan(X,s(X)).\n"
                        "lessThan(X,s(Y)) :- lessThan(X,Y).\n"
                        "greaterThan(s(X),Y) :- not lessThan(X,Y).\n";

GroundProgram groundLessThanRewrite() {
    auto rw = dmsRewrite(parseProgram(kLessThan), parseQuery("greaterThan(s(s(0)),0)?"));
    Program dms = rw.combined();
    return intelligentInstantiation(dms, componentOrdering(dms), GroundingLimits{});
}

} // namespace

TEST_CASE("reduct implements the standard Gelfond-Lifschitz construction") {
    CHECK(reduct(G("a :- b."), {}).rules == G("a :- b.").rules);
    CHECK(reduct(G("a :- not b."), I({"b"})).rules.empty());
    auto r = reduct(G("greaterThan(s(s(0)),0) :- not lessThan(s(0),0)."), {});
    REQUIRE(r.rules.size() == 1);
    CHECK(r.rules.front() == P("greaterThan(s(s(0)),0).").rules.front());
}

TEST_CASE("is_model checks rule satisfaction, not minimality") {
    CHECK(isModel(G("a v b."), I({"a"})));
    CHECK_FALSE(isModel(G("a :- b."), I({"b"})));
    CHECK(isModel(G("a v b."), I({"a", "b"})));
}

TEST_CASE("stable models of small programs") {
    SUBCASE("disjunction splits") {
        auto r = stableModels(G("a v b."));
        REQUIRE(r.models.size() == 2);
        CHECK(r.models[0] == I({"a"}));
        CHECK(r.models[1] == I({"b"}));
    }
    SUBCASE("unsupported positive loop is false") {
        auto r = stableModels(G("a :- a."));
        REQUIRE(r.models.size() == 1);
        CHECK(r.models.front().empty());
    }
    SUBCASE("odd loop has no stable model") {
        CHECK(stableModels(G("a :- not a.")).models.empty());
    }
    SUBCASE("constraint-like disjunctive interplay") {
        auto r = stableModels(G("a v b. a :- b. b :- a."));
        REQUIRE(r.models.size() == 1);
        CHECK(r.models.front() == I({"a", "b"}));
    }
    SUBCASE("the rewritten lessThan grounding has one stable model answering the query") {
        auto r = stableModels(groundLessThanRewrite());
        REQUIRE(r.models.size() == 1);
        CHECK(r.models.front().count(A("greaterThan(s(s(0)),0)")) == 1);
        CHECK(r.models.front().count(A("magic_greaterThan(s(s(0)),0)")) == 1);
        CHECK(r.models.front().count(A("magic_lessThan(s(0),0)")) == 1);
        CHECK(r.models.front().count(A("lessThan(s(0),0)")) == 0);
    }
    SUBCASE("cap stops enumeration early") {
        auto r = stableModels(G("a v b. c v d."), 2);
        CHECK(r.models.size() == 2);
        CHECK(r.capReached);
    }
}

TEST_CASE("brute-force oracle") {
    auto models = bruteForceStableModels(G("a v b. a :- b. b :- a."));
    REQUIRE(models.size() == 1);
    CHECK(models.front() == I({"a", "b"}));
    CHECK(bruteForceStableModels(G("p(0).")) == std::vector<Interpretation>{I({"p(0)"})});
    CHECK(bruteForceStableModels(G("a :- not a.")).empty());
}

TEST_CASE("brute force enforces its atom bound") {
    GroundProgram big;
    for (int i = 0; i < 23; ++i) {
        Rule f;
        f.head.push_back(Atom{"a" + std::to_string(i), {}});
        big.rules.push_back(f);
    }
    CHECK_THROWS_AS(bruteForceStableModels(big), TooLargeError);
}

TEST_CASE("entailment") {
    Query qa = Q("a?");
    SUBCASE("brave true, cautious false on a choice") {
        GroundProgram g = G("a v b.");
        CHECK(entails(g, qa, EntailmentMode::brave).answer);
        auto c = entails(g, qa, EntailmentMode::cautious);
        CHECK_FALSE(c.answer);
        REQUIRE(c.witness.has_value());
        CHECK(c.witness->count(A("a")) == 0);
    }
    SUBCASE("no stable models: brave false, cautious vacuously true") {
        GroundProgram g = G("a :- not a.");
        auto b = entails(g, qa, EntailmentMode::brave);
        CHECK_FALSE(b.answer);
        CHECK(b.noModels);
        auto c = entails(g, qa, EntailmentMode::cautious);
        CHECK(c.answer);
        CHECK(c.noModels);
    }
    SUBCASE("witness accompanies a positive brave answer") {
        auto b = entails(G("a v b."), qa, EntailmentMode::brave);
        REQUIRE(b.witness.has_value());
        CHECK(b.witness->count(A("a")) == 1);
    }
    SUBCASE("the lessThan query is true end-to-end in both modes") {
        GroundProgram g = groundLessThanRewrite();
        Query q = Q("greaterThan(s(s(0)),0)?");
        CHECK(entails(g, q, EntailmentMode::brave).answer);
        CHECK(entails(g, q, EntailmentMode::cautious).answer);
    }
}

TEST_CASE("unfounded set conditions hold pointwise") {
    CHECK(isUnfoundedSet(G("a :- b."), {}, {}));
    CHECK(isUnfoundedSet(G("a :- b."), {}, {A("a")}));            // (1.a): b not in i
    CHECK_FALSE(isUnfoundedSet(G("a."), I({"a"}), {A("a")}));     // fact violates all four
    CHECK(isUnfoundedSet(G("a :- not b."), I({"a", "b"}), {A("a")})); // (1.b)
    CHECK(isUnfoundedSet(G("a :- b. b :- a."), I({"a", "b"}), {A("a"), A("b")})); // (2)
    CHECK(isUnfoundedSet(G("a v c :- b. b."), I({"b", "c"}), {A("a")}));          // (3)
}

TEST_CASE("stable models never intersect their unfounded sets") {
    // Stable models must be disjoint from every unfounded set.
    std::mt19937 rng(31);
    for (int t = 0; t < 50; ++t) {
        GroundProgram g = randomGroundProgram(rng, 6);
        for (const Interpretation& m : bruteForceStableModels(g)) {
            std::vector<Atom> atoms(g.derivedAtoms.begin(), g.derivedAtoms.end());
            // Enumerate small candidate sets X and check the implication.
            std::size_t n = std::min<std::size_t>(atoms.size(), 6);
            for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
                std::set<Atom> x;
                for (std::size_t i = 0; i < n; ++i) {
                    if (mask & (1u << i)) {
                        x.insert(atoms[i]);
                    }
                }
                if (isUnfoundedSet(g, m, x)) {
                    for (const Atom& a : x) {
                        CHECK(m.count(a) == 0);
                    }
                }
            }
        }
    }
}

TEST_CASE("killed atom characterization") {
    SUBCASE("rewritten lessThan stable model kills lessThan(s(0),0)") {
        // Unsimplified relevant ground restriction of the rewriting: keeps
        // lessThan(s(0),0) in a body so it is part of the atom universe.
        GroundProgram g =
            G("magic_greaterThan(s(s(0)),0). "
              "magic_lessThan(s(0),0) :- magic_greaterThan(s(s(0)),0). "
              "greaterThan(s(s(0)),0) :- magic_greaterThan(s(s(0)),0), not lessThan(s(0),0).");
        auto models = stableModels(g).models;
        REQUIRE(models.size() == 1);
        const Interpretation& m = models.front();
        auto killed = killedAtoms(g, m, m, {});
        CHECK(killed == std::set<Atom>{A("lessThan(s(0),0)")});
    }
    SUBCASE("precondition violations throw") {
        GroundProgram g = G("a.");
        CHECK_THROWS_AS(killedAtoms(g, {}, I({"a"}), {}), PreconditionViolationError);
        CHECK_THROWS_AS(killedAtoms(g, I({"a"}), {}, {}), PreconditionViolationError);
    }
    SUBCASE("EDB-false atoms are killed") {
        GroundProgram g = G("e. p :- e, q.");
        Interpretation m = I({"e"});
        auto killed = killedAtoms(g, m, m, {"e", "q"});
        CHECK(killed.count(A("q")) == 1);
        CHECK(killed.count(A("e")) == 0); // e is in n
    }
}

TEST_CASE("magic least model and magic variant on the rewritten lessThan program") {
    auto rw = dmsRewrite(parseProgram(kLessThan), parseQuery("greaterThan(s(s(0)),0)?"));
    Interpretation mStar = magicLeastModel(rw);
    CHECK(mStar == I({"magic_greaterThan(s(s(0)),0)", "magic_lessThan(s(0),0)"}));

    Interpretation original = I({"greaterThan(s(s(0)),0)", "greaterThan(s(s(s(0))),0)"});
    Interpretation variant = magicVariant(original, parseProgram(kLessThan), rw);
    CHECK(variant == I({"magic_greaterThan(s(s(0)),0)", "magic_lessThan(s(0),0)",
                        "greaterThan(s(s(0)),0)"}));

    CHECK(magicVariant({}, parseProgram(kLessThan), rw) == mStar);
}

TEST_CASE("solver oracle equivalence on random ground programs") {
    std::mt19937 rng(1234);
    for (int t = 0; t < 100; ++t) {
        GroundProgram g = randomGroundProgram(rng, 10);
        CHECK(stableModels(g).models == bruteForceStableModels(g));
    }
}
