#ifndef ASPFR_TM_HPP
#define ASPFR_TM_HPP

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "aspfr/ast.hpp"

namespace aspfr {

class SpecInvalid : public std::runtime_error {
public:
    explicit SpecInvalid(const std::string& what) : std::runtime_error(what) {}
};

// Deterministic single-tape machine with a semi-infinite tape. The blank
// symbol is written "_" in spec files.
struct TMSpec {
    static constexpr const char* kBlank = "_";

    enum class Direction { left, right };
    struct Action {
        std::string state;
        std::string symbol;
        Direction direction;
    };

    std::vector<std::string> alphabet; // includes the blank
    std::vector<std::string> states;
    std::string initial;
    std::string final;
    std::map<std::pair<std::string, std::string>, Action> delta;

    void validate() const; // throws SpecInvalid
};

struct TMInput {
    std::vector<std::string> symbols; // blank-free
};

// Line-based spec format: "alphabet: a b _", "states: si sf", "initial: si",
// "final: sf", and one "delta: s v -> s' v' L|R" line per transition.
TMSpec parseTmSpec(const std::string& text);

TMInput parseTmInput(const TMSpec& m, const std::string& text);

// The constants used for a machine's states and tape symbols in the
// generated program: a sanitizing rename with collision suffixes.
struct TMEncodingNames {
    std::map<std::string, std::string> stateConstant;
    std::map<std::string, std::string> symbolConstant;
};

TMEncodingNames encodingNames(const TMSpec& m);

Program encodeMachine(const TMSpec& m);
Query encodeQuery(const TMSpec& m, const TMInput& x);

enum class TMVerdict { accepts, rejects, timeout };

struct SimulationResult {
    TMVerdict verdict = TMVerdict::timeout;
    std::size_t steps = 0;
};

SimulationResult simulateTm(const TMSpec& m, const TMInput& x, std::size_t maxSteps = 10'000);

} // namespace aspfr

#endif
