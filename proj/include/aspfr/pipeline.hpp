#ifndef ASPFR_PIPELINE_HPP
#define ASPFR_PIPELINE_HPP

#include <optional>
#include <string>

#include "aspfr/solver.hpp"

namespace aspfr {

struct PipelineConfig {
    EntailmentMode mode = EntailmentMode::cautious;
    GroundingLimits limits;

    enum class Format { text, record };
    Format format = Format::text;

    enum class Stage { parse, analyze, seed, rewrite, order, ground, solve, answer };
    Stage stopAfter = Stage::answer;
};

std::optional<PipelineConfig::Stage> parseStageName(const std::string& name);

struct PipelineResult {
    int exitCode = 0;     // 0 answered, 1 input error, 2 limits exceeded
    std::string output;
    std::string diagnostics;
};

// Full decision procedure: parse, validate (reserved prefix, fr-safety,
// stratification), seed, rewrite, order, ground, answer. Honors stopAfter
// by emitting that stage's output instead of the final answer.
PipelineResult runPipeline(const std::string& programText, const std::string& queryText,
                           const PipelineConfig& config);

// Answer rendering shared by `query` and `solve --query`.
std::string renderAnswer(const AnswerReport& report, PipelineConfig::Format format);

// One model per line as a sorted atom list.
std::string renderModels(const StableModelResult& result, PipelineConfig::Format format);

} // namespace aspfr

#endif
