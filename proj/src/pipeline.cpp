#include "aspfr/pipeline.hpp"

#include <sstream>

#include "aspfr/parser.hpp"
#include "aspfr/printer.hpp"

namespace aspfr {

std::optional<PipelineConfig::Stage> parseStageName(const std::string& name) {
    using Stage = PipelineConfig::Stage;
    if (name == "parse") return Stage::parse;
    if (name == "analyze") return Stage::analyze;
    if (name == "seed") return Stage::seed;
    if (name == "rewrite") return Stage::rewrite;
    if (name == "order") return Stage::order;
    if (name == "ground") return Stage::ground;
    if (name == "solve") return Stage::solve;
    if (name == "answer") return Stage::answer;
    return std::nullopt;
}

namespace {

std::string renderAtomList(const Interpretation& m) {
    std::string out = "{";
    bool first = true;
    for (const Atom& a : m) {
        if (!first) {
            out += ", ";
        }
        first = false;
        out += render(a);
    }
    out += "}";
    return out;
}

std::string renderOrdering(const ComponentOrdering& ordering) {
    std::ostringstream out;
    for (std::size_t i = 0; i < ordering.order.size(); ++i) {
        out << "component " << i << ":";
        for (const std::string& pred : ordering.order[i]) {
            out << " " << pred;
        }
        out << "\n";
    }
    return out.str();
}

} // namespace

std::string renderAnswer(const AnswerReport& report, PipelineConfig::Format format) {
    std::ostringstream out;
    const char* modeName = report.mode == EntailmentMode::brave ? "brave" : "cautious";
    if (format == PipelineConfig::Format::text) {
        out << (report.answer ? "true" : "false") << "\n";
        if (report.witness) {
            out << "witness: " << renderAtomList(*report.witness) << "\n";
        }
        if (report.noModels) {
            out << "no stable models\n";
        }
    } else {
        out << "answer: " << (report.answer ? "true" : "false") << "\n";
        out << "mode: " << modeName << "\n";
        out << "models-seen: " << report.modelCount << "\n";
        out << "no-models: " << (report.noModels ? "yes" : "no") << "\n";
        if (report.witness) {
            out << "witness: " << renderAtomList(*report.witness) << "\n";
        }
    }
    return out.str();
}

std::string renderModels(const StableModelResult& result, PipelineConfig::Format format) {
    std::ostringstream out;
    for (const Interpretation& m : result.models) {
        if (format == PipelineConfig::Format::record) {
            out << "model: ";
        }
        out << renderAtomList(m) << "\n";
    }
    if (format == PipelineConfig::Format::record) {
        out << "count: " << result.models.size() << "\n";
        out << "cap-reached: " << (result.capReached ? "yes" : "no") << "\n";
    }
    return out.str();
}

PipelineResult runPipeline(const std::string& programText, const std::string& queryText,
                           const PipelineConfig& config) {
    using Stage = PipelineConfig::Stage;
    PipelineResult result;
    try {
        Program program = parseProgram(programText);
        Query query = parseQuery(queryText);
        if (config.stopAfter == Stage::parse) {
            result.output = render(program) + render(query) + "\n";
            return result;
        }

        rejectReservedPrefix(program);
        Atom queryHead = query.atom;
        if (isMagicPredicate(queryHead.predicate)) {
            throw ReservedPrefixError(queryHead.predicate);
        }

        FrSafetyReport safety = checkFrSafety(program, query);
        if (!safety.safe) {
            std::ostringstream diag;
            diag << "the query is not fr-safe; grounding may not terminate\n";
            for (const FrSafetyViolation& v : safety.violations) {
                diag << "  rule '" << render(v.rule) << "': variable " << v.variable
                     << " does not occur in head atom " << render(v.headAtom) << "\n";
            }
            result.exitCode = 1;
            result.diagnostics = diag.str();
            return result;
        }

        StratificationResult strat = isStratified(program);
        if (!strat.stratified) {
            std::ostringstream diag;
            diag << "the program is not stratified; cycle through negation:";
            for (const std::string& pred : strat.cycle) {
                diag << " " << pred;
            }
            diag << "\n";
            result.exitCode = 1;
            result.diagnostics = diag.str();
            return result;
        }
        if (config.stopAfter == Stage::analyze) {
            result.output = analysisReport(program);
            return result;
        }

        auto [seeded, seededQuery] = seedQuery(program, query);
        if (config.stopAfter == Stage::seed) {
            result.output = render(seeded);
            return result;
        }

        RewrittenProgram rewritten = dmsRewrite(seeded, seededQuery);
        Program dms = rewritten.combined();
        if (config.stopAfter == Stage::rewrite) {
            result.output = render(dms);
            return result;
        }

        ComponentOrdering ordering = componentOrdering(dms);
        if (config.stopAfter == Stage::order) {
            result.output = renderOrdering(ordering);
            return result;
        }

        GroundProgram ground = intelligentInstantiation(dms, ordering, config.limits);
        if (config.stopAfter == Stage::ground) {
            result.output = render(Program{ground.rules});
            return result;
        }

        if (config.stopAfter == Stage::solve) {
            result.output = renderModels(stableModels(ground), config.format);
            return result;
        }

        AnswerReport report = entails(ground, seededQuery, config.mode);
        result.output = renderAnswer(report, config.format);
        return result;
    } catch (const SyntaxError& e) {
        result.exitCode = 1;
        result.diagnostics = std::string("syntax error: ") + e.what() + "\n";
    } catch (const ArityClash& e) {
        result.exitCode = 1;
        result.diagnostics = std::string("arity clash: ") + e.what() + "\n";
    } catch (const ReservedPrefixError& e) {
        result.exitCode = 1;
        result.diagnostics = std::string("reserved prefix: ") + e.what() + "\n";
    } catch (const NoOrderingError& e) {
        result.exitCode = 1;
        result.diagnostics = std::string("ordering error: ") + e.what() + "\n";
    } catch (const UnsafeRuleError& e) {
        result.exitCode = 1;
        result.diagnostics = std::string("unsafe rule: ") + e.what() + "\n";
    } catch (const LimitExceededError& e) {
        result.exitCode = 2;
        result.diagnostics = std::string("limit exceeded: ") + e.what() + "\n";
    } catch (const TooLargeError& e) {
        result.exitCode = 2;
        result.diagnostics = std::string("limit exceeded: ") + e.what() + "\n";
    }
    return result;
}

} // namespace aspfr
