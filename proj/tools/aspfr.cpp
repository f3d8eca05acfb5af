#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "aspfr/analysis.hpp"
#include "aspfr/magic.hpp"
#include "aspfr/parser.hpp"
#include "aspfr/pipeline.hpp"
#include "aspfr/printer.hpp"
#include "aspfr/tm.hpp"

namespace {

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void writeFile(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write file '" + path + "'");
    }
    out << content;
}

struct CommonOptions {
    std::string mode = "cautious";
    std::size_t maxGroundRules = aspfr::GroundingLimits{}.maxGroundRules;
    std::size_t maxIterations = aspfr::GroundingLimits{}.maxIterations;
    std::string format = "text";
    std::string stopAfter;
};

void addCommonFlags(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--mode", opts.mode, "Entailment mode: brave or cautious")
        ->check(CLI::IsMember({"brave", "cautious"}));
    cmd->add_option("--max-ground-rules", opts.maxGroundRules, "Ground rule limit");
    cmd->add_option("--max-iterations", opts.maxIterations, "Fixpoint iteration limit");
    cmd->add_option("--format", opts.format, "Output format: text or record")
        ->check(CLI::IsMember({"text", "record"}));
    cmd->add_option("--stop-after", opts.stopAfter,
                    "Stop the pipeline after this stage "
                    "(parse|analyze|seed|rewrite|order|ground|solve|answer)");
}

aspfr::PipelineConfig toConfig(const CommonOptions& opts, aspfr::PipelineConfig::Stage dflt) {
    aspfr::PipelineConfig config;
    config.mode = opts.mode == "brave" ? aspfr::EntailmentMode::brave
                                       : aspfr::EntailmentMode::cautious;
    config.limits.maxGroundRules = opts.maxGroundRules;
    config.limits.maxIterations = opts.maxIterations;
    config.format = opts.format == "record" ? aspfr::PipelineConfig::Format::record
                                            : aspfr::PipelineConfig::Format::text;
    config.stopAfter = dflt;
    if (!opts.stopAfter.empty()) {
        auto stage = aspfr::parseStageName(opts.stopAfter);
        if (!stage) {
            throw CLI::ValidationError("--stop-after", "unknown stage '" + opts.stopAfter + "'");
        }
        config.stopAfter = *stage;
    }
    return config;
}

int emit(const aspfr::PipelineResult& result) {
    std::cout << result.output;
    std::cerr << result.diagnostics;
    return result.exitCode;
}

std::string loadQueryText(const std::string& inlineQuery, const std::string& queryFile) {
    if (!inlineQuery.empty() && !queryFile.empty()) {
        throw std::runtime_error("give the query inline or via --query-file, not both");
    }
    if (!inlineQuery.empty()) {
        return inlineQuery;
    }
    if (!queryFile.empty()) {
        return readFile(queryFile);
    }
    throw std::runtime_error("missing query: give it inline or via --query-file");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Query answering for disjunctive logic programs with functions"};
    app.require_subcommand(1);

    std::string programFile, queryInline, queryFile, inputText, outPrefix;

    CommonOptions analyzeOpts, rewriteOpts, groundOpts, solveOpts, queryOpts;

    CLI::App* analyze = app.add_subcommand("analyze", "Dependency and stratification report");
    analyze->add_option("program", programFile, "Program file")->required();
    addCommonFlags(analyze, analyzeOpts);

    CLI::App* rewrite = app.add_subcommand("rewrite", "Magic-set rewriting for a ground query");
    rewrite->add_option("program", programFile, "Program file")->required();
    rewrite->add_option("query", queryInline, "Ground query, e.g. 'p(a)?'");
    rewrite->add_option("--query-file", queryFile, "File holding the query");
    rewrite->add_flag("--sections", "Print magic/modified/EDB blocks separately");
    addCommonFlags(rewrite, rewriteOpts);

    CLI::App* ground = app.add_subcommand("ground", "Ground a program");
    ground->add_option("program", programFile, "Program file")->required();
    ground->add_flag("--stats", "Print per-component grounding statistics");
    addCommonFlags(ground, groundOpts);

    CLI::App* solve = app.add_subcommand("solve", "Enumerate stable models of a ground program");
    solve->add_option("program", programFile, "Ground program file")->required();
    solve->add_option("--query", queryInline, "Answer this query instead of listing models");
    addCommonFlags(solve, solveOpts);

    CLI::App* query = app.add_subcommand("query", "Decide a ground query end to end");
    query->add_option("program", programFile, "Program file")->required();
    query->add_option("query", queryInline, "Ground query, e.g. 'p(a)?'");
    query->add_option("--query-file", queryFile, "File holding the query");
    addCommonFlags(query, queryOpts);

    CLI::App* tmCompile = app.add_subcommand("tm-compile", "Compile a Turing machine spec");
    tmCompile->add_option("spec", programFile, "Machine spec file")->required();
    tmCompile->add_option("--input", inputText, "Input string over the alphabet");
    tmCompile->add_option("--out-prefix", outPrefix,
                          "Write PREFIX.lp and PREFIX.query instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            aspfr::Program p = aspfr::parseProgram(readFile(programFile));
            aspfr::rejectReservedPrefix(p);
            std::cout << aspfr::analysisReport(p);
            return 0;
        }
        if (rewrite->parsed()) {
            aspfr::PipelineConfig config = toConfig(rewriteOpts, aspfr::PipelineConfig::Stage::rewrite);
            std::string programText = readFile(programFile);
            std::string queryText = loadQueryText(queryInline, queryFile);
            if (!rewrite->count("--sections")) {
                return emit(aspfr::runPipeline(programText, queryText, config));
            }
            aspfr::Program p = aspfr::parseProgram(programText);
            aspfr::Query q = aspfr::parseQuery(queryText);
            aspfr::rejectReservedPrefix(p);
            auto safety = aspfr::checkFrSafety(p, q);
            if (!safety.violations.empty()) {
                const auto& v = safety.violations.front();
                std::cerr << "the query is not fr-safe: variable " << v.variable
                          << " of rule '" << aspfr::render(v.rule) << "' is missing from head atom "
                          << aspfr::render(v.headAtom) << "\n";
                return 1;
            }
            if (!aspfr::isStratified(p).stratified) {
                std::cerr << "program is not stratified\n";
                return 1;
            }
            auto [seeded, seededQuery] = aspfr::seedQuery(p, q);
            aspfr::RewrittenProgram rw = aspfr::dmsRewrite(seeded, seededQuery);
            std::cout << "% magic rules\n" << aspfr::render(aspfr::Program{rw.magicRules})
                      << "% modified rules\n" << aspfr::render(aspfr::Program{rw.modifiedRules})
                      << "% edb\n" << aspfr::render(aspfr::Program{rw.edb});
            return 0;
        }
        if (ground->parsed()) {
            aspfr::PipelineConfig config = toConfig(groundOpts, aspfr::PipelineConfig::Stage::ground);
            aspfr::Program p = aspfr::parseProgram(readFile(programFile));
            aspfr::ComponentOrdering ordering = aspfr::componentOrdering(p);
            aspfr::GroundingStats stats;
            aspfr::GroundProgram g =
                aspfr::intelligentInstantiation(p, ordering, config.limits, &stats);
            std::cout << aspfr::render(aspfr::Program{g.rules});
            if (ground->count("--stats")) {
                for (const auto& c : stats.perComponent) {
                    std::cerr << "component " << c.component << ": " << c.rules << " rules, "
                              << c.iterations << " iterations\n";
                }
            }
            return 0;
        }
        if (solve->parsed()) {
            aspfr::PipelineConfig config = toConfig(solveOpts, aspfr::PipelineConfig::Stage::solve);
            aspfr::Program p = aspfr::parseProgram(readFile(programFile));
            for (const aspfr::Rule& r : p.rules) {
                if (!r.isGround()) {
                    std::cerr << "solve expects a ground program; rule '" << aspfr::render(r)
                              << "' has variables\n";
                    return 1;
                }
            }
            aspfr::GroundProgram g;
            g.rules = p.rules;
            if (!queryInline.empty()) {
                aspfr::Query q = aspfr::parseQuery(queryInline);
                aspfr::AnswerReport report = aspfr::entails(g, q, config.mode);
                std::cout << aspfr::renderAnswer(report, config.format);
            } else {
                std::cout << aspfr::renderModels(aspfr::stableModels(g), config.format);
            }
            return 0;
        }
        if (query->parsed()) {
            aspfr::PipelineConfig config = toConfig(queryOpts, aspfr::PipelineConfig::Stage::answer);
            return emit(aspfr::runPipeline(readFile(programFile),
                                           loadQueryText(queryInline, queryFile), config));
        }
        if (tmCompile->parsed()) {
            aspfr::TMSpec m = aspfr::parseTmSpec(readFile(programFile));
            aspfr::TMInput x = aspfr::parseTmInput(m, inputText);
            std::string programOut = aspfr::render(aspfr::encodeMachine(m));
            std::string queryOut = aspfr::render(aspfr::encodeQuery(m, x)) + "\n";
            if (outPrefix.empty()) {
                std::cout << programOut << queryOut;
            } else {
                writeFile(outPrefix + ".lp", programOut);
                writeFile(outPrefix + ".query", queryOut);
            }
            return 0;
        }
    } catch (const aspfr::LimitExceededError& e) {
        std::cerr << "limit exceeded: " << e.what() << "\n";
        return 2;
    } catch (const aspfr::TooLargeError& e) {
        std::cerr << "limit exceeded: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
