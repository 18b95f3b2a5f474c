#pragma once

#include <exception>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gpfeat/cli/commands.hpp"
#include "gpfeat/cli/config.hpp"

namespace gpfeat {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitRuntime = 2 };

// Parses arguments and dispatches to a command. Machine-readable results go to
// `out`; progress and diagnostics go to `err`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Genetic-programming feature construction for tabular classifiers", "gpfeat"};
    app.require_subcommand(1);

    std::string configPath;
    std::string outDir;
    std::string expressionsPath;
    std::vector<std::string> logPaths;

    auto* evolve = app.add_subcommand("evolve", "construct composite features and report test metrics");
    evolve->add_option("-c,--config", configPath, "config file")->required();
    evolve->add_option("-o,--out", outDir, "output directory")->required();

    auto* analyze = app.add_subcommand("analyze", "reports from run logs");
    analyze->add_option("logs", logPaths, "run log files (JSONL)")->required();
    analyze->add_option("-c,--config", configPath, "config file (analysis.* keys)");
    analyze->add_option("-o,--out", outDir, "output directory")->required();

    auto* eval = app.add_subcommand("eval", "test metric of base features plus listed expressions");
    eval->add_option("expressions", expressionsPath, "expression file, one prefix expression per line")->required();
    eval->add_option("-c,--config", configPath, "config file")->required();

    auto* synth = app.add_subcommand("synth", "write a synthetic dataset as CSV");
    synth->add_option("-c,--config", configPath, "config file")->required();
    synth->add_option("-o,--out", outDir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        const auto config = configPath.empty() ? RunConfig{} : RunConfig::load(configPath);
        if (evolve->parsed()) {
            return cmd_evolve(config, outDir, err);
        }
        if (analyze->parsed()) {
            return cmd_analyze(config, logPaths, outDir, err);
        }
        if (eval->parsed()) {
            return cmd_eval(config, expressionsPath, out);
        }
        return cmd_synth(config, outDir, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const IngestionError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

} // namespace gpfeat
