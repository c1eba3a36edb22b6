#include "config.hpp"
#include "runner.hpp"

#include "setprop/errors.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#ifndef SETPROP_CONFIG_DIR
#define SETPROP_CONFIG_DIR "configs"
#endif

namespace fs = std::filesystem;
using namespace setprop;
using namespace setprop::cli;

namespace {

enum Exit { ok = 0, failure = 1, usage = 2, config = 3, numeric = 4, io = 5 };

fs::path config_dir() {
    if (const char* env = std::getenv("SETPROP_CONFIG_DIR")) {
        return env;
    }
    return SETPROP_CONFIG_DIR;
}

void print_summary(const RunConfig& cfg, const Problem& prob) {
    std::printf("config:   %s\n", cfg.source.c_str());
    std::printf("problem:  %s (%s, %ld dofs, %zu inputs)\n",
                cfg.problem.builtin.empty() ? cfg.problem.system.c_str() : cfg.problem.builtin.c_str(),
                prob.system.kind == SystemKind::heat ? "heat" : "dynamics", static_cast<long>(prob.system.dofs()),
                prob.system.inputs.size());
    std::printf("methods: ");
    for (Method m : cfg.methods) {
        std::printf(" %s", to_string(m).c_str());
    }
    std::printf("\ndelta:    %.17g\nsteps:    %d\noutputs: ", cfg.delta, cfg.steps);
    for (const auto& o : cfg.outputs) {
        std::printf(" %s", o.name.c_str());
    }
    std::printf("\n");
}

int execute(const std::string& path, const Overrides& overrides, bool validate_only) {
    RunConfig cfg = load_config(path);
    apply_overrides(cfg, overrides);
    const Problem prob = build_problem(cfg);
    if (validate_only) {
        print_summary(cfg, prob);
        std::printf("ok\n");
        return ok;
    }
    const RunSummary summary = run(cfg);
    for (const auto& r : summary.results) {
        std::fprintf(stderr, "%-16s %.3f s\n", to_string(r.method).c_str(), r.seconds);
    }
    std::printf("wrote %zu files to %s\n", summary.files.size(), fs::absolute(cfg.out_dir).string().c_str());
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reachability flowpipes and classical integrators for linear FEM models"};
    app.require_subcommand(1);

    Overrides overrides;
    std::string config_path;
    std::string demo_name;
    auto add_flags = [&](CLI::App* sub) {
        sub->add_option("--delta", overrides.delta, "time step");
        sub->add_option("--steps", overrides.steps, "number of steps");
        sub->add_option("--method", overrides.method, "method, or a comma-separated list");
        sub->add_option("--out-dir", overrides.out_dir, "output directory");
        sub->add_option("--seed", overrides.seed, "sampling seed");
    };
    CLI::App* run_cmd = app.add_subcommand("run", "run a config file");
    run_cmd->add_option("config", config_path, "config file")->required();
    add_flags(run_cmd);
    CLI::App* validate_cmd = app.add_subcommand("validate", "check a config file without running it");
    validate_cmd->add_option("config", config_path, "config file")->required();
    add_flags(validate_cmd);
    CLI::App* demo_cmd = app.add_subcommand("demo", "run a shipped example");
    demo_cmd->add_option("name", demo_name, "oscillator, clamped_bar, wave2d, heat_rod or hydration")->required();
    add_flags(demo_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (demo_cmd->parsed()) {
            const fs::path path = config_dir() / (demo_name + ".yaml");
            if (!fs::exists(path)) {
                throw UsageError("unknown demo '" + demo_name + "' (no " + path.string() + ")");
            }
            if (!overrides.out_dir) {
                overrides.out_dir = "out/" + demo_name;
            }
            return execute(path.string(), overrides, false);
        }
        return execute(config_path, overrides, validate_cmd->parsed());
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return usage;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return config;
    } catch (const setprop::ParseError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return config;
    } catch (const IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return io;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return numeric;
    } catch (const FactorizationError& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return numeric;
    } catch (const EmptySetError& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return numeric;
    } catch (const setprop::Error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return config;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return failure;
    }
}
