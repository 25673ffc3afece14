// vortexlab CLI: solve -> kernels -> dynamics pipeline plus disorder sweeps.
//
// Exit codes: 0 success, 2 config error, 3 numeric/convergence error, 4 I/O error.

#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "vortexlab/errors.hpp"
#include "vortexlab/pipeline.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    int threads = 1;
    std::optional<std::uint64_t> seed_override;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool need_config = true) {
    auto* opt = cmd->add_option("--config", args.config_path, "path to the JSON run config");
    if (need_config) opt->required();
    cmd->add_option("--out", args.out_dir, "output directory (default: config output.dir)");
    cmd->add_option("--threads", args.threads, "worker threads for sweeps (default 1)")
        ->check(CLI::PositiveNumber);
    cmd->add_option_function<std::uint64_t>(
        "--seed-override", [&args](std::uint64_t s) { args.seed_override = s; },
        "replace disorder.seed for this run");
}

std::string resolve_out(const CommonArgs& args, const vortexlab::RunConfig& config) {
    return args.out_dir.empty() ? config.out_dir : args.out_dir;
}

} // namespace

int main(int argc, char** argv) {
    // numerical kernels stay single-threaded so identical configs give
    // bit-identical artifacts; parallelism happens across sweep seeds
    setenv("OPENBLAS_NUM_THREADS", "1", 0);
    setenv("OMP_NUM_THREADS", "1", 0);

    CLI::App app{"vortexlab: BdG vortex spectra, influence-functional kernels and dynamics"};
    app.require_subcommand(1);

    CommonArgs solve_args, kernels_args, dynamics_args, sweep_args, validate_args;
    auto* solve = app.add_subcommand("solve", "self-consistent gap + spectrum");
    add_common(solve, solve_args);
    auto* kernels = app.add_subcommand("kernels", "J(omega), F_par(tau), B, K from a solve");
    add_common(kernels, kernels_args);
    auto* dynamics = app.add_subcommand("dynamics", "classical vortex trajectory");
    add_common(dynamics, dynamics_args);
    auto* sweep = app.add_subcommand("sweep", "disorder ensemble of solve+kernels");
    add_common(sweep, sweep_args);
    auto* validate = app.add_subcommand("validate-config", "parse and validate a config");
    add_common(validate, validate_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(validate)) {
            const auto config = vortexlab::load_config(validate_args.config_path);
            std::cout << "config ok, hash " << vortexlab::config_hash(config) << "\n";
            return 0;
        }
        if (app.got_subcommand(solve)) {
            const auto config = vortexlab::load_config(solve_args.config_path);
            const auto art = vortexlab::run_solve(config, resolve_out(solve_args, config),
                                                  solve_args.seed_override);
            std::cout << "solve: converged=" << (art.report.converged ? "true" : "false")
                      << " iterations=" << art.report.iterations << "\n";
            if (!art.report.converged) return 3;
            return 0;
        }
        if (app.got_subcommand(kernels)) {
            const auto config = vortexlab::load_config(kernels_args.config_path);
            const auto art = vortexlab::run_kernels(config, resolve_out(kernels_args, config),
                                                    kernels_args.seed_override);
            std::cout << "kernels: B_virtual=" << art.kernels.b_transverse
                      << " B_state=" << art.scalars.b_state
                      << " K=" << art.kernels.k_spring
                      << " eta=" << art.scalars.eta_ohmic << "\n";
            return 0;
        }
        if (app.got_subcommand(dynamics)) {
            const auto config = vortexlab::load_config(dynamics_args.config_path);
            vortexlab::run_dynamics(config, resolve_out(dynamics_args, config));
            std::cout << "dynamics: trajectory written\n";
            return 0;
        }
        if (app.got_subcommand(sweep)) {
            const auto config = vortexlab::load_config(sweep_args.config_path);
            const auto sum = vortexlab::run_sweep(config, resolve_out(sweep_args, config),
                                                  sweep_args.threads, sweep_args.seed_override);
            const double bs = sum.b_mean != 0.0 ? std::abs(sum.b_stdev / sum.b_mean) : 0.0;
            const double es = sum.eta_mean != 0.0 ? std::abs(sum.eta_stdev / sum.eta_mean) : 0.0;
            std::cout << "sweep: seeds=" << sum.requested << " failed=" << sum.failed
                      << " spread(B)=" << bs << " spread(eta)=" << es << " decoupling="
                      << (sum.decoupling_confirmed ? "confirmed" : "violated") << "\n";
            return 0;
        }
    } catch (const vortexlab::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const vortexlab::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const vortexlab::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const vortexlab::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
