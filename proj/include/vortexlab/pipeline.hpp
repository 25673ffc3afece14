#ifndef VORTEXLAB_PIPELINE_HPP
#define VORTEXLAB_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "vortexlab/config.hpp"
#include "vortexlab/report.hpp"

namespace vortexlab {

// Pipeline stages.  Each stage reads its prerequisites from `out_dir` (files,
// not in-memory handoffs), writes its artifacts there and a manifest covering
// what it produced.  `seed_override` replaces disorder.seed for this run.

struct SolveArtifacts {
    PairField pair;
    BdGSpectrum spectrum;
    SelfConsistencyReport report;
};

SolveArtifacts run_solve(const RunConfig& config, const std::string& out_dir,
                         std::optional<std::uint64_t> seed_override = {});

struct KernelArtifacts {
    KernelSet kernels;
    KernelScalars scalars;
};

KernelArtifacts run_kernels(const RunConfig& config, const std::string& out_dir,
                            std::optional<std::uint64_t> seed_override = {});

void run_dynamics(const RunConfig& config, const std::string& out_dir);

struct SweepSummary {
    int requested = 0;
    int failed = 0;
    double b_mean = 0.0, b_stdev = 0.0;
    double eta_mean = 0.0, eta_stdev = 0.0;
    double k_mean = 0.0, k_stdev = 0.0;
    bool decoupling_confirmed = false;
};

SweepSummary run_sweep(const RunConfig& config, const std::string& out_dir, int threads,
                       std::optional<std::uint64_t> seed_override = {});

// Re-loads the converged pair field a previous solve stage wrote.
PairField load_gap_profile(const RunConfig& config, const std::string& out_dir);

} // namespace vortexlab

#endif
