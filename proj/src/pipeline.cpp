#include "vortexlab/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "vortexlab/errors.hpp"

namespace vortexlab {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

RunConfig with_seed(RunConfig c, std::optional<std::uint64_t> seed_override) {
    if (seed_override) c.disorder.seed = *seed_override;
    return c;
}

// auto grids derived from a solved spectrum
struct KernelGrids {
    VecXd omega;
    VecXd tau;
    double eta_b = 0.0;
    double omega_fit = 0.0;
};

KernelGrids make_grids(const RunConfig& c, const BdGSpectrum& spectrum) {
    KernelGrids g;
    g.eta_b = c.eta_b > 0.0 ? c.eta_b : default_broadening(spectrum);
    const double range = spectrum.energies[spectrum.dim() - 1] - spectrum.energies[0];
    const double omega_max = c.omega_max > 0.0 ? c.omega_max : range + 10.0 * g.eta_b;
    g.omega = linspace(0.0, omega_max, c.n_omega);
    const double tau_max = std::isinf(c.beta) ? c.tau_max
                                              : (c.tau_max > 0.0 ? c.tau_max : c.beta);
    g.tau = linspace(0.0, tau_max, c.n_tau);
    g.omega_fit = c.omega_fit > 0.0 ? c.omega_fit : 10.0 * g.eta_b;
    return g;
}

} // namespace

SolveArtifacts run_solve(const RunConfig& config_in, const std::string& out_dir,
                         std::optional<std::uint64_t> seed_override) {
    const RunConfig config = with_seed(config_in, seed_override);
    ensure_directory(out_dir);
    const double t0 = now_seconds();

    const LatticeModel model = config.make_lattice();
    const PairField seed = seed_pair_field(model, config.vortex_center(), config.q,
                                           config.bulk_gap_seed, config.xi_seed);
    SelfConsistentSolution sol =
        self_consistent_gap(model, seed, config.g, config.beta, config.cutoff,
                            config.sc_tol, config.sc_max_iter, config.sc_mixing);

    // artifacts
    const int n = model.n_sites();
    VecXd xs(n), ys(n), re(n), im(n), mag(n), ph(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = model.site_x(i);
        ys[i] = model.site_y(i);
        re[i] = sol.pair.delta[i].real();
        im[i] = sol.pair.delta[i].imag();
        mag[i] = std::abs(sol.pair.delta[i]);
        ph[i] = std::arg(sol.pair.delta[i]);
    }
    write_csv(out_dir + "/gap_profile.csv", {"x", "y", "re", "im", "abs", "arg"},
              {xs, ys, re, im, mag, ph});

    VecXd idx(sol.spectrum.dim());
    for (int k = 0; k < sol.spectrum.dim(); ++k) idx[k] = k;
    write_csv(out_dir + "/eigenvalues.csv", {"index", "energy", "occupation"},
              {idx, sol.spectrum.energies, sol.spectrum.occupations});

    json rep;
    rep["converged"] = sol.report.converged;
    rep["iterations"] = sol.report.iterations;
    rep["residual_history"] = sol.report.residual_history;
    rep["coupling_g"] = sol.report.coupling_g;
    rep["cutoff"] = sol.report.cutoff;
    rep["seed"] = config.disorder.seed;
    rep["winding"] = config.q;
    if (config.q != 0 && !sol.pair.degenerate())
        rep["winding_measured"] = winding_number(sol.pair, sol.pair.center.x(),
                                                 sol.pair.center.y(),
                                                 max_enclosing_ring(sol.pair));
    rep["max_gap"] = sol.pair.delta.cwiseAbs().maxCoeff();
    write_text_file(out_dir + "/selfconsistency.json", rep.dump(2) + "\n");

    RunManifest manifest(out_dir, config_hash(config));
    manifest.record_seed(config.disorder.seed);
    manifest.record_file("gap_profile.csv");
    manifest.record_file("eigenvalues.csv");
    manifest.record_file("selfconsistency.json");
    manifest.record_timing("solve", now_seconds() - t0);
    manifest.write();

    return {std::move(sol.pair), std::move(sol.spectrum), sol.report};
}

PairField load_gap_profile(const RunConfig& config, const std::string& out_dir) {
    const std::string path = out_dir + "/gap_profile.csv";
    if (!fs::exists(path))
        throw io_error("kernels stage requires the solve artifact gap_profile.csv in " +
                       out_dir + "; run `solve` first");
    std::vector<std::string> header;
    const auto cols = read_csv(path, &header);
    if (cols.size() != 6 ||
        cols[0].size() != static_cast<Eigen::Index>(config.nx) * config.ny)
        throw io_error("gap_profile.csv does not match the configured lattice");
    PairField p;
    p.nx = config.nx;
    p.ny = config.ny;
    p.a = config.a;
    p.center = config.vortex_center();
    p.winding = config.q;
    p.bulk_gap = config.bulk_gap_seed;
    p.coherence_length = config.xi_seed;
    p.analytic = false;
    p.delta.resize(cols[0].size());
    for (Eigen::Index i = 0; i < p.delta.size(); ++i)
        p.delta[i] = cplx(cols[2][i], cols[3][i]);
    return p;
}

KernelArtifacts run_kernels(const RunConfig& config_in, const std::string& out_dir,
                            std::optional<std::uint64_t> seed_override) {
    const RunConfig config = with_seed(config_in, seed_override);
    const double t0 = now_seconds();

    const LatticeModel model = config.make_lattice();
    const PairField pair = load_gap_profile(config, out_dir);
    BdGSpectrum spectrum = occupations_at(diagonalize(assemble_bdg(model, pair)), config.beta);

    const KernelGrids grids = make_grids(config, spectrum);
    const ForceMatrixElements elements =
        force_matrix_elements(model, pair, spectrum, config.fd_step);

    const VecXd j = spectral_function(elements, spectrum, grids.omega, grids.eta_b);
    const DampingKernelResult fpar = damping_kernel(grids.omega, j, grids.tau, config.beta);
    const TransverseVirtualResult bv =
        transverse_coefficient_virtual(elements, spectrum, config.degeneracy_tol);
    const TransverseStateResult bs = transverse_coefficient_state(
        model, pair, spectrum, config.state_fd_step, config.cluster_tol);
    const SpringConstantResult ks =
        spring_constant(model, pair, grids.omega, j, config.g, config.fd_step);
    const OhmicFit ohm = ohmic_reduction(grids.omega, j, grids.omega_fit);

    KernelArtifacts art;
    art.kernels = assemble_action_kernels(ks.k, grids.tau, fpar.f_parallel, bv.b,
                                          grids.omega, j, grids.eta_b, config.beta,
                                          config.disorder.seed);
    art.scalars.b_state = bs.b;
    art.scalars.eta_ohmic = ohm.eta;
    art.scalars.eta_non_ohmic = ohm.non_ohmic;
    art.scalars.k_term_field = ks.term_field;
    art.scalars.k_term_spectral = ks.term_spectral;

    save_kernel_set(out_dir, art.kernels, art.scalars);

    RunManifest manifest(out_dir, config_hash(config));
    manifest.record_seed(config.disorder.seed);
    for (const char* f : {"gap_profile.csv", "eigenvalues.csv", "selfconsistency.json",
                          "j_omega.csv", "f_parallel.csv", "kernels.json"})
        if (fs::exists(out_dir + "/" + f)) manifest.record_file(f);
    manifest.record_timing("kernels", now_seconds() - t0);
    manifest.write();
    return art;
}

void run_dynamics(const RunConfig& config, const std::string& out_dir) {
    ensure_directory(out_dir);
    const double t0 = now_seconds();

    EquationOfMotion eom;
    eom.k_spring = config.dynamics.k_spring;
    eom.b = config.dynamics.b;
    eom.eta = config.dynamics.eta;
    eom.drive = config.dynamics.drive;
    if (config.dynamics.source == "kernels") {
        KernelScalars sc;
        const KernelSet ks = load_kernel_set(out_dir, &sc);
        eom.b = ks.b_transverse;
        eom.k_spring = ks.k_spring;
        eom.eta = sc.eta_ohmic;
    }
    if (config.dynamics.memory) {
        KernelScalars sc;
        const KernelSet ks = load_kernel_set(out_dir, &sc);
        const int n_steps =
            static_cast<int>(std::ceil(config.dynamics.t_final / config.dynamics.dt)) + 1;
        eom.gamma = memory_kernel_from_j(ks.omega_grid, ks.j_of_omega,
                                         config.dynamics.dt, n_steps);
        eom.use_memory = true;
    }

    const TrajectoryRecord rec =
        integrate(eom, config.dynamics.x_init, config.dynamics.t_final, config.dynamics.dt);

    write_csv(out_dir + "/trajectory.csv", {"t", "x", "y", "vx", "vy"},
              {rec.times, rec.positions.col(0), rec.positions.col(1),
               rec.velocities.col(0), rec.velocities.col(1)});

    json summary;
    summary["b"] = eom.b;
    summary["k_spring"] = eom.k_spring;
    summary["eta"] = eom.eta;
    summary["hall_angle"] = (eom.b == 0.0 && eom.eta == 0.0) ? 0.0 : hall_angle(eom);
    summary["scheme"] = rec.scheme;
    summary["dt"] = rec.dt;
    summary["steps"] = static_cast<int>(rec.times.size()) - 1;
    const Eigen::Index last = rec.times.size() - 1;
    summary["final_position"] = {rec.positions(last, 0), rec.positions(last, 1)};
    summary["final_velocity"] = {rec.velocities(last, 0), rec.velocities(last, 1)};
    write_text_file(out_dir + "/dynamics_summary.json", summary.dump(2) + "\n");

    RunManifest manifest(out_dir, config_hash(config));
    manifest.record_file("trajectory.csv");
    manifest.record_file("dynamics_summary.json");
    manifest.record_timing("dynamics", now_seconds() - t0);
    manifest.write();
}

namespace {

struct SeedResult {
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    double b = 0.0, b_state = 0.0, eta = 0.0, k = 0.0;
    bool converged = false;
};

void accumulate(const std::vector<double>& v, double& mean, double& stdev) {
    mean = 0.0;
    stdev = 0.0;
    if (v.empty()) return;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    if (v.size() < 2) return;
    double s2 = 0.0;
    for (double x : v) s2 += (x - mean) * (x - mean);
    stdev = std::sqrt(s2 / (static_cast<double>(v.size()) - 1.0));
}

} // namespace

SweepSummary run_sweep(const RunConfig& config_in, const std::string& out_dir, int threads,
                       std::optional<std::uint64_t> seed_override) {
    const RunConfig base = with_seed(config_in, seed_override);
    if (base.ensemble < 2)
        throw config_error("sweep requires disorder.ensemble >= 2");
    ensure_directory(out_dir);
    const double t0 = now_seconds();

    std::vector<SeedResult> results(base.ensemble);
    std::mutex mtx;
    int next = 0;
    auto worker = [&]() {
        for (;;) {
            int i;
            {
                std::lock_guard<std::mutex> lock(mtx);
                if (next >= base.ensemble) return;
                i = next++;
            }
            SeedResult r;
            r.seed = base.disorder.seed + static_cast<std::uint64_t>(i);
            const std::string seed_dir = out_dir + "/seed_" + std::to_string(r.seed);
            try {
                const SolveArtifacts sa = run_solve(base, seed_dir, r.seed);
                r.converged = sa.report.converged;
                if (!sa.report.converged) throw numeric_error("self-consistency did not converge");
                const KernelArtifacts ka = run_kernels(base, seed_dir, r.seed);
                r.b = ka.kernels.b_transverse;
                r.b_state = ka.scalars.b_state;
                r.eta = ka.scalars.eta_ohmic;
                r.k = ka.kernels.k_spring;
                r.ok = true;
            } catch (const std::exception& e) {
                r.error = e.what();
            }
            {
                std::lock_guard<std::mutex> lock(mtx);
                results[i] = std::move(r);
            }
        }
    };
    const int nw = std::max(1, threads);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    SweepSummary sum;
    sum.requested = base.ensemble;
    std::vector<double> bs, etas, ks_;
    VecXd seed_col(base.ensemble), ok_col(base.ensemble), b_col(base.ensemble),
        bstate_col(base.ensemble), eta_col(base.ensemble), k_col(base.ensemble);
    for (int i = 0; i < base.ensemble; ++i) {
        const SeedResult& r = results[i];
        seed_col[i] = static_cast<double>(r.seed);
        ok_col[i] = r.ok ? 1.0 : 0.0;
        b_col[i] = r.b;
        bstate_col[i] = r.b_state;
        eta_col[i] = r.eta;
        k_col[i] = r.k;
        if (r.ok) {
            bs.push_back(r.b);
            etas.push_back(r.eta);
            ks_.push_back(r.k);
        } else {
            ++sum.failed;
        }
    }
    if (2 * sum.failed > sum.requested)
        throw numeric_error("sweep: more than half of the seeds failed (" +
                            std::to_string(sum.failed) + "/" + std::to_string(sum.requested) + ")");

    accumulate(bs, sum.b_mean, sum.b_stdev);
    accumulate(etas, sum.eta_mean, sum.eta_stdev);
    accumulate(ks_, sum.k_mean, sum.k_stdev);
    const double b_spread = sum.b_mean != 0.0 ? std::abs(sum.b_stdev / sum.b_mean) : 0.0;
    const double eta_spread = sum.eta_mean != 0.0 ? std::abs(sum.eta_stdev / sum.eta_mean) : 0.0;
    sum.decoupling_confirmed = b_spread < 0.05 && eta_spread > 0.20;

    write_csv(out_dir + "/sweep_summary.csv",
              {"seed", "ok", "b_transverse", "b_state", "eta_ohmic", "k_spring"},
              {seed_col, ok_col, b_col, bstate_col, eta_col, k_col});

    json j;
    j["requested"] = sum.requested;
    j["failed"] = sum.failed;
    j["b_mean"] = sum.b_mean;
    j["b_stdev"] = sum.b_stdev;
    j["b_relative_spread"] = b_spread;
    j["eta_mean"] = sum.eta_mean;
    j["eta_stdev"] = sum.eta_stdev;
    j["eta_relative_spread"] = eta_spread;
    j["k_mean"] = sum.k_mean;
    j["k_stdev"] = sum.k_stdev;
    j["decoupling"] = sum.decoupling_confirmed ? "confirmed" : "violated";
    json failures = json::array();
    for (const auto& r : results)
        if (!r.ok) failures.push_back({{"seed", r.seed}, {"error", r.error}});
    j["failures"] = failures;
    write_text_file(out_dir + "/sweep_summary.json", j.dump(2) + "\n");

    RunManifest manifest(out_dir, config_hash(base));
    for (const auto& r : results) manifest.record_seed(r.seed);
    manifest.record_file("sweep_summary.csv");
    manifest.record_file("sweep_summary.json");
    manifest.record_timing("sweep", now_seconds() - t0);
    manifest.write();
    return sum;
}

} // namespace vortexlab
