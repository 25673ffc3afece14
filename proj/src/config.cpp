#include "vortexlab/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vortexlab/errors.hpp"
#include "vortexlab/report.hpp"

namespace vortexlab {

using nlohmann::json;

namespace {

// collect every violation so a bad config reports all offending fields at once
struct Check {
    std::vector<std::string> problems;
    void require(bool ok, const std::string& field, const std::string& what) {
        if (!ok) problems.push_back(field + ": " + what);
    }
    void finish() const {
        if (problems.empty()) return;
        std::string msg = "invalid config";
        for (const auto& p : problems) msg += "\n  - " + p;
        throw config_error(msg);
    }
};

void reject_unknown_keys(const json& j, const std::string& scope,
                         const std::set<std::string>& known, Check& chk) {
    for (auto it = j.begin(); it != j.end(); ++it)
        chk.require(known.count(it.key()) > 0, scope + "." + it.key(), "unknown key");
}

double parse_beta(const json& j, Check& chk) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        chk.require(false, "temperature.beta", "must be a positive number or \"inf\"");
        return 1.0;
    }
    if (j.is_number()) return j.get<double>();
    chk.require(false, "temperature.beta", "must be a positive number or \"inf\"");
    return 1.0;
}

Vec2 parse_vec2(const json& j, const std::string& field, Check& chk) {
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Vec2(j[0].get<double>(), j[1].get<double>());
    chk.require(false, field, "must be an array of two numbers");
    return Vec2::Zero();
}

} // namespace

Vec2 RunConfig::vortex_center() const {
    if (!center_auto) return center;
    // plaquette centre nearest the lattice midpoint (off-site: the vortex
    // phase is singular at its centre)
    return Vec2(a * (nx / 2 - 0.5), a * (ny / 2 - 0.5));
}

LatticeModel RunConfig::make_lattice() const {
    return build_lattice(nx, ny, a, t_hop, mu, boundary, disorder);
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }

    RunConfig c;
    Check chk;
    reject_unknown_keys(j, "", {"lattice", "disorder", "pairing", "temperature", "vortex",
                                "numerics", "dynamics", "output"}, chk);

    if (j.contains("lattice")) {
        const json& l = j["lattice"];
        reject_unknown_keys(l, "lattice", {"nx", "ny", "a", "t_hop", "mu", "boundary"}, chk);
        if (l.contains("nx")) c.nx = l["nx"].get<int>();
        if (l.contains("ny")) c.ny = l["ny"].get<int>();
        if (l.contains("a")) c.a = l["a"].get<double>();
        if (l.contains("t_hop")) c.t_hop = l["t_hop"].get<double>();
        if (l.contains("mu")) c.mu = l["mu"].get<double>();
        if (l.contains("boundary")) {
            const std::string b = l["boundary"].get<std::string>();
            if (b == "open") c.boundary = Boundary::open;
            else if (b == "periodic") c.boundary = Boundary::periodic;
            else chk.require(false, "lattice.boundary", "must be \"open\" or \"periodic\"");
        }
    }
    if (j.contains("disorder")) {
        const json& d = j["disorder"];
        reject_unknown_keys(d, "disorder", {"strength", "density", "seed", "kind", "ensemble"}, chk);
        if (d.contains("strength")) c.disorder.strength = d["strength"].get<double>();
        if (d.contains("density")) c.disorder.density = d["density"].get<double>();
        if (d.contains("seed")) c.disorder.seed = d["seed"].get<std::uint64_t>();
        if (d.contains("kind")) {
            const std::string k = d["kind"].get<std::string>();
            if (k == "box") c.disorder.kind = DisorderKind::box;
            else if (k == "gaussian") c.disorder.kind = DisorderKind::gaussian;
            else chk.require(false, "disorder.kind", "must be \"box\" or \"gaussian\"");
        }
        if (d.contains("ensemble")) c.ensemble = d["ensemble"].get<int>();
    }
    if (j.contains("pairing")) {
        const json& p = j["pairing"];
        reject_unknown_keys(p, "pairing", {"g", "bulk_gap_seed", "xi_seed", "cutoff"}, chk);
        if (p.contains("g")) c.g = p["g"].get<double>();
        if (p.contains("bulk_gap_seed")) c.bulk_gap_seed = p["bulk_gap_seed"].get<double>();
        if (p.contains("xi_seed")) c.xi_seed = p["xi_seed"].get<double>();
        if (p.contains("cutoff")) c.cutoff = p["cutoff"].get<double>();
    }
    if (j.contains("temperature")) {
        const json& t = j["temperature"];
        reject_unknown_keys(t, "temperature", {"beta"}, chk);
        if (t.contains("beta")) c.beta = parse_beta(t["beta"], chk);
    }
    if (j.contains("vortex")) {
        const json& v = j["vortex"];
        reject_unknown_keys(v, "vortex", {"q", "center"}, chk);
        if (v.contains("q")) c.q = v["q"].get<int>();
        if (v.contains("center") && !v["center"].is_null()) {
            c.center = parse_vec2(v["center"], "vortex.center", chk);
            c.center_auto = false;
        }
    }
    if (j.contains("numerics")) {
        const json& n = j["numerics"];
        reject_unknown_keys(n, "numerics",
                            {"sc_tol", "sc_max_iter", "sc_mixing", "fd_step", "state_fd_step",
                             "eta_b", "omega_max", "n_omega", "n_tau", "tau_max",
                             "degeneracy_tol", "cluster_tol", "omega_fit"}, chk);
        if (n.contains("sc_tol")) c.sc_tol = n["sc_tol"].get<double>();
        if (n.contains("sc_max_iter")) c.sc_max_iter = n["sc_max_iter"].get<int>();
        if (n.contains("sc_mixing")) c.sc_mixing = n["sc_mixing"].get<double>();
        if (n.contains("fd_step")) c.fd_step = n["fd_step"].get<double>();
        if (n.contains("state_fd_step")) c.state_fd_step = n["state_fd_step"].get<double>();
        if (n.contains("eta_b")) c.eta_b = n["eta_b"].get<double>();
        if (n.contains("omega_max")) c.omega_max = n["omega_max"].get<double>();
        if (n.contains("n_omega")) c.n_omega = n["n_omega"].get<int>();
        if (n.contains("n_tau")) c.n_tau = n["n_tau"].get<int>();
        if (n.contains("tau_max")) c.tau_max = n["tau_max"].get<double>();
        if (n.contains("degeneracy_tol")) c.degeneracy_tol = n["degeneracy_tol"].get<double>();
        if (n.contains("cluster_tol")) c.cluster_tol = n["cluster_tol"].get<double>();
        if (n.contains("omega_fit")) c.omega_fit = n["omega_fit"].get<double>();
    }
    if (j.contains("dynamics")) {
        const json& d = j["dynamics"];
        reject_unknown_keys(d, "dynamics",
                            {"source", "b", "k_spring", "eta", "x_init", "t_final", "dt",
                             "memory", "drive"}, chk);
        if (d.contains("source")) c.dynamics.source = d["source"].get<std::string>();
        if (d.contains("b")) c.dynamics.b = d["b"].get<double>();
        if (d.contains("k_spring")) c.dynamics.k_spring = d["k_spring"].get<double>();
        if (d.contains("eta")) c.dynamics.eta = d["eta"].get<double>();
        if (d.contains("x_init")) c.dynamics.x_init = parse_vec2(d["x_init"], "dynamics.x_init", chk);
        if (d.contains("t_final")) c.dynamics.t_final = d["t_final"].get<double>();
        if (d.contains("dt")) c.dynamics.dt = d["dt"].get<double>();
        if (d.contains("memory")) c.dynamics.memory = d["memory"].get<bool>();
        if (d.contains("drive")) {
            const json& dr = d["drive"];
            reject_unknown_keys(dr, "dynamics.drive", {"kind", "amplitude", "omega"}, chk);
            if (dr.contains("kind")) {
                const std::string k = dr["kind"].get<std::string>();
                if (k == "none") c.dynamics.drive.kind = DriveKind::none;
                else if (k == "constant") c.dynamics.drive.kind = DriveKind::constant;
                else if (k == "sinusoidal") c.dynamics.drive.kind = DriveKind::sinusoidal;
                else chk.require(false, "dynamics.drive.kind",
                                 "must be \"none\", \"constant\" or \"sinusoidal\"");
            }
            if (dr.contains("amplitude"))
                c.dynamics.drive.amplitude = parse_vec2(dr["amplitude"], "dynamics.drive.amplitude", chk);
            if (dr.contains("omega")) c.dynamics.drive.omega = dr["omega"].get<double>();
        }
    }
    if (j.contains("output")) {
        const json& o = j["output"];
        reject_unknown_keys(o, "output", {"dir"}, chk);
        if (o.contains("dir")) c.out_dir = o["dir"].get<std::string>();
    }

    // domain validation
    chk.require(c.nx >= 4, "lattice.nx", "must be >= 4");
    chk.require(c.ny >= 4, "lattice.ny", "must be >= 4");
    chk.require(c.a > 0.0, "lattice.a", "must be positive");
    chk.require(c.t_hop > 0.0, "lattice.t_hop", "must be positive");
    chk.require(c.disorder.strength >= 0.0, "disorder.strength", "must be non-negative");
    chk.require(c.disorder.density >= 0.0 && c.disorder.density <= 1.0,
                "disorder.density", "must lie in [0,1]");
    chk.require(c.ensemble >= 1, "disorder.ensemble", "must be >= 1");
    chk.require(c.g > 0.0, "pairing.g", "must be positive");
    chk.require(c.bulk_gap_seed >= 0.0, "pairing.bulk_gap_seed", "must be non-negative");
    chk.require(c.xi_seed > 0.0, "pairing.xi_seed", "must be positive");
    chk.require(c.cutoff > 0.0, "pairing.cutoff", "must be positive");
    chk.require(c.beta > 0.0, "temperature.beta", "must be positive");
    chk.require(c.q == -1 || c.q == 0 || c.q == 1, "vortex.q", "must be -1, 0 or +1");
    chk.require(c.boundary == Boundary::open || c.q == 0,
                "lattice.boundary", "periodic boundary requires vortex.q = 0");
    if (!c.center_auto) {
        const bool in = c.center.x() > 0 && c.center.x() < c.a * (c.nx - 1) &&
                        c.center.y() > 0 && c.center.y() < c.a * (c.ny - 1);
        chk.require(in, "vortex.center", "must lie strictly inside the lattice");
    }
    chk.require(c.sc_tol > 0.0, "numerics.sc_tol", "must be positive");
    chk.require(c.sc_max_iter >= 1, "numerics.sc_max_iter", "must be >= 1");
    chk.require(c.sc_mixing > 0.0 && c.sc_mixing <= 1.0, "numerics.sc_mixing",
                "must lie in (0,1]");
    chk.require(c.fd_step > 0.0, "numerics.fd_step", "must be positive");
    chk.require(c.state_fd_step > 0.0, "numerics.state_fd_step", "must be positive");
    chk.require(c.eta_b >= 0.0, "numerics.eta_b", "must be non-negative (0 = auto)");
    chk.require(c.omega_max >= 0.0, "numerics.omega_max", "must be non-negative (0 = auto)");
    chk.require(c.n_omega >= 8, "numerics.n_omega", "must be >= 8");
    chk.require(c.n_tau >= 2, "numerics.n_tau", "must be >= 2");
    chk.require(c.tau_max >= 0.0, "numerics.tau_max", "must be non-negative (0 = auto)");
    chk.require(!(std::isinf(c.beta) && c.tau_max == 0.0), "numerics.tau_max",
                "required (> 0) when temperature.beta is \"inf\"");
    chk.require(c.degeneracy_tol > 0.0, "numerics.degeneracy_tol", "must be positive");
    chk.require(c.cluster_tol > 0.0, "numerics.cluster_tol", "must be positive");
    chk.require(c.omega_fit >= 0.0, "numerics.omega_fit", "must be non-negative (0 = auto)");
    chk.require(c.dynamics.source == "config" || c.dynamics.source == "kernels",
                "dynamics.source", "must be \"config\" or \"kernels\"");
    chk.require(c.dynamics.t_final > 0.0, "dynamics.t_final", "must be positive");
    chk.require(c.dynamics.dt > 0.0, "dynamics.dt", "must be positive");
    chk.require(!c.out_dir.empty(), "output.dir", "must not be empty");
    chk.finish();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string canonical_json(const RunConfig& c) {
    json j;
    j["lattice"] = {{"nx", c.nx}, {"ny", c.ny}, {"a", c.a}, {"t_hop", c.t_hop}, {"mu", c.mu},
                    {"boundary", c.boundary == Boundary::open ? "open" : "periodic"}};
    j["disorder"] = {{"strength", c.disorder.strength}, {"density", c.disorder.density},
                     {"seed", c.disorder.seed},
                     {"kind", c.disorder.kind == DisorderKind::box ? "box" : "gaussian"},
                     {"ensemble", c.ensemble}};
    j["pairing"] = {{"g", c.g}, {"bulk_gap_seed", c.bulk_gap_seed}, {"xi_seed", c.xi_seed},
                    {"cutoff", c.cutoff}};
    if (std::isinf(c.beta)) j["temperature"] = {{"beta", "inf"}};
    else j["temperature"] = {{"beta", c.beta}};
    const Vec2 ctr = c.vortex_center();
    j["vortex"] = {{"q", c.q}, {"center", {ctr.x(), ctr.y()}}};
    j["numerics"] = {{"sc_tol", c.sc_tol}, {"sc_max_iter", c.sc_max_iter},
                     {"sc_mixing", c.sc_mixing}, {"fd_step", c.fd_step},
                     {"state_fd_step", c.state_fd_step}, {"eta_b", c.eta_b},
                     {"omega_max", c.omega_max}, {"n_omega", c.n_omega}, {"n_tau", c.n_tau},
                     {"tau_max", c.tau_max}, {"degeneracy_tol", c.degeneracy_tol},
                     {"cluster_tol", c.cluster_tol}, {"omega_fit", c.omega_fit}};
    std::string drive_kind = "none";
    if (c.dynamics.drive.kind == DriveKind::constant) drive_kind = "constant";
    if (c.dynamics.drive.kind == DriveKind::sinusoidal) drive_kind = "sinusoidal";
    j["dynamics"] = {{"source", c.dynamics.source}, {"b", c.dynamics.b},
                     {"k_spring", c.dynamics.k_spring}, {"eta", c.dynamics.eta},
                     {"x_init", {c.dynamics.x_init.x(), c.dynamics.x_init.y()}},
                     {"t_final", c.dynamics.t_final}, {"dt", c.dynamics.dt},
                     {"memory", c.dynamics.memory},
                     {"drive", {{"kind", drive_kind},
                                {"amplitude", {c.dynamics.drive.amplitude.x(),
                                               c.dynamics.drive.amplitude.y()}},
                                {"omega", c.dynamics.drive.omega}}}};
    j["output"] = {{"dir", c.out_dir}};
    return j.dump(2);
}

std::string config_hash(const RunConfig& config) {
    return sha256_hex(canonical_json(config));
}

} // namespace vortexlab
