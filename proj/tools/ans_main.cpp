#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ans/config.hpp"
#include "ans/csv.hpp"
#include "ans/diagnostics.hpp"
#include "ans/dynamics.hpp"
#include "ans/errors.hpp"
#include "ans/experiments.hpp"
#include "ans/noise.hpp"
#include "ans/operators.hpp"
#include "ans/snapshot.hpp"
#include "ans/version.hpp"

namespace fs = std::filesystem;
using namespace ans;

namespace {

struct CliOpts {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    bool force = false;
    bool quiet = false;
    std::string command_line;
};

void say(const CliOpts& o, const std::string& msg) {
    if (!o.quiet) std::cout << msg << "\n";
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot open output file: " + path);
    out << text;
}

void write_manifest(const CliOpts& o, const Config& cfg, std::uint64_t checksum) {
    std::string text;
    text += std::string("# ") + kVersion + "\n";
    text += "# command: " + o.command_line + "\n";
    text += "# path checksum: " + std::to_string(checksum) + "\n\n";
    text += emit_config(cfg);
    write_text((fs::path(o.out) / "manifest.txt").string(), text);
}

void write_warnings(const CliOpts& o, const std::vector<std::string>& warnings) {
    if (warnings.empty()) return;
    std::string text;
    for (const std::string& w : warnings) {
        text += w;
        text += "\n";
        say(o, "warning: " + w);
    }
    write_text((fs::path(o.out) / "warnings.txt").string(), text);
}

std::string out_file(const CliOpts& o, const std::string& name) {
    return (fs::path(o.out) / name).string();
}

std::uint64_t series_checksum(const NoiseSeries& ns) {
    return bytes_checksum(ns.dw.data(), ns.dw.size() * sizeof(double));
}

/// The simulated state for the conjugated systems is v = u - scalar * h;
/// converts the configured initial velocity accordingly.
SpectralField initial_state(const SpectralField& u0, EvolKind kind, const NoiseSeries* ns,
                            const SpectralField& h) {
    SpectralField v0 = u0;
    if (kind == EvolKind::ColoredV) v0.axpy(-ns->y.front(), h);
    if (kind == EvolKind::WhiteV) v0.axpy(-ns->z.front(), h);
    return v0;
}

std::uint64_t cmd_simulate(const Config& cfg, const CliOpts& o) {
    SimParams p = make_sim_params(cfg);
    EvolKind kind = parse_kind(cfg.sim_kind);

    EvolutionSpec spec(p);
    spec.kind = kind;
    spec.force_gate = cfg.skip_gate;
    std::uint64_t checksum = 0;
    if (kind != EvolKind::Deterministic) {
        spec.noise = std::make_shared<NoiseSeries>(
            make_noise_series(cfg.seed, 0.0, p.T, p.dt, p.delta));
        checksum = series_checksum(*spec.noise);
    }

    SpectralField u0 = build_initial(cfg, p.grid);
    SpectralField v0 = initial_state(u0, kind, spec.noise.get(), p.h);

    Trajectory traj = simulate(spec, v0);
    write_trajectory_csv(traj, out_file(o, "trajectory.csv"));
    say(o, "wrote trajectory.csv (" + std::to_string(traj.records.size()) + " records)");

    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        char name[40];
        std::snprintf(name, sizeof name, "snapshot_%06zu.ans", i);
        write_snapshot(traj.snapshots[i].second, out_file(o, name), traj.snapshots[i].first);
    }
    if (!traj.snapshots.empty())
        say(o, "wrote " + std::to_string(traj.snapshots.size()) + " snapshots");
    write_warnings(o, traj.warnings);
    return checksum;
}

std::uint64_t cmd_noise_check(const Config& cfg, const CliOpts& o) {
    NoiseSeries ns = make_noise_series(cfg.seed, 0.0, cfg.nc_T, cfg.dt, cfg.delta);

    auto var_of = [](const std::vector<double>& x) {
        double m = 0.0, m2 = 0.0;
        for (double v : x) {
            m += v;
            m2 += v * v;
        }
        m /= static_cast<double>(x.size());
        m2 /= static_cast<double>(x.size());
        return m2 - m * m;
    };
    const double pi = 3.14159265358979323846;
    double zeta_var = var_of(ns.zeta);
    double abs_zeta = moment_estimate(ns.zeta, 1.0, 0, ns.zeta.size());
    double y_var = var_of(ns.y);
    double z_var = var_of(ns.z);

    struct Row {
        const char* name;
        double est, expect;
    } rows[] = {
        {"zeta_variance", zeta_var, 1.0 / (2.0 * cfg.delta)},
        {"abs_zeta_mean", abs_zeta, 1.0 / std::sqrt(pi * cfg.delta)},
        {"y_variance", y_var, 1.0 / (2.0 * (1.0 + cfg.delta))},
        {"z_variance", z_var, 0.5},
    };
    std::ofstream m = csv::open_out(out_file(o, "moments.csv"));
    m << "quantity,estimate,expected,rel_err\n";
    for (const Row& r : rows)
        m << r.name << "," << csv::num(r.est) << "," << csv::num(r.expect) << ","
          << csv::num(std::abs(r.est - r.expect) / std::abs(r.expect)) << "\n";
    say(o, "wrote moments.csv");

    WienerPath path = sample_wiener(cfg.seed, 0.0, cfg.nc_T, cfg.dt);
    std::vector<SupDiffRow> sup = noise_convergence(path, cfg.nc_deltas);
    std::ofstream s = csv::open_out(out_file(o, "supdiff.csv"));
    s << "delta,sup_diff,t_at_sup\n";
    for (const SupDiffRow& r : sup)
        s << csv::num(r.delta) << "," << csv::num(r.sup_diff) << "," << csv::num(r.t_at_sup)
          << "\n";
    say(o, "wrote supdiff.csv");
    return series_checksum(ns);
}

std::uint64_t cmd_converge(const Config& cfg, const CliOpts& o) {
    SimParams p = make_sim_params(cfg);
    SpectralField u0 = build_initial(cfg, p.grid);
    ConvergenceResult res =
        delta_convergence(p, u0, cfg.seed, cfg.cv_deltas, cfg.cv_T, cfg.cv_control);

    std::ofstream out = csv::open_out(out_file(o, "convergence.csv"));
    out << "delta,err_h0,err_h1,err_h2,err_h3,T,seed\n";
    std::vector<std::string> warnings = res.warnings;
    for (const ConvergenceRow& r : res.rows) {
        out << csv::num(r.delta) << "," << csv::num(r.err[0]) << "," << csv::num(r.err[1]) << ","
            << csv::num(r.err[2]) << "," << csv::num(r.err[3]) << "," << csv::num(r.T) << ","
            << csv::num(r.seed) << "\n";
        if (r.gated) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "delta=%g fails the admissibility check", r.delta);
            warnings.emplace_back(buf);
        }
    }
    say(o, "wrote convergence.csv (" + std::to_string(res.rows.size()) + " rows)");
    write_warnings(o, warnings);
    return res.path_checksum;
}

std::uint64_t cmd_smoothing(const Config& cfg, const CliOpts& o) {
    SimParams p = make_sim_params(cfg);
    p.T = cfg.sm_T;
    EvolKind kind = parse_kind(cfg.sm_kind);

    EvolutionSpec spec(p);
    spec.kind = kind;
    spec.force_gate = cfg.skip_gate;
    std::uint64_t checksum = 0;
    if (kind != EvolKind::Deterministic) {
        spec.noise = std::make_shared<NoiseSeries>(
            make_noise_series(cfg.seed, 0.0, cfg.sm_T, p.dt, p.delta));
        checksum = series_checksum(*spec.noise);
    }

    SpectralField u0 = build_initial(cfg, p.grid);
    SpectralField v0 = initial_state(u0, kind, spec.noise.get(), p.h);
    SpectralField direction = make_random_field(p.grid, 4, 1.0, cfg.sm_dir_seed);

    std::ofstream out = csv::open_out(out_file(o, "smoothing.csv"));
    out << "eps,ratio,s_out,T\n";
    for (double eps : cfg.sm_eps) {
        double ratio = smoothing_ratio(spec, v0, eps, direction, cfg.sm_T, cfg.sm_s);
        out << csv::num(eps) << "," << csv::num(ratio) << "," << csv::num(cfg.sm_s) << ","
            << csv::num(cfg.sm_T) << "\n";
        say(o, "eps=" + csv::num(eps) + " ratio=" + csv::num(ratio));
    }
    return checksum;
}

std::uint64_t cmd_attractor(const Config& cfg, const CliOpts& o) {
    SimParams p = make_sim_params(cfg);
    std::vector<SpectralField> cloud = make_cloud(p.grid, cfg.at_M, cfg.seed);
    EnsembleState white =
        pullback_ensemble(p, cfg.seed, cloud, cfg.at_t_pb, EvolKind::WhiteV, 1.0);
    std::vector<std::string> warnings = white.warnings;

    std::ofstream out = csv::open_out(out_file(o, "attractor.csv"));
    out << "delta,hausdorff_h,boxdim_h,boxdim_h2,fit_r2\n";
    for (double d : cfg.at_deltas) {
        EnsembleState ens =
            pullback_ensemble(p, cfg.seed, cloud, cfg.at_t_pb, EvolKind::ColoredV, d);
        if (ens.path_checksum != white.path_checksum)
            throw InvariantError("arms of the comparison are not on one path");
        for (const std::string& w : ens.warnings) warnings.push_back(w);

        double dist = hausdorff_semidist(ens, white, 0.0);
        auto dim_in = [&](double s) {
            double diam = ensemble_diameter(ens, s);
            BoxDimResult bd;
            if (diam > 0.0 && ens.members.size() > 1) {
                std::vector<double> ladder;
                for (int r = 1; r <= cfg.at_rungs; ++r)
                    ladder.push_back(diam / std::pow(2.0, r));
                bd = box_counting_dim(ens, s, ladder);
            }
            return bd;
        };
        BoxDimResult bd_h = dim_in(0.0);
        BoxDimResult bd_h2 = dim_in(2.0);
        out << csv::num(d) << "," << csv::num(dist) << "," << csv::num(bd_h.slope) << ","
            << csv::num(bd_h2.slope) << "," << csv::num(bd_h.r2) << "\n";
        say(o, "delta=" + csv::num(d) + " dist=" + csv::num(dist));
    }
    say(o, "wrote attractor.csv");
    write_warnings(o, warnings);
    return white.path_checksum;
}

std::uint64_t cmd_diag(const Config& cfg, const CliOpts& o) {
    fs::path in(cfg.diag_input);
    bool any = false;

    if (fs::exists(in / "trajectory.csv")) {
        std::vector<Trajectory> runs;
        runs.push_back(read_trajectory_csv((in / "trajectory.csv").string()));
        AbsorbingReport rep = absorbing_statistics(runs);
        std::ofstream out = csv::open_out(out_file(o, "absorbing.csv"));
        out << "norm,radius,entry_time,inconclusive\n";
        const char* names[4] = {"h0", "h1", "h2", "h3"};
        for (int s = 0; s < 4; ++s)
            out << names[s] << "," << csv::num(rep.by_norm[s].radius) << ","
                << csv::num(rep.by_norm[s].entry_times.at(0)) << ","
                << (rep.inconclusive ? "true" : "false") << "\n";
        say(o, "wrote absorbing.csv" + (rep.note.empty() ? "" : " (" + rep.note + ")"));
        any = true;
    }

    std::vector<fs::path> snaps;
    if (fs::is_directory(in))
        for (const auto& entry : fs::directory_iterator(in)) {
            std::string name = entry.path().filename().string();
            if (name.rfind("snapshot_", 0) == 0 && name.size() > 4 &&
                name.substr(name.size() - 4) == ".ans")
                snaps.push_back(entry.path());
        }
    std::sort(snaps.begin(), snaps.end());
    if (!snaps.empty()) {
        std::ofstream out = csv::open_out(out_file(o, "diag.csv"));
        out << "t,h0,h1,h2,h3,div_max,enstrophy_rel_err,coercivity_excess,max_u\n";
        for (const fs::path& path : snaps) {
            double t = 0.0;
            SpectralField f = read_snapshot(path.string(), &t);
            DiagnosticsRecord rec = record_norms(f, t, 0.0);
            EnstrophyReport er = enstrophy_identity_check(f);
            out << csv::num(rec.t) << "," << csv::num(rec.h0) << "," << csv::num(rec.h1) << ","
                << csv::num(rec.h2) << "," << csv::num(rec.h3) << ","
                << csv::num(divergence_max(f)) << "," << csv::num(er.rel_err) << ","
                << csv::num(er.lhs - er.half_a2) << "," << csv::num(max_velocity(f)) << "\n";
        }
        say(o, "wrote diag.csv (" + std::to_string(snaps.size()) + " snapshots)");
        any = true;
    }

    if (!any)
        throw ConfigError("nothing to diagnose: no trajectory.csv or snapshot files in '" +
                          cfg.diag_input + "'");
    return 0;
}

std::uint64_t cmd_identities(const Config& cfg, const CliOpts& o) {
    auto g = make_grid(cfg.id_N, cfg.L);
    std::ofstream out = csv::open_out(out_file(o, "identities.csv"));
    out << "index,enstrophy_rel_err,coercivity_excess,grad_ratio,advect_ip,advect_scale\n";
    double worst_rel = 0.0, worst_excess = std::numeric_limits<double>::infinity(),
           worst_grad = 0.0, worst_adv = 0.0;
    for (int i = 0; i < cfg.id_count; ++i) {
        std::uint64_t fs_seed = cfg.seed + static_cast<std::uint64_t>(i);
        SpectralField u = make_random_field(g, cfg.id_bandlimit, 1.0, fs_seed);
        EnstrophyReport er = enstrophy_identity_check(u);
        double h1 = sobolev_norm(u, 1.0);
        double grad_ratio = (h1 * h1) / (2.0 * aniso_dissipation(u));
        SpectralField bu = nonlinear_term(u);
        double ip = std::abs(inner_product(bu, u));
        double scale = sobolev_norm(u, 0.0) * h1 * h1;
        out << csv::num(i) << "," << csv::num(er.rel_err) << ","
            << csv::num(er.lhs - er.half_a2) << "," << csv::num(grad_ratio) << ","
            << csv::num(ip) << "," << csv::num(scale) << "\n";
        worst_rel = std::max(worst_rel, er.rel_err);
        worst_excess = std::min(worst_excess, er.lhs - er.half_a2);
        worst_grad = std::max(worst_grad, grad_ratio);
        worst_adv = std::max(worst_adv, ip / scale);
    }
    say(o, "worst enstrophy rel_err " + csv::num(worst_rel) + ", min coercivity excess " +
               csv::num(worst_excess) + ", max grad ratio " + csv::num(worst_grad) +
               ", max advection ip/scale " + csv::num(worst_adv));
    return 0;
}

int run_command(const CliOpts& o,
                const std::function<std::uint64_t(const Config&, const CliOpts&)>& body) {
    std::error_code ec;
    fs::create_directories(o.out, ec);
    if (ec) {
        std::cerr << "error: cannot create output directory '" << o.out << "': " << ec.message()
                  << "\n";
        return 1;
    }
    auto report = [&](const std::string& what, int code) {
        std::cerr << "error: " << what << "\n";
        try {
            write_text((fs::path(o.out) / "error.txt").string(), what + "\n");
        } catch (const std::exception&) {
        }
        return code;
    };
    try {
        Config cfg = load_config(o.config);
        if (o.seed) cfg.seed = *o.seed;
        if (o.force) cfg.skip_gate = true;
        std::uint64_t checksum = body(cfg, o);
        write_manifest(o, cfg, checksum);
        return 0;
    } catch (const AssumptionError& e) {
        return report(e.what(), 3);
    } catch (const DivergenceError& e) {
        return report(e.what(), 2);
    } catch (const ConfigError& e) {
        return report(e.what(), 1);
    } catch (const std::exception& e) {
        return report(e.what(), 1);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral laboratory for the stochastic anisotropic "
                 "Navier-Stokes equations on the periodic torus"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CliOpts opts;
    for (int i = 0; i < argc; ++i) {
        if (i) opts.command_line += " ";
        opts.command_line += argv[i];
    }

    struct Cmd {
        const char* name;
        const char* desc;
        std::function<std::uint64_t(const Config&, const CliOpts&)> body;
    };
    const std::vector<Cmd> commands = {
        {"simulate", "Integrate one trajectory and record diagnostics", cmd_simulate},
        {"noise-check", "Sample the noise processes and tabulate their moments",
         cmd_noise_check},
        {"converge", "Colored-to-white solution convergence across a delta ladder",
         cmd_converge},
        {"smoothing", "Paired-trajectory smoothing ratios over an epsilon sweep",
         cmd_smoothing},
        {"attractor", "Pullback ensembles, Hausdorff distances, and box dimensions",
         cmd_attractor},
        {"diag", "Recompute diagnostics from a finished run directory", cmd_diag},
        {"identities", "Spectral identity suite on random fields", cmd_identities},
    };

    for (const Cmd& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.desc);
        sub->add_option("--config", opts.config, "Configuration file")->required();
        sub->add_option("--out", opts.out, "Output directory")->required();
        sub->add_option("--seed", opts.seed, "Override the configured seed");
        sub->add_flag("--force", opts.force, "Proceed past the admissibility gate");
        sub->add_flag("--quiet", opts.quiet, "Suppress progress output");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    const std::string name = app.get_subcommands().at(0)->get_name();
    for (const Cmd& c : commands)
        if (name == c.name) return run_command(opts, c.body);
    std::cerr << "error: unknown subcommand '" << name << "'\n";
    return 1;
}
