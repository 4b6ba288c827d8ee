#include "ans/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "ans/csv.hpp"
#include "ans/errors.hpp"

namespace ans {

DiagnosticsRecord record_norms(const SpectralField& state, double t, double noise_scalar) {
    DiagnosticsRecord r;
    r.t = t;
    r.h0 = sobolev_norm(state, 0.0);
    r.h1 = sobolev_norm(state, 1.0);
    r.h2 = sobolev_norm(state, 2.0);
    r.h3 = sobolev_norm(state, 3.0);
    r.noise_scalar = noise_scalar;
    r.dissipation = aniso_dissipation(state);
    return r;
}

double energy_residual_update(const DiagnosticsRecord& prev, const DiagnosticsRecord& next,
                              double nu) {
    double dt = next.t - prev.t;
    double denergy = next.h0 * next.h0 - prev.h0 * prev.h0;
    double dissip = nu * dt * (prev.dissipation + next.dissipation);  // 2 nu * trapezoid
    double work = 0.5 * dt * (prev.work_rate + next.work_rate);
    return denergy + dissip - work;
}

EnstrophyReport enstrophy_identity_check(const SpectralField& v) { return enstrophy_quantities(v); }

double dissipated_energy(const Trajectory& traj, double nu) {
    double total = 0.0;
    for (std::size_t i = 1; i < traj.records.size(); ++i) {
        const auto& a = traj.records[i - 1];
        const auto& b = traj.records[i];
        total += nu * (b.t - a.t) * (a.dissipation + b.dissipation);
    }
    return total;
}

namespace {

double quantile(std::vector<double> values, double q) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    double pos = q * static_cast<double>(values.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    std::size_t hi = std::min(lo + 1, values.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

double norm_of(const DiagnosticsRecord& r, int s) {
    switch (s) {
        case 0: return r.h0;
        case 1: return r.h1;
        case 2: return r.h2;
        default: return r.h3;
    }
}

}  // namespace

AbsorbingReport absorbing_statistics(const std::vector<Trajectory>& trajectories,
                                     double radius_quantile) {
    AbsorbingReport rep;
    if (trajectories.empty()) {
        rep.inconclusive = true;
        rep.note = "no trajectories";
        return rep;
    }
    for (const auto& traj : trajectories) {
        if (traj.records.size() < 2 ||
            traj.records.back().t - traj.records.front().t < 4.0) {
            rep.inconclusive = true;
            rep.note = "trajectories shorter than 4 time units";
        }
    }

    for (int s = 0; s < 4; ++s) {
        std::vector<double> late;
        for (const auto& traj : trajectories) {
            std::size_t n = traj.records.size();
            if (n == 0) continue;
            std::size_t tail = std::max<std::size_t>(1, n / 4);
            for (std::size_t i = n - tail; i < n; ++i)
                late.push_back(norm_of(traj.records[i], s));
        }
        double radius = quantile(late, radius_quantile);
        rep.by_norm[s].radius = radius;

        for (const auto& traj : trajectories) {
            double entry = std::numeric_limits<double>::quiet_NaN();
            const auto& recs = traj.records;
            for (std::size_t i = 0; i < recs.size(); ++i) {
                if (norm_of(recs[i], s) > radius) continue;
                // must stay inside for at least one time unit from here
                bool stays = true;
                bool long_enough = false;
                for (std::size_t j = i; j < recs.size(); ++j) {
                    if (norm_of(recs[j], s) > radius) {
                        stays = false;
                        break;
                    }
                    if (recs[j].t - recs[i].t >= 1.0) {
                        long_enough = true;
                        break;
                    }
                }
                if (stays && long_enough) {
                    entry = recs[i].t;
                    break;
                }
                if (stays && !long_enough) break;  // ran out of data inside
            }
            rep.by_norm[s].entry_times.push_back(entry);
        }
    }
    return rep;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    auto out = csv::open_out(path);
    out << "t,h0,h1,h2,h3,energy_residual,noise_scalar\n";
    for (const auto& r : traj.records)
        out << csv::num(r.t) << ',' << csv::num(r.h0) << ',' << csv::num(r.h1) << ','
            << csv::num(r.h2) << ',' << csv::num(r.h3) << ',' << csv::num(r.energy_residual)
            << ',' << csv::num(r.noise_scalar) << '\n';
}

Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ResourceError("cannot open trajectory file: " + path);
    Trajectory traj;
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,h0", 0) != 0)
        throw InvariantError("not a trajectory CSV: " + path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        DiagnosticsRecord r;
        char comma;
        ss >> r.t >> comma >> r.h0 >> comma >> r.h1 >> comma >> r.h2 >> comma >> r.h3 >> comma >>
            r.energy_residual >> comma >> r.noise_scalar;
        if (ss.fail()) throw InvariantError("malformed trajectory row in " + path);
        traj.records.push_back(r);
    }
    return traj;
}

}  // namespace ans
