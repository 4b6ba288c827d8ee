#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ans/dynamics.hpp"

namespace ans {

/// A finite family of states approximating an attractor section at time 0.
struct EnsembleState {
    std::vector<SpectralField> members;
    std::string tag;  // path seed, pullback depth, and which system produced it
    std::uint64_t path_checksum = 0;
    std::vector<std::string> warnings;
};

/// FNV-1a over arbitrary bytes (checksums for manifests and paired-path
/// assertions).
std::uint64_t bytes_checksum(const void* data, std::size_t len);

/// Paired-trajectory Lipschitz/smoothing quotient: integrate v0 and
/// v0 + eps*direction (direction rescaled to unit L2 norm) on the same noise
/// path for time T; return ||difference(T)||^2_{H^{s_out}} / eps^2.
double smoothing_ratio(const EvolutionSpec& spec, const SpectralField& v0, double eps,
                       const SpectralField& direction, double T, int s_out);

struct ConvergenceRow {
    double delta = 0.0;
    double err[4] = {0, 0, 0, 0};  // H^0..H^3 errors at time T
    double T = 0.0;
    std::uint64_t seed = 0;
    bool gated = false;  // admissibility check failed for this delta
};

struct ConvergenceResult {
    std::vector<ConvergenceRow> rows;
    std::vector<std::string> warnings;
    std::uint64_t path_checksum = 0;
};

/// For each delta: integrate the colored system and the white system from
/// the same initial velocity on the same Wiener path, recover the velocities
/// at time T, and tabulate ||u_delta(T) - u(T)||_{H^s} for s = 0..3. Rows
/// whose admissibility check fails are computed anyway and flagged; rows
/// that diverge are dropped with a warning. With control_row set, an extra
/// row tagged delta = 0 drives the colored arm with the white scalar itself,
/// so its errors vanish identically.
ConvergenceResult delta_convergence(const SimParams& base, const SpectralField& u0,
                                    std::uint64_t seed, const std::vector<double>& deltas,
                                    double T, bool control_row = false);

/// M random initial fields (modes up to |j| <= 4, unit L2 norm), a bounded
///-set surrogate. Deterministic in (seed, index).
std::vector<SpectralField> make_cloud(std::shared_ptr<const Grid> g, int M, std::uint64_t seed);

/// Evolve every cloud member from time -t_pb to 0 along the left-extended
/// path; diverging members are dropped with a warning. kind selects the
/// system (delta is used for ColoredV).
EnsembleState pullback_ensemble(const SimParams& base, std::uint64_t seed,
                                const std::vector<SpectralField>& cloud, double t_pb,
                                EvolKind kind, double delta);

/// Largest member-to-member distance in H^s.
double ensemble_diameter(const EnsembleState& e, double s);

/// sup over a in A of min over b in B of ||a - b||_{H^s} (asymmetric).
double hausdorff_semidist(const EnsembleState& a, const EnsembleState& b, double s);

struct BoxDimResult {
    double slope = 0.0;
    double r2 = 1.0;
    std::vector<double> eps;        // the ladder actually used
    std::vector<std::size_t> count;  // greedy cover sizes per rung
};

/// Box-counting estimate in the H^s metric: cover counts from a
/// farthest-point greedy net (seeded at member 0), least-squares slope of
/// log N against log(1/eps). A degenerate cloud reports dimension 0.
BoxDimResult box_counting_dim(const EnsembleState& e, double s,
                              const std::vector<double>& eps_ladder);

struct SemiRow {
    double delta = 0.0;
    double dist = 0.0;  // Hausdorff semi-distance in H to the white ensemble
};

struct SemicontinuityResult {
    std::vector<SemiRow> rows;
    std::vector<std::string> warnings;
    std::uint64_t path_checksum = 0;
};

/// Pullback ensembles for each delta and for the white system on one path
/// and cloud; distance rows quantify the attractor deformation as the noise
/// correlation time shrinks.
SemicontinuityResult semicontinuity_curve(const SimParams& base, std::uint64_t seed,
                                          const std::vector<double>& deltas, double t_pb, int M);

}  // namespace ans
