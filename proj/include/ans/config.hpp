#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ans/dynamics.hpp"

namespace ans {

/// A field built from configuration text: an explicit list of symmetrized
/// divergence-free mode pairs, a seeded band-limited random field, or zero.
struct FieldSpec {
    enum class Kind { Zero, Modes, Random };

    Kind kind = Kind::Zero;
    std::vector<ModeEntry> modes;
    int bandlimit = 4;
    double norm = 1.0;
    std::uint64_t seed = 0;
};

/// Parsed run configuration. Sections the file does not mention keep their
/// defaults; the `has_*` flags remember what was written so the canonical
/// echo reproduces the input semantics exactly.
struct Config {
    // [grid]
    int N = 64;
    double L = 6.283185307179586476925286766559;

    // [physics]
    double nu = 1.0;
    double delta = 0.25;

    // [time]
    double dt = 1e-3;
    double T = 1.0;
    double record_every = 0.1;

    // top level
    std::uint64_t seed = 1;

    // [force] / [noise_intensity] / [initial]
    std::optional<FieldSpec> force;
    std::optional<FieldSpec> noise_intensity;
    std::optional<double> intensity_ratio;  // rescale target for the admissibility ratio
    std::optional<FieldSpec> initial;

    // [sim]
    std::string sim_kind = "colored";  // deterministic | colored | white | direct
    double snapshot_every = 0.0;
    bool skip_gate = false;

    // [noise_check]
    bool has_noise_check = false;
    double nc_T = 2000.0;
    std::vector<double> nc_deltas = {0.5, 0.25, 0.125, 0.0625};

    // [convergence]
    bool has_convergence = false;
    double cv_T = 5.0;
    std::vector<double> cv_deltas = {0.5, 0.25, 0.125, 0.0625};
    bool cv_control = false;

    // [smoothing]
    bool has_smoothing = false;
    double sm_T = 2.0;
    int sm_s = 2;
    std::vector<double> sm_eps = {1e-3, 1e-4, 1e-5};
    std::string sm_kind = "deterministic";
    std::uint64_t sm_dir_seed = 7;

    // [attractor]
    bool has_attractor = false;
    double at_t_pb = 25.0;
    int at_M = 32;
    std::vector<double> at_deltas = {0.5, 0.25, 0.125, 0.0625};
    int at_rungs = 5;

    // [diag]
    bool has_diag = false;
    std::string diag_input;

    // [identities]
    bool has_identities = false;
    int id_count = 100;
    int id_N = 32;
    int id_bandlimit = 10;
};

/// Parses the line-oriented format: `[section]` headers, `key = value`
/// pairs, `#` comments. Unknown sections or keys and malformed or
/// out-of-range values raise ConfigError naming the line.
Config parse_config(const std::string& text);

/// parse_config over the file's contents; the path is quoted in errors.
Config load_config(const std::string& path);

/// Canonical text form. Parsing the result yields an equivalent Config, and
/// emitting again reproduces the text byte for byte.
std::string emit_config(const Config& cfg);

/// Materialize the configured fields on a grid. The forcing defaults to the
/// symmetrized (1,1) mode pair at unit norm; the noise intensity defaults to
/// a band-limited random field; the initial state defaults to zero. When
/// intensity_ratio is set (default 0.5 for the defaulted intensity) the
/// intensity is rescaled so the admissibility ratio equals it.
SpectralField build_force(const Config& cfg, std::shared_ptr<const Grid> g);
SpectralField build_intensity(const Config& cfg, std::shared_ptr<const Grid> g);
SpectralField build_initial(const Config& cfg, std::shared_ptr<const Grid> g);

/// Grid plus physics/time/fields bundled for the integrator.
SimParams make_sim_params(const Config& cfg);

/// Maps "deterministic" | "colored" | "white" | "direct".
EvolKind parse_kind(const std::string& name);

}  // namespace ans
