#include "ans/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "ans/errors.hpp"
#include "ans/operators.hpp"

namespace ans {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool to_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(out);
}

bool to_int(const std::string& s, long long& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtoll(s.c_str(), &end, 10);
    return end == s.c_str() + s.size();
}

bool to_u64(const std::string& s, std::uint64_t& out) {
    if (s.empty() || s[0] == '-') return false;
    char* end = nullptr;
    out = std::strtoull(s.c_str(), &end, 10);
    return end == s.c_str() + s.size();
}

bool to_bool(const std::string& s, bool& out) {
    if (s == "true") {
        out = true;
        return true;
    }
    if (s == "false") {
        out = false;
        return true;
    }
    return false;
}

/// Splits "a, b, c" at top-level commas (commas inside parentheses stay).
std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(trim(cur));
    return parts;
}

std::vector<double> parse_double_list(const std::string& value, int line) {
    std::string s = trim(value);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        fail(line, "expected a bracketed list like [0.5, 0.25]");
    std::vector<double> out;
    for (const std::string& part : split_commas(s.substr(1, s.size() - 2))) {
        double v = 0.0;
        if (!to_double(part, v)) fail(line, "bad number '" + part + "' in list");
        out.push_back(v);
    }
    if (out.empty()) fail(line, "list must not be empty");
    return out;
}

std::vector<ModeEntry> parse_modes(const std::string& value, int line) {
    std::string s = trim(value);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        fail(line, "expected modes = [(jx, jy, re, im), ...]");
    std::vector<ModeEntry> out;
    for (const std::string& part : split_commas(s.substr(1, s.size() - 2))) {
        if (part.size() < 2 || part.front() != '(' || part.back() != ')')
            fail(line, "each mode entry must be a 4-tuple (jx, jy, re, im)");
        std::vector<std::string> nums = split_commas(part.substr(1, part.size() - 2));
        if (nums.size() != 4) fail(line, "each mode entry must be a 4-tuple (jx, jy, re, im)");
        long long jx = 0, jy = 0;
        double re = 0.0, im = 0.0;
        if (!to_int(nums[0], jx) || !to_int(nums[1], jy))
            fail(line, "mode indices must be integers");
        if (!to_double(nums[2], re) || !to_double(nums[3], im))
            fail(line, "mode amplitudes must be numbers");
        if (jx == 0 && jy == 0) fail(line, "mode (0,0) is not allowed");
        out.push_back({static_cast<int>(jx), static_cast<int>(jy), re, im});
    }
    if (out.empty()) fail(line, "modes list must not be empty");
    return out;
}

FieldSpec parse_random_spec(const std::string& value, int line) {
    std::string s = trim(value);
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        fail(line, "expected random = (bandlimit, norm, seed)");
    std::vector<std::string> nums = split_commas(s.substr(1, s.size() - 2));
    if (nums.size() != 3) fail(line, "expected random = (bandlimit, norm, seed)");
    long long b = 0;
    double norm = 0.0;
    std::uint64_t seed = 0;
    if (!to_int(nums[0], b) || b < 1) fail(line, "random bandlimit must be a positive integer");
    if (!to_double(nums[1], norm) || !(norm > 0.0)) fail(line, "random norm must be positive");
    if (!to_u64(nums[2], seed)) fail(line, "random seed must be a nonnegative integer");
    FieldSpec spec;
    spec.kind = FieldSpec::Kind::Random;
    spec.bandlimit = static_cast<int>(b);
    spec.norm = norm;
    spec.seed = seed;
    return spec;
}

/// One field section accumulates at most one of modes/random/zero.
void set_field_spec(std::optional<FieldSpec>& slot, FieldSpec spec, int line) {
    if (slot) fail(line, "field already specified in this section");
    slot = std::move(spec);
}

double need_double(const std::string& value, int line) {
    double v = 0.0;
    if (!to_double(value, v)) fail(line, "expected a number, got '" + value + "'");
    return v;
}

long long need_int(const std::string& value, int line) {
    long long v = 0;
    if (!to_int(value, v)) fail(line, "expected an integer, got '" + value + "'");
    return v;
}

std::uint64_t need_u64(const std::string& value, int line) {
    std::uint64_t v = 0;
    if (!to_u64(value, v)) fail(line, "expected a nonnegative integer, got '" + value + "'");
    return v;
}

bool need_bool(const std::string& value, int line) {
    bool v = false;
    if (!to_bool(value, v)) fail(line, "expected true or false, got '" + value + "'");
    return v;
}

void check_range(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

void validate(const Config& c) {
    check_range(c.N % 2 == 0, "grid.N must be even");
    check_range(c.N >= 8 && c.N <= 1024, "grid.N must be in [8, 1024]");
    check_range(c.L > 0.0, "grid.L must be positive");
    check_range(c.nu > 0.0, "physics.nu must be positive");
    check_range(c.delta > 0.0 && c.delta <= 1.0, "physics.delta must lie in (0, 1]");
    check_range(c.dt > 0.0, "time.dt must be positive");
    check_range(c.T >= 0.0, "time.T must be nonnegative");
    check_range(c.record_every > 0.0, "time.record_every must be positive");
    check_range(c.snapshot_every >= 0.0, "sim.snapshot_every must be nonnegative");
    parse_kind(c.sim_kind);
    if (c.intensity_ratio)
        check_range(*c.intensity_ratio > 0.0, "noise_intensity.ratio must be positive");
    check_range(c.nc_T > 0.0, "noise_check.T must be positive");
    for (double d : c.nc_deltas)
        check_range(d > 0.0 && d <= 1.0, "noise_check.deltas must lie in (0, 1]");
    check_range(c.cv_T >= 0.0, "convergence.T must be nonnegative");
    for (double d : c.cv_deltas)
        check_range(d > 0.0 && d <= 1.0, "convergence.deltas must lie in (0, 1]");
    check_range(c.sm_T >= 0.0, "smoothing.T must be nonnegative");
    check_range(c.sm_s >= 0 && c.sm_s <= 3, "smoothing.s_out must be one of 0..3");
    for (double e : c.sm_eps) check_range(e > 0.0, "smoothing.eps entries must be positive");
    parse_kind(c.sm_kind);
    check_range(c.at_t_pb >= 0.0, "attractor.t_pb must be nonnegative");
    check_range(c.at_M >= 1, "attractor.members must be positive");
    for (double d : c.at_deltas)
        check_range(d > 0.0 && d <= 1.0, "attractor.deltas must lie in (0, 1]");
    check_range(c.at_rungs >= 2, "attractor.rungs must be at least 2");
    if (c.has_diag) check_range(!c.diag_input.empty(), "diag.input must name a directory");
    check_range(c.id_count >= 1, "identities.count must be positive");
    check_range(c.id_N >= 8 && c.id_N <= 1024 && c.id_N % 2 == 0,
                "identities.N must be even and in [8, 1024]");
    check_range(c.id_bandlimit >= 1 && 3 * c.id_bandlimit <= c.id_N,
                "identities.bandlimit must fit under the dealiasing cutoff");
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += fmt(v[i]);
    }
    return out + "]";
}

void emit_field_section(std::string& out, const char* name, const std::optional<FieldSpec>& spec,
                        const std::optional<double>& ratio) {
    if (!spec && !ratio) return;
    out += std::string("[") + name + "]\n";
    if (spec) {
        switch (spec->kind) {
            case FieldSpec::Kind::Zero:
                out += "zero = true\n";
                break;
            case FieldSpec::Kind::Modes: {
                out += "modes = [";
                for (std::size_t i = 0; i < spec->modes.size(); ++i) {
                    const ModeEntry& m = spec->modes[i];
                    if (i) out += ", ";
                    out += "(" + std::to_string(m.jx) + ", " + std::to_string(m.jy) + ", " +
                           fmt(m.re) + ", " + fmt(m.im) + ")";
                }
                out += "]\n";
                break;
            }
            case FieldSpec::Kind::Random:
                out += "random = (" + std::to_string(spec->bandlimit) + ", " + fmt(spec->norm) +
                       ", " + std::to_string(spec->seed) + ")\n";
                break;
        }
    }
    if (ratio) out += "ratio = " + fmt(*ratio) + "\n";
    out += "\n";
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t x = (seed ^ salt) * 0x9E3779B97F4A7C15ull;
    x ^= x >> 32;
    return x;
}

SpectralField build_spec_field(const FieldSpec& spec, std::shared_ptr<const Grid> g) {
    switch (spec.kind) {
        case FieldSpec::Kind::Modes:
            return make_mode_field(std::move(g), spec.modes);
        case FieldSpec::Kind::Random:
            return make_random_field(std::move(g), spec.bandlimit, spec.norm, spec.seed);
        default:
            return SpectralField(std::move(g));
    }
}

}  // namespace

Config parse_config(const std::string& text) {
    Config cfg;
    std::string section;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    int line = 0;

    while (std::getline(in, raw)) {
        ++line;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string s = trim(raw);
        if (s.empty()) continue;

        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            static const std::set<std::string> known = {
                "grid",        "physics",   "time",      "force",
                "noise_intensity", "initial", "sim",       "noise_check",
                "convergence", "smoothing", "attractor", "diag",
                "identities"};
            if (!known.count(section)) fail(line, "unknown section [" + section + "]");
            if (section == "noise_check") cfg.has_noise_check = true;
            if (section == "convergence") cfg.has_convergence = true;
            if (section == "smoothing") cfg.has_smoothing = true;
            if (section == "attractor") cfg.has_attractor = true;
            if (section == "diag") cfg.has_diag = true;
            if (section == "identities") cfg.has_identities = true;
            continue;
        }

        std::size_t eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty()) fail(line, "empty key");
        if (value.empty()) fail(line, "empty value for '" + key + "'");
        if (!seen.insert(section + "." + key).second)
            fail(line, "duplicate key '" + key + "'");

        auto unknown = [&]() {
            if (section.empty()) fail(line, "unknown top-level key '" + key + "'");
            fail(line, "unknown key '" + key + "' in [" + section + "]");
        };

        if (section.empty()) {
            if (key == "seed")
                cfg.seed = need_u64(value, line);
            else
                unknown();
        } else if (section == "grid") {
            if (key == "N")
                cfg.N = static_cast<int>(need_int(value, line));
            else if (key == "L")
                cfg.L = need_double(value, line);
            else
                unknown();
        } else if (section == "physics") {
            if (key == "nu")
                cfg.nu = need_double(value, line);
            else if (key == "delta")
                cfg.delta = need_double(value, line);
            else
                unknown();
        } else if (section == "time") {
            if (key == "dt")
                cfg.dt = need_double(value, line);
            else if (key == "T")
                cfg.T = need_double(value, line);
            else if (key == "record_every")
                cfg.record_every = need_double(value, line);
            else
                unknown();
        } else if (section == "force" || section == "initial" || section == "noise_intensity") {
            std::optional<FieldSpec>& slot = section == "force"     ? cfg.force
                                             : section == "initial" ? cfg.initial
                                                                    : cfg.noise_intensity;
            if (key == "modes") {
                FieldSpec spec;
                spec.kind = FieldSpec::Kind::Modes;
                spec.modes = parse_modes(value, line);
                set_field_spec(slot, std::move(spec), line);
            } else if (key == "random") {
                set_field_spec(slot, parse_random_spec(value, line), line);
            } else if (key == "zero") {
                if (!need_bool(value, line)) fail(line, "zero only accepts true");
                set_field_spec(slot, FieldSpec{}, line);
            } else if (key == "ratio" && section == "noise_intensity") {
                cfg.intensity_ratio = need_double(value, line);
            } else {
                unknown();
            }
        } else if (section == "sim") {
            if (key == "kind")
                cfg.sim_kind = value;
            else if (key == "snapshot_every")
                cfg.snapshot_every = need_double(value, line);
            else if (key == "skip_gate")
                cfg.skip_gate = need_bool(value, line);
            else
                unknown();
        } else if (section == "noise_check") {
            if (key == "T")
                cfg.nc_T = need_double(value, line);
            else if (key == "deltas")
                cfg.nc_deltas = parse_double_list(value, line);
            else
                unknown();
        } else if (section == "convergence") {
            if (key == "T")
                cfg.cv_T = need_double(value, line);
            else if (key == "deltas")
                cfg.cv_deltas = parse_double_list(value, line);
            else if (key == "control")
                cfg.cv_control = need_bool(value, line);
            else
                unknown();
        } else if (section == "smoothing") {
            if (key == "T")
                cfg.sm_T = need_double(value, line);
            else if (key == "s_out")
                cfg.sm_s = static_cast<int>(need_int(value, line));
            else if (key == "eps")
                cfg.sm_eps = parse_double_list(value, line);
            else if (key == "kind")
                cfg.sm_kind = value;
            else if (key == "direction_seed")
                cfg.sm_dir_seed = need_u64(value, line);
            else
                unknown();
        } else if (section == "attractor") {
            if (key == "t_pb")
                cfg.at_t_pb = need_double(value, line);
            else if (key == "members")
                cfg.at_M = static_cast<int>(need_int(value, line));
            else if (key == "deltas")
                cfg.at_deltas = parse_double_list(value, line);
            else if (key == "rungs")
                cfg.at_rungs = static_cast<int>(need_int(value, line));
            else
                unknown();
        } else if (section == "diag") {
            if (key == "input")
                cfg.diag_input = value;
            else
                unknown();
        } else if (section == "identities") {
            if (key == "count")
                cfg.id_count = static_cast<int>(need_int(value, line));
            else if (key == "N")
                cfg.id_N = static_cast<int>(need_int(value, line));
            else if (key == "bandlimit")
                cfg.id_bandlimit = static_cast<int>(need_int(value, line));
            else
                unknown();
        }
    }

    validate(cfg);
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string emit_config(const Config& c) {
    std::string out;
    out += "seed = " + std::to_string(c.seed) + "\n\n";
    out += "[grid]\nN = " + std::to_string(c.N) + "\nL = " + fmt(c.L) + "\n\n";
    out += "[physics]\nnu = " + fmt(c.nu) + "\ndelta = " + fmt(c.delta) + "\n\n";
    out += "[time]\ndt = " + fmt(c.dt) + "\nT = " + fmt(c.T) +
           "\nrecord_every = " + fmt(c.record_every) + "\n\n";
    emit_field_section(out, "force", c.force, std::nullopt);
    emit_field_section(out, "noise_intensity", c.noise_intensity, c.intensity_ratio);
    emit_field_section(out, "initial", c.initial, std::nullopt);
    out += "[sim]\nkind = " + c.sim_kind +
           "\nsnapshot_every = " + fmt(c.snapshot_every) + "\n";
    if (c.skip_gate) out += "skip_gate = true\n";
    out += "\n";
    if (c.has_noise_check)
        out += "[noise_check]\nT = " + fmt(c.nc_T) + "\ndeltas = " + fmt_list(c.nc_deltas) +
               "\n\n";
    if (c.has_convergence) {
        out += "[convergence]\nT = " + fmt(c.cv_T) + "\ndeltas = " + fmt_list(c.cv_deltas) + "\n";
        if (c.cv_control) out += "control = true\n";
        out += "\n";
    }
    if (c.has_smoothing)
        out += "[smoothing]\nT = " + fmt(c.sm_T) + "\ns_out = " + std::to_string(c.sm_s) +
               "\neps = " + fmt_list(c.sm_eps) + "\nkind = " + c.sm_kind +
               "\ndirection_seed = " + std::to_string(c.sm_dir_seed) + "\n\n";
    if (c.has_attractor)
        out += "[attractor]\nt_pb = " + fmt(c.at_t_pb) +
               "\nmembers = " + std::to_string(c.at_M) + "\ndeltas = " + fmt_list(c.at_deltas) +
               "\nrungs = " + std::to_string(c.at_rungs) + "\n\n";
    if (c.has_diag) out += "[diag]\ninput = " + c.diag_input + "\n\n";
    if (c.has_identities)
        out += "[identities]\ncount = " + std::to_string(c.id_count) +
               "\nN = " + std::to_string(c.id_N) +
               "\nbandlimit = " + std::to_string(c.id_bandlimit) + "\n\n";
    return out;
}

SpectralField build_force(const Config& cfg, std::shared_ptr<const Grid> g) {
    if (cfg.force) return build_spec_field(*cfg.force, std::move(g));
    SpectralField f = make_mode_field(g, {{1, 1, 1.0, 0.0}});
    f *= 1.0 / sobolev_norm(f, 0.0);
    return f;
}

SpectralField build_intensity(const Config& cfg, std::shared_ptr<const Grid> g) {
    SpectralField h(g);
    std::optional<double> ratio = cfg.intensity_ratio;
    if (cfg.noise_intensity) {
        h = build_spec_field(*cfg.noise_intensity, g);
    } else {
        h = make_random_field(g, 4, 1.0, mix_seed(cfg.seed, 0x696E74656E736974ull));
        if (!ratio) ratio = 0.5;
    }
    if (ratio) {
        AssumptionReport rep = check_assumption(h, cfg.nu, cfg.delta);
        if (rep.grad_sup > 0.0) h *= *ratio / rep.ratio;
    }
    return h;
}

SpectralField build_initial(const Config& cfg, std::shared_ptr<const Grid> g) {
    if (cfg.initial) return build_spec_field(*cfg.initial, std::move(g));
    return SpectralField(std::move(g));
}

SimParams make_sim_params(const Config& cfg) {
    SimParams p(make_grid(cfg.N, cfg.L));
    p.nu = cfg.nu;
    p.delta = cfg.delta;
    p.dt = cfg.dt;
    p.T = cfg.T;
    p.record_every = cfg.record_every;
    p.snapshot_every = cfg.snapshot_every;
    p.seed = cfg.seed;
    p.f = build_force(cfg, p.grid);
    p.h = build_intensity(cfg, p.grid);
    return p;
}

EvolKind parse_kind(const std::string& name) {
    if (name == "deterministic") return EvolKind::Deterministic;
    if (name == "colored") return EvolKind::ColoredV;
    if (name == "white") return EvolKind::WhiteV;
    if (name == "direct") return EvolKind::DirectSde;
    throw ConfigError("unknown evolution kind '" + name + "'");
}

}  // namespace ans
