#include <charconv>
#include <cmath>
#include <fstream>
#include <vector>

#include "config_keys.hpp"
#include "parse_util.hpp"
#include "vtolctl/errors.hpp"
#include "vtolctl/sim.hpp"

namespace vtolctl {

namespace {

using detail::parse_double;
using detail::split_ws;
using detail::trim;

constexpr double kDegToRad = M_PI / 180.0;

std::uint64_t parse_u64(const std::string& tok, const std::string& where) {
    std::uint64_t v = 0;
    const char* b = tok.data();
    const char* e = tok.data() + tok.size();
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc{} || res.ptr != e) {
        throw ParseError(where + ": not a non-negative integer: '" + tok + "'");
    }
    return v;
}

std::vector<double> numbers(const std::vector<std::string>& toks, std::size_t n,
                            const std::string& where) {
    if (toks.size() != n) {
        throw ParseError(where + ": expected " + std::to_string(n) + " value(s), got " +
                         std::to_string(toks.size()));
    }
    std::vector<double> out;
    out.reserve(n);
    for (const auto& t : toks) out.push_back(parse_double(t, where));
    return out;
}

Vec3 vec3_of(const std::vector<double>& v) { return {v[0], v[1], v[2]}; }

// One assignment from either a config file ([section] + key) or a CSV
// metadata line (dotted section.key). The *_dps keys take deg/s (scenario
// files); the *_rps spellings take rad/s (log metadata round trip).
void apply_key(ScenarioConfig& c, const std::string& section, const std::string& key,
               const std::vector<std::string>& toks, const std::string& where) {
    if (section == "plant") {
        if (key == "mass_kg") {
            c.plant.mass = numbers(toks, 1, where)[0];
        } else if (key == "drag_kg_per_m") {
            if (toks.size() == 3) {
                const auto v = numbers(toks, 3, where);
                c.plant.c_d = Mat3::diagonal(v[0], v[1], v[2]);
            } else {
                const auto v = numbers(toks, 9, where);
                for (int i = 0; i < 9; ++i) c.plant.c_d.m[i] = v[i];
            }
        } else if (key == "wind_mps") {
            c.plant.v_w = vec3_of(numbers(toks, 3, where));
        } else if (key == "gravity_mps2") {
            const double g = numbers(toks, 1, where)[0];
            c.plant.g = g;
            c.gains.g = g;
            c.sensors.g = g;
        } else {
            throw ParseError(where + ": unknown key 'plant." + key + "'");
        }
    } else if (section == "sensors") {
        if (key == "mag_field_gauss") {
            c.sensors.r1 = vec3_of(numbers(toks, 3, where));
        } else if (key == "noise_std_pos_m") {
            c.sensors.noise_std_pos = numbers(toks, 1, where)[0];
        } else if (key == "noise_std_vel_mps") {
            c.sensors.noise_std_vel = numbers(toks, 1, where)[0];
        } else if (key == "noise_std_mag_gauss") {
            c.sensors.noise_std_mag = numbers(toks, 1, where)[0];
        } else if (key == "noise_std_acc_mps2") {
            c.sensors.noise_std_acc = numbers(toks, 1, where)[0];
        } else if (key == "noise_std_gyro_dps") {
            c.sensors.noise_std_gyro = numbers(toks, 1, where)[0] * kDegToRad;
        } else if (key == "noise_std_gyro_rps") {
            c.sensors.noise_std_gyro = numbers(toks, 1, where)[0];
        } else if (key == "gyro_bias_dps") {
            c.sensors.gyro_bias = vec3_of(numbers(toks, 3, where)) * kDegToRad;
        } else if (key == "gyro_bias_rps") {
            c.sensors.gyro_bias = vec3_of(numbers(toks, 3, where));
        } else {
            throw ParseError(where + ": unknown key 'sensors." + key + "'");
        }
    } else if (section == "gains") {
        if (key == "k_p") {
            c.gains.k_p = numbers(toks, 1, where)[0];
        } else if (key == "k_v") {
            c.gains.k_v = numbers(toks, 1, where)[0];
        } else if (key == "k_1") {
            c.gains.k_1 = numbers(toks, 1, where)[0];
        } else if (key == "gamma_1") {
            c.gains.gamma_1 = numbers(toks, 1, where)[0];
        } else if (key == "gamma_2") {
            c.gains.gamma_2 = numbers(toks, 1, where)[0];
        } else {
            throw ParseError(where + ": unknown key 'gains." + key + "'");
        }
    } else if (section == "lyapunov") {
        if (key == "gamma") {
            c.lyapunov.gamma = numbers(toks, 1, where)[0];
        } else if (key == "gamma_q") {
            c.lyapunov.gamma_q = numbers(toks, 1, where)[0];
        } else if (key == "k_r") {
            c.lyapunov.k_r = numbers(toks, 1, where)[0];
        } else {
            throw ParseError(where + ": unknown key 'lyapunov." + key + "'");
        }
    } else if (section == "initial") {
        if (key == "position_m") {
            c.initial.p0 = vec3_of(numbers(toks, 3, where));
        } else if (key == "velocity_mps") {
            c.initial.v0 = vec3_of(numbers(toks, 3, where));
        } else if (key == "attitude_wxyz") {
            const auto v = numbers(toks, 4, where);
            const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
            if (!(n > 1e-12)) {
                throw ValidationError(where + ": attitude quaternion has zero norm");
            }
            if (std::abs(n - 1.0) <= 1e-9) {
                c.initial.q0 = UnitQuaternion{v[0], {v[1], v[2], v[3]}}; // keep exact file bits
            } else {
                c.initial.q0 = UnitQuaternion::normalized(v[0], {v[1], v[2], v[3]});
            }
        } else if (key == "velocity_filter_mps") {
            c.initial.v_hat0 = vec3_of(numbers(toks, 3, where));
        } else {
            throw ParseError(where + ": unknown key 'initial." + key + "'");
        }
    } else if (section == "reference") {
        if (key == "position_m") {
            c.p_r = vec3_of(numbers(toks, 3, where));
        } else {
            throw ParseError(where + ": unknown key 'reference." + key + "'");
        }
    } else if (section == "timing") {
        if (key == "t_end_s") {
            c.timing.t_end = numbers(toks, 1, where)[0];
        } else if (key == "physics_dt_s") {
            c.timing.physics_dt = numbers(toks, 1, where)[0];
        } else if (key == "control_dt_s") {
            c.timing.control_dt = numbers(toks, 1, where)[0];
        } else {
            throw ParseError(where + ": unknown key 'timing." + key + "'");
        }
    } else if (section == "run") {
        if (key == "seed") {
            if (toks.size() != 1) {
                throw ParseError(where + ": expected 1 value for run.seed");
            }
            c.sensors.seed = parse_u64(toks[0], where);
        } else {
            throw ParseError(where + ": unknown key 'run." + key + "'");
        }
    } else {
        throw ParseError(where + ": unknown section '" + section + "'");
    }
}

// Shortest decimal text that parses back to the same double.
std::string fmt(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt(const Vec3& v) { return fmt(v.x) + " " + fmt(v.y) + " " + fmt(v.z); }

} // namespace

void apply_config_key(ScenarioConfig& c, const std::string& section, const std::string& key,
                      const std::vector<std::string>& toks, const std::string& where) {
    apply_key(c, section, key, toks, where);
}

ScenarioConfig baseline_config() {
    ScenarioConfig c;
    c.plant.mass = 5.0;
    c.plant.c_d = Mat3::diagonal(0.1, 0.1, 0.05);
    c.plant.v_w = {10.0, 5.0, 0.0};
    c.plant.g = 9.81;

    c.sensors.r1 = {0.18, 0.0, 0.54};
    c.sensors.noise_std_pos = 0.5;
    c.sensors.noise_std_vel = 0.5;
    c.sensors.noise_std_mag = 0.01;
    c.sensors.noise_std_acc = 0.1;
    c.sensors.noise_std_gyro = 0.1 * kDegToRad;
    c.sensors.gyro_bias = Vec3{0.1, 0.05, -0.2} * kDegToRad;
    c.sensors.g = 9.81;
    c.sensors.seed = 1;

    c.gains = ControlGains{}; // k_p 5, k_v 0.1, k_1 5, gamma_1 0.1, gamma_2 0.05, g 9.81
    c.lyapunov = LyapunovWeights{};

    c.initial.p0 = {150.0, 50.0, 0.0};
    c.initial.v0 = Vec3::zero();
    c.initial.q0 = UnitQuaternion::identity();
    c.initial.v_hat0 = Vec3::zero();
    c.p_r = Vec3::zero();

    c.timing.t_end = 60.0;
    c.timing.physics_dt = 1e-3;
    c.timing.control_dt = 5e-3;
    return c;
}

void validate(const ScenarioConfig& c) {
    if (!(c.plant.mass > 0.0)) throw ValidationError("plant: mass must be positive");
    if (!(c.plant.g > 0.0)) throw ValidationError("plant: gravity must be positive");
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if (std::abs(c.plant.c_d(i, j) - c.plant.c_d(j, i)) > 1e-12) {
                throw ValidationError("plant: drag matrix must be symmetric");
            }
        }
    }
    if (!(sym_eigenvalues(c.plant.c_d)[0] > 0.0)) {
        throw ValidationError("plant: drag matrix must be positive definite");
    }
    const SensorParams& s = c.sensors;
    if (s.noise_std_pos < 0.0 || s.noise_std_vel < 0.0 || s.noise_std_mag < 0.0 ||
        s.noise_std_acc < 0.0 || s.noise_std_gyro < 0.0) {
        throw ValidationError("sensors: noise standard deviations must be non-negative");
    }
    validate(c.gains);
    if (!(c.lyapunov.gamma > 0.0 && c.lyapunov.gamma_q > 0.0 && c.lyapunov.k_r > 0.0)) {
        throw ValidationError("lyapunov: weights must be positive");
    }
    if (!(c.timing.t_end > 0.0)) throw ValidationError("timing: t_end must be positive");
    if (!(c.timing.physics_dt > 0.0)) {
        throw ValidationError("timing: physics_dt must be positive");
    }
    substeps_per_tick(c.timing);
}

ScenarioConfig parse_config(std::istream& in, const std::string& name) {
    ScenarioConfig c = baseline_config();
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = name + ":" + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(where + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ParseError(where + ": empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(where + ": empty key");
        if (section.empty()) throw ParseError(where + ": key outside any section");
        apply_key(c, section, key, split_ws(value), where);
    }
    validate(c);
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    return parse_config(in, path);
}

void save_config(const ScenarioConfig& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write config file: " + path);
    out << "# closed-loop scenario (attitude-free VTOL position control)\n";
    out << "\n[plant]\n";
    out << "mass_kg = " << fmt(c.plant.mass) << "\n";
    bool diag = true;
    for (int i = 0; i < 3 && diag; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i != j && c.plant.c_d(i, j) != 0.0) {
                diag = false;
                break;
            }
        }
    }
    out << "drag_kg_per_m =";
    if (diag) {
        for (int i = 0; i < 3; ++i) out << " " << fmt(c.plant.c_d(i, i));
    } else {
        for (int i = 0; i < 9; ++i) out << " " << fmt(c.plant.c_d.m[i]);
    }
    out << "\n";
    out << "wind_mps = " << fmt(c.plant.v_w) << "\n";
    out << "gravity_mps2 = " << fmt(c.plant.g) << "\n";
    out << "\n[sensors]\n";
    out << "mag_field_gauss = " << fmt(c.sensors.r1) << "\n";
    out << "noise_std_pos_m = " << fmt(c.sensors.noise_std_pos) << "\n";
    out << "noise_std_vel_mps = " << fmt(c.sensors.noise_std_vel) << "\n";
    out << "noise_std_mag_gauss = " << fmt(c.sensors.noise_std_mag) << "\n";
    out << "noise_std_acc_mps2 = " << fmt(c.sensors.noise_std_acc) << "\n";
    out << "noise_std_gyro_dps = " << fmt(c.sensors.noise_std_gyro / kDegToRad) << "\n";
    out << "gyro_bias_dps = " << fmt(c.sensors.gyro_bias * (1.0 / kDegToRad)) << "\n";
    out << "\n[gains]\n";
    out << "k_p = " << fmt(c.gains.k_p) << "\n";
    out << "k_v = " << fmt(c.gains.k_v) << "\n";
    out << "k_1 = " << fmt(c.gains.k_1) << "\n";
    out << "gamma_1 = " << fmt(c.gains.gamma_1) << "\n";
    out << "gamma_2 = " << fmt(c.gains.gamma_2) << "\n";
    out << "\n[lyapunov]\n";
    out << "gamma = " << fmt(c.lyapunov.gamma) << "\n";
    out << "gamma_q = " << fmt(c.lyapunov.gamma_q) << "\n";
    out << "k_r = " << fmt(c.lyapunov.k_r) << "\n";
    out << "\n[initial]\n";
    out << "position_m = " << fmt(c.initial.p0) << "\n";
    out << "velocity_mps = " << fmt(c.initial.v0) << "\n";
    out << "attitude_wxyz = " << fmt(c.initial.q0.eta) << " " << fmt(c.initial.q0.q) << "\n";
    out << "velocity_filter_mps = " << fmt(c.initial.v_hat0) << "\n";
    out << "\n[reference]\n";
    out << "position_m = " << fmt(c.p_r) << "\n";
    out << "\n[timing]\n";
    out << "t_end_s = " << fmt(c.timing.t_end) << "\n";
    out << "physics_dt_s = " << fmt(c.timing.physics_dt) << "\n";
    out << "control_dt_s = " << fmt(c.timing.control_dt) << "\n";
    out << "\n[run]\n";
    out << "seed = " << c.sensors.seed << "\n";
    if (!out) throw IoError("failed writing config file: " + path);
}

} // namespace vtolctl
