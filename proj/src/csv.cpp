#include <array>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "config_keys.hpp"
#include "parse_util.hpp"
#include "vtolctl/errors.hpp"
#include "vtolctl/sim.hpp"

namespace vtolctl {

namespace {

using detail::fmt17;
using detail::parse_double;
using detail::split_ws;
using detail::trim;

constexpr const char* kMagic = "# vtolctl run log v1";

constexpr std::array<const char*, 55> kColumns = {
    "t",
    "p_x", "p_y", "p_z",
    "v_x", "v_y", "v_z",
    "q_w", "q_x", "q_y", "q_z",
    "delta_x", "delta_y", "delta_z",
    "r2_x", "r2_y", "r2_z",
    "p_meas_x", "p_meas_y", "p_meas_z",
    "v_meas_x", "v_meas_y", "v_meas_z",
    "b1_x", "b1_y", "b1_z",
    "b2_x", "b2_y", "b2_z",
    "u_t",
    "omega_cmd_x", "omega_cmd_y", "omega_cmd_z",
    "omega_applied_x", "omega_applied_y", "omega_applied_z",
    "mu_d_x", "mu_d_y", "mu_d_z",
    "q_d_w", "q_d_x", "q_d_y", "q_d_z",
    "v_hat_x", "v_hat_y", "v_hat_z",
    "psi_x", "psi_y", "psi_z",
    "lyapunov_v",
    "tilde_eta",
    "tilde_r2_x", "tilde_r2_y", "tilde_r2_z",
    "w_min_eig",
};

std::string header_line() {
    std::string out;
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
        if (i) out += ',';
        out += kColumns[i];
    }
    return out;
}

void record_values(const LogRecord& r, std::array<double, 55>& v) {
    std::size_t i = 0;
    auto put = [&](double x) { v[i++] = x; };
    auto put3 = [&](const Vec3& x) { put(x.x); put(x.y); put(x.z); };
    auto put4 = [&](const UnitQuaternion& x) { put(x.eta); put3(x.q); };
    put(r.t);
    put3(r.p);
    put3(r.v);
    put4(r.q);
    put3(r.delta);
    put3(r.r2);
    put3(r.p_meas);
    put3(r.v_meas);
    put3(r.b1);
    put3(r.b2);
    put(r.u_t);
    put3(r.omega_cmd);
    put3(r.omega_applied);
    put3(r.mu_d);
    put4(r.q_d);
    put3(r.v_hat);
    put3(r.psi);
    put(r.lyapunov_v);
    put(r.tilde_eta);
    put3(r.tilde_r2);
    put(r.w_min_eig);
}

LogRecord record_from_values(const std::array<double, 55>& v) {
    std::size_t i = 0;
    auto get = [&]() { return v[i++]; };
    auto get3 = [&]() {
        Vec3 x;
        x.x = get();
        x.y = get();
        x.z = get();
        return x;
    };
    auto get4 = [&]() {
        UnitQuaternion x;
        x.eta = get();
        x.q = get3();
        return x;
    };
    LogRecord r;
    r.t = get();
    r.p = get3();
    r.v = get3();
    r.q = get4();
    r.delta = get3();
    r.r2 = get3();
    r.p_meas = get3();
    r.v_meas = get3();
    r.b1 = get3();
    r.b2 = get3();
    r.u_t = get();
    r.omega_cmd = get3();
    r.omega_applied = get3();
    r.mu_d = get3();
    r.q_d = get4();
    r.v_hat = get3();
    r.psi = get3();
    r.lyapunov_v = get();
    r.tilde_eta = get();
    r.tilde_r2 = get3();
    r.w_min_eig = get();
    return r;
}

bool diagonal(const Mat3& m) {
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            if (r != c && m(r, c) != 0.0) return false;
        }
    }
    return true;
}

std::string fmt3(const Vec3& v) {
    return fmt17(v.x) + " " + fmt17(v.y) + " " + fmt17(v.z);
}

void write_metadata(std::ostream& out, const ScenarioConfig& c, std::size_t rows) {
    auto kv = [&](const char* key, const std::string& value) {
        out << "# " << key << " = " << value << "\n";
    };
    kv("plant.mass_kg", fmt17(c.plant.mass));
    if (diagonal(c.plant.c_d)) {
        kv("plant.drag_kg_per_m", fmt17(c.plant.c_d(0, 0)) + " " + fmt17(c.plant.c_d(1, 1)) +
                                      " " + fmt17(c.plant.c_d(2, 2)));
    } else {
        std::string all;
        for (int i = 0; i < 9; ++i) {
            if (i) all += ' ';
            all += fmt17(c.plant.c_d.m[i]);
        }
        kv("plant.drag_kg_per_m", all);
    }
    kv("plant.wind_mps", fmt3(c.plant.v_w));
    kv("plant.gravity_mps2", fmt17(c.plant.g));
    kv("sensors.mag_field_gauss", fmt3(c.sensors.r1));
    kv("sensors.noise_std_pos_m", fmt17(c.sensors.noise_std_pos));
    kv("sensors.noise_std_vel_mps", fmt17(c.sensors.noise_std_vel));
    kv("sensors.noise_std_mag_gauss", fmt17(c.sensors.noise_std_mag));
    kv("sensors.noise_std_acc_mps2", fmt17(c.sensors.noise_std_acc));
    kv("sensors.noise_std_gyro_rps", fmt17(c.sensors.noise_std_gyro));
    kv("sensors.gyro_bias_rps", fmt3(c.sensors.gyro_bias));
    kv("gains.k_p", fmt17(c.gains.k_p));
    kv("gains.k_v", fmt17(c.gains.k_v));
    kv("gains.k_1", fmt17(c.gains.k_1));
    kv("gains.gamma_1", fmt17(c.gains.gamma_1));
    kv("gains.gamma_2", fmt17(c.gains.gamma_2));
    kv("lyapunov.gamma", fmt17(c.lyapunov.gamma));
    kv("lyapunov.gamma_q", fmt17(c.lyapunov.gamma_q));
    kv("lyapunov.k_r", fmt17(c.lyapunov.k_r));
    kv("initial.position_m", fmt3(c.initial.p0));
    kv("initial.velocity_mps", fmt3(c.initial.v0));
    kv("initial.attitude_wxyz", fmt17(c.initial.q0.eta) + " " + fmt3(c.initial.q0.q));
    kv("initial.velocity_filter_mps", fmt3(c.initial.v_hat0));
    kv("reference.position_m", fmt3(c.p_r));
    kv("timing.t_end_s", fmt17(c.timing.t_end));
    kv("timing.physics_dt_s", fmt17(c.timing.physics_dt));
    kv("timing.control_dt_s", fmt17(c.timing.control_dt));
    kv("run.seed", std::to_string(c.sensors.seed));
    kv("rows", std::to_string(rows));
}

} // namespace

void export_csv(const RunLog& log, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write CSV file: " + path);
    out << kMagic << "\n";
    write_metadata(out, log.config, log.records.size());
    out << header_line() << "\n";
    std::array<double, 55> vals{};
    std::string line;
    for (const LogRecord& rec : log.records) {
        record_values(rec, vals);
        line.clear();
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i) line += ',';
            line += fmt17(vals[i]);
        }
        out << line << "\n";
    }
    if (!out) throw IoError("failed writing CSV file: " + path);
}

RunLog import_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open CSV file: " + path);

    std::string line;
    if (!std::getline(in, line) || trim(line) != kMagic) {
        throw ParseError(path + ": not a run-log CSV (missing magic first line)");
    }

    RunLog log;
    log.config = baseline_config();
    int lineno = 1;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = path + ":" + std::to_string(lineno);
        if (!line.empty() && line.front() == '#') {
            std::string body = trim(line.substr(1));
            const auto eq = body.find('=');
            if (eq == std::string::npos) continue; // free-form comment
            const std::string key = trim(body.substr(0, eq));
            const std::string value = trim(body.substr(eq + 1));
            if (key == "rows") continue; // informational
            const auto dot = key.find('.');
            if (dot == std::string::npos) {
                throw ParseError(where + ": metadata key '" + key + "' is not section.key");
            }
            apply_config_key(log.config, key.substr(0, dot), key.substr(dot + 1),
                             split_ws(value), where);
            continue;
        }
        if (!saw_header) {
            if (trim(line) != header_line()) {
                throw ParseError(where + ": unexpected CSV header");
            }
            saw_header = true;
            continue;
        }
        if (trim(line).empty()) continue;
        std::array<double, 55> vals{};
        std::size_t col = 0;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            const std::string tok =
                line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (col >= vals.size()) throw ParseError(where + ": too many columns");
            vals[col++] = parse_double(trim(tok), where);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (col != vals.size()) {
            throw ParseError(where + ": expected " + std::to_string(vals.size()) +
                             " columns, got " + std::to_string(col));
        }
        log.records.push_back(record_from_values(vals));
    }
    if (!saw_header) throw ParseError(path + ": missing CSV header row");
    validate(log.config);
    return log;
}

} // namespace vtolctl
