#include "vtolctl/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "vtolctl/errors.hpp"

namespace vtolctl {

std::size_t control_ticks(const ScenarioConfig& config) {
    // The 1e-9 slack keeps exact multiples of control_dt from gaining a tick;
    // any positive horizon still runs at least one.
    const double raw = std::ceil(config.timing.t_end / config.timing.control_dt - 1e-9);
    return std::max<std::size_t>(1, static_cast<std::size_t>(raw));
}

std::size_t expected_rows(const ScenarioConfig& config) {
    return control_ticks(config) + 1;
}

int substeps_per_tick(const Timing& timing) {
    const double ratio = timing.control_dt / timing.physics_dt;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * rounded) {
        throw ValidationError("timing: control_dt must be an integer multiple of physics_dt");
    }
    return static_cast<int>(rounded);
}

bool disturbance_free(const ScenarioConfig& config) {
    const SensorParams& s = config.sensors;
    return config.plant.v_w.squared_norm() == 0.0 && s.noise_std_pos == 0.0 &&
           s.noise_std_vel == 0.0 && s.noise_std_mag == 0.0 && s.noise_std_acc == 0.0 &&
           s.noise_std_gyro == 0.0 && s.gyro_bias.squared_norm() == 0.0;
}

Report check_log(const RunLog& log, const ControlGains& gains, const LyapunovWeights& w) {
    const std::size_t want = expected_rows(log.config);
    if (log.records.size() != want) {
        throw IncompleteLogError("check_log: log has " + std::to_string(log.records.size()) +
                                 " rows, expected " + std::to_string(want));
    }
    const double dt = log.config.timing.control_dt;
    for (std::size_t i = 1; i < log.records.size(); ++i) {
        if (std::abs(log.records[i].t - log.records[i - 1].t - dt) > 1e-9) {
            throw IncompleteLogError("check_log: non-uniform timestamps");
        }
    }

    Report rep;
    rep.rows = log.records.size();
    rep.t_end = log.records.back().t;
    rep.thrust_lower = gains.g - gains.k_p - gains.k_v;
    rep.thrust_upper = gains.g + gains.k_p + gains.k_v;
    rep.thrust_min = std::numeric_limits<double>::infinity();
    rep.thrust_max = -std::numeric_limits<double>::infinity();
    rep.monotone_required = disturbance_free(log.config);
    rep.w_min_eig_min = std::numeric_limits<double>::infinity();
    rep.min_abs_tilde_eta = std::numeric_limits<double>::infinity();
    rep.lyapunov_worst_step = -std::numeric_limits<double>::infinity();

    const Vec3 r1 = log.config.sensors.r1;
    double v_prev = 0.0;
    for (std::size_t i = 0; i < log.records.size(); ++i) {
        const LogRecord& rec = log.records[i];

        rep.thrust_min = std::min(rep.thrust_min, rec.u_t);
        rep.thrust_max = std::max(rep.thrust_max, rec.u_t);
        if (rec.u_t < rep.thrust_lower || rec.u_t > rep.thrust_upper) {
            ++rep.thrust_violations;
        }

        // Diagnostics recomputed from the truth channels.
        const UnitQuaternion tq = attitude_error(rec.q, rec.q_d);
        const Mat3 tilde_rot = quat_to_rot(tq);
        const Vec3 e_p = rec.p - log.config.p_r;
        const Vec3 tr2 = tilde_r2(rec.v, rec.v_hat, gains.k_1, tilde_rot, rec.r2);
        const double v_now = lyapunov(e_p, rec.v, tr2, tq.eta, gains.k_p, w);
        rep.w_min_eig_min =
            std::min(rep.w_min_eig_min, w_min_eig(r1, rec.r2, gains.gamma_1, gains.gamma_2));
        rep.min_abs_tilde_eta = std::min(rep.min_abs_tilde_eta, std::abs(tq.eta));

        if (i == 0) {
            rep.lyapunov_initial = v_now;
            rep.lyapunov_step_tolerance = 1e-6 * v_now + 1e-12;
        } else {
            const double inc = v_now - v_prev;
            rep.lyapunov_worst_step = std::max(rep.lyapunov_worst_step, inc);
            if (inc > rep.lyapunov_step_tolerance) {
                ++rep.lyapunov_increase_events;
            }
        }
        v_prev = v_now;

        if (i + 1 == log.records.size()) {
            rep.lyapunov_final = v_now;
            rep.terminal_e_p = e_p.norm();
            rep.terminal_v = rec.v.norm();
            rep.terminal_tilde_r2 = tr2.norm();
            rep.terminal_one_minus_eta2 = 1.0 - tq.eta * tq.eta;
        }
    }

    rep.passed = rep.thrust_violations == 0 &&
                 (!rep.monotone_required || rep.lyapunov_increase_events == 0);
    return rep;
}

Report check_log(const RunLog& log) {
    return check_log(log, log.config.gains, log.config.lyapunov);
}

void write_report(const Report& r, std::ostream& out) {
    out << "rows                 " << r.rows << " (t_end " << r.t_end << " s)\n";
    out << "thrust window        [" << r.thrust_lower << ", " << r.thrust_upper << "] m/s^2\n";
    out << "thrust observed      [" << r.thrust_min << ", " << r.thrust_max << "] m/s^2, "
        << r.thrust_violations << " violation(s)\n";
    out << "lyapunov             V0 " << r.lyapunov_initial << ", V_end " << r.lyapunov_final
        << ", worst step " << r.lyapunov_worst_step << ", tol " << r.lyapunov_step_tolerance
        << "\n";
    out << "monotone required    " << (r.monotone_required ? "yes" : "no") << ", "
        << r.lyapunov_increase_events << " increase event(s)\n";
    out << "terminal |e_p|       " << r.terminal_e_p << " m\n";
    out << "terminal |v|         " << r.terminal_v << " m/s\n";
    out << "terminal |r2~|       " << r.terminal_tilde_r2 << "\n";
    out << "terminal 1-eta~^2    " << r.terminal_one_minus_eta2 << "\n";
    out << "min lambda_min(W)    " << r.w_min_eig_min << "\n";
    out << "min |eta~|           " << r.min_abs_tilde_eta << "\n";
    out << "result               " << (r.passed ? "PASS" : "FAIL") << "\n";
}

void write_report_kv(const Report& r, std::ostream& out) {
    out.precision(17);
    out << "rows = " << r.rows << "\n";
    out << "t_end = " << r.t_end << "\n";
    out << "thrust_lower = " << r.thrust_lower << "\n";
    out << "thrust_upper = " << r.thrust_upper << "\n";
    out << "thrust_min = " << r.thrust_min << "\n";
    out << "thrust_max = " << r.thrust_max << "\n";
    out << "thrust_violations = " << r.thrust_violations << "\n";
    out << "monotone_required = " << (r.monotone_required ? 1 : 0) << "\n";
    out << "lyapunov_increase_events = " << r.lyapunov_increase_events << "\n";
    out << "lyapunov_initial = " << r.lyapunov_initial << "\n";
    out << "lyapunov_final = " << r.lyapunov_final << "\n";
    out << "lyapunov_worst_step = " << r.lyapunov_worst_step << "\n";
    out << "lyapunov_step_tolerance = " << r.lyapunov_step_tolerance << "\n";
    out << "terminal_e_p = " << r.terminal_e_p << "\n";
    out << "terminal_v = " << r.terminal_v << "\n";
    out << "terminal_tilde_r2 = " << r.terminal_tilde_r2 << "\n";
    out << "terminal_one_minus_eta2 = " << r.terminal_one_minus_eta2 << "\n";
    out << "w_min_eig_min = " << r.w_min_eig_min << "\n";
    out << "min_abs_tilde_eta = " << r.min_abs_tilde_eta << "\n";
    out << "passed = " << (r.passed ? 1 : 0) << "\n";
}

} // namespace vtolctl
