#pragma once

#include <iosfwd>
#include <string>

#include "vtolctl/log.hpp"

namespace vtolctl {

// Summary of a log check. `passed` requires zero thrust violations and, for
// disturbance-free runs only, zero Lyapunov increase events.
struct Report {
    std::size_t rows = 0;
    double t_end = 0.0;

    double thrust_lower = 0.0; // g - k_p - k_v
    double thrust_upper = 0.0; // g + k_p + k_v
    std::size_t thrust_violations = 0;
    double thrust_min = 0.0;
    double thrust_max = 0.0;

    bool monotone_required = false;
    std::size_t lyapunov_increase_events = 0;
    double lyapunov_initial = 0.0;
    double lyapunov_final = 0.0;
    double lyapunov_worst_step = 0.0; // most positive V(t_{k+1}) - V(t_k)
    double lyapunov_step_tolerance = 0.0;

    double terminal_e_p = 0.0;
    double terminal_v = 0.0;
    double terminal_tilde_r2 = 0.0;
    double terminal_one_minus_eta2 = 0.0;

    double w_min_eig_min = 0.0;
    double min_abs_tilde_eta = 0.0;

    bool passed = false;
};

// Recomputes the diagnostics from the log's truth channels and evaluates the
// guaranteed closed-loop invariants. Pure: identical logs give identical
// reports.
// Throws IncompleteLogError when the log is truncated or its timestamps are
// not uniformly spaced at control_dt.
Report check_log(const RunLog& log, const ControlGains& gains, const LyapunovWeights& w);

// Convenience overload using the gains and weights embedded in the log.
Report check_log(const RunLog& log);

// Human-readable summary.
void write_report(const Report& report, std::ostream& out);

// Machine-readable key=value summary, one pair per line.
void write_report_kv(const Report& report, std::ostream& out);

} // namespace vtolctl
