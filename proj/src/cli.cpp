#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "vtolctl/errors.hpp"
#include "vtolctl/sim.hpp"

namespace vtolctl {

namespace {

bool is_csv_path(const std::string& path) {
    return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

bool windless(const ScenarioConfig& c) { return c.plant.v_w.norm() == 0.0; }

bool noiseless(const ScenarioConfig& c) {
    const SensorParams& s = c.sensors;
    return s.noise_std_pos == 0.0 && s.noise_std_vel == 0.0 && s.noise_std_mag == 0.0 &&
           s.noise_std_acc == 0.0 && s.noise_std_gyro == 0.0 && s.gyro_bias.norm() == 0.0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"closed-loop VTOL position-control simulator and log checker"};
    app.require_subcommand(1);

    std::string sim_config;
    std::string sim_out = "run.csv";
    std::optional<std::uint64_t> sim_seed;
    CLI::App* sim = app.add_subcommand("simulate", "run a scenario and write the telemetry CSV");
    sim->add_option("config", sim_config, "scenario config file")->required();
    sim->add_option("--out", sim_out, "output CSV path (default run.csv)");
    sim->add_option("--seed", sim_seed, "override the config RNG seed");

    std::string check_input;
    std::string check_report;
    bool no_wind = false;
    bool no_noise = false;
    CLI::App* chk = app.add_subcommand("check", "verify invariants over a log or a fresh run");
    chk->add_option("input", check_input, "run-log CSV (*.csv) or scenario config")->required();
    chk->add_flag("--no-wind", no_wind, "zero the wind (config input only)");
    chk->add_flag("--no-noise", no_noise,
                  "zero all sensor noise and the gyro bias (config input only)");
    chk->add_option("--report", check_report, "also write a key = value report file");

    std::string plot_csv;
    std::string plot_dir;
    CLI::App* plt = app.add_subcommand("plot", "render SVG plots from a run-log CSV");
    plt->add_option("csv", plot_csv, "run-log CSV")->required();
    plt->add_option("--out", plot_dir, "output directory")->required();

    std::string base_out = "baseline.cfg";
    CLI::App* base = app.add_subcommand("baseline", "write the reference scenario config");
    base->add_option("path", base_out, "output path (default baseline.cfg)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*sim) {
            ScenarioConfig config = load_config(sim_config);
            if (sim_seed) config.sensors.seed = *sim_seed;
            RunLog log;
            try {
                run_into(config, log);
            } catch (const DivergenceError& e) {
                export_csv(log, sim_out);
                std::cerr << "error: " << e.what() << " (partial log written to " << sim_out
                          << ")\n";
                return 1;
            }
            export_csv(log, sim_out);
            std::cout << log.records.size() << " rows -> " << sim_out << "\n";
            return 0;
        }
        if (*chk) {
            RunLog log;
            if (is_csv_path(check_input)) {
                log = import_csv(check_input);
                if (no_wind && !windless(log.config)) {
                    throw ValidationError("--no-wind given but the log was recorded with wind");
                }
                if (no_noise && !noiseless(log.config)) {
                    throw ValidationError(
                        "--no-noise given but the log was recorded with sensor noise");
                }
            } else {
                ScenarioConfig config = load_config(check_input);
                if (no_wind) config.plant.v_w = Vec3::zero();
                if (no_noise) {
                    config.sensors.noise_std_pos = 0.0;
                    config.sensors.noise_std_vel = 0.0;
                    config.sensors.noise_std_mag = 0.0;
                    config.sensors.noise_std_acc = 0.0;
                    config.sensors.noise_std_gyro = 0.0;
                    config.sensors.gyro_bias = Vec3::zero();
                }
                log = run(config);
            }
            const Report report = check_log(log);
            write_report(report, std::cout);
            if (!check_report.empty()) {
                std::ofstream out(check_report);
                if (!out) throw IoError("cannot write report file: " + check_report);
                write_report_kv(report, out);
            }
            return report.passed ? 0 : 1;
        }
        if (*plt) {
            plot(import_csv(plot_csv), plot_dir);
            std::cout << "4 plots -> " << plot_dir << "\n";
            return 0;
        }
        if (*base) {
            save_config(baseline_config(), base_out);
            std::cout << base_out << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace vtolctl
