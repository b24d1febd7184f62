#include <CLI11.hpp>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>

#include "rdc/backstepping.hpp"
#include "rdc/csv.hpp"
#include "rdc/scenario.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitBlowUp = 4;

struct CommonFlags {
    std::string config;
    std::string out_dir = ".";
    std::optional<int> stride;
    std::optional<int> grid;
    std::optional<double> dt;
};

rdc::Scenario load_with_overrides(const CommonFlags& fl) {
    rdc::Scenario sc = rdc::load_scenario(fl.config);
    if (fl.stride) sc.solver.record_stride = *fl.stride;
    if (fl.grid) sc.grid.n_points = *fl.grid;
    if (fl.dt) sc.solver.dt = *fl.dt;
    return sc;
}

void write_artifacts(const rdc::Scenario& sc, const rdc::RunResult& r,
                     const std::string& out_dir, bool dump_profiles) {
    fs::create_directories(out_dir);
    const bool with_theta = (sc.mode == rdc::RunMode::AdaptivePassive);
    rdc::write_file(out_dir + "/trajectory.csv", rdc::trajectory_csv(r, with_theta));
    rdc::write_file(out_dir + "/norm_vs_time.csv", rdc::norm_vs_time_csv(r));
    if (with_theta || !r.log.events.empty())
        rdc::write_file(out_dir + "/theta_vs_time.csv", rdc::theta_vs_time_csv(r));
    if (!r.log.events.empty())
        rdc::write_file(out_dir + "/events.txt", rdc::event_log_text(r.log));
    if (dump_profiles) rdc::write_file(out_dir + "/profiles.csv", rdc::profiles_csv(r, sc.grid));
    rdc::write_file(out_dir + "/plot.py", rdc::plot_script());
}

int cmd_simulate(const CommonFlags& fl, bool dump_profiles) {
    rdc::Scenario sc;
    try {
        sc = load_with_overrides(fl);
    } catch (const std::exception& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return kExitParse;
    }
    try {
        sc.validate();
    } catch (const std::exception& ex) {
        std::cerr << "validation error: " << ex.what() << "\n";
        return kExitValidation;
    }
    try {
        const rdc::RunResult r = rdc::run_scenario(sc, dump_profiles);
        write_artifacts(sc, r, fl.out_dir, dump_profiles);
        std::cout << "mode = " << rdc::to_string(sc.mode) << "\n"
                  << "samples = " << r.times.size() << "\n"
                  << "final_norm = " << rdc::format_double(r.norms.back()) << "\n"
                  << "events = " << r.log.events.size() << "\n";
        if (r.blew_up) {
            std::cerr << "blow-up at t = " << r.blowup_time << " (partial artifacts written)\n";
            return kExitBlowUp;
        }
        return 0;
    } catch (const std::exception& ex) {
        std::cerr << "run error: " << ex.what() << "\n";
        return kExitValidation;
    }
}

int cmd_table1(const std::vector<double>& extra_theta, const std::string& out_path) {
    rdc::DesignParams dp;  // beta = 0, sigma = 1, B = 1/10
    std::vector<double> thetas = {0.1, 3.0, 5.0, 6.0, 7.0, 8.0, 9.0,
                                  rdc::kPi * rdc::kPi, 10.0, 11.0, 12.0};
    thetas.insert(thetas.end(), extra_theta.begin(), extra_theta.end());
    std::string csv = "theta,N\n";
    for (double th : thetas) {
        const auto sch = rdc::select_schedule(th, dp, 1.0);
        csv += rdc::format_double(th) + "," + std::to_string(sch.N) + "\n";
    }
    std::cout << csv;
    if (!out_path.empty()) rdc::write_file(out_path, csv);
    return 0;
}

int cmd_compare(const CommonFlags& fl_a, const std::string& config_b,
                const std::string& out_dir) {
    rdc::Scenario sa, sb;
    try {
        CommonFlags fb = fl_a;
        fb.config = config_b;
        sa = load_with_overrides(fl_a);
        sb = load_with_overrides(fb);
    } catch (const std::exception& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return kExitParse;
    }
    try {
        sa.validate();
        sb.validate();
        if (sa.truth.p != sb.truth.p || sa.truth.theta != sb.truth.theta ||
            sa.truth.c != sb.truth.c || sa.initial_profile != sb.initial_profile ||
            sa.initial_amplitude != sb.initial_amplitude ||
            sa.grid.n_points != sb.grid.n_points)
            throw std::invalid_argument("compared scenarios must share truth and initial data");
    } catch (const std::exception& ex) {
        std::cerr << "validation error: " << ex.what() << "\n";
        return kExitValidation;
    }
    try {
        auto fut = std::async(std::launch::async, [&] { return rdc::run_scenario(sa); });
        const rdc::RunResult rb = rdc::run_scenario(sb);
        const rdc::RunResult ra = fut.get();
        const auto rep = rdc::compare_runs(ra, rb);
        fs::create_directories(out_dir);
        rdc::write_file(out_dir + "/compare.txt", rdc::format_report(rep));
        rdc::write_file(out_dir + "/norm_a.csv", rdc::norm_vs_time_csv(ra));
        rdc::write_file(out_dir + "/norm_b.csv", rdc::norm_vs_time_csv(rb));
        rdc::write_file(out_dir + "/theta_a.csv", rdc::theta_vs_time_csv(ra));
        rdc::write_file(out_dir + "/theta_b.csv", rdc::theta_vs_time_csv(rb));
        std::cout << rdc::format_report(rep);
        if (ra.blew_up || rb.blew_up) return kExitBlowUp;
        return 0;
    } catch (const std::exception& ex) {
        std::cerr << "run error: " << ex.what() << "\n";
        return kExitValidation;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reaction-diffusion boundary control bench"};
    app.require_subcommand(1);

    CommonFlags fl;
    bool dump_profiles = false;

    auto* sim = app.add_subcommand("simulate", "run one scenario and write artifacts");
    sim->add_option("--config", fl.config, "scenario config file")->required();
    sim->add_option("--out", fl.out_dir, "output directory");
    sim->add_option("--stride", fl.stride, "recording stride override");
    sim->add_option("--grid", fl.grid, "grid-point override");
    sim->add_option("--dt", fl.dt, "time-step override");
    sim->add_flag("--dump-profiles", dump_profiles, "also write the profile matrix");

    std::vector<double> extra_theta;
    std::string table_out;
    auto* tab = app.add_subcommand("table1", "mode counts over the reference theta grid");
    tab->add_option("--theta", extra_theta, "additional theta values");
    tab->add_option("--out", table_out, "also write the CSV here");

    std::string config_b, cmp_out = ".";
    auto* cmp = app.add_subcommand("compare", "run two scenarios on shared truth and report");
    cmp->add_option("--config", fl.config, "first scenario")->required();
    cmp->add_option("--config-b", config_b, "second scenario")->required();
    cmp->add_option("--out", cmp_out, "output directory");
    cmp->add_option("--stride", fl.stride, "recording stride override");
    cmp->add_option("--grid", fl.grid, "grid-point override");
    cmp->add_option("--dt", fl.dt, "time-step override");

    std::string dump_out;
    auto* dmp = app.add_subcommand("dump-defaults", "print the canonical scenario config");
    dmp->add_option("--out", dump_out, "also write the config here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    if (sim->parsed()) return cmd_simulate(fl, dump_profiles);
    if (tab->parsed()) return cmd_table1(extra_theta, table_out);
    if (cmp->parsed()) return cmd_compare(fl, config_b, cmp_out);
    if (dmp->parsed()) {
        const std::string text = rdc::dump_scenario(rdc::Scenario{});
        std::cout << text;
        if (!dump_out.empty()) rdc::write_file(dump_out, text);
        return 0;
    }
    return kExitParse;
}
