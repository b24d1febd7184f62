#include "rdc/scenario.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rdc {

std::string to_string(RunMode m) {
    switch (m) {
        case RunMode::OpenLoop: return "open_loop";
        case RunMode::NominalFullKernel: return "nominal_full_kernel";
        case RunMode::NominalTruncated: return "nominal_truncated";
        case RunMode::AdaptiveRegulation: return "adaptive_regulation";
        case RunMode::AdaptiveRegulationKnownC: return "adaptive_regulation_known_c";
        case RunMode::AdaptivePassive: return "adaptive_passive";
    }
    return "open_loop";
}

RunMode run_mode_from_string(const std::string& s) {
    if (s == "open_loop") return RunMode::OpenLoop;
    if (s == "nominal_full_kernel") return RunMode::NominalFullKernel;
    if (s == "nominal_truncated") return RunMode::NominalTruncated;
    if (s == "adaptive_regulation") return RunMode::AdaptiveRegulation;
    if (s == "adaptive_regulation_known_c") return RunMode::AdaptiveRegulationKnownC;
    if (s == "adaptive_passive") return RunMode::AdaptivePassive;
    throw std::runtime_error("unknown mode '" + s + "'");
}

void Scenario::validate() const {
    truth.validate();
    grid.validate();
    solver.validate();
    trigger.validate();
    design.validate(truth.p);
    passive.validate();
    if (!(horizon > 0.0)) throw std::invalid_argument("scenario: horizon must be > 0");
    if (!(init_estimates.c_hat > 0.0))
        throw std::invalid_argument("scenario: initial c_hat must be > 0");
    if (solver.n_max < 1 || solver.n_ident < 1)
        throw std::invalid_argument("scenario: mode counts must be >= 1");
}

namespace {

using SectionMap = std::map<std::string, std::map<std::string, std::string>>;

SectionMap parse_sections(const std::string& text) {
    SectionMap out;
    std::istringstream is(text);
    std::string line, section = "scenario";
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": malformed section header");
            section = line.substr(1, line.size() - 2);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
        };
        out[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

double to_double(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing garbage");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config: bad numeric value for '" + key + "': " + s);
    }
}

int to_int(const std::string& s, const std::string& key) {
    const double v = to_double(s, key);
    if (v != std::floor(v))
        throw std::runtime_error("config: expected integer for '" + key + "'");
    return static_cast<int>(v);
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    Scenario sc;
    const auto sections = parse_sections(text);
    for (const auto& [sec, kv] : sections) {
        for (const auto& [key, val] : kv) {
            if (sec == "scenario") {
                if (key == "mode") sc.mode = run_mode_from_string(val);
                else if (key == "horizon") sc.horizon = to_double(val, key);
                else throw std::runtime_error("config: unknown key [scenario] " + key);
            } else if (sec == "plant") {
                if (key == "p") sc.truth.p = to_double(val, key);
                else if (key == "theta") sc.truth.theta = to_double(val, key);
                else if (key == "c") sc.truth.c = to_double(val, key);
                else throw std::runtime_error("config: unknown key [plant] " + key);
            } else if (sec == "initial") {
                if (key == "profile") sc.initial_profile = val;
                else if (key == "amplitude") sc.initial_amplitude = to_double(val, key);
                else throw std::runtime_error("config: unknown key [initial] " + key);
            } else if (sec == "estimates") {
                if (key == "theta0") sc.init_estimates.theta_hat = to_double(val, key);
                else if (key == "c0") sc.init_estimates.c_hat = to_double(val, key);
                else throw std::runtime_error("config: unknown key [estimates] " + key);
            } else if (sec == "trigger") {
                if (key == "T") sc.trigger.T = to_double(val, key);
                else if (key == "a") sc.trigger.a = to_double(val, key);
                else if (key == "N_tilde") sc.trigger.N_tilde = to_int(val, key);
                else throw std::runtime_error("config: unknown key [trigger] " + key);
            } else if (sec == "design") {
                if (key == "backend")
                    sc.backend = (val == "reduced_model") ? DesignBackend::ReducedModel
                                                          : DesignBackend::Backstepping;
                else if (key == "beta") sc.design.beta = to_double(val, key);
                else if (key == "sigma") sc.design.sigma = to_double(val, key);
                else if (key == "B") sc.design.B = to_double(val, key);
                else if (key == "M") sc.design.M = to_double(val, key);
                else if (key == "quad_panels") sc.design.quad_panels = to_int(val, key);
                else if (key == "n_cap") sc.design.n_cap = to_int(val, key);
                else throw std::runtime_error("config: unknown key [design] " + key);
            } else if (sec == "solver") {
                if (key == "grid") sc.grid.n_points = to_int(val, key);
                else if (key == "dt") sc.solver.dt = to_double(val, key);
                else if (key == "n_max") sc.solver.n_max = to_int(val, key);
                else if (key == "stride") sc.solver.record_stride = to_int(val, key);
                else if (key == "blowup_norm") sc.solver.blowup_norm = to_double(val, key);
                else throw std::runtime_error("config: unknown key [solver] " + key);
            } else if (sec == "identifier") {
                if (key == "n_modes") sc.ident.n_modes = to_int(val, key);
                else if (key == "eps_q") sc.ident.eps_q = to_double(val, key);
                else if (key == "sv_ratio") sc.ident.sv_ratio = to_double(val, key);
                else throw std::runtime_error("config: unknown key [identifier] " + key);
            } else if (sec == "passive") {
                if (key == "observer_gain") sc.passive.observer_gain = to_double(val, key);
                else if (key == "adaptation_gain")
                    sc.passive.adaptation_gain = to_double(val, key);
                else if (key == "theta0") sc.passive.theta0 = to_double(val, key);
                else throw std::runtime_error("config: unknown key [passive] " + key);
            } else {
                throw std::runtime_error("config: unknown section [" + sec + "]");
            }
        }
    }
    sc.solver.n_ident = std::max(sc.solver.n_ident, sc.ident.n_modes);
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string dump_scenario(const Scenario& sc) {
    std::ostringstream os;
    os.precision(17);
    os << "[scenario]\n"
       << "mode = " << to_string(sc.mode) << "\n"
       << "horizon = " << sc.horizon << "\n\n"
       << "[plant]\n"
       << "p = " << sc.truth.p << "\n"
       << "theta = " << sc.truth.theta << "\n"
       << "c = " << sc.truth.c << "\n\n"
       << "[initial]\n"
       << "profile = " << sc.initial_profile << "\n"
       << "amplitude = " << sc.initial_amplitude << "\n\n"
       << "[estimates]\n"
       << "theta0 = " << sc.init_estimates.theta_hat << "\n"
       << "c0 = " << sc.init_estimates.c_hat << "\n\n"
       << "[trigger]\n"
       << "T = " << sc.trigger.T << "\n"
       << "a = " << sc.trigger.a << "\n"
       << "N_tilde = " << sc.trigger.N_tilde << "\n\n"
       << "[design]\n"
       << "backend = "
       << (sc.backend == DesignBackend::ReducedModel ? "reduced_model" : "backstepping")
       << "\n"
       << "beta = " << sc.design.beta << "\n"
       << "sigma = " << sc.design.sigma << "\n"
       << "B = " << sc.design.B << "\n"
       << "M = " << sc.design.M << "\n"
       << "quad_panels = " << sc.design.quad_panels << "\n"
       << "n_cap = " << sc.design.n_cap << "\n\n"
       << "[solver]\n"
       << "grid = " << sc.grid.n_points << "\n"
       << "dt = " << sc.solver.dt << "\n"
       << "n_max = " << sc.solver.n_max << "\n"
       << "stride = " << sc.solver.record_stride << "\n"
       << "blowup_norm = " << sc.solver.blowup_norm << "\n\n"
       << "[identifier]\n"
       << "n_modes = " << sc.ident.n_modes << "\n"
       << "eps_q = " << sc.ident.eps_q << "\n"
       << "sv_ratio = " << sc.ident.sv_ratio << "\n\n"
       << "[passive]\n"
       << "observer_gain = " << sc.passive.observer_gain << "\n"
       << "adaptation_gain = " << sc.passive.adaptation_gain << "\n"
       << "theta0 = " << sc.passive.theta0 << "\n";
    return os.str();
}

StateProfile initial_profile(const Scenario& sc) {
    const double amp = sc.initial_amplitude;
    if (sc.initial_profile.rfind("csv:", 0) == 0) {
        const std::string path = sc.initial_profile.substr(4);
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open initial-condition file: " + path);
        std::vector<double> vals;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            vals.push_back(std::stod(line));
        }
        if (static_cast<int>(vals.size()) != sc.grid.n_points)
            throw std::runtime_error("initial-condition file size does not match the grid");
        StateProfile s;
        s.t = 0.0;
        s.values = std::move(vals);
        s.values.front() = 0.0;
        return s;
    }
    if (sc.initial_profile == "paper_ic")
        return make_profile(sc.grid, 0.0, [amp](double x) {
            return amp * (std::sqrt(2.0) * std::sin(kPi * x) + x * x - x * x * x);
        });
    if (sc.initial_profile == "sine")
        return make_profile(sc.grid, 0.0,
                            [amp](double x) { return amp * std::sqrt(2.0) * std::sin(kPi * x); });
    if (sc.initial_profile == "poly")
        return make_profile(sc.grid, 0.0, [amp](double x) { return amp * (x * x - x * x * x); });
    if (sc.initial_profile == "zero")
        return make_profile(sc.grid, 0.0, [](double) { return 0.0; });
    throw std::runtime_error("unknown initial profile '" + sc.initial_profile + "'");
}

RunResult run_scenario(const Scenario& sc, bool keep_profiles) {
    sc.validate();
    const StateProfile u0 = initial_profile(sc);
    switch (sc.mode) {
        case RunMode::OpenLoop:
            return run_open_loop(sc.truth, u0, sc.grid, sc.solver, sc.horizon, keep_profiles);
        case RunMode::NominalFullKernel:
            return run_nominal(sc.truth, u0, NominalKind::FullKernel, sc.design, sc.backend,
                               sc.grid, sc.solver, sc.horizon, keep_profiles);
        case RunMode::NominalTruncated:
            return run_nominal(sc.truth, u0, NominalKind::Truncated, sc.design, sc.backend,
                               sc.grid, sc.solver, sc.horizon, keep_profiles);
        case RunMode::AdaptiveRegulation:
        case RunMode::AdaptiveRegulationKnownC: {
            AdaptiveOptions opt;
            opt.trigger = sc.trigger;
            opt.ident = sc.ident;
            opt.design = sc.design;
            opt.backend = sc.backend;
            opt.known_c = (sc.mode == RunMode::AdaptiveRegulationKnownC);
            return run_adaptive(sc.truth, u0, sc.init_estimates, opt, sc.grid, sc.solver,
                                sc.horizon, keep_profiles);
        }
        case RunMode::AdaptivePassive:
            return run_passive(sc.truth, u0, sc.passive, sc.design, sc.grid, sc.solver,
                               sc.horizon, keep_profiles);
    }
    throw std::logic_error("run_scenario: unhandled mode");
}

}  // namespace rdc
