#include "rdc/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace rdc {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, res.ptr);
}

std::string trajectory_csv(const RunResult& r, bool with_theta) {
    std::string out;
    out.reserve(r.times.size() * 32 * (r.modal.size() + 3));
    out += "t,norm,U";
    for (std::size_t n = 1; n <= r.modal.size(); ++n) out += ",a_" + std::to_string(n);
    if (with_theta) out += ",theta_hat";
    out += "\n";
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        out += format_double(r.times[i]);
        out += ',';
        out += format_double(r.norms[i]);
        out += ',';
        out += format_double(r.controls[i]);
        for (std::size_t n = 0; n < r.modal.size(); ++n) {
            out += ',';
            out += format_double(r.modal[n][i]);
        }
        if (with_theta) {
            out += ',';
            out += format_double(r.theta_hats[i]);
        }
        out += '\n';
    }
    return out;
}

std::string profiles_csv(const RunResult& r, const SpatialGrid& grid) {
    std::string out = "t";
    for (int j = 0; j < grid.n_points; ++j) out += ",x_" + std::to_string(j);
    out += "\n";
    for (const auto& p : r.profiles) {
        out += format_double(p.t);
        for (double v : p.values) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

std::string event_log_text(const EventLog& log) {
    std::string out;
    for (const auto& e : log.events) {
        out += "event " + std::to_string(e.index) + "\n";
        out += "tau = " + format_double(e.tau) + "\n";
        out += "mu = " + format_double(e.mu) + "\n";
        out += "reason = " + e.reason + "\n";
        out += "norm = " + format_double(e.norm_at_tau) + "\n";
        out += "theta_before = " + format_double(e.before.theta_hat) + "\n";
        out += "theta_after = " + format_double(e.after.theta_hat) + "\n";
        out += "c_before = " + format_double(e.before.c_hat) + "\n";
        out += "c_after = " + format_double(e.after.c_hat) + "\n";
        out += "set_kind = " + e.set_kind + "\n";
        out += "schedule_N = " + std::to_string(e.schedule_N) + "\n";
        out += "schedule_R = " + format_double(e.schedule_R) + "\n";
        for (std::size_t n = 0; n < e.diagnostics.size(); ++n) {
            const auto& m = e.diagnostics[n];
            out += "mode_" + std::to_string(n + 1) + " = H1:" + format_double(m.H1) +
                   " H2:" + format_double(m.H2) + " Q1:" + format_double(m.Q1) +
                   " Q2:" + format_double(m.Q2) + " Q3:" + format_double(m.Q3) + "\n";
        }
        out += "\n";
    }
    return out;
}

std::string norm_vs_time_csv(const RunResult& r) {
    std::string out = "t,norm\n";
    for (std::size_t i = 0; i < r.times.size(); ++i)
        out += format_double(r.times[i]) + "," + format_double(r.norms[i]) + "\n";
    return out;
}

std::string theta_vs_time_csv(const RunResult& r) {
    std::string out = "t,theta_hat\n";
    for (std::size_t i = 0; i < r.times.size(); ++i)
        out += format_double(r.times[i]) + "," + format_double(r.theta_hats[i]) + "\n";
    return out;
}

std::string plot_script() {
    return R"PY(#!/usr/bin/env python3
import csv
import os
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(sys.argv[0]))

def load(name):
    path = os.path.join(here, name)
    if not os.path.exists(path):
        return None
    with open(path) as f:
        rows = list(csv.reader(f))
    cols = list(zip(*[[float(v) for v in r] for r in rows[1:]]))
    return rows[0], cols

nt = load("norm_vs_time.csv")
if nt:
    plt.figure()
    plt.plot(nt[1][0], nt[1][1])
    plt.xlabel("t")
    plt.ylabel("||u(t)||")
    plt.savefig(os.path.join(here, "norm_vs_time.png"), dpi=150)

tt = load("theta_vs_time.csv")
if tt:
    plt.figure()
    plt.plot(tt[1][0], tt[1][1])
    plt.xlabel("t")
    plt.ylabel("theta_hat(t)")
    plt.savefig(os.path.join(here, "theta_vs_time.png"), dpi=150)
)PY";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace rdc
