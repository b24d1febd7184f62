#include "rdc/fredholm.hpp"

#include <cmath>
#include <stdexcept>

#include "rdc/quadrature.hpp"
#include "rdc/types.hpp"

namespace rdc {

FredholmTransform::FredholmTransform(std::span<const double> gain, double gamma, double tol)
    : gain_(gain.begin(), gain.end()), gamma_(gamma) {
    const int m = static_cast<int>(gain_.size());
    if (m < 2) throw std::invalid_argument("FredholmTransform: need at least 2 samples");
    const double dx = 1.0 / (m - 1);
    long double sk = 0.0L, k2 = 0.0L;
    for (int j = 0; j < m; ++j) {
        const double w = (j == 0 || j == m - 1) ? 0.5 * dx : dx;
        const double x = j * dx;
        sk += w * x * gain_[j];
        k2 += w * gain_[j] * gain_[j];
    }
    const double den = 1.0 - static_cast<double>(sk) - gamma * static_cast<double>(k2);
    if (std::abs(den) < tol)
        throw std::domain_error("FredholmTransform: beta denominator below tolerance");
    beta_ = 1.0 / den;
    shape_.resize(m);
    for (int j = 0; j < m; ++j) shape_[j] = j * dx + gamma * gain_[j];
}

std::vector<double> FredholmTransform::forward(std::span<const double> profile) const {
    const int m = static_cast<int>(gain_.size());
    const double dx = 1.0 / (m - 1);
    long double ku = 0.0L;
    for (int j = 0; j < m; ++j) {
        const double w = (j == 0 || j == m - 1) ? 0.5 * dx : dx;
        ku += w * gain_[j] * profile[j];
    }
    std::vector<double> out(m);
    for (int j = 0; j < m; ++j) out[j] = profile[j] - shape_[j] * static_cast<double>(ku);
    return out;
}

std::vector<double> FredholmTransform::inverse(std::span<const double> profile) const {
    const int m = static_cast<int>(gain_.size());
    const double dx = 1.0 / (m - 1);
    long double kw = 0.0L;
    for (int j = 0; j < m; ++j) {
        const double w = (j == 0 || j == m - 1) ? 0.5 * dx : dx;
        kw += w * gain_[j] * profile[j];
    }
    std::vector<double> out(m);
    for (int j = 0; j < m; ++j)
        out[j] = profile[j] + beta_ * shape_[j] * static_cast<double>(kw);
    return out;
}

double fredholm_roundtrip(std::span<const double> profile, std::span<const double> gain,
                          double gamma) {
    FredholmTransform tr(gain, gamma);
    const auto w = tr.forward(profile);
    const auto back = tr.inverse(w);
    std::vector<double> diff(profile.size());
    for (std::size_t i = 0; i < profile.size(); ++i) diff[i] = back[i] - profile[i];
    return l2_norm_uniform(diff, 1.0 / (profile.size() - 1));
}

}  // namespace rdc
