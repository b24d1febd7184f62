#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "rdc/backstepping.hpp"
#include "rdc/fredholm.hpp"
#include "rdc/quadrature.hpp"
#include "rdc/types.hpp"

using namespace rdc;

namespace {

std::vector<double> sine_profile(int pts) {
    std::vector<double> u(pts);
    for (int i = 0; i < pts; ++i) u[i] = std::sqrt(2.0) * std::sin(kPi * i / (pts - 1.0));
    return u;
}

std::vector<double> truncated_gain(int pts, double theta, int N) {
    const DesignParams dp;
    const auto k = modal_gains(theta, N, dp, 1.0);
    std::vector<double> g(pts, 0.0);
    for (int i = 0; i < pts; ++i) {
        const double x = i / (pts - 1.0);
        for (int n = 1; n <= N; ++n)
            g[i] += k[n - 1] * std::sqrt(2.0) * std::sin(n * kPi * x);
    }
    return g;
}

}  // namespace

TEST_CASE("zero gain makes the transform the identity") {
    const auto u = sine_profile(301);
    std::vector<double> k(301, 0.0);
    CHECK(fredholm_roundtrip(u, k, 0.7) == doctest::Approx(0.0).epsilon(1e-15));
    FredholmTransform tr(k, 0.7);
    const auto w = tr.forward(u);
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(w[i] == u[i]);
}

TEST_CASE("zero profile round-trips to zero") {
    std::vector<double> zero(301, 0.0);
    const auto k = truncated_gain(301, 11.0, 10);
    CHECK(fredholm_roundtrip(zero, k, 0.0) == 0.0);
}

TEST_CASE("round-trip distance at 1000 grid points") {
    const int pts = 1000;
    const auto u = sine_profile(pts);
    const auto k = truncated_gain(pts, 11.0, 20);
    const double d = fredholm_roundtrip(u, k, 0.0);
    CHECK(d < 1e-3);  // ||u|| = 1; the discrete pair inverts exactly, so this
    CHECK(d < 1e-12);  // sits at rounding level rather than at O(h^2)
}

TEST_CASE("beta converges at second order in the grid") {
    // the quadrature error of the transform lives in beta; the round-trip
    // itself telescopes exactly at any resolution
    auto beta_at = [](int pts) {
        return FredholmTransform(truncated_gain(pts, 11.0, 20), 0.25).beta();
    };
    const double ref = beta_at(32001);
    const double e1 = std::abs(beta_at(500) - ref);
    const double e2 = std::abs(beta_at(1000) - ref);
    const double e3 = std::abs(beta_at(2000) - ref);
    CHECK(e1 / e2 > 2.5);
    CHECK(e1 / e2 < 6.0);
    CHECK(e2 / e3 > 2.5);
    CHECK(e2 / e3 < 6.0);
}

TEST_CASE("invalid gamma is rejected through the beta denominator") {
    // gain = phi_1 has unit L2 norm; pick gamma so 1 - int(s k) - gamma ||k||^2 = 0
    const int pts = 2001;
    std::vector<double> k(pts);
    for (int i = 0; i < pts; ++i)
        k[i] = std::sqrt(2.0) * std::sin(kPi * i / (pts - 1.0));
    const double int_sk = std::sqrt(2.0) / kPi;  // int_0^1 s phi_1(s) ds
    const double gamma_bad = 1.0 - int_sk;
    CHECK_THROWS_AS(FredholmTransform(k, gamma_bad, 1e-6), std::domain_error);
    // a safely different gamma passes
    CHECK_NOTHROW(FredholmTransform(k, gamma_bad + 0.5, 1e-6));
}
