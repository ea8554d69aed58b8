#include <cmath>

#include "doctest.h"
#include "mspiral/errors.hpp"
#include "mspiral/estimate.hpp"
#include "mspiral/planar.hpp"
#include "mspiral/profile.hpp"

using namespace mspiral;

namespace {

SampledCurve euler_curve(CurveCase c, const char* kappa, const char* tau, double step, double s1 = 1.0) {
    return integrate(c, ProfileExpr::parse(kappa), ProfileExpr::parse(tau), {}, default_initial_frame(c), 0.0, s1, step);
}

double max_kappa_error(CurveCase c, double step) {
    const auto curve = euler_curve(c, "2*s+1", "s", step);
    double worst = 0.0;
    for (const auto& e : estimate(curve).samples) worst = std::max(worst, std::abs(e.kappa - (2 * e.s + 1)));
    return worst;
}

// Hyperbolic rotation in the (y,z) plane followed by a rotation about the z axis.
LVec3 isometry(const LVec3& v) {
    const double ch = std::cosh(0.8), sh = std::sinh(0.8);
    const LVec3 w{v.x, ch * v.y + sh * v.z, sh * v.y + ch * v.z};
    const double c = std::cos(1.1), s = std::sin(1.1);
    return {c * w.x - s * w.y, s * w.x + c * w.y, w.z};
}

}  // namespace

TEST_CASE("estimate recovers curvature and torsion in every case") {
    for (auto c : {CurveCase::Timelike, CurveCase::SpacelikeSpacelikeNormal, CurveCase::SpacelikeTimelikeNormal}) {
        CAPTURE(to_string(c));
        const auto curve = euler_curve(c, "2*s+1", "s", 1e-3);
        const auto est = estimate(curve);
        CHECK(est.curve_case == c);
        REQUIRE(est.samples.size() == curve.samples.size() - 4);
        std::vector<Sample2> ks;
        std::vector<Sample2> ts;
        for (const auto& e : est.samples) {
            ks.push_back({e.s, e.kappa});
            ts.push_back({e.s, e.tau});
            CHECK(e.kappa >= 0.0);
            CHECK(e.speed == doctest::Approx(1.0).epsilon(1e-5));
            CHECK(frame_defect(e.frame) <= 1e-9);
            const auto& ref = curve.samples[e.index].frame;
            CHECK(euclid_norm(e.frame.n - ref.n) <= 1e-4);
            CHECK(euclid_norm(e.frame.b - ref.b) <= 1e-4);
        }
        const auto kf = fit_linear(ks);
        const auto tf = fit_linear(ts);
        CHECK(std::abs(kf.coefficients[0] - 2.0) <= 1e-3);
        CHECK(std::abs(kf.coefficients[1] - 1.0) <= 1e-3);
        CHECK(std::abs(tf.coefficients[0] - 1.0) <= 1e-3);
        CHECK(std::abs(tf.coefficients[1]) <= 1e-3);
    }
}

TEST_CASE("estimator error is second order") {
    for (auto c : {CurveCase::Timelike, CurveCase::SpacelikeTimelikeNormal}) {
        const double coarse = max_kappa_error(c, 0.02);
        const double fine = max_kappa_error(c, 0.005);
        CHECK(coarse / fine >= 12.0);
        CHECK(coarse / fine <= 20.0);
    }
}

TEST_CASE("estimate is invariant under Lorentz isometries") {
    const auto curve = euler_curve(CurveCase::Timelike, "2*s+1", "s+0.5", 0.01);
    auto pts = points_of(curve);
    const auto base = estimate(pts);
    for (auto& p : pts) p.point = isometry(p.point);
    const auto moved = estimate(pts);
    REQUIRE(base.samples.size() == moved.samples.size());
    for (std::size_t i = 0; i < base.samples.size(); ++i) {
        CHECK(std::abs(base.samples[i].kappa - moved.samples[i].kappa) <= 1e-9);
        CHECK(std::abs(base.samples[i].tau - moved.samples[i].tau) <= 1e-9);
    }
}

TEST_CASE("estimate handles regular non-unit-speed parametrizations") {
    // Circle of radius 2 in the spacelike plane, traversed at speed 2.
    std::vector<PointSample> pts;
    for (int i = 0; i <= 200; ++i) {
        const double t = 0.01 * i;
        pts.push_back({t, {2 * std::cos(t), 2 * std::sin(t), 0}});
    }
    const auto est = estimate(pts);
    CHECK(est.curve_case == CurveCase::SpacelikeSpacelikeNormal);
    for (const auto& e : est.samples) {
        CHECK(e.speed == doctest::Approx(2.0).epsilon(1e-4));
        CHECK(e.kappa == doctest::Approx(0.5).epsilon(1e-4));
        CHECK(std::abs(e.tau) <= 1e-9);
    }
}

TEST_CASE("estimate rejects bad input") {
    std::vector<PointSample> line;
    for (int i = 0; i < 20; ++i) line.push_back({0.1 * i, {0, 0, 0.1 * i}});
    CHECK_THROWS_WITH_AS(estimate(line), doctest::Contains("torsion undefined on straight segments"), NumericError);

    std::vector<PointSample> few(line.begin(), line.begin() + 4);
    CHECK_THROWS_AS(estimate(few), FormatError);

    auto uneven = line;
    uneven[7].s += 0.01;
    CHECK_THROWS_AS(estimate(uneven), FormatError);

    // Lightlike tangent.
    std::vector<PointSample> null_line;
    for (int i = 0; i < 20; ++i) null_line.push_back({0.1 * i, {0.1 * i, 0, 0.1 * i}});
    CHECK_THROWS_AS(estimate(null_line), NumericError);

    // Spacelike curve whose normal is lightlike: (s, s^2/2, s^2/2) has T' = (0,1,1).
    std::vector<PointSample> null_normal;
    for (int i = 0; i < 20; ++i) {
        const double s = 0.1 * i;
        null_normal.push_back({s, {s, s * s / 2, s * s / 2}});
    }
    CHECK_THROWS_AS(estimate(null_normal), NullNormalError);

    // Timelike in the middle, spacelike at both ends.
    std::vector<PointSample> mixed;
    for (int i = 0; i <= 200; ++i) {
        const double s = -1.0 + 0.01 * i;
        mixed.push_back({s, {s * s / 2, s * s * s / 3 + 0.5 * s, s * 0.8}});
    }
    CHECK_THROWS_WITH_AS(estimate(mixed), doctest::Contains("mixed causal character"), NumericError);
}

TEST_CASE("to_sampled_curve keeps the reachable samples") {
    const auto curve = euler_curve(CurveCase::SpacelikeSpacelikeNormal, "1", "0.5", 0.01);
    const auto pts = points_of(curve);
    const auto est = estimate(pts);
    const auto back = to_sampled_curve(pts, est);
    REQUIRE(back.samples.size() == est.samples.size());
    CHECK(back.curve_case == CurveCase::SpacelikeSpacelikeNormal);
    CHECK(back.samples.front().s == pts[2].s);
    CHECK(back.samples.front().point == pts[2].point);
    CHECK(back.samples.front().kappa == est.samples.front().kappa);
}
