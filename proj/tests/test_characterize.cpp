#include <cmath>
#include <random>

#include "doctest.h"
#include "mspiral/characterize.hpp"
#include "mspiral/errors.hpp"
#include "mspiral/planar.hpp"

using namespace mspiral;

namespace {

SampledCurve curve_of(CurveCase c, const std::string& kappa, const std::string& tau, double s0, double s1,
                      double step = 1e-3) {
    return integrate(c, ProfileExpr::parse(kappa), ProfileExpr::parse(tau), {}, default_initial_frame(c), s0, s1, step);
}

// 2x2 oracle by Cramer's rule on A*c1 + B*d1 = 0, A*c2 + B*d2 = 1.
BertrandCoefficients cramer(double c1, double c2, double d1, double d2) {
    const double det = c1 * d2 - c2 * d1;
    return {(0.0 * d2 - 1.0 * d1) / det, (c1 * 1.0 - c2 * 0.0) / det};
}

SampledCurve keep_if(SampledCurve c, double lo_gap, double hi_gap) {
    std::erase_if(c.samples, [&](const CurveSample& s) { return s.s > lo_gap && s.s < hi_gap; });
    return c;
}

}  // namespace

TEST_CASE("bertrand_coefficients") {
    auto ab = bertrand_coefficients({1.0, 0.0}, {0.0, 1.0});
    CHECK(ab.a == 0.0);
    CHECK(ab.b == 1.0);

    ab = bertrand_coefficients({2.0, 1.0}, {1.0, 3.0});
    CHECK(ab.a == doctest::Approx(-0.2).epsilon(1e-15));
    CHECK(ab.b == doctest::Approx(0.4).epsilon(1e-15));
    for (double s : {0.0, 1.0, 2.0}) CHECK(std::abs(ab.a * (2 * s + 1) + ab.b * (s + 3) - 1.0) <= 1e-12);

    CHECK_THROWS_WITH_AS(bertrand_coefficients({2.0, 4.0}, {1.0, 2.0}), doctest::Contains("profiles proportional"),
                         NumericError);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double c1 = u(rng), c2 = u(rng), d1 = u(rng), d2 = u(rng);
        if (std::abs(c1 * d2 - c2 * d1) < 0.1) continue;
        const auto got = bertrand_coefficients({c1, c2}, {d1, d2});
        const auto want = cramer(c1, c2, d1, d2);
        CHECK(got.a == doctest::Approx(want.a).epsilon(1e-12));
        CHECK(got.b == doctest::Approx(want.b).epsilon(1e-12));
    }
}

TEST_CASE("classify") {
    auto rep = classify(curve_of(CurveCase::Timelike, "2*s+1", "s+3", 0.0, 2.0));
    CHECK(rep.euler.holds);
    CHECK(rep.generalized_euler.holds);
    CHECK_FALSE(rep.planar_cornu.holds);
    CHECK_FALSE(rep.helix.holds);
    REQUIRE(rep.bertrand);
    CHECK(rep.bertrand->a == doctest::Approx(-0.2).epsilon(1e-9));
    CHECK(rep.bertrand->b == doctest::Approx(0.4).epsilon(1e-9));

    rep = classify(curve_of(CurveCase::SpacelikeSpacelikeNormal, "2", "1", 0.0, 1.0));
    CHECK(rep.helix.holds);
    CHECK(rep.helix.coefficients[0] == doctest::Approx(0.5));
    CHECK(rep.generalized_euler.holds);
    CHECK(rep.euler.holds);
    CHECK_FALSE(rep.bertrand);
    CHECK(rep.bertrand_note.find("profiles proportional") != std::string::npos);

    rep = classify(curve_of(CurveCase::Timelike, "1/(s+1)", "1/(2*s+5)", 0.0, 1.0));
    CHECK(rep.logarithmic.holds);
    CHECK(rep.generalized_euler.holds);
    CHECK_FALSE(rep.euler.holds);
    const auto& g = rep.generalized_euler.coefficients;
    for (double s : {0.0, 0.4, 1.0}) {
        CHECK((g[0] * s + g[1]) / (g[2] * s + g[3]) == doctest::Approx((2 * s + 5) / (s + 1)).epsilon(1e-6));
    }

    rep = classify(curve_of(CurveCase::Timelike, "s*s+1", "s", 0.0, 1.0));
    CHECK_FALSE(rep.euler.holds);
    CHECK_FALSE(rep.logarithmic.holds);
    CHECK_FALSE(rep.generalized_euler.holds);
    CHECK(rep.rectifying.holds == false);

    rep = classify(curve_of(CurveCase::Timelike, "1", "2*s+1", 0.0, 1.0));
    CHECK(rep.rectifying.holds);
    CHECK(rep.rectifying.coefficients[0] == doctest::Approx(2.0));

    PlanarSpiralSpec p;
    p.kappa = ProfileExpr::parse("3*s+1");
    p.n = 101;
    rep = classify(generate_planar(p));
    CHECK(rep.planar_cornu.holds);
    CHECK(rep.planar_cornu.coefficients[0] == doctest::Approx(3.0));

    auto line = curve_of(CurveCase::Timelike, "0", "0", 0.0, 1.0, 0.1);
    CHECK_THROWS_WITH_AS(classify(line), doctest::Contains("torsion undefined on straight segments"), NumericError);
    line.samples.resize(4);
    CHECK_THROWS_AS(classify(line), NumericError);
}

TEST_CASE("bertrand offset sign per case") {
    const BertrandCoefficients ab{-0.2, 0.4};
    CHECK(bertrand_offset(CurveCase::Timelike, ab) == 0.2);
    CHECK(bertrand_offset(CurveCase::SpacelikeTimelikeNormal, ab) == 0.2);
    CHECK(bertrand_offset(CurveCase::SpacelikeSpacelikeNormal, ab) == -0.2);
}

TEST_CASE("bertrand mates share principal normal lines") {
    const BertrandCoefficients ab = bertrand_coefficients({2.0, 1.0}, {1.0, 3.0});
    for (auto c : {CurveCase::Timelike, CurveCase::SpacelikeSpacelikeNormal, CurveCase::SpacelikeTimelikeNormal}) {
        CAPTURE(to_string(c));
        const auto base = curve_of(c, "2*s+1", "s+3", 0.5, 2.0);
        const auto mate = bertrand_mate(base, bertrand_offset(c, ab));
        CHECK(normal_line_deviation(base, mate) <= 1e-3);
        // The opposite offset is not a mate.
        bool rejected = false;
        try {
            rejected = normal_line_deviation(base, bertrand_mate(base, -bertrand_offset(c, ab))) > 1e-2;
        } catch (const NumericError&) {
            rejected = true;
        }
        CHECK(rejected);
    }
}

TEST_CASE("the timelike mate has an inflection where 2*kappa = tau") {
    // Mate tangent is parallel to 2T + B, so its curvature is proportional to 2*kappa - tau = 3s - 1.
    const auto base = curve_of(CurveCase::Timelike, "2*s+1", "s+3", 0.0, 2.0);
    const auto mate = bertrand_mate(base, 0.2);
    CHECK(normal_line_deviation(base, keep_if(mate, 1.0 / 3.0 - 0.05, 1.0 / 3.0 + 0.05)) <= 1e-4);
    double min_kappa = 1e9;
    double at = 0.0;
    for (const auto& s : mate.samples) {
        if (s.kappa < min_kappa) {
            min_kappa = s.kappa;
            at = s.s;
        }
    }
    CHECK(at == doctest::Approx(1.0 / 3.0).epsilon(2e-3));
}

TEST_CASE("bertrand mate basics") {
    const auto base = curve_of(CurveCase::SpacelikeTimelikeNormal, "2*s+1", "s+3", 0.0, 1.0, 0.01);
    const auto same = bertrand_mate(base, 0.0);
    for (const auto& s : same.samples) {
        const auto& b = base.samples[static_cast<std::size_t>(std::lround(s.s / base.step))];
        CHECK(s.point == b.point);
        CHECK(euclid_norm(s.frame.n - b.frame.n) <= 1e-2);
    }
    CHECK_THROWS_WITH_AS(bertrand_mate(curve_of(CurveCase::Timelike, "0", "0", 0.0, 1.0, 0.1), 0.3),
                         doctest::Contains("principal normal undefined"), NumericError);
}

TEST_CASE("darboux curve") {
    const auto euler = curve_of(CurveCase::Timelike, "2*s+0.5", "-s+1", 0.0, 1.0);
    const auto w = darboux_curve(euler);
    CHECK(parallel_to_normal_residual(w, euler) <= 1e-3);
    // W' = -tau' T - kappa' B for linear profiles.
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < w.size(); ++i) {
        const auto d = (w[i + 1].point - w[i - 1].point) / (2 * euler.step);
        const auto& f = euler.samples[i].frame;
        worst = std::max(worst, euclid_norm(d - (1.0 * f.t - 2.0 * f.b)));
    }
    CHECK(worst <= 1e-4);

    const auto control = curve_of(CurveCase::Timelike, "s*s", "s", 0.0, 2.0);
    CHECK(parallel_to_normal_residual(darboux_curve(control), control) > 0.1);

    const auto helix = curve_of(CurveCase::SpacelikeSpacelikeNormal, "2", "0.5", 0.0, 1.0);
    const auto wh = darboux_curve(helix);
    for (const auto& v : wh) CHECK(euclid_norm(v.point - wh.front().point) <= 1e-9);
    CHECK_THROWS_AS(parallel_to_normal_residual(wh, helix), NumericError);

    const auto sp = curve_of(CurveCase::SpacelikeTimelikeNormal, "2*s+1", "s", 0.0, 1.0);
    const auto ws = darboux_curve(sp);
    const auto& f = sp.samples[10];
    CHECK(euclid_norm(ws[10].point - (f.tau * f.frame.t - f.kappa * f.frame.b)) == 0.0);
    CHECK(parallel_to_normal_residual(ws, sp) <= 1e-3);
}

TEST_CASE("darboux residual separates linear from non-linear profiles") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> coef(0.5, 2.0);
    std::uniform_real_distribution<double> bend(0.5, 1.5);
    for (int i = 0; i < 20; ++i) {
        const bool linear = i % 2 == 0;
        const double c1 = coef(rng), c2 = coef(rng), d1 = -coef(rng), d2 = coef(rng) + 2.0;
        const double q = linear ? 0.0 : bend(rng);
        const std::string kappa =
            std::to_string(c1) + "*s+" + std::to_string(c2) + "+" + std::to_string(q) + "*s*s";
        const std::string tau = std::to_string(d1) + "*s+" + std::to_string(d2);
        CAPTURE(kappa);
        const auto curve = curve_of(CurveCase::Timelike, kappa, tau, 0.0, 1.0);
        const auto rep = classify(curve);
        const bool fits = rep.euler.holds;
        const bool geodesic = parallel_to_normal_residual(darboux_curve(curve), curve) <= 1e-3;
        CHECK(fits == linear);
        CHECK(geodesic == fits);
    }
}

TEST_CASE("u curve") {
    const auto log = curve_of(CurveCase::Timelike, "1/(s+1)", "1/(2*s+5)", 0.0, 1.0);
    const auto u = u_curve(log);
    CHECK(parallel_to_normal_residual(u, log) <= 1e-3);
    // U' = (-1/kappa)' T - (1/tau)' B = -T - 2B here.
    for (std::size_t i = 1; i + 1 < u.size(); i += 50) {
        const auto d = (u[i + 1].point - u[i - 1].point) / (2 * log.step);
        const auto& f = log.samples[i].frame;
        CHECK(std::abs(lorentz_dot(d, f.n)) <= 1e-4);
        CHECK(euclid_norm(d - (-1.0 * f.t - 2.0 * f.b)) <= 1e-4);
    }

    const auto helix = curve_of(CurveCase::SpacelikeTimelikeNormal, "2", "0.5", 0.0, 1.0);
    const auto uh = u_curve(helix);
    for (const auto& v : uh) CHECK(euclid_norm(v.point - uh.front().point) <= 1e-9);

    CHECK_THROWS_WITH_AS(u_curve(curve_of(CurveCase::Timelike, "s-0.5", "1", 0.0, 1.0, 0.01)),
                         doctest::Contains("curvature vanishes"), NumericError);
}

TEST_CASE("involute offsets") {
    const auto curve = curve_of(CurveCase::Timelike, "2*s+0.5", "sin(s)+0.3", 0.0, 1.0);
    const InvoluteCoefficients zero{};
    const auto same = involute_offset_curve(curve, zero);
    for (std::size_t i = 0; i < same.size(); ++i) CHECK(same[i].point == curve.samples[i].point);

    const InvoluteCoefficients k{0.7, -0.3, 1.1, 0.4, 0.0};
    for (double s : {0.0, 0.5, 1.5}) {
        CHECK(expected_normal_component(CurveCase::Timelike, s, 2.0, 3.0, k) ==
              doctest::Approx(2.0 * (0.7 * s - 0.3) - 3.0 * (1.1 * s + 0.4)));
    }
    const auto plain = check_involute(curve, k);
    CHECK(plain.max_identity_deviation <= 1e-4);
    auto with_lambda = k;
    with_lambda.lambda = 3.0;
    CHECK(check_involute(curve, with_lambda).max_identity_deviation <= 1e-4);

    for (auto c : {CurveCase::SpacelikeSpacelikeNormal, CurveCase::SpacelikeTimelikeNormal}) {
        CAPTURE(to_string(c));
        const auto sc = curve_of(c, "2*s+0.5", "sin(s)+0.3", 0.0, 1.0);
        CHECK(check_involute(sc, with_lambda).max_identity_deviation <= 1e-4);
    }

    // kappa/tau = (c*s+d)/(a*s+b) makes beta' orthogonal to N.
    const auto gen = curve_of(CurveCase::Timelike, "(s+2)/(2*s+1)", "1", 0.0, 1.0);
    CHECK(check_involute(gen, {2.0, 1.0, 1.0, 2.0, 0.5}).max_normal_component <= 1e-4);
}

TEST_CASE("ruled surface developability") {
    RuledSurfaceSpec spec;
    spec.base = curve_of(CurveCase::Timelike, "(s+2)/(2*s+1)", "1", 0.0, 1.0);
    spec.a = 2.0;
    spec.b = 1.0;
    spec.c = 1.0;
    spec.d = 2.0;
    CHECK(developability_residual(spec) <= 1e-4);

    const auto x = ruled_director(spec);
    const auto& f = spec.base.samples[7];
    CHECK(euclid_norm(x[7].point - ((2 * f.s + 1) * f.frame.t + (f.s + 2) * f.frame.b)) == 0.0);

    RuledSurfaceSpec mismatched;
    mismatched.base = curve_of(CurveCase::Timelike, "2*s+1", "s+3", 0.0, 1.0);
    mismatched.a = 1.0;
    mismatched.b = 0.5;
    mismatched.c = -0.3;
    mismatched.d = 1.0;
    const double r1 = developability_residual(mismatched);
    CHECK(r1 > 1e-2);
    // X and X' are both linear in (a,b,c,d), so the determinant scales quadratically.
    for (double k : {0.5, 2.0, 3.0}) {
        auto scaled = mismatched;
        scaled.a *= k;
        scaled.b *= k;
        scaled.c *= k;
        scaled.d *= k;
        CHECK(developability_residual(scaled) == doctest::Approx(k * k * r1).epsilon(1e-9));
    }

    PlanarSpiralSpec p;
    p.kappa = ProfileExpr::parse("s");
    p.n = 201;
    RuledSurfaceSpec planar;
    planar.base = generate_planar(p);
    planar.c = 1.5;
    planar.d = -0.7;
    CHECK(developability_residual(planar) <= 1e-6);

    planar.base.samples.resize(2);
    CHECK_THROWS_AS(developability_residual(planar), FormatError);
}
