#include "mspiral/planar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mspiral/errors.hpp"
#include "mspiral/quadrature.hpp"

namespace mspiral {

namespace {

double kappa_at(const ProfileExpr& kappa, double s) {
    try {
        return kappa.eval(s);
    } catch (const DomainError& e) {
        std::ostringstream msg;
        msg << "nonintegrable singularity at s=" << s << ": " << e.what();
        throw NumericError(msg.str());
    }
}

double integrate_kappa(const ProfileExpr& kappa, double a, double b, double tol) {
    auto f = [&kappa](double t) { return kappa_at(kappa, t); };
    return integrate_adaptive(f, a, b, tol).value;
}

void check_spec(const PlanarSpiralSpec& spec) {
    if (!(spec.s0 < spec.s1)) throw FormatError("planar spiral needs s0 < s1");
    if (spec.n < 2) throw FormatError("planar spiral needs at least two samples");
}

// Tangent and principal normal in the curve's plane for turning angle phi.
struct PlanarAxes {
    LVec3 tangent;
    LVec3 normal;
};

PlanarAxes axes(PlanarKind kind, double phi) {
    const double sh = std::sinh(phi);
    const double ch = std::cosh(phi);
    if (kind == PlanarKind::TimelikePlanar) return {{0.0, sh, ch}, {0.0, ch, sh}};
    return {{ch, 0.0, sh}, {sh, 0.0, ch}};
}

SampledCurve generate(const PlanarSpiralSpec& spec) {
    check_spec(spec);
    const double length = spec.s1 - spec.s0;
    const double h = length / static_cast<double>(spec.n - 1);
    // Per-panel share of the global tolerance.
    const double panel_tol = std::max(kTurningAngleTolerance / static_cast<double>(spec.n - 1), 1e-15);

    SampledCurve curve;
    curve.curve_case =
        spec.kind == PlanarKind::TimelikePlanar ? CurveCase::Timelike : CurveCase::SpacelikeTimelikeNormal;
    curve.step = h;
    curve.samples.reserve(spec.n);

    double phi = spec.phi0;
    LVec3 point{};
    double s_prev = spec.s0;
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double s = i + 1 == spec.n ? spec.s1 : spec.s0 + static_cast<double>(i) * h;
        if (i > 0) {
            // Running integral: phi inside the panel is phi(s_prev) plus the panel's own share.
            const double phi_prev = phi;
            auto phi_at = [&](double t) { return phi_prev + integrate_kappa(spec.kappa, s_prev, t, 1e-15); };
            auto component = [&](bool hyperbolic_sine) {
                auto f = [&](double t) {
                    const double p = phi_at(t);
                    return hyperbolic_sine ? std::sinh(p) : std::cosh(p);
                };
                return integrate_adaptive(f, s_prev, s, panel_tol).value;
            };
            const double int_sinh = component(true);
            const double int_cosh = component(false);
            if (spec.kind == PlanarKind::TimelikePlanar) {
                point += LVec3{0.0, int_sinh, int_cosh};
            } else {
                point += LVec3{int_cosh, 0.0, int_sinh};
            }
            phi = phi_prev + integrate_kappa(spec.kappa, s_prev, s, panel_tol);
        }
        const double k = kappa_at(spec.kappa, s);
        const auto ax = axes(spec.kind, phi);
        CurveSample sample;
        sample.s = s;
        sample.point = point;
        sample.frame = {ax.tangent, ax.normal, lorentz_cross(ax.tangent, ax.normal), curve.curve_case};
        sample.kappa = k;
        sample.tau = 0.0;
        curve.samples.push_back(sample);
        s_prev = s;
    }
    return curve;
}

}  // namespace

double turning_angle(const ProfileExpr& kappa, double s0, double s, double abs_tol) {
    kappa_at(kappa, s0);
    kappa_at(kappa, s);
    return integrate_kappa(kappa, s0, s, abs_tol);
}

SampledCurve generate_timelike_planar(const PlanarSpiralSpec& spec) {
    if (spec.kind != PlanarKind::TimelikePlanar) throw FormatError("spec is not a timelike planar spiral");
    return generate(spec);
}

SampledCurve generate_spacelike_planar(const PlanarSpiralSpec& spec) {
    if (spec.kind != PlanarKind::SpacelikePlanar) throw FormatError("spec is not a spacelike planar spiral");
    return generate(spec);
}

SampledCurve generate_planar(const PlanarSpiralSpec& spec) { return generate(spec); }

}  // namespace mspiral
