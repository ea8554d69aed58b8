#include "mspiral/estimate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "mspiral/errors.hpp"

namespace mspiral {

namespace {

struct LocalFrame {
    LVec3 t;
    LVec3 n;
    LVec3 b;
    double kappa;
    double speed;
    CurveCase curve_case;
};

[[noreturn]] void fail_at(double s, const std::string& what) {
    std::ostringstream msg;
    msg << what << " at s=" << s;
    throw NumericError(msg.str());
}

CurveCase case_of(CausalCharacter tangent, CausalCharacter normal, double s) {
    if (tangent == CausalCharacter::Timelike) {
        if (normal != CausalCharacter::Spacelike) fail_at(s, "timelike tangent with non-spacelike normal");
        return CurveCase::Timelike;
    }
    return normal == CausalCharacter::Timelike ? CurveCase::SpacelikeTimelikeNormal
                                               : CurveCase::SpacelikeSpacelikeNormal;
}

}  // namespace

EstimatedData estimate(std::span<const PointSample> points, const EstimateOptions& opts) {
    const std::size_t n = points.size();
    if (n < 5) throw FormatError("estimation needs at least 5 samples");
    const double h = (points.back().s - points.front().s) / static_cast<double>(n - 1);
    if (!(h > 0.0)) throw FormatError("estimation needs strictly increasing s");
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && std::abs((points[i].s - points[i - 1].s) - h) > opts.grid_tolerance * h) {
            std::ostringstream msg;
            msg << "non-uniform grid at s=" << points[i].s;
            throw FormatError(msg.str());
        }
        if (!points[i].point.finite()) throw FormatError("non-finite sample point");
        scale = std::max(scale, euclid_norm(points[i].point));
    }
    // Second differences cannot resolve curvature below their rounding noise.
    const double noise_floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1.0) / (h * h);
    const double kappa_floor = std::max(opts.min_curvature, noise_floor);

    std::vector<LocalFrame> frames(n);
    std::array<std::size_t, 3> votes{};
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double s = points[i].s;
        const LVec3 d1 = (points[i + 1].point - points[i - 1].point) / (2.0 * h);
        const LVec3 d2 = (points[i + 1].point - 2.0 * points[i].point + points[i - 1].point) / (h * h);

        if (euclid_norm(d1) == 0.0) fail_at(s, "vanishing speed");
        const auto tc = causal_character(d1, opts.causal_epsilon);
        if (tc == CausalCharacter::Lightlike) fail_at(s, "lightlike tangent");
        const double speed = lorentz_norm(d1);
        const LVec3 t = d1 / speed;
        const double tt = tc == CausalCharacter::Timelike ? -1.0 : 1.0;

        const LVec3 n_perp = d2 - (lorentz_dot(d2, t) * tt) * t;
        if (euclid_norm(n_perp) / (speed * speed) < kappa_floor) {
            fail_at(s, "torsion undefined on straight segments: curvature vanishes");
        }
        const auto nc = causal_character(n_perp, opts.causal_epsilon);
        if (nc == CausalCharacter::Lightlike) {
            std::ostringstream msg;
            msg << "lightlike principal normal at s=" << s << ": curvature undefined";
            throw NullNormalError(msg.str());
        }
        const double nn = lorentz_norm(n_perp);
        LocalFrame lf;
        lf.t = t;
        lf.n = n_perp / nn;
        lf.b = lorentz_cross(lf.t, lf.n);
        lf.kappa = nn / (speed * speed);
        lf.speed = speed;
        lf.curve_case = case_of(tc, nc, s);
        frames[i] = lf;
        ++votes[static_cast<std::size_t>(lf.curve_case)];
    }

    const auto winner = static_cast<std::size_t>(std::max_element(votes.begin(), votes.end()) - votes.begin());
    const std::size_t total = n - 2;
    if (votes[winner] != total) {
        std::ostringstream msg;
        msg << "mixed causal character: " << votes[winner] << " of " << total << " samples are "
            << to_string(static_cast<CurveCase>(winner));
        throw NumericError(msg.str());
    }

    EstimatedData out;
    out.curve_case = static_cast<CurveCase>(winner);
    out.step = h;
    const double sig_b = frame_signature(out.curve_case).b;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const LocalFrame& lf = frames[i];
        const LVec3 dn = (frames[i + 1].n - frames[i - 1].n) / (2.0 * h);
        EstimatedSample es;
        es.s = points[i].s;
        es.index = i;
        es.frame = {lf.t, lf.n, lf.b, out.curve_case};
        es.kappa = lf.kappa;
        // N' carries tau*B in every case, so tau = <N',B><B,B> per unit parameter.
        es.tau = lorentz_dot(dn, lf.b) * sig_b / lf.speed;
        es.speed = lf.speed;
        out.samples.push_back(es);
    }
    return out;
}

std::vector<PointSample> points_of(const SampledCurve& curve) {
    std::vector<PointSample> pts;
    pts.reserve(curve.samples.size());
    for (const auto& s : curve.samples) pts.push_back({s.s, s.point});
    return pts;
}

EstimatedData estimate(const SampledCurve& curve, const EstimateOptions& opts) {
    const auto pts = points_of(curve);
    return estimate(pts, opts);
}

SampledCurve to_sampled_curve(std::span<const PointSample> points, const EstimatedData& est) {
    SampledCurve out;
    out.curve_case = est.curve_case;
    out.step = est.step;
    out.samples.reserve(est.samples.size());
    for (const auto& e : est.samples) {
        out.samples.push_back({e.s, points[e.index].point, e.frame, e.kappa, e.tau});
    }
    return out;
}

}  // namespace mspiral
