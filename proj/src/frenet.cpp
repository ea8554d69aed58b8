#include "mspiral/frenet.hpp"

#include <cmath>
#include <sstream>

#include "mspiral/errors.hpp"

namespace mspiral {

FrameDerivative frenet_rhs(const FrenetFrame& f, double kappa, double tau) {
    switch (f.curve_case) {
    case CurveCase::Timelike:
        return {kappa * f.n, kappa * f.t + tau * f.b, -tau * f.n};
    case CurveCase::SpacelikeSpacelikeNormal:
        return {kappa * f.n, -kappa * f.t + tau * f.b, tau * f.n};
    case CurveCase::SpacelikeTimelikeNormal:
        return {kappa * f.n, kappa * f.t + tau * f.b, tau * f.n};
    }
    return {};
}

FrenetFrame default_initial_frame(CurveCase c) {
    FrenetFrame f;
    f.curve_case = c;
    switch (c) {
    case CurveCase::Timelike:
        f.t = kE3;
        f.n = kE1;
        break;
    case CurveCase::SpacelikeSpacelikeNormal:
        f.t = kE1;
        f.n = kE2;
        break;
    case CurveCase::SpacelikeTimelikeNormal:
        f.t = kE1;
        f.n = kE3;
        break;
    }
    f.b = lorentz_cross(f.t, f.n);
    return f;
}

std::size_t grid_intervals(double s0, double s1, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw FormatError("step must be positive and finite");
    if (!(s1 > s0)) throw FormatError("interval needs s0 < s1");
    const double count = std::ceil((s1 - s0) / step - 1e-9);
    if (count > 1e8) throw FormatError("step too small for the interval");
    return count < 1.0 ? 1 : static_cast<std::size_t>(count);
}

namespace {

struct State {
    LVec3 point;
    FrenetFrame frame;
};

struct StateRate {
    LVec3 dp;
    FrameDerivative df;
};

StateRate rate(const State& st, double kappa, double tau) { return {st.frame.t, frenet_rhs(st.frame, kappa, tau)}; }

State advance(const State& st, const StateRate& r, double h) {
    State out = st;
    out.point += h * r.dp;
    out.frame.t += h * r.df.dt;
    out.frame.n += h * r.df.dn;
    out.frame.b += h * r.df.db;
    return out;
}

double profile_at(const ProfileExpr& p, double s, const char* label) {
    try {
        return p.eval(s);
    } catch (const DomainError& e) {
        std::ostringstream msg;
        msg << label << " undefined at s=" << s << ": " << e.what();
        throw DomainError(msg.str(), s);
    }
}

}  // namespace

SampledCurve integrate(CurveCase curve_case, const ProfileExpr& kappa, const ProfileExpr& tau,
                       const LVec3& start, const FrenetFrame& frame0, double s0, double s1, double step,
                       const IntegrateOptions& opts) {
    if (frame0.curve_case != curve_case) throw FormatError("initial frame belongs to a different curve case");
    if (!start.finite()) throw FormatError("start point must be finite");
    const std::size_t intervals = grid_intervals(s0, s1, step);
    const double h = (s1 - s0) / static_cast<double>(intervals);

    SampledCurve curve;
    curve.curve_case = curve_case;
    curve.step = h;
    curve.samples.reserve(intervals + 1);

    State st{start, reorthonormalize(frame0, opts.reortho)};
    double k0 = profile_at(kappa, s0, "curvature");
    double t0 = profile_at(tau, s0, "torsion");
    curve.samples.push_back({s0, st.point, st.frame, k0, t0});

    for (std::size_t i = 0; i < intervals; ++i) {
        const double s = s0 + static_cast<double>(i) * h;
        const double s_next = i + 1 == intervals ? s1 : s0 + static_cast<double>(i + 1) * h;
        const double s_mid = s + 0.5 * h;
        const double k_mid = profile_at(kappa, s_mid, "curvature");
        const double t_mid = profile_at(tau, s_mid, "torsion");
        const double k1 = profile_at(kappa, s_next, "curvature");
        const double t1 = profile_at(tau, s_next, "torsion");

        const StateRate r1 = rate(st, k0, t0);
        const StateRate r2 = rate(advance(st, r1, 0.5 * h), k_mid, t_mid);
        const StateRate r3 = rate(advance(st, r2, 0.5 * h), k_mid, t_mid);
        const StateRate r4 = rate(advance(st, r3, h), k1, t1);

        const double w = h / 6.0;
        st.point += w * (r1.dp + 2.0 * r2.dp + 2.0 * r3.dp + r4.dp);
        st.frame.t += w * (r1.df.dt + 2.0 * r2.df.dt + 2.0 * r3.df.dt + r4.df.dt);
        st.frame.n += w * (r1.df.dn + 2.0 * r2.df.dn + 2.0 * r3.df.dn + r4.df.dn);
        st.frame.b += w * (r1.df.db + 2.0 * r2.df.db + 2.0 * r3.df.db + r4.df.db);
        if (!st.point.finite()) {
            std::ostringstream msg;
            msg << "integration overflow near s=" << s_next;
            throw NumericError(msg.str());
        }
        st.frame = reorthonormalize(st.frame, opts.reortho);

        curve.samples.push_back({s_next, st.point, st.frame, k1, t1});
        k0 = k1;
        t0 = t1;
    }
    return curve;
}

}  // namespace mspiral
