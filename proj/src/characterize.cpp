#include "mspiral/characterize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mspiral/errors.hpp"

namespace mspiral {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

FamilyVerdict from_fit(const FitResult& f) { return {f.ok, f.residual, f.coefficients}; }

FamilyVerdict failed() { return {false, kInf, {}}; }

// Linear fit of f(sample) over samples where f is defined; fails if any sample is skipped
// and `require_all` is set.
template <typename F>
FamilyVerdict fit_over(const SampledCurve& curve, F f, bool require_all, double tol, bool constant = false) {
    std::vector<Sample2> pts;
    pts.reserve(curve.samples.size());
    for (const auto& smp : curve.samples) {
        auto v = f(smp);
        if (v) {
            pts.push_back({smp.s, *v});
        } else if (require_all) {
            return failed();
        }
    }
    if (pts.size() < 2) return failed();
    return from_fit(constant ? fit_constant(pts, tol) : fit_linear(pts, tol));
}

// Residual of kappa*(c*s+d) - tau*(a*s+b) for a unit-normalized coefficient vector.
double ratio_residual(const SampledCurve& curve, std::vector<double> k) {
    double norm = 0.0;
    for (double v : k) norm += v * v;
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) return kInf;
    double r = 0.0;
    for (const auto& smp : curve.samples) {
        const double row = smp.kappa * (k[2] * smp.s + k[3]) - smp.tau * (k[0] * smp.s + k[1]);
        r = std::max(r, std::abs(row) / norm);
    }
    return r;
}

std::vector<double> normalized(std::vector<double> k) {
    double norm = 0.0;
    for (double v : k) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : k) v /= norm;
    return k;
}

void require_matching_grid(std::size_t vectors, const SampledCurve& curve) {
    if (vectors != curve.samples.size()) throw FormatError("vector samples do not match the curve grid");
    if (vectors < 3) throw FormatError("need at least 3 samples");
}

double max_frame_scale(const SampledCurve& curve) {
    double m = 1.0;
    for (const auto& smp : curve.samples) {
        m = std::max({m, euclid_norm(smp.frame.t), euclid_norm(smp.frame.n), euclid_norm(smp.frame.b)});
    }
    return m;
}

}  // namespace

ClassificationReport classify(const SampledCurve& curve, const ClassifyOptions& opts) {
    if (curve.samples.size() < 5) throw NumericError("classification needs at least 5 samples");
    const double tol = opts.fit_tolerance;
    const double zero = opts.zero_threshold;

    const bool curved = std::any_of(curve.samples.begin(), curve.samples.end(),
                                    [&](const CurveSample& s) { return std::abs(s.kappa) > zero; });
    if (!curved) throw NumericError("torsion undefined on straight segments: curvature vanishes everywhere");

    ClassificationReport rep;
    rep.sample_count = curve.samples.size();
    rep.curve_case = curve.curve_case;
    rep.tolerance = tol;

    using Opt = std::optional<double>;
    const auto kappa_fit = fit_over(curve, [](const CurveSample& s) { return Opt(s.kappa); }, true, tol);
    const auto tau_fit = fit_over(curve, [](const CurveSample& s) { return Opt(s.tau); }, true, tol);
    const auto inv_kappa = fit_over(
        curve, [&](const CurveSample& s) { return std::abs(s.kappa) > zero ? Opt(1.0 / s.kappa) : Opt(); }, true, tol);
    const auto inv_tau = fit_over(
        curve, [&](const CurveSample& s) { return std::abs(s.tau) > zero ? Opt(1.0 / s.tau) : Opt(); }, true, tol);
    auto ratio = [&](const CurveSample& s) { return std::abs(s.kappa) > zero ? Opt(s.tau / s.kappa) : Opt(); };

    double max_tau = 0.0;
    for (const auto& s : curve.samples) max_tau = std::max(max_tau, std::abs(s.tau));

    rep.planar_cornu = {kappa_fit.holds && max_tau <= tol, std::max(kappa_fit.residual, max_tau),
                        kappa_fit.coefficients};

    rep.euler.holds = kappa_fit.holds && tau_fit.holds;
    rep.euler.residual = std::max(kappa_fit.residual, tau_fit.residual);
    if (kappa_fit.holds && tau_fit.holds) {
        rep.euler.coefficients = {kappa_fit.coefficients[0], kappa_fit.coefficients[1], tau_fit.coefficients[0],
                                  tau_fit.coefficients[1]};
    }

    rep.logarithmic.holds = inv_kappa.holds && inv_tau.holds;
    rep.logarithmic.residual = std::max(inv_kappa.residual, inv_tau.residual);
    if (rep.logarithmic.holds) {
        rep.logarithmic.coefficients = {inv_kappa.coefficients[0], inv_kappa.coefficients[1],
                                        inv_tau.coefficients[0], inv_tau.coefficients[1]};
    }

    rep.helix = fit_over(curve, ratio, false, tol, true);
    rep.rectifying = fit_over(curve, ratio, false, tol);

    std::vector<Sample3> triples;
    triples.reserve(curve.samples.size());
    for (const auto& s : curve.samples) triples.push_back({s.s, s.kappa, s.tau});
    const auto ratio_fit = fit_ratio_rational_linear(triples, tol);
    rep.generalized_euler = from_fit(ratio_fit);
    rep.generalized_euler_witness = ratio_fit.ok ? "ratio-fit" : "";
    if (!ratio_fit.ok) {
        // Each sub-family carries an explicit rational-linear ratio.
        std::vector<double> k;
        if (rep.euler.holds) {
            k = rep.euler.coefficients;
            rep.generalized_euler_witness = "euler";
        } else if (rep.logarithmic.holds) {
            const auto& c = rep.logarithmic.coefficients;
            k = {c[2], c[3], c[0], c[1]};
            rep.generalized_euler_witness = "logarithmic";
        } else if (rep.helix.holds) {
            k = {0.0, 1.0, 0.0, rep.helix.coefficients[0]};
            rep.generalized_euler_witness = "helix";
        }
        if (!k.empty()) {
            rep.generalized_euler = {true, ratio_residual(curve, k), normalized(k)};
        }
    }

    if (rep.euler.holds) {
        const auto& c = rep.euler.coefficients;
        try {
            rep.bertrand = bertrand_coefficients({c[0], c[1]}, {c[2], c[3]});
        } catch (const NumericError& e) {
            rep.bertrand_note = e.what();
        }
    } else {
        rep.bertrand_note = "curvature and torsion are not both linear";
    }
    return rep;
}

BertrandCoefficients bertrand_coefficients(const LinearProfile& kappa, const LinearProfile& tau) {
    const double c1 = kappa.slope;
    const double c2 = kappa.intercept;
    const double d1 = tau.slope;
    const double d2 = tau.intercept;
    const double det = c1 * d2 - d1 * c2;
    const double scale = std::max({std::abs(c1 * d2), std::abs(d1 * c2), std::numeric_limits<double>::min()});
    if (std::abs(det) <= 1e-12 * scale || det == 0.0) {
        throw NumericError("profiles proportional (helix): Bertrand coefficients not unique");
    }
    return {-d1 / det, c1 / det};
}

double bertrand_offset(CurveCase c, const BertrandCoefficients& coeffs) {
    const double sigma = c == CurveCase::SpacelikeSpacelikeNormal ? -1.0 : 1.0;
    return -sigma * coeffs.a;
}

SampledCurve bertrand_mate(const SampledCurve& curve, double r) {
    if (!std::isfinite(r)) throw FormatError("Bertrand offset must be finite");
    const bool curved = std::any_of(curve.samples.begin(), curve.samples.end(),
                                    [](const CurveSample& s) { return std::abs(s.kappa) > 1e-12; });
    if (!curved) throw NumericError("principal normal undefined: the curve is straight");
    std::vector<PointSample> pts;
    pts.reserve(curve.samples.size());
    for (const auto& s : curve.samples) pts.push_back({s.s, s.point + r * s.frame.n});
    const auto est = estimate(pts);
    return to_sampled_curve(pts, est);
}

double normal_line_deviation(const SampledCurve& base, const SampledCurve& mate) {
    double worst = 0.0;
    std::size_t j = 0;
    for (const auto& m : mate.samples) {
        while (j < base.samples.size() && base.samples[j].s < m.s - 1e-9 * std::max(1.0, std::abs(m.s))) ++j;
        if (j == base.samples.size()) throw FormatError("mate samples are not a subset of the base grid");
        const LVec3& u = m.frame.n;
        const LVec3& v = base.samples[j].frame.n;
        const LVec3 c{u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
        const double angle = std::atan2(euclid_norm(c), std::abs(euclid_dot(u, v)));
        worst = std::max(worst, angle);
    }
    return worst;
}

std::vector<PointSample> darboux_curve(const SampledCurve& curve) {
    const double eps = case_epsilon(curve.curve_case);
    std::vector<PointSample> w;
    w.reserve(curve.samples.size());
    for (const auto& s : curve.samples) w.push_back({s.s, eps * s.tau * s.frame.t - s.kappa * s.frame.b});
    return w;
}

std::vector<PointSample> u_curve(const SampledCurve& curve, double min_magnitude) {
    const double eps = case_epsilon(curve.curve_case);
    std::vector<PointSample> u;
    u.reserve(curve.samples.size());
    for (const auto& s : curve.samples) {
        if (std::abs(s.kappa) < min_magnitude || std::abs(s.tau) < min_magnitude) {
            std::ostringstream msg;
            msg << "U-curve undefined: " << (std::abs(s.kappa) < min_magnitude ? "curvature" : "torsion")
                << " vanishes at s=" << s.s;
            throw NumericError(msg.str());
        }
        u.push_back({s.s, (eps / s.kappa) * s.frame.t - (1.0 / s.tau) * s.frame.b});
    }
    return u;
}

double parallel_to_normal_residual(const std::vector<PointSample>& vectors, const SampledCurve& curve) {
    require_matching_grid(vectors.size(), curve);
    const double h = curve.step;
    if (!(h > 0.0)) throw FormatError("curve step must be positive");
    double scale = 1.0;
    for (const auto& v : vectors) scale = std::max(scale, euclid_norm(v.point));
    const double floor = std::max(
        1e-12, 64.0 * std::numeric_limits<double>::epsilon() * scale * max_frame_scale(curve) / (h * h));
    const auto sig = frame_signature(curve.curve_case);

    double worst = -1.0;
    for (std::size_t i = 1; i + 1 < vectors.size(); ++i) {
        const LVec3 d2 = (vectors[i + 1].point - 2.0 * vectors[i].point + vectors[i - 1].point) / (h * h);
        const auto& f = curve.samples[i].frame;
        const double ct = lorentz_dot(d2, f.t) * sig.t;
        const double cn = lorentz_dot(d2, f.n) * sig.n;
        const double cb = lorentz_dot(d2, f.b) * sig.b;
        const double total = std::sqrt(ct * ct + cn * cn + cb * cb);
        if (total < floor) continue;
        worst = std::max(worst, std::sqrt(ct * ct + cb * cb) / total);
    }
    if (worst < 0.0) throw NumericError("second difference vanishes: the parallel-to-normal condition is vacuous");
    return worst;
}

std::vector<PointSample> involute_offset_curve(const SampledCurve& curve, const InvoluteCoefficients& k) {
    std::vector<PointSample> beta;
    beta.reserve(curve.samples.size());
    for (const auto& s : curve.samples) {
        const auto& f = s.frame;
        beta.push_back({s.s, s.point + (k.a * s.s + k.b) * f.t + (k.c * s.s + k.d) * f.b + k.lambda * f.n});
    }
    return beta;
}

double expected_normal_component(CurveCase c, double s, double kappa, double tau, const InvoluteCoefficients& k) {
    const double sigma = c == CurveCase::Timelike ? -1.0 : 1.0;
    return frame_signature(c).n * ((k.a * s + k.b) * kappa + sigma * (k.c * s + k.d) * tau);
}

InvoluteCheck check_involute(const SampledCurve& curve, const InvoluteCoefficients& k) {
    const auto beta = involute_offset_curve(curve, k);
    require_matching_grid(beta.size(), curve);
    const double h = curve.step;
    InvoluteCheck out;
    for (std::size_t i = 1; i + 1 < beta.size(); ++i) {
        const auto& smp = curve.samples[i];
        const LVec3 d1 = (beta[i + 1].point - beta[i - 1].point) / (2.0 * h);
        const double got = lorentz_dot(d1, smp.frame.n);
        const double want = expected_normal_component(curve.curve_case, smp.s, smp.kappa, smp.tau, k);
        out.max_normal_component = std::max(out.max_normal_component, std::abs(got));
        out.max_identity_deviation = std::max(out.max_identity_deviation, std::abs(got - want));
    }
    return out;
}

std::vector<PointSample> ruled_director(const RuledSurfaceSpec& spec) {
    std::vector<PointSample> x;
    x.reserve(spec.base.samples.size());
    for (const auto& s : spec.base.samples) {
        x.push_back({s.s, (spec.a * s.s + spec.b) * s.frame.t + (spec.c * s.s + spec.d) * s.frame.b});
    }
    return x;
}

double developability_residual(const RuledSurfaceSpec& spec) {
    if (spec.base.samples.size() < 3) throw FormatError("developability check needs at least 3 samples");
    const auto x = ruled_director(spec);
    const double h = spec.base.step;
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        const LVec3 dx = (x[i + 1].point - x[i - 1].point) / (2.0 * h);
        worst = std::max(worst, std::abs(det3(spec.base.samples[i].frame.t, x[i].point, dx)));
    }
    return worst;
}

}  // namespace mspiral
