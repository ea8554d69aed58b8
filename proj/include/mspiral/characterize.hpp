#pragma once

// Curve families defined by their curvature and torsion, and the curve-level
// constructions used to check the classical characterizations: Bertrand mates,
// the Darboux curve, the U-curve, involute offsets and ruled-surface directors.

#include <optional>
#include <string>
#include <vector>

#include "mspiral/estimate.hpp"
#include "mspiral/frenet.hpp"
#include "mspiral/profile.hpp"

namespace mspiral {

struct FamilyVerdict {
    bool holds = false;
    double residual = 0.0;
    std::vector<double> coefficients;
};

/// a*s + b
struct LinearProfile {
    double slope = 0.0;
    double intercept = 0.0;
    double operator()(double s) const { return slope * s + intercept; }
};

/// A*kappa + B*tau = 1.
struct BertrandCoefficients {
    double a = 0.0;
    double b = 0.0;
};

struct ClassificationReport {
    std::size_t sample_count = 0;
    CurveCase curve_case = CurveCase::Timelike;
    double tolerance = kDefaultFitTolerance;

    /// tau == 0 and kappa linear. Coefficients {a, b} of kappa.
    FamilyVerdict planar_cornu;
    /// kappa = c1*s+c2 and tau = d1*s+d2. Coefficients {c1, c2, d1, d2}.
    FamilyVerdict euler;
    /// 1/kappa = a*s+b and 1/tau = c*s+d. Coefficients {a, b, c, d}.
    FamilyVerdict logarithmic;
    /// kappa/tau = (a*s+b)/(c*s+d). Coefficients {a, b, c, d}.
    FamilyVerdict generalized_euler;
    /// "ratio-fit" when the homogeneous fit passed on its own, otherwise the
    /// sub-family whose verdict implies it ("euler", "logarithmic", "helix").
    std::string generalized_euler_witness;
    /// tau/kappa == lambda. Coefficients {lambda}.
    FamilyVerdict helix;
    /// tau/kappa = l1*s + l2. Coefficients {l1, l2}.
    FamilyVerdict rectifying;

    std::optional<BertrandCoefficients> bertrand;
    /// Why Bertrand coefficients are absent, when they are.
    std::string bertrand_note;
};

struct ClassifyOptions {
    double fit_tolerance = kDefaultFitTolerance;
    /// |kappa| or |tau| at or below this is treated as zero for ratio families.
    double zero_threshold = 1e-9;
};

/// Classifies from the per-sample kappa and tau stored in the curve.
/// Throws NumericError with fewer than 5 samples or when kappa vanishes everywhere.
ClassificationReport classify(const SampledCurve& curve, const ClassifyOptions& opts = {});

/// Unique (A, B) with A*c1 + B*d1 = 0 and A*c2 + B*d2 = 1 for kappa = c1*s+c2,
/// tau = d1*s+d2. Throws NumericError when the profiles are proportional.
BertrandCoefficients bertrand_coefficients(const LinearProfile& kappa, const LinearProfile& tau);

/// Offset r along N that makes alpha + r*N a Bertrand mate when A*kappa + B*tau = 1.
/// N' = sigma*kappa*T + tau*B gives r = -sigma*A: -A for the timelike and
/// timelike-normal cases, +A for the spacelike-normal case.
double bertrand_offset(CurveCase c, const BertrandCoefficients& coeffs);

/// Points alpha(s) + r*N(s) with frames re-estimated from those points. The mate
/// keeps the base arc-length parameter and loses two samples at each end.
SampledCurve bertrand_mate(const SampledCurve& curve, double r);

/// Largest Euclidean angle (radians) between the mate's principal normal and the
/// base principal normal at corresponding samples.
double normal_line_deviation(const SampledCurve& base, const SampledCurve& mate);

/// W = eps*tau*T - kappa*B with eps = -1 for timelike curves and +1 otherwise.
std::vector<PointSample> darboux_curve(const SampledCurve& curve);

/// U = (eps/kappa)*T - (1/tau)*B. Throws NumericError where kappa or tau vanish.
std::vector<PointSample> u_curve(const SampledCurve& curve, double min_magnitude = 1e-9);

/// Max over interior samples of the share of the second difference of V lying
/// outside the N direction, measured in the curve's orthonormal frame
/// coordinates. 0 means V'' is parallel to N everywhere.
double parallel_to_normal_residual(const std::vector<PointSample>& vectors, const SampledCurve& curve);

struct InvoluteCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    double lambda = 0.0;
};

/// beta = alpha + (a*s+b)*T + (c*s+d)*B + lambda*N.
std::vector<PointSample> involute_offset_curve(const SampledCurve& curve, const InvoluteCoefficients& k);

/// Closed form of <beta', N> for the offset curve:
/// <N,N> * ((a*s+b)*kappa + sigma*(c*s+d)*tau) with B' = sigma*tau*N.
/// For timelike curves this is kappa*(a*s+b) - tau*(c*s+d).
double expected_normal_component(CurveCase c, double s, double kappa, double tau, const InvoluteCoefficients& k);

struct InvoluteCheck {
    /// max |<beta',N>| with beta' from central differences.
    double max_normal_component = 0.0;
    /// max |<beta',N> - expected_normal_component|.
    double max_identity_deviation = 0.0;
};

InvoluteCheck check_involute(const SampledCurve& curve, const InvoluteCoefficients& k);

struct RuledSurfaceSpec {
    SampledCurve base;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
};

/// Director X(s) = (a*s+b)*T + (c*s+d)*B of the ruled surface alpha(s) + v*X(s).
std::vector<PointSample> ruled_director(const RuledSurfaceSpec& spec);

/// Max over interior samples of |det(T, X, X')| with X' from central differences.
double developability_residual(const RuledSurfaceSpec& spec);

}  // namespace mspiral
