#pragma once

// Frames, curvature and torsion recovered from sampled points alone.
//
// Derivatives are 3-point central differences on a uniform grid. T and N come
// from Lorentzian Gram-Schmidt of (alpha', alpha''), so the frame is correct for
// any regular parametrization; curvature and torsion are reported per unit arc
// length. Two samples are dropped at each end (torsion differentiates N).

#include <span>
#include <vector>

#include "mspiral/frenet.hpp"
#include "mspiral/lorentz.hpp"

namespace mspiral {

struct PointSample {
    double s;
    LVec3 point;
};

struct EstimatedSample {
    double s = 0.0;
    /// Index into the input sequence.
    std::size_t index = 0;
    FrenetFrame frame;
    double kappa = 0.0;
    double tau = 0.0;
    /// |alpha'| under the Lorentz norm; 1 for arc-length input.
    double speed = 0.0;
};

struct EstimatedData {
    CurveCase curve_case = CurveCase::Timelike;
    double step = 0.0;
    std::vector<EstimatedSample> samples;
};

struct EstimateOptions {
    double causal_epsilon = 1e-8;
    /// Relative tolerance on the spacing of the s grid.
    double grid_tolerance = 1e-9;
    /// Curvature below max(min_curvature, roundoff floor) is treated as a straight segment.
    double min_curvature = 1e-12;
};

/// Throws FormatError on a non-uniform or too-short grid, NullNormalError when T
/// or T' is lightlike, NumericError for mixed causality or straight segments.
EstimatedData estimate(std::span<const PointSample> points, const EstimateOptions& opts = {});

EstimatedData estimate(const SampledCurve& curve, const EstimateOptions& opts = {});

/// Replaces frames, curvature and torsion with estimated values; drops the
/// samples the estimator cannot reach.
SampledCurve to_sampled_curve(std::span<const PointSample> points, const EstimatedData& est);

std::vector<PointSample> points_of(const SampledCurve& curve);

}  // namespace mspiral
