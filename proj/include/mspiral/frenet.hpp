#pragma once

// Frenet systems of non-null curves in Minkowski 3-space and their integration.
//
//   Timelike:                  T' = k N,  N' =  k T + t B,  B' = -t N
//   Spacelike, spacelike N:    T' = k N,  N' = -k T + t B,  B' =  t N
//   Spacelike, timelike N:     T' = k N,  N' =  k T + t B,  B' =  t N
//
// (k = curvature, t = torsion). The torsion fed to the system is the profile
// value with no sign adjustment.

#include <vector>

#include "mspiral/lorentz.hpp"
#include "mspiral/profile.hpp"

namespace mspiral {

struct CurveSample {
    double s = 0.0;
    LVec3 point;
    FrenetFrame frame;
    double kappa = 0.0;
    double tau = 0.0;
};

/// Arc-length indexed samples on a uniform grid.
struct SampledCurve {
    CurveCase curve_case = CurveCase::Timelike;
    double step = 0.0;
    std::vector<CurveSample> samples;
};

struct FrameDerivative {
    LVec3 dt;
    LVec3 dn;
    LVec3 db;
};

FrameDerivative frenet_rhs(const FrenetFrame& frame, double kappa, double tau);

/// Timelike: T=e3, N=e1. Spacelike/spacelike normal: T=e1, N=e2. Spacelike/timelike
/// normal: T=e1, N=e3. In every case B = T x N.
FrenetFrame default_initial_frame(CurveCase c);

struct IntegrateOptions {
    ReorthoOptions reortho{};
};

/// Fixed-step RK4 on (point, T, N, B) with point' = T and Lorentz
/// re-orthonormalization after every step. The step is shrunk so that an
/// integral number of steps spans [s0, s1]; every grid point is recorded.
SampledCurve integrate(CurveCase curve_case, const ProfileExpr& kappa, const ProfileExpr& tau,
                       const LVec3& start, const FrenetFrame& frame0, double s0, double s1, double step,
                       const IntegrateOptions& opts = {});

/// Number of intervals used for [s0, s1] at the requested step.
std::size_t grid_intervals(double s0, double s1, double step);

}  // namespace mspiral
