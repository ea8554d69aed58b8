#pragma once

// Planar spirals from a prescribed signed curvature via the turning angle
// phi(s) = integral of kappa from s0 to s.
//
//   timelike, plane <E2,E3>:  beta'(s)  = (0, sinh phi, cosh phi),  <beta',beta'> = -1
//   spacelike, plane <E1,E3>: alpha'(s) = (cosh phi, 0, sinh phi),  <alpha',alpha'> = +1
//
// The spacelike planar curve has a timelike principal normal.

#include <cstddef>

#include "mspiral/frenet.hpp"
#include "mspiral/profile.hpp"

namespace mspiral {

enum class PlanarKind { TimelikePlanar, SpacelikePlanar };

struct PlanarSpiralSpec {
    ProfileExpr kappa = ProfileExpr::number(0.0);
    double s0 = 0.0;
    double s1 = 1.0;
    std::size_t n = 2;
    PlanarKind kind = PlanarKind::TimelikePlanar;
    /// Turning angle at s0.
    double phi0 = 0.0;
};

inline constexpr double kTurningAngleTolerance = 1e-10;

/// Integral of kappa over [s0, s]. Throws NumericError naming the point when
/// kappa is undefined at an endpoint or not integrable inside.
double turning_angle(const ProfileExpr& kappa, double s0, double s, double abs_tol = kTurningAngleTolerance);

SampledCurve generate_timelike_planar(const PlanarSpiralSpec& spec);
SampledCurve generate_spacelike_planar(const PlanarSpiralSpec& spec);

/// Dispatches on spec.kind.
SampledCurve generate_planar(const PlanarSpiralSpec& spec);

}  // namespace mspiral
