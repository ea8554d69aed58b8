#pragma once

// Curve file formats.
//
// JSON (version 1):
//   {"version":1,"signature":"++-","case":"timelike","step":0.001,
//    "samples":[{"s":0,"point":[x,y,z],"T":[..],"N":[..],"B":[..],"kappa":k,"tau":t}, ...]}
//
// CSV: header `s,x,y,z,Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz,kappa,tau`, one row per sample.
//
// Floats are written in shortest round-trip form.

#include <string>
#include <string_view>

#include "mspiral/frenet.hpp"

namespace mspiral {

inline constexpr std::string_view kCsvHeader = "s,x,y,z,Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz,kappa,tau";

std::string write_curve_json(const SampledCurve& curve);
std::string write_curve_csv(const SampledCurve& curve);

/// Throws FormatError on any schema violation.
SampledCurve read_curve_json(std::string_view text);

/// The case is inferred from the causal character of T and N in the first row.
SampledCurve read_curve_csv(std::string_view text);

/// JSON when the first non-blank character is '{', CSV otherwise.
SampledCurve read_curve(std::string_view text);

enum class Plane { YZ, XZ, XY };

Plane parse_plane(std::string_view name);

/// SVG 1.1 polyline of the curve projected on a coordinate plane; the view box
/// is the bounding box plus a 5% margin, vertical axis pointing up.
std::string render_svg(const SampledCurve& curve, Plane plane, double width, double height);

/// Shortest round-trip decimal.
std::string format_double(double v);

}  // namespace mspiral
