#pragma once

// Linear algebra of Minkowski 3-space with signature (+, +, -).
// The third coordinate is the timelike axis.

#include <array>
#include <cmath>
#include <string>
#include <string_view>

namespace mspiral {

struct LVec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr LVec3() = default;
    constexpr LVec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr LVec3& operator+=(const LVec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr LVec3& operator-=(const LVec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    constexpr LVec3& operator*=(double k) { x *= k; y *= k; z *= k; return *this; }

    friend constexpr LVec3 operator+(LVec3 a, const LVec3& b) { return a += b; }
    friend constexpr LVec3 operator-(LVec3 a, const LVec3& b) { return a -= b; }
    friend constexpr LVec3 operator-(const LVec3& a) { return {-a.x, -a.y, -a.z}; }
    friend constexpr LVec3 operator*(double k, LVec3 a) { return a *= k; }
    friend constexpr LVec3 operator*(LVec3 a, double k) { return a *= k; }
    friend constexpr LVec3 operator/(LVec3 a, double k) { return a *= (1.0 / k); }
    friend constexpr bool operator==(const LVec3&, const LVec3&) = default;

    constexpr std::array<double, 3> array() const { return {x, y, z}; }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline constexpr LVec3 kE1{1.0, 0.0, 0.0};
inline constexpr LVec3 kE2{0.0, 1.0, 0.0};
inline constexpr LVec3 kE3{0.0, 0.0, 1.0};

/// Indefinite inner product u.x*v.x + u.y*v.y - u.z*v.z.
constexpr double lorentz_dot(const LVec3& u, const LVec3& v) {
    return u.x * v.x + u.y * v.y - u.z * v.z;
}

constexpr double euclid_dot(const LVec3& u, const LVec3& v) {
    return u.x * v.x + u.y * v.y + u.z * v.z;
}

inline double euclid_norm(const LVec3& v) { return std::sqrt(euclid_dot(v, v)); }

/// sqrt(|<v,v>|); zero on the null cone.
inline double lorentz_norm(const LVec3& v) { return std::sqrt(std::abs(lorentz_dot(v, v))); }

/// Determinant of the 3x3 matrix with columns a, b, c.
constexpr double det3(const LVec3& a, const LVec3& b, const LVec3& c) {
    return a.x * (b.y * c.z - b.z * c.y) - b.x * (a.y * c.z - a.z * c.y) + c.x * (a.y * b.z - a.z * b.y);
}

/// The unique w with lorentz_dot(w, c) == det3(u, v, c) for every c.
///
/// det3(u, v, c) equals the Euclidean dot of c with the Euclidean cross product,
/// so w is that cross product with its timelike component negated.
constexpr LVec3 lorentz_cross(const LVec3& u, const LVec3& v) {
    return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, -(u.x * v.y - u.y * v.x)};
}

enum class CausalCharacter { Spacelike, Timelike, Lightlike };

inline constexpr double kDefaultCausalEpsilon = 1e-10;

/// Classifies v relative to the null cone. Vectors with
/// |<v,v>| <= eps * |v|^2 (Euclidean) are Lightlike. Throws NumericError on zero.
CausalCharacter causal_character(const LVec3& v, double eps = kDefaultCausalEpsilon);

std::string_view to_string(CausalCharacter c);

/// v / sqrt(|<v,v>|). Throws NumericError for zero or lightlike input.
LVec3 lorentz_normalize(const LVec3& v, double eps = kDefaultCausalEpsilon);

/// Causal case of a Frenet curve. The lightlike-normal case is not representable.
enum class CurveCase { Timelike, SpacelikeSpacelikeNormal, SpacelikeTimelikeNormal };

/// -1 for timelike curves, +1 for both spacelike cases.
constexpr int case_epsilon(CurveCase c) { return c == CurveCase::Timelike ? -1 : 1; }

/// Required signs of <T,T>, <N,N>, <B,B> for a case.
struct FrameSignature {
    double t;
    double n;
    double b;
};

constexpr FrameSignature frame_signature(CurveCase c) {
    switch (c) {
    case CurveCase::Timelike: return {-1.0, 1.0, 1.0};
    case CurveCase::SpacelikeSpacelikeNormal: return {1.0, 1.0, -1.0};
    case CurveCase::SpacelikeTimelikeNormal: return {1.0, -1.0, 1.0};
    }
    return {0.0, 0.0, 0.0};
}

/// Stable names used by the CLI and curve files.
std::string_view to_string(CurveCase c);

/// Accepts "timelike", "spacelike-spacelike-normal", "spacelike-timelike-normal".
/// "spacelike-null-normal" raises NullNormalError; anything else FormatError.
CurveCase parse_curve_case(std::string_view name);

struct FrenetFrame {
    LVec3 t;
    LVec3 n;
    LVec3 b;
    CurveCase curve_case = CurveCase::Timelike;
};

/// Largest deviation among the six inner-product constraints of the frame's case.
double frame_defect(const FrenetFrame& f);

struct ReorthoOptions {
    /// Frames whose defect exceeds this are rejected instead of corrected.
    double drift_tolerance = 1e-4;
    double causal_epsilon = kDefaultCausalEpsilon;
};

/// Lorentzian Gram-Schmidt of (T, N) followed by B = +-T x N. The sign of B is
/// taken from the input B so the frame's orientation is preserved.
/// Throws NumericError when the frame is degenerate or drifted past tolerance.
FrenetFrame reorthonormalize(const FrenetFrame& f, const ReorthoOptions& opts = {});

}  // namespace mspiral
