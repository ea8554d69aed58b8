#include "mspiral/lorentz.hpp"

#include <algorithm>
#include <sstream>

#include "mspiral/errors.hpp"

namespace mspiral {

CausalCharacter causal_character(const LVec3& v, double eps) {
    const double e2 = euclid_dot(v, v);
    if (!(e2 > 0.0)) {
        throw NumericError("undefined causal character: zero vector");
    }
    const double q = lorentz_dot(v, v);
    if (q < -eps * e2) return CausalCharacter::Timelike;
    if (q > eps * e2) return CausalCharacter::Spacelike;
    return CausalCharacter::Lightlike;
}

std::string_view to_string(CausalCharacter c) {
    switch (c) {
    case CausalCharacter::Spacelike: return "spacelike";
    case CausalCharacter::Timelike: return "timelike";
    case CausalCharacter::Lightlike: return "lightlike";
    }
    return "unknown";
}

LVec3 lorentz_normalize(const LVec3& v, double eps) {
    if (causal_character(v, eps) == CausalCharacter::Lightlike) {
        throw NumericError("cannot normalize a lightlike vector");
    }
    return v / lorentz_norm(v);
}

std::string_view to_string(CurveCase c) {
    switch (c) {
    case CurveCase::Timelike: return "timelike";
    case CurveCase::SpacelikeSpacelikeNormal: return "spacelike-spacelike-normal";
    case CurveCase::SpacelikeTimelikeNormal: return "spacelike-timelike-normal";
    }
    return "unknown";
}

CurveCase parse_curve_case(std::string_view name) {
    if (name == "timelike") return CurveCase::Timelike;
    if (name == "spacelike-spacelike-normal") return CurveCase::SpacelikeSpacelikeNormal;
    if (name == "spacelike-timelike-normal") return CurveCase::SpacelikeTimelikeNormal;
    if (name == "spacelike-null-normal") {
        throw NullNormalError("curves with a lightlike principal normal have no curvature");
    }
    throw FormatError("unknown curve case '" + std::string(name) + "'");
}

double frame_defect(const FrenetFrame& f) {
    const auto sig = frame_signature(f.curve_case);
    const double d[] = {
        std::abs(lorentz_dot(f.t, f.t) - sig.t), std::abs(lorentz_dot(f.n, f.n) - sig.n),
        std::abs(lorentz_dot(f.b, f.b) - sig.b), std::abs(lorentz_dot(f.t, f.n)),
        std::abs(lorentz_dot(f.t, f.b)),         std::abs(lorentz_dot(f.n, f.b)),
    };
    return *std::max_element(std::begin(d), std::end(d));
}

namespace {

// Normalizes v and checks that its squared norm has the required sign.
LVec3 normalize_with_sign(const LVec3& v, double want, const char* label, double eps) {
    const auto cc = causal_character(v, eps);
    if (cc == CausalCharacter::Lightlike) {
        throw NumericError(std::string("degenerate frame: ") + label + " is lightlike");
    }
    const double got = cc == CausalCharacter::Timelike ? -1.0 : 1.0;
    if (got != want) {
        std::ostringstream msg;
        msg << "degenerate frame: " << label << " is " << to_string(cc) << ", expected "
            << (want < 0 ? "timelike" : "spacelike");
        throw NumericError(msg.str());
    }
    return v / lorentz_norm(v);
}

}  // namespace

FrenetFrame reorthonormalize(const FrenetFrame& f, const ReorthoOptions& opts) {
    if (!f.t.finite() || !f.n.finite() || !f.b.finite()) {
        throw NumericError("degenerate frame: non-finite component");
    }
    const double defect = frame_defect(f);
    if (defect > opts.drift_tolerance) {
        std::ostringstream msg;
        msg << "frame drift " << defect << " exceeds tolerance " << opts.drift_tolerance;
        throw NumericError(msg.str());
    }
    const auto sig = frame_signature(f.curve_case);

    FrenetFrame out;
    out.curve_case = f.curve_case;
    out.t = normalize_with_sign(f.t, sig.t, "T", opts.causal_epsilon);
    // Projection onto T uses <T,T> = sig.t.
    const LVec3 n_perp = f.n - (lorentz_dot(f.n, out.t) * sig.t) * out.t;
    out.n = normalize_with_sign(n_perp, sig.n, "N", opts.causal_epsilon);

    const LVec3 cross = lorentz_cross(out.t, out.n);
    // For an orthonormal pair <T x N, T x N> = -<T,T><N,N>, which is sig.b.
    const double orientation = lorentz_dot(f.b, cross) * sig.b;
    out.b = orientation < 0.0 ? -cross : cross;
    return out;
}

}  // namespace mspiral
