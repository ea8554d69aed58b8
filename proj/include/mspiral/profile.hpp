#pragma once

// Curvature and torsion profiles: scalar expressions in the arc length s.
//
// Grammar (whitespace ignored):
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := number | 's' | '(' expr ')' | '-' factor | ident '(' expr ')'
// with ident one of sin, cos, sinh, cosh, exp, ln.

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mspiral {

enum class BinaryOp { Add, Sub, Mul, Div };
enum class Function { Sin, Cos, Sinh, Cosh, Exp, Ln };

std::string_view to_string(Function f);

/// Immutable expression tree. Copies share structure.
class ProfileExpr {
public:
    struct Node;

    static ProfileExpr parse(std::string_view text);

    static ProfileExpr number(double value);
    static ProfileExpr variable();
    static ProfileExpr negate(ProfileExpr operand);
    static ProfileExpr binary(BinaryOp op, ProfileExpr lhs, ProfileExpr rhs);
    static ProfileExpr call(Function fn, ProfileExpr arg);

    /// Throws DomainError naming the offending subexpression and s.
    double eval(double s) const;

    /// Text in the profile grammar with minimal parentheses; reparses to an equal tree.
    std::string to_string() const;

    /// Fully explicit prefix form, e.g. "(+ (* 2 s) 1)". Used for golden comparisons.
    std::string to_sexpr() const;

    /// True when the expression does not mention s.
    bool is_constant() const;

    const Node& node() const { return *node_; }

    friend bool operator==(const ProfileExpr& a, const ProfileExpr& b);

private:
    explicit ProfileExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

inline ProfileExpr operator+(ProfileExpr a, ProfileExpr b) { return ProfileExpr::binary(BinaryOp::Add, std::move(a), std::move(b)); }
inline ProfileExpr operator-(ProfileExpr a, ProfileExpr b) { return ProfileExpr::binary(BinaryOp::Sub, std::move(a), std::move(b)); }
inline ProfileExpr operator*(ProfileExpr a, ProfileExpr b) { return ProfileExpr::binary(BinaryOp::Mul, std::move(a), std::move(b)); }
inline ProfileExpr operator/(ProfileExpr a, ProfileExpr b) { return ProfileExpr::binary(BinaryOp::Div, std::move(a), std::move(b)); }

/// Detected family of a profile.
struct CanonicalForm {
    enum class Kind { Constant, Linear, ReciprocalLinear, Other };
    Kind kind = Kind::Other;
    /// Constant: {c}. Linear: {a, b} for a*s+b. ReciprocalLinear: {a, b} for 1/(a*s+b).
    std::vector<double> coefficients;
    /// True when the form was read off the tree rather than probed numerically.
    bool structural = false;
};

std::string_view to_string(CanonicalForm::Kind k);

/// Structural match first, then a numeric probe at five generic points.
CanonicalForm canonicalize(const ProfileExpr& p);

inline constexpr double kDefaultFitTolerance = 1e-6;

struct FitResult {
    std::vector<double> coefficients;
    /// Max absolute deviation over the samples.
    double residual = 0.0;
    bool ok = false;
};

struct Sample2 {
    double s;
    double value;
};

struct Sample3 {
    double s;
    double kappa;
    double tau;
};

/// Least-squares a*s+b. Coefficients {a, b}. Throws NumericError if all s coincide.
FitResult fit_linear(std::span<const Sample2> samples, double tolerance = kDefaultFitTolerance);

/// Least-squares constant. Coefficients {c}.
FitResult fit_constant(std::span<const Sample2> samples, double tolerance = kDefaultFitTolerance);

/// Homogeneous fit of kappa*(c*s+d) - tau*(a*s+b) = 0 with a^2+b^2+c^2+d^2 = 1,
/// i.e. kappa/tau = (a*s+b)/(c*s+d). Coefficients {a, b, c, d}.
FitResult fit_ratio_rational_linear(std::span<const Sample3> samples,
                                    double tolerance = kDefaultFitTolerance);

}  // namespace mspiral
