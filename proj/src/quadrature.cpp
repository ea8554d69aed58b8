#include "mspiral/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "mspiral/errors.hpp"

namespace mspiral {

namespace {

// QUADPACK 15-point Kronrod abscissae; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

QuadratureResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double sum = f(c - dx) + f(c + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    return {kronrod * h, std::abs((kronrod - gauss) * h)};
}

struct Panel {
    double a;
    double b;
    QuadratureResult r;
    int depth;
    bool operator<(const Panel& o) const { return r.error < o.r.error; }
};

[[noreturn]] void fail_near(double s, const char* detail) {
    std::ostringstream msg;
    msg << "nonintegrable singularity near s=" << s << detail;
    throw NumericError(msg.str());
}

Panel make_panel(const std::function<double(double)>& f, double a, double b, int depth) {
    const auto r = gk15(f, a, b);
    if (!std::isfinite(r.value)) fail_near(0.5 * (a + b), "");
    return {a, b, r, depth};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int max_depth) {
    if (a == b) return {0.0, 0.0};
    if (b < a) {
        auto r = integrate_adaptive(f, b, a, abs_tol, max_depth);
        return {-r.value, r.error};
    }
    // Global adaptivity: always bisect the panel with the largest error estimate.
    std::priority_queue<Panel> panels;
    panels.push(make_panel(f, a, b, 0));
    double value = panels.top().r.value;
    double error = panels.top().r.error;
    while (true) {
        const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * std::abs(value);
        if (error <= abs_tol || error <= roundoff) return {value, error};
        const Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.depth >= max_depth || mid <= worst.a || mid >= worst.b) {
            fail_near(mid, " (quadrature did not converge)");
        }
        const auto left = make_panel(f, worst.a, mid, worst.depth + 1);
        const auto right = make_panel(f, mid, worst.b, worst.depth + 1);
        value += left.r.value + right.r.value - worst.r.value;
        error += left.r.error + right.r.error - worst.r.error;
        panels.push(left);
        panels.push(right);
    }
}

}  // namespace mspiral
