#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace sensewall {

// Tolerances for the adaptive quadrature.
struct QuadratureSpec {
    double abs_tol = 1e-9;
    int max_depth = 40;
};

// Thrown when the integrator cannot reach abs_tol; carries the best estimate.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(std::string what, double partial)
        : std::runtime_error(std::move(what)), partial_(partial) {}

    double partial() const { return partial_; }

private:
    double partial_;
};

// Complete gamma function, Lanczos approximation with reflection.
// Relative error below 1e-12 on (0, 50].
double gamma_fn(double a);

// Moment constants of |z|^p for z standard complex normal:
//   g_p = E|z|^p = Gamma((p+2)/2),  k_p = Var|z|^p = Gamma(p+1) - g_p^2.
double g_p(double p);
double k_p(double p);

// Gaussian tail probability Q(t) = P(Z > t), Z standard normal.
double q_function(double t);

namespace detail {

template <class F>
struct SimpsonRun {
    const F& f;
    double abs_tol;
    int max_depth;
    double unresolved = 0.0;  // residual mass left behind at max_depth

    double eval(double x) const {
        const double y = f(x);
        if (!std::isfinite(y)) {
            throw std::domain_error("integrate: integrand not finite at x=" + std::to_string(x));
        }
        return y;
    }

    static double simpson(double a, double b, double fa, double fm, double fb) {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }

    double refine(double a, double b, double fa, double fm, double fb,
                  double whole, double tol, int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = eval(lm);
        const double frm = eval(rm);
        const double left = simpson(a, m, fa, flm, fm);
        const double right = simpson(m, b, fm, frm, fb);
        const double delta = left + right - whole;
        if (std::abs(delta) <= 15.0 * tol) {
            return left + right + delta / 15.0;
        }
        if (depth <= 0) {
            unresolved += std::abs(delta);
            return left + right;
        }
        return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
               refine(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
};

}  // namespace detail

// Adaptive Simpson quadrature of f over [a, b] with interval bisection.
// The initial mesh has 16 panels so that narrow interior transition layers
// are seen before the error test runs.
template <class F>
double integrate(F&& f, double a, double b, QuadratureSpec spec = {}) {
    if (!(a < b)) throw std::domain_error("integrate: requires a < b");
    if (!(spec.abs_tol > 0.0)) throw std::domain_error("integrate: abs_tol must be > 0");
    if (spec.max_depth < 1) throw std::domain_error("integrate: max_depth must be >= 1");

    constexpr int kPanels = 16;
    detail::SimpsonRun<std::remove_reference_t<F>> run{f, spec.abs_tol, spec.max_depth, 0.0};

    const double h = (b - a) / kPanels;
    const double panel_tol = spec.abs_tol / kPanels;
    double total = 0.0;
    double fa = run.eval(a);
    for (int i = 0; i < kPanels; ++i) {
        const double x0 = a + i * h;
        const double x1 = (i == kPanels - 1) ? b : a + (i + 1) * h;
        const double xm = 0.5 * (x0 + x1);
        const double fm = run.eval(xm);
        const double fb = run.eval(x1);
        const double whole = detail::SimpsonRun<std::remove_reference_t<F>>::simpson(x0, x1, fa, fm, fb);
        total += run.refine(x0, x1, fa, fm, fb, whole, panel_tol, spec.max_depth);
        fa = fb;
    }
    if (run.unresolved > spec.abs_tol) {
        throw ConvergenceError("integrate: max_depth exhausted before reaching abs_tol", total);
    }
    return total;
}

}  // namespace sensewall
