#include "test_support.hpp"

#include <cmath>

namespace hmortar::testing {

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa, double b,
               double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa, double b,
             double fb, double fm, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, fa, m, fm, flm);
    const double right = simpson(f, m, fm, b, fb, frm);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adapt(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = simpson(f, a, fa, b, fb, fm);
    return adapt(f, a, fa, b, fb, fm, whole, tol, 48);
}

} // namespace hmortar::testing
