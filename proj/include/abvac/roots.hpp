#ifndef ABVAC_ROOTS_HPP
#define ABVAC_ROOTS_HPP

#include <abvac/errors.hpp>

#include <cmath>
#include <string>

namespace abvac {

// Bisection on a bracket [lo, hi] with lo > 0, halving in log scale so that
// brackets spanning many decades converge evenly. One secant/Newton polish
// step is applied at the end using a central difference.
template <class F>
double find_root_log_bracket(F&& f, double lo, double hi, double rel_tol, const std::string& who) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) throw NoRootError(who + ": no sign change in bracket");
    for (int it = 0; it < 400 && hi / lo - 1.0 > 0.25 * rel_tol; ++it) {
        const double mid = std::sqrt(lo * hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    double x = std::sqrt(lo * hi);
    const double h = 1e-7 * x;
    const double d = (f(x + h) - f(x - h)) / (2.0 * h);
    if (d != 0.0 && std::isfinite(d)) {
        const double xn = x - f(x) / d;
        if (xn > lo && xn < hi) x = xn;
    }
    return x;
}

} // namespace abvac

#endif // ABVAC_ROOTS_HPP
