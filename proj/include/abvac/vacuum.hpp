#ifndef ABVAC_VACUUM_HPP
#define ABVAC_VACUUM_HPP

// Induced vacuum densities in units of e0 (e = -e0, e0 = 1).
//
// Free current:  j = -(e / (2 pi^2 r)) int_0^inf dE sum_l (l+mu) K_nu(z) I_nu(z),  z = sqrt(m^2+E^2) r,
// with K I = int_0^inf dy / sinh(y) exp(-2z coth y) I_{2nu}(2z / sinh y).
// The signed (l+mu) weight is the one that survives the s-summation and makes
// the l-sum convergent; the unsigned |l+mu| sum diverges like 1/y^3.
// For m = 0 the pipeline closes to
//   j = -e (2 beta - 1)^2 tan(pi beta) / (32 pi r^2).

#include <abvac/errors.hpp>
#include <abvac/quadrature.hpp>
#include <abvac/solutions.hpp>
#include <abvac/specfun.hpp>
#include <abvac/spectrum.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace abvac {

inline constexpr double charge = -1.0; // e in units of e0

struct QuadratureSpec {
    long l_max = 2000000;     // cap on |l| in direct l-sums
    double delta = 0.02;      // largest lower y-limit
    std::vector<double> deltas; // explicit ladder; empty means {delta, delta/2, delta/4}
    double E_max = 0.0;       // 0 selects z_max = 60 automatically
    double abs_tol = 1e-13;
    double rel_tol = 1e-8;
    bool direct_lsum = false; // massless: sum the Laplace terms instead of the closed l-sum

    std::vector<double> ladder() const {
        if (!deltas.empty()) return deltas;
        return {delta, 0.5 * delta, 0.25 * delta};
    }
    void validate() const {
        if (!(delta > 0.0)) throw DomainError("QuadratureSpec: delta must be positive");
        for (double d : deltas)
            if (!(d > 0.0)) throw DomainError("QuadratureSpec: ladder values must be positive");
        if (deltas.size() == 1) throw DomainError("QuadratureSpec: ladder needs at least two values");
        if (l_max < 10) throw DomainError("QuadratureSpec: l_max must be >= 10");
        if (!(rel_tol > 0.0) || !(abs_tol >= 0.0)) throw DomainError("QuadratureSpec: tolerances must be positive");
        if (E_max < 0.0) throw DomainError("QuadratureSpec: E_max must be nonnegative");
    }
    QuadOptions quad() const { return {abs_tol, rel_tol, 4000}; }
};

struct Estimate {
    double value = 0.0;
    double error = 0.0;     // achieved error estimate (quadrature + extrapolation + tails)
    double tail = 0.0;      // truncation tail estimate included in error
};

// ---------------------------------------------------------------- bound part

struct BoundDensity {
    double value = 0.0;
    bool present = false; // false: beta <= 1/2 or level beyond the continuum
};

inline bool bound_contributes(const BoundState& b) { return b.beta > 0.5 && b.E.has_value(); }

inline double bound_normalization(const BoundState& b) {
    if (!b.E) throw DomainError("bound_normalization: level beyond continuum");
    return normalize_bound(b.beta, b.lambda, *b.E, b.m);
}

inline BoundDensity bound_charge_density(double r, const BoundState& b) {
    if (!(r > 0.0)) throw DomainError("bound_charge_density: r must be positive");
    if (!bound_contributes(b)) return {};
    const double N = bound_normalization(b);
    const double x = b.lambda * r;
    const double k1 = bessel_k(b.beta, x), k2 = bessel_k(1.0 - b.beta, x);
    return {-charge * N * N * (k1 * k1 + k2 * k2), true};
}

inline BoundDensity bound_current_density(double r, const BoundState& b) {
    if (!(r > 0.0)) throw DomainError("bound_current_density: r must be positive");
    if (!bound_contributes(b)) return {};
    const double N = bound_normalization(b);
    const double x = b.lambda * r;
    return {-2.0 * charge * N * N * bessel_k(b.beta, x) * bessel_k(1.0 - b.beta, x), true};
}

// ------------------------------------------------------------- closed forms

inline double massless_current_closed(double r, double beta) {
    check_beta(beta, "massless_current_closed");
    if (!(r > 0.0)) throw DomainError("massless_current_closed: r must be positive");
    const double a = 2.0 * beta - 1.0;
    if (a == 0.0) return 0.0;
    return -charge * a * a * std::tan(pi * beta) / (32.0 * pi * r * r);
}

inline double massive_current_estimate(double r, double m, double beta) {
    if (!(m >= 0.0)) throw DomainError("massive_current_estimate: m must be nonnegative");
    return massless_current_closed(r, beta) / std::sqrt(1.0 + (m * r) * (m * r));
}

namespace printed {

inline double massless_current_closed(double r, double beta) {
    const double a = 2.0 * beta - 1.0;
    return charge * a * a * std::tanh(pi * beta) / (4.0 * pi * r * r);
}

inline double massive_current_estimate(double r, double m, double beta) {
    return massless_current_closed(r, beta) / std::sqrt(1.0 + (m * r) * (m * r));
}

} // namespace printed

// --------------------------------------------------------------- l-sums

// sum_l |l+beta| exp(-2|l+beta| y)
inline double lsum_closed(double y, double beta) {
    check_beta(beta, "lsum_closed");
    if (!(y > 0.0)) throw DomainError("lsum_closed: y must be positive");
    // sum_{k>=0} k q^k = q/(1-q)^2 = 1/(4 sinh^2 y),  sum_{k>=0} q^k = e^y/(2 sinh y),  q = e^{-2y}
    const double sh = std::sinh(y);
    const double A = 1.0 / (4.0 * sh * sh);
    const double B = std::exp(y) / (2.0 * sh);
    return std::exp(-2.0 * beta * y) * (A + beta * B) + std::exp(-2.0 * (1.0 - beta) * y) * (A + (1.0 - beta) * B);
}

// sum_l (l+beta) exp(-2|l+beta| y) = (a sinh(p y) - p sinh(a y)) / (4 sinh^2 y),
// a = 2 beta, p = 2 (1 - beta). The O(1/y) parts cancel identically; small y
// uses the series with (p^2n - a^2n) factored through p^2 - a^2 = 4 (1 - 2 beta).
inline double lsum_closed_signed(double y, double beta) {
    check_beta(beta, "lsum_closed_signed");
    if (!(y > 0.0)) throw DomainError("lsum_closed_signed: y must be positive");
    const double a = 2.0 * beta, p = 2.0 * (1.0 - beta);
    if (y < 0.5) {
        // sum_{n>=1} (p^2n - a^2n) y^(2n+1) / (2n+1)!,  p^2n - a^2n = (p^2 - a^2) sum_j p^2j a^2(n-1-j)
        const double a2 = a * a, p2 = p * p, y2 = y * y;
        double g = 1.0;      // sum_j p^2j a^2(n-1-j)
        double pw = 1.0;     // p^2(n-1)
        double t = y * y2 / 6.0;
        double sum = 0.0;
        for (int n = 1; n < 40; ++n) {
            const double term = g * t;
            sum += term;
            if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
            pw *= p2;
            g = g * a2 + pw;
            t *= y2 / ((2.0 * n + 2.0) * (2.0 * n + 3.0));
        }
        const double sh = std::sinh(y);
        return a * p * 4.0 * (1.0 - 2.0 * beta) * sum / (4.0 * sh * sh);
    }
    // scaled by e^{-2y} top and bottom
    auto sh_scaled = [y](double k) { return 0.5 * (std::exp((k - 2.0) * y) - std::exp(-(k + 2.0) * y)); };
    const double d = -std::expm1(-2.0 * y);
    return (a * sh_scaled(p) - p * sh_scaled(a)) / (d * d);
}

// ------------------------------------------------------------ free current

namespace detail {

// y-integral from each ladder value; returns the Richardson limit delta -> 0.
// g(y) is the l-summed integrand; the integrand is even in y so the
// correction terms are odd powers of delta.
template <class G>
Estimate y_integral_extrapolated(G&& g, const std::vector<double>& ladder, double scale, const QuadOptions& opt,
                                 const char* who) {
    std::vector<double> d = ladder;
    std::sort(d.begin(), d.end(), std::greater<>());
    for (double& v : d) v *= scale;
    // common piece from the largest delta, then the slices between ladder values
    auto f = [&](double t) { // y = e^t
        const double y = std::exp(t);
        return y * g(y);
    };
    const double tmax = std::log(300.0);
    const double t0 = std::log(d.front());
    QuadResult base = integrate(f, t0, std::max(t0, tmax), opt);
    require(base, who);
    std::vector<double> vals{base.value};
    double err = base.error;
    double acc = base.value;
    for (std::size_t i = 1; i < d.size(); ++i) {
        QuadResult piece = integrate(f, std::log(d[i]), std::log(d[i - 1]), opt);
        require(piece, who);
        acc += piece.value;
        err += piece.error;
        vals.push_back(acc);
    }
    std::vector<double> powers;
    for (std::size_t i = 1; i < d.size(); ++i) powers.push_back(2.0 * i - 1.0);
    const Extrapolated ex = richardson(d, vals, powers);
    return {ex.value, err + ex.error, 0.0};
}

} // namespace detail

// Signed l-sum of the Laplace-transformed massless terms at fixed y, by direct
// summation over l (with nu = l + mu computed from the unsplit flux) and a
// geometric tail bound with ratio exp(-2y).
inline double massless_lsum_direct(double y, double r, double mu, const QuadratureSpec& spec) {
    const double a = 2.0 * r / std::tanh(y), b = 2.0 * r / std::sinh(y);
    const long n = static_cast<long>(std::floor(mu));
    double sum = 0.0, mag = 0.0, tail = INFINITY;
    const double q2 = std::exp(-2.0 * y);
    for (long k = 0; k <= spec.l_max; ++k) {
        const long lp = k - n;      // l + mu = k + beta
        const long lm = -k - 1 - n; // l + mu = -(k + 1 - beta)
        const double np = static_cast<double>(lp) + mu;
        const double nm = static_cast<double>(lm) + mu;
        const double tp = np * laplace_bessel_integral(a, b, 2.0 * std::abs(np));
        const double tm = nm * laplace_bessel_integral(a, b, 2.0 * std::abs(nm));
        sum += tp + tm;
        mag += std::abs(tp) + std::abs(tm);
        const double last = std::abs(tp) + std::abs(tm);
        // tail <= last * sum_{j>=1} ((k+1+j)/(k+1)) q2^j
        tail = last * q2 / (1.0 - q2) * (1.0 + 1.0 / ((k + 1.0) * (1.0 - q2)));
        if (tail < 0.01 * spec.rel_tol * std::max(std::abs(sum), 1e-3 * spec.abs_tol) || last == 0.0) return sum;
        if (tail < 1e-18 * mag) return sum;
    }
    throw ConvergenceError("massless_current_numeric: l-sum tail exceeds tolerance at l_max", tail / std::max(std::abs(sum), 1e-300));
}

// Massless free current from the pipeline: Laplace E-integral, l-sum, y-integral
// from delta, delta -> 0 extrapolation.
inline Estimate massless_current_numeric_mu(double r, double mu, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (!(r > 0.0)) throw DomainError("massless_current_numeric: r must be positive");
    const FluxDecomposition fd = flux_decompose(mu);
    const double beta = fd.beta;
    auto g = [&](double y) -> double {
        double ls;
        if (spec.direct_lsum)
            ls = massless_lsum_direct(y, r, mu, spec);
        else
            ls = lsum_closed_signed(y, beta) / (2.0 * r); // laplace(.., 2nu) = e^{-2 nu y} / (2r)
        return ls / std::sinh(y);
    };
    QuadOptions opt = spec.quad();
    opt.abs_tol = std::max(spec.abs_tol, 1e-15);
    const Estimate e = detail::y_integral_extrapolated(g, spec.ladder(), 1.0, opt, "massless_current_numeric");
    const double pre = -charge / (2.0 * pi * pi * r);
    return {pre * e.value, std::abs(pre) * e.error, 0.0};
}

inline Estimate massless_current_numeric(double r, double beta, const QuadratureSpec& spec = {}) {
    check_beta(beta, "massless_current_numeric");
    return massless_current_numeric_mu(r, beta, spec);
}

namespace detail {

// e^{-x} I_{base+j}(x), j = 0..count-1, by downward ratio recurrence seeded
// with the Amos bounds for I_{n+1}/I_n at the top order.
inline void scaled_i_ladder(double base, double x, int count, std::vector<double>& out) {
    out.assign(count, 0.0);
    const double top = base + count - 1;
    const double lo = x / (top + 0.5 + std::sqrt((top + 1.5) * (top + 1.5) + x * x));
    const double hi = x / (top + 0.5 + std::sqrt((top + 0.5) * (top + 0.5) + x * x));
    double ratio = 0.5 * (lo + hi);
    for (int j = count - 1; j >= 0; --j) {
        out[j] = ratio;                                   // I_{base+j+1} / I_{base+j}
        ratio = 1.0 / (2.0 * (base + j) / x + ratio);     // I_{base+j} / I_{base+j-1}
    }
    double v = bessel_ik(base, x, true).i;
    for (int j = 0; j < count; ++j) {
        const double rj = out[j];
        out[j] = v;
        v *= rj;
    }
}

// sum_l (l+beta) e^{-2z tanh(y/2)} Itilde_{2|l+beta|}(2z/sinh y) / sinh y
inline double massive_y_integrand(double z, double y, double beta, std::vector<double>& ws) {
    if (y > 100.0) return 0.0; // below e^{-100} of the peak
    const double sh = std::sinh(y);
    const double w = 2.0 * z / sh;
    if (!(w > 1e-300)) return 0.0;
    const double pre = std::exp(-2.0 * z * std::tanh(0.5 * y)) / sh;
    if (pre == 0.0) return 0.0;
    int count = static_cast<int>(std::ceil(std::sqrt(90.0 * w) + 60.0));
    double rel = INFINITY;
    for (int attempt = 0; attempt < 6; ++attempt, count *= 2) {
        double sa = 0.0, sb = 0.0, mag = 0.0;
        scaled_i_ladder(2.0 * beta, w, count, ws);
        for (int j = 0; 2 * j < count; ++j) {
            const double t = (j + beta) * ws[2 * j];
            sa += t;
            mag += std::abs(t);
        }
        const double lastA = (count / 2 + beta) * ws[2 * ((count - 1) / 2)];
        scaled_i_ladder(2.0 - 2.0 * beta, w, count, ws);
        for (int j = 0; 2 * j < count; ++j) {
            const double t = (j + 1.0 - beta) * ws[2 * j];
            sb += t;
            mag += std::abs(t);
        }
        const double lastB = (count / 2 + 1.0 - beta) * ws[2 * ((count - 1) / 2)];
        if (std::max(lastA, lastB) < 1e-18 * mag || mag == 0.0) return pre * (sa - sb);
        rel = std::max(lastA, lastB) / mag;
    }
    throw ConvergenceError("massive_current_numeric: l-sum tail bound not met", rel);
}

} // namespace detail

// l-summed and y-integrated current kernel at fixed z (the E-integrand up to
// the prefactor); equals sum_l (l+beta) K_nu(z) I_nu(z) with the divergent
// constant removed by the delta regularization.
inline Estimate massive_e_integrand(double z, double beta, const QuadratureSpec& spec = {}) {
    check_beta(beta, "massive_e_integrand");
    if (!(z > 0.0)) throw DomainError("massive_e_integrand: z must be positive");
    std::vector<double> ws;
    auto g = [&](double y) { return detail::massive_y_integrand(z, y, beta, ws); };
    QuadOptions opt = spec.quad();
    return detail::y_integral_extrapolated(g, spec.ladder(), std::min(1.0, z), opt, "massive_current_numeric");
}

inline Estimate massive_current_numeric(double r, double m, double beta, const QuadratureSpec& spec = {}) {
    spec.validate();
    check_beta(beta, "massive_current_numeric");
    if (!(r > 0.0) || !(m >= 0.0)) throw DomainError("massive_current_numeric: need r > 0, m >= 0");
    const double zmax = spec.E_max > 0.0 ? std::sqrt(m * m + spec.E_max * spec.E_max) * r : 60.0;
    double err = 0.0;
    auto G = [&](double z) {
        const Estimate e = massive_e_integrand(z, beta, spec);
        err = std::max(err, e.error);
        return e.value;
    };
    QuadOptions opt = spec.quad();
    opt.abs_tol = std::max(spec.abs_tol, 1e-14);
    QuadResult q;
    double tail;
    if (m == 0.0) {
        // E = z / r
        q = integrate([&](double z) { return G(z); }, 0.0, zmax, opt);
        require(q, "massive_current_numeric");
        q.value /= r;
        q.error /= r;
        tail = std::abs(G(zmax)) * 1.0 / r; // exponential decay with rate >= 1
    } else {
        // E = m sinh u, z = m r cosh u
        const double mr = m * r;
        if (zmax <= mr) throw DomainError("massive_current_numeric: E_max too small");
        const double umax = std::acosh(zmax / mr);
        q = integrate([&](double u) { return G(mr * std::cosh(u)) * m * std::cosh(u); }, 0.0, umax, opt);
        require(q, "massive_current_numeric");
        tail = std::abs(G(zmax)) / (r * std::tanh(umax)); // dE/dz at the cutoff
    }
    const double pre = -charge / (2.0 * pi * pi * r);
    Estimate out;
    out.value = pre * q.value;
    out.tail = std::abs(pre) * tail;
    out.error = std::abs(pre) * (q.error + tail) + std::abs(pre) * err;
    return out;
}

// ----------------------------------------------------------- free charge

// Partial sums S_L, L = 1..Lmax, of the imaginary-axis charge integrand
//   j0 = +-e m int dE/(4 pi^2) sum_l K_nu(z) I_nu(z)   (upper sign for l+mu > 0)
// over |l| <= L with mu = beta. Every single-l E-integral grows like log(E_max),
// so the sums depend on the cutoff E_max (default z_max = 60).
inline std::vector<double> free_charge_partial_sums(double r, double m, double beta, int L, const QuadratureSpec& spec = {}) {
    check_beta(beta, "free_charge_partial_sums");
    if (L < 1) throw DomainError("free_charge_partial_sums: L must be >= 1");
    if (!(r > 0.0) || !(m > 0.0)) throw DomainError("free_charge_partial_sums: need r > 0, m > 0");
    const double zmax = spec.E_max > 0.0 ? std::sqrt(m * m + spec.E_max * spec.E_max) * r : 60.0;
    const double mr = m * r;
    const double umax = std::acosh(std::max(zmax / mr, 1.0 + 1e-12));
    QuadOptions opt = spec.quad();
    opt.rel_tol = std::max(opt.rel_tol, 1e-10);
    auto term = [&](double nu) {
        auto f = [&](double u) {
            const double z = mr * std::cosh(u);
            return ki_product(nu, z) * m * std::cosh(u);
        };
        const QuadResult q = integrate(f, 0.0, umax, opt);
        return 2.0 * charge * m / (4.0 * pi * pi) * require(q, "free_charge_partial_sums");
    };
    std::vector<double> out;
    double s = term(beta); // l = 0
    for (int l = 1; l <= L; ++l) {
        s += term(l + beta);       // l > 0, upper sign
        s -= term(l - beta);       // l = -l, l + mu < 0, lower sign
        out.push_back(s);
    }
    return out;
}

// ----------------------------------------------------------- finite size

inline std::pair<double, double> finite_size_suppression(double r, double R, double beta, double theta) {
    check_beta(beta, "finite_size_suppression");
    if (!(R > 0.0) || !(r >= 10.0 * R)) throw DomainError("finite_size_suppression: requires r >= 10 R");
    const double q = R / r;
    const double h = 0.5 * theta / pi; // half-angle in units of pi, exact zeros at theta = 0, pi
    return {q * q * detail::cospi(h), std::pow(q, 2.0 * beta) * detail::sinpi(h)};
}

// ----------------------------------------------------------- profile

struct ProfileParams {
    double beta = 0.25;
    double m = 0.0;
    double R = 1.0;
    bool massive = false;
    double theta = 0.0;   // SAE parameter for the finite-size factors
    unsigned threads = 0; // 0: hardware concurrency
};

struct DensityProfile {
    ProfileParams params;
    QuadratureSpec spec;
    std::optional<BoundState> bound;
    bool bound_included = false;
    std::vector<double> r;
    std::vector<double> j0_b, jphi_b;
    std::vector<double> jphi_v, jphi_v_err;
    std::vector<double> jphi_total;
    std::vector<double> jphi_closed, jphi_closed_printed;     // massless closed forms
    std::vector<double> jphi_estimate, jphi_estimate_printed; // sqrt(1+(mr)^2) replacement, equal to closed at m = 0
    std::vector<double> fs_cos, fs_sin;                       // finite-size factors, NaN for r < 10 R
};

inline void validate_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw DomainError("density_profile: empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) throw DomainError("density_profile: grid values must be positive");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("density_profile: grid must be strictly increasing");
    }
}

inline DensityProfile density_profile(const ProfileParams& pp, const std::vector<double>& grid, const QuadratureSpec& spec) {
    validate_grid(grid);
    spec.validate();
    check_beta(pp.beta, "density_profile");
    if (pp.massive && !(pp.m > 0.0)) throw DomainError("density_profile: massive mode needs m > 0");
    if (!(pp.R > 0.0)) throw DomainError("density_profile: R must be positive");
    if (!(pp.theta >= 0.0 && pp.theta <= 2.0 * pi)) throw DomainError("density_profile: theta must lie in [0, 2 pi]");
    DensityProfile out;
    out.params = pp;
    out.spec = spec;
    const std::size_t n = grid.size();
    out.r = grid;
    out.j0_b.assign(n, 0.0);
    out.jphi_b.assign(n, 0.0);
    out.jphi_v.assign(n, 0.0);
    out.jphi_v_err.assign(n, 0.0);
    out.jphi_total.assign(n, 0.0);
    out.jphi_closed.assign(n, 0.0);
    out.jphi_closed_printed.assign(n, 0.0);
    out.jphi_estimate.assign(n, 0.0);
    out.jphi_estimate_printed.assign(n, 0.0);
    out.fs_cos.assign(n, std::numeric_limits<double>::quiet_NaN());
    out.fs_sin.assign(n, std::numeric_limits<double>::quiet_NaN());
    const double m = pp.massive ? pp.m : 0.0;
    if (m > 0.0) {
        out.bound = find_bound_state(pp.beta, -1, pp.R, m);
        out.bound_included = out.bound && bound_contributes(*out.bound);
    }
    std::vector<std::exception_ptr> errs(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                const double r = grid[i];
                const Estimate e = m > 0.0 ? massive_current_numeric(r, m, pp.beta, spec)
                                           : massless_current_numeric(r, pp.beta, spec);
                out.jphi_v[i] = e.value;
                out.jphi_v_err[i] = e.error;
                if (out.bound_included) {
                    out.j0_b[i] = bound_charge_density(r, *out.bound).value;
                    out.jphi_b[i] = bound_current_density(r, *out.bound).value;
                }
                out.jphi_total[i] = out.jphi_b[i] + out.jphi_v[i];
                out.jphi_closed[i] = massless_current_closed(r, pp.beta);
                out.jphi_closed_printed[i] = printed::massless_current_closed(r, pp.beta);
                out.jphi_estimate[i] = massive_current_estimate(r, m, pp.beta);
                out.jphi_estimate_printed[i] = printed::massive_current_estimate(r, m, pp.beta);
                if (r >= 10.0 * pp.R) std::tie(out.fs_cos[i], out.fs_sin[i]) = finite_size_suppression(r, pp.R, pp.beta, pp.theta);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    unsigned nt = pp.threads ? pp.threads : std::max(1u, std::thread::hardware_concurrency());
    nt = static_cast<unsigned>(std::min<std::size_t>(nt, n));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nt; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < n; ++i) {
        if (!errs[i]) continue;
        char rbuf[32];
        std::snprintf(rbuf, sizeof rbuf, "%.6g", grid[i]);
        const std::string where = "density_profile: grid index " + std::to_string(i) + " (r=" + rbuf + "): ";
        try {
            std::rethrow_exception(errs[i]);
        } catch (const ConvergenceError& e) {
            throw ConvergenceError(where + e.message, e.achieved_error);
        } catch (const DomainError& e) {
            throw DomainError(where + e.what());
        } catch (const std::exception& e) {
            throw RangeError(where + e.what());
        }
    }
    return out;
}

} // namespace abvac

#endif // ABVAC_VACUUM_HPP
