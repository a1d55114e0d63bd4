#ifndef ABVAC_QUADRATURE_HPP
#define ABVAC_QUADRATURE_HPP

#include <abvac/errors.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace abvac {

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_intervals = 4000;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

namespace detail {

// Gauss-Kronrod 7/15 (QUADPACK qk15 tables)
inline constexpr std::array<double, 8> gk15_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> gk15_wk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gk15_wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
};

template <class F>
Segment gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double rk = fc * gk15_wk[7];
    double rg = fc * gk15_wg[3];
    double rabs = std::abs(rk);
    std::array<double, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = h * gk15_x[j];
        f1[j] = f(c - dx);
        f2[j] = f(c + dx);
        const double s = f1[j] + f2[j];
        rk += gk15_wk[j] * s;
        rabs += gk15_wk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) rg += gk15_wg[j / 2] * s;
    }
    const double mean = 0.5 * rk;
    double rasc = gk15_wk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) rasc += gk15_wk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    const double ah = std::abs(h);
    rk *= h;
    rasc *= ah;
    rabs *= ah;
    double err = std::abs((rk - rg * h));
    if (rasc != 0.0 && err != 0.0) err = rasc * std::min(1.0, std::pow(200.0 * err / rasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (rabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * rabs, err);
    return {a, b, rk, err};
}

} // namespace detail

// Global adaptive bisection on [a, b].
template <class F>
QuadResult integrate(F&& f, double a, double b, QuadOptions opt = {}) {
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    auto cmp = [](const detail::Segment& x, const detail::Segment& y) { return x.error < y.error; };
    std::vector<detail::Segment> heap;
    heap.push_back(detail::gk15(f, a, b));
    out.evaluations = 15;
    double value = heap.front().value;
    double error = heap.front().error;
    while (true) {
        if (!std::isfinite(value)) break;
        if (error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(value))) {
            out.converged = true;
            break;
        }
        if (static_cast<int>(heap.size()) >= opt.max_intervals) break;
        std::pop_heap(heap.begin(), heap.end(), cmp);
        const detail::Segment s = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (s.a + s.b);
        if (mid == s.a || mid == s.b) {
            heap.push_back(s);
            std::push_heap(heap.begin(), heap.end(), cmp);
            break;
        }
        const detail::Segment l = detail::gk15(f, s.a, mid);
        const detail::Segment r = detail::gk15(f, mid, s.b);
        out.evaluations += 30;
        heap.push_back(l);
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back(r);
        std::push_heap(heap.begin(), heap.end(), cmp);
        // resum to avoid drift in long runs
        value = 0.0;
        error = 0.0;
        for (const auto& seg : heap) {
            value += seg.value;
            error += seg.error;
        }
    }
    out.value = value;
    out.error = error;
    return out;
}

// [a, inf) through x = a + t/(1-t)
template <class F>
QuadResult integrate_to_inf(F&& f, double a, QuadOptions opt = {}) {
    auto g = [&](double t) {
        if (t >= 1.0) return 0.0;
        const double u = 1.0 - t;
        const double v = f(a + t / u);
        return v == 0.0 ? 0.0 : v / (u * u);
    };
    return integrate(g, 0.0, 1.0, opt);
}

template <class F>
QuadResult integrate_scaled_to_inf(F&& f, double a, double scale, QuadOptions opt = {}) {
    auto g = [&](double t) {
        if (t >= 1.0) return 0.0;
        const double u = 1.0 - t;
        const double v = f(a + scale * t / u);
        return v == 0.0 ? 0.0 : scale * v / (u * u);
    };
    return integrate(g, 0.0, 1.0, opt);
}

inline double require(const QuadResult& q, const std::string& what) {
    if (!q.converged || !std::isfinite(q.value)) throw ConvergenceError(what + ": quadrature did not converge", q.error);
    return q.value;
}

struct Extrapolated {
    double value = 0.0;
    double error = 0.0;
};

// Fit values[i] = L + sum_j c_j h[i]^powers[j]; needs powers.size() == h.size() - 1.
// The error is the change against the fit that drops the last point.
inline Extrapolated richardson(std::span<const double> h, std::span<const double> values,
                               std::span<const double> powers) {
    const std::size_t n = h.size();
    if (n == 0 || values.size() != n || powers.size() + 1 != n) throw DomainError("richardson: size mismatch");
    auto solve = [&](std::size_t k) {
        // Gaussian elimination with partial pivoting on the k x k system
        std::vector<double> A(k * k), y(k);
        for (std::size_t i = 0; i < k; ++i) {
            A[i * k] = 1.0;
            for (std::size_t j = 1; j < k; ++j) A[i * k + j] = std::pow(h[i], powers[j - 1]);
            y[i] = values[i];
        }
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t p = c;
            for (std::size_t i = c + 1; i < k; ++i)
                if (std::abs(A[i * k + c]) > std::abs(A[p * k + c])) p = i;
            if (p != c) {
                for (std::size_t j = 0; j < k; ++j) std::swap(A[c * k + j], A[p * k + j]);
                std::swap(y[c], y[p]);
            }
            for (std::size_t i = c + 1; i < k; ++i) {
                const double f = A[i * k + c] / A[c * k + c];
                for (std::size_t j = c; j < k; ++j) A[i * k + j] -= f * A[c * k + j];
                y[i] -= f * y[c];
            }
        }
        std::vector<double> x(k);
        for (std::size_t i = k; i-- > 0;) {
            double s = y[i];
            for (std::size_t j = i + 1; j < k; ++j) s -= A[i * k + j] * x[j];
            x[i] = s / A[i * k + i];
        }
        return x[0];
    };
    Extrapolated e;
    e.value = solve(n);
    e.error = n > 1 ? std::abs(e.value - solve(n - 1)) : std::abs(e.value);
    return e;
}

} // namespace abvac

#endif // ABVAC_QUADRATURE_HPP
