#ifndef ABVAC_SOLUTIONS_HPP
#define ABVAC_SOLUTIONS_HPP

// Radial doublets of the 2D Dirac operator in the AB potential.
//
// With kappa = l + mu, sigma = sign(kappa), nu = |kappa| the radial system is
//   (m - E) f1 + s f2' + ((kappa + s)/r) f2 = 0
//   -s f1' + (kappa/r) f1 - (m + E) f2 = 0
// so every lower component follows from f2 = (-s f1' + kappa f1 / r)/(E + m):
//   J_nu      -> sigma w2 J_{nu + sigma s}      (w1 = sqrt|E+m|, w2 = sgn(E+m) sqrt|E-m|)
//   J_{-nu}   -> -sigma w2 J_{-nu - sigma s}
//   K_nu      -> s sqrt(m-E) K_{nu + sigma s}
//   I_nu      -> -s sqrt(m-E) I_{nu + sigma s}

#include <abvac/errors.hpp>
#include <abvac/quadrature.hpp>
#include <abvac/specfun.hpp>
#include <abvac/spectrum.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace abvac {

enum class DoubletKind { regular_F, irregular_U, macdonald_V, modified_regular, free_S, bound_V0, sae_regular };

inline const char* to_string(DoubletKind k) {
    switch (k) {
    case DoubletKind::regular_F: return "regular-F";
    case DoubletKind::irregular_U: return "irregular-U";
    case DoubletKind::macdonald_V: return "macdonald-V";
    case DoubletKind::modified_regular: return "modified-regular";
    case DoubletKind::free_S: return "free-S";
    case DoubletKind::bound_V0: return "bound-V0";
    case DoubletKind::sae_regular: return "sae-regular";
    }
    return "?";
}

enum class Integrability { square_integrable, not_square_integrable };

struct DoubletParams {
    double E = 0.0;
    double m = 1.0;
    long l = 0;
    double mu = 0.0; // bound-V0 and sae-regular use only its fractional part
    int s = -1;
    double theta = 0.0;
    double amplitude = 1.0;
};

struct Components {
    double f1 = 0.0;
    double f2 = 0.0;
};

class RadialDoublet {
public:
    DoubletKind kind() const { return kind_; }
    const DoubletParams& params() const { return p_; }
    double kappa() const { return kappa_; }
    double nu() const { return nu_; }
    int sigma() const { return sigma_; }
    // p for oscillating kinds, lambda for decaying/growing ones
    double wavenumber() const { return k_; }
    Integrability near_origin() const { return near0_; }
    Integrability near_infinity() const { return nearinf_; }

    Components operator()(double r) const {
        if (!(r > 0.0)) throw DomainError("RadialDoublet: r must be positive");
        const double x = k_ * r;
        const double A = p_.amplitude;
        const double sg = sigma_;
        const double s = p_.s;
        switch (kind_) {
        case DoubletKind::regular_F:
        case DoubletKind::free_S:
            return {A * w1_ * bessel_j(nu_, x), A * sg * w2_ * bessel_j(nu_ + sg * s, x)};
        case DoubletKind::irregular_U:
            return {A * w1_ * bessel_j(-nu_, x), -A * sg * w2_ * bessel_j(-nu_ - sg * s, x)};
        case DoubletKind::macdonald_V:
        case DoubletKind::bound_V0:
            return {A * w1_ * bessel_k(nu_, x), A * s * w2_ * bessel_k(nu_ + sg * s, x)};
        case DoubletKind::modified_regular:
            return {A * w1_ * bessel_i(nu_, x), -A * s * w2_ * bessel_i(nu_ + sg * s, x)};
        case DoubletKind::sae_regular: {
            const double c = std::cos(0.5 * p_.theta), sn = std::sin(0.5 * p_.theta);
            const double f1 = c * bessel_j(nu_, x) - sn * bessel_j(-nu_, x);
            const double f2 = c * bessel_j(nu_ + sg * s, x) + sn * bessel_j(-nu_ - sg * s, x);
            return {A * w1_ * f1, A * sg * w2_ * f2};
        }
        }
        return {};
    }

private:
    friend RadialDoublet make_doublet(DoubletKind kind, const DoubletParams& p);
    DoubletKind kind_ = DoubletKind::regular_F;
    DoubletParams p_{};
    double kappa_ = 0.0, nu_ = 0.0, k_ = 0.0, w1_ = 0.0, w2_ = 0.0;
    int sigma_ = 1;
    Integrability near0_ = Integrability::square_integrable;
    Integrability nearinf_ = Integrability::not_square_integrable;
};

inline RadialDoublet make_doublet(DoubletKind kind, const DoubletParams& p) {
    if (p.s != 1 && p.s != -1) throw DomainError("make_doublet: spin must be +-1");
    if (!(p.m >= 0.0)) throw DomainError("make_doublet: mass must be nonnegative");
    RadialDoublet d;
    d.kind_ = kind;
    d.p_ = p;
    const double E = p.E, m = p.m;
    switch (kind) {
    case DoubletKind::regular_F:
    case DoubletKind::irregular_U:
    case DoubletKind::free_S:
    case DoubletKind::sae_regular:
        if (!(E * E > m * m)) throw DomainError(std::string("make_doublet(") + to_string(kind) + "): requires E^2 > m^2");
        d.k_ = std::sqrt((E - m) * (E + m));
        d.w1_ = std::sqrt(std::abs(E + m));
        d.w2_ = std::copysign(std::sqrt(std::abs(E - m)), E + m);
        break;
    case DoubletKind::macdonald_V:
    case DoubletKind::modified_regular:
    case DoubletKind::bound_V0:
        if (!(E * E < m * m)) throw DomainError(std::string("make_doublet(") + to_string(kind) + "): requires E^2 < m^2");
        d.k_ = std::sqrt((m - E) * (m + E));
        d.w1_ = std::sqrt(m + E);
        d.w2_ = std::sqrt(m - E);
        break;
    }
    switch (kind) {
    case DoubletKind::free_S:
        d.p_.mu = 0.0;
        d.kappa_ = static_cast<double>(p.l);
        break;
    case DoubletKind::bound_V0:
    case DoubletKind::sae_regular: {
        const double beta = p.mu - std::floor(p.mu);
        check_beta(beta, "make_doublet");
        if (kind == DoubletKind::sae_regular && !(p.theta >= 0.0 && p.theta <= 2.0 * pi))
            throw DomainError("make_doublet(sae-regular): theta must lie in [0, 2 pi]");
        d.kappa_ = p.s == -1 ? beta : beta - 1.0;
        d.p_.l = static_cast<long>(std::lround(d.kappa_ - p.mu));
        break;
    }
    default:
        d.kappa_ = static_cast<double>(p.l) + p.mu;
    }
    d.sigma_ = d.kappa_ < 0.0 ? -1 : 1;
    d.nu_ = std::abs(d.kappa_);
    if (kind == DoubletKind::irregular_U && detail::is_integer(d.nu_))
        throw DomainError("make_doublet(irregular-U): J_{-nu} is not independent at integer nu");
    // integrability class: near 0 decided by the most singular power, near infinity by decay
    auto sing = [](double order) { return std::abs(order) < 1.0; }; // r^{-|a|} is L2(r dr) iff |a| < 1
    switch (kind) {
    case DoubletKind::regular_F:
    case DoubletKind::free_S:
        d.near0_ = Integrability::square_integrable;
        d.nearinf_ = Integrability::not_square_integrable;
        break;
    case DoubletKind::irregular_U:
    case DoubletKind::sae_regular:
        d.near0_ = sing(d.nu_) && sing(d.nu_ + d.sigma_ * p.s) ? Integrability::square_integrable
                                                                : Integrability::not_square_integrable;
        d.nearinf_ = Integrability::not_square_integrable;
        break;
    case DoubletKind::macdonald_V:
    case DoubletKind::bound_V0:
        d.near0_ = sing(d.nu_) && sing(d.nu_ + d.sigma_ * p.s) ? Integrability::square_integrable
                                                                : Integrability::not_square_integrable;
        d.nearinf_ = Integrability::square_integrable;
        break;
    case DoubletKind::modified_regular:
        d.near0_ = Integrability::square_integrable;
        d.nearinf_ = Integrability::not_square_integrable;
        break;
    }
    return d;
}

// Max component of (h - E) F with a 5-point central difference, h = 1e-4 max(1, r).
// Each row is divided by max(1, largest term in that row) so that growing or
// singular doublets are judged by cancellation rather than raw magnitude.
inline double dirac_residual(const RadialDoublet& d, double r) {
    if (!(r > 0.0)) throw DomainError("dirac_residual: r must be positive");
    const double h = 1e-4 * std::max(1.0, r);
    if (r - 2.0 * h <= 0.0) throw DomainError("dirac_residual: stencil reaches the origin (step-size underflow)");
    const Components c = d(r);
    const Components a = d(r - 2 * h), b = d(r - h), e = d(r + h), g = d(r + 2 * h);
    const double d1 = (a.f1 - 8.0 * b.f1 + 8.0 * e.f1 - g.f1) / (12.0 * h);
    const double d2 = (a.f2 - 8.0 * b.f2 + 8.0 * e.f2 - g.f2) / (12.0 * h);
    const auto& p = d.params();
    const double s = p.s, k = d.kappa();
    const double t1[3] = {(p.m - p.E) * c.f1, s * d2, (k + s) / r * c.f2};
    const double t2[3] = {-s * d1, k / r * c.f1, -(p.m + p.E) * c.f2};
    auto rel = [](const double* t) {
        const double sc = std::max({1.0, std::abs(t[0]), std::abs(t[1]), std::abs(t[2])});
        return std::abs(t[0] + t[1] + t[2]) / sc;
    };
    return std::max(rel(t1), rel(t2));
}

inline double wronskian(const RadialDoublet& v, const RadialDoublet& f, double r) {
    const auto& a = v.params();
    const auto& b = f.params();
    if (a.E != b.E || a.m != b.m || a.s != b.s || std::abs(v.kappa() - f.kappa()) > 1e-14 * (1.0 + std::abs(v.kappa())))
        throw DomainError("wronskian: doublets must share (E, l, mu, s)");
    const Components x = v(r), y = f(r);
    return r * (x.f1 * y.f2 - y.f1 * x.f2);
}

// Wr(V, I-regular) = -s A C on both branches of sign(l + mu)
inline double wronskian_vf_closed(int s, double A, double C) { return -s * A * C; }

namespace printed {
// upper sign for l + mu > 0
inline double wronskian_vf_sign(double kappa) { return kappa > 0.0 ? -1.0 : 1.0; }
} // namespace printed

// int_0^inf t K_nu(t)^2 dt = pi nu / (2 sin(pi nu)), |nu| < 1
inline double kk_moment(double nu) {
    nu = std::abs(nu);
    if (!(nu < 1.0)) throw DomainError("kk_moment: divergent for |nu| >= 1");
    if (nu == 0.0) return 0.5;
    return pi * nu / (2.0 * std::sin(pi * nu));
}

// same integral by quadrature in t = e^u
inline QuadResult kk_moment_quadrature(double nu, QuadOptions opt = {}) {
    nu = std::abs(nu);
    if (!(nu < 1.0)) throw DomainError("kk_moment_quadrature: divergent for |nu| >= 1");
    auto f = [&](double u) {
        const double t = std::exp(u);
        const double k = detail::bessel_ik(nu, t, true).k;
        return t * t * k * k * std::exp(-2.0 * t);
    };
    return integrate(f, -60.0, 6.0, opt);
}

inline double normalize_bound(double beta, double lambda, double E, double m) {
    check_beta(beta, "normalize_bound");
    if (!(lambda > 0.0) || !(lambda <= m) || !(std::abs(E) < m))
        throw DomainError("normalize_bound: requires bound kinematics lambda <= m, |E| < m");
    const double w = (m + E) * kk_moment(beta) + (m - E) * kk_moment(1.0 - beta);
    if (!(w > 0.0) || !std::isfinite(w)) throw RangeError("normalize_bound: divergent norm");
    return lambda / std::sqrt(w);
}

// N from a direct quadrature of the unit-amplitude bound doublet
inline double normalize_bound_quadrature(double beta, double lambda, double E, double m, QuadOptions opt = {}) {
    check_beta(beta, "normalize_bound_quadrature");
    const double q = (m + E) * require(kk_moment_quadrature(beta, opt), "normalize_bound") +
                     (m - E) * require(kk_moment_quadrature(1.0 - beta, opt), "normalize_bound");
    return lambda / std::sqrt(q);
}

// Limit r -> 0 of g(r) on r_k = r0 2^{-k}. The exponent of the leading
// correction is estimated from successive differences (Aitken form of
// Richardson extrapolation).
template <class G>
Extrapolated limit_at_origin(G&& g, double r0 = 1e-2, int levels = 24, double tol = 1e-8) {
    std::vector<double> v;
    for (int k = 0; k < levels; ++k) v.push_back(g(r0 * std::ldexp(1.0, -k)));
    for (double x : v)
        if (!std::isfinite(x)) throw ConvergenceError("limit_at_origin: non-finite samples", INFINITY);
    auto aitken = [&](std::size_t i) {
        const double d1 = v[i + 1] - v[i], d2 = v[i + 2] - v[i + 1];
        const double den = d2 - d1;
        if (den == 0.0 || d1 == 0.0) return v[i + 2];
        return v[i + 2] - d2 * d2 / den;
    };
    const std::size_t n = v.size();
    Extrapolated e;
    e.value = aitken(n - 3);
    e.error = std::abs(e.value - aitken(n - 4));
    const double scale = std::max(std::abs(v.back()), std::abs(v[n - 2]));
    const bool growing = std::abs(v[n - 1] - v[n - 2]) > std::abs(v[n - 2] - v[n - 3]) * 1.0001 && scale > 1.0;
    if (growing || e.error > std::max(tol, 1e-5 * std::abs(e.value)))
        throw ConvergenceError("limit_at_origin: extrapolation did not settle", e.error);
    return e;
}

// (f1 f2 - f2 f1) at r -> 0 for a single real doublet
inline double boundary_form(const RadialDoublet& d) {
    return limit_at_origin([&](double r) {
               const Components c = d(r);
               return c.f1 * c.f2 - c.f2 * c.f1;
           }).value;
}

// bilinear current r (a1 b2 - a2 b1) at r -> 0 between two doublets
inline double boundary_form(const RadialDoublet& a, const RadialDoublet& b) {
    return limit_at_origin([&](double r) {
               const Components x = a(r), y = b(r);
               return r * (x.f1 * y.f2 - x.f2 * y.f1);
           }).value;
}

struct MatchingCoefficients {
    double C1 = 0.0;
    double C2 = 0.0;
    double W_match = 0.0;
    double residual = 0.0;
    double E = 0.0, R = 0.0, beta = 0.0, theta = 0.0, m = 0.0;
};

// Continuity at r = R between the exterior K/I combination and the interior
// SAE-regular doublet (s = -1), in the form
//   C1 K_b(z) + C2 I_b(z) = f1,  C1 K_{1-b}(z) + C2 I_{1-b}(z) = f2,
//   f1 = cos(t/2) J_b(z) - sin(t/2) J_{-b}(z),  f2 = cos(t/2) J_{b-1}(z) + sin(t/2) J_{1-b}(z),
// with z = sqrt(m^2+E^2) R used for the interior argument as well.
inline MatchingCoefficients matching_c1(double E, double R, double beta, double theta, double m) {
    check_beta(beta, "matching_c1");
    const double z = std::sqrt(m * m + E * E) * R;
    if (!(z > 0.0)) throw DomainError("matching_c1: z must be positive");
    const double c = std::cos(0.5 * theta), sn = std::sin(0.5 * theta);
    const double f1 = c * bessel_j(beta, z) - sn * bessel_j(-beta, z);
    const double f2 = c * bessel_j(beta - 1.0, z) + sn * bessel_j(1.0 - beta, z);
    const auto a = detail::bessel_ik(beta, z, false);
    const auto b = detail::bessel_ik(1.0 - beta, z, false);
    const double W = a.k * b.i - b.k * a.i;
    if (!std::isfinite(W) || std::abs(W) <= 1e-14 * (std::abs(a.k * b.i) + std::abs(b.k * a.i)))
        throw RangeError("matching_c1: singular matching determinant");
    MatchingCoefficients mc;
    mc.C1 = (f1 * b.i - f2 * a.i) / W;
    mc.C2 = (a.k * f2 - b.k * f1) / W;
    mc.W_match = W;
    const double r1 = mc.C1 * a.k + mc.C2 * a.i - f1;
    const double r2 = mc.C1 * b.k + mc.C2 * b.i - f2;
    const double sc = std::abs(mc.C1 * a.k) + std::abs(mc.C2 * a.i) + std::abs(f1) + std::abs(mc.C1 * b.k) +
                      std::abs(mc.C2 * b.i) + std::abs(f2);
    mc.residual = (std::abs(r1) + std::abs(r2)) / (sc > 0.0 ? sc : 1.0);
    mc.E = E;
    mc.R = R;
    mc.beta = beta;
    mc.theta = theta;
    mc.m = m;
    return mc;
}

struct GreensParams {
    double mu = 0.0;
    int s = -1;
    double m = 1.0;
};

struct GreensKernel {
    long l = 0;
    double omega = 0.0; // E = i omega
    std::array<std::complex<double>, 4> g{}; // row-major 2x2
    double wronskian = 0.0;
    std::complex<double> operator()(int i, int j) const { return g[2 * i + j]; }
};

// Partial Green's function at E = i omega with the I-regular and MacDonald
// solutions; both are analytic in E, so the transpose (not the adjoint) enters.
inline GreensKernel greens_partial(long l, double omega, double r, double rp, const GreensParams& gp) {
    if (!(r > 0.0) || !(rp > 0.0)) throw DomainError("greens_partial: radii must be positive");
    if (gp.s != 1 && gp.s != -1) throw DomainError("greens_partial: spin must be +-1");
    using cd = std::complex<double>;
    const cd E(0.0, omega);
    const double lam = std::sqrt(gp.m * gp.m + omega * omega);
    if (!(lam > 0.0)) throw DomainError("greens_partial: m = 0 at omega = 0");
    const double kappa = static_cast<double>(l) + gp.mu;
    const int sigma = kappa < 0.0 ? -1 : 1;
    const double nu = std::abs(kappa);
    const double nu2 = nu + sigma * gp.s;
    const cd wp = std::sqrt(gp.m + E), wm = std::sqrt(gp.m - E);
    const double s = gp.s;
    const double W = -s; // r (v1 f2 - f1 v2), since sqrt(m+E) sqrt(m-E) = lambda
    auto ik = [](double order, double x) { return detail::bessel_ik(std::abs(order), x, true); };
    // psi_R(a) psi_I(b)^T with scaled functions, common factor exp(lam (a - b))
    auto block = [&](double a, double b) {
        const auto ia = ik(nu, lam * a), ia2 = ik(nu2, lam * a);
        const auto kb = ik(nu, lam * b), kb2 = ik(nu2, lam * b);
        const cd R1 = wp * ia.i, R2 = -s * wm * ia2.i;
        const cd I1 = wp * kb.k, I2 = s * wm * kb2.k;
        const double ex = std::exp(lam * (a - b));
        return std::array<cd, 4>{R1 * I1 * ex, R1 * I2 * ex, R2 * I1 * ex, R2 * I2 * ex};
    };
    auto transpose = [](const std::array<cd, 4>& x) { return std::array<cd, 4>{x[0], x[2], x[1], x[3]}; };
    GreensKernel G;
    G.l = l;
    G.omega = omega;
    G.wronskian = W;
    std::array<cd, 4> v{};
    if (r < rp) {
        v = block(r, rp);
    } else if (r > rp) {
        v = transpose(block(rp, r)); // psi_I(r) psi_R(rp)^T
    } else {
        const auto a = block(r, r);
        const auto b = transpose(a);
        for (int i = 0; i < 4; ++i) v[i] = 0.5 * (a[i] + b[i]);
    }
    for (int i = 0; i < 4; ++i) {
        G.g[i] = v[i] / W;
        if (!std::isfinite(G.g[i].real()) || !std::isfinite(G.g[i].imag()))
            throw RangeError("greens_partial: kernel overflow at extreme order");
    }
    if (G.g[0] == cd(0.0) && std::isfinite(nu)) throw RangeError("greens_partial: kernel underflow at extreme order");
    return G;
}

} // namespace abvac

#endif // ABVAC_SOLUTIONS_HPP
