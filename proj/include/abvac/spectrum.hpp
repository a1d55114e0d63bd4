#ifndef ABVAC_SPECTRUM_HPP
#define ABVAC_SPECTRUM_HPP

// Flux split, the l = 0 bound state of the attractive channel, and the
// self-adjoint-extension parameter map.
//
// With Lambda = lambda R / 2 the pole condition of the attractive channel is
//   Lambda^{1-beta} / Gamma(2-beta) = Lambda^{beta-1} / Gamma(beta),
// so Lambda = (Gamma(2-beta)/Gamma(beta))^{1/(2(1-beta))}.
// Limits: lambda -> 0 as beta -> 0+, lambda -> 2 e^{-gamma_E} / R as beta -> 1-.

#include <abvac/errors.hpp>
#include <abvac/roots.hpp>
#include <abvac/specfun.hpp>

#include <cmath>
#include <optional>
#include <string>

namespace abvac {

enum class Branch { particle, antiparticle };

inline const char* to_string(Branch b) { return b == Branch::particle ? "particle" : "antiparticle"; }

struct FluxDecomposition {
    double mu = 0.0;
    long n = 0;
    double beta = 0.0;
    int s = -1; // attractive spin orientation
};

inline int attractive_spin(double mu) {
    if (!std::isfinite(mu)) throw DomainError("attractive_spin: flux must be finite");
    if (mu == 0.0) throw DomainError("attractive_spin: zero flux has no attractive channel");
    return mu > 0.0 ? -1 : 1;
}

inline FluxDecomposition flux_decompose(double mu) {
    if (!std::isfinite(mu)) throw DomainError("flux_decompose: flux must be finite");
    const double n = std::floor(mu);
    const double beta = mu - n;
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("flux_decompose: integer flux (no fractional part)");
    return {mu, static_cast<long>(n), beta, attractive_spin(mu)};
}

inline void check_beta(double beta, const char* who) {
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError(std::string(who) + ": beta must lie in (0,1)");
}

inline double bound_lambda_closed(double beta, double R) {
    check_beta(beta, "bound_lambda_closed");
    if (!(R > 0.0)) throw DomainError("bound_lambda_closed: R must be positive");
    const double lg = log_gamma(2.0 - beta) - log_gamma(beta);
    return 2.0 / R * std::exp(lg / (2.0 * (1.0 - beta)));
}

// Pole condition at l = 0, n = 0:
//   (lR/2)^{-a} / Gamma(1-a) - (lR/2)^{a} / Gamma(1+a) = 1 + s,   a = beta + s.
// flux_sign = -1 selects the mirror case mu < 0 via (e, s) -> (-e, -s).
inline double bound_lambda_transcendental(double beta, double R, double m, int s, int flux_sign = 1) {
    check_beta(beta, "bound_lambda_transcendental");
    if (!(R > 0.0) || !(m > 0.0)) throw DomainError("bound_lambda_transcendental: R and m must be positive");
    if ((s != 1 && s != -1) || (flux_sign != 1 && flux_sign != -1))
        throw DomainError("bound_lambda_transcendental: spin and flux sign must be +-1");
    const int se = s * flux_sign;
    const double a = beta + se;
    const double rhs = 1.0 + se;
    const double g1 = rgamma(1.0 - a);
    const double g2 = rgamma(1.0 + a);
    auto f = [&](double t) {
        const double h = 0.5 * t;
        return std::pow(h, -a) * g1 - std::pow(h, a) * g2 - rhs;
    };
    const double t = find_root_log_bracket(f, 1e-12, 2.0 * (1.0 + 1e-9), 1e-13,
                                           "bound_lambda_transcendental (repulsive channel?)");
    return t / R;
}

inline std::optional<double> bound_energy(double lambda, double m, Branch b) {
    if (!(lambda > 0.0) || !(m > 0.0)) throw DomainError("bound_energy: lambda and m must be positive");
    if (lambda > m) return std::nullopt; // level beyond the continuum boundary
    const double e = std::sqrt((m - lambda) * (m + lambda));
    return b == Branch::particle ? e : -e;
}

inline double sae_lambda(double beta, double m, double xi) {
    check_beta(beta, "sae_lambda");
    if (beta == 0.5) throw DomainError("sae_lambda: degenerate at beta = 1/2 (use bound_lambda_closed)");
    if (!(m > 0.0)) throw DomainError("sae_lambda: m must be positive");
    if (xi == 0.0 || !std::isfinite(xi)) throw DomainError("sae_lambda: xi must be finite and nonzero");
    const double b = std::abs(beta - 0.5);
    const double base = -abvac::gamma(b + 0.5) / (xi * abvac::gamma(0.5 - b));
    if (!(base > 0.0)) throw DomainError("sae_lambda: no bound state for xi > 0");
    return 2.0 * m * std::pow(base, 1.0 / (2.0 * b));
}

inline double xi_from_R(double beta, double m, double R) {
    check_beta(beta, "xi_from_R");
    if (!(beta > 0.5)) throw DomainError("xi_from_R: defined for beta > 1/2");
    if (!(m > 0.0) || !(R > 0.0)) throw DomainError("xi_from_R: m and R must be positive");
    const double Lam = 0.5 * R * bound_lambda_closed(beta, R);
    return -std::pow(m * R, 2.0 * beta - 1.0) * abvac::gamma(beta) / abvac::gamma(1.0 - beta) *
           std::pow(Lam, 1.0 - 2.0 * beta);
}

// Alternative published forms, which disagree with the functions above. Kept for comparison only.
namespace printed {

inline double bound_lambda_closed(double beta, double R) {
    check_beta(beta, "printed::bound_lambda_closed");
    return 2.0 / R * std::pow(abvac::gamma(beta) / abvac::gamma(2.0 - beta), 2.0 * (beta - 1.0));
}

inline double sae_lambda(double beta, double m, double xi) {
    const double b = std::abs(beta - 0.5);
    return 2.0 * m * std::pow(-abvac::gamma(b + 0.5) / (xi * abvac::gamma(0.5 - b)), -2.0 * b);
}

inline double xi_from_R(double beta, double m, double R) {
    return -std::pow(m * R, 2.0 * beta - 1.0) * abvac::gamma(2.0 - beta) / abvac::gamma(beta);
}

} // namespace printed

struct BoundState {
    double beta = 0.0;
    double R = 0.0;
    double m = 0.0;
    double lambda = 0.0;
    std::optional<double> E; // empty when lambda > m
    Branch branch = Branch::particle;
    int s = -1;
    std::optional<double> xi; // only for beta > 1/2
    bool beyond_continuum() const { return !E.has_value(); }
};

// The single l = 0 level. Returns nothing for the repulsive spin orientation.
inline std::optional<BoundState> find_bound_state(double mu, int s, double R, double m) {
    const FluxDecomposition fd = flux_decompose(mu);
    if (s != fd.s) return std::nullopt;
    BoundState b;
    b.beta = fd.beta;
    b.R = R;
    b.m = m;
    b.s = s;
    b.lambda = bound_lambda_closed(fd.beta, R);
    b.branch = mu > 0.0 ? Branch::particle : Branch::antiparticle;
    b.E = bound_energy(b.lambda, m, b.branch);
    if (fd.beta > 0.5) b.xi = xi_from_R(fd.beta, m, R);
    return b;
}

} // namespace abvac

#endif // ABVAC_SPECTRUM_HPP
