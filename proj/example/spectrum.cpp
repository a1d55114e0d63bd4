// Bound level of a flux tube of radius R for a few fluxes, with the
// self-adjoint extension parameter that reproduces it.

#include <abvac/abvac.hpp>

#include <cstdio>

int main() {
    const double R = 1.0, m = 2.0;
    std::printf("%6s %14s %14s %14s\n", "mu", "lambda", "E", "xi");
    for (double mu : {0.25, 0.5, 0.75, 1.75, -0.25}) {
        const int s = abvac::attractive_spin(mu);
        const auto b = abvac::find_bound_state(mu, s, R, m);
        if (!b) continue;
        std::printf("%6.2f %14.10f ", mu, b->lambda);
        if (b->E) std::printf("%14.10f ", *b->E);
        else std::printf("%14s ", "(continuum)");
        if (b->xi) std::printf("%14.10f\n", *b->xi);
        else std::printf("%14s\n", "-");
    }
}
