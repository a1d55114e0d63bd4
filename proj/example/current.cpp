// Induced azimuthal current: numeric pipeline next to the closed form (m = 0)
// and the massive result next to the sqrt(1+(mr)^2) estimate.

#include <abvac/abvac.hpp>

#include <cstdio>

int main() {
    const double beta = 0.25;
    std::printf("massless, beta = %.2f\n%8s %22s %22s\n", beta, "r", "numeric", "closed");
    for (double r : {0.5, 1.0, 5.0}) {
        const auto e = abvac::massless_current_numeric(r, beta);
        std::printf("%8.2f %22.15e %22.15e\n", r, e.value, abvac::massless_current_closed(r, beta));
    }
    std::printf("\nmassive, m = 1\n%8s %22s %22s\n", "r", "numeric", "estimate");
    for (double r : {0.5, 1.0, 3.0}) {
        const auto e = abvac::massive_current_numeric(r, 1.0, beta);
        std::printf("%8.2f %22.15e %22.15e\n", r, e.value, abvac::massive_current_estimate(r, 1.0, beta));
    }
}
