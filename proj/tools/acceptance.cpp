// One line per acceptance criterion; nonzero exit if any line fails.
// Usage: abvac_acceptance [--only NAME] [--tol X]

#include <abvac/acceptance.hpp>

#include <cstdlib>
#include <cstring>
#include <iostream>

int main(int argc, char** argv) {
    abvac::acceptance::Options opt;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--only") && i + 1 < argc) {
            opt.only = argv[++i];
        } else if (!std::strcmp(argv[i], "--tol") && i + 1 < argc) {
            opt.tol = std::strtod(argv[++i], nullptr);
        } else {
            std::cerr << "usage: abvac_acceptance [--only NAME] [--tol X]\n";
            return 2;
        }
    }
    const auto res = abvac::acceptance::run(opt);
    int literal_fail = 0, derived_fail = 0;
    double total = 0.0;
    for (const auto& r : res) {
        std::cout << abvac::acceptance::format_line(r) << '\n';
        if (!r.pass) ++(r.literal ? literal_fail : derived_fail);
        total += r.seconds;
    }
    std::cout << "summary: " << res.size() << " lines, " << literal_fail << " literal failures, " << derived_fail
              << " derived failures, runtime " << total << "s\n";
    return literal_fail + derived_fail ? 1 : 0;
}
