#ifndef ABVAC_ERRORS_HPP
#define ABVAC_ERRORS_HPP

#include <cstdio>
#include <stdexcept>
#include <string>

namespace abvac {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// precondition violated (bad order, argument, kinematics, flux ...)
struct DomainError : Error {
    using Error::Error;
};

struct PoleError : DomainError {
    using DomainError::DomainError;
};

struct RangeError : Error {
    using Error::Error;
};

struct NoRootError : Error {
    using Error::Error;
};

struct ConvergenceError : Error {
    ConvergenceError(const std::string& msg, double achieved)
        : Error(msg + " (achieved error " + fmt(achieved) + ")"), message(msg), achieved_error(achieved) {}
    std::string message; // without the achieved-error suffix
    double achieved_error;

private:
    static std::string fmt(double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", x);
        return buf;
    }
};

} // namespace abvac

#endif // ABVAC_ERRORS_HPP
