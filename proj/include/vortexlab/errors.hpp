#ifndef VORTEXLAB_ERRORS_HPP
#define VORTEXLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vortexlab {

// Exit-code mapping used by the CLI: config/domain -> 2, numeric -> 3, io -> 4.

struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Out-of-domain argument to an operation (bad size, center outside lattice, ...).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: eigensolver breakdown, unstable finite-difference step,
// quadrature grid too narrow, eigenvector tracking loss.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Vortex winding changed during iteration (lattice too coarse / disorder too strong).
struct topology_error : numeric_error {
    explicit topology_error(const std::string& msg) : numeric_error(msg) {}
};

struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace vortexlab

#endif
