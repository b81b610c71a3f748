#pragma once

#include <stdexcept>
#include <string>

namespace riembound {

/// Raised when an input leaves the numerical domain of an operation
/// (non-SPD matrix where SPD is required, singular Jacobian, scalar
/// exponential overflow).  The command line maps this to exit code 3.
struct numerical_domain_error : std::runtime_error {
    explicit numerical_domain_error(const std::string& what)
        : std::runtime_error(what) {}
};

/// Raised by sectional curvature when the two tangents span a degenerate
/// plane (Gram determinant below tolerance).
struct degenerate_plane_error : numerical_domain_error {
    explicit degenerate_plane_error(const std::string& what)
        : numerical_domain_error(what) {}
};

/// Raised by the subgradient error bound when the cross spectral gap
/// delta = alpha_k(zeta_y) - alpha_{k+1}(zeta_x) is not positive.
struct gap_violation_error : numerical_domain_error {
    explicit gap_violation_error(const std::string& what)
        : numerical_domain_error(what) {}
};

/// Raised on malformed configuration (bad ranges, unknown keys, missing
/// required blocks).  The command line maps this to exit code 2.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace riembound
