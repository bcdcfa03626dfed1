// Numerical tolerances. Validity and compatibility margins use a process-wide
// absolute tolerance (CLI override: MURKIT_TOLERANCE); linear-algebra
// identities use a fixed tighter one.
#pragma once

namespace murkit {

inline constexpr double kDefaultValidityTol = 1e-9;
inline constexpr double kLinAlgTol = 1e-12;

namespace detail {
inline double g_validity_tol = kDefaultValidityTol;
}

inline double validity_tolerance() { return detail::g_validity_tol; }

// Intended to be set once at startup, before any concurrent use.
inline void set_validity_tolerance(double tol) { detail::g_validity_tol = tol; }

}  // namespace murkit
