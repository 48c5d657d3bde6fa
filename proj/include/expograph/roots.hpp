#pragma once

#include "expograph/complex_poly.hpp"

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace expograph {

/// All roots of a polynomial, sorted lexicographically by (re, im) so that
/// root indices are stable across runs.
struct RootSet {
    std::vector<ComplexValue> roots;
    std::vector<double> residuals;          // |p(theta_i)|
    std::vector<double> derivative_moduli;  // |p'(theta_i)|

    std::size_t size() const noexcept { return roots.size(); }
    bool empty() const noexcept { return roots.empty(); }
};

struct RootFinderOptions {
    int max_sweeps = 200;
    double correction_tol = 1e-13;  // relative to 1 + |theta|
    double phase_offset = 0.4;      // radians
};

/// 1 + max_{k<n} |c_k| / |c_n|
double cauchy_bound(const Polynomial& p);

/// Aberth-Ehrlich simultaneous iteration. Throws NoConvergence if the sweep
/// cap is reached while a residual is still above threshold.
RootSet find_all_roots(const Polynomial& p, const RootFinderOptions& options = {});

/// Residual acceptance threshold for `p`: 1e-10 * max(1, max |c_k|).
double residual_threshold(const Polynomial& p);

struct NearestRoot {
    std::size_t index;
    double distance;
};

/// Euclidean-nearest root; exact ties go to the lowest index.
NearestRoot nearest_root(const RootSet& rs, ComplexValue w);

enum class PolyKind { PartialSum, Szego };

struct RootClaimsReport {
    PolyKind kind;
    int n;
    bool all_simple;
    bool bounds_hold;
    std::vector<ComplexValue> roots;
};

/// Checks simplicity (every |p'(theta)| > 1e-8) and the modulus bounds:
/// 0 < |theta| < n for partial sums, |theta| < 1 for Szego sums.
RootClaimsReport verify_root_claims(PolyKind kind, int n, const RootSet& rs);

const char* to_string(PolyKind kind) noexcept;

nlohmann::json to_json(const RootSet& rs);
nlohmann::json to_json(const RootClaimsReport& report);

} // namespace expograph
