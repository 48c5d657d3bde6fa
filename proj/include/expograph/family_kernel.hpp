#pragma once

// Scalar-generic building blocks of the basic family. Everything here is
// templated on the complex type so the same recurrence runs in binary64 for
// rendering and in extended precision for convergence-order measurements.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <type_traits>

namespace expograph::kernel {

template <class C>
inline constexpr bool is_binary64_complex = std::is_same_v<C, std::complex<double>>;

/// Window rescaling for the D recurrence. Only applied to binary64 values.
struct RescalePolicy {
    bool enabled = true;
    double upper = 1e100;
    double lower = 1e-100;
};

/// out[j] = p^(j)(z) / j! for j = 0..out.size()-1, by repeated synthetic
/// division. Entries above the degree are zero.
template <class C>
void taylor_coefficients(std::span<const C> coeffs, const C& z, std::span<C> out)
{
    const std::size_t n = coeffs.size() - 1;
    const std::size_t k = out.size() - 1;
    std::fill(out.begin(), out.end(), C(0));
    out[0] = coeffs[n];
    for (std::size_t i = n; i-- > 0;) {
        const std::size_t top = std::min(k, n - i);
        for (std::size_t j = top; j >= 1; --j)
            out[j] = out[j] * z + out[j - 1];
        out[0] = out[0] * z + coeffs[i];
    }
}

/// Recurrence weights a_i = (-p)^(i-1) * p^(i)(z)/i!, i = 1..degree, so that
/// D_m = sum_i a_i D_{m-i}. `taylor` must hold t_0..t_degree; weights[0] is unused.
template <class C>
void d_weights(std::span<const C> taylor, std::span<C> weights)
{
    const C neg_p = -taylor[0];
    C power(1);
    weights[0] = C(0);
    for (std::size_t i = 1; i < weights.size(); ++i) {
        weights[i] = power * taylor[i];
        power *= neg_p;
    }
}

/// Largest component magnitude in d[first..last].
inline double window_max(std::span<const std::complex<double>> d, std::size_t first, std::size_t last)
{
    double mx = 0.0;
    for (std::size_t j = first; j <= last; ++j)
        mx = std::max({mx, std::fabs(d[j].real()), std::fabs(d[j].imag())});
    return mx;
}

/// Fills d[0..M] with D_0..D_M. After each D_m the entries still referenced
/// by the recurrence are inspected; if they leave [lower, upper] every stored
/// entry is scaled by the same power of two, which leaves all ratios exact.
/// `on_value(m)` runs after D_m is final at its current scale and may return
/// false to stop early. Returns the accumulated binary exponent removed.
template <class C, class OnValue>
long d_recurrence(std::span<const C> weights, std::span<C> d, const RescalePolicy& policy, OnValue&& on_value)
{
    const std::size_t degree = weights.size() - 1;
    long scale_exp = 0;
    d[0] = C(1);
    if (!on_value(std::size_t{0}))
        return scale_exp;
    for (std::size_t m = 1; m < d.size(); ++m) {
        const std::size_t top = std::min(degree, m);
        C sum(0);
        for (std::size_t i = 1; i <= top; ++i)
            sum += weights[i] * d[m - i];
        d[m] = sum;
        if constexpr (is_binary64_complex<C>) {
            if (policy.enabled) {
                const std::size_t first = m + 1 > degree ? m + 1 - degree : 0;
                const double mx = window_max(d, first, m);
                if (mx > policy.upper || (mx > 0.0 && mx < policy.lower)) {
                    const int e = std::ilogb(mx);
                    for (std::size_t j = 0; j <= m; ++j)
                        d[j] = C(std::ldexp(d[j].real(), -e), std::ldexp(d[j].imag(), -e));
                    scale_exp += e;
                }
            }
        }
        if (!on_value(m))
            break;
    }
    return scale_exp;
}

enum class StepStatus { Ok, Singular, NonFinite };

template <class C>
struct StepResult {
    C value;
    StepStatus status;
};

template <class C>
bool finite(const C& z)
{
    using std::isfinite;
    using std::real;
    using std::imag;
    return isfinite(real(z)) && isfinite(imag(z));
}

/// z - alpha * p * D_{m-2} / D_{m-1}
template <class C>
StepResult<C> family_update(const C& z, const C& alpha, const C& p, const C& d_m2, const C& d_m1)
{
    if (d_m1 == C(0))
        return {z, StepStatus::Singular};
    C next = z - alpha * p * (d_m2 / d_m1);
    if (!finite(next))
        return {next, StepStatus::NonFinite};
    return {next, StepStatus::Ok};
}

} // namespace expograph::kernel
