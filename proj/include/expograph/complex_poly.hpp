#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace expograph {

using ComplexValue = std::complex<double>;

/// Largest degree accepted by scene and query validation. Partial-sum and
/// Szego coefficients stay comfortably representable up to here.
inline constexpr int kMaxDegree = 64;

/// Dense polynomial over complex values, coefficients in ascending order.
///
/// Trailing zero coefficients are trimmed on construction, so the leading
/// coefficient is nonzero unless the polynomial is the zero polynomial, which
/// is stored as a single zero coefficient with degree 0.
class Polynomial {
public:
    Polynomial();
    explicit Polynomial(std::vector<ComplexValue> coeffs);

    std::span<const ComplexValue> coeffs() const noexcept { return coeffs_; }
    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    bool is_zero() const noexcept;
    bool has_real_coefficients() const noexcept;

    const ComplexValue& operator[](std::size_t k) const { return coeffs_[k]; }

    /// Horner evaluation.
    ComplexValue operator()(ComplexValue z) const noexcept;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    std::vector<ComplexValue> coeffs_;
};

/// P_n(z) = sum_{k=0}^{n} z^k / k!
Polynomial partial_sum(int n);

/// S_n(z) = P_n(n z); coefficient k is n^k / k!.
Polynomial szego_sum(int n);

/// z^n - 1
Polynomial unity_factor(int n);

Polynomial multiply(const Polynomial& p, const Polynomial& q);

/// Returns [p(z), p'(z), ..., p^(k)(z)] from one nested-evaluation pass.
/// Orders above the degree come out exactly zero.
std::vector<ComplexValue> eval_with_derivs(const Polynomial& p, ComplexValue z, int k);

/// Same pass as eval_with_derivs, but entry j holds p^(j)(z) / j!.
std::vector<ComplexValue> taylor_coefficients(const Polynomial& p, ComplexValue z, int k);

inline bool is_finite(ComplexValue z) noexcept
{
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

} // namespace expograph
