#include "expograph/complex_poly.hpp"

#include "expograph/family_kernel.hpp"

#include <algorithm>
#include <stdexcept>

namespace expograph {

Polynomial::Polynomial() : coeffs_{ComplexValue(0.0)} {}

Polynomial::Polynomial(std::vector<ComplexValue> coeffs) : coeffs_(std::move(coeffs))
{
    while (coeffs_.size() > 1 && coeffs_.back() == ComplexValue(0.0))
        coeffs_.pop_back();
    if (coeffs_.empty())
        coeffs_.emplace_back(0.0);
}

bool Polynomial::is_zero() const noexcept
{
    return coeffs_.size() == 1 && coeffs_[0] == ComplexValue(0.0);
}

bool Polynomial::has_real_coefficients() const noexcept
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const ComplexValue& c) { return c.imag() == 0.0; });
}

ComplexValue Polynomial::operator()(ComplexValue z) const noexcept
{
    ComplexValue acc = coeffs_.back();
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;)
        acc = acc * z + coeffs_[i];
    return acc;
}

Polynomial partial_sum(int n)
{
    if (n < 0)
        throw std::invalid_argument("partial_sum: n must be nonnegative");
    std::vector<ComplexValue> c(static_cast<std::size_t>(n) + 1);
    double term = 1.0;
    c[0] = term;
    for (int k = 1; k <= n; ++k) {
        term /= k;
        c[static_cast<std::size_t>(k)] = term;
    }
    return Polynomial(std::move(c));
}

Polynomial szego_sum(int n)
{
    if (n < 1)
        throw std::invalid_argument("szego_sum: n must be positive");
    std::vector<ComplexValue> c(static_cast<std::size_t>(n) + 1);
    double term = 1.0;
    c[0] = term;
    for (int k = 1; k <= n; ++k) {
        term = term * n / k;
        c[static_cast<std::size_t>(k)] = term;
    }
    return Polynomial(std::move(c));
}

Polynomial unity_factor(int n)
{
    if (n < 1)
        throw std::invalid_argument("unity_factor: n must be positive");
    std::vector<ComplexValue> c(static_cast<std::size_t>(n) + 1, ComplexValue(0.0));
    c.front() = -1.0;
    c.back() = 1.0;
    return Polynomial(std::move(c));
}

Polynomial multiply(const Polynomial& p, const Polynomial& q)
{
    if (p.is_zero() || q.is_zero())
        return Polynomial();
    const auto a = p.coeffs();
    const auto b = q.coeffs();
    std::vector<ComplexValue> c(a.size() + b.size() - 1, ComplexValue(0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    return Polynomial(std::move(c));
}

std::vector<ComplexValue> taylor_coefficients(const Polynomial& p, ComplexValue z, int k)
{
    if (k < 0)
        throw std::invalid_argument("taylor_coefficients: k must be nonnegative");
    std::vector<ComplexValue> out(static_cast<std::size_t>(k) + 1);
    kernel::taylor_coefficients<ComplexValue>(p.coeffs(), z, out);
    return out;
}

std::vector<ComplexValue> eval_with_derivs(const Polynomial& p, ComplexValue z, int k)
{
    auto out = taylor_coefficients(p, z, k);
    double factorial = 1.0;
    for (std::size_t j = 2; j < out.size(); ++j) {
        factorial *= static_cast<double>(j);
        out[j] *= factorial;
    }
    return out;
}

} // namespace expograph
