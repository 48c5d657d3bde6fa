#include "expograph/basic_family.hpp"

#include "expograph/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace expograph {

FamilyParams::FamilyParams(int m, ComplexValue alpha) : m_(m), alpha_(alpha)
{
    if (m < 2)
        throw InvalidParameter("family order m must be at least 2, got " + std::to_string(m));
    if (!alpha_is_valid(alpha))
        throw InvalidParameter("alpha must satisfy |1 - alpha| < 1");
}

bool FamilyParams::alpha_is_valid(ComplexValue alpha) noexcept
{
    return is_finite(alpha) && std::abs(1.0 - alpha) < 1.0;
}

FamilyEvaluator::FamilyEvaluator(const Polynomial& p, int max_m) : p_(&p), degree_(p.degree())
{
    if (p.degree() < 1)
        throw InvalidParameter("basic family needs a non-constant polynomial");
    if (max_m < 2)
        throw InvalidParameter("family order must be at least 2");
    const std::size_t order = std::min(degree_, static_cast<std::size_t>(max_m) - 1);
    taylor_.resize(order + 1);
    weights_.resize(order + 1);
    d_.resize(static_cast<std::size_t>(max_m));
}

ComplexValue FamilyEvaluator::load(ComplexValue z)
{
    z_ = z;
    kernel::taylor_coefficients<ComplexValue>(p_->coeffs(), z, taylor_);
    return taylor_[0];
}

void FamilyEvaluator::prepare_weights(std::size_t order)
{
    const std::size_t top = std::min(degree_, order);
    kernel::d_weights<ComplexValue>(std::span<const ComplexValue>(taylor_.data(), top + 1),
                                    std::span<ComplexValue>(weights_.data(), top + 1));
}

kernel::StepResult<ComplexValue> FamilyEvaluator::step(int m, ComplexValue alpha)
{
    const auto order = static_cast<std::size_t>(m - 1);
    prepare_weights(order);
    const std::span<ComplexValue> d(d_.data(), order + 1);
    kernel::d_recurrence<ComplexValue>(
        std::span<const ComplexValue>(weights_.data(), std::min(degree_, order) + 1), d, {},
        [](std::size_t) { return true; });
    return kernel::family_update(z_, alpha, taylor_[0], d[order - 1], d[order]);
}

DSequence d_sequence(const Polynomial& p, ComplexValue z, int m_max, const kernel::RescalePolicy& policy)
{
    if (m_max < 0)
        throw InvalidParameter("d_sequence: m_max must be nonnegative");
    if (p.degree() < 1)
        throw InvalidParameter("d_sequence: polynomial must be non-constant");
    if (!is_finite(z))
        throw NonFiniteInput("d_sequence: z is not finite");

    const auto count = static_cast<std::size_t>(m_max) + 1;
    const std::size_t order = std::min(p.degree(), count - 1);
    std::vector<ComplexValue> taylor(std::max<std::size_t>(order, 1) + 1);
    kernel::taylor_coefficients<ComplexValue>(p.coeffs(), z, taylor);
    std::vector<ComplexValue> weights(order + 1);
    kernel::d_weights<ComplexValue>(std::span<const ComplexValue>(taylor.data(), order + 1), weights);

    DSequence out;
    out.values.resize(count);
    const long e = kernel::d_recurrence<ComplexValue>(weights, out.values, policy, [](std::size_t) { return true; });
    out.scale_log = static_cast<double>(e) * std::numbers::ln2;
    return out;
}

ComplexValue basic_family_step(const Polynomial& p, ComplexValue z, const FamilyParams& params)
{
    if (!is_finite(z))
        throw NonFiniteInput("basic_family_step: z is not finite");
    FamilyEvaluator eval(p, params.m());
    eval.load(z);
    const auto r = eval.step(params.m(), params.alpha());
    switch (r.status) {
    case kernel::StepStatus::Singular:
        throw SingularDenominator("D_{m-1}(z) is zero");
    case kernel::StepStatus::NonFinite:
        throw NonFiniteResult("basic family step overflowed");
    case kernel::StepStatus::Ok:
        break;
    }
    return r.value;
}

ComplexValue newton_step(const Polynomial& p, ComplexValue z)
{
    const auto d = eval_with_derivs(p, z, 1);
    if (d[1] == 0.0)
        throw SingularDenominator("p'(z) is zero");
    return z - d[0] / d[1];
}

ComplexValue halley_step(const Polynomial& p, ComplexValue z)
{
    const auto d = eval_with_derivs(p, z, 2);
    const ComplexValue denom = 2.0 * d[1] * d[1] - d[0] * d[2];
    if (denom == 0.0)
        throw SingularDenominator("2p'^2 - p p'' is zero");
    return z - 2.0 * d[0] * d[1] / denom;
}

BasicSequence basic_sequence(const Polynomial& p, ComplexValue w, int m_max)
{
    if (m_max < 2)
        throw InvalidParameter("basic_sequence: m_max must be at least 2");
    if (!is_finite(w))
        throw NonFiniteInput("basic_sequence: w is not finite");

    BasicSequence out;
    const auto count = static_cast<std::size_t>(m_max - 1);
    out.values.assign(count, ComplexValue(std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()));
    out.defined.assign(count, 0);

    FamilyEvaluator eval(p, m_max);
    eval.load(w);
    eval.sequence(m_max, 1.0, [&](int m, const kernel::StepResult<ComplexValue>& r) {
        if (r.status == kernel::StepStatus::Ok) {
            const auto idx = static_cast<std::size_t>(m - 2);
            out.values[idx] = r.value;
            out.defined[idx] = 1;
        }
        return true;
    });
    return out;
}

FixedPointKind classify_fixed_point(double map_derivative_modulus)
{
    if (!std::isfinite(map_derivative_modulus))
        throw NonFiniteInput("classify_fixed_point: derivative modulus is not finite");
    if (map_derivative_modulus < 0.0)
        throw InvalidParameter("classify_fixed_point: modulus cannot be negative");
    if (map_derivative_modulus < 1.0 - kClassifyEpsilon)
        return FixedPointKind::Attractive;
    if (map_derivative_modulus > 1.0 + kClassifyEpsilon)
        return FixedPointKind::Repulsive;
    return FixedPointKind::Indifferent;
}

const char* to_string(FixedPointKind kind) noexcept
{
    switch (kind) {
    case FixedPointKind::Attractive:
        return "attractive";
    case FixedPointKind::Repulsive:
        return "repulsive";
    case FixedPointKind::Indifferent:
        return "indifferent";
    }
    return "unknown";
}

} // namespace expograph
