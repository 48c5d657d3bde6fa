#pragma once

#include "expograph/complex_poly.hpp"
#include "expograph/family_kernel.hpp"

#include <cstdint>
#include <vector>

namespace expograph {

/// Member (m, alpha) of the parametrized basic family. Construction enforces
/// m >= 2 and |1 - alpha| < 1, the range in which every simple root stays an
/// attractive fixed point.
class FamilyParams {
public:
    explicit FamilyParams(int m = 2, ComplexValue alpha = 1.0);

    int m() const noexcept { return m_; }
    ComplexValue alpha() const noexcept { return alpha_; }

    static bool alpha_is_valid(ComplexValue alpha) noexcept;

    friend bool operator==(const FamilyParams&, const FamilyParams&) = default;

private:
    int m_;
    ComplexValue alpha_;
};

/// D_0..D_M at one point. The true value of D_m is
/// values[m] * exp(scale_log); only ratios of entries are ever consumed.
struct DSequence {
    std::vector<ComplexValue> values;
    double scale_log = 0.0;
};

DSequence d_sequence(const Polynomial& p, ComplexValue z, int m_max, const kernel::RescalePolicy& policy = {});

/// B_{m,alpha}(z). Throws SingularDenominator when D_{m-1}(z) is exactly zero
/// and NonFiniteResult when the step overflows.
ComplexValue basic_family_step(const Polynomial& p, ComplexValue z, const FamilyParams& params);

ComplexValue newton_step(const Polynomial& p, ComplexValue z);
ComplexValue halley_step(const Polynomial& p, ComplexValue z);

/// [B_2(w), ..., B_{m_max}(w)] with alpha = 1. Entries whose denominator
/// vanishes (or that overflow) hold NaN and are flagged in `defined`.
struct BasicSequence {
    std::vector<ComplexValue> values;
    std::vector<std::uint8_t> defined;

    /// Entry for B_m.
    ComplexValue at(int m) const { return values[static_cast<std::size_t>(m - 2)]; }
    bool is_defined(int m) const { return defined[static_cast<std::size_t>(m - 2)] != 0; }
};

BasicSequence basic_sequence(const Polynomial& p, ComplexValue w, int m_max);

enum class FixedPointKind { Attractive, Repulsive, Indifferent };

inline constexpr double kClassifyEpsilon = 1e-9;

/// Classifies a fixed point from |g'(theta)| of whatever map g the caller has in mind.
FixedPointKind classify_fixed_point(double map_derivative_modulus);

const char* to_string(FixedPointKind kind) noexcept;

/// Reusable scratch space for evaluating one polynomial's family maps at many
/// points without allocating. One instance per thread.
class FamilyEvaluator {
public:
    /// `max_m` bounds the family order (or basic-sequence length) used later.
    FamilyEvaluator(const Polynomial& p, int max_m);

    /// Loads the Taylor data at z and returns p(z).
    ComplexValue load(ComplexValue z);

    ComplexValue point() const noexcept { return z_; }
    ComplexValue value() const noexcept { return taylor_[0]; }

    /// B_{m,alpha} at the loaded point.
    kernel::StepResult<ComplexValue> step(int m, ComplexValue alpha);

    /// Calls visit(m, StepResult) for B_2..B_{m_max} at the loaded point.
    /// visit may return false to stop.
    template <class Visit>
    void sequence(int m_max, ComplexValue alpha, Visit&& visit);

    const Polynomial& polynomial() const noexcept { return *p_; }

private:
    void prepare_weights(std::size_t order);

    const Polynomial* p_;
    std::size_t degree_;
    ComplexValue z_{};
    std::vector<ComplexValue> taylor_;
    std::vector<ComplexValue> weights_;
    std::vector<ComplexValue> d_;
};

template <class Visit>
void FamilyEvaluator::sequence(int m_max, ComplexValue alpha, Visit&& visit)
{
    const auto count = static_cast<std::size_t>(m_max);
    prepare_weights(count - 1);
    const std::span<ComplexValue> d(d_.data(), count);
    const ComplexValue pz = taylor_[0];
    kernel::d_recurrence<ComplexValue>(
        std::span<const ComplexValue>(weights_.data(), std::min(degree_, count - 1) + 1), d, {},
        [&](std::size_t k) {
            if (k == 0)
                return true;
            const auto r = kernel::family_update(z_, alpha, pz, d[k - 1], d[k]);
            return visit(static_cast<int>(k) + 1, r);
        });
}

} // namespace expograph
