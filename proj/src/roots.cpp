#include "expograph/roots.hpp"

#include "expograph/errors.hpp"
#include "expograph/family_kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace expograph {

namespace {

struct ValueAndSlope {
    ComplexValue value;
    ComplexValue slope;
};

ValueAndSlope eval_value_and_slope(const Polynomial& p, ComplexValue z)
{
    std::array<ComplexValue, 2> t{};
    kernel::taylor_coefficients<ComplexValue>(p.coeffs(), z, t);
    return {t[0], t[1]};
}

// p(z)/p'(z). Outside the unit disc the ratio is formed from the reversed
// polynomial q(w) = w^n p(1/w):  p/p' = z q(w) / (n q(w) - w q'(w)),
// which stays finite where z^n alone would overflow.
ComplexValue newton_ratio(const Polynomial& p, ComplexValue z)
{
    if (std::abs(z) <= 1.0) {
        const auto [value, slope] = eval_value_and_slope(p, z);
        return value / slope;
    }
    const auto c = p.coeffs();
    const std::size_t n = p.degree();
    const ComplexValue w = 1.0 / z;
    ComplexValue q = c[0];
    ComplexValue dq = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        dq = dq * w + q;
        q = q * w + c[k];
    }
    return z * q / (static_cast<double>(n) * q - w * dq);
}

bool lexicographic_less(const ComplexValue& a, const ComplexValue& b)
{
    if (a.real() != b.real())
        return a.real() < b.real();
    return a.imag() < b.imag();
}

// For real coefficients the root set is closed under conjugation. Numerical
// noise breaks that slightly; restoring it exactly keeps conjugate pairs tied
// in real part, which makes the lexicographic order (and mirrored renders)
// well defined. Each root is paired with the root nearest its conjugate; the
// pairing is applied only if it is mutual for every root, and a root that is
// its own partner is put on the real axis.
void enforce_conjugate_symmetry(std::vector<ComplexValue>& roots)
{
    const std::size_t n = roots.size();
    std::vector<std::size_t> partner(n);
    for (std::size_t i = 0; i < n; ++i) {
        const ComplexValue target = std::conj(roots[i]);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            const double d = std::norm(roots[j] - target);
            if (d < best) {
                best = d;
                partner[i] = j;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (partner[partner[i]] != i)
            return;

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = partner[i];
        if (j == i) {
            roots[i] = ComplexValue(roots[i].real(), 0.0);
        } else if (i < j) {
            ComplexValue& u = roots[i];
            ComplexValue& l = roots[j];
            const double re = 0.5 * (u.real() + l.real());
            const double im = 0.5 * std::fabs(u.imag() - l.imag());
            const bool upper_first = u.imag() > l.imag();
            u = ComplexValue(re, upper_first ? im : -im);
            l = ComplexValue(re, upper_first ? -im : im);
        }
    }
}

} // namespace

double cauchy_bound(const Polynomial& p)
{
    if (p.degree() < 1)
        throw InvalidParameter("cauchy_bound: degree must be at least 1");
    const auto c = p.coeffs();
    const double lead = std::abs(c.back());
    double mx = 0.0;
    for (std::size_t k = 0; k + 1 < c.size(); ++k)
        mx = std::max(mx, std::abs(c[k]));
    return 1.0 + mx / lead;
}

double residual_threshold(const Polynomial& p)
{
    double mx = 1.0;
    for (const auto& c : p.coeffs())
        mx = std::max(mx, std::abs(c));
    return 1e-10 * mx;
}

namespace {

// Rounding-error level of |p(z)| in binary64: a residual below this cannot be
// improved by any further correction.
double evaluation_floor(const Polynomial& p, ComplexValue z)
{
    const double r = std::abs(z);
    double acc = 0.0;
    const auto c = p.coeffs();
    for (std::size_t k = c.size(); k-- > 0;)
        acc = acc * r + std::abs(c[k]);
    return 32.0 * std::numeric_limits<double>::epsilon() * acc;
}

// One Aberth-Ehrlich run from n points on a circle. Returns true when every
// correction fell below tolerance before the sweep cap.
bool aberth(const Polynomial& p, double radius, double phase, const RootFinderOptions& options,
            std::vector<ComplexValue>& z)
{
    const std::size_t n = p.degree();
    z.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + phase;
        z[k] = std::polar(radius, angle);
    }

    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
        bool converged = true;
        for (std::size_t i = 0; i < n; ++i) {
            const ComplexValue ratio = newton_ratio(p, z[i]);
            if (ratio == 0.0)
                continue;
            ComplexValue repulsion = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i)
                    repulsion += 1.0 / (z[i] - z[j]);
            // ratio / (1 - ratio * sum_j 1/(z_i - z_j))
            const ComplexValue denom = 1.0 - ratio * repulsion;
            if (denom == 0.0 || !is_finite(ratio)) {
                converged = false;
                continue;
            }
            const ComplexValue correction = ratio / denom;
            z[i] -= correction;
            if (!(std::abs(correction) < options.correction_tol * (1.0 + std::abs(z[i]))))
                converged = false;
        }
        if (converged)
            return true;
    }
    return false;
}

RootSet finalize(const Polynomial& p, std::vector<ComplexValue> z)
{
    if (p.has_real_coefficients())
        enforce_conjugate_symmetry(z);
    std::sort(z.begin(), z.end(), lexicographic_less);

    RootSet rs;
    rs.roots = std::move(z);
    rs.residuals.reserve(rs.roots.size());
    rs.derivative_moduli.reserve(rs.roots.size());
    for (const auto& root : rs.roots) {
        const auto [value, slope] = eval_value_and_slope(p, root);
        rs.residuals.push_back(std::abs(value));
        rs.derivative_moduli.push_back(std::abs(slope));
    }
    return rs;
}

// Residuals at or below max(threshold, rounding floor), and finite roots.
bool acceptable(const Polynomial& p, const RootSet& rs, double& worst)
{
    const double threshold = residual_threshold(p);
    worst = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
        const double r = rs.residuals[i];
        worst = std::max(worst, r);
        if (!is_finite(rs.roots[i]) || !(r < std::max(threshold, evaluation_floor(p, rs.roots[i]))))
            ok = false;
    }
    return ok;
}

} // namespace

RootSet find_all_roots(const Polynomial& p, const RootFinderOptions& options)
{
    const std::size_t n = p.degree();
    if (n < 1)
        throw InvalidParameter("find_all_roots: degree must be at least 1");
    for (const auto& c : p.coeffs())
        if (!is_finite(c))
            throw NonFiniteInput("find_all_roots: non-finite coefficient");

    std::vector<ComplexValue> z;
    const bool converged = aberth(p, 0.5 * (1.0 + cauchy_bound(p)), options.phase_offset, options, z);
    RootSet rs = finalize(p, std::move(z));
    double worst = 0.0;
    if (converged || acceptable(p, rs, worst))
        return rs;

    // The Cauchy circle can be far too wide (P_n has |c_0/c_n| = n!), which
    // spends the sweep budget just collapsing inwards. Retry from the circle
    // whose radius is the geometric mean of the root moduli.
    const auto c = p.coeffs();
    double radius = std::pow(std::abs(c.front()) / std::abs(c.back()), 1.0 / static_cast<double>(n));
    if (!(radius > 0.0) || !std::isfinite(radius))
        radius = 1.0;
    const bool retried = aberth(p, radius, options.phase_offset + 0.5 / static_cast<double>(n), options, z);
    rs = finalize(p, std::move(z));
    if (retried || acceptable(p, rs, worst))
        return rs;
    throw NoConvergence("Aberth iteration hit the sweep cap; worst residual " + std::to_string(worst));
}

NearestRoot nearest_root(const RootSet& rs, ComplexValue w)
{
    std::size_t best = 0;
    double best_d2 = std::norm(w - rs.roots[0]);
    for (std::size_t i = 1; i < rs.roots.size(); ++i) {
        const double d2 = std::norm(w - rs.roots[i]);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    return {best, std::sqrt(best_d2)};
}

RootClaimsReport verify_root_claims(PolyKind kind, int n, const RootSet& rs)
{
    RootClaimsReport report{kind, n, true, true, rs.roots};
    for (double dm : rs.derivative_moduli)
        if (!(dm > 1e-8))
            report.all_simple = false;
    for (const auto& root : rs.roots) {
        const double mod = std::abs(root);
        const bool ok = kind == PolyKind::PartialSum ? (mod > 0.0 && mod < static_cast<double>(n)) : (mod < 1.0);
        if (!ok)
            report.bounds_hold = false;
    }
    return report;
}

const char* to_string(PolyKind kind) noexcept
{
    return kind == PolyKind::PartialSum ? "partial_sum" : "szego";
}

namespace {

nlohmann::json pairs(const std::vector<ComplexValue>& values)
{
    auto arr = nlohmann::json::array();
    for (const auto& v : values)
        arr.push_back({v.real(), v.imag()});
    return arr;
}

} // namespace

nlohmann::json to_json(const RootSet& rs)
{
    return {{"roots", pairs(rs.roots)}, {"residuals", rs.residuals}, {"derivative_moduli", rs.derivative_moduli}};
}

nlohmann::json to_json(const RootClaimsReport& report)
{
    return {{"kind", to_string(report.kind)},
            {"n", report.n},
            {"all_simple", report.all_simple},
            {"bounds_hold", report.bounds_hold},
            {"roots", pairs(report.roots)}};
}

} // namespace expograph
