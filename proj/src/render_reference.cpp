#include "expograph/errors.hpp"
#include "expograph/render.hpp"

#include <cmath>

namespace expograph::reference {

OutcomeGrid render_basins(const Scene& scene, const RootSet& rs)
{
    validate(scene);
    const auto& params = std::get<BasinsMode>(scene.mode).params;
    const Tolerances& tol = scene.tolerances;
    const Polynomial p = scene.poly.build();
    const Viewport& v = scene.viewport;

    OutcomeGrid grid{v.cols, v.rows, {}};
    grid.pixels.reserve(static_cast<std::size_t>(v.cols) * static_cast<std::size_t>(v.rows));

    for (int row = 0; row < v.rows; ++row) {
        for (int col = 0; col < v.cols; ++col) {
            ComplexValue z = pixel_to_complex(v, col, row);
            PixelOutcome out{PixelStatus::MaxIter, -1, tol.max_iter};

            if (std::abs(z) > tol.divergence_radius) {
                grid.pixels.push_back({PixelStatus::Diverged, -1, 0});
                continue;
            }
            if (std::abs(p(z)) < tol.eps_root) {
                const auto nr = nearest_root(rs, z);
                if (nr.distance < 10.0 * tol.eps_root) {
                    grid.pixels.push_back({PixelStatus::Converged, static_cast<std::int32_t>(nr.index), 0});
                    continue;
                }
            }

            for (int k = 1; k <= tol.max_iter; ++k) {
                ComplexValue next;
                try {
                    next = basic_family_step(p, z, params);
                } catch (const SingularDenominator&) {
                    out = {PixelStatus::Singular, -1, k};
                    break;
                } catch (const NonFiniteResult&) {
                    out = {PixelStatus::Diverged, -1, k};
                    break;
                }
                if (std::abs(next) > tol.divergence_radius) {
                    out = {PixelStatus::Diverged, -1, k};
                    break;
                }
                const double residual = std::abs(p(next));
                const auto nr = nearest_root(rs, next);
                if (residual < tol.eps_root && nr.distance < 10.0 * tol.eps_root) {
                    out = {PixelStatus::Converged, static_cast<std::int32_t>(nr.index), k};
                    break;
                }
                if (std::abs(next - z) < tol.eps_step) {
                    out = residual < std::sqrt(tol.eps_root) ? PixelOutcome{PixelStatus::Converged, static_cast<std::int32_t>(nr.index), k}
                                                             : PixelOutcome{PixelStatus::MaxIter, -1, k};
                    break;
                }
                z = next;
            }
            grid.pixels.push_back(out);
        }
    }
    return grid;
}

OutcomeGrid render_voronoi(const Scene& scene, const RootSet& rs)
{
    validate(scene);
    const int m_max = std::get<VoronoiMode>(scene.mode).m_max;
    const Tolerances& tol = scene.tolerances;
    const Polynomial p = scene.poly.build();
    const Viewport& v = scene.viewport;

    OutcomeGrid grid{v.cols, v.rows, {}};
    grid.pixels.reserve(static_cast<std::size_t>(v.cols) * static_cast<std::size_t>(v.rows));

    for (int row = 0; row < v.rows; ++row) {
        for (int col = 0; col < v.cols; ++col) {
            const ComplexValue w = pixel_to_complex(v, col, row);
            if (std::abs(w) > tol.divergence_radius) {
                grid.pixels.push_back({PixelStatus::Diverged, -1, 0});
                continue;
            }
            const BasicSequence seq = basic_sequence(p, w, m_max);
            if (!seq.is_defined(m_max)) {
                grid.pixels.push_back({PixelStatus::Singular, -1, m_max});
                continue;
            }
            const auto target = nearest_root(rs, seq.at(m_max)).index;
            int first = m_max;
            for (int m = 2; m <= m_max; ++m) {
                if (seq.is_defined(m) && std::abs(seq.at(m) - rs.roots[target]) < tol.eps_root) {
                    first = m;
                    break;
                }
            }
            grid.pixels.push_back({PixelStatus::Converged, static_cast<std::int32_t>(target), first});
        }
    }
    return grid;
}

} // namespace expograph::reference
