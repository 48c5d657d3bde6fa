#pragma once

#include "expograph/imageio.hpp"
#include "expograph/roots.hpp"
#include "expograph/scene.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace expograph {

enum class PixelStatus : std::uint8_t { Converged = 0, MaxIter = 1, Diverged = 2, Singular = 3 };

const char* to_string(PixelStatus status) noexcept;

/// Classification of one seed. root_index is -1 unless Converged.
struct PixelOutcome {
    PixelStatus status = PixelStatus::MaxIter;
    std::int32_t root_index = -1;
    std::int32_t iterations = 0;

    friend bool operator==(const PixelOutcome&, const PixelOutcome&) = default;
};

struct OutcomeGrid {
    int cols = 0;
    int rows = 0;
    std::vector<PixelOutcome> pixels;  // row-major

    const PixelOutcome& at(int col, int row) const
    {
        return pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(col)];
    }

    friend bool operator==(const OutcomeGrid&, const OutcomeGrid&) = default;
};

/// Resolves a worker count: positive values are used as given, anything else
/// falls back to EXPOGRAPH_WORKERS and then to the OpenMP default.
int resolve_workers(int requested);

/// Per-pixel orbits of B_{m,alpha}. Parallel over rows; the result does not
/// depend on the worker count.
OutcomeGrid render_basins(const Scene& scene, const RootSet& rs, int workers = 0);

/// Per-pixel basic sequences B_2(w)..B_{m_max}(w).
OutcomeGrid render_voronoi(const Scene& scene, const RootSet& rs, int workers = 0);

/// Dispatches on scene.mode.
OutcomeGrid render(const Scene& scene, const RootSet& rs, int workers = 0);

struct OrbitPoint {
    int k;
    ComplexValue z;
    double residual;  // |p(z)|
};

/// Classifies single seeds under a scene's mode. Holds per-thread scratch
/// space, so use one instance per worker.
///
/// Basins: iterate z <- B_{m,alpha}(z) and stop on the first of
///   - |p(z)| < eps_root with the nearest root closer than 10 eps_root (Converged),
///   - |z_{k+1} - z_k| < eps_step: Converged to the nearest root if
///     |p(z)| < sqrt(eps_root), otherwise MaxIter,
///   - |z| > divergence_radius or an overflowing step (Diverged),
///   - a zero denominator (Singular),
///   - max_iter steps (MaxIter).
/// Voronoi: B_2(w)..B_{m_max}(w) at the fixed seed; the root nearest to
/// B_{m_max}(w) wins and iterations is the first m within eps_root of it.
class SeedClassifier {
public:
    SeedClassifier(const Polynomial& p, const Scene& scene, const RootSet& rs);

    /// When `trace` is given, every visited iterate is appended to it.
    PixelOutcome classify(ComplexValue seed, std::vector<OrbitPoint>* trace = nullptr);

private:
    PixelOutcome classify_basin(ComplexValue z0, std::vector<OrbitPoint>* trace);
    PixelOutcome classify_sequence(ComplexValue w, std::vector<OrbitPoint>* trace);

    const Polynomial* p_;
    const Scene* scene_;
    const RootSet* rs_;
    FamilyEvaluator eval_;
    std::vector<ComplexValue> sequence_;
    std::vector<std::uint8_t> defined_;
};

/// Flat little-endian layout, 5 bytes per pixel row-major: status byte,
/// root index (uint16, 0xFFFF when absent), iterations (uint16).
std::vector<std::uint8_t> serialize_grid(const OutcomeGrid& grid);
OutcomeGrid deserialize_grid(std::span<const std::uint8_t> bytes, int cols, int rows);

/// Hue by root index spread evenly over the circle, brightness
/// 1 - min(iterations, 64)/64; MaxIter and Singular are black, Diverged white.
ImageBuffer colorize(const OutcomeGrid& grid, int degree, std::string_view palette_id = "hsv");

namespace reference {

/// Plain serial renderers built on the throwing public step functions. Kept
/// as the baseline the parallel kernels are checked and benchmarked against.
OutcomeGrid render_basins(const Scene& scene, const RootSet& rs);
OutcomeGrid render_voronoi(const Scene& scene, const RootSet& rs);

} // namespace reference

} // namespace expograph
