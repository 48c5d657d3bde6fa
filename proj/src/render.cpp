#include "expograph/render.hpp"

#include "expograph/errors.hpp"
#include "expograph/palette.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include <omp.h>

namespace expograph {

namespace {

int family_order_bound(const Scene& scene)
{
    if (const auto* basins = std::get_if<BasinsMode>(&scene.mode))
        return basins->params.m();
    return std::get<VoronoiMode>(scene.mode).m_max;
}

PixelOutcome converged(std::size_t root, int k)
{
    return {PixelStatus::Converged, static_cast<std::int32_t>(root), k};
}

PixelOutcome stopped(PixelStatus status, int k)
{
    return {status, -1, k};
}

OutcomeGrid render_grid(const Scene& scene, const RootSet& rs, int workers)
{
    validate(scene);
    if (rs.empty())
        throw InvalidParameter("render needs the scene polynomial's roots");
    const Polynomial p = scene.poly.build();
    const Viewport& v = scene.viewport;

    OutcomeGrid grid;
    grid.cols = v.cols;
    grid.rows = v.rows;
    grid.pixels.resize(static_cast<std::size_t>(v.cols) * static_cast<std::size_t>(v.rows));

    // Rows are independent and write disjoint slots, so scheduling cannot
    // change the result.
#pragma omp parallel num_threads(resolve_workers(workers))
    {
        SeedClassifier classifier(p, scene, rs);
#pragma omp for schedule(dynamic, 1)
        for (int row = 0; row < v.rows; ++row) {
            PixelOutcome* out = grid.pixels.data() + static_cast<std::size_t>(row) * static_cast<std::size_t>(v.cols);
            for (int col = 0; col < v.cols; ++col)
                out[col] = classifier.classify(pixel_to_complex(v, col, row));
        }
    }
    return grid;
}

} // namespace

const char* to_string(PixelStatus status) noexcept
{
    switch (status) {
    case PixelStatus::Converged:
        return "Converged";
    case PixelStatus::MaxIter:
        return "MaxIter";
    case PixelStatus::Diverged:
        return "Diverged";
    case PixelStatus::Singular:
        return "Singular";
    }
    return "Unknown";
}

int resolve_workers(int requested)
{
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("EXPOGRAPH_WORKERS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0 && n <= 1024)
            return static_cast<int>(n);
    }
    return std::max(1, omp_get_max_threads());
}

SeedClassifier::SeedClassifier(const Polynomial& p, const Scene& scene, const RootSet& rs)
    : p_(&p), scene_(&scene), rs_(&rs), eval_(p, family_order_bound(scene))
{
    if (const auto* voronoi = std::get_if<VoronoiMode>(&scene.mode)) {
        sequence_.resize(static_cast<std::size_t>(voronoi->m_max) + 1);
        defined_.resize(static_cast<std::size_t>(voronoi->m_max) + 1);
    }
}

PixelOutcome SeedClassifier::classify(ComplexValue seed, std::vector<OrbitPoint>* trace)
{
    if (std::holds_alternative<BasinsMode>(scene_->mode))
        return classify_basin(seed, trace);
    return classify_sequence(seed, trace);
}

PixelOutcome SeedClassifier::classify_basin(ComplexValue z0, std::vector<OrbitPoint>* trace)
{
    const auto& params = std::get<BasinsMode>(scene_->mode).params;
    const Tolerances& tol = scene_->tolerances;
    const double root_tol = tol.eps_root;
    const double near_tol = 10.0 * tol.eps_root;
    const double loose_tol = std::sqrt(tol.eps_root);

    ComplexValue z = z0;
    if (!is_finite(z) || std::abs(z) > tol.divergence_radius) {
        if (trace && is_finite(z))
            trace->push_back({0, z, std::abs((*p_)(z))});
        return stopped(PixelStatus::Diverged, 0);
    }
    double residual = std::abs(eval_.load(z));
    if (trace)
        trace->push_back({0, z, residual});
    if (residual < root_tol) {
        const auto nr = nearest_root(*rs_, z);
        if (nr.distance < near_tol)
            return converged(nr.index, 0);
    }

    for (int k = 1; k <= tol.max_iter; ++k) {
        const auto r = eval_.step(params.m(), params.alpha());
        if (r.status == kernel::StepStatus::Singular)
            return stopped(PixelStatus::Singular, k);
        if (r.status == kernel::StepStatus::NonFinite)
            return stopped(PixelStatus::Diverged, k);
        const ComplexValue next = r.value;
        if (std::abs(next) > tol.divergence_radius) {
            if (trace)
                trace->push_back({k, next, std::abs((*p_)(next))});
            return stopped(PixelStatus::Diverged, k);
        }
        residual = std::abs(eval_.load(next));
        if (trace)
            trace->push_back({k, next, residual});
        if (residual < root_tol) {
            const auto nr = nearest_root(*rs_, next);
            if (nr.distance < near_tol)
                return converged(nr.index, k);
        }
        if (std::abs(next - z) < tol.eps_step) {
            if (residual < loose_tol)
                return converged(nearest_root(*rs_, next).index, k);
            return stopped(PixelStatus::MaxIter, k);
        }
        z = next;
    }
    return stopped(PixelStatus::MaxIter, tol.max_iter);
}

PixelOutcome SeedClassifier::classify_sequence(ComplexValue w, std::vector<OrbitPoint>* trace)
{
    const int m_max = std::get<VoronoiMode>(scene_->mode).m_max;
    const Tolerances& tol = scene_->tolerances;

    if (!is_finite(w) || std::abs(w) > tol.divergence_radius) {
        if (trace && is_finite(w))
            trace->push_back({0, w, std::abs((*p_)(w))});
        return stopped(PixelStatus::Diverged, 0);
    }
    const double residual = std::abs(eval_.load(w));
    if (trace)
        trace->push_back({0, w, residual});

    std::fill(defined_.begin(), defined_.end(), std::uint8_t{0});
    eval_.sequence(m_max, 1.0, [&](int m, const kernel::StepResult<ComplexValue>& r) {
        if (r.status == kernel::StepStatus::Ok) {
            sequence_[static_cast<std::size_t>(m)] = r.value;
            defined_[static_cast<std::size_t>(m)] = 1;
        }
        return true;
    });

    if (trace)
        for (int m = 2; m <= m_max; ++m)
            if (defined_[static_cast<std::size_t>(m)])
                trace->push_back({m, sequence_[static_cast<std::size_t>(m)], std::abs((*p_)(sequence_[static_cast<std::size_t>(m)]))});

    if (!defined_[static_cast<std::size_t>(m_max)])
        return stopped(PixelStatus::Singular, m_max);

    const auto target = nearest_root(*rs_, sequence_[static_cast<std::size_t>(m_max)]).index;
    const ComplexValue root = rs_->roots[target];
    for (int m = 2; m <= m_max; ++m) {
        const auto idx = static_cast<std::size_t>(m);
        if (defined_[idx] && std::abs(sequence_[idx] - root) < tol.eps_root)
            return converged(target, m);
    }
    return converged(target, m_max);
}

OutcomeGrid render_basins(const Scene& scene, const RootSet& rs, int workers)
{
    if (!std::holds_alternative<BasinsMode>(scene.mode))
        throw InvalidParameter("render_basins needs a basins scene");
    return render_grid(scene, rs, workers);
}

OutcomeGrid render_voronoi(const Scene& scene, const RootSet& rs, int workers)
{
    if (!std::holds_alternative<VoronoiMode>(scene.mode))
        throw InvalidParameter("render_voronoi needs a voronoi scene");
    return render_grid(scene, rs, workers);
}

OutcomeGrid render(const Scene& scene, const RootSet& rs, int workers)
{
    return render_grid(scene, rs, workers);
}

std::vector<std::uint8_t> serialize_grid(const OutcomeGrid& grid)
{
    std::vector<std::uint8_t> out;
    out.reserve(grid.pixels.size() * 5);
    for (const auto& px : grid.pixels) {
        const auto root = static_cast<std::uint16_t>(px.root_index < 0 ? 0xFFFF : px.root_index);
        const auto iters = static_cast<std::uint16_t>(std::clamp(px.iterations, 0, 0xFFFF));
        out.push_back(static_cast<std::uint8_t>(px.status));
        out.push_back(static_cast<std::uint8_t>(root & 0xFF));
        out.push_back(static_cast<std::uint8_t>(root >> 8));
        out.push_back(static_cast<std::uint8_t>(iters & 0xFF));
        out.push_back(static_cast<std::uint8_t>(iters >> 8));
    }
    return out;
}

OutcomeGrid deserialize_grid(std::span<const std::uint8_t> bytes, int cols, int rows)
{
    if (cols < 0 || rows < 0)
        throw InvalidParameter("grid dimensions must be nonnegative");
    const std::size_t count = static_cast<std::size_t>(cols) * static_cast<std::size_t>(rows);
    if (bytes.size() != count * 5)
        throw InvalidParameter("grid byte length does not match dimensions");
    OutcomeGrid grid{cols, rows, std::vector<PixelOutcome>(count)};
    for (std::size_t i = 0; i < count; ++i) {
        const auto* b = bytes.data() + i * 5;
        if (b[0] > 3)
            throw InvalidParameter("invalid pixel status byte");
        const auto root = static_cast<std::uint16_t>(b[1] | (b[2] << 8));
        const auto iters = static_cast<std::uint16_t>(b[3] | (b[4] << 8));
        grid.pixels[i] = {static_cast<PixelStatus>(b[0]), root == 0xFFFF ? -1 : static_cast<std::int32_t>(root),
                          static_cast<std::int32_t>(iters)};
    }
    return grid;
}

namespace {

void hsv_to_rgb(double hue_deg, double value, std::uint8_t* rgb)
{
    const double h = hue_deg / 60.0;
    const double x = value * (1.0 - std::fabs(std::fmod(h, 2.0) - 1.0));
    double r = 0.0, g = 0.0, b = 0.0;
    switch (static_cast<int>(h) % 6) {
    case 0: r = value; g = x; break;
    case 1: r = x; g = value; break;
    case 2: g = value; b = x; break;
    case 3: g = x; b = value; break;
    case 4: r = x; b = value; break;
    default: r = value; b = x; break;
    }
    rgb[0] = static_cast<std::uint8_t>(std::lround(255.0 * r));
    rgb[1] = static_cast<std::uint8_t>(std::lround(255.0 * g));
    rgb[2] = static_cast<std::uint8_t>(std::lround(255.0 * b));
}

} // namespace

ImageBuffer colorize(const OutcomeGrid& grid, int degree, std::string_view palette_id)
{
    if (!is_known_palette(palette_id))
        throw InvalidParameter("unknown palette '" + std::string(palette_id) + "'");
    const bool shaded = palette_id == "hsv";
    const int spread = std::max(degree, 1);

    ImageBuffer img(grid.cols, grid.rows);
    for (std::size_t i = 0; i < grid.pixels.size(); ++i) {
        const auto& px = grid.pixels[i];
        std::uint8_t* rgb = img.pixels.data() + i * 3;
        switch (px.status) {
        case PixelStatus::Converged: {
            const double hue = 360.0 * static_cast<double>(px.root_index) / static_cast<double>(spread);
            const double value = shaded ? 1.0 - static_cast<double>(std::min(px.iterations, kShadeCap)) / kShadeCap : 1.0;
            hsv_to_rgb(hue, value, rgb);
            break;
        }
        case PixelStatus::Diverged:
            rgb[0] = rgb[1] = rgb[2] = 255;
            break;
        case PixelStatus::MaxIter:
        case PixelStatus::Singular:
            rgb[0] = rgb[1] = rgb[2] = 0;
            break;
        }
    }
    return img;
}

} // namespace expograph
