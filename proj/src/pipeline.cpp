#include "expograph/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>

#include "expograph/errors.hpp"

namespace expograph {

std::size_t RenderResult::count(PixelStatus status) const
{
    return static_cast<std::size_t>(
        std::count_if(grid.pixels.begin(), grid.pixels.end(), [status](const PixelOutcome& px) { return px.status == status; }));
}

double RenderResult::fraction(PixelStatus status) const
{
    if (grid.pixels.empty())
        return 0.0;
    return static_cast<double>(count(status)) / static_cast<double>(grid.pixels.size());
}

RenderResult render_scene(const Scene& scene, int workers)
{
    const auto start = std::chrono::steady_clock::now();
    validate(scene);
    RenderResult result;
    result.roots = find_all_roots(scene.poly.build());
    result.grid = render(scene, result.roots, workers);
    result.image = colorize(result.grid, static_cast<int>(result.roots.size()), scene.palette);
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

nlohmann::json roots_document(PolyKind kind, int n)
{
    if (n < 1 || n > kMaxDegree)
        throw InvalidParameter("n must lie in [1, " + std::to_string(kMaxDegree) + "]");
    const Polynomial p = kind == PolyKind::PartialSum ? partial_sum(n) : szego_sum(n);
    const RootSet rs = find_all_roots(p);
    nlohmann::json doc = to_json(verify_root_claims(kind, n, rs));
    doc["residuals"] = rs.residuals;
    doc["derivative_moduli"] = rs.derivative_moduli;
    return doc;
}

std::string summary_line(const RenderResult& result)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, "pixels=%zu converged=%.2f%% wall=%.3fs", result.grid.pixels.size(),
                  100.0 * result.fraction(PixelStatus::Converged), result.seconds);
    return buf;
}

} // namespace expograph
