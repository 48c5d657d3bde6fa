#pragma once

#include "expograph/imageio.hpp"
#include "expograph/render.hpp"
#include "expograph/roots.hpp"
#include "expograph/scene.hpp"

#include <cstddef>
#include <string>

namespace expograph {

struct RenderResult {
    RootSet roots;
    OutcomeGrid grid;
    ImageBuffer image;
    double seconds = 0.0;

    std::size_t count(PixelStatus status) const;
    double fraction(PixelStatus status) const;
};

/// Roots, per-pixel classification and coloring of one scene. Both the CLI
/// and the HTTP service go through here. Throws NoConvergence when the root
/// finder fails.
RenderResult render_scene(const Scene& scene, int workers = 0);

/// Roots of P_n or S_n with the claims report, as served by `roots`:
/// {"kind", "n", "all_simple", "bounds_hold", "roots", "residuals", "derivative_moduli"}.
/// Throws InvalidParameter unless 1 <= n <= kMaxDegree.
nlohmann::json roots_document(PolyKind kind, int n);

/// "pixels=... converged=...% wall=...s"
std::string summary_line(const RenderResult& result);

} // namespace expograph
