#pragma once

#include "expograph/render.hpp"

#include <string>
#include <vector>

#include <json.hpp>

namespace expograph {

/// Iterates seen from one seed plus the classification the renderer would
/// give that seed.
struct OrbitTrace {
    std::vector<OrbitPoint> points;
    PixelOutcome outcome;
};

/// Traces the scene's map from z0. For basins scenes `max_steps` (if
/// positive) replaces tolerances.max_iter; for voronoi scenes the trace is
/// the basic sequence at z0, indexed by m.
OrbitTrace trace_orbit(const Scene& scene, const RootSet& rs, ComplexValue z0, int max_steps = 0);

/// {"points": [[k, re, im, |p|], ...], "status": ..., "root_index": ..., "iterations": ...}
nlohmann::json to_json(const OrbitTrace& trace);

/// One JSON array per line, then a final status object line.
std::string to_json_lines(const OrbitTrace& trace);

} // namespace expograph
