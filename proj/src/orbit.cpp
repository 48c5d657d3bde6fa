#include "expograph/orbit.hpp"

#include <algorithm>

namespace expograph {

OrbitTrace trace_orbit(const Scene& scene, const RootSet& rs, ComplexValue z0, int max_steps)
{
    Scene s = scene;
    if (max_steps > 0 && std::holds_alternative<BasinsMode>(s.mode))
        s.tolerances.max_iter = std::min(max_steps, 10000);
    validate(s);
    const Polynomial p = s.poly.build();
    SeedClassifier classifier(p, s, rs);
    OrbitTrace trace;
    trace.outcome = classifier.classify(z0, &trace.points);
    return trace;
}

namespace {

nlohmann::json point_json(const OrbitPoint& pt)
{
    return nlohmann::json::array({pt.k, pt.z.real(), pt.z.imag(), pt.residual});
}

nlohmann::json outcome_json(const PixelOutcome& o)
{
    nlohmann::json j = {{"status", to_string(o.status)}, {"iterations", o.iterations}};
    j["root_index"] = o.root_index >= 0 ? nlohmann::json(o.root_index) : nlohmann::json(nullptr);
    return j;
}

} // namespace

nlohmann::json to_json(const OrbitTrace& trace)
{
    auto points = nlohmann::json::array();
    for (const auto& pt : trace.points)
        points.push_back(point_json(pt));
    nlohmann::json j = outcome_json(trace.outcome);
    j["points"] = std::move(points);
    return j;
}

std::string to_json_lines(const OrbitTrace& trace)
{
    std::string out;
    for (const auto& pt : trace.points)
        out += point_json(pt).dump() + "\n";
    out += outcome_json(trace.outcome).dump() + "\n";
    return out;
}

} // namespace expograph
