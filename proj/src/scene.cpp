#include "expograph/scene.hpp"

#include "expograph/errors.hpp"
#include "expograph/palette.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

namespace expograph {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& msg)
{
    throw SceneError(SceneError::Kind::Malformed, msg);
}

[[noreturn]] void violated(const std::string& msg)
{
    throw SceneError(SceneError::Kind::Constraint, msg);
}

void require_object(const json& v, const char* what)
{
    if (!v.is_object())
        malformed(std::string(what) + " must be an object");
}

void reject_unknown(const json& obj, const char* what, std::initializer_list<std::string_view> allowed)
{
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (auto a : allowed)
            ok = ok || item.key() == a;
        if (!ok)
            malformed(std::string("unknown key '") + item.key() + "' in " + what);
    }
}

const json& member(const json& obj, const char* key, const char* what)
{
    const auto it = obj.find(key);
    if (it == obj.end())
        malformed(std::string(what) + "." + key + " is required");
    return *it;
}

int get_int(const json& v, const char* what)
{
    if (!v.is_number_integer())
        malformed(std::string(what) + " must be an integer");
    const auto x = v.get<long long>();
    if (x < -1'000'000'000LL || x > 1'000'000'000LL)
        violated(std::string(what) + " is out of range");
    return static_cast<int>(x);
}

double get_real(const json& v, const char* what)
{
    if (!v.is_number())
        malformed(std::string(what) + " must be a number");
    return v.get<double>();
}

std::string get_string(const json& v, const char* what)
{
    if (!v.is_string())
        malformed(std::string(what) + " must be a string");
    return v.get<std::string>();
}

PolySpec poly_from_json(const json& v)
{
    require_object(v, "poly");
    PolySpec spec;
    const auto kind = get_string(member(v, "kind", "poly"), "poly.kind");
    if (kind == "explicit") {
        reject_unknown(v, "poly", {"kind", "coeffs"});
        spec.family = PolyFamily::Explicit;
        spec.n = 0;
        const auto& arr = member(v, "coeffs", "poly");
        if (!arr.is_array())
            malformed("poly.coeffs must be an array of [re, im] pairs");
        for (const auto& c : arr)
            spec.coeffs.push_back(complex_from_json(c, "poly.coeffs entry"));
        return spec;
    }
    reject_unknown(v, "poly", {"kind", "n"});
    if (kind == "partial_sum")
        spec.family = PolyFamily::PartialSum;
    else if (kind == "szego")
        spec.family = PolyFamily::Szego;
    else if (kind == "szego_unity")
        spec.family = PolyFamily::SzegoTimesUnity;
    else
        malformed("unknown poly.kind '" + kind + "'");
    spec.n = get_int(member(v, "n", "poly"), "poly.n");
    return spec;
}

Mode mode_from_json(const json& v)
{
    require_object(v, "mode");
    const auto kind = get_string(member(v, "kind", "mode"), "mode.kind");
    if (kind == "basins") {
        reject_unknown(v, "mode", {"kind", "m", "alpha"});
        const int m = v.contains("m") ? get_int(v["m"], "mode.m") : 2;
        const ComplexValue alpha = v.contains("alpha") ? complex_from_json(v["alpha"], "mode.alpha") : ComplexValue(1.0);
        if (m < 2 || m > kMaxFamilyOrder)
            violated("mode.m must lie in [2, " + std::to_string(kMaxFamilyOrder) + "]");
        if (!FamilyParams::alpha_is_valid(alpha))
            violated("mode.alpha must satisfy |1 - alpha| < 1");
        return BasinsMode{FamilyParams(m, alpha)};
    }
    if (kind == "voronoi") {
        reject_unknown(v, "mode", {"kind", "m_max"});
        VoronoiMode mode;
        if (v.contains("m_max"))
            mode.m_max = get_int(v["m_max"], "mode.m_max");
        return mode;
    }
    malformed("unknown mode.kind '" + kind + "'");
}

Viewport viewport_from_json(const json& v)
{
    require_object(v, "viewport");
    reject_unknown(v, "viewport", {"center", "width", "cols", "rows"});
    Viewport vp;
    vp.center = complex_from_json(member(v, "center", "viewport"), "viewport.center");
    vp.width = get_real(member(v, "width", "viewport"), "viewport.width");
    vp.cols = get_int(member(v, "cols", "viewport"), "viewport.cols");
    vp.rows = get_int(member(v, "rows", "viewport"), "viewport.rows");
    return vp;
}

Tolerances tolerances_from_json(const json& v)
{
    require_object(v, "tolerances");
    reject_unknown(v, "tolerances", {"eps_root", "eps_step", "divergence_radius", "max_iter"});
    Tolerances t;
    if (v.contains("eps_root"))
        t.eps_root = get_real(v["eps_root"], "tolerances.eps_root");
    if (v.contains("eps_step"))
        t.eps_step = get_real(v["eps_step"], "tolerances.eps_step");
    if (v.contains("divergence_radius"))
        t.divergence_radius = get_real(v["divergence_radius"], "tolerances.divergence_radius");
    if (v.contains("max_iter"))
        t.max_iter = get_int(v["max_iter"], "tolerances.max_iter");
    return t;
}

bool in_tolerance_range(double eps)
{
    return eps > 0.0 && eps <= 1e-2;
}

void validate_poly(const PolySpec& p)
{
    if (p.family == PolyFamily::Explicit) {
        for (const auto& c : p.coeffs)
            if (!is_finite(c))
                violated("poly.coeffs must be finite");
        const Polynomial poly(p.coeffs);
        if (poly.degree() < 1 || poly.degree() > static_cast<std::size_t>(kMaxDegree))
            violated("explicit polynomial degree must lie in [1, " + std::to_string(kMaxDegree) + "]");
        return;
    }
    if (p.n < 1 || p.n > kMaxDegree)
        violated("poly.n must lie in [1, " + std::to_string(kMaxDegree) + "]");
}

} // namespace

ComplexValue complex_from_json(const json& v, const char* what)
{
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        malformed(std::string(what) + " must be a [re, im] pair");
    return {v[0].get<double>(), v[1].get<double>()};
}

json complex_to_json(ComplexValue z)
{
    return json::array({z.real(), z.imag()});
}

ComplexValue pixel_to_complex(const Viewport& v, int col, int row)
{
    // Same as center + width * ((col + 0.5)/cols - 0.5) etc., written with
    // integer numerators so that mirrored pixels land on exactly negated offsets.
    const double re = v.width * static_cast<double>(2 * col + 1 - v.cols) / (2.0 * v.cols);
    const double im = v.height() * static_cast<double>(v.rows - 2 * row - 1) / (2.0 * v.rows);
    return {v.center.real() + re, v.center.imag() + im};
}

Polynomial PolySpec::build() const
{
    switch (family) {
    case PolyFamily::PartialSum:
        return partial_sum(n);
    case PolyFamily::Szego:
        return szego_sum(n);
    case PolyFamily::SzegoTimesUnity:
        return multiply(szego_sum(n), unity_factor(n));
    case PolyFamily::Explicit:
        return Polynomial(coeffs);
    }
    return Polynomial();
}

void validate(const Scene& scene)
{
    validate_poly(scene.poly);

    if (const auto* basins = std::get_if<BasinsMode>(&scene.mode)) {
        if (basins->params.m() > kMaxFamilyOrder)
            violated("mode.m must lie in [2, " + std::to_string(kMaxFamilyOrder) + "]");
    } else {
        const int m_max = std::get<VoronoiMode>(scene.mode).m_max;
        if (m_max < 2 || m_max > kMaxFamilyOrder)
            violated("mode.m_max must lie in [2, " + std::to_string(kMaxFamilyOrder) + "]");
    }

    const auto& v = scene.viewport;
    if (!is_finite(v.center))
        violated("viewport.center must be finite");
    if (!(std::isfinite(v.width) && v.width > 0.0))
        violated("viewport.width must be positive");
    if (v.cols < 1 || v.cols > kMaxSceneSide || v.rows < 1 || v.rows > kMaxSceneSide)
        violated("viewport.cols and viewport.rows must lie in [1, " + std::to_string(kMaxSceneSide) + "]");

    const auto& t = scene.tolerances;
    if (!in_tolerance_range(t.eps_root))
        violated("tolerances.eps_root must lie in (0, 1e-2]");
    if (!in_tolerance_range(t.eps_step))
        violated("tolerances.eps_step must lie in (0, 1e-2]");
    if (!(std::isfinite(t.divergence_radius) && t.divergence_radius >= 1e3))
        violated("tolerances.divergence_radius must be at least 1e3");
    if (t.max_iter < 1 || t.max_iter > 10000)
        violated("tolerances.max_iter must lie in [1, 10000]");

    if (!is_known_palette(scene.palette))
        violated("unknown palette '" + scene.palette + "'");
}

Scene scene_from_json(const json& doc, bool require_viewport)
{
    require_object(doc, "scene");
    reject_unknown(doc, "scene", {"poly", "mode", "viewport", "tolerances", "palette"});
    Scene scene;
    scene.poly = poly_from_json(member(doc, "poly", "scene"));
    scene.mode = mode_from_json(member(doc, "mode", "scene"));
    if (require_viewport || doc.contains("viewport"))
        scene.viewport = viewport_from_json(member(doc, "viewport", "scene"));
    if (doc.contains("tolerances"))
        scene.tolerances = tolerances_from_json(doc["tolerances"]);
    if (doc.contains("palette"))
        scene.palette = get_string(doc["palette"], "palette");
    validate(scene);
    return scene;
}

Scene parse_scene(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        malformed(std::string("invalid JSON: ") + e.what());
    }
    return scene_from_json(doc);
}

Scene load_scene_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        malformed("cannot open scene file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scene(buf.str());
}

json to_json(const Scene& scene)
{
    json poly;
    switch (scene.poly.family) {
    case PolyFamily::PartialSum:
        poly = {{"kind", "partial_sum"}, {"n", scene.poly.n}};
        break;
    case PolyFamily::Szego:
        poly = {{"kind", "szego"}, {"n", scene.poly.n}};
        break;
    case PolyFamily::SzegoTimesUnity:
        poly = {{"kind", "szego_unity"}, {"n", scene.poly.n}};
        break;
    case PolyFamily::Explicit: {
        auto coeffs = json::array();
        for (const auto& c : scene.poly.coeffs)
            coeffs.push_back(complex_to_json(c));
        poly = {{"kind", "explicit"}, {"coeffs", coeffs}};
        break;
    }
    }

    json mode;
    if (const auto* basins = std::get_if<BasinsMode>(&scene.mode))
        mode = {{"kind", "basins"}, {"m", basins->params.m()}, {"alpha", complex_to_json(basins->params.alpha())}};
    else
        mode = {{"kind", "voronoi"}, {"m_max", std::get<VoronoiMode>(scene.mode).m_max}};

    const auto& v = scene.viewport;
    const auto& t = scene.tolerances;
    return {{"poly", poly},
            {"mode", mode},
            {"viewport", {{"center", complex_to_json(v.center)}, {"width", v.width}, {"cols", v.cols}, {"rows", v.rows}}},
            {"tolerances",
             {{"eps_root", t.eps_root},
              {"eps_step", t.eps_step},
              {"divergence_radius", t.divergence_radius},
              {"max_iter", t.max_iter}}},
            {"palette", scene.palette}};
}

std::optional<Figure> figure_from_name(const std::string& name)
{
    if (name == "fig1")
        return Figure::Fig1;
    if (name == "fig2")
        return Figure::Fig2;
    if (name == "fig3")
        return Figure::Fig3;
    if (name == "fig4")
        return Figure::Fig4;
    return std::nullopt;
}

const char* to_string(Figure fig) noexcept
{
    switch (fig) {
    case Figure::Fig1:
        return "fig1";
    case Figure::Fig2:
        return "fig2";
    case Figure::Fig3:
        return "fig3";
    case Figure::Fig4:
        return "fig4";
    }
    return "unknown";
}

Scene make_preset(Figure fig, int n)
{
    Scene scene;
    scene.viewport = Viewport{{0.0, 0.0}, 2.5 * n, kDefaultPresetSide, kDefaultPresetSide};
    switch (fig) {
    case Figure::Fig1:
        scene.poly = {PolyFamily::PartialSum, n, {}};
        scene.mode = BasinsMode{FamilyParams(2, 1.0)};
        break;
    case Figure::Fig2:
        scene.poly = {PolyFamily::PartialSum, n, {}};
        scene.mode = VoronoiMode{kDefaultPresetSequenceLength};
        break;
    case Figure::Fig3:
        scene.poly = {PolyFamily::PartialSum, n, {}};
        scene.mode = BasinsMode{FamilyParams(2, kDefaultParametrizedAlpha)};
        break;
    case Figure::Fig4:
        scene.poly = {PolyFamily::SzegoTimesUnity, n, {}};
        scene.mode = VoronoiMode{kDefaultPresetSequenceLength};
        scene.viewport.width = 2.6;
        break;
    }
    validate(scene);
    return scene;
}

} // namespace expograph
