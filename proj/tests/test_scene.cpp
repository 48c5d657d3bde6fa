#include "expograph/errors.hpp"
#include "expograph/scene.hpp"

#include <doctest.h>

#include <filesystem>
#include <string>

using namespace expograph;
using C = std::complex<double>;
using nlohmann::json;

namespace {

json minimal()
{
    return json::parse(R"({
        "poly": {"kind": "partial_sum", "n": 3},
        "mode": {"kind": "basins", "m": 2, "alpha": [1, 0]},
        "viewport": {"center": [0, 0], "width": 4, "cols": 64, "rows": 48}
    })");
}

SceneError::Kind error_kind(const json& doc)
{
    try {
        scene_from_json(doc);
    } catch (const SceneError& e) {
        return e.kind();
    }
    FAIL("scene was accepted");
    return SceneError::Kind::Malformed;
}

} // namespace

TEST_CASE("pixel_to_complex examples")
{
    const Viewport v{{0.0, 0.0}, 4.0, 2, 2};
    CHECK(pixel_to_complex(v, 0, 0) == C(-1, 1));
    CHECK(pixel_to_complex(v, 1, 1) == C(1, -1));
    CHECK(pixel_to_complex(Viewport{{1.0, 2.0}, 2.0, 1, 1}, 0, 0) == C(1, 2));
}

TEST_CASE("viewport height and pixel symmetry")
{
    const Viewport v{{0.0, 0.0}, 3.0, 300, 200};
    CHECK(v.height() == 2.0);
    for (int row = 0; row < v.rows; ++row)
        for (int col = 0; col < v.cols; col += 7) {
            const C a = pixel_to_complex(v, col, row);
            const C b = pixel_to_complex(v, col, v.rows - 1 - row);
            CHECK(a == std::conj(b));
        }
    // pixel spacing is width / cols in both directions
    const C d = pixel_to_complex(v, 1, 0) - pixel_to_complex(v, 0, 1);
    CHECK(d.real() == doctest::Approx(0.01));
    CHECK(d.imag() == doctest::Approx(0.01));
}

TEST_CASE("parse minimal scene with defaults")
{
    const Scene s = scene_from_json(minimal());
    CHECK(s.poly.family == PolyFamily::PartialSum);
    CHECK(s.poly.n == 3);
    CHECK(s.viewport.cols == 64);
    CHECK(s.viewport.rows == 48);
    CHECK(s.tolerances == Tolerances{});
    CHECK(s.tolerances.eps_root == 1e-9);
    CHECK(s.tolerances.eps_step == 1e-12);
    CHECK(s.tolerances.divergence_radius == 1e8);
    CHECK(s.tolerances.max_iter == 256);
    CHECK(s.palette == "hsv");
    CHECK(std::get<BasinsMode>(s.mode).params == FamilyParams(2, 1.0));
}

TEST_CASE("partial tolerances keep the other defaults")
{
    auto doc = minimal();
    doc["tolerances"] = {{"max_iter", 100}};
    const Scene s = scene_from_json(doc);
    CHECK(s.tolerances.max_iter == 100);
    CHECK(s.tolerances.eps_root == 1e-9);
}

TEST_CASE("mode defaults")
{
    auto doc = minimal();
    doc["mode"] = {{"kind", "voronoi"}};
    CHECK(std::get<VoronoiMode>(scene_from_json(doc).mode).m_max == 30);
    doc["mode"] = {{"kind", "basins"}};
    CHECK(std::get<BasinsMode>(scene_from_json(doc).mode).params == FamilyParams());
}

TEST_CASE("malformed documents")
{
    CHECK_THROWS_AS(parse_scene("{not json"), SceneError);
    CHECK(error_kind(json::array()) == SceneError::Kind::Malformed);

    auto doc = minimal();
    doc["extra"] = 1;
    CHECK(error_kind(doc) == SceneError::Kind::Malformed);

    doc = minimal();
    doc["viewport"]["zoom"] = 2;
    CHECK(error_kind(doc) == SceneError::Kind::Malformed);

    doc = minimal();
    doc["tolerances"] = {{"eps", 1e-3}};
    CHECK(error_kind(doc) == SceneError::Kind::Malformed);

    doc = minimal();
    doc["poly"]["kind"] = "chebyshev";
    CHECK(error_kind(doc) == SceneError::Kind::Malformed);

    doc = minimal();
    doc["poly"]["n"] = 2.5;
    CHECK(error_kind(doc) == SceneError::Kind::Malformed);

    doc = minimal();
    doc["mode"]["alpha"] = "1+0i";
    CHECK(error_kind(doc) == SceneError::Kind::Malformed);

    doc = minimal();
    doc.erase("viewport");
    CHECK(error_kind(doc) == SceneError::Kind::Malformed);
    CHECK_NOTHROW(scene_from_json(doc, false));

    CHECK_THROWS_AS(load_scene_file("/nonexistent/scene.json"), SceneError);
}

TEST_CASE("constraint violations")
{
    auto check = [](auto mutate) {
        auto doc = minimal();
        mutate(doc);
        CHECK(error_kind(doc) == SceneError::Kind::Constraint);
    };
    check([](json& d) { d["poly"]["n"] = 0; });
    check([](json& d) { d["poly"]["n"] = 65; });
    check([](json& d) { d["mode"]["alpha"] = {2.5, 0}; });
    check([](json& d) { d["mode"]["alpha"] = {0, 0}; });
    check([](json& d) { d["mode"]["m"] = 1; });
    check([](json& d) { d["mode"]["m"] = 501; });
    check([](json& d) { d["mode"] = {{"kind", "voronoi"}, {"m_max", 1}}; });
    check([](json& d) { d["mode"] = {{"kind", "voronoi"}, {"m_max", 501}}; });
    check([](json& d) { d["viewport"]["width"] = 0; });
    check([](json& d) { d["viewport"]["cols"] = 0; });
    check([](json& d) { d["viewport"]["rows"] = 20000; });
    check([](json& d) { d["tolerances"] = {{"eps_root", 0.0}}; });
    check([](json& d) { d["tolerances"] = {{"eps_step", 0.5}}; });
    check([](json& d) { d["tolerances"] = {{"divergence_radius", 10.0}}; });
    check([](json& d) { d["tolerances"] = {{"max_iter", 0}}; });
    check([](json& d) { d["tolerances"] = {{"max_iter", 10001}}; });
    check([](json& d) { d["palette"] = "viridis"; });
    check([](json& d) { d["poly"] = {{"kind", "explicit"}, {"coeffs", {{3, 0}}}}; });
}

TEST_CASE("explicit polynomial")
{
    auto doc = minimal();
    doc["poly"] = {{"kind", "explicit"}, {"coeffs", {{-1, 0}, {0, 0}, {1, 0}}}};
    const Scene s = scene_from_json(doc);
    CHECK(s.poly.build() == Polynomial({-1.0, 0.0, 1.0}));
}

TEST_CASE("poly families build the expected polynomials")
{
    CHECK(PolySpec{PolyFamily::PartialSum, 4, {}}.build() == partial_sum(4));
    CHECK(PolySpec{PolyFamily::Szego, 4, {}}.build() == szego_sum(4));
    const auto su = PolySpec{PolyFamily::SzegoTimesUnity, 2, {}}.build();
    CHECK(su == Polynomial({-1.0, -2.0, -1.0, 2.0, 2.0}));
}

TEST_CASE("json round trip")
{
    for (auto fig : {Figure::Fig1, Figure::Fig2, Figure::Fig3, Figure::Fig4}) {
        const Scene s = make_preset(fig, 5);
        CHECK(scene_from_json(to_json(s)) == s);
        CHECK(parse_scene(to_json(s).dump()) == s);
    }
    auto doc = minimal();
    doc["palette"] = "hsv_flat";
    doc["mode"]["alpha"] = {0.7, -0.2};
    const Scene s = scene_from_json(doc);
    CHECK(scene_from_json(to_json(s)) == s);
}

TEST_CASE("presets")
{
    CHECK(figure_from_name("fig3") == Figure::Fig3);
    CHECK_FALSE(figure_from_name("fig5").has_value());
    CHECK(std::string(to_string(Figure::Fig4)) == "fig4");

    const Scene f1 = make_preset(Figure::Fig1, 3);
    CHECK(std::get<BasinsMode>(f1.mode).params == FamilyParams(2, 1.0));
    CHECK(f1.viewport.width == 7.5);
    const Scene f3 = make_preset(Figure::Fig3, 3);
    CHECK(std::get<BasinsMode>(f3.mode).params.alpha() == kDefaultParametrizedAlpha);
    CHECK(FamilyParams::alpha_is_valid(kDefaultParametrizedAlpha));
    const Scene f4 = make_preset(Figure::Fig4, 3);
    CHECK(f4.poly.family == PolyFamily::SzegoTimesUnity);
    CHECK(std::holds_alternative<VoronoiMode>(f4.mode));
}

TEST_CASE("shipped preset files match the generated presets")
{
    const std::filesystem::path dir = EXPOGRAPH_PRESET_DIR;
    int checked = 0;
    auto check_range = [&](Figure fig, int lo, int hi) {
        for (int n = lo; n <= hi; ++n) {
            const auto path = dir / to_string(fig) / ("n" + std::to_string(n) + ".json");
            CAPTURE(path.string());
            REQUIRE(std::filesystem::exists(path));
            CHECK(load_scene_file(path.string()) == make_preset(fig, n));
            ++checked;
        }
    };
    check_range(Figure::Fig1, 2, 10);
    check_range(Figure::Fig2, 2, 7);
    check_range(Figure::Fig3, 2, 7);
    check_range(Figure::Fig4, 2, 7);
    CHECK(checked == 27);
}
