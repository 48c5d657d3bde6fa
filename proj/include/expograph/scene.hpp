#pragma once

#include "expograph/basic_family.hpp"
#include "expograph/complex_poly.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace expograph {

/// Rectangle of the complex plane sampled at pixel centers. Pixels are
/// square; row 0 is the top edge (largest imaginary part).
struct Viewport {
    ComplexValue center{0.0, 0.0};
    double width = 4.0;
    int cols = 256;
    int rows = 256;

    double height() const noexcept { return width * rows / cols; }

    friend bool operator==(const Viewport&, const Viewport&) = default;
};

ComplexValue pixel_to_complex(const Viewport& v, int col, int row);

enum class PolyFamily { PartialSum, Szego, SzegoTimesUnity, Explicit };

struct PolySpec {
    PolyFamily family = PolyFamily::PartialSum;
    int n = 2;
    std::vector<ComplexValue> coeffs;  // Explicit only

    Polynomial build() const;

    friend bool operator==(const PolySpec&, const PolySpec&) = default;
};

struct BasinsMode {
    FamilyParams params;
    friend bool operator==(const BasinsMode&, const BasinsMode&) = default;
};

struct VoronoiMode {
    int m_max = 30;
    friend bool operator==(const VoronoiMode&, const VoronoiMode&) = default;
};

using Mode = std::variant<BasinsMode, VoronoiMode>;

struct Tolerances {
    double eps_root = 1e-9;
    double eps_step = 1e-12;
    double divergence_radius = 1e8;
    int max_iter = 256;

    friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

inline constexpr int kMaxSceneSide = 16384;
inline constexpr int kMaxFamilyOrder = 500;
inline constexpr int kDefaultPresetSide = 400;
inline constexpr int kDefaultPresetSequenceLength = 40;
inline const ComplexValue kDefaultParametrizedAlpha{0.55, 0.45};

struct Scene {
    PolySpec poly;
    Mode mode = BasinsMode{FamilyParams{}};
    Viewport viewport;
    Tolerances tolerances;
    std::string palette = "hsv";

    friend bool operator==(const Scene&, const Scene&) = default;
};

/// Throws SceneError (Malformed or Constraint).
void validate(const Scene& scene);

/// Parses a scene document. Unknown keys are rejected, missing tolerance keys
/// take the defaults. When `require_viewport` is false a missing viewport
/// keeps the default one.
Scene scene_from_json(const nlohmann::json& doc, bool require_viewport = true);
Scene parse_scene(const std::string& text);
Scene load_scene_file(const std::string& path);

nlohmann::json to_json(const Scene& scene);

enum class Figure { Fig1, Fig2, Fig3, Fig4 };

std::optional<Figure> figure_from_name(const std::string& name);
const char* to_string(Figure fig) noexcept;

/// Shipped preset scenes: Fig1 Newton basins of P_n, Fig2 basic-sequence
/// cells of P_n, Fig3 parametrized Newton basins of P_n, Fig4 basic-sequence
/// cells of S_n(z) (z^n - 1).
Scene make_preset(Figure fig, int n);

ComplexValue complex_from_json(const nlohmann::json& v, const char* what);
nlohmann::json complex_to_json(ComplexValue z);

} // namespace expograph
