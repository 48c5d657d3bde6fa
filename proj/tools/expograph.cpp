// expograph: render polynomiographs, list roots, trace orbits, serve tiles.

#include "expograph/errors.hpp"
#include "expograph/orbit.hpp"
#include "expograph/pipeline.hpp"
#include "expograph/service.hpp"

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitRenderFailure = 3;
constexpr int kExitIo = 4;
constexpr int kExitInternal = 1;

int fail(int code, const char* reason, const std::string& message)
{
    std::string line = message;
    for (char& c : line)
        if (c == '\n')
            c = ' ';
    std::fprintf(stderr, "error: %s: %s\n", reason, line.c_str());
    return code;
}

template <class Fn>
int run_guarded(Fn&& fn)
{
    try {
        return fn();
    } catch (const expograph::SceneError& e) {
        return fail(kExitInvalid, "invalid_scene", e.what());
    } catch (const expograph::InvalidParameter& e) {
        return fail(kExitInvalid, "invalid_argument", e.what());
    } catch (const expograph::NoConvergence& e) {
        return fail(kExitRenderFailure, "no_convergence", e.what());
    } catch (const expograph::IoFailure& e) {
        return fail(kExitIo, "io_failure", e.what());
    } catch (const std::exception& e) {
        return fail(kExitInternal, "internal", e.what());
    }
}

bool ends_with(const std::string& s, const std::string& suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

expograph::ComplexValue parse_complex_arg(const std::string& text)
{
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw expograph::InvalidParameter("expected <re>,<im> but got '" + text + "'");
    try {
        std::size_t used_re = 0, used_im = 0;
        const std::string re = text.substr(0, comma);
        const std::string im = text.substr(comma + 1);
        const double x = std::stod(re, &used_re);
        const double y = std::stod(im, &used_im);
        if (used_re != re.size() || used_im != im.size())
            throw std::invalid_argument("trailing characters");
        return {x, y};
    } catch (const std::logic_error&) {
        throw expograph::InvalidParameter("expected <re>,<im> but got '" + text + "'");
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Polynomiographs of exponential partial sums under the basic family"};
    app.require_subcommand(1);

    int workers = 0;

    std::string scene_path, out_path, format;
    auto* render_cmd = app.add_subcommand("render", "Render a scene file to an image");
    render_cmd->add_option("scene", scene_path, "Scene JSON file")->required();
    render_cmd->add_option("-o,--output", out_path, "Output image path")->required();
    render_cmd->add_option("--format", format, "ppm or png (default: from extension, else ppm)")
        ->check(CLI::IsMember({"ppm", "png"}));
    render_cmd->add_option("--workers", workers, "Worker threads")->envname("EXPOGRAPH_WORKERS");

    std::string kind;
    int n = 0;
    auto* roots_cmd = app.add_subcommand("roots", "Print the roots of P_n or S_n with the claims report");
    roots_cmd->add_option("kind", kind, "partial_sum or szego")->required();
    roots_cmd->add_option("n", n, "Degree")->required();

    std::string orbit_scene, z0_text;
    int steps = 0;
    auto* orbit_cmd = app.add_subcommand("orbit", "Print the orbit of a seed as JSON lines");
    orbit_cmd->add_option("scene", orbit_scene, "Scene JSON file")->required();
    orbit_cmd->add_option("--z0", z0_text, "Seed as <re>,<im>")->required();
    orbit_cmd->add_option("--steps", steps, "Step cap (default: scene max_iter)")->check(CLI::Range(1, 10000));

    expograph::ServiceOptions service_options;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
    serve_cmd->add_option("--port", service_options.port, "Listen port")->check(CLI::Range(1, 65535));
    serve_cmd->add_option("--host", service_options.host, "Listen address");
    serve_cmd->add_option("--workers", service_options.workers, "Worker threads per render")->envname("EXPOGRAPH_WORKERS");
    serve_cmd->add_flag("--dev", service_options.dev_mode, "Allow cross-origin requests from anywhere");
    serve_cmd->add_option("--allow-origin", service_options.allowed_origins, "Allowed CORS origin (repeatable)");

    std::string figure;
    int preset_n = 0;
    auto* preset_cmd = app.add_subcommand("preset", "Print a built-in figure preset as a scene file");
    preset_cmd->add_option("figure", figure, "fig1, fig2, fig3 or fig4")->required();
    preset_cmd->add_option("n", preset_n, "Degree parameter")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(kExitInvalid, "usage", e.what());
    }

    if (*render_cmd) {
        return run_guarded([&] {
            const auto scene = expograph::load_scene_file(scene_path);
            const std::string fmt = !format.empty() ? format : (ends_with(out_path, ".png") ? "png" : "ppm");
            const auto result = expograph::render_scene(scene, workers);
            expograph::write_image_file(result.image, out_path, fmt);
            std::fprintf(stderr, "%s\n", expograph::summary_line(result).c_str());
            return 0;
        });
    }

    if (*roots_cmd) {
        return run_guarded([&] {
            expograph::PolyKind k;
            if (kind == "partial_sum")
                k = expograph::PolyKind::PartialSum;
            else if (kind == "szego")
                k = expograph::PolyKind::Szego;
            else
                throw expograph::InvalidParameter("kind must be partial_sum or szego");
            std::cout << expograph::roots_document(k, n).dump() << '\n';
            return 0;
        });
    }

    if (*orbit_cmd) {
        return run_guarded([&] {
            const auto scene = expograph::load_scene_file(orbit_scene);
            const auto z0 = parse_complex_arg(z0_text);
            const auto rs = expograph::find_all_roots(scene.poly.build());
            std::cout << expograph::to_json_lines(expograph::trace_orbit(scene, rs, z0, steps));
            return 0;
        });
    }

    if (*serve_cmd) {
        return run_guarded([&] { return expograph::run_service(service_options); });
    }

    if (*preset_cmd) {
        return run_guarded([&] {
            const auto fig = expograph::figure_from_name(figure);
            if (!fig)
                throw expograph::InvalidParameter("unknown figure '" + figure + "'");
            if (preset_n < 1 || preset_n > expograph::kMaxDegree)
                throw expograph::InvalidParameter("n must lie in [1, 64]");
            std::cout << expograph::to_json(expograph::make_preset(*fig, preset_n)).dump(2) << '\n';
            return 0;
        });
    }
    return kExitInvalid;
}
