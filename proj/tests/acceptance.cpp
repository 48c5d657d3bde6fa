// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. `acceptance --write-golden` regenerates the preset hashes.

#include "expograph/basic_family.hpp"
#include "expograph/errors.hpp"
#include "expograph/pipeline.hpp"
#include "expograph/render.hpp"
#include "expograph/roots.hpp"
#include "expograph/scene.hpp"

#include "convergence_order.hpp"
#include "oracles.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

using namespace expograph;
using C = std::complex<double>;

namespace tol {

// criterion 1
constexpr double kAxisBand = 0.01;
constexpr double kMinConvergedShare = 0.999;
constexpr double kHalfPlaneSeconds = 2.0;
// criterion 2
constexpr int kVoronoiSamples = 1000;
constexpr double kVoronoiMargin = 0.05;  // of viewport width
constexpr double kMinVoronoiAgreement = 0.99;
constexpr int kVoronoiLength = 30;
// criterion 3
constexpr double kOrderTolerance = 0.2;
// criterion 4
constexpr double kRootResidual = 1e-10;
constexpr double kMinDerivative = 1e-6;
constexpr double kScaling = 1e-9;
// criterion 5
constexpr int kClosedFormPairs = 1000;
constexpr double kClosedFormRelative = 1e-12;
constexpr double kHandValues = 1e-15;
// criterion 6
constexpr int kAlphaSamples = 20;
constexpr double kAttractivity = 1e-4;
// criterion 8
constexpr double kMaxSingularShare = 0.01;
constexpr double kSmokeSeconds = 60.0;

} // namespace tol

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
    bool pass;
    std::string detail;
};

std::string format(const char* fmt, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

std::string sha256_hex(const std::vector<std::uint8_t>& bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
    std::string hex;
    for (unsigned int i = 0; i < len; ++i)
        hex += format("%02x", digest[i]);
    return hex;
}

struct PresetId {
    Figure fig;
    int n;
    std::string name() const { return std::string(to_string(fig)) + "/n" + std::to_string(n); }
};

std::vector<PresetId> all_presets()
{
    std::vector<PresetId> out;
    for (int n = 2; n <= 10; ++n)
        out.push_back({Figure::Fig1, n});
    for (auto fig : {Figure::Fig2, Figure::Fig3, Figure::Fig4})
        for (int n = 2; n <= 7; ++n)
            out.push_back({fig, n});
    return out;
}

Scene load_preset(const PresetId& id)
{
    return load_scene_file(std::string(EXPOGRAPH_PRESET_DIR) + "/" + id.name() + ".json");
}

// 1. P_2 under Newton: pixels off the real axis converge to the root on their own side.
Verdict half_plane_basins()
{
    Scene s;
    s.poly = {PolyFamily::PartialSum, 2, {}};
    s.mode = BasinsMode{FamilyParams(2, 1.0)};
    s.viewport = Viewport{{-1.0, 0.0}, 4.0, 256, 256};
    s.tolerances.max_iter = 100;
    s.tolerances.eps_root = 1e-9;

    const auto t0 = Clock::now();
    const RenderResult r = render_scene(s, 1);
    const double wall = seconds_since(t0);

    const std::size_t upper = nearest_root(r.roots, C(-1, 1)).index;
    const std::size_t lower = nearest_root(r.roots, C(-1, -1)).index;
    std::size_t eligible = 0, converged = 0, wrong_side = 0;
    for (int row = 0; row < 256; ++row)
        for (int col = 0; col < 256; ++col) {
            const C z = pixel_to_complex(s.viewport, col, row);
            if (std::fabs(z.imag()) <= tol::kAxisBand)
                continue;
            ++eligible;
            const auto& px = r.grid.at(col, row);
            if (px.status != PixelStatus::Converged)
                continue;
            ++converged;
            const std::size_t want = z.imag() > 0 ? upper : lower;
            if (static_cast<std::size_t>(px.root_index) != want)
                ++wrong_side;
        }
    const double share = static_cast<double>(converged) / static_cast<double>(eligible);
    return {wrong_side == 0 && share >= tol::kMinConvergedShare && wall < tol::kHalfPlaneSeconds,
            format("converged %.4f%% of %zu off-axis pixels, %zu on the wrong side, %.3fs single worker", 100.0 * share, eligible,
                   wrong_side, wall)};
}

// 2. Basic-sequence assignment agrees with nearest-root cells away from cell edges.
Verdict voronoi_cells()
{
    std::mt19937_64 rng(20240611);
    std::string detail;
    bool pass = true;
    for (int n = 2; n <= 7; ++n) {
        Scene s = make_preset(Figure::Fig2, n);
        s.mode = VoronoiMode{tol::kVoronoiLength};
        const Polynomial p = s.poly.build();
        const RootSet rs = find_all_roots(p);
        SeedClassifier cls(p, s, rs);
        const double w = s.viewport.width;
        std::uniform_real_distribution<double> re(-w / 2, w / 2), im(-s.viewport.height() / 2, s.viewport.height() / 2);

        int sampled = 0, agree = 0;
        while (sampled < tol::kVoronoiSamples) {
            const C z = s.viewport.center + C(re(rng), im(rng));
            std::vector<double> d;
            for (const auto& r : rs.roots)
                d.push_back(std::abs(z - r));
            std::sort(d.begin(), d.end());
            if (d[1] - d[0] < tol::kVoronoiMargin * w)
                continue;
            ++sampled;
            const auto out = cls.classify(z);
            if (out.status == PixelStatus::Converged && static_cast<std::size_t>(out.root_index) == nearest_root(rs, z).index)
                ++agree;
        }
        const double share = static_cast<double>(agree) / sampled;
        pass = pass && share >= tol::kMinVoronoiAgreement;
        detail += format("%sn=%d %.1f%%", detail.empty() ? "" : ", ", n, 100.0 * share);
    }
    return {pass, "agreement " + detail};
}

// 3. Fitted order of B_2, B_3, B_4 at a simple root of P_2.
Verdict convergence_order()
{
    const order::P2Setup setup;
    bool pass = true;
    std::string detail;
    for (int m : {2, 3, 4}) {
        const auto errors = order::error_sequence(setup.coeffs, setup.theta, setup.z0, m, 12);
        const auto q = order::fitted_order(errors);
        const auto lr = order::log_ratio(errors);
        const bool ok = q && lr && std::fabs(*q - m) <= tol::kOrderTolerance && std::fabs(*lr - m) <= tol::kOrderTolerance;
        pass = pass && ok;
        detail += format("%sm=%d fit %.3f log-ratio %.3f", detail.empty() ? "" : ", ", m, q.value_or(-1.0), lr.value_or(-1.0));
    }
    return {pass, detail + " (100-digit arithmetic)"};
}

// 4. Root facts for P_n and S_n.
Verdict root_claims()
{
    bool pass = true;
    double worst_residual = 0.0, min_derivative = 1e300, worst_scaling = 0.0, max_szego = 0.0;
    bool moduli_ok = true;
    std::map<int, RootSet> partial;
    for (int n = 2; n <= 10; ++n) {
        const RootSet rs = find_all_roots(partial_sum(n));
        for (std::size_t i = 0; i < rs.size(); ++i) {
            worst_residual = std::max(worst_residual, rs.residuals[i]);
            min_derivative = std::min(min_derivative, rs.derivative_moduli[i]);
            const double mod = std::abs(rs.roots[i]);
            moduli_ok = moduli_ok && mod > 0.0 && mod < n;
        }
        partial[n] = rs;
    }
    for (int n = 2; n <= 7; ++n) {
        const RootSet rs = find_all_roots(szego_sum(n));
        std::vector<C> scaled;
        for (const auto& r : partial[n].roots)
            scaled.push_back(r / static_cast<double>(n));
        worst_scaling = std::max(worst_scaling, oracle::greedy_matched_distance(scaled, rs.roots));
        for (const auto& r : rs.roots)
            max_szego = std::max(max_szego, std::abs(r));
    }
    pass = worst_residual < tol::kRootResidual && moduli_ok && min_derivative > tol::kMinDerivative && max_szego < 1.0 &&
           worst_scaling <= tol::kScaling;
    return {pass, format("max residual %.2e, moduli in (0,n): %s, min |P_n'| %.3e, max |S_n root| %.4f, scaling gap %.2e",
                         worst_residual, moduli_ok ? "yes" : "no", min_derivative, max_szego, worst_scaling)};
}

// 5. Members 2 and 3 equal Newton and Halley; hand values of D_m.
Verdict closed_forms()
{
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> pick(2, 8);
    int compared = 0, singular = 0;
    double worst = 0.0;
    while (compared + singular < tol::kClosedFormPairs) {
        const auto p = partial_sum(pick(rng));
        const C z = oracle::random_in_disc(rng, 3.0);
        try {
            const C newton = newton_step(p, z);
            const C halley = halley_step(p, z);
            const C b2 = basic_family_step(p, z, FamilyParams(2));
            const C b3 = basic_family_step(p, z, FamilyParams(3));
            worst = std::max(worst, std::abs(b2 - newton) / std::max(1.0, std::abs(newton)));
            worst = std::max(worst, std::abs(b3 - halley) / std::max(1.0, std::abs(halley)));
            ++compared;
        } catch (const SingularDenominator&) {
            ++singular;
        }
    }
    const auto d = d_sequence(partial_sum(2), 0.0, 3);
    const std::array<C, 4> hand{1.0, 1.0, 0.5, 0.0};
    double hand_gap = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        hand_gap = std::max(hand_gap, std::abs(d.values[i] - hand[i]));
    return {worst < tol::kClosedFormRelative && hand_gap <= tol::kHandValues && compared > 0,
            format("%d pairs (%d singular skipped), worst relative gap %.2e; D_0..D_3 at (P_2, 0) gap %.1e", compared, singular,
                   worst, hand_gap)};
}

// 6. |B'_{2,alpha}(theta)| = |1 - alpha| < 1 at the roots of P_3.
Verdict alpha_attractivity()
{
    std::mt19937_64 rng(4242);
    const auto p3 = partial_sum(3);
    const RootSet rs = find_all_roots(p3);
    double worst = 0.0, max_modulus = 0.0;
    for (int t = 0; t < tol::kAlphaSamples; ++t) {
        const C alpha = 1.0 + oracle::random_in_disc(rng, 0.999);
        const FamilyParams params(2, alpha);
        for (const auto& theta : rs.roots) {
            const double fd = std::abs(oracle::central_difference([&](C z) { return basic_family_step(p3, z, params); }, theta));
            worst = std::max(worst, std::fabs(fd - std::abs(1.0 - alpha)));
            max_modulus = std::max(max_modulus, fd);
        }
    }
    return {worst <= tol::kAttractivity && max_modulus < 1.0,
            format("%d alphas x 3 roots, worst |fd - |1-alpha|| %.2e, largest |B'| %.4f", tol::kAlphaSamples, worst, max_modulus)};
}

struct PresetRun {
    std::string name;
    std::vector<std::uint8_t> ppm_one;
    std::vector<std::uint8_t> ppm_eight;
    double seconds;
    double singular_share;
};

std::map<std::string, std::string> read_golden(const std::string& path)
{
    std::map<std::string, std::string> out;
    std::ifstream in(path);
    std::string name, hash;
    while (in >> name >> hash)
        out[name] = hash;
    return out;
}

// 7. One- and eight-worker renders are byte-identical and match the recorded hashes.
Verdict determinism(const std::vector<PresetRun>& runs, bool write_golden)
{
    std::size_t identical = 0, matched = 0, missing = 0;
    std::vector<std::string> mismatched;
    if (write_golden) {
        std::ofstream out(EXPOGRAPH_GOLDEN_FILE);
        for (const auto& r : runs)
            out << r.name << ' ' << sha256_hex(r.ppm_one) << '\n';
    }
    const auto golden = read_golden(EXPOGRAPH_GOLDEN_FILE);
    for (const auto& r : runs) {
        identical += r.ppm_one == r.ppm_eight;
        const auto it = golden.find(r.name);
        if (it == golden.end())
            ++missing;
        else if (it->second == sha256_hex(r.ppm_one))
            ++matched;
        else
            mismatched.push_back(r.name);
    }
    std::string detail = format("%zu/%zu presets byte-identical across 1 and 8 workers, %zu/%zu match golden SHA-256", identical,
                                runs.size(), matched, runs.size());
    if (missing)
        detail += format(", %zu without a golden hash", missing);
    for (const auto& m : mismatched)
        detail += " [" + m + " differs]";
    return {identical == runs.size() && matched == runs.size(), detail};
}

// 8. Every preset renders with < 1% Singular pixels in under a minute in total.
Verdict smoke(const std::vector<PresetRun>& runs)
{
    double total = 0.0, worst = 0.0;
    std::string worst_name;
    for (const auto& r : runs) {
        total += r.seconds;
        if (r.singular_share >= worst) {
            worst = r.singular_share;
            worst_name = r.name;
        }
    }
    return {total < tol::kSmokeSeconds && worst < tol::kMaxSingularShare,
            format("%zu presets in %.2fs single worker, worst Singular share %.3f%% (%s)", runs.size(), total, 100.0 * worst,
                   worst_name.c_str())};
}

std::vector<PresetRun> render_presets()
{
    std::vector<PresetRun> runs;
    for (const auto& id : all_presets()) {
        const Scene s = load_preset(id);
        PresetRun run;
        run.name = id.name();
        const auto t0 = Clock::now();
        const RenderResult one = render_scene(s, 1);
        run.seconds = seconds_since(t0);
        run.ppm_one = encode_ppm(one.image);
        run.singular_share = one.fraction(PixelStatus::Singular);
        run.ppm_eight = encode_ppm(render_scene(s, 8).image);
        runs.push_back(std::move(run));
    }
    return runs;
}

} // namespace

int main(int argc, char** argv)
{
    const bool write_golden = argc > 1 && std::strcmp(argv[1], "--write-golden") == 0;

    struct Criterion {
        int id;
        const char* title;
        std::function<Verdict()> check;
    };
    std::vector<PresetRun> presets;
    auto presets_once = [&]() -> const std::vector<PresetRun>& {
        if (presets.empty())
            presets = render_presets();
        return presets;
    };

    const std::vector<Criterion> criteria{
        {1, "Newton half-plane basins of P_2", half_plane_basins},
        {2, "basic-sequence cells match nearest roots", voronoi_cells},
        {3, "order of convergence of B_2, B_3, B_4", convergence_order},
        {4, "roots of P_n and S_n", root_claims},
        {5, "closed-form Newton and Halley agreement", closed_forms},
        {6, "parametrized Newton keeps roots attractive", alpha_attractivity},
        {7, "deterministic preset renders", [&] { return determinism(presets_once(), write_golden); }},
        {8, "preset smoke suite", [&] { return smoke(presets_once()); }},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += !v.pass;
        std::printf("criterion %d %s: %s: %s\n", c.id, v.pass ? "PASS" : "FAIL", c.title, v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
