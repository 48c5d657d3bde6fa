#include "expograph/service.hpp"

#include "expograph/errors.hpp"
#include "expograph/orbit.hpp"
#include "expograph/pipeline.hpp"

#include <algorithm>
#include <csignal>
#include <cstdio>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace expograph {

using nlohmann::json;

namespace {

HttpReply error_reply(int status, const char* code, const std::string& message)
{
    return {status, "application/json", json{{"error", code}, {"message", message}}.dump()};
}

HttpReply json_reply(const json& doc)
{
    return {200, "application/json", doc.dump()};
}

json parse_body(const std::string& body)
{
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        throw SceneError(SceneError::Kind::Malformed, std::string("invalid JSON: ") + e.what());
    }
}

void check_tile(const Scene& scene)
{
    if (scene.viewport.cols > kMaxTileSide || scene.viewport.rows > kMaxTileSide)
        throw SceneError(SceneError::Kind::Constraint,
                         "tile exceeds " + std::to_string(kMaxTileSide) + "x" + std::to_string(kMaxTileSide));
}

// Shared exception-to-status mapping for every endpoint.
template <class Fn>
HttpReply guarded(Fn&& fn)
{
    try {
        return fn();
    } catch (const SceneError& e) {
        if (e.kind() == SceneError::Kind::Malformed)
            return error_reply(400, "invalid_body", e.what());
        return error_reply(422, "constraint_violation", e.what());
    } catch (const NoConvergence& e) {
        return error_reply(500, "no_convergence", e.what());
    } catch (const std::exception& e) {
        return error_reply(500, "internal", e.what());
    }
}

} // namespace

Service::Service(ServiceOptions options) : options_(std::move(options)) {}

HttpReply Service::handle_render(const std::string& body) const
{
    return guarded([&] {
        const Scene scene = scene_from_json(parse_body(body));
        check_tile(scene);
        const RenderResult result = render_scene(scene, options_.workers);
        const auto png = encode_png(result.image);
        return HttpReply{200, "image/png", std::string(png.begin(), png.end())};
    });
}

HttpReply Service::handle_roots(const std::optional<std::string>& kind, const std::optional<std::string>& n) const
{
    return guarded([&] {
        if (!kind)
            return error_reply(400, "invalid_body", "query parameter 'kind' is required");
        if (!n)
            return error_reply(400, "invalid_body", "query parameter 'n' is required");
        PolyKind k;
        if (*kind == "partial_sum")
            k = PolyKind::PartialSum;
        else if (*kind == "szego")
            k = PolyKind::Szego;
        else
            return error_reply(400, "invalid_body", "kind must be partial_sum or szego");
        std::size_t used = 0;
        long value = 0;
        try {
            value = std::stol(*n, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != n->size())
            return error_reply(400, "invalid_body", "n must be an integer");
        if (value < 1 || value > kMaxDegree)
            return error_reply(422, "constraint_violation", "n must lie in [1, " + std::to_string(kMaxDegree) + "]");
        return json_reply(roots_document(k, static_cast<int>(value)));
    });
}

HttpReply Service::handle_orbit(const std::string& body) const
{
    return guarded([&] {
        const json doc = parse_body(body);
        if (!doc.is_object())
            throw SceneError(SceneError::Kind::Malformed, "orbit request must be an object");
        for (const auto& item : doc.items())
            if (item.key() != "scene" && item.key() != "z0" && item.key() != "steps")
                throw SceneError(SceneError::Kind::Malformed, "unknown key '" + item.key() + "' in orbit request");
        if (!doc.contains("scene") || !doc.contains("z0"))
            throw SceneError(SceneError::Kind::Malformed, "orbit request needs 'scene' and 'z0'");
        const Scene scene = scene_from_json(doc["scene"], false);
        const ComplexValue z0 = complex_from_json(doc["z0"], "z0");
        int steps = 0;
        if (doc.contains("steps")) {
            if (!doc["steps"].is_number_integer())
                throw SceneError(SceneError::Kind::Malformed, "steps must be an integer");
            const auto s = doc["steps"].get<long long>();
            if (s < 1 || s > 10000)
                throw SceneError(SceneError::Kind::Constraint, "steps must lie in [1, 10000]");
            steps = static_cast<int>(s);
        }
        if (!is_finite(z0))
            throw SceneError(SceneError::Kind::Constraint, "z0 must be finite");
        const RootSet rs = find_all_roots(scene.poly.build());
        return json_reply(to_json(trace_orbit(scene, rs, z0, steps)));
    });
}

std::optional<std::string> Service::cors_origin(const std::string& request_origin) const
{
    if (options_.dev_mode)
        return std::string("*");
    if (request_origin.empty())
        return std::nullopt;
    const auto& list = options_.allowed_origins;
    if (std::find(list.begin(), list.end(), request_origin) != list.end())
        return request_origin;
    return std::nullopt;
}

void Service::mount(httplib::Server& server) const
{
    auto send = [](httplib::Response& res, const HttpReply& reply) {
        res.status = reply.status;
        res.set_content(reply.body, reply.content_type);
    };

    server.set_post_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
        if (auto origin = cors_origin(req.get_header_value("Origin"))) {
            res.set_header("Access-Control-Allow-Origin", *origin);
            res.set_header("Vary", "Origin");
        }
    });
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.status = 204;
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
    server.Post("/render", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, handle_render(req.body));
    });
    server.Post("/orbit", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, handle_orbit(req.body));
    });
    server.Get("/roots", [this, send](const httplib::Request& req, httplib::Response& res) {
        auto param = [&](const char* key) -> std::optional<std::string> {
            if (!req.has_param(key))
                return std::nullopt;
            return req.get_param_value(key);
        };
        send(res, handle_roots(param("kind"), param("n")));
    });
}

int run_service(const ServiceOptions& options)
{
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    const Service service(options);
    httplib::Server server;
    service.mount(server);
    if (!server.bind_to_port(options.host, options.port)) {
        std::fprintf(stderr, "error: bind_failed: cannot bind %s:%d\n", options.host.c_str(), options.port);
        return 1;
    }
    std::fprintf(stderr, "listening on %s:%d\n", options.host.c_str(), options.port);
    std::thread listener([&server] { server.listen_after_bind(); });

    int received = 0;
    sigwait(&signals, &received);
    server.stop();
    listener.join();
    return 0;
}

} // namespace expograph
