#pragma once

#include <optional>
#include <string>
#include <vector>

namespace httplib {
class Server;
}

namespace expograph {

inline constexpr int kDefaultServicePort = 8650;
inline constexpr int kMaxTileSide = 1024;

struct ServiceOptions {
    std::string host = "0.0.0.0";
    int port = kDefaultServicePort;
    int workers = 0;
    /// Dev mode answers CORS requests from any origin.
    bool dev_mode = false;
    std::vector<std::string> allowed_origins;
};

struct HttpReply {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

/// Stateless HTTP facade: every request carries its whole scene.
///   POST /render  scene JSON (viewport <= 1024x1024)  -> image/png
///   GET  /roots?kind=partial_sum|szego&n=N           -> roots + claims report
///   POST /orbit   {"scene": {...}, "z0": [re, im], "steps": N} -> orbit JSON
/// Errors are JSON {"error": code, "message": text} with 400 for malformed
/// requests, 422 for constraint violations and 500 otherwise.
class Service {
public:
    explicit Service(ServiceOptions options = {});

    HttpReply handle_render(const std::string& body) const;
    HttpReply handle_roots(const std::optional<std::string>& kind, const std::optional<std::string>& n) const;
    HttpReply handle_orbit(const std::string& body) const;

    /// Value for Access-Control-Allow-Origin, if the origin is allowed.
    std::optional<std::string> cors_origin(const std::string& request_origin) const;

    void mount(httplib::Server& server) const;

    const ServiceOptions& options() const noexcept { return options_; }

private:
    ServiceOptions options_;
};

/// Binds and serves until SIGINT or SIGTERM. Returns a process exit status.
int run_service(const ServiceOptions& options);

} // namespace expograph
