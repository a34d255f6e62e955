#ifndef KAPPA_API_HPP
#define KAPPA_API_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <string>

#include <json.hpp>

namespace kappa::api {

struct Limits {
  std::size_t max_vertices = 500;
  std::size_t max_samples = 200000;
  std::size_t max_sweep_settings = 32;
};

struct Response {
  int status = 200;
  nlohmann::json body;
};

// Handlers are pure functions of the request body.
Response analyze(const std::string& body, const Limits& limits = {});
Response dismantle(const std::string& body, const Limits& limits = {});
Response volume_sweep(const std::string& body, const Limits& limits = {});

/// http(s)://localhost, 127.0.0.1 or [::1], any port.
bool is_loopback_origin(const std::string& origin);

struct ServerOptions {
  std::string bind = "127.0.0.1";
  int port = 7474;
  Limits limits;
  std::string static_dir;  // served at / when non-empty
};

class Server {
 public:
  explicit Server(ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds the socket; port 0 picks a free port. Returns the bound port or -1.
  int bind();
  /// Blocks until stop().
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace kappa::api

#endif  // KAPPA_API_HPP
