#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace httplib {
class Server;
}

namespace rvss {

struct ServiceOptions {
  std::string host = "127.0.0.1";
  int port = 8315;
  // Calculator assets served under "/" when the directory exists.
  std::optional<std::filesystem::path> ui_dir;
  // Value for Access-Control-Allow-Origin; unset means same-origin only.
  std::optional<std::string> cors_origin;
  std::size_t max_records = 10000;
};

struct Address {
  std::string host;
  int port = 0;
};

/// "host:port", ":port" or "port". nullopt on malformed input.
std::optional<Address> parse_address(std::string_view text);

/// Defaults overridden by SERVE_ADDR when set and well formed.
ServiceOptions options_from_env();

/// Stateless JSON API over the engine:
///   POST /api/v1/score, GET /api/v1/catalog/{cvss3|rvss1},
///   POST /api/v1/compare, GET /healthz
class ScoreService {
public:
  explicit ScoreService(ServiceOptions options);
  ~ScoreService();
  ScoreService(const ScoreService&) = delete;
  ScoreService& operator=(const ScoreService&) = delete;

  /// Binds to options.host:options.port (port 0 picks a free one) and
  /// returns the bound port, or -1 on failure.
  int bind();
  /// Blocks serving requests until stop().
  bool listen();
  void stop();
  void wait_until_ready() const;

  const ServiceOptions& options() const noexcept { return options_; }

private:
  void install_routes();

  ServiceOptions options_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace rvss
