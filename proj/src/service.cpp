#include "rvss/service.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>

#include <httplib.h>

#include "rvss/comparator.hpp"
#include "rvss/errors.hpp"
#include "rvss/report.hpp"

namespace rvss {

namespace {

constexpr const char* kJson = "application/json";
constexpr std::size_t kMaxPayloadBytes = 64 * 1024 * 1024;

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, int status, std::string_view code,
                const std::string& detail, const std::optional<std::string>& token = std::nullopt) {
  Json body{{"status", status}, {"code", code}, {"detail", detail}};
  if (token) body["offendingToken"] = *token;
  send_json(res, status, body);
}

void send_vector_error(httplib::Response& res, const VectorError& e) {
  send_error(res, 400, to_string(e.code()), e.what(), e.token());
}

/// Registers 405 handlers for every method except `allowed` on `pattern`.
void method_not_allowed(httplib::Server& server, const std::string& pattern,
                        std::string_view allowed) {
  const auto reject = [allowed = std::string(allowed)](const httplib::Request&,
                                                       httplib::Response& res) {
    res.set_header("Allow", allowed);
    send_error(res, 405, "MethodNotAllowed", "use " + allowed);
  };
  if (allowed != "GET") server.Get(pattern, reject);
  if (allowed != "POST") server.Post(pattern, reject);
  server.Put(pattern, reject);
  server.Patch(pattern, reject);
  server.Delete(pattern, reject);
}

void handle_score(const httplib::Request& req, httplib::Response& res) {
  const auto body = Json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    return send_error(res, 400, "BadRequest", "body must be a JSON object");
  }
  const auto vector = body.find("vector");
  if (vector == body.end() || !vector->is_string()) {
    return send_error(res, 400, "BadRequest", "field 'vector' (string) is required");
  }
  bool with_subscores = false;
  if (const auto flag = body.find("subscores"); flag != body.end()) {
    if (!flag->is_boolean()) return send_error(res, 400, "BadRequest", "'subscores' must be boolean");
    with_subscores = flag->get<bool>();
  }
  try {
    send_json(res, 200, score_report(parse(vector->get<std::string>()), with_subscores));
  } catch (const VectorError& e) {
    send_vector_error(res, e);
  }
}

void handle_catalog(const httplib::Request& req, httplib::Response& res) {
  const auto scheme = scheme_from_short_name(req.matches[1].str());
  if (!scheme) {
    return send_error(res, 404, "UnknownScheme",
                      "unknown scheme '" + req.matches[1].str() + "' (expected cvss3 or rvss1)");
  }
  send_json(res, 200, catalog_export(*scheme));
}

void send_comparison(httplib::Response& res, std::span<const VulnRecord> records,
                     std::vector<Diagnostic> diagnostics) {
  auto result = compare(records);
  Json rows = Json::array();
  for (const auto& row : result.rows) rows.push_back(row_to_json(row));
  diagnostics.insert(diagnostics.end(), result.diagnostics.begin(), result.diagnostics.end());
  send_json(res, 200, Json{{"rows", std::move(rows)}, {"diagnostics", diagnostics_to_json(diagnostics)}});
}

void handle_compare(const httplib::Request& req, httplib::Response& res, std::size_t limit) {
  if (req.is_multipart_form_data()) {
    if (req.files.empty()) return send_error(res, 400, "BadRequest", "no corpus file uploaded");
    const auto file = req.has_file("corpus") ? req.get_file_value("corpus") : req.files.begin()->second;
    auto format = input_format_from_path(file.filename);
    if (!format) {
      format = file.content_type == "text/csv" ? InputFormat::Csv : InputFormat::JsonLines;
    }
    std::istringstream in(file.content);
    LoadResult loaded;
    try {
      loaded = load_records(in, *format);
    } catch (const EmptyCorpusError& e) {
      Json body{{"status", 400}, {"code", "EmptyCorpus"}, {"detail", e.what()},
                {"diagnostics", diagnostics_to_json(e.diagnostics())}};
      return send_json(res, 400, body);
    }
    if (loaded.records.size() > limit) {
      return send_error(res, 413, "TooManyRecords",
                        "at most " + std::to_string(limit) + " records per request");
    }
    return send_comparison(res, loaded.records, std::move(loaded.diagnostics));
  }

  const auto body = Json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object() || !body.contains("records") ||
      !body["records"].is_array()) {
    return send_error(res, 400, "BadRequest", "body must be {\"records\": [...]}");
  }
  const auto& items = body["records"];
  if (items.size() > limit) {
    return send_error(res, 413, "TooManyRecords",
                      "at most " + std::to_string(limit) + " records per request");
  }
  std::vector<VulnRecord> records;
  std::vector<Diagnostic> diagnostics;
  for (std::size_t i = 0; i < items.size(); ++i) {
    VulnRecord record;
    if (auto d = record_from_json(items[i], i + 1, record)) {
      diagnostics.push_back(std::move(*d));
    } else {
      records.push_back(std::move(record));
    }
  }
  send_comparison(res, records, std::move(diagnostics));
}

}  // namespace

std::optional<Address> parse_address(std::string_view text) {
  Address out{"127.0.0.1", 0};
  std::string_view port_text = text;
  if (const auto colon = text.rfind(':'); colon != std::string_view::npos) {
    if (colon > 0) out.host = std::string(text.substr(0, colon));
    port_text = text.substr(colon + 1);
  }
  const auto* end = port_text.data() + port_text.size();
  const auto [ptr, ec] = std::from_chars(port_text.data(), end, out.port);
  if (port_text.empty() || ec != std::errc{} || ptr != end || out.port < 0 || out.port > 65535) {
    return std::nullopt;
  }
  return out;
}

ServiceOptions options_from_env() {
  ServiceOptions options;
  if (const char* addr = std::getenv("SERVE_ADDR")) {
    if (auto parsed = parse_address(addr)) {
      options.host = parsed->host;
      options.port = parsed->port;
    }
  }
  return options;
}

ScoreService::ScoreService(ServiceOptions options)
    : options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  install_routes();
}

ScoreService::~ScoreService() { stop(); }

void ScoreService::install_routes() {
  auto& s = *server_;
  s.set_payload_max_length(kMaxPayloadBytes);
  s.set_tcp_nodelay(true);

  s.Post("/api/v1/score", handle_score);
  method_not_allowed(s, "/api/v1/score", "POST");

  s.Get(R"(/api/v1/catalog/([^/]+))", handle_catalog);
  method_not_allowed(s, R"(/api/v1/catalog/([^/]+))", "GET");

  s.Post("/api/v1/compare", [limit = options_.max_records](const auto& req, auto& res) {
    handle_compare(req, res, limit);
  });
  method_not_allowed(s, "/api/v1/compare", "POST");

  s.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    Json schemes = Json::array();
    for (auto scheme : kAllSchemes) schemes.push_back(scheme_id(scheme));
    send_json(res, 200, Json{{"status", "ok"}, {"schemes", std::move(schemes)}});
  });
  method_not_allowed(s, "/healthz", "GET");

  const bool has_ui = options_.ui_dir && std::filesystem::is_directory(*options_.ui_dir) &&
                      s.set_mount_point("/", options_.ui_dir->string());
  if (!has_ui) {
    s.Get("/", [](const httplib::Request&, httplib::Response& res) {
      send_error(res, 404, "NoUserInterface",
                 "calculator assets are not installed; the API is served under /api/v1");
    });
  }

  if (options_.cors_origin) {
    s.set_post_routing_handler([origin = *options_.cors_origin](const auto&, auto& res) {
      res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    });
    s.Options(".*", [](const auto&, auto& res) { res.status = 204; });
  }

  s.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
    if (res.status == 404) {
      send_error(res, 404, "NotFound", "no route for " + req.method + " " + req.path);
      return httplib::Server::HandlerResponse::Handled;
    }
    send_error(res, res.status, "HttpError", httplib::status_message(res.status));
    return httplib::Server::HandlerResponse::Handled;
  });

  s.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
    send_error(res, 500, "InternalError", "internal error");
  });
}

int ScoreService::bind() {
  if (options_.port == 0) return server_->bind_to_any_port(options_.host);
  return server_->bind_to_port(options_.host, options_.port) ? options_.port : -1;
}

bool ScoreService::listen() { return server_->listen_after_bind(); }

void ScoreService::stop() {
  if (server_ && server_->is_running()) server_->stop();
}

void ScoreService::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace rvss
