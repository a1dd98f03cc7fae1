#pragma once

// JSON-over-HTTP front end for the engines.
//
//   GET  /diagrams                      list
//   GET  /diagrams/{name}[?format=json|dsl|dot]
//   GET  /diagrams/{name}/skeleton
//   GET  /diagrams/{name}/loops
//   PUT  /diagrams/{name}               body: DSL text or JSON diagram
//   POST /propagate                     {diagram, shock:{var,dir}, target?, freeze?}
//   POST /grade                         {reference, sheet}
//   GET  /multiplier?kind=g|t&mpc=&delta=&rounds=
//   POST /submissions                   {sheet, timestamp?}
//   GET  /submissions?skeleton=
//   GET  /stats?skeleton=[&all_attempts=true]
//
// Errors are {code, message, span?, diagnostics?} with a 4xx status.

#include <map>
#include <memory>
#include <string>

#include "causal_econ/workspace.hpp"

namespace causal_econ {

struct HttpRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

class Service {
 public:
  explicit Service(Workspace& workspace) : workspace_(workspace) {}

  /// Routes one request. Never throws.
  HttpResponse handle(const HttpRequest& request) const;

  Workspace& workspace() const noexcept { return workspace_; }

 private:
  Workspace& workspace_;
};

/// Socket front end. Requests are handled concurrently on a thread pool.
class HttpServer {
 public:
  explicit HttpServer(const Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Port 0 picks a free port. Returns the bound port; throws io_error.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void listen();
  /// Returns once listen() is accepting connections.
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace causal_econ
