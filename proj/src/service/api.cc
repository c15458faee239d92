// Copyright 2026 The Moralmap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "moralmap/service/api.h"

#include <set>

#include "httplib.h"
#include "json.hpp"
#include "moralmap/common/error.h"
#include "moralmap/common/numbers.h"
#include "moralmap/service/payloads.h"

namespace moralmap {
namespace {

using nlohmann::json;

struct HttpError {
  int status;
  std::string message;
};

ApiResponse Json(int status, const json& body, std::uint64_t version) {
  return {status, body.dump(), version};
}

ApiResponse ErrorResponse(int status, const std::string& message, std::uint64_t version) {
  json body = {{"error", message}};
  if (version > 0) body["version"] = version;
  return Json(status, body, version);
}

void CheckParams(const ApiRequest& request, std::initializer_list<const char*> allowed) {
  const std::set<std::string> names(allowed.begin(), allowed.end());
  for (const auto& [key, value] : request.params) {
    if (!names.count(key)) throw HttpError{400, "unknown parameter '" + key + "'"};
  }
}

std::string Param(const ApiRequest& request, const std::string& key,
                  const std::string& fallback = {}) {
  auto it = request.params.find(key);
  return it == request.params.end() ? fallback : it->second;
}

std::size_t CountParam(const ApiRequest& request, const std::string& key,
                       std::size_t fallback) {
  auto it = request.params.find(key);
  if (it == request.params.end()) return fallback;
  const auto v = ParseInt(it->second);
  if (!v || *v < 0) {
    throw HttpError{400, key + " must be a non-negative integer, got '" + it->second + "'"};
  }
  return static_cast<std::size_t>(*v);
}

TweetFilter FilterParam(const Snapshot& s, const std::string& text) {
  try {
    return ParseFilter(text, s.data.taxonomy);
  } catch (const Error& e) {
    throw HttpError{400, e.what()};
  }
}

bool FullPrecision(const ApiRequest& request) {
  const std::string p = Param(request, "precision", "6");
  if (p == "full") return true;
  if (p == "6") return false;
  throw HttpError{400, "precision must be '6' or 'full'"};
}

json Route(const Snapshot& s, const ApiRequest& r) {
  const auto method_is = [&](const char* m) {
    if (r.method != m) throw HttpError{405, "method " + r.method + " not allowed on " + r.path};
  };
  if (r.path == "/api/meta") {
    method_is("GET");
    CheckParams(r, {});
    return Envelope(s, {}, MetaData(s));
  }
  if (r.path == "/api/summary") {
    method_is("GET");
    CheckParams(r, {"filter"});
    const TweetFilter f = FilterParam(s, Param(r, "filter"));
    return Envelope(s, f, SummaryData(s, f));
  }
  if (r.path == "/api/timeline") {
    method_is("GET");
    CheckParams(r, {"filter", "width"});
    const TweetFilter f = FilterParam(s, Param(r, "filter"));
    const std::size_t width =
        CountParam(r, "width", static_cast<std::size_t>(s.data.bin_width_days));
    if (width < 1 || width > 100000) throw HttpError{400, "width must be in 1..100000"};
    return Envelope(s, f, TimelineData(s, static_cast<int>(width), f));
  }
  if (r.path == "/api/map") {
    method_is("GET");
    CheckParams(r, {"filter", "feature", "demographic"});
    const TweetFilter f = FilterParam(s, Param(r, "filter"));
    const std::string name = Param(r, "feature", "f1");
    const auto feature = ParseFeature(name);
    if (!feature) throw HttpError{400, "unknown feature '" + name + "'"};
    const std::string demographic = Param(r, "demographic", "vote_margin");
    const auto resolved = s.table.Resolve(demographic);
    if (!resolved || ParseFeature(*resolved)) {
      throw HttpError{400, "unknown demographic '" + demographic + "'"};
    }
    return Envelope(s, f, MapData(s, *feature, demographic, f));
  }
  if (r.path == "/api/tweets") {
    method_is("GET");
    CheckParams(r, {"filter", "limit", "offset"});
    const TweetFilter f = FilterParam(s, Param(r, "filter"));
    const std::size_t limit = CountParam(r, "limit", kDefaultPageSize);
    if (limit > kMaxPageSize) {
      throw HttpError{400, "limit must be at most " + std::to_string(kMaxPageSize)};
    }
    return Envelope(s, f, TweetsData(s, f, limit, CountParam(r, "offset", 0)));
  }
  if (r.path == "/api/counties") {
    method_is("GET");
    CheckParams(r, {});
    return Envelope(s, {}, CountiesData(s));
  }
  if (r.path == "/api/correlation") {
    method_is("GET");
    CheckParams(r, {"filter", "x", "y", "precision"});
    const TweetFilter f = FilterParam(s, Param(r, "filter"));
    const std::string x = Param(r, "x");
    const std::string y = Param(r, "y");
    if (x.empty() || y.empty()) throw HttpError{400, "x and y are required"};
    const bool full = FullPrecision(r);
    try {
      return Envelope(s, f, CorrelationData(s, x, y, f, full));
    } catch (const InferenceError& e) {
      throw HttpError{422, e.what()};
    }
  }
  if (r.path == "/api/inference") {
    method_is("POST");
    CheckParams(r, {"precision"});
    const bool full = FullPrecision(r);
    json body;
    try {
      body = json::parse(r.body);
    } catch (const json::exception& e) {
      throw HttpError{400, std::string("request body is not JSON: ") + e.what()};
    }
    if (!body.is_object()) throw HttpError{400, "request body must be a JSON object"};
    TweetFilter f;
    if (body.contains("filter")) {
      if (!body["filter"].is_string()) throw HttpError{400, "filter must be a string"};
      f = FilterParam(s, body["filter"].get<std::string>());
    }
    try {
      const ModelSpec spec = ModelSpec::FromJson(body);
      return Envelope(s, f, InferenceData(s, spec, f, full));
    } catch (const Error& e) {
      throw HttpError{422, e.what()};
    }
  }
  throw HttpError{404, "no such endpoint: " + r.path};
}

}  // namespace

ApiResponse Respond(const std::shared_ptr<const Snapshot>& snapshot, const ApiRequest& request) {
  if (!snapshot) return ErrorResponse(503, "no snapshot loaded", 0);
  const std::uint64_t v = snapshot->version;
  try {
    return Json(200, Route(*snapshot, request), v);
  } catch (const HttpError& e) {
    return ErrorResponse(e.status, e.message, v);
  } catch (const Error& e) {
    return ErrorResponse(e.kind() == ErrorKind::kRuntime ? 500 : 400, e.what(), v);
  } catch (const std::exception& e) {
    return ErrorResponse(500, e.what(), v);
  }
}

bool IsLoopback(const std::string& addr) {
  return addr == "127.0.0.1" || addr == "::1" || addr == "::ffff:127.0.0.1" ||
         addr.rfind("127.", 0) == 0;
}

ApiResponse ApiService::Handle(const ApiRequest& request) {
  if (request.path == "/admin/reload") return Reload(request);
  return Respond(store_.current(), request);
}

ApiResponse ApiService::Reload(const ApiRequest& request) {
  const auto before = store_.current();
  const std::uint64_t old_version = before ? before->version : 0;
  if (request.method != "POST") {
    return ErrorResponse(405, "method " + request.method + " not allowed on /admin/reload",
                         old_version);
  }
  if (!IsLoopback(request.remote_addr)) {
    return ErrorResponse(403, "reload is only accepted from loopback", old_version);
  }
  std::string dir = before ? before->source_dir : std::string();
  if (!request.body.empty()) {
    try {
      const json body = json::parse(request.body);
      if (body.contains("dataset")) dir = body.at("dataset").get<std::string>();
    } catch (const json::exception& e) {
      return ErrorResponse(400, std::string("request body is not JSON: ") + e.what(),
                           old_version);
    }
  }
  if (dir.empty()) return ErrorResponse(400, "no dataset directory given", old_version);
  try {
    const std::uint64_t v = store_.Load(dir);
    return Json(200, {{"version", v}, {"previous", old_version}, {"dataset", dir}}, v);
  } catch (const std::exception& e) {
    const auto still = store_.current();
    return ErrorResponse(409, std::string("reload rejected, previous snapshot retained: ") +
                                  e.what(),
                         still ? still->version : 0);
  }
}

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(SnapshotStore& store, std::string host, int port)
    : impl_(std::make_unique<Impl>()), service_(store), host_(std::move(host)), port_(port) {
  const auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    ApiRequest request;
    request.method = req.method;
    request.path = req.path;
    // Query string only; httplib also folds form-encoded bodies into params.
    httplib::Params query;
    const auto q = req.target.find('?');
    if (q != std::string::npos) httplib::detail::parse_query_text(req.target.substr(q + 1), query);
    for (const auto& [key, value] : query) request.params[key] = value;
    request.body = req.body;
    request.remote_addr = req.remote_addr;
    const ApiResponse response = service_.Handle(request);
    res.status = response.status;
    if (response.version > 0) {
      res.set_header("X-Snapshot-Version", std::to_string(response.version));
    }
    res.set_content(response.body, "application/json");
  };
  impl_->server.Get(".*", handler);
  impl_->server.Post(".*", handler);
  // SO_REUSEADDR only, so a port held by another server fails to bind.
  impl_->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof yes);
  });
}

HttpServer::~HttpServer() {
  Stop();
  if (thread_.joinable()) thread_.join();
}

void HttpServer::Start() {
  if (port_ == 0) {
    port_ = impl_->server.bind_to_any_port(host_);
    if (port_ <= 0) throw IoError("cannot bind " + host_);
  } else if (!impl_->server.bind_to_port(host_, port_)) {
    throw IoError("cannot bind " + host_ + ":" + std::to_string(port_));
  }
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void HttpServer::Wait() {
  if (thread_.joinable()) thread_.join();
}

void HttpServer::Stop() { impl_->server.stop(); }

}  // namespace moralmap
