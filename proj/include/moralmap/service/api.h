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

// Transport-independent request routing, plus the HTTP/1.1 binding.

#ifndef MORALMAP_SERVICE_API_H_
#define MORALMAP_SERVICE_API_H_

#include <map>
#include <memory>
#include <string>
#include <thread>

#include "moralmap/service/snapshot.h"

namespace moralmap {

struct ApiRequest {
  std::string method = "GET";
  std::string path;
  std::map<std::string, std::string> params;
  std::string body;
  std::string remote_addr = "127.0.0.1";
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::uint64_t version = 0;  // 0 when no snapshot was involved
};

// Routes read requests against a single snapshot. Pure: the same snapshot
// and request always produce the same response.
ApiResponse Respond(const std::shared_ptr<const Snapshot>& snapshot, const ApiRequest& request);

class ApiService {
 public:
  explicit ApiService(SnapshotStore& store) : store_(store) {}

  // Read endpoints plus POST /admin/reload. The snapshot is fetched once
  // per request.
  ApiResponse Handle(const ApiRequest& request);

 private:
  ApiResponse Reload(const ApiRequest& request);

  SnapshotStore& store_;
};

bool IsLoopback(const std::string& addr);

class HttpServer {
 public:
  HttpServer(SnapshotStore& store, std::string host, int port);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds and starts serving on a background thread. Port 0 picks a free
  // port. Throws IoError when the address cannot be bound.
  void Start();
  // Blocks until Stop() is called from another thread or a signal handler.
  void Wait();
  void Stop();
  int port() const { return port_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  ApiService service_;
  std::string host_;
  int port_;
  std::thread thread_;
};

}  // namespace moralmap

#endif  // MORALMAP_SERVICE_API_H_
