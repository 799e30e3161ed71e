// Copyright 2026 The GlossForge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "glossforge/review_server.h"

#include <fmt/core.h>

#include "glossforge/error.h"
#include "httplib.h"

namespace glossforge {

struct ReviewServer::Impl {
  ReviewService &service;
  Options options;
  httplib::Server server;

  Impl(ReviewService &s, Options o) : service(s), options(std::move(o)) {}

  void Dispatch(const httplib::Request &req, httplib::Response &res) {
    std::map<std::string, std::string> query;
    for (const auto &[key, value] : req.params) query.emplace(key, value);
    HttpResult result = service.Handle(req.method, req.path, query, req.body);
    res.status = result.status;
    res.set_content(result.body, result.content_type);
  }
};

ReviewServer::ReviewServer(ReviewService &service, Options options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {
  auto handler = [this](const httplib::Request &req, httplib::Response &res) {
    impl_->Dispatch(req, res);
  };
  // SO_REUSEADDR only: with SO_REUSEPORT a second server would share the
  // port instead of failing to bind.
  impl_->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void *>(&yes), sizeof(yes));
  });
  const char *api = R"(/api/.*)";
  impl_->server.Get(api, handler);
  impl_->server.Post(api, handler);
  impl_->server.Put(api, handler);
  impl_->server.Delete(api, handler);
  if (impl_->options.static_dir) {
    impl_->server.set_mount_point("/", impl_->options.static_dir->string());
  }
}

ReviewServer::~ReviewServer() { Stop(); }

int ReviewServer::Bind() {
  int port = impl_->options.port;
  if (port == 0) {
    port = impl_->server.bind_to_any_port(impl_->options.host);
    if (port < 0) throw Error(ErrorCode::kIoFailure, "cannot bind a port");
  } else if (!impl_->server.bind_to_port(impl_->options.host, port)) {
    throw Error(ErrorCode::kIoFailure,
                fmt::format("cannot bind {}:{}", impl_->options.host, port));
  }
  return port;
}

void ReviewServer::Run() { impl_->server.listen_after_bind(); }

void ReviewServer::Stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace glossforge
