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

// HTTP front for ReviewService: /api/* goes to the service, everything else
// is served from the static UI directory when one is configured.

#ifndef GLOSSFORGE_REVIEW_SERVER_H_
#define GLOSSFORGE_REVIEW_SERVER_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "glossforge/review.h"

namespace glossforge {

class ReviewServer {
 public:
  struct Options {
    std::string host = "127.0.0.1";
    int port = 7117;  // 0 picks a free port
    std::optional<std::filesystem::path> static_dir;
  };

  ReviewServer(ReviewService &service, Options options);
  ~ReviewServer();

  // Binds the socket; returns the bound port. Throws kIoFailure.
  int Bind();
  // Serves until Stop(). Call Bind() first.
  void Run();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace glossforge

#endif  // GLOSSFORGE_REVIEW_SERVER_H_
