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

// Fixture loading, temporary directories and CLI invocation for tests.

#ifndef GLOSSFORGE_TESTS_SUPPORT_H_
#define GLOSSFORGE_TESTS_SUPPORT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "glossforge/concept_graph.h"
#include "glossforge/corpora.h"
#include "glossforge/linker.h"
#include "glossforge/title_index.h"

namespace glossforge::testing {

std::filesystem::path FixturePath(const std::string &relative);
std::string ReadFixture(const std::string &relative);

// The mini build: tests/fixtures/mini.
std::filesystem::path MiniDir();
TitleIndex MiniIndex();
OverrideTable MiniOverrides();
std::vector<CorpusEntry> MiniEntries();

struct MiniBuild {
  std::vector<CorpusEntry> entries;
  std::vector<MappingRecord> records;
  KnowledgeGraph unfiltered;
  KnowledgeGraph graph;  // after FilterNlab
};
MiniBuild BuildMini();

// Seed for randomized tests: $GLOSSFORGE_SEED or a fixed default.
uint64_t TestSeed();

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  const std::filesystem::path &path() const { return path_; }
  std::filesystem::path operator/(const std::string &name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the glossforge binary with `args` (each shell-quoted). GLOSSFORGE_CONFIG
// is set to `config_env`, or unset when that is empty.
CommandResult RunCli(const std::vector<std::string> &args,
                     const std::string &config_env = "");
std::filesystem::path CliPath();

// Copies the mini fixture directory into `dir`.
void CopyMini(const std::filesystem::path &dir);

struct PipelineRun {
  std::string error;     // empty on success
  std::string manifest;  // site/manifest.json
  std::string site_stdout;
  double seconds = 0;    // wall time of the three commands
};

// Copies the mini build into `dir` and runs `index build`, `graph build` and
// `site emit` through the CLI.
PipelineRun RunMiniPipeline(const std::filesystem::path &dir);

}  // namespace glossforge::testing

#endif  // GLOSSFORGE_TESTS_SUPPORT_H_
