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

#include "support.h"

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <stdexcept>

#include "glossforge/config.h"
#include "glossforge/util.h"

namespace glossforge::testing {

namespace fs = std::filesystem;

fs::path FixturePath(const std::string &relative) {
  return fs::path(GLOSSFORGE_FIXTURES) / relative;
}

std::string ReadFixture(const std::string &relative) {
  return ReadFile(FixturePath(relative));
}

fs::path MiniDir() { return FixturePath("mini"); }

TitleIndex MiniIndex() {
  return BuildTitleIndex(ReadFixture("mini/titles.tsv"), ReadFixture("mini/redirects.tsv"))
      .index;
}

OverrideTable MiniOverrides() { return OverrideTable::Parse(ReadFixture("mini/overrides.tsv")); }

std::vector<CorpusEntry> MiniEntries() {
  BuildConfig config = BuildConfig::Load(MiniDir() / "build.json");
  std::vector<CorpusEntry> entries;
  for (const CorpusSource &source : config.corpora) {
    std::vector<CorpusEntry> part = IngestCorpus(source);
    entries.insert(entries.end(), part.begin(), part.end());
  }
  return entries;
}

MiniBuild BuildMini() {
  MiniBuild build;
  build.entries = MiniEntries();
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const CorpusEntry &e : build.entries) pairs.emplace_back(e.corpus, e.term);
  build.records = LinkCorpus(pairs, MiniIndex(), MiniOverrides(), 1).records;
  build.unfiltered = Assemble(build.entries, build.records).graph;
  build.graph = FilterNlab(build.unfiltered);
  return build;
}

uint64_t TestSeed() {
  if (const char *env = std::getenv("GLOSSFORGE_SEED")) {
    if (auto v = ParseNonNegative(env)) return static_cast<uint64_t>(*v);
  }
  return 20260415;
}

TempDir::TempDir() {
  std::string templ = (fs::temp_directory_path() / "glossforge-test-XXXXXX").string();
  if (mkdtemp(templ.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
  path_ = templ;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

namespace {

std::string ShellQuote(const std::string &s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

}  // namespace

fs::path CliPath() { return GLOSSFORGE_CLI; }

CommandResult RunCli(const std::vector<std::string> &args, const std::string &config_env) {
  TempDir scratch;
  std::string cmd = "GLOSSFORGE_CONFIG=" + ShellQuote(config_env) + " ";
  if (config_env.empty()) cmd = "env -u GLOSSFORGE_CONFIG ";
  cmd += ShellQuote(CliPath().string());
  for (const std::string &a : args) cmd += " " + ShellQuote(a);
  cmd += " >" + ShellQuote((scratch / "out").string());
  cmd += " 2>" + ShellQuote((scratch / "err").string());
  int status = std::system(cmd.c_str());
  CommandResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
  result.out = ReadFile(scratch / "out");
  result.err = ReadFile(scratch / "err");
  return result;
}

void CopyMini(const fs::path &dir) {
  fs::create_directories(dir);
  fs::copy(MiniDir(), dir, fs::copy_options::recursive | fs::copy_options::overwrite_existing);
}

PipelineRun RunMiniPipeline(const fs::path &dir) {
  PipelineRun run;
  CopyMini(dir);
  const std::string config = (dir / "build.json").string();
  const std::vector<std::vector<std::string>> steps = {
      {"--config", config, "index", "build"},
      {"--config", config, "graph", "build", "--out", (dir / "graph.json").string()},
      {"--config", config, "site", "emit", "--graph", (dir / "graph.json").string(), "--out",
       (dir / "site").string()},
  };
  auto start = std::chrono::steady_clock::now();
  for (const std::vector<std::string> &args : steps) {
    CommandResult r = RunCli(args);
    if (r.exit_code != 0) {
      run.error = args[2] + " exited " + std::to_string(r.exit_code) + ": " + r.err;
      return run;
    }
    run.site_stdout = r.out;
  }
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  run.manifest = ReadFile(dir / "site" / "manifest.json");
  return run;
}

}  // namespace glossforge::testing
