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

// glossforge: the pipeline driver.
//
// Exit codes: 0 success, 1 content or usage error, 2 I/O or environment
// error.

#include <algorithm>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "glossforge/concept_graph.h"
#include "glossforge/config.h"
#include "glossforge/conllu.h"
#include "glossforge/corpora.h"
#include "glossforge/detex.h"
#include "glossforge/error.h"
#include "glossforge/linker.h"
#include "glossforge/review.h"
#include "glossforge/review_server.h"
#include "glossforge/site_emit.h"
#include "glossforge/term_extract.h"
#include "glossforge/title_index.h"
#include "glossforge/util.h"
#include "glossforge/wikidata_client.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace glossforge {
namespace {

void Warn(const std::vector<std::string> &warnings) {
  for (const std::string &w : warnings) std::cerr << "warning: " << w << "\n";
}

// Regular files in `dir` with one of `extensions`, sorted by name; a plain
// file path yields itself.
std::vector<fs::path> InputFiles(const fs::path &in, const std::vector<std::string> &extensions) {
  std::error_code ec;
  if (!fs::exists(in, ec)) {
    throw Error(ErrorCode::kUnreadableFile, "no such file or directory: " + in.string());
  }
  if (!fs::is_directory(in, ec)) return {in};
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(in)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = ToLowerAscii(entry.path().extension().string());
    if (std::find(extensions.begin(), extensions.end(), ext) != extensions.end()) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::optional<BuildConfig> MaybeConfig(const std::string &path) {
  if (path.empty()) return std::nullopt;
  return BuildConfig::Load(path);
}

const BuildConfig &NeedConfig(const std::optional<BuildConfig> &config, std::string_view what) {
  if (!config) {
    throw Error(ErrorCode::kConfigError,
                fmt::format("{} needs --config (or {})", what, kConfigEnvVar));
  }
  return *config;
}

fs::path PickPath(const std::string &flag, const std::optional<fs::path> &from_config,
                  std::string_view what) {
  if (!flag.empty()) return flag;
  if (from_config) return *from_config;
  throw Error(ErrorCode::kConfigError, fmt::format("no {} given", what));
}

// Later files win over earlier ones; a missing file counts as empty.
OverrideTable LoadOverrides(const std::vector<fs::path> &paths) {
  OverrideTable table;
  for (const fs::path &p : paths) {
    std::error_code ec;
    if (!fs::exists(p, ec)) {
      std::cerr << "warning: overrides file " << p.string() << " does not exist, skipped\n";
      continue;
    }
    OverrideTable part;
    try {
      part = OverrideTable::Parse(ReadFile(p));
    } catch (const Error &e) {
      throw Error(e.code(), p.string() + ": " + e.detail());
    }
    for (const auto &[key, row] : part.rows()) table.Set(key.first, key.second, row);
  }
  return table;
}

std::vector<CorpusEntry> IngestAll(const BuildConfig &config) {
  std::vector<std::future<std::vector<CorpusEntry>>> jobs;
  for (const CorpusSource &source : config.corpora) {
    jobs.push_back(std::async(config.workers > 1 ? std::launch::async : std::launch::deferred,
                              [&source] { return IngestCorpus(source); }));
  }
  std::vector<CorpusEntry> entries;
  for (auto &job : jobs) {
    std::vector<CorpusEntry> part = job.get();
    entries.insert(entries.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
  }
  return entries;
}

std::vector<std::pair<std::string, std::string>> TermPairs(
    const std::vector<CorpusEntry> &entries) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const CorpusEntry &e : entries) pairs.emplace_back(e.corpus, e.term);
  return pairs;
}

int CmdIndexBuild(const std::optional<BuildConfig> &config, const std::string &titles_flag,
                  const std::string &redirects_flag, const std::string &out_flag) {
  fs::path titles = PickPath(titles_flag, config ? config->titles : std::nullopt, "--titles");
  fs::path redirects =
      PickPath(redirects_flag, config ? config->redirects : std::nullopt, "--redirects");
  fs::path out = PickPath(out_flag, config ? config->index : std::nullopt, "--out");
  BuildResult result = BuildTitleIndex(ReadFile(titles), ReadFile(redirects));
  Warn(result.warnings);
  result.index.Save(out);
  const BuildMeta &meta = result.index.meta();
  std::cout << fmt::format("entries: {}\nredirects: {}\ndisambiguation: {}\n", meta.entry_count,
                           meta.redirect_count, meta.disambiguation_count);
  return 0;
}

int CmdDetex(const std::string &in, const std::string &out, bool lenient) {
  std::vector<fs::path> files = InputFiles(in, {".txt", ".tex", ".md"});
  fs::create_directories(out);
  for (const fs::path &file : files) {
    RawText raw{ReadFile(file), lenient ? MathMode::kLenient : MathMode::kStrict};
    std::string doc_id = file.stem().string();
    TokenizedText tokens;
    try {
      tokens = Tokenize(raw);
    } catch (const Error &e) {
      throw Error(e.code(), file.string() + ": " + e.detail());
    }
    for (const std::string &w : tokens.warnings) {
      std::cerr << "warning: " << file.string() << ": " << w << "\n";
    }
    Document doc = EmitSkeleton(doc_id, tokens);
    WriteFileAtomic(fs::path(out) / (doc_id + ".conllu"), SerializeConllu(doc));
  }
  std::cout << fmt::format("documents: {}\n", files.size());
  return 0;
}

int CmdExtract(const std::string &in, long long min_count, long long max_terms,
               const std::string &out, const std::string &table_out,
               const std::string &stop_file) {
  std::vector<fs::path> files = InputFiles(in, {".conllu"});
  std::vector<Document> docs;
  for (const fs::path &file : files) {
    try {
      docs.push_back(ParseConllu(ReadFile(file), file.stem().string()));
    } catch (const Error &e) {
      throw Error(e.code(), file.string() + ": " + e.detail());
    }
  }
  StopLemmas stop = stop_file.empty() ? StopLemmas::Default() : StopLemmas::Parse(ReadFile(stop_file));
  FrequencyTable table = Accumulate(docs, stop);
  std::vector<FrequencyTable::Row> rows = SelectTerms(table, min_count, max_terms);
  WriteFileAtomic(out, FormatTermTsv(rows));
  if (!table_out.empty()) WriteFileAtomic(table_out, FormatTermTsv(table.SortedRows()));
  std::cout << fmt::format("documents: {}\nsentences: {}\ndistinct candidates: {}\nselected: {}\n",
                           docs.size(), table.total_sentences(), table.entries().size(),
                           rows.size());
  return 0;
}

int CmdLink(const std::optional<BuildConfig> &config, const std::string &terms,
            const std::string &corpus, const std::string &index_flag,
            const std::vector<std::string> &override_flags, const std::string &out,
            int workers_flag) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::optional<BuildConfig> terms_config;
  if (ToLowerAscii(fs::path(terms).extension().string()) == ".json") {
    terms_config = BuildConfig::Load(terms);
    pairs = TermPairs(IngestAll(*terms_config));
  } else {
    const std::string text = ReadFile(terms);
    for (std::string_view line : SplitLines(text)) {
      if (Trim(line).empty()) continue;
      pairs.emplace_back(corpus, std::string(Trim(line.substr(0, line.find('\t')))));
    }
  }
  const BuildConfig *cfg = terms_config ? &*terms_config : (config ? &*config : nullptr);
  fs::path index_path = PickPath(index_flag, cfg ? cfg->index : std::nullopt, "--index");
  std::vector<fs::path> override_paths;
  for (const std::string &o : override_flags) override_paths.emplace_back(o);
  if (override_paths.empty() && cfg) override_paths = cfg->overrides;
  unsigned workers = workers_flag >= 0 ? static_cast<unsigned>(workers_flag)
                                       : (cfg ? cfg->workers : 1u);

  TitleIndex index = TitleIndex::Load(index_path);
  OverrideTable overrides = LoadOverrides(override_paths);
  LinkedCorpus linked = LinkCorpus(pairs, index, overrides, workers);
  Warn(linked.warnings);
  WriteFileAtomic(out, FormatMappingsJsonl(linked.records));

  nlohmann::ordered_json stats;
  stats["total"] = linked.stats.total;
  stats["mapped"] = linked.stats.mapped;
  stats["by_strategy"] = linked.stats.by_strategy;
  nlohmann::ordered_json by_corpus = nlohmann::ordered_json::object();
  for (const auto &[name, c] : linked.stats.by_corpus) {
    by_corpus[name] = {{"total", c.total}, {"mapped", c.mapped}};
  }
  stats["by_corpus"] = by_corpus;
  std::cerr << stats.dump(2) << "\n";
  return 0;
}

int CmdGraphBuild(const std::optional<BuildConfig> &config, const std::string &index_flag,
                  const std::vector<std::string> &override_flags, const std::string &out,
                  const std::string &mappings_out) {
  const BuildConfig &cfg = NeedConfig(config, "graph build");
  fs::path index_path = PickPath(index_flag, cfg.index, "--index");
  std::vector<fs::path> override_paths(override_flags.begin(), override_flags.end());
  if (override_paths.empty()) override_paths = cfg.overrides;

  TitleIndex index = TitleIndex::Load(index_path);
  OverrideTable overrides = LoadOverrides(override_paths);
  std::vector<CorpusEntry> entries = IngestAll(cfg);
  LinkedCorpus linked = LinkCorpus(TermPairs(entries), index, overrides, cfg.workers);
  Warn(linked.warnings);
  AssembleResult assembled = Assemble(entries, linked.records);
  Warn(assembled.warnings);
  KnowledgeGraph graph = FilterNlab(assembled.graph);
  graph.Validate();

  if (!mappings_out.empty()) WriteFileAtomic(mappings_out, FormatMappingsJsonl(linked.records));
  WriteFileAtomic(out, graph.ToJson());
  std::cout << StatsToJson(graph.stats());
  return 0;
}

int CmdSiteEmit(const std::optional<BuildConfig> &config, const std::string &graph_path,
                const std::string &out) {
  SiteOptions options = config ? config->site : SiteOptions{};
  KnowledgeGraph graph = KnowledgeGraph::Load(graph_path);
  std::vector<ManifestEntry> manifest = EmitSite(graph, out, options);
  std::cout << fmt::format("files: {}\nrows: {}\n", manifest.size() + 1, graph.size());
  return 0;
}

ReviewServer *g_server = nullptr;

extern "C" void StopServer(int) {
  if (g_server != nullptr) g_server->Stop();
}

int CmdReviewServe(const std::optional<BuildConfig> &config, const std::string &graph_path,
                   const std::string &mappings_path, int port_flag, bool offline,
                   const std::string &host, const std::string &decisions_flag,
                   const std::string &static_flag, const std::string &export_flag) {
  KnowledgeGraph graph = KnowledgeGraph::Load(graph_path);
  std::vector<MappingRecord> records;
  try {
    records = ParseMappingsJsonl(ReadFile(mappings_path));
  } catch (const Error &e) {
    if (e.code() == ErrorCode::kUnreadableFile) throw;
    throw Error(e.code(), mappings_path + ": " + e.detail());
  }
  ReviewSettings settings = config ? config->review : ReviewSettings{};
  fs::path decisions = decisions_flag.empty()
                           ? settings.decisions.value_or(fs::path(graph_path).parent_path() /
                                                         "decisions.jsonl")
                           : fs::path(decisions_flag);

  ReviewService service(CollectReviewItems(records, &graph), decisions);
  if (!export_flag.empty()) {
    service.set_export_path(export_flag);
  } else if (settings.export_path) {
    service.set_export_path(*settings.export_path);
  }

  WikidataClient::Options wd;
  wd.cache_path = settings.wikidata.cache.empty() ? decisions.parent_path() / "wikidata_cache.json"
                                                  : settings.wikidata.cache;
  wd.ttl = std::chrono::seconds(settings.wikidata.ttl_seconds);
  wd.offline = offline || !settings.wikidata.enabled;
  wd.requests_per_second = settings.wikidata.requests_per_second;
  wd.endpoint = settings.wikidata.endpoint;
  WikidataClient client(wd, MakeHttpFetcher());
  Warn(client.TakeWarnings());
  service.set_enricher(&client);

  ReviewServer::Options options;
  options.host = host;
  options.port = port_flag >= 0 ? port_flag : settings.port;
  if (!static_flag.empty()) {
    options.static_dir = fs::path(static_flag);
  } else {
    options.static_dir = settings.static_dir;
  }
  if (options.static_dir && !fs::is_directory(*options.static_dir)) {
    std::cerr << "warning: UI directory " << options.static_dir->string()
              << " not found; serving the API only\n";
    options.static_dir.reset();
  }
  ReviewServer server(service, options);
  int port = server.Bind();
  g_server = &server;
  std::signal(SIGINT, StopServer);
  std::signal(SIGTERM, StopServer);
  std::cerr << fmt::format("review service on http://{}:{}/ ({} items, {} queued)\n", host, port,
                           CollectReviewItems(records, &graph).size(), service.Queue().size());
  server.Run();
  g_server = nullptr;
  return 0;
}

int CmdReviewExport(const std::string &decisions, const std::string &out) {
  std::vector<Decision> log;
  std::vector<std::string_view> lines;
  std::string text = ReadFile(decisions);
  lines = SplitLines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    try {
      log.push_back(DecisionFromJson(lines[i]));
    } catch (const Error &e) {
      throw Error(e.code(), fmt::format("{} line {}: {}", decisions, i + 1, e.detail()));
    }
  }
  OverrideTable table = ReplayDecisions(log);
  WriteFileAtomic(out, table.Format());
  std::cout << fmt::format("decisions: {}\noverrides: {}\n", log.size(), table.size());
  return 0;
}

int CmdStats(const std::string &graph_path) {
  std::cout << StatsToJson(KnowledgeGraph::Load(graph_path).stats());
  return 0;
}

int Run(int argc, char **argv) {
  CLI::App app{"glossforge: build a linked glossary of mathematical concepts"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "JSON build configuration")
      ->envname(std::string(kConfigEnvVar));

  // index build
  CLI::App *index_cmd = app.add_subcommand("index", "Wikipedia title index");
  index_cmd->require_subcommand(1);
  CLI::App *index_build = index_cmd->add_subcommand("build", "Build a .qidx title index");
  std::string titles, redirects, index_out;
  index_build->add_option("--titles", titles, "titles.tsv: title, qid, flags (D = disambiguation)");
  index_build->add_option("--redirects", redirects, "redirects.tsv: from_title, to_title");
  index_build->add_option("--out", index_out, "Output index file (.qidx)");

  // detex
  CLI::App *detex = app.add_subcommand("detex", "Tokenize raw text into CoNLL-U skeletons");
  std::string detex_in, detex_out;
  bool lenient = false;
  detex->add_option("--in", detex_in, "Text file, or directory of .txt/.tex/.md files")
      ->required();
  detex->add_option("--out", detex_out, "Output directory for .conllu files")->required();
  detex->add_flag("--lenient", lenient, "Skip unbalanced $ with a warning instead of failing");

  // extract
  CLI::App *extract = app.add_subcommand("extract", "Extract candidate terms from CoNLL-U");
  std::string extract_in, extract_out, table_out, stop_file;
  long long min_count = kDefaultMinCount, max_terms = kDefaultMaxTerms;
  extract->add_option("--in", extract_in, "A .conllu file or a directory of them")->required();
  extract->add_option("--min-count", min_count, "Minimum occurrences to keep a term")
      ->capture_default_str();
  extract->add_option("--max-terms", max_terms, "Maximum number of terms kept")
      ->capture_default_str();
  extract->add_option("--out", extract_out, "Output terms.tsv")->required();
  extract->add_option("--table", table_out, "Also write the full frequency table here");
  extract->add_option("--stop-lemmas", stop_file, "Stop lemma list replacing the built-in one");

  // link
  CLI::App *link = app.add_subcommand("link", "Map terms to Wikidata ids");
  std::string link_terms, link_corpus = "terms", link_index, link_out;
  std::vector<std::string> link_overrides;
  int link_workers = -1;
  link->add_option("--terms", link_terms,
                   "Term list (first column per line), or a build.json naming corpora")
      ->required();
  link->add_option("--corpus", link_corpus, "Corpus name recorded for a plain term list")
      ->capture_default_str();
  link->add_option("--index", link_index, "Title index (.qidx)");
  link->add_option("--overrides", link_overrides, "overrides.tsv (repeatable, later wins)");
  link->add_option("--out", link_out, "Output mappings.jsonl")->required();
  link->add_option("--workers", link_workers, "Linker threads (0 = all cores)");

  // graph build
  CLI::App *graph_cmd = app.add_subcommand("graph", "Concept graph");
  graph_cmd->require_subcommand(1);
  CLI::App *graph_build = graph_cmd->add_subcommand("build", "Ingest, link, merge and filter");
  std::string graph_index, graph_out, graph_mappings;
  std::vector<std::string> graph_overrides;
  graph_build->add_option("--index", graph_index, "Title index, overriding the config");
  graph_build->add_option("--overrides", graph_overrides,
                          "overrides.tsv, overriding the config (repeatable)");
  graph_build->add_option("--out", graph_out, "Output graph.json")->required();
  graph_build->add_option("--mappings", graph_mappings, "Also write mappings.jsonl here");

  // site emit
  CLI::App *site_cmd = app.add_subcommand("site", "Static website");
  site_cmd->require_subcommand(1);
  CLI::App *site_emit = site_cmd->add_subcommand("emit", "Write the static site");
  std::string site_graph, site_out;
  site_emit->add_option("--graph", site_graph, "graph.json")->required();
  site_emit->add_option("--out", site_out, "Output directory (replaced atomically)")->required();

  // review
  CLI::App *review_cmd = app.add_subcommand("review", "Curation service");
  review_cmd->require_subcommand(1);
  CLI::App *review_serve = review_cmd->add_subcommand("serve", "Serve the review API and UI");
  std::string review_graph, review_mappings, review_host = "127.0.0.1", review_decisions,
                                             review_static, review_export;
  int review_port = -1;
  bool review_offline = false;
  review_serve->add_option("--graph", review_graph, "graph.json")->required();
  review_serve->add_option("--mappings", review_mappings, "mappings.jsonl")->required();
  review_serve->add_option("--port", review_port, "TCP port (default 7117, 0 = any free port)");
  review_serve->add_option("--host", review_host, "Address to bind")->capture_default_str();
  review_serve->add_flag("--offline", review_offline, "Serve Wikidata labels from cache only");
  review_serve->add_option("--decisions", review_decisions, "Decision log (decisions.jsonl)");
  review_serve->add_option("--static", review_static, "Directory with the built UI bundle");
  review_serve->add_option("--export", review_export,
                           "File POST /api/export/overrides writes to");
  CLI::App *review_export_cmd =
      review_cmd->add_subcommand("export", "Write overrides.tsv from a decision log");
  std::string export_decisions, export_out;
  review_export_cmd->add_option("--decisions", export_decisions, "decisions.jsonl")->required();
  review_export_cmd->add_option("--out", export_out, "Output overrides.tsv")->required();

  // stats
  CLI::App *stats = app.add_subcommand("stats", "Print graph statistics as JSON");
  std::string stats_graph;
  stats->add_option("--graph", stats_graph, "graph.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    std::optional<BuildConfig> config = MaybeConfig(config_path);
    if (*index_build) return CmdIndexBuild(config, titles, redirects, index_out);
    if (*detex) return CmdDetex(detex_in, detex_out, lenient);
    if (*extract) {
      return CmdExtract(extract_in, min_count, max_terms, extract_out, table_out, stop_file);
    }
    if (*link) {
      return CmdLink(config, link_terms, link_corpus, link_index, link_overrides, link_out,
                     link_workers);
    }
    if (*graph_build) {
      return CmdGraphBuild(config, graph_index, graph_overrides, graph_out, graph_mappings);
    }
    if (*site_emit) return CmdSiteEmit(config, site_graph, site_out);
    if (*review_serve) {
      return CmdReviewServe(config, review_graph, review_mappings, review_port, review_offline,
                            review_host, review_decisions, review_static, review_export);
    }
    if (*review_export_cmd) return CmdReviewExport(export_decisions, export_out);
    if (*stats) return CmdStats(stats_graph);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return IsEnvironmentError(e.code()) ? 2 : 1;
  } catch (const fs::filesystem_error &e) {
    std::cerr << "error: IoFailure: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace
}  // namespace glossforge

int main(int argc, char **argv) { return glossforge::Run(argc, argv); }
