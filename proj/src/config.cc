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

#include "glossforge/config.h"

#include <set>

#include <fmt/core.h>

#include "glossforge/error.h"
#include "glossforge/util.h"
#include "json.hpp"

namespace glossforge {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string &what) { throw Error(ErrorCode::kConfigError, what); }

void CheckKeys(const json &obj, std::string_view where,
               std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) Fail(fmt::format("{} must be an object", where));
  for (const auto &[key, value] : obj.items()) {
    bool ok = false;
    for (std::string_view a : allowed) ok = ok || key == a;
    if (!ok) Fail(fmt::format("unknown key '{}' in {}", key, where));
  }
}

std::string GetString(const json &obj, const char *key, std::string_view where) {
  const json &v = obj.at(key);
  if (!v.is_string()) Fail(fmt::format("{}.{} must be a string", where, key));
  return v.get<std::string>();
}

std::filesystem::path Resolve(const std::filesystem::path &base, const std::string &p) {
  if (p.empty()) Fail("empty path in config");
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::optional<std::filesystem::path> OptionalPath(const json &obj, const char *key,
                                                  std::string_view where,
                                                  const std::filesystem::path &base) {
  if (!obj.contains(key)) return std::nullopt;
  return Resolve(base, GetString(obj, key, where));
}

}  // namespace

bool IsValidCorpusName(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (!((c >= 'a' && c <= 'z') || IsAsciiDigit(c) || c == '_')) return false;
  }
  return true;
}

BuildConfig BuildConfig::Parse(std::string_view json_text, const std::filesystem::path &base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception &e) {
    Fail(std::string("invalid JSON: ") + e.what());
  }
  CheckKeys(root, "config",
            {"index", "titles", "redirects", "overrides", "workers", "corpora", "site", "review"});

  BuildConfig config;
  config.base_dir = base_dir;
  config.index = OptionalPath(root, "index", "config", base_dir);
  config.titles = OptionalPath(root, "titles", "config", base_dir);
  config.redirects = OptionalPath(root, "redirects", "config", base_dir);

  if (root.contains("overrides")) {
    const json &o = root["overrides"];
    if (o.is_string()) {
      config.overrides.push_back(Resolve(base_dir, o.get<std::string>()));
    } else if (o.is_array()) {
      for (const json &item : o) {
        if (!item.is_string()) Fail("overrides entries must be strings");
        config.overrides.push_back(Resolve(base_dir, item.get<std::string>()));
      }
    } else {
      Fail("overrides must be a string or a list of strings");
    }
  }

  if (root.contains("workers")) {
    const json &w = root["workers"];
    if (!w.is_number_unsigned()) Fail("workers must be a non-negative integer");
    config.workers = w.get<unsigned>();
  }

  if (!root.contains("corpora") || !root["corpora"].is_array()) {
    Fail("config needs a \"corpora\" list");
  }
  std::set<std::string> names;
  for (const json &jc : root["corpora"]) {
    CheckKeys(jc, "corpora[]", {"name", "shape", "path"});
    if (!jc.contains("name") || !jc.contains("path")) Fail("each corpus needs name and path");
    CorpusSource source;
    source.name = GetString(jc, "name", "corpora[]");
    if (!IsValidCorpusName(source.name)) {
      Fail(fmt::format("corpus name '{}' must match [a-z0-9_]+", source.name));
    }
    if (!names.insert(source.name).second) {
      Fail(fmt::format("corpus '{}' is declared twice", source.name));
    }
    std::optional<PayloadShape> builtin = BuiltinShape(source.name);
    if (jc.contains("shape")) {
      std::string shape_name = GetString(jc, "shape", "corpora[]");
      std::optional<PayloadShape> shape = ParsePayloadShape(shape_name);
      if (!shape) Fail(fmt::format("unknown shape '{}'", shape_name));
      if (builtin && *builtin != *shape) {
        Fail(fmt::format("corpus '{}' always has shape {}", source.name,
                         PayloadShapeName(*builtin)));
      }
      source.shape = *shape;
    } else if (builtin) {
      source.shape = *builtin;
    } else {
      Fail(fmt::format("custom corpus '{}' needs a shape", source.name));
    }
    source.path = Resolve(base_dir, GetString(jc, "path", "corpora[]"));
    config.corpora.push_back(std::move(source));
  }

  if (root.contains("site")) {
    const json &site = root["site"];
    CheckKeys(site, "site", {"base_url", "external"});
    if (site.contains("base_url")) config.site.base_url = GetString(site, "base_url", "site");
    if (site.contains("external")) {
      const json &ext = site["external"];
      CheckKeys(ext, "site.external",
                {"wikidata_url_template", "nlab_url_template", "mulima_url_template"});
      if (ext.contains("wikidata_url_template")) {
        config.site.wikidata_url_template =
            GetString(ext, "wikidata_url_template", "site.external");
      }
      if (ext.contains("nlab_url_template")) {
        config.site.nlab_url_template = GetString(ext, "nlab_url_template", "site.external");
      }
      if (ext.contains("mulima_url_template")) {
        config.site.mulima_url_template =
            GetString(ext, "mulima_url_template", "site.external");
      }
    }
  }
  config.site.workers = config.workers;

  if (root.contains("review")) {
    const json &review = root["review"];
    CheckKeys(review, "review", {"port", "decisions", "export", "static_dir", "wikidata"});
    if (review.contains("port")) {
      const json &p = review["port"];
      if (!p.is_number_integer() || p.get<long long>() < 0 || p.get<long long>() > 65535) {
        Fail("review.port must be an integer in [0, 65535]");
      }
      config.review.port = p.get<int>();
    }
    config.review.decisions = OptionalPath(review, "decisions", "review", base_dir);
    config.review.export_path = OptionalPath(review, "export", "review", base_dir);
    config.review.static_dir = OptionalPath(review, "static_dir", "review", base_dir);
    if (review.contains("wikidata")) {
      const json &wd = review["wikidata"];
      CheckKeys(wd, "review.wikidata",
                {"enabled", "cache", "ttl_seconds", "requests_per_second", "endpoint"});
      WikidataSettings &s = config.review.wikidata;
      if (wd.contains("enabled")) {
        if (!wd["enabled"].is_boolean()) Fail("review.wikidata.enabled must be a boolean");
        s.enabled = wd["enabled"].get<bool>();
      }
      if (auto cache = OptionalPath(wd, "cache", "review.wikidata", base_dir)) s.cache = *cache;
      if (wd.contains("ttl_seconds")) {
        if (!wd["ttl_seconds"].is_number_integer() || wd["ttl_seconds"].get<long long>() < 0) {
          Fail("review.wikidata.ttl_seconds must be a non-negative integer");
        }
        s.ttl_seconds = wd["ttl_seconds"].get<long long>();
      }
      if (wd.contains("requests_per_second")) {
        if (!wd["requests_per_second"].is_number() ||
            wd["requests_per_second"].get<double>() <= 0) {
          Fail("review.wikidata.requests_per_second must be positive");
        }
        s.requests_per_second = wd["requests_per_second"].get<double>();
      }
      if (wd.contains("endpoint")) s.endpoint = GetString(wd, "endpoint", "review.wikidata");
    }
  }
  return config;
}

BuildConfig BuildConfig::Load(const std::filesystem::path &path) {
  std::string text = ReadFile(path);
  try {
    return Parse(text, path.parent_path().empty() ? std::filesystem::path(".")
                                                  : path.parent_path());
  } catch (const Error &e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

std::vector<CorpusEntry> IngestCorpus(const CorpusSource &source) {
  switch (source.shape) {
    case PayloadShape::kDefinitionPage: return IngestChicago(source.path, source.name);
    case PayloadShape::kProverLink: return IngestFrenchLean(source.path, source.name);
    case PayloadShape::kTranslations: return IngestMulima(source.path, source.name);
    case PayloadShape::kWikiPage: return IngestNlab(source.path, source.name);
  }
  return {};
}

}  // namespace glossforge
