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

#include "glossforge/site_emit.h"

#include <algorithm>
#include <future>
#include <system_error>
#include <thread>

#include <fmt/core.h>

#include "glossforge/error.h"
#include "glossforge/util.h"
#include "json.hpp"

namespace glossforge {
namespace {

constexpr std::string_view kStyleCss = R"(body {
  font-family: sans-serif;
  margin: 2em auto;
  max-width: 70em;
  padding: 0 1em;
}
table {
  border-collapse: collapse;
  width: 100%;
}
th, td {
  border-bottom: 1px solid #ccc;
  padding: 0.3em 0.6em;
  text-align: left;
  vertical-align: top;
}
#filter {
  margin-bottom: 1em;
  padding: 0.3em;
  width: 20em;
}
.dangling-link {
  color: #a00;
  text-decoration: underline dotted;
}
.math {
  font-family: serif;
}
)";

constexpr std::string_view kFilterJs = R"((function () {
  var box = document.getElementById("filter");
  if (!box) return;
  var rows = document.querySelectorAll("#concepts tr.concept");
  box.addEventListener("input", function () {
    var needle = box.value.trim().toLowerCase();
    for (var i = 0; i < rows.length; i++) {
      var hay = rows[i].textContent.toLowerCase();
      rows[i].style.display = hay.indexOf(needle) >= 0 ? "" : "none";
    }
  });
})();
)";

bool IsExternalTarget(std::string_view target) {
  return target.find("://") != std::string_view::npos ||
         target.substr(0, 7) == "mailto:";
}

std::string RenderInline(std::string_view s, const LinkResolver *resolve) {
  std::string out;
  size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == '$') {
      const bool display = i + 1 < s.size() && s[i + 1] == '$';
      const std::string_view delim = display ? "$$" : "$";
      size_t close = s.find(delim, i + delim.size());
      if (close != std::string_view::npos) {
        size_t end = close + delim.size();
        out += "<span class=\"math\">" + HtmlEscape(s.substr(i, end - i)) + "</span>";
        i = end;
        continue;
      }
      out += '$';
      ++i;
      continue;
    }
    if (c == '`') {
      size_t close = s.find('`', i + 1);
      if (close != std::string_view::npos) {
        out += "<code>" + HtmlEscape(s.substr(i + 1, close - i - 1)) + "</code>";
        i = close + 1;
        continue;
      }
    }
    if (c == '[' && resolve != nullptr) {
      size_t rb = s.find(']', i + 1);
      if (rb != std::string_view::npos && rb + 1 < s.size() && s[rb + 1] == '(') {
        size_t rp = s.find(')', rb + 2);
        if (rp != std::string_view::npos) {
          std::string_view text = s.substr(i + 1, rb - i - 1);
          std::string_view target = Trim(s.substr(rb + 2, rp - rb - 2));
          size_t space = target.find_first_of(" \t");
          if (space != std::string_view::npos) target = target.substr(0, space);
          std::string inner = RenderInline(text, nullptr);
          if (std::optional<std::string> href = (*resolve)(target)) {
            out += "<a href=\"" + HtmlEscape(*href) + "\">" + inner + "</a>";
          } else {
            out += "<span class=\"dangling-link\" title=\"" + HtmlEscape(target) + "\">" +
                   inner + "</span>";
          }
          i = rp + 1;
          continue;
        }
      }
    }
    if (c == '*') {
      const bool strong = i + 1 < s.size() && s[i + 1] == '*';
      const std::string_view delim = strong ? "**" : "*";
      size_t start = i + delim.size();
      size_t close = s.find(delim, start);
      if (close != std::string_view::npos && close > start && !IsAsciiSpace(s[start])) {
        std::string_view tag = strong ? "strong" : "em";
        out += fmt::format("<{}>{}</{}>", tag, RenderInline(s.substr(start, close - start), resolve),
                           tag);
        i = close + delim.size();
        continue;
      }
    }
    out += HtmlEscape(s.substr(i, 1));
    ++i;
  }
  return out;
}

// Heading level for "### text", 0 if the line is not a heading.
int HeadingLevel(std::string_view line) {
  size_t n = 0;
  while (n < line.size() && line[n] == '#') ++n;
  if (n == 0 || n > 6) return 0;
  if (n < line.size() && line[n] != ' ' && line[n] != '\t') return 0;
  return static_cast<int>(n);
}

enum class ListKind { kNone, kUnordered, kOrdered };

// Length of a list marker ("- ", "3. ") at the start of `line`, 0 if none.
size_t ListMarker(std::string_view line, ListKind *kind) {
  if (line.size() >= 2 && (line[0] == '-' || line[0] == '*' || line[0] == '+') &&
      (line[1] == ' ' || line[1] == '\t')) {
    *kind = ListKind::kUnordered;
    return 2;
  }
  size_t d = 0;
  while (d < line.size() && d < 9 && IsAsciiDigit(line[d])) ++d;
  if (d > 0 && d + 1 < line.size() && (line[d] == '.' || line[d] == ')') &&
      (line[d + 1] == ' ' || line[d + 1] == '\t')) {
    *kind = ListKind::kOrdered;
    return d + 2;
  }
  return 0;
}

std::string FileName(std::string_view path) {
  size_t slash = path.rfind('/');
  return std::string(slash == std::string_view::npos ? path : path.substr(slash + 1));
}

std::string PageHead(std::string_view title, std::string_view asset_prefix,
                     const SiteOptions &options, bool with_filter) {
  std::string out = "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
  out += "<title>" + HtmlEscape(title) + "</title>\n";
  out += fmt::format("<link rel=\"stylesheet\" href=\"{}assets/style.css\">\n", asset_prefix);
  if (with_filter) {
    out += fmt::format("<script src=\"{}assets/filter.js\" defer></script>\n", asset_prefix);
  }
  if (!options.base_url.empty()) {
    out += "<meta name=\"base-url\" content=\"" + HtmlEscape(options.base_url) + "\">\n";
  }
  out += "</head>\n<body>\n";
  return out;
}

std::string Link(std::string_view href, std::string_view text) {
  return "<a href=\"" + HtmlEscape(href) + "\">" + HtmlEscape(text) + "</a>";
}

std::string JoinCell(const std::vector<std::string> &parts) { return Join(parts, "<br>"); }

struct PageJob {
  std::string path;
  const Concept *concept_ = nullptr;
  const ConceptPayload *payload = nullptr;
};

std::string RenderPage(const PageJob &job, const std::map<std::string, std::string> &pages_by_slug,
                       const SiteOptions &options) {
  const auto &page = std::get<DefinitionPage>(job.payload->payload);
  LinkResolver resolve = [&](std::string_view target) -> std::optional<std::string> {
    if (IsExternalTarget(target) || (!target.empty() && target.front() == '#')) {
      return std::string(target);
    }
    std::optional<std::string> slug = SlugFromLinkTarget(target);
    if (!slug) return std::nullopt;
    auto it = pages_by_slug.find(*slug);
    if (it == pages_by_slug.end()) return std::nullopt;
    return FileName(it->second);
  };

  std::string out = PageHead(job.payload->term, "../", options, false);
  out += "<nav><a href=\"../database.html\">All concepts</a></nav>\n";
  out += "<article class=\"definition\">\n";
  std::string_view first = page.body.substr(0, page.body.find('\n'));
  if (HeadingLevel(first) != 1) out += "<h1>" + HtmlEscape(job.payload->term) + "</h1>\n";
  out += RenderMarkdown(page.body, resolve);
  out += "</article>\n";
  if (job.concept_->key.is_qid()) {
    const std::string &qid = job.concept_->key.str();
    out += "<footer>Wikidata: " +
           Link(ExpandUrlTemplate(options.wikidata_url_template, "qid", qid), qid) +
           "</footer>\n";
  }
  out += "</body>\n</html>\n";
  return out;
}

}  // namespace

std::string ExpandUrlTemplate(std::string_view tmpl, std::string_view name,
                              std::string_view value) {
  const std::string placeholder = "{" + std::string(name) + "}";
  const std::string encoded = UrlEncodeComponent(value);
  std::string out;
  size_t pos = 0;
  while (true) {
    size_t hit = tmpl.find(placeholder, pos);
    if (hit == std::string_view::npos) break;
    out.append(tmpl.substr(pos, hit - pos));
    out += encoded;
    pos = hit + placeholder.size();
  }
  out.append(tmpl.substr(pos));
  return out;
}

std::string RenderMarkdown(std::string_view markdown, const LinkResolver &resolve) {
  std::string out;
  std::vector<std::string> paragraph;
  ListKind list = ListKind::kNone;
  std::string item;
  bool have_item = false;

  auto flush_paragraph = [&] {
    if (paragraph.empty()) return;
    out += "<p>" + RenderInline(Join(paragraph, "\n"), &resolve) + "</p>\n";
    paragraph.clear();
  };
  auto flush_item = [&] {
    if (!have_item) return;
    out += "<li>" + RenderInline(item, &resolve) + "</li>\n";
    item.clear();
    have_item = false;
  };
  auto close_list = [&] {
    flush_item();
    if (list == ListKind::kUnordered) out += "</ul>\n";
    if (list == ListKind::kOrdered) out += "</ol>\n";
    list = ListKind::kNone;
  };

  for (std::string_view raw : SplitLines(markdown)) {
    std::string_view line = Trim(raw);
    if (line.empty()) {
      flush_paragraph();
      close_list();
      continue;
    }
    if (int level = HeadingLevel(line)) {
      flush_paragraph();
      close_list();
      std::string_view text = Trim(line.substr(static_cast<size_t>(level)));
      while (!text.empty() && text.back() == '#') text.remove_suffix(1);
      out += fmt::format("<h{}>{}</h{}>\n", level, RenderInline(Trim(text), &resolve), level);
      continue;
    }
    ListKind kind = ListKind::kNone;
    if (size_t marker = ListMarker(line, &kind)) {
      flush_paragraph();
      if (kind != list) {
        close_list();
        out += kind == ListKind::kUnordered ? "<ul>\n" : "<ol>\n";
        list = kind;
      }
      flush_item();
      item = std::string(Trim(line.substr(marker)));
      have_item = true;
      continue;
    }
    if (have_item && !raw.empty() && IsAsciiSpace(raw[0])) {
      item += "\n";
      item += line;
      continue;
    }
    close_list();
    paragraph.emplace_back(line);
  }
  flush_paragraph();
  close_list();
  return out;
}

std::string RenderTable(const std::vector<const Concept *> &rows, const SiteOptions &options) {
  std::string out = PageHead("Concepts", "", options, true);
  out += "<h1>Concepts</h1>\n";
  out += "<input type=\"search\" id=\"filter\" placeholder=\"Filter\" autocomplete=\"off\">\n";
  out += "<table id=\"concepts\">\n<thead>\n<tr><th>Wikidata</th><th>Chicago</th>"
         "<th>French (Lean 4)</th><th>MuLiMa</th><th>nLab</th></tr>\n</thead>\n<tbody>\n";
  for (const Concept *c : rows) {
    std::string wikidata;
    if (c->key.is_qid()) {
      wikidata = Link(ExpandUrlTemplate(options.wikidata_url_template, "qid", c->key.str()),
                      c->key.str());
    }
    std::vector<std::string> defs, lean, mulima, nlab;
    for (const ConceptPayload &p : c->payloads) {
      std::visit(
          [&](const auto &v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, DefinitionPage>) {
              defs.push_back(Link(DefinitionPagePath(p.corpus, v.slug), p.term));
            } else if constexpr (std::is_same_v<T, ProverLink>) {
              lean.push_back(v.url ? Link(*v.url, p.term) : HtmlEscape(p.term));
            } else if constexpr (std::is_same_v<T, Translations>) {
              mulima.push_back(
                  Link(ExpandUrlTemplate(options.mulima_url_template, "term", p.term), p.term));
            } else {
              nlab.push_back(
                  Link(ExpandUrlTemplate(options.nlab_url_template, "title", v.title), v.title));
            }
          },
          p.payload);
    }
    out += "<tr class=\"concept\" data-key=\"" + HtmlEscape(c->key.str()) + "\">";
    for (const std::string &cell :
         {wikidata, JoinCell(defs), JoinCell(lean), JoinCell(mulima), JoinCell(nlab)}) {
      out += "<td>" + cell + "</td>";
    }
    out += "</tr>\n";
  }
  out += "</tbody>\n</table>\n</body>\n</html>\n";
  return out;
}

std::map<std::string, std::string> RenderDefinitionPages(const KnowledgeGraph &graph,
                                                         const SiteOptions &options) {
  std::vector<PageJob> jobs;
  std::map<std::string, std::map<std::string, std::string>> pages_by_corpus;
  for (const auto &[key, c] : graph.concepts()) {
    for (const ConceptPayload &p : c.payloads) {
      const auto *page = std::get_if<DefinitionPage>(&p.payload);
      if (page == nullptr) continue;
      std::string path = DefinitionPagePath(p.corpus, page->slug);
      pages_by_corpus[p.corpus].emplace(page->slug, path);
      jobs.push_back({path, &c, &p});
    }
  }

  std::vector<std::string> rendered(jobs.size());
  auto render_range = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      rendered[i] = RenderPage(jobs[i], pages_by_corpus.at(jobs[i].payload->corpus), options);
    }
  };
  unsigned workers = options.workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.workers;
  const size_t chunks = std::min<size_t>(workers, jobs.size());
  if (chunks <= 1) {
    render_range(0, jobs.size());
  } else {
    std::vector<std::future<void>> futures;
    const size_t per = (jobs.size() + chunks - 1) / chunks;
    for (size_t begin = 0; begin < jobs.size(); begin += per) {
      futures.push_back(std::async(std::launch::async, render_range, begin,
                                   std::min(jobs.size(), begin + per)));
    }
    for (auto &f : futures) f.get();
  }

  std::map<std::string, std::string> out;
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (!out.emplace(jobs[i].path, std::move(rendered[i])).second) {
      throw Error(ErrorCode::kInvariantViolation,
                  "two definition pages share the path " + jobs[i].path);
    }
  }
  return out;
}

std::map<std::string, std::string> RenderSite(const KnowledgeGraph &graph,
                                              const SiteOptions &options) {
  std::map<std::string, std::string> files = RenderDefinitionPages(graph, options);
  files["database.html"] = RenderTable(SortRows(graph), options);
  files["assets/style.css"] = std::string(kStyleCss);
  files["assets/filter.js"] = std::string(kFilterJs);
  return files;
}

std::vector<ManifestEntry> BuildManifest(const std::map<std::string, std::string> &files) {
  std::vector<ManifestEntry> manifest;
  for (const auto &[path, content] : files) {
    manifest.push_back({path, content.size(), Sha256Hex(content)});
  }
  return manifest;
}

std::string ManifestToJson(const std::vector<ManifestEntry> &manifest) {
  nlohmann::ordered_json root;
  root["files"] = nlohmann::ordered_json::array();
  for (const ManifestEntry &e : manifest) {
    nlohmann::ordered_json j;
    j["path"] = e.path;
    j["bytes"] = e.bytes;
    j["sha256"] = e.sha256;
    root["files"].push_back(std::move(j));
  }
  return root.dump(2) + "\n";
}

std::vector<ManifestEntry> EmitSite(const KnowledgeGraph &graph,
                                    const std::filesystem::path &out,
                                    const SiteOptions &options) {
  namespace fs = std::filesystem;
  std::map<std::string, std::string> files = RenderSite(graph, options);
  std::vector<ManifestEntry> manifest = BuildManifest(files);
  files["manifest.json"] = ManifestToJson(manifest);

  fs::path target = out.has_filename() ? out : out.parent_path();
  fs::path tmp = target;
  tmp += ".tmp";
  fs::path old = target;
  old += ".old";
  std::error_code ec;
  try {
    fs::remove_all(tmp);
    for (const auto &[path, content] : files) {
      fs::path file = tmp / path;
      fs::create_directories(file.parent_path());
      WriteFileAtomic(file, content);
    }
    fs::remove_all(old);
    if (fs::exists(target)) fs::rename(target, old);
    fs::rename(tmp, target);
    fs::remove_all(old);
  } catch (const fs::filesystem_error &e) {
    fs::remove_all(tmp, ec);
    if (!fs::exists(target, ec) && fs::exists(old, ec)) fs::rename(old, target, ec);
    throw Error(ErrorCode::kIoFailure, e.what());
  } catch (const Error &) {
    fs::remove_all(tmp, ec);
    throw;
  }
  return manifest;
}

}  // namespace glossforge
