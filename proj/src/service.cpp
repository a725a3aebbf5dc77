/*
 * Copyright 2026 The synlex Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "synlex/service.hpp"

#include "detail.hpp"
#include "synlex/flatfile.hpp"
#include "synlex/query.hpp"

#include <mutex>

namespace synlex {

namespace {

/// Bad request shape that is not about entry content.
class request_error : public error {
public:
    using error::error;
};

json error_body(std::string_view kind, std::string_view message) {
    return {{"error", {{"kind", kind}, {"message", message}}}};
}

const json& require(const json& p, const char* key) {
    if (!p.is_object() || !p.contains(key)) {
        throw request_error(std::string("missing parameter '") + key + "'");
    }
    return p.at(key);
}

std::string require_string(const json& p, const char* key) {
    const auto& v = require(p, key);
    if (!v.is_string()) {
        throw request_error(std::string("parameter '") + key + "' must be a string");
    }
    return v.get<std::string>();
}

std::optional<std::string> optional_string(const json& p, const char* key) {
    if (!p.is_object() || !p.contains(key) || p.at(key).is_null()) {
        return std::nullopt;
    }
    if (!p.at(key).is_string()) {
        throw request_error(std::string("parameter '") + key + "' must be a string");
    }
    return p.at(key).get<std::string>();
}

render_mode mode_param(const json& p) {
    auto m = optional_string(p, "mode");
    if (!m) {
        return render_mode::verbose;
    }
    try {
        return parse_render_mode(*m);
    } catch (const error& e) {
        throw request_error(e.what());
    }
}

/// Reads an array of strings; records a violation and returns empty on a
/// schema problem.
std::vector<std::string> string_list(
  const json& j, const char* key, const char* label, bool required, std::vector<violation>& out) {
    std::vector<std::string> values;
    if (!j.contains(key) || j.at(key).is_null()) {
        if (required) {
            out.push_back({label, std::string("missing '") + key + "'"});
        }
        return values;
    }
    const auto& arr = j.at(key);
    if (!arr.is_array()) {
        out.push_back({label, std::string("'") + key + "' must be an array of strings"});
        return values;
    }
    for (const auto& v : arr) {
        if (!v.is_string()) {
            out.push_back({label, std::string("'") + key + "' must be an array of strings"});
            return {};
        }
        values.push_back(v.get<std::string>());
    }
    return values;
}

json entries_json(const std::vector<lex_entry>& entries) {
    json arr = json::array();
    for (const auto& e : entries) {
        arr.push_back(entry_to_json(e));
    }
    return arr;
}

api_response failure(const std::exception_ptr& ep) {
    try {
        std::rethrow_exception(ep);
    } catch (const validation_error& e) {
        auto body = error_body("validation", e.what());
        json v = json::array();
        for (const auto& x : e.violations()) {
            v.push_back({{"field", x.field}, {"message", x.message}});
        }
        body["error"]["violations"] = std::move(v);
        return {400, std::move(body)};
    } catch (const request_error& e) {
        return {400, error_body("bad_request", e.what())};
    } catch (const json::exception& e) {
        return {400, error_body("bad_request", e.what())};
    } catch (const query_error& e) {
        return {400, error_body("query", e.what())};
    } catch (const symbol_error& e) {
        return {400, error_body("symbol", e.what())};
    } catch (const decode_error& e) {
        return {400, error_body("decode", e.what())};
    } catch (const tag_map_error& e) {
        return {400, error_body("tag_map", e.what())};
    } catch (const coverage_error& e) {
        return {400, error_body("coverage", e.what())};
    } catch (const not_found_error& e) {
        return {404, error_body("not_found", e.what())};
    } catch (const duplicate_error& e) {
        return {409, error_body("duplicate", e.what())};
    } catch (const stale_result_error& e) {
        return {409, error_body("stale", e.what())};
    } catch (const read_only_error& e) {
        return {403, error_body("read_only", e.what())};
    } catch (const io_error& e) {
        return {500, error_body("io", e.what())};
    } catch (const std::exception& e) {
        return {500, error_body("internal", e.what())};
    }
}

} // namespace

json entry_to_json(const lex_entry& e) {
    json pos = json::array();
    for (auto s : e.pos.parts()) {
        pos.push_back(pos_symbol_name(s, render_mode::verbose));
    }
    return {
      {"index", e.index},
      {"entry", e.entry},
      {"pos", std::move(pos)},
      {"frames", e.frames},
      {"fs", e.fs},
      {"ex", e.ex},
    };
}

lex_entry entry_from_json(const json& j, const registry& reg) {
    if (!j.is_object()) {
        throw validation_error(std::vector<violation>{{"INDEX", "entry must be a JSON object"}});
    }
    std::vector<violation> problems;
    lex_entry e;
    if (!j.contains("index") || !j.at("index").is_string()) {
        problems.push_back({"INDEX", "'index' must be a string"});
    } else {
        e.index = j.at("index").get<std::string>();
    }
    e.entry = string_list(j, "entry", "ENTRY", true, problems);
    auto pos_parts = string_list(j, "pos", "POS", true, problems);
    std::vector<pos_symbol> parts;
    for (const auto& p : pos_parts) {
        try {
            parts.push_back(parse_pos_symbol(p));
        } catch (const symbol_error& x) {
            problems.push_back({"POS", x.what()});
        }
    }
    e.pos = pos_tag(std::move(parts));
    e.frames = string_list(j, "frames", "FRAME", true, problems);
    e.fs = string_list(j, "fs", "FS", false, problems);
    e.ex = string_list(j, "ex", "EX", false, problems);
    if (!problems.empty()) {
        throw validation_error(std::move(problems));
    }
    e = canonicalize(std::move(e), reg);
    require_valid(e, reg);
    return e;
}

service::service(lex_store store, morph_table morph, std::optional<tag_map> tags)
  : _store(std::move(store))
  , _morph(std::move(morph))
  , _tags(std::move(tags)) {}

api_response service::handle(std::string_view op, const json& params) {
    try {
        if (op == "search") {
            std::shared_lock lock(_lock);
            return {200, search(params)};
        }
        if (op == "export") {
            std::shared_lock lock(_lock);
            return {200, export_flat(params)};
        }
        if (op == "census") {
            std::shared_lock lock(_lock);
            return {200, census()};
        }
        if (op == "registry") {
            return {200, registry_info()};
        }
        if (op == "coverage") {
            std::shared_lock lock(_lock);
            return {200, coverage(params)};
        }
        if (op == "create") {
            std::unique_lock lock(_lock);
            return {201, create(params)};
        }
        if (op == "update") {
            std::unique_lock lock(_lock);
            return {200, update(params)};
        }
        if (op == "delete") {
            std::unique_lock lock(_lock);
            return {200, erase(params)};
        }
        if (op == "bulk-delete") {
            std::unique_lock lock(_lock);
            return {200, bulk_delete(params)};
        }
        return {404, error_body("unknown_operation", "unknown operation '" + std::string(op) + "'")};
    } catch (...) {
        return failure(std::current_exception());
    }
}

void service::close() {
    std::unique_lock lock(_lock);
    _store.close();
}

json service::search(const json& p) const {
    auto q = query::parse(require_string(p, "query"));
    auto mode = mode_param(p);
    auto rs = eval_query(_store, q);
    json rendered = json::array();
    for (const auto& row : rs.rows()) {
        rendered.push_back(render_entry(row.entry, _store.reg(), mode));
    }
    return {
      {"query", q.str()},
      {"count", rs.size()},
      {"entries", entries_json(rs.entries())},
      {"rendered", std::move(rendered)},
      {"mutation_count", _store.mutation_count()},
    };
}

json service::create(const json& p) {
    auto e = entry_from_json(require(p, "entry"), _store.reg());
    auto ref = _store.put(e);
    return {{"ref", ref.offset}, {"mutation_count", _store.mutation_count()}};
}

json service::update(const json& p) {
    auto old_entry = entry_from_json(require(p, "old"), _store.reg());
    auto new_entry = entry_from_json(require(p, "new"), _store.reg());
    auto ref = _store.replace(old_entry, new_entry);
    return {{"ref", ref.offset}, {"mutation_count", _store.mutation_count()}};
}

json service::erase(const json& p) {
    auto e = entry_from_json(require(p, "entry"), _store.reg());
    _store.remove(e);
    return {{"mutation_count", _store.mutation_count()}};
}

json service::bulk_delete(const json& p) {
    auto q = query::parse(require_string(p, "query"));
    auto rs = eval_query(_store, q);
    auto n = synlex::bulk_delete(_store, rs);
    return {{"deleted", n}, {"mutation_count", _store.mutation_count()}};
}

json service::export_flat(const json& p) const {
    auto q = query::parse(require_string(p, "query"));
    auto mode = mode_param(p);
    auto rs = eval_query(_store, q);
    json out = {
      {"count", rs.size()},
      {"text", serialize_lexicon(rs.entries(), _store.reg(), mode)},
    };
    if (auto path = optional_string(p, "path")) {
        export_results(rs, _store, *path, mode);
        out["path"] = *path;
    }
    return out;
}

json service::census() const {
    auto c = _store.census();
    json by_pos = json::array();
    for (const auto& [tag, n] : c.by_pos) {
        by_pos.push_back({{"pos", tag.str()}, {"entries", n.entries}, {"distinct_indexes", n.distinct_indexes}});
    }
    return {{"total", c.total}, {"by_pos", std::move(by_pos)}};
}

json service::registry_info() const {
    const auto& reg = _store.reg();
    json pos = json::array();
    for (auto p : all_pos) {
        pos.push_back({{"verbose", pos_name(p, render_mode::verbose)}, {"xtag", pos_name(p, render_mode::xtag)}});
    }
    json frames = json::array();
    for (const auto& f : reg.frames()) {
        frames.push_back({
          {"code", f.code},
          {"pos", pos_name(f.owner, render_mode::verbose)},
          {"verbose", f.verbose_name},
          {"xtag", f.xtag_name},
        });
    }
    json features = json::array();
    for (const auto& f : reg.features()) {
        features.push_back({
          {"code", f.code},
          {"group", feature_group_name(f.group)},
          {"verbose", f.verbose_name},
          {"xtag", f.xtag_name},
        });
    }
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(reg.hash()));
    return {
      {"version", reg.version()},
      {"hash", hash},
      {"pos", std::move(pos)},
      {"frames", std::move(frames)},
      {"features", std::move(features)},
    };
}

json service::coverage(const json& p) const {
    auto corpus = require_string(p, "corpus");
    auto name = optional_string(p, "name").value_or("corpus");
    std::optional<tag_map> supplied;
    if (auto text = optional_string(p, "tagmap")) {
        supplied = tag_map::parse(*text);
    }
    const tag_map* tags = supplied ? &*supplied : (_tags ? &*_tags : nullptr);
    if (!tags) {
        throw request_error("no tag map configured; pass 'tagmap'");
    }
    auto report = make_coverage_report(name, read_corpus(corpus, *tags), _store, _morph);
    json breakdown = json::array();
    for (const auto& row : report.breakdown) {
        breakdown.push_back({
          {"category", miss_category_name(row.category)},
          {"count", row.count},
          {"percent", row.percent.str()},
        });
    }
    return {
      {"report",
       {
         {"corpus", report.corpus},
         {"hits", report.hits},
         {"total", report.total},
         {"non_hits", report.non_hits},
         {"percent", report.percent.str()},
         {"breakdown", std::move(breakdown)},
       }},
      {"table", format_report_table({report})},
      {"kv", format_report_kv(report)},
    };
}

} // namespace synlex
