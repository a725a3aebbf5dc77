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

#pragma once

// The curation service: one dispatcher shared by the HTTP front end and
// tests. Requests and responses are JSON; entries travel in a structured
// form whose symbols are always verbose names. Reads run concurrently,
// mutations are serialized.

#include "synlex/coverage.hpp"
#include "synlex/lexstore.hpp"
#include "synlex/morph.hpp"

#include "json.hpp"

#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

namespace synlex {

using json = nlohmann::json;

/// {"index": s, "entry": [s], "pos": [s], "frames": [s], "fs": [s], "ex": [s]}
json entry_to_json(const lex_entry& e);
/// Accepts verbose or xtag symbols and canonicalizes them. Throws
/// validation_error listing every problem, including schema problems.
lex_entry entry_from_json(const json& j, const registry& reg);

struct api_response {
    int status = 200;
    json body;
};

class service {
public:
    /// `morph` and `tags` are used by the coverage operation; a request may
    /// supply its own tag map.
    explicit service(lex_store store, morph_table morph = {}, std::optional<tag_map> tags = std::nullopt);

    /// Dispatches one operation:
    ///   search       {query, mode?}            -> {count, entries, rendered, mutation_count}
    ///   create       {entry}                   -> {ref, mutation_count}
    ///   update       {old, new}                -> {ref, mutation_count}
    ///   delete       {entry}                   -> {mutation_count}
    ///   bulk-delete  {query}                   -> {deleted, mutation_count}
    ///   export       {query, mode?, path?}     -> {count, text, path?}
    ///   census       {}                        -> {total, by_pos}
    ///   registry     {}                        -> {version, hash, pos, frames, features}
    ///   coverage     {corpus, name?, tagmap?}  -> {report, table, kv}
    /// Failures come back as {error: {kind, message, violations?}} with a
    /// 4xx/5xx status; handle() itself does not throw.
    api_response handle(std::string_view op, const json& params);

    const lex_store& store() const noexcept { return _store; }
    /// Checkpoints and closes the store.
    void close();

private:
    json search(const json& p) const;
    json create(const json& p);
    json update(const json& p);
    json erase(const json& p);
    json bulk_delete(const json& p);
    json export_flat(const json& p) const;
    json census() const;
    json registry_info() const;
    json coverage(const json& p) const;

    lex_store _store;
    morph_table _morph;
    std::optional<tag_map> _tags;
    mutable std::shared_mutex _lock;
};

/// Loopback HTTP front end. Routes are listed in docs/api.md.
class http_server {
public:
    explicit http_server(service& svc);
    ~http_server();
    http_server(const http_server&) = delete;
    http_server& operator=(const http_server&) = delete;

    /// Binds `host:port` (port 0 picks a free port) and returns the bound
    /// port. Throws io_error on bind failure.
    int bind(const std::string& host, int port);
    /// Serves until stop(); call after bind().
    void listen();
    void stop();

private:
    struct impl;
    std::unique_ptr<impl> _impl;
};

} // namespace synlex
