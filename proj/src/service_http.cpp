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

#include "httplib.h"

namespace synlex {

struct http_server::impl {
    service& svc;
    httplib::Server server;

    explicit impl(service& s)
      : svc(s) {}

    void reply(httplib::Response& res, const api_response& r) {
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    }

    void route_post(const std::string& path, std::string op) {
        server.Post(path, [this, op](const httplib::Request& req, httplib::Response& res) {
            json params = json::object();
            if (!req.body.empty()) {
                params = json::parse(req.body, nullptr, false);
                if (params.is_discarded()) {
                    reply(res, {400, {{"error", {{"kind", "bad_request"}, {"message", "request body is not JSON"}}}}});
                    return;
                }
            }
            reply(res, svc.handle(op, params));
        });
    }

    void route_get(const std::string& path, std::string op) {
        server.Get(path, [this, op](const httplib::Request&, httplib::Response& res) {
            reply(res, svc.handle(op, json::object()));
        });
    }
};

http_server::http_server(service& svc)
  : _impl(std::make_unique<impl>(svc)) {
    _impl->route_post("/api/search", "search");
    _impl->route_post("/api/entries", "create");
    _impl->route_post("/api/entries/update", "update");
    _impl->route_post("/api/entries/delete", "delete");
    _impl->route_post("/api/bulk-delete", "bulk-delete");
    _impl->route_post("/api/export", "export");
    _impl->route_post("/api/coverage", "coverage");
    _impl->route_get("/api/census", "census");
    _impl->route_get("/api/registry", "registry");
}

http_server::~http_server() {
    stop();
}

int http_server::bind(const std::string& host, int port) {
    int bound = -1;
    if (port == 0) {
        bound = _impl->server.bind_to_any_port(host);
    } else if (_impl->server.bind_to_port(host, port)) {
        bound = port;
    }
    if (bound < 0) {
        throw io_error("cannot bind " + host + ":" + std::to_string(port));
    }
    return bound;
}

void http_server::listen() {
    _impl->server.listen_after_bind();
}

void http_server::stop() {
    if (_impl) {
        _impl->server.stop();
    }
}

} // namespace synlex
