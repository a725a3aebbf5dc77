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

#include "synlex/morph.hpp"

#include "detail.hpp"
#include "synlex/lexstore.hpp"

namespace synlex {

morph_table morph_table::parse(std::string_view text) {
    if (auto bad = detail::first_invalid_utf8(text)) {
        throw decode_error(*bad, "morphology table is not valid UTF-8");
    }
    morph_table t;
    std::size_t lineno = 0;
    for (auto line : detail::split(text, '\n')) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        auto cols = detail::split(line, '\t');
        if (cols.size() < 3 || cols.size() > 4) {
            throw morph_format_error(lineno, "expected surface<TAB>pos<TAB>root[<TAB>features]");
        }
        for (std::size_t i = 0; i < 3; ++i) {
            if (cols[i].empty() || detail::has_whitespace(cols[i])) {
                throw morph_format_error(lineno, "column " + std::to_string(i + 1) + " is empty or has whitespace");
            }
        }
        pos category{};
        try {
            category = parse_pos(cols[1]);
        } catch (const symbol_error& e) {
            throw morph_format_error(lineno, e.what());
        }
        morph_analysis a{std::string(cols[2]), {}};
        if (cols.size() == 4 && !cols[3].empty()) {
            for (auto f : detail::split(cols[3], ',')) {
                if (f.empty()) {
                    throw morph_format_error(lineno, "empty inflection feature");
                }
                a.features.emplace_back(f);
            }
        }
        t._roots.emplace(a.root, category);
        t._rows[{std::string(cols[0]), category}].insert(std::move(a));
    }
    return t;
}

morph_table morph_table::load(const std::string& path) {
    return parse(detail::read_file(path));
}

std::size_t morph_table::size() const noexcept {
    std::size_t n = 0;
    for (const auto& [key, set] : _rows) {
        n += set.size();
    }
    return n;
}

std::set<morph_analysis> morph_table::roots_of(std::string_view surface, pos category) const {
    std::set<morph_analysis> out;
    std::pair<std::string, pos> key{std::string(surface), category};
    if (auto it = _rows.find(key); it != _rows.end()) {
        out = it->second;
    }
    if (_roots.contains(key)) {
        out.insert({std::string(surface), {}});
    }
    return out;
}

std::set<missing_root> morph_table::targets() const {
    std::set<missing_root> out;
    for (const auto& [root, category] : _roots) {
        out.insert({root, category});
    }
    return out;
}

std::vector<missing_root> check_superset(const morph_table& table, const lex_store& store) {
    std::vector<missing_root> out;
    for (const auto& t : table.targets()) {
        bool found = false;
        for (const auto& e : store.lookup(t.root)) {
            if (e.pos.head() == t.category) {
                found = true;
                break;
            }
        }
        if (!found) {
            out.push_back(t);
        }
    }
    return out;
}

} // namespace synlex
