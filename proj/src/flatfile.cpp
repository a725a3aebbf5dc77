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

#include "synlex/flatfile.hpp"

#include "detail.hpp"

#include <algorithm>
#include <array>

namespace synlex {

namespace {

enum field_slot : std::size_t { f_index, f_entry, f_pos, f_frame, f_fs, f_ex, f_count };

constexpr std::array<std::string_view, f_count> labels = {"INDEX", "ENTRY", "POS", "FRAME", "FS", "EX"};
constexpr std::array<bool, f_count> required = {true, true, true, true, false, false};

std::optional<std::size_t> slot_of(std::string_view label) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) {
            return i;
        }
    }
    return std::nullopt;
}

// Example sentences are joined with '|'; a literal '|' is written "\|" and a
// literal backslash "\\".
std::string escape_example(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '\\' || c == '|') {
            out.push_back('\\');
        }
        out.push_back(c);
    }
    return out;
}

std::vector<std::string> split_examples(
  std::string_view s, std::size_t lineno, std::vector<parse_diagnostic>& diags) {
    std::vector<std::string> out;
    std::string cur;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '\\') {
            if (i + 1 < s.size() && (s[i + 1] == '\\' || s[i + 1] == '|')) {
                cur.push_back(s[++i]);
            } else {
                diags.push_back({lineno, severity::warning, "stray backslash kept literally", "EX"});
                cur.push_back(c);
            }
        } else if (c == '|') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(std::move(cur));
    return out;
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    if (s.empty()) {
        return out;
    }
    for (auto piece : detail::split(s, '/')) {
        out.emplace_back(piece);
    }
    return out;
}

bool is_blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; });
}

} // namespace

std::string parse_diagnostic::str() const {
    std::string out = "line " + std::to_string(line) + ": ";
    out += level == severity::error ? "error" : "warning";
    if (!field.empty()) {
        out += " [" + field + "]";
    }
    out += ": " + message;
    return out;
}

bool parse_result::has_errors() const {
    return std::any_of(diagnostics.begin(), diagnostics.end(), [](const parse_diagnostic& d) {
        return d.level == severity::error;
    });
}

std::optional<lex_entry> parse_line(
  std::string_view line, std::size_t lineno, const registry& reg, std::vector<parse_diagnostic>& diags) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    if (is_blank(line) || line.front() == '#') {
        return std::nullopt;
    }

    const auto errors_before = std::count_if(diags.begin(), diags.end(), [](const auto& d) {
        return d.level == severity::error;
    });
    auto add = [&](severity lvl, std::string field, std::string msg) {
        diags.push_back({lineno, lvl, std::move(msg), std::move(field)});
    };

    std::array<std::optional<std::string_view>, f_count> values;
    std::optional<std::size_t> last_slot;
    bool order_warned = false;
    for (auto field : detail::split(line, '\t')) {
        auto colon = field.find(':');
        if (colon == std::string_view::npos) {
            add(severity::error, "", "field '" + std::string(field) + "' has no LABEL: prefix");
            continue;
        }
        auto label = field.substr(0, colon);
        auto value = field.substr(colon + 1);
        if (!value.empty() && value.front() == ' ') {
            value.remove_prefix(1);
        }
        auto slot = slot_of(label);
        if (!slot) {
            add(severity::error, std::string(label), "unknown field label '" + std::string(label) + "'");
            continue;
        }
        if (values[*slot]) {
            add(severity::error, std::string(label), "field given more than once");
            continue;
        }
        if (last_slot && *slot < *last_slot && !order_warned) {
            add(severity::warning, std::string(label), "fields out of canonical order");
            order_warned = true;
        }
        last_slot = slot;
        values[*slot] = value;
    }
    for (std::size_t i = 0; i < f_count; ++i) {
        if (required[i] && !values[i]) {
            add(severity::error, std::string(labels[i]), "required field " + std::string(labels[i]) + " is missing");
        }
    }

    auto has_new_errors = [&] {
        return std::count_if(diags.begin(), diags.end(), [](const auto& d) { return d.level == severity::error; })
               > errors_before;
    };
    if (has_new_errors()) {
        return std::nullopt;
    }

    lex_entry e;
    e.index = std::string(*values[f_index]);
    for (auto tok : detail::split_ws(*values[f_entry])) {
        e.entry.emplace_back(tok);
    }
    try {
        e.pos = pos_tag::parse(*values[f_pos]);
    } catch (const symbol_error& ex) {
        add(severity::error, "POS", ex.what());
        return std::nullopt;
    }
    e.frames = split_list(*values[f_frame]);
    if (values[f_fs]) {
        e.fs = split_list(*values[f_fs]);
    }
    if (values[f_ex] && !values[f_ex]->empty()) {
        e.ex = split_examples(*values[f_ex], lineno, diags);
    }
    e = canonicalize(std::move(e), reg);

    for (auto& v : validate_entry(e, reg)) {
        add(severity::error, std::move(v.field), std::move(v.message));
    }
    if (has_new_errors()) {
        return std::nullopt;
    }
    return e;
}

parse_result parse_lexicon(std::string_view text, const registry& reg) {
    if (auto bad = detail::first_invalid_utf8(text)) {
        throw decode_error(*bad, "input is not valid UTF-8");
    }
    parse_result out;
    std::size_t lineno = 0;
    for (auto line : detail::split(text, '\n')) {
        ++lineno;
        if (auto e = parse_line(line, lineno, reg, out.diagnostics)) {
            out.entries.push_back(std::move(*e));
        }
    }
    return out;
}

std::string serialize_line(const lex_entry& e, const registry& reg, render_mode mode) {
    require_valid(e, reg);
    std::string out;
    out += "INDEX: ";
    out += e.index;
    out += "\tENTRY: ";
    out += detail::join(e.entry, " ");
    out += "\tPOS: ";
    out += e.pos.str(mode);
    out += "\tFRAME: ";
    for (std::size_t i = 0; i < e.frames.size(); ++i) {
        if (i) {
            out += '/';
        }
        out += reg.render_frame(e.frames[i], mode);
    }
    if (!e.fs.empty()) {
        out += "\tFS: ";
        for (std::size_t i = 0; i < e.fs.size(); ++i) {
            if (i) {
                out += '/';
            }
            out += reg.render_feature(e.fs[i], mode);
        }
    }
    if (!e.ex.empty()) {
        out += "\tEX: ";
        for (std::size_t i = 0; i < e.ex.size(); ++i) {
            if (i) {
                out += '|';
            }
            out += escape_example(e.ex[i]);
        }
    }
    return out;
}

std::string serialize_lexicon(const std::vector<lex_entry>& entries, const registry& reg, render_mode mode) {
    std::string out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        auto v = validate_entry(entries[i], reg);
        if (!v.empty()) {
            v.front().message = "entry " + std::to_string(i + 1) + " (" + entries[i].index + "): " + v.front().message;
            throw validation_error({v.front()});
        }
        out += serialize_line(entries[i], reg, mode);
        out += '\n';
    }
    return out;
}

parse_result load_lexicon(const std::string& path, const registry& reg) {
    return parse_lexicon(detail::read_file(path), reg);
}

} // namespace synlex
