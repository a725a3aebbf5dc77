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

#include "synlex/query.hpp"

#include "detail.hpp"
#include "synlex/flatfile.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace synlex {

namespace {

constexpr std::array<std::string_view, 5> field_labels = {"INDEX", "ENTRY", "POS", "FRAME", "FS"};

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& c : out) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return out;
}

pos_tag parse_pos_value(std::string_view value) {
    std::string spaced(value);
    std::replace(spaced.begin(), spaced.end(), '+', ' ');
    try {
        return pos_tag::parse(spaced);
    } catch (const symbol_error& e) {
        throw query_error(std::string("POS=") + std::string(value) + ": " + e.what());
    }
}

/// Predicates resolved against the registry once per evaluation.
struct compiled_query {
    std::optional<std::string> index;
    std::optional<std::string> token;
    std::optional<pos_tag> tag;
    std::vector<uint8_t> pos_codes;
    std::vector<uint16_t> frames;
    std::vector<uint16_t> features;

    compiled_query(const query& q, const registry& reg) {
        q.check();
        for (const auto& p : q.predicates()) {
            switch (p.target) {
            case field::index:
                index = p.value;
                break;
            case field::entry:
                token = p.value;
                break;
            case field::pos:
                tag = parse_pos_value(p.value);
                for (auto s : tag->parts()) {
                    pos_codes.push_back(static_cast<uint8_t>(s));
                }
                break;
            case field::frame: {
                const auto* f = reg.find_frame(p.value);
                if (!f) {
                    throw query_error("FRAME=" + p.value + ": frame is not registered");
                }
                frames.push_back(f->code);
                break;
            }
            case field::fs: {
                const auto* f = reg.find_feature(p.value);
                if (!f) {
                    throw query_error("FS=" + p.value + ": feature is not registered");
                }
                features.push_back(f->code);
                break;
            }
            }
        }
    }

    bool test(const encoded_view& v) const {
        if (index && v.index() != *index) {
            return false;
        }
        if (tag) {
            auto codes = v.pos_codes();
            if (!std::equal(codes.begin(), codes.end(), pos_codes.begin(), pos_codes.end())) {
                return false;
            }
        }
        for (auto c : frames) {
            if (!v.has_frame(c)) {
                return false;
            }
        }
        for (auto c : features) {
            if (!v.has_feature(c)) {
                return false;
            }
        }
        return !token || v.has_token(*token);
    }
};

} // namespace

std::string_view field_label(field f) {
    return field_labels.at(static_cast<std::size_t>(f));
}

query::query(std::vector<field_predicate> preds)
  : _preds(std::move(preds)) {}

query query::parse(std::string_view text) {
    std::vector<field_predicate> preds;
    for (auto conjunct : detail::split_ws(text)) {
        auto eq = conjunct.find('=');
        if (eq == std::string_view::npos) {
            throw query_error("expected FIELD=value, got '" + std::string(conjunct) + "'");
        }
        auto label = upper(conjunct.substr(0, eq));
        auto value = conjunct.substr(eq + 1);
        if (label == "EX") {
            throw query_error("EX is not a searchable field");
        }
        auto it = std::find(field_labels.begin(), field_labels.end(), label);
        if (it == field_labels.end()) {
            throw query_error("unknown field '" + std::string(conjunct.substr(0, eq)) + "'");
        }
        if (value.empty()) {
            throw query_error("empty value for " + label);
        }
        preds.push_back({static_cast<field>(it - field_labels.begin()), std::string(value)});
    }
    query q(std::move(preds));
    q.check();
    return q;
}

void query::check() const {
    if (_preds.empty()) {
        throw query_error("query has no conditions");
    }
    std::array<int, 5> seen{};
    for (const auto& p : _preds) {
        auto& n = seen.at(static_cast<std::size_t>(p.target));
        if (++n > 1 && p.target != field::frame && p.target != field::fs) {
            throw query_error(std::string(field_label(p.target)) + " may appear only once in a query");
        }
        if (p.value.empty()) {
            throw query_error("empty value for " + std::string(field_label(p.target)));
        }
    }
}

std::optional<std::string> query::index_key() const {
    for (const auto& p : _preds) {
        if (p.target == field::index) {
            return p.value;
        }
    }
    return std::nullopt;
}

std::string query::str() const {
    std::string out;
    for (const auto& p : _preds) {
        if (!out.empty()) {
            out += ' ';
        }
        out += field_label(p.target);
        out += '=';
        out += p.value;
    }
    return out;
}

bool matches(const lex_entry& e, const query& q, const registry& reg) {
    q.check();
    for (const auto& p : q.predicates()) {
        bool ok = false;
        switch (p.target) {
        case field::index:
            ok = e.index == p.value;
            break;
        case field::entry:
            ok = std::find(e.entry.begin(), e.entry.end(), p.value) != e.entry.end();
            break;
        case field::pos:
            ok = e.pos == parse_pos_value(p.value);
            break;
        case field::frame: {
            const auto* f = reg.find_frame(p.value);
            if (!f) {
                throw query_error("FRAME=" + p.value + ": frame is not registered");
            }
            ok = std::find(e.frames.begin(), e.frames.end(), f->verbose_name) != e.frames.end();
            break;
        }
        case field::fs: {
            const auto* f = reg.find_feature(p.value);
            if (!f) {
                throw query_error("FS=" + p.value + ": feature is not registered");
            }
            ok = std::find(e.fs.begin(), e.fs.end(), f->verbose_name) != e.fs.end();
            break;
        }
        }
        if (!ok) {
            return false;
        }
    }
    return true;
}

std::vector<lex_entry> result_set::entries() const {
    std::vector<lex_entry> out;
    out.reserve(_rows.size());
    for (const auto& r : _rows) {
        out.push_back(r.entry);
    }
    return out;
}

bool result_set::stale(const lex_store& store) const noexcept {
    return store.mutation_count() != _generation;
}

void result_set::require_fresh(const lex_store& store) const {
    if (stale(store)) {
        throw stale_result_error(
          "result set for '" + _origin.str() + "' is stale: the store changed since it was evaluated");
    }
}

const stored_entry* result_set::current() const noexcept {
    return _rows.empty() ? nullptr : &_rows[_cursor];
}

bool result_set::next() noexcept {
    if (_cursor + 1 >= _rows.size()) {
        return false;
    }
    ++_cursor;
    return true;
}

bool result_set::previous() noexcept {
    if (_cursor == 0) {
        return false;
    }
    --_cursor;
    return true;
}

void result_set::select(std::size_t i) {
    if (i >= _rows.size()) {
        throw std::out_of_range("result row " + std::to_string(i) + " out of range");
    }
    _cursor = i;
}

result_set eval_query(const lex_store& store, const query& q) {
    compiled_query cq(q, store.reg());
    result_set rs;
    rs._origin = q;
    rs._generation = store.mutation_count();
    if (cq.index) {
        for (auto& row : store.lookup_refs(*cq.index)) {
            auto payload = encode_record(row.entry, store.reg()).to_bytes();
            if (cq.test(encoded_view(payload))) {
                rs._rows.push_back(std::move(row));
            }
        }
        return rs;
    }
    store.for_each_encoded([&](record_ref ref, const encoded_view& v) {
        if (cq.test(v)) {
            rs._rows.push_back({ref, decode_record(encoded_record::from_bytes(v.payload()), store.reg())});
        }
    });
    return rs;
}

void export_results(const result_set& rs, const lex_store& store, const std::string& path, render_mode mode) {
    rs.require_fresh(store);
    detail::write_file(path, serialize_lexicon(rs.entries(), store.reg(), mode));
}

std::size_t bulk_delete(lex_store& store, const result_set& rs) {
    rs.require_fresh(store);
    for (const auto& row : rs.rows()) {
        store.remove(row.entry);
    }
    return rs.size();
}

std::string render_entry(const lex_entry& e, const registry& reg, render_mode mode) {
    std::string out;
    auto field_lines = [&](std::string_view label, const std::vector<std::string>& values) {
        out += label;
        out += ": ";
        const std::string indent(label.size() + 2, ' ');
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) {
                out += indent;
            }
            out += values[i];
            out += '\n';
        }
    };
    out += "INDEX: " + e.index + "\n";
    out += "ENTRY: " + detail::join(e.entry, " ") + "\n";
    out += "POS: " + e.pos.str(mode) + "\n";
    std::vector<std::string> frames;
    for (const auto& f : e.frames) {
        frames.push_back(reg.render_frame(f, mode));
    }
    field_lines("FRAME", frames);
    if (!e.fs.empty()) {
        std::vector<std::string> fs;
        for (const auto& f : e.fs) {
            fs.push_back(reg.render_feature(f, mode));
        }
        out += "FS: " + detail::join(fs, ", ") + "\n";
    }
    if (!e.ex.empty()) {
        field_lines("EX", e.ex);
    }
    return out;
}

} // namespace synlex
