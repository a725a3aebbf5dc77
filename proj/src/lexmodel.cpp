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

#include "synlex/lexmodel.hpp"

#include "detail.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace synlex {

validation_error::validation_error(std::vector<violation> v)
  : error([&] {
      std::string msg = "invalid entry";
      for (const auto& x : v) {
          msg += "; " + x.field + ": " + x.message;
      }
      return msg;
  }())
  , _violations(std::move(v)) {}

decode_error::decode_error(std::size_t offset, const std::string& what)
  : error(what + " at byte offset " + std::to_string(offset))
  , _offset(offset) {}

version_error::version_error(uint32_t found, uint32_t expected)
  : error(
    "store format version " + std::to_string(found) + " is not supported (expected version "
    + std::to_string(expected) + ")")
  , _found(found)
  , _expected(expected) {}

morph_format_error::morph_format_error(std::size_t line, const std::string& what)
  : error("line " + std::to_string(line) + ": " + what)
  , _line(line) {}

namespace {

struct pos_spelling {
    std::string_view verbose;
    std::string_view xtag;
};

constexpr std::array<pos_spelling, pos_symbol_count> pos_spellings = {{
  {"Adjective", "A"},
  {"Adverb", "Ad"},
  {"Complementizer", "Comp"},
  {"Conjunction", "Conj"},
  {"Determiner", "D"},
  {"Noun", "N"},
  {"Preposition", "P"},
  {"Verb", "V"},
  {"Verb_Particle", "PL"},
}};

constexpr std::array<std::string_view, 8> group_names = {
  "wh", "reflexive", "number", "complement", "ergativity", "aux-form", "aux-goes-on", "other"};

// U+2212 MINUS SIGN, as printed in typeset feature names ("wh−").
constexpr std::string_view unicode_minus = "\xE2\x88\x92";

std::string normalize_minus(std::string_view s) {
    std::string out(s);
    std::size_t p = 0;
    while ((p = out.find(unicode_minus, p)) != std::string::npos) {
        out.replace(p, unicode_minus.size(), "-");
        ++p;
    }
    return out;
}

} // namespace

render_mode parse_render_mode(std::string_view text) {
    if (text == "verbose") {
        return render_mode::verbose;
    }
    if (text == "xtag") {
        return render_mode::xtag;
    }
    throw error("unknown render mode '" + std::string(text) + "' (expected verbose or xtag)");
}

std::string_view pos_name(pos p, render_mode mode) {
    return pos_symbol_name(to_symbol(p), mode);
}

std::string_view pos_symbol_name(pos_symbol s, render_mode mode) {
    const auto& sp = pos_spellings.at(static_cast<std::size_t>(s));
    return mode == render_mode::verbose ? sp.verbose : sp.xtag;
}

pos_symbol parse_pos_symbol(std::string_view text) {
    for (std::size_t i = 0; i < pos_spellings.size(); ++i) {
        if (pos_spellings[i].verbose == text || pos_spellings[i].xtag == text) {
            return static_cast<pos_symbol>(i);
        }
    }
    throw symbol_error("unknown part of speech '" + std::string(text) + "'");
}

pos parse_pos(std::string_view text) {
    auto s = parse_pos_symbol(text);
    if (!is_category(s)) {
        throw symbol_error("'" + std::string(text) + "' is not a part-of-speech category");
    }
    return static_cast<pos>(s);
}

pos_tag pos_tag::parse(std::string_view text) {
    std::vector<pos_symbol> parts;
    for (auto piece : detail::split_ws(text)) {
        parts.push_back(parse_pos_symbol(piece));
    }
    if (parts.empty()) {
        throw symbol_error("empty part-of-speech tag");
    }
    return pos_tag(std::move(parts));
}

pos pos_tag::head() const {
    if (_parts.empty() || !is_category(_parts.front())) {
        throw symbol_error("part-of-speech tag has no category head");
    }
    return static_cast<pos>(_parts.front());
}

std::string pos_tag::str(render_mode mode, char sep) const {
    std::string out;
    for (std::size_t i = 0; i < _parts.size(); ++i) {
        if (i) {
            out += sep;
        }
        out += pos_symbol_name(_parts[i], mode);
    }
    return out;
}

std::string_view feature_group_name(feature_group g) {
    return group_names.at(static_cast<std::size_t>(g));
}

feature_group parse_feature_group(std::string_view text) {
    for (std::size_t i = 0; i < group_names.size(); ++i) {
        if (group_names[i] == text) {
            return static_cast<feature_group>(i);
        }
    }
    throw registry_error("unknown feature group '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// registry

namespace {

bool legal_symbol(std::string_view s) {
    if (s.empty() || detail::has_whitespace(s)) {
        return false;
    }
    return s.find_first_of("/|,=\\") == std::string_view::npos;
}

} // namespace

std::shared_ptr<const registry> registry::parse(std::string_view text) {
    std::shared_ptr<registry> reg(new registry());
    reg->_text = std::string(text);

    std::string canonical;
    std::size_t lineno = 0;
    bool have_version = false;
    for (auto raw : detail::split(text, '\n')) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') {
            raw.remove_suffix(1);
        }
        if (raw.empty() || raw.front() == '#') {
            continue;
        }
        auto cols = detail::split(raw, '\t');
        auto where = "registry line " + std::to_string(lineno) + ": ";
        if (!have_version) {
            if (cols.size() != 2 || cols[0] != "version") {
                throw registry_error(where + "expected 'version<TAB>N' before any symbol");
            }
            uint32_t v = 0;
            auto [p, ec] = std::from_chars(cols[1].data(), cols[1].data() + cols[1].size(), v);
            if (ec != std::errc{} || p != cols[1].data() + cols[1].size() || v == 0) {
                throw registry_error(where + "bad version '" + std::string(cols[1]) + "'");
            }
            reg->_version = v;
            have_version = true;
            canonical += "version\t" + std::to_string(v) + "\n";
            continue;
        }
        if (cols.size() != 4) {
            throw registry_error(where + "expected 4 tab-separated columns");
        }
        if (!legal_symbol(cols[2]) || !legal_symbol(cols[3])) {
            throw registry_error(where + "symbol names must be non-empty without whitespace or /|,=\\");
        }
        std::string verbose(cols[2]);
        std::string xtag(cols[3]);
        auto add_names = [&](std::unordered_map<std::string, uint16_t>& names, std::string_view kind, uint16_t code) {
            for (const auto& name : {verbose, xtag}) {
                if (names.contains(name)) {
                    throw registry_error(where + "duplicate " + std::string(kind) + " name '" + name + "'");
                }
            }
            names.emplace(verbose, code);
            names.emplace(xtag, code);
        };
        if (cols[0] == "frame") {
            pos owner{};
            try {
                owner = parse_pos(cols[1]);
            } catch (const symbol_error& e) {
                throw registry_error(where + e.what());
            }
            if (reg->_frames.size() >= 0xFFFF) {
                throw registry_error(where + "too many frames");
            }
            auto code = static_cast<uint16_t>(reg->_frames.size());
            add_names(reg->_frame_by_name, "frame", code);
            reg->_frames.push_back({code, owner, std::move(verbose), std::move(xtag)});
        } else if (cols[0] == "feature") {
            auto group = parse_feature_group(cols[1]);
            if (reg->_features.size() >= 0xFFFF) {
                throw registry_error(where + "too many features");
            }
            auto code = static_cast<uint16_t>(reg->_features.size());
            add_names(reg->_feature_by_name, "feature", code);
            reg->_features.push_back({code, group, std::move(verbose), std::move(xtag)});
        } else {
            throw registry_error(where + "unknown directive '" + std::string(cols[0]) + "'");
        }
        canonical += std::string(cols[0]) + '\t' + std::string(cols[1]) + '\t'
                     + std::string(cols[2]) + '\t' + std::string(cols[3]) + '\n';
    }
    if (!have_version) {
        throw registry_error("registry has no version line");
    }
    reg->_hash = detail::fnv1a64(canonical);
    return reg;
}

std::shared_ptr<const registry> registry::load(const std::string& path) {
    return parse(detail::read_file(path));
}

std::vector<const frame_info*> registry::frames_for(pos p) const {
    std::vector<const frame_info*> out;
    for (const auto& f : _frames) {
        if (f.owner == p) {
            out.push_back(&f);
        }
    }
    return out;
}

const frame_info* registry::find_frame(std::string_view name) const {
    auto it = _frame_by_name.find(std::string(name));
    return it == _frame_by_name.end() ? nullptr : &_frames[it->second];
}

const feature_info* registry::find_feature(std::string_view name) const {
    auto it = _feature_by_name.find(normalize_minus(name));
    return it == _feature_by_name.end() ? nullptr : &_features[it->second];
}

const frame_info& registry::frame(uint16_t code) const {
    if (code >= _frames.size()) {
        throw symbol_error("frame code " + std::to_string(code) + " is not registered");
    }
    return _frames[code];
}

const feature_info& registry::feature(uint16_t code) const {
    if (code >= _features.size()) {
        throw symbol_error("feature code " + std::to_string(code) + " is not registered");
    }
    return _features[code];
}

const std::string& registry::canonical_frame(std::string_view name) const {
    const auto* f = find_frame(name);
    if (!f) {
        throw symbol_error("unregistered frame '" + std::string(name) + "'");
    }
    return f->verbose_name;
}

const std::string& registry::canonical_feature(std::string_view name) const {
    const auto* f = find_feature(name);
    if (!f) {
        throw symbol_error("unregistered feature '" + std::string(name) + "'");
    }
    return f->verbose_name;
}

std::string registry::render_frame(std::string_view name, render_mode mode) const {
    const auto* f = find_frame(name);
    if (!f) {
        throw symbol_error("unregistered frame '" + std::string(name) + "'");
    }
    return mode == render_mode::verbose ? f->verbose_name : f->xtag_name;
}

std::string registry::render_feature(std::string_view name, render_mode mode) const {
    const auto* f = find_feature(name);
    if (!f) {
        throw symbol_error("unregistered feature '" + std::string(name) + "'");
    }
    return mode == render_mode::verbose ? f->verbose_name : f->xtag_name;
}

std::vector<const frame_info*> frames_for_pos(std::string_view name, const registry& reg) {
    pos p{};
    try {
        p = parse_pos(name);
    } catch (const symbol_error&) {
        throw symbol_error("unknown part of speech '" + std::string(name) + "'");
    }
    return reg.frames_for(p);
}

// ---------------------------------------------------------------------------
// entry validation

namespace {

void check_tokenlike(
  std::string_view field, std::string_view what, std::string_view s, std::vector<violation>& out) {
    if (s.empty()) {
        out.push_back({std::string(field), std::string(what) + " is empty"});
    } else if (detail::has_whitespace(s)) {
        out.push_back({std::string(field), std::string(what) + " '" + std::string(s) + "' contains whitespace"});
    }
}

} // namespace

std::vector<violation> validate_features(std::span<const std::string> fs, const registry& reg) {
    std::vector<violation> out;
    std::set<std::string> seen;
    std::map<feature_group, std::string> by_group;
    for (const auto& name : fs) {
        if (!seen.insert(name).second) {
            out.push_back({"FS", "duplicate feature '" + name + "'"});
            continue;
        }
        const auto* f = reg.find_feature(name);
        if (!f) {
            out.push_back({"FS", "feature not registered: " + name});
            continue;
        }
        if (f->verbose_name != name) {
            out.push_back({"FS", "feature '" + name + "' must use its verbose name " + f->verbose_name});
        }
        if (f->group == feature_group::other) {
            continue;
        }
        auto [it, fresh] = by_group.emplace(f->group, f->verbose_name);
        if (!fresh) {
            out.push_back(
              {"FS",
               "features '" + it->second + "' and '" + f->verbose_name + "' share group "
                 + std::string(feature_group_name(f->group))});
        }
    }
    return out;
}

std::vector<violation> validate_entry(const lex_entry& e, const registry& reg) {
    std::vector<violation> out;

    check_tokenlike("INDEX", "index", e.index, out);

    if (e.entry.empty()) {
        out.push_back({"ENTRY", "entry token list is empty"});
    }
    for (const auto& tok : e.entry) {
        check_tokenlike("ENTRY", "entry token", tok, out);
    }
    if (!e.index.empty() && !e.entry.empty()
        && std::find(e.entry.begin(), e.entry.end(), e.index) == e.entry.end()) {
        out.push_back({"INDEX", "index '" + e.index + "' is not one of the entry tokens"});
    }

    std::optional<pos> head;
    const auto& parts = e.pos.parts();
    if (parts.empty()) {
        out.push_back({"POS", "part of speech is empty"});
    } else if (!is_category(parts.front())) {
        out.push_back({"POS", "compound part of speech must be headed by a category"});
    } else {
        head = static_cast<pos>(parts.front());
        if (e.pos.compound()) {
            if (e.pos.arity() != e.entry.size()) {
                out.push_back(
                  {"POS",
                   "compound part of speech has " + std::to_string(e.pos.arity()) + " slots but entry has "
                     + std::to_string(e.entry.size()) + " tokens"});
            }
            for (std::size_t i = 1; i < parts.size(); ++i) {
                if (parts[i] == pos_symbol::verb_particle && *head != pos::verb) {
                    out.push_back({"POS", "Verb_Particle requires a Verb head"});
                }
            }
        }
    }

    if (e.frames.empty()) {
        out.push_back({"FRAME", "frames empty"});
    }
    std::set<std::string> seen_frames;
    for (const auto& name : e.frames) {
        if (!seen_frames.insert(name).second) {
            out.push_back({"FRAME", "duplicate frame '" + name + "'"});
            continue;
        }
        const auto* f = reg.find_frame(name);
        if (!f) {
            out.push_back({"FRAME", "frame not registered: " + name});
            continue;
        }
        if (f->verbose_name != name) {
            out.push_back({"FRAME", "frame '" + name + "' must use its verbose name " + f->verbose_name});
        }
        if (head && f->owner != *head) {
            out.push_back(
              {"FRAME",
               "frame not in POS registry: " + f->verbose_name + " belongs to "
                 + std::string(pos_name(f->owner)) + ", entry is " + std::string(pos_name(*head))});
        }
    }

    auto fs_violations = validate_features(e.fs, reg);
    out.insert(out.end(), fs_violations.begin(), fs_violations.end());

    for (const auto& s : e.ex) {
        if (s.empty()) {
            out.push_back({"EX", "example sentence is empty"});
        } else if (s.find_first_of("\t\r\n") != std::string::npos) {
            out.push_back({"EX", "example sentence contains a tab or line break"});
        }
    }
    return out;
}

void require_valid(const lex_entry& e, const registry& reg) {
    auto v = validate_entry(e, reg);
    if (!v.empty()) {
        throw validation_error(std::move(v));
    }
}

lex_entry canonicalize(lex_entry e, const registry& reg) {
    for (auto& f : e.frames) {
        if (const auto* info = reg.find_frame(f)) {
            f = info->verbose_name;
        }
    }
    for (auto& f : e.fs) {
        if (const auto* info = reg.find_feature(f)) {
            f = info->verbose_name;
        }
    }
    return e;
}

} // namespace synlex
