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

#include "synlex/error.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace synlex {

/// The eight lexical categories. The numeric values are the on-disk POS
/// codes and must never be renumbered.
enum class pos : uint8_t {
    adjective = 0,
    adverb = 1,
    complementizer = 2,
    conjunction = 3,
    determiner = 4,
    noun = 5,
    preposition = 6,
    verb = 7,
};

inline constexpr std::size_t base_pos_count = 8;

inline constexpr std::array<pos, base_pos_count> all_pos = {
  pos::adjective,
  pos::adverb,
  pos::complementizer,
  pos::conjunction,
  pos::determiner,
  pos::noun,
  pos::preposition,
  pos::verb,
};

/// One slot of a POS tag. Besides the eight categories, a compound tag may
/// carry the particle label in a non-head position (`Verb Verb_Particle`).
enum class pos_symbol : uint8_t {
    adjective = 0,
    adverb = 1,
    complementizer = 2,
    conjunction = 3,
    determiner = 4,
    noun = 5,
    preposition = 6,
    verb = 7,
    verb_particle = 8,
};

inline constexpr uint8_t pos_symbol_count = 9;

enum class render_mode { verbose, xtag };

/// Parses "verbose" / "xtag".
render_mode parse_render_mode(std::string_view text);

std::string_view pos_name(pos p, render_mode mode = render_mode::verbose);
std::string_view pos_symbol_name(pos_symbol s, render_mode mode = render_mode::verbose);

/// Accepts the verbose or xtag spelling. Throws symbol_error otherwise.
pos parse_pos(std::string_view text);
pos_symbol parse_pos_symbol(std::string_view text);

constexpr pos_symbol to_symbol(pos p) { return static_cast<pos_symbol>(p); }
constexpr bool is_category(pos_symbol s) { return s != pos_symbol::verb_particle; }

/// Part-of-speech tag of an entry: a single category, or a compound with one
/// slot per ENTRY token. The head (first slot) is always a category.
class pos_tag {
public:
    pos_tag() = default;
    pos_tag(pos p) : _parts{to_symbol(p)} {} // NOLINT(google-explicit-constructor)
    explicit pos_tag(std::vector<pos_symbol> parts) : _parts(std::move(parts)) {}

    /// Space separated slots, e.g. "Verb Verb_Particle" or "V PL".
    static pos_tag parse(std::string_view text);

    const std::vector<pos_symbol>& parts() const noexcept { return _parts; }
    std::size_t arity() const noexcept { return _parts.size(); }
    bool compound() const noexcept { return _parts.size() > 1; }
    bool empty() const noexcept { return _parts.empty(); }

    /// Throws if the tag is empty or headed by the particle label.
    pos head() const;

    std::string str(render_mode mode = render_mode::verbose, char sep = ' ') const;

    auto operator<=>(const pos_tag&) const = default;
    bool operator==(const pos_tag&) const = default;

private:
    std::vector<pos_symbol> _parts;
};

enum class feature_group : uint8_t {
    wh,
    reflexive,
    number,
    complement,
    ergativity,
    aux_form,
    aux_goes_on,
    other,
};

std::string_view feature_group_name(feature_group g);
feature_group parse_feature_group(std::string_view text);

struct frame_info {
    uint16_t code;
    pos owner;
    std::string verbose_name;
    std::string xtag_name;
};

struct feature_info {
    uint16_t code;
    feature_group group;
    std::string verbose_name;
    std::string xtag_name;
};

/// Catalog of legal frames (per POS) and feature values with their verbose
/// and xtag spellings. Codes follow the order of the data file. Immutable once
/// built; share it through `std::shared_ptr<const registry>`.
class registry {
public:
    /// Parses the registry data file format (see docs/registry-format.md).
    static std::shared_ptr<const registry> parse(std::string_view text);
    static std::shared_ptr<const registry> load(const std::string& path);

    /// The registry shipped in data/registry.tsv, compiled into the library.
    static std::shared_ptr<const registry> builtin();

    uint32_t version() const noexcept { return _version; }
    /// FNV-1a 64 over the version and directive lines; comments do not count.
    uint64_t hash() const noexcept { return _hash; }
    const std::string& source_text() const noexcept { return _text; }

    std::span<const frame_info> frames() const noexcept { return _frames; }
    std::span<const feature_info> features() const noexcept { return _features; }

    /// Registry order for one category. Stable across calls.
    std::vector<const frame_info*> frames_for(pos p) const;

    /// Lookup by either spelling.
    const frame_info* find_frame(std::string_view name) const;
    const feature_info* find_feature(std::string_view name) const;

    const frame_info& frame(uint16_t code) const;
    const feature_info& feature(uint16_t code) const;

    /// Canonical verbose spelling of a frame/feature given either spelling.
    /// Throws symbol_error for unknown names.
    const std::string& canonical_frame(std::string_view name) const;
    const std::string& canonical_feature(std::string_view name) const;

    std::string render_frame(std::string_view name, render_mode mode) const;
    std::string render_feature(std::string_view name, render_mode mode) const;

private:
    registry() = default;

    uint32_t _version = 0;
    uint64_t _hash = 0;
    std::string _text;
    std::vector<frame_info> _frames;
    std::vector<feature_info> _features;
    std::unordered_map<std::string, uint16_t> _frame_by_name;
    std::unordered_map<std::string, uint16_t> _feature_by_name;
};

/// frames_for_pos over the builtin registry, by POS symbol name.
std::vector<const frame_info*> frames_for_pos(std::string_view pos_name, const registry& reg);

/// One database record. Frame and feature symbols are held by their verbose
/// names; `validate_entry` checks them against a registry.
struct lex_entry {
    std::string index;
    std::vector<std::string> entry;
    pos_tag pos;
    std::vector<std::string> frames;
    std::vector<std::string> fs;
    std::vector<std::string> ex;

    bool operator==(const lex_entry&) const = default;
    auto operator<=>(const lex_entry&) const = default;
};

/// Every violated invariant, each naming its field. Empty means valid.
std::vector<violation> validate_entry(const lex_entry& e, const registry& reg);

/// Throws validation_error when validate_entry reports anything.
void require_valid(const lex_entry& e, const registry& reg);

/// Rewrites POS/FRAME/FS symbols given in either spelling to verbose names.
/// Unknown symbols are left untouched for validate_entry to report.
lex_entry canonicalize(lex_entry e, const registry& reg);

/// Checks a feature list on its own: registered, duplicate-free, at most one
/// value per group (the `other` group is exempt).
std::vector<violation> validate_features(std::span<const std::string> fs, const registry& reg);

} // namespace synlex
