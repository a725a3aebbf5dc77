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

// Corpus coverage: how many word occurrences of a POS-tagged corpus have
// their root in the lexicon under the tagged category, and which categories
// the misses fall into.

#include "synlex/lexmodel.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace synlex {

class lex_store;
class morph_table;

/// What a corpus tag maps to. The first eight values mirror `pos`.
enum class corpus_category : uint8_t {
    adjective,
    adverb,
    complementizer,
    conjunction,
    determiner,
    noun,
    preposition,
    verb,
    proper_noun,
    number,   // removed by clean_stream
    genitive, // removed by clean_stream
    ignore,   // punctuation and other non-words; removed by clean_stream
    other,    // counted, never a hit
};

std::string_view corpus_category_name(corpus_category c);
corpus_category parse_corpus_category(std::string_view text);

/// Corpus tagset -> category. File format: `tag<TAB>category` per line,
/// '#' comments and blank lines ignored.
class tag_map {
public:
    static tag_map parse(std::string_view text);
    static tag_map load(const std::string& path);

    /// Throws tag_map_error naming the tag when it is not mapped.
    corpus_category category_of(std::string_view tag) const;
    bool contains(std::string_view tag) const;
    std::size_t size() const noexcept { return _map.size(); }

private:
    std::map<std::string, corpus_category, std::less<>> _map;
};

struct corpus_token {
    std::string surface;
    std::string tag;
    corpus_category category = corpus_category::other;

    bool proper_noun() const noexcept { return category == corpus_category::proper_noun; }
    /// Lexicon category the token is looked up under; proper nouns use Noun.
    std::optional<pos> lexicon_pos() const noexcept;

    bool operator==(const corpus_token&) const = default;
};

/// Builds a token, resolving the tag. Throws tag_map_error.
corpus_token make_token(std::string surface, std::string tag, const tag_map& tags);

/// Reads `surface<TAB>tag` lines; blank lines separate sentences and are
/// skipped. Throws tag_map_error for unmapped tags or malformed lines.
std::vector<corpus_token> read_corpus(std::string_view text, const tag_map& tags);

/// True for tokens clean_stream removes: numbers (by tag or all-digit
/// surface), genitive markers, and ignored tags.
bool is_removed_token(const corpus_token& t);

/// Drops numbers, genitive markers and ignored tokens; keeps everything else
/// in order, duplicates included.
std::vector<corpus_token> clean_stream(std::vector<corpus_token> tokens);

/// A token is a hit when some root candidate of its surface form has a
/// lexicon entry headed by the token's category. With no morphology analysis
/// the surface itself is tried. Frames are not checked.
bool is_hit(const corpus_token& t, const lex_store& store, const morph_table& morph);

/// Categories the misses are broken down into.
enum class miss_category : uint8_t { proper_noun, noun, adjective, adverb, verb, other };
inline constexpr std::size_t miss_category_count = 6;
std::string_view miss_category_name(miss_category c);
miss_category miss_category_of(corpus_category c);

/// Additive counters; partial counts over corpus slices can be merged in any order.
struct coverage_counts {
    uint64_t hits = 0;
    uint64_t total = 0;
    std::array<uint64_t, miss_category_count> misses{};

    uint64_t non_hits() const noexcept { return total - hits; }
    void add(miss_category c, bool hit);
    coverage_counts& operator+=(const coverage_counts& o);
    bool operator==(const coverage_counts&) const = default;
};

/// Fixed-point decimal: value = units / 10^places.
struct decimal {
    int64_t units = 0;
    int places = 0;

    std::string str() const;
    bool operator==(const decimal&) const = default;
};

/// 100 * part / whole rounded half-up to `places` decimals, in exact integer
/// arithmetic. `whole` must be non-zero.
decimal percent_half_up(uint64_t part, uint64_t whole, int places);

struct breakdown_row {
    miss_category category;
    uint64_t count;
    decimal percent; // one decimal

    bool operator==(const breakdown_row&) const = default;
};

/// Share of the misses per category, in miss_category order. Empty when
/// there are no misses.
std::vector<breakdown_row> missing_breakdown(const coverage_counts& counts);

struct coverage_report {
    std::string corpus;
    uint64_t hits = 0;
    uint64_t total = 0;
    uint64_t non_hits = 0;
    decimal percent; // two decimals
    std::vector<breakdown_row> breakdown;

    /// Throws coverage_error when total is zero.
    static coverage_report from_counts(std::string corpus, const coverage_counts& counts);
};

coverage_counts count_coverage(
  const std::vector<corpus_token>& cleaned, const lex_store& store, const morph_table& morph);

/// Cleans `tokens`, counts hits and builds the report. Throws coverage_error
/// when nothing is left after cleaning.
coverage_report make_coverage_report(
  std::string corpus, std::vector<corpus_token> tokens, const lex_store& store, const morph_table& morph);

/// Hit table followed by the miss breakdown table, columns aligned.
std::string format_report_table(const std::vector<coverage_report>& reports);
/// `key=value` lines for scripts.
std::string format_report_kv(const coverage_report& r);

} // namespace synlex
