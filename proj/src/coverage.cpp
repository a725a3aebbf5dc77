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

#include "synlex/coverage.hpp"

#include "detail.hpp"
#include "synlex/lexstore.hpp"
#include "synlex/morph.hpp"

#include <algorithm>
#include <array>

namespace synlex {

namespace {

constexpr std::array<std::string_view, 13> category_names = {
  "Adjective",
  "Adverb",
  "Complementizer",
  "Conjunction",
  "Determiner",
  "Noun",
  "Preposition",
  "Verb",
  "ProperNoun",
  "Number",
  "Genitive",
  "Ignore",
  "Other",
};

constexpr std::array<std::string_view, miss_category_count> miss_names = {
  "ProperNoun", "Noun", "Adjective", "Adverb", "Verb", "Other"};

// Column headings of the two report tables.
constexpr std::array<std::string_view, miss_category_count> miss_headings = {
  "Proper N", "Nouns", "Adj", "Adv", "Verbs", "Other"};

std::string pad_left(std::string_view s, std::size_t width) {
    std::string out;
    if (s.size() < width) {
        out.assign(width - s.size(), ' ');
    }
    out += s;
    return out;
}

std::string pad_right(std::string_view s, std::size_t width) {
    std::string out(s);
    if (out.size() < width) {
        out.append(width - out.size(), ' ');
    }
    return out;
}

/// Renders rows of cells; the first column is left aligned, the rest right
/// aligned, separated by three spaces.
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths;
    for (const auto& row : rows) {
        widths.resize(std::max(widths.size(), row.size()), 0);
        for (std::size_t i = 0; i < row.size(); ++i) {
            widths[i] = std::max(widths[i], row[i].size());
        }
    }
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                line += "   ";
                line += pad_left(row[i], widths[i]);
            } else {
                line += pad_right(row[i], widths[i]);
            }
        }
        while (!line.empty() && line.back() == ' ') {
            line.pop_back();
        }
        out += line;
        out += '\n';
    }
    return out;
}

// Wide enough for 100 * 10^places * part * 2 with 64-bit counts.
__extension__ using u128 = unsigned __int128;

} // namespace

std::string_view corpus_category_name(corpus_category c) {
    return category_names.at(static_cast<std::size_t>(c));
}

corpus_category parse_corpus_category(std::string_view text) {
    auto it = std::find(category_names.begin(), category_names.end(), text);
    if (it == category_names.end()) {
        throw tag_map_error("unknown corpus category '" + std::string(text) + "'");
    }
    return static_cast<corpus_category>(it - category_names.begin());
}

tag_map tag_map::parse(std::string_view text) {
    tag_map m;
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
        if (cols.size() != 2 || cols[0].empty()) {
            throw tag_map_error("line " + std::to_string(lineno) + ": expected tag<TAB>category");
        }
        auto category = parse_corpus_category(cols[1]);
        auto [it, inserted] = m._map.emplace(std::string(cols[0]), category);
        if (!inserted && it->second != category) {
            throw tag_map_error("line " + std::to_string(lineno) + ": tag '" + std::string(cols[0])
                                + "' is mapped twice");
        }
    }
    return m;
}

tag_map tag_map::load(const std::string& path) {
    return parse(detail::read_file(path));
}

corpus_category tag_map::category_of(std::string_view tag) const {
    auto it = _map.find(tag);
    if (it == _map.end()) {
        throw tag_map_error("corpus tag '" + std::string(tag) + "' is not in the tag map");
    }
    return it->second;
}

bool tag_map::contains(std::string_view tag) const {
    return _map.find(tag) != _map.end();
}

std::optional<pos> corpus_token::lexicon_pos() const noexcept {
    if (category == corpus_category::proper_noun) {
        return pos::noun;
    }
    if (static_cast<uint8_t>(category) <= static_cast<uint8_t>(pos::verb)) {
        return static_cast<pos>(category);
    }
    return std::nullopt;
}

corpus_token make_token(std::string surface, std::string tag, const tag_map& tags) {
    auto category = tags.category_of(tag);
    return {std::move(surface), std::move(tag), category};
}

std::vector<corpus_token> read_corpus(std::string_view text, const tag_map& tags) {
    if (auto bad = detail::first_invalid_utf8(text)) {
        throw decode_error(*bad, "corpus is not valid UTF-8");
    }
    std::vector<corpus_token> out;
    std::size_t lineno = 0;
    for (auto line : detail::split(text, '\n')) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        auto cols = detail::split(line, '\t');
        if (cols.size() != 2 || cols[0].empty() || cols[1].empty()) {
            throw coverage_error("corpus line " + std::to_string(lineno) + ": expected token<TAB>tag");
        }
        try {
            out.push_back(make_token(std::string(cols[0]), std::string(cols[1]), tags));
        } catch (const tag_map_error& e) {
            throw tag_map_error("corpus line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

bool is_removed_token(const corpus_token& t) {
    switch (t.category) {
    case corpus_category::number:
    case corpus_category::genitive:
    case corpus_category::ignore:
        return true;
    default:
        return detail::is_all_digits(t.surface);
    }
}

std::vector<corpus_token> clean_stream(std::vector<corpus_token> tokens) {
    std::erase_if(tokens, is_removed_token);
    return tokens;
}

bool is_hit(const corpus_token& t, const lex_store& store, const morph_table& morph) {
    auto category = t.lexicon_pos();
    if (!category) {
        return false;
    }
    auto has_entry = [&](const std::string& root) {
        for (const auto& e : store.lookup(root)) {
            if (e.pos.head() == *category) {
                return true;
            }
        }
        return false;
    };
    auto candidates = morph.roots_of(t.surface, *category);
    if (candidates.empty()) {
        return has_entry(t.surface);
    }
    return std::any_of(candidates.begin(), candidates.end(), [&](const auto& a) { return has_entry(a.root); });
}

std::string_view miss_category_name(miss_category c) {
    return miss_names.at(static_cast<std::size_t>(c));
}

miss_category miss_category_of(corpus_category c) {
    switch (c) {
    case corpus_category::proper_noun:
        return miss_category::proper_noun;
    case corpus_category::noun:
        return miss_category::noun;
    case corpus_category::adjective:
        return miss_category::adjective;
    case corpus_category::adverb:
        return miss_category::adverb;
    case corpus_category::verb:
        return miss_category::verb;
    default:
        return miss_category::other;
    }
}

void coverage_counts::add(miss_category c, bool hit) {
    ++total;
    if (hit) {
        ++hits;
    } else {
        ++misses.at(static_cast<std::size_t>(c));
    }
}

coverage_counts& coverage_counts::operator+=(const coverage_counts& o) {
    hits += o.hits;
    total += o.total;
    for (std::size_t i = 0; i < misses.size(); ++i) {
        misses[i] += o.misses[i];
    }
    return *this;
}

std::string decimal::str() const {
    std::string out = units < 0 ? "-" : "";
    auto mag = static_cast<uint64_t>(units < 0 ? -units : units);
    uint64_t scale = 1;
    for (int i = 0; i < places; ++i) {
        scale *= 10;
    }
    out += std::to_string(mag / scale);
    if (places > 0) {
        auto frac = std::to_string(mag % scale);
        out += '.';
        out += std::string(static_cast<std::size_t>(places) - frac.size(), '0');
        out += frac;
    }
    return out;
}

decimal percent_half_up(uint64_t part, uint64_t whole, int places) {
    if (whole == 0) {
        throw coverage_error("percentage of an empty total is undefined");
    }
    if (places < 0 || places > 6) {
        throw std::invalid_argument("percent_half_up: places out of range");
    }
    u128 scale = 100;
    for (int i = 0; i < places; ++i) {
        scale *= 10;
    }
    // round(part * scale / whole) with halves rounded up.
    u128 num = static_cast<u128>(part) * scale * 2 + whole;
    auto units = num / (static_cast<u128>(whole) * 2);
    return {static_cast<int64_t>(units), places};
}

std::vector<breakdown_row> missing_breakdown(const coverage_counts& counts) {
    std::vector<breakdown_row> out;
    auto non_hits = counts.non_hits();
    if (non_hits == 0) {
        return out;
    }
    for (std::size_t i = 0; i < miss_category_count; ++i) {
        out.push_back({static_cast<miss_category>(i), counts.misses[i], percent_half_up(counts.misses[i], non_hits, 1)});
    }
    return out;
}

coverage_report coverage_report::from_counts(std::string corpus, const coverage_counts& counts) {
    if (counts.total == 0) {
        throw coverage_error("corpus '" + corpus + "' has no tokens left after cleaning");
    }
    coverage_report r;
    r.corpus = std::move(corpus);
    r.hits = counts.hits;
    r.total = counts.total;
    r.non_hits = counts.non_hits();
    r.percent = percent_half_up(counts.hits, counts.total, 2);
    r.breakdown = missing_breakdown(counts);
    return r;
}

coverage_counts count_coverage(
  const std::vector<corpus_token>& cleaned, const lex_store& store, const morph_table& morph) {
    coverage_counts c;
    for (const auto& t : cleaned) {
        c.add(miss_category_of(t.category), is_hit(t, store, morph));
    }
    return c;
}

coverage_report make_coverage_report(
  std::string corpus, std::vector<corpus_token> tokens, const lex_store& store, const morph_table& morph) {
    auto cleaned = clean_stream(std::move(tokens));
    return coverage_report::from_counts(std::move(corpus), count_coverage(cleaned, store, morph));
}

std::string format_report_table(const std::vector<coverage_report>& reports) {
    std::vector<std::vector<std::string>> hits{{"Corpus", "Number of Hits", "Total # of Words", "Percent Hit"}};
    std::vector<std::vector<std::string>> misses{{"Corpus", "Number of Non-hits"}};
    for (auto h : miss_headings) {
        misses.front().emplace_back(h);
    }
    for (const auto& r : reports) {
        hits.push_back({r.corpus, std::to_string(r.hits), std::to_string(r.total), r.percent.str() + "%"});
        std::vector<std::string> row{r.corpus, std::to_string(r.non_hits)};
        for (std::size_t i = 0; i < miss_category_count; ++i) {
            row.push_back(r.breakdown.empty() ? "-" : r.breakdown[i].percent.str() + "%");
        }
        misses.push_back(std::move(row));
    }
    return render_table(hits) + "\n" + render_table(misses);
}

std::string format_report_kv(const coverage_report& r) {
    std::string out;
    out += "corpus=" + r.corpus + "\n";
    out += "hits=" + std::to_string(r.hits) + "\n";
    out += "total=" + std::to_string(r.total) + "\n";
    out += "percent=" + r.percent.str() + "\n";
    out += "non_hits=" + std::to_string(r.non_hits) + "\n";
    for (const auto& row : r.breakdown) {
        auto name = std::string(miss_category_name(row.category));
        out += "missing." + name + ".count=" + std::to_string(row.count) + "\n";
        out += "missing." + name + ".percent=" + row.percent.str() + "\n";
    }
    return out;
}

} // namespace synlex
