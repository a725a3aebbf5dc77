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

// Brute-force coverage tally over the raw data files. Deliberately shares no
// code with the library: files are split by hand, lookups are linear scans,
// and percentages are computed in long arithmetic on decimal strings.

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace synlex::test::oracle {

inline std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        lines.push_back(line);
    }
    return lines;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

/// (index, head POS name) for every lexicon line.
inline std::vector<std::pair<std::string, std::string>> lexicon_heads(const std::string& flat_path) {
    static const std::map<std::string, std::string> xtag_heads = {
      {"A", "Adjective"}, {"Ad", "Adverb"}, {"Comp", "Complementizer"}, {"Conj", "Conjunction"},
      {"D", "Determiner"}, {"N", "Noun"}, {"P", "Preposition"}, {"V", "Verb"},
    };
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& line : read_lines(flat_path)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::string index;
        std::string head;
        for (const auto& field : split(line, '\t')) {
            if (field.rfind("INDEX: ", 0) == 0) {
                index = field.substr(7);
            } else if (field.rfind("POS: ", 0) == 0) {
                head = split(field.substr(5), ' ')[0];
                if (auto it = xtag_heads.find(head); it != xtag_heads.end()) {
                    head = it->second;
                }
            }
        }
        out.emplace_back(index, head);
    }
    return out;
}

struct morph_row {
    std::string surface;
    std::string pos;
    std::string root;
};

inline std::vector<morph_row> morph_rows(const std::string& path) {
    std::vector<morph_row> out;
    for (const auto& line : read_lines(path)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        auto cols = split(line, '\t');
        out.push_back({cols.at(0), cols.at(1), cols.at(2)});
    }
    return out;
}

inline std::map<std::string, std::string> tag_categories(const std::string& path) {
    std::map<std::string, std::string> out;
    for (const auto& line : read_lines(path)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        auto cols = split(line, '\t');
        out[cols.at(0)] = cols.at(1);
    }
    return out;
}

struct tally {
    uint64_t hits = 0;
    uint64_t total = 0;
    // ProperNoun, Noun, Adjective, Adverb, Verb, Other
    std::array<uint64_t, 6> misses{};
};

inline tally count(
  const std::string& corpus_path,
  const std::string& lexicon_path,
  const std::string& morph_path,
  const std::string& tagmap_path) {
    const auto heads = lexicon_heads(lexicon_path);
    const auto rows = morph_rows(morph_path);
    const auto tags = tag_categories(tagmap_path);
    const std::set<std::string> word_categories = {"Adjective", "Adverb", "Complementizer", "Conjunction",
                                                   "Determiner", "Noun", "Preposition", "Verb"};

    auto in_lexicon = [&](const std::string& root, const std::string& pos) {
        return std::any_of(heads.begin(), heads.end(), [&](const auto& h) { return h.first == root && h.second == pos; });
    };

    tally t;
    for (const auto& line : read_lines(corpus_path)) {
        if (line.empty()) {
            continue;
        }
        auto cols = split(line, '\t');
        const auto& surface = cols.at(0);
        const auto& category = tags.at(cols.at(1));
        bool digits = !surface.empty() && std::all_of(surface.begin(), surface.end(), [](char c) {
            return c >= '0' && c <= '9';
        });
        if (category == "Number" || category == "Genitive" || category == "Ignore" || digits) {
            continue;
        }
        ++t.total;
        bool hit = false;
        if (category != "Other") {
            const std::string pos = category == "ProperNoun" ? "Noun" : category;
            if (word_categories.count(pos)) {
                std::vector<std::string> candidates;
                for (const auto& r : rows) {
                    if (r.pos == pos && r.surface == surface) {
                        candidates.push_back(r.root);
                    }
                    if (r.pos == pos && r.root == surface) {
                        candidates.push_back(surface);
                    }
                }
                if (candidates.empty()) {
                    candidates.push_back(surface);
                }
                for (const auto& c : candidates) {
                    hit = hit || in_lexicon(c, pos);
                }
            }
        }
        if (hit) {
            ++t.hits;
            continue;
        }
        static const std::map<std::string, std::size_t> slot = {
          {"ProperNoun", 0}, {"Noun", 1}, {"Adjective", 2}, {"Adverb", 3}, {"Verb", 4},
        };
        auto it = slot.find(category);
        ++t.misses[it == slot.end() ? 5 : it->second];
    }
    return t;
}

/// 100 * part / whole, half-up to `places` decimals, by schoolbook long
/// division on decimal digits.
inline std::string percent(uint64_t part, uint64_t whole, int places) {
    // Compute floor(part * 100 * 10^(places+1) / whole) digit by digit.
    std::string digits;
    uint64_t rem = 0;
    std::string numerator = std::to_string(part) + "00" + std::string(static_cast<std::size_t>(places) + 1, '0');
    for (char c : numerator) {
        rem = rem * 10 + static_cast<uint64_t>(c - '0');
        digits += static_cast<char>('0' + rem / whole);
        rem %= whole;
    }
    // Round on the extra digit, then drop it.
    bool up = digits.back() >= '5';
    digits.pop_back();
    if (up) {
        int i = static_cast<int>(digits.size()) - 1;
        while (i >= 0 && digits[static_cast<std::size_t>(i)] == '9') {
            digits[static_cast<std::size_t>(i)] = '0';
            --i;
        }
        if (i < 0) {
            digits.insert(digits.begin(), '1');
        } else {
            ++digits[static_cast<std::size_t>(i)];
        }
    }
    auto first = digits.find_first_not_of('0');
    auto int_len = digits.size() - static_cast<std::size_t>(places);
    std::string int_part = digits.substr(0, int_len);
    int_part = (first == std::string::npos || first >= int_len) ? "0" : int_part.substr(first);
    return places == 0 ? int_part : int_part + "." + digits.substr(int_len);
}

} // namespace synlex::test::oracle
