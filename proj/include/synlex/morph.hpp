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

#include "synlex/lexmodel.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace synlex {

class lex_store;

struct morph_analysis {
    std::string root;
    std::vector<std::string> features;

    auto operator<=>(const morph_analysis&) const = default;
    bool operator==(const morph_analysis&) const = default;
};

/// A (root, POS) pair that the table maps to but the lexicon lacks.
struct missing_root {
    std::string root;
    pos category;

    auto operator<=>(const missing_root&) const = default;
    bool operator==(const missing_root&) const = default;
};

/// Surface form -> root lookup table, loaded from a TSV file:
///
///   surface<TAB>pos<TAB>root[<TAB>feature,feature...]
///
/// Blank lines and '#' comments are ignored; duplicate rows collapse.
class morph_table {
public:
    static morph_table parse(std::string_view text);
    static morph_table load(const std::string& path);

    /// Number of distinct rows.
    std::size_t size() const noexcept;
    bool empty() const noexcept { return size() == 0; }

    /// Explicit analyses of (surface, category), plus the identity analysis
    /// when `surface` is itself listed as a root of that category. Empty when
    /// the form is unknown.
    std::set<morph_analysis> roots_of(std::string_view surface, pos category) const;

    /// Every distinct (root, POS) target of the table.
    std::set<missing_root> targets() const;

private:
    std::map<std::pair<std::string, pos>, std::set<morph_analysis>, std::less<>> _rows;
    std::set<std::pair<std::string, pos>, std::less<>> _roots;
};

/// Mapping targets whose root has no entry with that head POS in `store`.
std::vector<missing_root> check_superset(const morph_table& table, const lex_store& store);

} // namespace synlex
