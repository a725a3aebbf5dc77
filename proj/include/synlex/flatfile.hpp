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

// ASCII "flat" lexicon format: one entry per line, tab separated labeled
// fields. See docs/flat-format.md for the grammar.
//
//   INDEX: map<TAB>ENTRY: map out<TAB>POS: Verb Verb_Particle<TAB>FRAME: Transitive_Verb_Particle

#include "synlex/lexmodel.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace synlex {

enum class severity { error, warning };

struct parse_diagnostic {
    std::size_t line;
    severity level;
    std::string message;
    /// Field label the diagnostic is about, empty for whole-line problems.
    std::string field;

    std::string str() const;
};

struct parse_result {
    std::vector<lex_entry> entries;
    std::vector<parse_diagnostic> diagnostics;

    bool has_errors() const;
};

/// Parses a whole flat file. Malformed lines are skipped and reported;
/// symbols may be given in verbose or xtag spelling and come back verbose.
/// Throws decode_error if `text` is not valid UTF-8.
parse_result parse_lexicon(std::string_view text, const registry& reg);

/// Parses one line (no trailing newline). Diagnostics carry line number
/// `lineno`. Returns nullopt for blank and comment lines or on error.
std::optional<lex_entry> parse_line(
  std::string_view line, std::size_t lineno, const registry& reg, std::vector<parse_diagnostic>& diags);

/// One line per entry, newline terminated. Throws validation_error naming the
/// first invalid entry.
std::string serialize_lexicon(
  const std::vector<lex_entry>& entries, const registry& reg, render_mode mode = render_mode::verbose);

std::string serialize_line(const lex_entry& e, const registry& reg, render_mode mode = render_mode::verbose);

parse_result load_lexicon(const std::string& path, const registry& reg);

} // namespace synlex
