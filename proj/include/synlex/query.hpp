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
#include "synlex/lexstore.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace synlex {

/// Searchable fields. EX is deliberately absent.
enum class field { index, entry, pos, frame, fs };

std::string_view field_label(field f);

/// Only exact, case-sensitive equality exists today.
enum class relation { equals };

/// INDEX and POS compare the whole field; ENTRY, FRAME and FS match when the
/// value equals any member of the entry's list.
struct field_predicate {
    field target;
    std::string value;
    relation rel = relation::equals;

    bool operator==(const field_predicate&) const = default;
};

/// A non-empty conjunction. INDEX, ENTRY and POS may appear at most once;
/// FRAME and FS may repeat and must all hold.
class query {
public:
    query() = default;
    explicit query(std::vector<field_predicate> preds);

    /// `FIELD=value` conjuncts separated by whitespace, e.g. "POS=Noun FS=wh+".
    /// A compound POS is written with '+': "POS=Verb+Verb_Particle".
    /// Throws query_error; EX predicates are rejected.
    static query parse(std::string_view text);

    const std::vector<field_predicate>& predicates() const noexcept { return _preds; }
    /// Throws query_error if the conjunction is empty or repeats a single-valued field.
    void check() const;

    std::optional<std::string> index_key() const;
    std::string str() const;

    bool operator==(const query&) const = default;

private:
    std::vector<field_predicate> _preds;
};

/// Matches at the lex_entry level; the reference semantics for eval_query.
bool matches(const lex_entry& e, const query& q, const registry& reg);

class result_set {
public:
    const std::vector<stored_entry>& rows() const noexcept { return _rows; }
    std::vector<lex_entry> entries() const;
    std::size_t size() const noexcept { return _rows.size(); }
    bool empty() const noexcept { return _rows.empty(); }
    const query& origin() const noexcept { return _origin; }
    /// Store mutation counter at evaluation time.
    uint64_t generation() const noexcept { return _generation; }

    bool stale(const lex_store& store) const noexcept;
    void require_fresh(const lex_store& store) const;

    // Browsing cursor. Moves clamp at both ends.
    std::size_t cursor() const noexcept { return _cursor; }
    const stored_entry* current() const noexcept;
    bool next() noexcept;
    bool previous() noexcept;
    void select(std::size_t i);

private:
    friend result_set eval_query(const lex_store& store, const query& q);

    std::vector<stored_entry> _rows;
    query _origin;
    uint64_t _generation = 0;
    std::size_t _cursor = 0;
};

/// Entries satisfying every predicate, in store order. A query with an INDEX
/// predicate is answered from one bucket probe; the rest scan the store and
/// compare POS/FRAME/FS codes without decoding non-matching records.
/// Throws query_error for unknown symbols.
result_set eval_query(const lex_store& store, const query& q);

/// Writes the results as a flat file. Throws stale_result_error, io_error.
void export_results(
  const result_set& rs, const lex_store& store, const std::string& path, render_mode mode = render_mode::verbose);

/// Deletes every entry of `rs`; returns how many were removed.
/// Throws stale_result_error when the store changed since evaluation.
std::size_t bulk_delete(lex_store& store, const result_set& rs);

/// Labeled multi-line block, one frame (and one example) per line after the
/// first on indented continuation lines:
///
///   INDEX: map
///   ENTRY: map
///   POS: Noun
///   FRAME: Base_Noun
///          Noun_Determiner_required
///   FS: wh-, reflexive-
///
/// Empty FS/EX fields are omitted. xtag mode changes only symbol spellings.
std::string render_entry(const lex_entry& e, const registry& reg, render_mode mode);

} // namespace synlex
