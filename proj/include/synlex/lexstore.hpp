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

// Persistent lexicon store.
//
// A store is one file: a fixed header, the registry the codes were assigned
// from, an append-only record log, and (after a clean close) a snapshot of
// the hash index. Entries are filed under their INDEX key; all entries that
// share a key come back from a single bucket probe. The index is rebuilt by
// replaying the log whenever the snapshot is missing or stale.
//
// The exact byte layout is in docs/store-format.md.
//
// Thread safety: const member functions may run concurrently with each other.
// Mutations need exclusive access to the handle.

#include "synlex/codec.hpp"
#include "synlex/lexmodel.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace synlex {

enum class open_mode { read_only, read_write };

inline constexpr uint32_t store_format_version = 1;

/// Stable reference to a live record: its byte offset in the log. Compaction
/// renumbers references (and bumps the mutation counter).
struct record_ref {
    uint64_t offset = 0;

    auto operator<=>(const record_ref&) const = default;
};

struct stored_entry {
    record_ref ref;
    lex_entry entry;

    bool operator==(const stored_entry&) const = default;
};

struct pos_census {
    uint64_t entries = 0;
    uint64_t distinct_indexes = 0;

    bool operator==(const pos_census&) const = default;
};

/// Entry counts keyed by the full POS tag (a compound tag is its own key).
struct store_census {
    uint64_t total = 0;
    std::map<pos_tag, pos_census> by_pos;

    /// Zero when `tag` has no entries.
    pos_census of(const pos_tag& tag) const;

    bool operator==(const store_census&) const = default;
};

struct verify_report {
    uint64_t records = 0;
    uint64_t puts = 0;
    uint64_t deletes = 0;
    uint64_t replaces = 0;
    uint64_t live = 0;
    std::vector<std::string> problems;

    bool ok() const noexcept { return problems.empty(); }
};

struct store_options {
    /// Initial bucket directory size for a new store; rounded up to a power of two.
    uint32_t initial_buckets = 64;
};

class lex_store {
public:
    /// Opens `path`. In read_write mode a missing file is created empty.
    /// Throws io_error, integrity_error, version_error, registry_mismatch_error.
    static lex_store open(
      const std::string& path,
      open_mode mode,
      std::shared_ptr<const registry> reg = registry::builtin(),
      store_options opts = {});

    lex_store(lex_store&&) noexcept;
    lex_store& operator=(lex_store&&) noexcept;
    lex_store(const lex_store&) = delete;
    lex_store& operator=(const lex_store&) = delete;
    /// Checkpoints a read-write store. Errors are swallowed; call close() to see them.
    ~lex_store();

    /// Writes the index snapshot and header, syncs, and releases the file.
    void close();
    /// Writes the index snapshot and header without closing.
    void flush();
    bool is_open() const noexcept;

    /// Throws validation_error, duplicate_error (identical entry present),
    /// read_only_error.
    record_ref put(const lex_entry& e);
    /// Throws not_found_error when no identical entry is stored.
    void remove(const lex_entry& e);
    /// Removes `old_entry` and stores `new_entry` as one log record.
    record_ref replace(const lex_entry& old_entry, const lex_entry& new_entry);

    /// Every entry filed under `index`, in insertion order.
    std::vector<lex_entry> lookup(std::string_view index) const;
    std::vector<stored_entry> lookup_refs(std::string_view index) const;
    bool contains(const lex_entry& e) const;

    /// All live entries in insertion order.
    std::vector<lex_entry> scan() const;
    void for_each(const std::function<void(const stored_entry&)>& fn) const;
    /// Like for_each but hands out undecoded payloads.
    void for_each_encoded(const std::function<void(record_ref, const encoded_view&)>& fn) const;
    lex_entry read(record_ref ref) const;

    store_census census() const;
    uint64_t size() const noexcept;
    bool empty() const noexcept { return size() == 0; }

    /// Incremented by every successful mutation and by compaction; persisted.
    uint64_t mutation_count() const noexcept;
    /// Number of hash-bucket probes served since open.
    uint64_t probe_count() const noexcept;

    uint32_t bucket_count() const noexcept;
    const std::string& path() const noexcept;
    open_mode mode() const noexcept;
    const registry& reg() const noexcept;
    std::shared_ptr<const registry> registry_ptr() const noexcept;

    /// Re-reads the whole log, checking every checksum and replaying it
    /// against the in-memory index.
    verify_report verify() const;

    /// Rewrites the file with only live records, in insertion order.
    void compact();

private:
    struct impl;
    explicit lex_store(std::unique_ptr<impl> p);
    std::unique_ptr<impl> _impl;
};

} // namespace synlex
