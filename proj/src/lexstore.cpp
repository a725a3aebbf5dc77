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

#include "synlex/lexstore.hpp"

#include "detail.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cerrno>
#include <cstring>
#include <filesystem>
#include <set>
#include <unordered_map>

namespace synlex {

namespace {

constexpr std::string_view file_magic = "SYNLEXDB";
constexpr std::string_view snapshot_magic = "SLIX";
constexpr std::size_t header_size = 64;
constexpr std::size_t record_header_size = 12;
constexpr uint32_t max_load_factor = 2;

enum class record_kind : uint8_t { put = 1, remove = 2, replace = 3 };

void put_u32(std::string& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
}

void put_u64(std::string& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
}

uint32_t get_u32(std::string_view in, std::size_t at) {
    uint32_t v = 0;
    for (int i = 3; i >= 0; --i) {
        v = (v << 8) | static_cast<uint8_t>(in[at + i]);
    }
    return v;
}

uint64_t get_u64(std::string_view in, std::size_t at) {
    uint64_t v = 0;
    for (int i = 7; i >= 0; --i) {
        v = (v << 8) | static_cast<uint8_t>(in[at + i]);
    }
    return v;
}

struct file_header {
    uint32_t version = store_format_version;
    uint32_t bucket_count = 0;
    uint64_t registry_hash = 0;
    uint64_t entry_count = 0;
    uint64_t log_end = 0;
    uint64_t index_offset = 0;
    uint64_t mutation_count = 0;
};

std::string encode_header(const file_header& h) {
    std::string out(file_magic);
    put_u32(out, h.version);
    put_u32(out, h.bucket_count);
    put_u64(out, h.registry_hash);
    put_u64(out, h.entry_count);
    put_u64(out, h.log_end);
    put_u64(out, h.index_offset);
    put_u64(out, h.mutation_count);
    put_u32(out, 0);
    put_u32(out, detail::crc32(out));
    return out;
}

file_header decode_header(std::string_view in, const std::string& path) {
    if (in.size() < header_size) {
        throw integrity_error(path + ": file is truncated (" + std::to_string(in.size()) + " bytes, header needs 64)");
    }
    if (in.substr(0, 8) != file_magic) {
        throw integrity_error(path + ": not a synlex store (bad magic)");
    }
    if (get_u32(in, 60) != detail::crc32(in.substr(0, 60))) {
        throw integrity_error(path + ": header checksum mismatch");
    }
    file_header h;
    h.version = get_u32(in, 8);
    if (h.version != store_format_version) {
        throw version_error(h.version, store_format_version);
    }
    h.bucket_count = get_u32(in, 12);
    h.registry_hash = get_u64(in, 16);
    h.entry_count = get_u64(in, 24);
    h.log_end = get_u64(in, 32);
    h.index_offset = get_u64(in, 40);
    h.mutation_count = get_u64(in, 48);
    if (h.bucket_count == 0 || !std::has_single_bit(h.bucket_count)) {
        throw integrity_error(path + ": bucket count " + std::to_string(h.bucket_count) + " is not a power of two");
    }
    return h;
}

std::string hex64(uint64_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

class file_handle {
public:
    file_handle() = default;
    file_handle(const std::string& path, int flags)
      : _path(path) {
        _fd = ::open(path.c_str(), flags | O_CLOEXEC, 0644);
        if (_fd < 0) {
            throw io_error("cannot open " + path + ": " + std::strerror(errno));
        }
    }
    file_handle(file_handle&& o) noexcept
      : _fd(std::exchange(o._fd, -1))
      , _path(std::move(o._path)) {}
    file_handle& operator=(file_handle&& o) noexcept {
        if (this != &o) {
            reset();
            _fd = std::exchange(o._fd, -1);
            _path = std::move(o._path);
        }
        return *this;
    }
    file_handle(const file_handle&) = delete;
    file_handle& operator=(const file_handle&) = delete;
    ~file_handle() { reset(); }

    void reset() noexcept {
        if (_fd >= 0) {
            ::close(_fd);
            _fd = -1;
        }
    }

    bool valid() const noexcept { return _fd >= 0; }

    uint64_t size() const {
        struct stat st {};
        if (::fstat(_fd, &st) != 0) {
            throw io_error("stat " + _path + ": " + std::strerror(errno));
        }
        return static_cast<uint64_t>(st.st_size);
    }

    /// Reads up to `n` bytes; fewer only at end of file.
    std::string read_at(uint64_t off, std::size_t n) const {
        std::string buf(n, '\0');
        std::size_t got = 0;
        while (got < n) {
            auto r = ::pread(_fd, buf.data() + got, n - got, static_cast<off_t>(off + got));
            if (r < 0) {
                if (errno == EINTR) {
                    continue;
                }
                throw io_error("read " + _path + ": " + std::strerror(errno));
            }
            if (r == 0) {
                break;
            }
            got += static_cast<std::size_t>(r);
        }
        buf.resize(got);
        return buf;
    }

    void write_at(uint64_t off, std::string_view bytes) {
        std::size_t done = 0;
        while (done < bytes.size()) {
            auto r = ::pwrite(_fd, bytes.data() + done, bytes.size() - done, static_cast<off_t>(off + done));
            if (r < 0) {
                if (errno == EINTR) {
                    continue;
                }
                throw io_error("write " + _path + ": " + std::strerror(errno));
            }
            done += static_cast<std::size_t>(r);
        }
    }

    void truncate(uint64_t len) {
        if (::ftruncate(_fd, static_cast<off_t>(len)) != 0) {
            throw io_error("truncate " + _path + ": " + std::strerror(errno));
        }
    }

    void sync() {
        if (::fsync(_fd) != 0) {
            throw io_error("fsync " + _path + ": " + std::strerror(errno));
        }
    }

    void lock_exclusive() {
        if (::flock(_fd, LOCK_EX | LOCK_NB) != 0) {
            throw io_error(_path + " is locked by another writer");
        }
    }

private:
    int _fd = -1;
    std::string _path;
};

struct slot {
    uint64_t hash;
    uint64_t offset;
};

uint64_t key_hash(std::string_view key) {
    return detail::fnv1a64(key);
}

std::string frame_record(record_kind kind, std::string_view payload) {
    std::string out;
    out.reserve(record_header_size + payload.size());
    out.push_back(static_cast<char>(kind));
    out.append(3, '\0');
    put_u32(out, static_cast<uint32_t>(payload.size()));
    put_u32(out, detail::crc32(payload));
    out.append(payload);
    return out;
}

struct replace_parts {
    std::string_view old_payload;
    std::string_view new_payload;
};

replace_parts split_replace(std::string_view payload) {
    std::size_t pos = 0;
    auto len = varint::get(payload, pos);
    if (len > payload.size() - pos) {
        throw integrity_error("replace record: old entry length exceeds payload");
    }
    return {payload.substr(pos, len), payload.substr(pos + len)};
}

/// Payload of the entry a live record refers to.
std::string_view live_payload(record_kind kind, std::string_view payload) {
    return kind == record_kind::replace ? split_replace(payload).new_payload : payload;
}

/// A record parsed in place out of a buffer.
struct parsed_record {
    record_kind kind;
    std::string_view payload;
    std::size_t total; // header + payload
};

/// nullopt when the bytes at `at` do not form a complete, checksummed record.
std::optional<parsed_record> parse_record(std::string_view buf, std::size_t at, std::string* why = nullptr) {
    auto fail = [&](const char* msg) -> std::optional<parsed_record> {
        if (why) {
            *why = msg;
        }
        return std::nullopt;
    };
    if (buf.size() - at < record_header_size) {
        return fail("record header is truncated");
    }
    auto kind = static_cast<uint8_t>(buf[at]);
    if (kind < 1 || kind > 3) {
        return fail("unknown record kind");
    }
    if (buf[at + 1] != 0 || buf[at + 2] != 0 || buf[at + 3] != 0) {
        return fail("reserved record bytes are not zero");
    }
    auto len = get_u32(buf, at + 4);
    if (buf.size() - at - record_header_size < len) {
        return fail("record payload is truncated");
    }
    auto payload = buf.substr(at + record_header_size, len);
    if (detail::crc32(payload) != get_u32(buf, at + 8)) {
        return fail("record checksum mismatch");
    }
    return parsed_record{static_cast<record_kind>(kind), payload, record_header_size + len};
}

uint32_t round_up_pow2(uint32_t v) {
    return v <= 1 ? 1 : std::bit_ceil(v);
}

} // namespace

pos_census store_census::of(const pos_tag& tag) const {
    auto it = by_pos.find(tag);
    return it == by_pos.end() ? pos_census{} : it->second;
}

struct lex_store::impl {
    std::string path;
    open_mode mode = open_mode::read_only;
    std::shared_ptr<const registry> reg;
    file_handle file;
    file_header hdr;
    uint64_t log_start = 0;
    uint64_t append_pos = 0;
    std::vector<std::vector<slot>> buckets;
    std::vector<uint64_t> live; // sorted record offsets
    uint64_t count = 0;
    uint64_t mutations = 0;
    bool dirty = false;
    mutable std::atomic<uint64_t> probes{0};

    std::vector<slot>& bucket_for(uint64_t h) { return buckets[h & (buckets.size() - 1)]; }
    const std::vector<slot>& bucket_for(uint64_t h) const { return buckets[h & (buckets.size() - 1)]; }

    void require_writable() const {
        if (!file.valid()) {
            throw io_error(path + ": store is closed");
        }
        if (mode != open_mode::read_write) {
            throw read_only_error(path + ": store is opened read-only");
        }
    }

    void require_open() const {
        if (!file.valid()) {
            throw io_error(path + ": store is closed");
        }
    }

    /// Reads one record and returns the payload of the entry it holds.
    std::string read_entry_payload(uint64_t off) const {
        auto head = file.read_at(off, record_header_size);
        if (head.size() < record_header_size) {
            throw integrity_error(path + ": record at offset " + std::to_string(off) + " is truncated");
        }
        auto len = get_u32(head, 4);
        auto full = head + file.read_at(off + record_header_size, len);
        std::string why;
        auto rec = parse_record(full, 0, &why);
        if (!rec) {
            throw integrity_error(path + ": record at offset " + std::to_string(off) + ": " + why);
        }
        return std::string(live_payload(rec->kind, rec->payload));
    }

    lex_entry decode_payload(std::string_view payload) const {
        return decode_record(encoded_record::from_bytes(payload), *reg);
    }

    void add_slot(uint64_t h, uint64_t off) {
        bucket_for(h).push_back({h, off});
        live.push_back(off); // appends arrive in increasing offset order
        ++count;
        if (count > static_cast<uint64_t>(buckets.size()) * max_load_factor) {
            grow();
        }
    }

    void drop_slot(uint64_t h, uint64_t off) {
        auto& b = bucket_for(h);
        b.erase(std::find_if(b.begin(), b.end(), [&](const slot& s) { return s.offset == off; }));
        auto it = std::lower_bound(live.begin(), live.end(), off);
        live.erase(it);
        --count;
    }

    void grow() {
        std::vector<std::vector<slot>> next(buckets.size() * 2);
        for (const auto& b : buckets) {
            for (const auto& s : b) {
                next[s.hash & (next.size() - 1)].push_back(s);
            }
        }
        buckets = std::move(next);
    }

    /// Slot holding exactly `payload`, located through the given reader.
    template<typename Reader>
    std::optional<slot> find_exact(uint64_t h, std::string_view payload, Reader&& read_payload) const {
        for (const auto& s : bucket_for(h)) {
            if (s.hash == h && read_payload(s.offset) == payload) {
                return s;
            }
        }
        return std::nullopt;
    }

    std::optional<slot> find_exact_on_disk(uint64_t h, std::string_view payload) const {
        probes.fetch_add(1, std::memory_order_relaxed);
        return find_exact(h, payload, [&](uint64_t off) { return read_entry_payload(off); });
    }

    void invalidate_snapshot() {
        if (hdr.index_offset != 0) {
            hdr.index_offset = 0;
            file.write_at(0, encode_header(hdr));
        }
    }

    uint64_t append(record_kind kind, std::string_view payload) {
        invalidate_snapshot();
        auto bytes = frame_record(kind, payload);
        auto off = append_pos;
        file.write_at(off, bytes);
        append_pos += bytes.size();
        ++mutations;
        dirty = true;
        return off;
    }

    std::string encode_snapshot() const {
        std::string out(snapshot_magic);
        put_u32(out, static_cast<uint32_t>(buckets.size()));
        put_u64(out, count);
        for (const auto& b : buckets) {
            put_u32(out, static_cast<uint32_t>(b.size()));
            for (const auto& s : b) {
                put_u64(out, s.hash);
                put_u64(out, s.offset);
            }
        }
        put_u32(out, detail::crc32(out));
        return out;
    }

    void load_snapshot(uint64_t file_size) {
        if (hdr.index_offset != hdr.log_end) {
            throw integrity_error(path + ": index snapshot does not start at the end of the log");
        }
        auto buf = file.read_at(hdr.index_offset, file_size - hdr.index_offset);
        auto truncated = [&] { return integrity_error(path + ": index snapshot is truncated"); };
        if (buf.size() < 20 || std::string_view(buf).substr(0, 4) != snapshot_magic) {
            throw truncated();
        }
        auto nbuckets = get_u32(buf, 4);
        auto nslots = get_u64(buf, 8);
        if (nbuckets == 0 || !std::has_single_bit(nbuckets)) {
            throw integrity_error(path + ": index snapshot bucket count is not a power of two");
        }
        std::size_t pos = 16;
        buckets.assign(nbuckets, {});
        live.clear();
        live.reserve(nslots);
        for (uint32_t b = 0; b < nbuckets; ++b) {
            if (buf.size() < pos + 4) {
                throw truncated();
            }
            auto n = get_u32(buf, pos);
            pos += 4;
            if ((buf.size() - pos) / 16 < n) {
                throw truncated();
            }
            auto& bucket = buckets[b];
            bucket.reserve(n);
            for (uint32_t i = 0; i < n; ++i) {
                slot s{get_u64(buf, pos), get_u64(buf, pos + 8)};
                pos += 16;
                if ((s.hash & (nbuckets - 1)) != b || s.offset < log_start || s.offset >= hdr.log_end) {
                    throw integrity_error(path + ": index snapshot slot is inconsistent");
                }
                bucket.push_back(s);
                live.push_back(s.offset);
            }
        }
        if (buf.size() < pos + 4) {
            throw truncated();
        }
        if (get_u32(buf, pos) != detail::crc32(std::string_view(buf).substr(0, pos))) {
            throw integrity_error(path + ": index snapshot checksum mismatch");
        }
        if (live.size() != nslots || nslots != hdr.entry_count) {
            throw integrity_error(path + ": index snapshot entry count disagrees with header");
        }
        std::sort(live.begin(), live.end());
        count = nslots;
        append_pos = hdr.log_end;
    }

    /// Rebuilds the index from the log. Records past the committed end are
    /// recovered while they are intact; a torn tail is dropped.
    void replay(uint64_t file_size) {
        buckets.assign(hdr.bucket_count, {});
        live.clear();
        count = 0;
        auto buf = file.read_at(log_start, file_size - log_start);
        std::string_view view(buf);
        auto payload_at = [&](uint64_t off) -> std::string_view {
            auto rec = parse_record(view, off - log_start);
            return live_payload(rec->kind, rec->payload);
        };
        std::size_t pos = 0;
        uint64_t recovered = 0;
        while (pos < view.size()) {
            std::string why;
            auto rec = parse_record(view, pos, &why);
            if (!rec) {
                if (log_start + pos < hdr.log_end) {
                    throw integrity_error(
                      path + ": committed log is damaged at offset " + std::to_string(log_start + pos) + ": " + why);
                }
                break;
            }
            const uint64_t off = log_start + pos;
            auto apply_remove = [&](std::string_view p) {
                auto h = key_hash(encoded_view(p).index());
                auto s = find_exact(h, p, payload_at);
                if (!s) {
                    throw integrity_error(
                      path + ": log deletes an entry that is not live (offset " + std::to_string(off) + ")");
                }
                drop_slot(h, s->offset);
            };
            switch (rec->kind) {
            case record_kind::put:
                add_slot(key_hash(encoded_view(rec->payload).index()), off);
                break;
            case record_kind::remove:
                apply_remove(rec->payload);
                break;
            case record_kind::replace: {
                auto parts = split_replace(rec->payload);
                apply_remove(parts.old_payload);
                add_slot(key_hash(encoded_view(parts.new_payload).index()), off);
                break;
            }
            }
            if (off >= hdr.log_end) {
                ++recovered;
            }
            pos += rec->total;
        }
        if (log_start + pos < hdr.log_end) {
            throw integrity_error(
              path + ": file is truncated (log should end at " + std::to_string(hdr.log_end) + ", data ends at "
              + std::to_string(log_start + pos) + ")");
        }
        append_pos = log_start + pos;
        mutations = hdr.mutation_count + recovered;
        dirty = recovered > 0;
    }

    void checkpoint() {
        auto snap = encode_snapshot();
        file.write_at(append_pos, snap);
        file.truncate(append_pos + snap.size());
        hdr.bucket_count = static_cast<uint32_t>(buckets.size());
        hdr.entry_count = count;
        hdr.log_end = append_pos;
        hdr.index_offset = append_pos;
        hdr.mutation_count = mutations;
        file.sync();
        file.write_at(0, encode_header(hdr));
        file.sync();
        dirty = false;
    }
};

lex_store::lex_store(std::unique_ptr<impl> p)
  : _impl(std::move(p)) {}
lex_store::lex_store(lex_store&&) noexcept = default;
lex_store& lex_store::operator=(lex_store&& o) noexcept {
    if (this != &o) {
        try {
            close();
        } catch (...) { // NOLINT(bugprone-empty-catch)
        }
        _impl = std::move(o._impl);
    }
    return *this;
}

lex_store::~lex_store() {
    try {
        close();
    } catch (...) { // NOLINT(bugprone-empty-catch)
    }
}

lex_store lex_store::open(
  const std::string& path, open_mode mode, std::shared_ptr<const registry> reg, store_options opts) {
    if (!reg) {
        reg = registry::builtin();
    }
    auto p = std::make_unique<impl>();
    p->path = path;
    p->mode = mode;
    p->reg = reg;

    if (mode == open_mode::read_only) {
        p->file = file_handle(path, O_RDONLY);
    } else {
        p->file = file_handle(path, O_RDWR | O_CREAT);
        p->file.lock_exclusive();
    }

    std::string reg_block_text = reg->source_text();
    auto size = p->file.size();
    if (size == 0 && mode == open_mode::read_write) {
        // fresh store
        std::string reg_block;
        put_u32(reg_block, static_cast<uint32_t>(reg_block_text.size()));
        reg_block += reg_block_text;
        put_u32(reg_block, detail::crc32(reg_block_text));
        p->log_start = header_size + reg_block.size();
        p->hdr.bucket_count = round_up_pow2(std::max<uint32_t>(opts.initial_buckets, 1));
        p->hdr.registry_hash = reg->hash();
        p->hdr.log_end = p->log_start;
        p->file.write_at(0, encode_header(p->hdr));
        p->file.write_at(header_size, reg_block);
        p->buckets.assign(p->hdr.bucket_count, {});
        p->append_pos = p->log_start;
        p->checkpoint();
        return lex_store(std::move(p));
    }

    p->hdr = decode_header(p->file.read_at(0, header_size), path);
    auto len_bytes = p->file.read_at(header_size, 4);
    if (len_bytes.size() < 4) {
        throw integrity_error(path + ": file is truncated inside the registry block");
    }
    auto reg_len = get_u32(len_bytes, 0);
    auto block = p->file.read_at(header_size + 4, static_cast<std::size_t>(reg_len) + 4);
    if (block.size() < static_cast<std::size_t>(reg_len) + 4) {
        throw integrity_error(path + ": file is truncated inside the registry block");
    }
    std::string_view stored_text = std::string_view(block).substr(0, reg_len);
    if (get_u32(block, reg_len) != detail::crc32(stored_text)) {
        throw integrity_error(path + ": registry block checksum mismatch");
    }
    p->log_start = header_size + 4 + reg_len + 4;
    if (p->hdr.registry_hash != reg->hash()) {
        throw registry_mismatch_error(
          path + ": store was built with registry " + hex64(p->hdr.registry_hash) + " but the active registry is "
          + hex64(reg->hash()));
    }
    if (registry::parse(stored_text)->hash() != p->hdr.registry_hash) {
        throw integrity_error(path + ": stored registry does not match the header hash");
    }
    if (size < p->hdr.log_end || p->hdr.log_end < p->log_start) {
        throw integrity_error(
          path + ": file is truncated (" + std::to_string(size) + " bytes, log should end at "
          + std::to_string(p->hdr.log_end) + ")");
    }

    if (p->hdr.index_offset != 0) {
        p->load_snapshot(size);
        p->mutations = p->hdr.mutation_count;
    } else {
        p->replay(size);
    }
    return lex_store(std::move(p));
}

void lex_store::close() {
    if (!_impl || !_impl->file.valid()) {
        return;
    }
    if (_impl->mode == open_mode::read_write && (_impl->dirty || _impl->hdr.index_offset == 0)) {
        _impl->checkpoint();
    }
    _impl->file.reset();
}

void lex_store::flush() {
    _impl->require_writable();
    _impl->checkpoint();
}

bool lex_store::is_open() const noexcept {
    return _impl && _impl->file.valid();
}

record_ref lex_store::put(const lex_entry& e) {
    auto& d = *_impl;
    d.require_writable();
    require_valid(e, *d.reg);
    auto payload = encode_record(e, *d.reg).to_bytes();
    auto h = key_hash(e.index);
    if (d.find_exact_on_disk(h, payload)) {
        throw duplicate_error("entry already stored under index '" + e.index + "'");
    }
    auto off = d.append(record_kind::put, payload);
    d.add_slot(h, off);
    return {off};
}

void lex_store::remove(const lex_entry& e) {
    auto& d = *_impl;
    d.require_writable();
    std::string payload;
    try {
        payload = encode_record(e, *d.reg).to_bytes();
    } catch (const symbol_error&) {
        throw not_found_error("no such entry under index '" + e.index + "'");
    }
    auto h = key_hash(e.index);
    auto s = d.find_exact_on_disk(h, payload);
    if (!s) {
        throw not_found_error("no such entry under index '" + e.index + "'");
    }
    d.append(record_kind::remove, payload);
    d.drop_slot(h, s->offset);
}

record_ref lex_store::replace(const lex_entry& old_entry, const lex_entry& new_entry) {
    auto& d = *_impl;
    d.require_writable();
    require_valid(new_entry, *d.reg);
    std::string old_payload;
    try {
        old_payload = encode_record(old_entry, *d.reg).to_bytes();
    } catch (const symbol_error&) {
        throw not_found_error("no such entry under index '" + old_entry.index + "'");
    }
    auto new_payload = encode_record(new_entry, *d.reg).to_bytes();
    auto old_h = key_hash(old_entry.index);
    auto new_h = key_hash(new_entry.index);
    auto s = d.find_exact_on_disk(old_h, old_payload);
    if (!s) {
        throw not_found_error("no such entry under index '" + old_entry.index + "'");
    }
    if (old_payload != new_payload && d.find_exact_on_disk(new_h, new_payload)) {
        throw duplicate_error("replacement entry already stored under index '" + new_entry.index + "'");
    }
    std::string payload;
    varint::put(payload, old_payload.size());
    payload += old_payload;
    payload += new_payload;
    auto off = d.append(record_kind::replace, payload);
    d.drop_slot(old_h, s->offset);
    d.add_slot(new_h, off);
    return {off};
}

std::vector<stored_entry> lex_store::lookup_refs(std::string_view index) const {
    const auto& d = *_impl;
    d.require_open();
    std::vector<stored_entry> out;
    auto h = key_hash(index);
    d.probes.fetch_add(1, std::memory_order_relaxed);
    for (const auto& s : d.bucket_for(h)) {
        if (s.hash != h) {
            continue;
        }
        auto payload = d.read_entry_payload(s.offset);
        if (encoded_view(payload).index() != index) {
            continue;
        }
        out.push_back({{s.offset}, d.decode_payload(payload)});
    }
    return out;
}

std::vector<lex_entry> lex_store::lookup(std::string_view index) const {
    std::vector<lex_entry> out;
    for (auto& s : lookup_refs(index)) {
        out.push_back(std::move(s.entry));
    }
    return out;
}

bool lex_store::contains(const lex_entry& e) const {
    const auto& d = *_impl;
    d.require_open();
    std::string payload;
    try {
        payload = encode_record(e, *d.reg).to_bytes();
    } catch (const symbol_error&) {
        return false;
    }
    return d.find_exact_on_disk(key_hash(e.index), payload).has_value();
}

void lex_store::for_each_encoded(const std::function<void(record_ref, const encoded_view&)>& fn) const {
    const auto& d = *_impl;
    d.require_open();
    if (d.live.empty()) {
        return;
    }
    auto buf = d.file.read_at(d.log_start, d.append_pos - d.log_start);
    std::string_view view(buf);
    for (auto off : d.live) {
        std::string why;
        auto rec = parse_record(view, off - d.log_start, &why);
        if (!rec) {
            throw integrity_error(d.path + ": record at offset " + std::to_string(off) + ": " + why);
        }
        fn({off}, encoded_view(live_payload(rec->kind, rec->payload)));
    }
}

void lex_store::for_each(const std::function<void(const stored_entry&)>& fn) const {
    for_each_encoded([&](record_ref ref, const encoded_view& v) {
        fn({ref, _impl->decode_payload(v.payload())});
    });
}

std::vector<lex_entry> lex_store::scan() const {
    std::vector<lex_entry> out;
    out.reserve(_impl->count);
    for_each([&](const stored_entry& s) { out.push_back(s.entry); });
    return out;
}

lex_entry lex_store::read(record_ref ref) const {
    const auto& d = *_impl;
    d.require_open();
    if (!std::binary_search(d.live.begin(), d.live.end(), ref.offset)) {
        throw not_found_error("no live record at offset " + std::to_string(ref.offset));
    }
    return d.decode_payload(d.read_entry_payload(ref.offset));
}

store_census lex_store::census() const {
    store_census c;
    std::map<pos_tag, std::set<std::string>> indexes;
    for_each_encoded([&](record_ref, const encoded_view& v) {
        std::vector<pos_symbol> parts;
        for (auto code : v.pos_codes()) {
            parts.push_back(static_cast<pos_symbol>(code));
        }
        pos_tag tag(std::move(parts));
        ++c.total;
        ++c.by_pos[tag].entries;
        indexes[tag].emplace(v.index());
    });
    for (auto& [tag, set] : indexes) {
        c.by_pos[tag].distinct_indexes = set.size();
    }
    return c;
}

uint64_t lex_store::size() const noexcept {
    return _impl->count;
}

uint64_t lex_store::mutation_count() const noexcept {
    return _impl->mutations;
}

uint64_t lex_store::probe_count() const noexcept {
    return _impl->probes.load(std::memory_order_relaxed);
}

uint32_t lex_store::bucket_count() const noexcept {
    return static_cast<uint32_t>(_impl->buckets.size());
}

const std::string& lex_store::path() const noexcept {
    return _impl->path;
}

open_mode lex_store::mode() const noexcept {
    return _impl->mode;
}

const registry& lex_store::reg() const noexcept {
    return *_impl->reg;
}

std::shared_ptr<const registry> lex_store::registry_ptr() const noexcept {
    return _impl->reg;
}

verify_report lex_store::verify() const {
    const auto& d = *_impl;
    d.require_open();
    verify_report rep;
    auto buf = d.file.read_at(d.log_start, d.append_pos - d.log_start);
    std::string_view view(buf);

    // Independent replay: a multiset of payloads with their offsets.
    std::multimap<std::string, uint64_t> replayed;
    auto problem = [&](uint64_t off, const std::string& msg) {
        rep.problems.push_back("offset " + std::to_string(off) + ": " + msg);
    };
    auto check_entry = [&](uint64_t off, std::string_view payload) {
        try {
            auto e = d.decode_payload(payload);
            for (const auto& v : validate_entry(e, *d.reg)) {
                problem(off, v.field + ": " + v.message);
            }
        } catch (const error& ex) {
            problem(off, ex.what());
        }
    };
    auto unput = [&](uint64_t off, std::string_view payload) {
        auto it = replayed.find(std::string(payload));
        if (it == replayed.end()) {
            problem(off, "deletes an entry that is not live");
        } else {
            replayed.erase(it);
        }
    };
    std::size_t pos = 0;
    while (pos < view.size()) {
        std::string why;
        auto rec = parse_record(view, pos, &why);
        const uint64_t off = d.log_start + pos;
        if (!rec) {
            problem(off, why);
            break;
        }
        ++rep.records;
        switch (rec->kind) {
        case record_kind::put:
            ++rep.puts;
            check_entry(off, rec->payload);
            replayed.emplace(std::string(rec->payload), off);
            break;
        case record_kind::remove:
            ++rep.deletes;
            unput(off, rec->payload);
            break;
        case record_kind::replace: {
            ++rep.replaces;
            auto parts = split_replace(rec->payload);
            unput(off, parts.old_payload);
            check_entry(off, parts.new_payload);
            replayed.emplace(std::string(parts.new_payload), off);
            break;
        }
        }
        pos += rec->total;
    }

    std::vector<uint64_t> offsets;
    for (const auto& [payload, off] : replayed) {
        offsets.push_back(off);
    }
    std::sort(offsets.begin(), offsets.end());
    rep.live = offsets.size();
    if (offsets != d.live) {
        rep.problems.push_back(
          "index holds " + std::to_string(d.live.size()) + " live records but the log replays to "
          + std::to_string(offsets.size()) + " (or to different records)");
    }
    for (std::size_t b = 0; b < d.buckets.size(); ++b) {
        for (const auto& s : d.buckets[b]) {
            if ((s.hash & (d.buckets.size() - 1)) != b) {
                rep.problems.push_back("slot for offset " + std::to_string(s.offset) + " is in the wrong bucket");
            }
        }
    }
    return rep;
}

void lex_store::compact() {
    auto& d = *_impl;
    d.require_writable();
    auto entries = scan();
    auto tmp = d.path + ".compact";
    std::filesystem::remove(tmp);
    {
        uint32_t want = round_up_pow2(static_cast<uint32_t>(std::max<uint64_t>(entries.size() / max_load_factor, 1)));
        auto fresh = lex_store::open(tmp, open_mode::read_write, d.reg, {std::max<uint32_t>(want, 64)});
        for (const auto& e : entries) {
            fresh.put(e);
        }
        fresh._impl->mutations = d.mutations + 1;
        fresh.close();
    }
    d.file.reset();
    std::filesystem::rename(tmp, d.path);
    auto reopened = lex_store::open(d.path, open_mode::read_write, d.reg);
    auto probes = d.probes.load();
    _impl = std::move(reopened._impl);
    _impl->probes = probes;
}

} // namespace synlex
