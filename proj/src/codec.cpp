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

#include "synlex/codec.hpp"

#include <algorithm>

namespace synlex {

namespace varint {

void put(std::string& out, uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<char>((v & 0x7F) | 0x80));
        v >>= 7;
    }
    out.push_back(static_cast<char>(v));
}

uint64_t get(std::string_view in, std::size_t& pos) {
    uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
        if (pos >= in.size()) {
            throw integrity_error("truncated varint in record payload");
        }
        auto b = static_cast<uint8_t>(in[pos++]);
        v |= static_cast<uint64_t>(b & 0x7F) << shift;
        if (!(b & 0x80)) {
            return v;
        }
    }
    throw integrity_error("overlong varint in record payload");
}

} // namespace varint

namespace {

// Payload layout:
//   varint len, index bytes
//   varint n, n x (varint len, token bytes)
//   varint n, n x u8 pos code
//   varint n, n x varint frame code
//   varint n, n x varint fs code
//   varint n, n x (varint len, sentence bytes)

void put_string(std::string& out, std::string_view s) {
    varint::put(out, s.size());
    out.append(s);
}

std::string_view get_string(std::string_view in, std::size_t& pos) {
    auto len = varint::get(in, pos);
    if (len > in.size() - pos) {
        throw integrity_error("string length exceeds record payload");
    }
    auto s = in.substr(pos, len);
    pos += len;
    return s;
}

std::size_t get_count(std::string_view in, std::size_t& pos) {
    auto n = varint::get(in, pos);
    // every element needs at least one byte
    if (n > in.size() - pos) {
        throw integrity_error("element count exceeds record payload");
    }
    return static_cast<std::size_t>(n);
}

uint16_t get_code(std::string_view in, std::size_t& pos) {
    auto v = varint::get(in, pos);
    if (v > 0xFFFF) {
        throw integrity_error("symbol code out of range");
    }
    return static_cast<uint16_t>(v);
}

} // namespace

std::string encoded_record::to_bytes() const {
    std::string out;
    out.reserve(16 + index.size() * 2 + ex.size() * 32);
    put_string(out, index);
    varint::put(out, tokens.size());
    for (const auto& t : tokens) {
        put_string(out, t);
    }
    varint::put(out, pos_codes.size());
    for (auto c : pos_codes) {
        out.push_back(static_cast<char>(c));
    }
    varint::put(out, frame_codes.size());
    for (auto c : frame_codes) {
        varint::put(out, c);
    }
    varint::put(out, fs_codes.size());
    for (auto c : fs_codes) {
        varint::put(out, c);
    }
    varint::put(out, ex.size());
    for (const auto& s : ex) {
        put_string(out, s);
    }
    return out;
}

encoded_record encoded_record::from_bytes(std::string_view in) {
    encoded_record r;
    std::size_t pos = 0;
    r.index = std::string(get_string(in, pos));
    auto n = get_count(in, pos);
    r.tokens.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        r.tokens.emplace_back(get_string(in, pos));
    }
    n = get_count(in, pos);
    for (std::size_t i = 0; i < n; ++i) {
        r.pos_codes.push_back(static_cast<uint8_t>(in[pos++]));
    }
    n = get_count(in, pos);
    for (std::size_t i = 0; i < n; ++i) {
        r.frame_codes.push_back(get_code(in, pos));
    }
    n = get_count(in, pos);
    for (std::size_t i = 0; i < n; ++i) {
        r.fs_codes.push_back(get_code(in, pos));
    }
    n = get_count(in, pos);
    for (std::size_t i = 0; i < n; ++i) {
        r.ex.emplace_back(get_string(in, pos));
    }
    if (pos != in.size()) {
        throw integrity_error("trailing bytes after record payload");
    }
    return r;
}

encoded_record encode_record(const lex_entry& e, const registry& reg) {
    encoded_record r;
    r.index = e.index;
    r.tokens = e.entry;
    for (auto s : e.pos.parts()) {
        r.pos_codes.push_back(static_cast<uint8_t>(s));
    }
    for (const auto& f : e.frames) {
        const auto* info = reg.find_frame(f);
        if (!info) {
            throw symbol_error("cannot encode unregistered frame '" + f + "'");
        }
        r.frame_codes.push_back(info->code);
    }
    for (const auto& f : e.fs) {
        const auto* info = reg.find_feature(f);
        if (!info) {
            throw symbol_error("cannot encode unregistered feature '" + f + "'");
        }
        r.fs_codes.push_back(info->code);
    }
    r.ex = e.ex;
    return r;
}

lex_entry decode_record(const encoded_record& r, const registry& reg) {
    lex_entry e;
    e.index = r.index;
    e.entry = r.tokens;
    std::vector<pos_symbol> parts;
    for (auto c : r.pos_codes) {
        if (c >= pos_symbol_count) {
            throw symbol_error("unknown part-of-speech code " + std::to_string(c));
        }
        parts.push_back(static_cast<pos_symbol>(c));
    }
    e.pos = pos_tag(std::move(parts));
    for (auto c : r.frame_codes) {
        e.frames.push_back(reg.frame(c).verbose_name);
    }
    for (auto c : r.fs_codes) {
        e.fs.push_back(reg.feature(c).verbose_name);
    }
    e.ex = r.ex;
    return e;
}

encoded_view::encoded_view(std::string_view in)
  : _payload(in) {
    std::size_t pos = 0;
    _index = get_string(in, pos);
    auto start = pos;
    _token_count = get_count(in, pos);
    for (std::size_t i = 0; i < _token_count; ++i) {
        get_string(in, pos);
    }
    _tokens = in.substr(start, pos - start);
    auto n = get_count(in, pos);
    _pos = std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(in.data() + pos), n);
    pos += n;
    _frame_count = get_count(in, pos);
    start = pos;
    for (std::size_t i = 0; i < _frame_count; ++i) {
        get_code(in, pos);
    }
    _frames = in.substr(start, pos - start);
    _fs_count = get_count(in, pos);
    start = pos;
    for (std::size_t i = 0; i < _fs_count; ++i) {
        get_code(in, pos);
    }
    _fs = in.substr(start, pos - start);
}

namespace {
bool contains_code(std::string_view section, std::size_t count, uint16_t code) {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (get_code(section, pos) == code) {
            return true;
        }
    }
    return false;
}
} // namespace

bool encoded_view::has_token(std::string_view tok) const {
    std::size_t pos = 0;
    auto n = varint::get(_tokens, pos);
    for (uint64_t i = 0; i < n; ++i) {
        if (get_string(_tokens, pos) == tok) {
            return true;
        }
    }
    return false;
}

bool encoded_view::has_frame(uint16_t code) const {
    return contains_code(_frames, _frame_count, code);
}

bool encoded_view::has_feature(uint16_t code) const {
    return contains_code(_fs, _fs_count, code);
}

} // namespace synlex
