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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace synlex {

/// Compact form of a lex_entry. POS, FRAME and FS symbols are replaced by
/// their registry codes; the index, tokens and examples stay verbatim.
struct encoded_record {
    std::string index;
    std::vector<std::string> tokens;
    std::vector<uint8_t> pos_codes;
    std::vector<uint16_t> frame_codes;
    std::vector<uint16_t> fs_codes;
    std::vector<std::string> ex;

    bool operator==(const encoded_record&) const = default;

    /// Wire bytes, see docs/store-format.md ("Entry payload").
    std::string to_bytes() const;
    /// Throws integrity_error on malformed input.
    static encoded_record from_bytes(std::string_view bytes);
};

/// Throws symbol_error for any symbol absent from the registry.
encoded_record encode_record(const lex_entry& e, const registry& reg);
/// Throws symbol_error for codes absent from the registry.
lex_entry decode_record(const encoded_record& r, const registry& reg);

/// Zero-copy reader over an encoded payload. Predicates on POS/FRAME/FS are
/// evaluated on the integer codes without materializing any string.
class encoded_view {
public:
    /// Throws integrity_error on malformed input.
    explicit encoded_view(std::string_view payload);

    std::string_view index() const noexcept { return _index; }
    std::size_t token_count() const noexcept { return _token_count; }
    bool has_token(std::string_view tok) const;
    std::span<const uint8_t> pos_codes() const noexcept { return _pos; }
    bool has_frame(uint16_t code) const;
    bool has_feature(uint16_t code) const;

    std::string_view payload() const noexcept { return _payload; }

private:
    std::string_view _payload;
    std::string_view _index;
    std::string_view _tokens; // raw token section
    std::size_t _token_count = 0;
    std::span<const uint8_t> _pos;
    std::string_view _frames; // varint codes, count prefix stripped
    std::size_t _frame_count = 0;
    std::string_view _fs;
    std::size_t _fs_count = 0;
};

namespace varint {

void put(std::string& out, uint64_t v);
/// Reads one LEB128 value at `pos`, advancing it. Throws integrity_error.
uint64_t get(std::string_view in, std::size_t& pos);

} // namespace varint

} // namespace synlex
