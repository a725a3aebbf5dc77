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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace synlex {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One broken invariant of a lexical entry. `field` is the flat-file label
/// (INDEX, ENTRY, POS, FRAME, FS, EX) of the offending field.
struct violation {
    std::string field;
    std::string message;

    bool operator==(const violation&) const = default;
};

class validation_error : public error {
public:
    explicit validation_error(std::vector<violation> v);

    const std::vector<violation>& violations() const noexcept { return _violations; }

private:
    std::vector<violation> _violations;
};

/// Unknown POS, frame or feature symbol.
class symbol_error : public error {
public:
    using error::error;
};

/// Malformed registry data file.
class registry_error : public error {
public:
    using error::error;
};

/// Input bytes are not valid UTF-8.
class decode_error : public error {
public:
    decode_error(std::size_t offset, const std::string& what);

    std::size_t byte_offset() const noexcept { return _offset; }

private:
    std::size_t _offset;
};

class io_error : public error {
public:
    using error::error;
};

/// Store file is damaged: bad magic, checksum mismatch, truncation.
class integrity_error : public error {
public:
    using error::error;
};

class version_error : public error {
public:
    version_error(uint32_t found, uint32_t expected);

    uint32_t found() const noexcept { return _found; }
    uint32_t expected() const noexcept { return _expected; }

private:
    uint32_t _found;
    uint32_t _expected;
};

class registry_mismatch_error : public error {
public:
    using error::error;
};

class duplicate_error : public error {
public:
    using error::error;
};

class not_found_error : public error {
public:
    using error::error;
};

/// Store opened read-only but a mutation was attempted.
class read_only_error : public error {
public:
    using error::error;
};

class query_error : public error {
public:
    using error::error;
};

class stale_result_error : public error {
public:
    using error::error;
};

/// Malformed morphology table row.
class morph_format_error : public error {
public:
    morph_format_error(std::size_t line, const std::string& what);

    std::size_t line() const noexcept { return _line; }

private:
    std::size_t _line;
};

/// Corpus tag absent from the tag map, or malformed tag-map/corpus file.
class tag_map_error : public error {
public:
    using error::error;
};

class coverage_error : public error {
public:
    using error::error;
};

} // namespace synlex
