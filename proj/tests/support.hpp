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

// Shared helpers for the test suites: data file locations, scratch
// directories and small entry builders.

#include "synlex/flatfile.hpp"
#include "synlex/lexmodel.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

namespace synlex::test {

inline std::string data_path(const std::string& name) {
    return std::string(SYNLEX_DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

/// Fresh directory removed on destruction.
class scratch_dir {
public:
    scratch_dir() {
        static std::atomic<int> counter{0};
        _path = std::filesystem::temp_directory_path()
                / ("synlex-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(_path);
        std::filesystem::create_directories(_path);
    }
    ~scratch_dir() {
        std::error_code ec;
        std::filesystem::remove_all(_path, ec);
    }
    scratch_dir(const scratch_dir&) = delete;
    scratch_dir& operator=(const scratch_dir&) = delete;

    std::string file(const std::string& name) const { return (_path / name).string(); }

private:
    std::filesystem::path _path;
};

inline const registry& reg() {
    return *registry::builtin();
}

/// The seventeen entries of data/fixtures.flat, in file order.
inline std::vector<lex_entry> fixtures() {
    auto r = load_lexicon(data_path("fixtures.flat"), reg());
    return r.entries;
}

inline lex_entry make_entry(
  std::string index,
  std::vector<std::string> tokens,
  std::string pos_text,
  std::vector<std::string> frames,
  std::vector<std::string> fs = {},
  std::vector<std::string> ex = {}) {
    lex_entry e;
    e.index = std::move(index);
    e.entry = std::move(tokens);
    e.pos = pos_tag::parse(pos_text);
    e.frames = std::move(frames);
    e.fs = std::move(fs);
    e.ex = std::move(ex);
    return e;
}

inline lex_entry simple_entry(
  std::string index, std::string pos_text, std::vector<std::string> frames, std::vector<std::string> fs = {}) {
    auto tokens = std::vector<std::string>{index};
    return make_entry(std::move(index), std::move(tokens), std::move(pos_text), std::move(frames), std::move(fs));
}

} // namespace synlex::test
