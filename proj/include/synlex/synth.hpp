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

// Deterministic generator of valid, distinct lexical entries for tests and
// benchmarks.

#include "synlex/lexmodel.hpp"

#include <cstdint>
#include <vector>

namespace synlex {

struct synth_options {
    uint64_t seed = 1;
    /// Average number of entries sharing one index (homographs, multiple
    /// senses). Must be at least 1.
    double entries_per_index = 2.5;
    /// Share of verb entries written as a verb + particle compound.
    double particle_share = 0.05;
    /// Share of examples containing the '|' or '\' characters the flat
    /// format has to escape.
    double awkward_example_share = 0.1;
};

/// `count` distinct entries, each valid under `reg`. The same options always
/// produce the same entries.
std::vector<lex_entry> synthesize_entries(std::size_t count, const registry& reg, const synth_options& opts = {});

} // namespace synlex
