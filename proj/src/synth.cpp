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

#include "synlex/synth.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace synlex {

namespace {

constexpr std::array<std::string_view, 16> onsets = {
  "b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z", "br", "st"};
constexpr std::array<std::string_view, 6> nuclei = {"a", "e", "i", "o", "u", "ai"};
constexpr std::array<std::string_view, 6> codas = {"", "n", "r", "s", "t", "ck"};
constexpr std::array<std::string_view, 6> particles = {"up", "down", "out", "off", "in", "over"};

// Rough share of each category in a dictionary-derived lexicon.
constexpr std::array<std::pair<pos, int>, 8> pos_weights = {{
  {pos::noun, 45},
  {pos::verb, 25},
  {pos::adjective, 15},
  {pos::adverb, 8},
  {pos::preposition, 3},
  {pos::determiner, 2},
  {pos::conjunction, 1},
  {pos::complementizer, 1},
}};

class generator {
public:
    generator(const registry& reg, const synth_options& opts)
      : _reg(reg)
      , _opts(opts)
      , _rng(opts.seed) {
        for (const auto& f : reg.features()) {
            _groups[f.group].push_back(&f);
        }
    }

    lex_entry next(std::size_t count) {
        auto pool = std::max<std::size_t>(1, static_cast<std::size_t>(static_cast<double>(count) / _opts.entries_per_index));
        lex_entry e;
        e.index = word(uniform(pool));
        e.entry = {e.index};
        auto head = pick_pos();
        e.pos = head;
        if (head == pos::verb && chance(_opts.particle_share)) {
            e.entry.emplace_back(particles[uniform(particles.size())]);
            e.pos = pos_tag({pos_symbol::verb, pos_symbol::verb_particle});
        }
        auto frames = frames_for(head);
        if (frames.empty()) {
            throw std::logic_error("registry has no frames for " + std::string(pos_name(head)));
        }
        std::shuffle(frames.begin(), frames.end(), _rng);
        frames.resize(1 + uniform(std::min<std::size_t>(3, frames.size())));
        for (const auto* f : frames) {
            e.frames.push_back(f->verbose_name);
        }
        for (const auto& [group, members] : _groups) {
            if (chance(0.2)) {
                e.fs.push_back(members[uniform(members.size())]->verbose_name);
            }
        }
        auto examples = uniform(3);
        for (std::size_t i = 0; i < examples; ++i) {
            e.ex.push_back(sentence(e));
        }
        return e;
    }

private:
    std::size_t uniform(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(_rng);
    }

    bool chance(double p) {
        return std::bernoulli_distribution(p)(_rng);
    }

    /// Pseudo-word number `n`: a bijective syllable spelling, so distinct
    /// numbers give distinct words.
    static std::string word(std::size_t n) {
        std::string out;
        constexpr std::size_t base = onsets.size() * nuclei.size() * codas.size();
        do {
            auto s = n % base;
            out += onsets[s % onsets.size()];
            out += nuclei[(s / onsets.size()) % nuclei.size()];
            out += codas[s / (onsets.size() * nuclei.size())];
            n /= base;
        } while (n > 0);
        return out;
    }

    pos pick_pos() {
        int total = 0;
        for (const auto& [p, w] : pos_weights) {
            total += w;
        }
        auto r = static_cast<int>(uniform(static_cast<std::size_t>(total)));
        for (const auto& [p, w] : pos_weights) {
            if (r < w) {
                return p;
            }
            r -= w;
        }
        return pos::noun;
    }

    std::vector<const frame_info*> frames_for(pos p) const {
        std::vector<const frame_info*> out;
        for (const auto& f : _reg.frames()) {
            if (f.owner == p) {
                out.push_back(&f);
            }
        }
        return out;
    }

    std::string sentence(const lex_entry& e) {
        std::string s = "the " + word(uniform(500)) + " ";
        for (std::size_t i = 0; i < e.entry.size(); ++i) {
            s += e.entry[i] + " ";
        }
        s += word(uniform(500));
        if (chance(_opts.awkward_example_share)) {
            s += uniform(2) ? " a|b" : " c\\d";
        }
        s += ".";
        return s;
    }

    const registry& _reg;
    synth_options _opts;
    std::mt19937_64 _rng;
    std::map<feature_group, std::vector<const feature_info*>> _groups;
};

} // namespace

std::vector<lex_entry> synthesize_entries(std::size_t count, const registry& reg, const synth_options& opts) {
    if (opts.entries_per_index < 1.0) {
        throw std::invalid_argument("entries_per_index must be at least 1");
    }
    generator gen(reg, opts);
    std::vector<lex_entry> out;
    out.reserve(count);
    std::set<lex_entry> seen;
    while (out.size() < count) {
        auto e = gen.next(count);
        if (seen.insert(e).second) {
            out.push_back(std::move(e));
        }
    }
    return out;
}

} // namespace synlex
