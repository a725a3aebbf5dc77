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

#include "support.hpp"

#include "synlex/error.hpp"
#include "synlex/lexmodel.hpp"

#include "doctest.h"

#include <cctype>
#include <set>

using namespace synlex;
using namespace synlex::test;

namespace {

bool has_violation(const std::vector<violation>& v, std::string_view field, std::string_view fragment) {
    for (const auto& x : v) {
        if (x.field == field && x.message.find(fragment) != std::string::npos) {
            return true;
        }
    }
    return false;
}

std::vector<std::string> names(const std::vector<const frame_info*>& frames) {
    std::vector<std::string> out;
    for (const auto* f : frames) {
        out.push_back(f->verbose_name);
    }
    return out;
}

/// Independent statement of the short-code rule: split the verbose name on
/// '_' and '-'; the code is the first word's capitalized prefix of growing
/// length followed by one letter per remaining word (digit runs kept whole),
/// taking the shortest prefix not already used by an earlier frame.
std::string derive_code(const std::string& name, std::set<std::string>& used) {
    std::vector<std::string> words;
    std::string cur;
    for (char c : name) {
        if (c == '_' || c == '-') {
            words.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    words.push_back(cur);
    std::string rest;
    for (std::size_t i = 1; i < words.size(); ++i) {
        bool digits = !words[i].empty()
                      && std::all_of(words[i].begin(), words[i].end(), [](unsigned char c) { return std::isdigit(c); });
        rest += digits ? words[i] : std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(words[i][0]))));
    }
    for (std::size_t k = 1; k <= words[0].size(); ++k) {
        std::string code = std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(words[0][0]))))
                           + words[0].substr(1, k - 1) + rest;
        if (used.insert(code).second) {
            return code;
        }
    }
    return "<none>";
}

} // namespace

TEST_CASE("registry holds the frame inventory of every category") {
    const auto& r = reg();
    CHECK(r.version() == 1);
    CHECK(r.frames_for(pos::adjective).size() == 5);
    CHECK(r.frames_for(pos::noun).size() == 7);
    CHECK(r.frames_for(pos::verb).size() == 19);
    CHECK(r.frames_for(pos::adverb).size() == 15);
    for (auto p : {pos::complementizer, pos::conjunction, pos::determiner, pos::preposition}) {
        auto frames = r.frames_for(p);
        REQUIRE(frames.size() == 1);
        CHECK(frames[0]->verbose_name == "Base_" + std::string(pos_name(p)));
    }
}

TEST_CASE("frames_for_pos examples") {
    auto adj = names(frames_for_pos("Adjective", reg()));
    REQUIRE(adj.size() == 5);
    CHECK(adj.back() == "Predicative_adjective_w_sentential_subject");

    auto noun = names(frames_for_pos("Noun", reg()));
    CHECK(noun.size() == 7);
    CHECK(std::find(noun.begin(), noun.end(), "Noun_Determiner_required") != noun.end());

    CHECK(names(frames_for_pos("Conjunction", reg())) == std::vector<std::string>{"Base_Conjunction"});

    // Stable across calls and reachable through the xtag spelling.
    CHECK(frames_for_pos("Noun", reg()) == frames_for_pos("N", reg()));
}

TEST_CASE("frames_for_pos rejects unknown symbols by name") {
    try {
        frames_for_pos("Pronoun", reg());
        FAIL("expected symbol_error");
    } catch (const symbol_error& e) {
        CHECK(std::string(e.what()).find("Pronoun") != std::string::npos);
    }
    CHECK_THROWS_AS(frames_for_pos("Verb_Particle", reg()), symbol_error);
}

TEST_CASE("verb and adverb inventories contain the named frames") {
    auto verbs = names(reg().frames_for(pos::verb));
    for (auto name :
         {"Transitive_Verb",
          "Intransitive_Verb",
          "Sentential_Complement",
          "NP_and_Sentential_Complement",
          "Sentential_Subject",
          "Transitive_Verb_Particle",
          "Intransitive_Verb_Particle",
          "Double_Object_Shifting",
          "Double_Object_No_Shifting",
          "Light_Verb",
          "Auxiliary_Verb"}) {
        CHECK(std::find(verbs.begin(), verbs.end(), name) != verbs.end());
    }
    auto adverbs = names(reg().frames_for(pos::adverb));
    for (auto name :
         {"Base_Adverb", "Pre-VP", "Post-VP", "Pre-S", "Post-S", "Pre-Adj", "Post-Adj", "Pre-Adv", "Pre-PP", "Pre-Noun"}) {
        CHECK(std::find(adverbs.begin(), adverbs.end(), name) != adverbs.end());
    }
}

TEST_CASE("xtag frame codes follow the documented derivation rule") {
    std::set<std::string> used;
    for (const auto& f : reg().frames()) {
        CAPTURE(f.verbose_name);
        CHECK(f.xtag_name == derive_code(f.verbose_name, used));
    }
    // Spot values.
    CHECK(reg().render_frame("Transitive_Verb", render_mode::xtag) == "TV");
    CHECK(reg().render_frame("Base_Adverb", render_mode::xtag) == "BaA");
}

TEST_CASE("render_frame examples and bijection in both modes") {
    CHECK(reg().render_frame("Transitive_Verb", render_mode::verbose) == "Transitive_Verb");
    CHECK(reg().render_frame("Base_Adverb", render_mode::verbose) == "Base_Adverb");

    for (auto mode : {render_mode::verbose, render_mode::xtag}) {
        std::set<std::string> seen;
        for (const auto& f : reg().frames()) {
            auto shown = reg().render_frame(f.verbose_name, mode);
            CHECK(seen.insert(shown).second);
            // Rendering parses back to the same frame.
            CHECK(reg().render_frame(shown, render_mode::verbose) == f.verbose_name);
        }
        CHECK(seen.size() == reg().frames().size());
    }
    CHECK_THROWS_AS(reg().render_frame("No_Such_Frame", render_mode::verbose), symbol_error);
}

TEST_CASE("feature registry: groups, polarity and spellings") {
    const auto& r = reg();
    for (auto name : {"wh+", "wh-", "reflexive+", "reflexive-"}) {
        REQUIRE(r.find_feature(name) != nullptr);
    }
    CHECK(r.find_feature("wh+")->group == feature_group::wh);
    CHECK(r.find_feature("reflexive-")->group == feature_group::reflexive);
    CHECK(r.find_feature("plural")->group == feature_group::number);
    CHECK(r.find_feature("Non-Ergative")->group == feature_group::ergativity);
    CHECK(r.find_feature("Goes_on_Base")->group == feature_group::aux_goes_on);
    CHECK(r.find_feature("Present")->group == feature_group::aux_form);
    // Typographic minus sign is the same feature.
    CHECK(r.find_feature("wh−") == r.find_feature("wh-"));
    CHECK(r.canonical_feature("+wh") == "wh+");
    CHECK(r.render_feature("wh-", render_mode::xtag) == "-wh");
    // Polarity-less wh is not a feature.
    CHECK(r.find_feature("wh") == nullptr);
}

TEST_CASE("pos tags: parsing, compounds and both spellings") {
    auto t = pos_tag::parse("Verb Verb_Particle");
    CHECK(t.compound());
    CHECK(t.arity() == 2);
    CHECK(t.head() == pos::verb);
    CHECK(t.str() == "Verb Verb_Particle");
    CHECK(t.str(render_mode::xtag) == "V PL");
    CHECK(pos_tag::parse("V") == pos_tag(pos::verb));
    CHECK(pos_tag::parse("V PL") == t);
    CHECK_THROWS_AS(pos_tag::parse("Pronoun"), symbol_error);
    CHECK_THROWS_AS(pos_tag::parse(""), symbol_error);
    CHECK(all_pos.size() == 8);
    for (auto p : all_pos) {
        CHECK(parse_pos(pos_name(p)) == p);
        CHECK(parse_pos(pos_name(p, render_mode::xtag)) == p);
    }
}

TEST_CASE("validate_entry accepts every fixture entry") {
    auto entries = fixtures();
    REQUIRE(entries.size() == 17);
    for (const auto& e : entries) {
        CAPTURE(e.index);
        CHECK(validate_entry(e, reg()).empty());
    }
}

TEST_CASE("validate_entry examples") {
    auto have = simple_entry("have", "Verb", {"Auxiliary_Verb"}, {"Goes_on_Infinitive"});
    have.ex = {"John has to go to the store."};
    CHECK(validate_entry(have, reg()).empty());

    auto noun = simple_entry("map", "Noun", {"Transitive_Verb"});
    auto v = validate_entry(noun, reg());
    CHECK(has_violation(v, "FRAME", "frame not in POS registry"));

    auto out = make_entry("out", {"map", "out"}, "Verb Verb_Particle", {});
    v = validate_entry(out, reg());
    REQUIRE(v.size() == 1);
    CHECK(v[0].field == "FRAME");
    CHECK(v[0].message == "frames empty");
}

TEST_CASE("validate_entry reports every violation with its field") {
    auto e = make_entry("nope", {"map", "out"}, "Verb", {"Base_Noun", "Base_Noun", "Bogus"}, {"wh+", "wh-", "Bogus"});
    e.ex = {""};
    auto v = validate_entry(e, reg());
    CHECK(has_violation(v, "INDEX", "not one of the entry tokens"));
    CHECK(has_violation(v, "FRAME", "frame not in POS registry"));
    CHECK(has_violation(v, "FRAME", "duplicate frame"));
    CHECK(has_violation(v, "FRAME", "frame not registered: Bogus"));
    CHECK(has_violation(v, "FS", "share group wh"));
    CHECK(has_violation(v, "FS", "feature not registered: Bogus"));
    CHECK(has_violation(v, "EX", "empty"));

    auto arity = make_entry("map", {"map", "out", "again"}, "Verb Verb_Particle", {"Transitive_Verb_Particle"});
    CHECK(has_violation(validate_entry(arity, reg()), "POS", "slots"));

    auto headless = make_entry("up", {"up"}, "Verb_Particle", {"Base_Adverb"});
    CHECK(has_violation(validate_entry(headless, reg()), "POS", "headed by a category"));

    auto noun_particle = make_entry("map", {"map", "out"}, "Noun Verb_Particle", {"Base_Noun"});
    CHECK(has_violation(validate_entry(noun_particle, reg()), "POS", "Verb head"));

    auto spaced = simple_entry("two words", "Noun", {"Base_Noun"});
    spaced.entry = {"two words"};
    CHECK(has_violation(validate_entry(spaced, reg()), "INDEX", "whitespace"));

    auto xtag_symbol = simple_entry("map", "Noun", {"BN"});
    CHECK(has_violation(validate_entry(xtag_symbol, reg()), "FRAME", "verbose name"));
    CHECK(validate_entry(canonicalize(xtag_symbol, reg()), reg()).empty());

    CHECK_THROWS_AS(require_valid(e, reg()), validation_error);
}

TEST_CASE("feature groups: at most one value each, except the open group") {
    std::vector<std::string> both{"wh+", "wh-"};
    CHECK_FALSE(validate_features(both, reg()).empty());
    std::vector<std::string> aux{"Indicative", "Present", "Goes_on_Base"};
    CHECK(validate_features(aux, reg()).empty());
    std::vector<std::string> two_forms{"Present", "Past"};
    CHECK_FALSE(validate_features(two_forms, reg()).empty());
    std::vector<std::string> dup{"plural", "plural"};
    CHECK_FALSE(validate_features(dup, reg()).empty());
}

TEST_CASE("plural and determiner-required siblings coexist under one index") {
    auto a = simple_entry("map", "Noun", {"Noun_Determiner_not_required"}, {"wh-", "reflexive-", "plural"});
    auto b = simple_entry("map", "Noun", {"Base_Noun", "Noun_Determiner_required", "Noun_Modifier"}, {"wh-", "reflexive-"});
    CHECK(validate_entry(a, reg()).empty());
    CHECK(validate_entry(b, reg()).empty());
}

TEST_CASE("registry file parsing") {
    const std::string base = "# comment\nversion\t3\nframe\tNoun\tBase_Noun\tBN\nfeature\twh\twh+\t+wh\n";
    auto r = registry::parse(base);
    CHECK(r->version() == 3);
    CHECK(r->frames().size() == 1);
    CHECK(r->features().size() == 1);
    CHECK(r->frame(0).verbose_name == "Base_Noun");
    CHECK_THROWS_AS(r->frame(1), symbol_error);

    SUBCASE("comments and blank lines do not change the hash") {
        auto same = registry::parse("version\t3\n\n# other comment\nframe\tNoun\tBase_Noun\tBN\nfeature\twh\twh+\t+wh\n");
        CHECK(same->hash() == r->hash());
        auto different = registry::parse("version\t3\nframe\tNoun\tBase_Noun\tBNo\nfeature\twh\twh+\t+wh\n");
        CHECK(different->hash() != r->hash());
    }
    SUBCASE("malformed files are rejected") {
        CHECK_THROWS_AS(registry::parse(""), registry_error);
        CHECK_THROWS_AS(registry::parse("frame\tNoun\tBase_Noun\tBN\n"), registry_error);
        CHECK_THROWS_AS(registry::parse("version\tx\n"), registry_error);
        CHECK_THROWS_AS(registry::parse("version\t1\nframe\tNoun\tBase_Noun\n"), registry_error);
        CHECK_THROWS_AS(registry::parse("version\t1\nframe\tPronoun\tBase_Pronoun\tBP\n"), registry_error);
        CHECK_THROWS_AS(registry::parse("version\t1\nframe\tNoun\tBase Noun\tBN\n"), registry_error);
        CHECK_THROWS_AS(registry::parse("version\t1\nframe\tNoun\tA/B\tAB\n"), registry_error);
        CHECK_THROWS_AS(registry::parse("version\t1\nframe\tNoun\tA\tX\nframe\tVerb\tB\tX\n"), registry_error);
        CHECK_THROWS_AS(registry::parse("version\t1\nframe\tNoun\tA\tX\nframe\tVerb\tX\tY\n"), registry_error);
        CHECK_THROWS_AS(registry::parse("version\t1\nslot\tNoun\tA\tX\n"), registry_error);
    }
    SUBCASE("the shipped data file is the builtin registry") {
        auto shipped = registry::load(data_path("registry.tsv"));
        CHECK(shipped->hash() == reg().hash());
        CHECK(shipped->frames().size() == reg().frames().size());
    }
}

TEST_CASE("render mode names") {
    CHECK(parse_render_mode("verbose") == render_mode::verbose);
    CHECK(parse_render_mode("xtag") == render_mode::xtag);
    CHECK_THROWS(parse_render_mode("terse"));
}
