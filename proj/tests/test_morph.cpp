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
#include "synlex/lexstore.hpp"
#include "synlex/morph.hpp"

#include "doctest.h"

using namespace synlex;
using namespace synlex::test;

TEST_CASE("a single row maps a surface form to its root") {
    auto t = morph_table::parse("maps\tNoun\tmap\tplural\n");
    CHECK(t.size() == 1);
    auto a = t.roots_of("maps", pos::noun);
    REQUIRE(a.size() == 1);
    CHECK(a.begin()->root == "map");
    CHECK(a.begin()->features == std::vector<std::string>{"plural"});
    CHECK(t.roots_of("maps", pos::verb).empty());
    CHECK(t.roots_of("Maps", pos::noun).empty());
}

TEST_CASE("an empty table knows nothing") {
    auto t = morph_table::parse("");
    CHECK(t.empty());
    CHECK(t.roots_of("maps", pos::noun).empty());
    CHECK(t.targets().empty());
    CHECK(morph_table::parse("# only a comment\n\n").empty());
}

TEST_CASE("the sample table") {
    auto t = morph_table::load(data_path("morph_sample.tsv"));
    CHECK(t.size() >= 200);
    CHECK(t.roots_of("has", pos::verb) == std::set<morph_analysis>{{"have", {"present-3sg"}}});
    // A listed root analyses to itself with no features.
    CHECK(t.roots_of("map", pos::noun) == std::set<morph_analysis>{{"map", {}}});
    CHECK(t.roots_of("qwerty", pos::noun).empty());
    CHECK(t.roots_of("qwerty", pos::verb).empty());
    // One surface form, several analyses.
    auto had = t.roots_of("had", pos::verb);
    CHECK(had == std::set<morph_analysis>{{"have", {"past"}}, {"have", {"past-participle"}}});
}

TEST_CASE("duplicate rows collapse and features keep their order") {
    auto t = morph_table::parse("# header\n"
                                "maps\tNoun\tmap\tplural\n"
                                "maps\tNoun\tmap\tplural\n"
                                "\n"
                                "went\tVerb\tgo\tpast,irregular\n"
                                "went\tV\tgo\tpast,irregular\r\n");
    CHECK(t.size() == 2);
    CHECK(t.roots_of("went", pos::verb) == std::set<morph_analysis>{{"go", {"past", "irregular"}}});
    CHECK(t.targets() == std::set<missing_root>{{"go", pos::verb}, {"map", pos::noun}});
}

TEST_CASE("malformed rows name their line") {
    auto line_of = [](std::string_view text) -> std::size_t {
        try {
            morph_table::parse(text);
        } catch (const morph_format_error& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("maps\tNoun\tmap\nbad row\n") == 2);
    CHECK(line_of("# c\n\nmaps\tNoun\n") == 3);
    CHECK(line_of("maps\tPronoun\tmap\n") == 1);
    CHECK(line_of("maps\tNoun\t\tplural\n") == 1);
    CHECK(line_of("maps\tNoun\tmap\tplural,,x\n") == 1);
    CHECK(line_of("maps\tNoun\tmap\tplural\textra\n") == 1);
    CHECK_THROWS_AS(morph_table::parse("maps\tNoun\tma\xFF\n"), decode_error);
    CHECK_THROWS_AS(morph_table::load("/nonexistent/morph.tsv"), io_error);
}

TEST_CASE("superset check lists roots the lexicon lacks") {
    scratch_dir dir;
    auto s = lex_store::open(dir.file("lex.db"), open_mode::read_write);
    for (const auto& e : fixtures()) {
        s.put(e);
    }
    auto t = morph_table::parse("maps\tNoun\tmap\tplural\n"
                                "maps\tVerb\tmap\tpresent-3sg\n"
                                "has\tVerb\thave\tpresent-3sg\n"
                                "cats\tNoun\tcat\tplural\n"
                                "haves\tNoun\thave\tplural\n");
    auto missing = check_superset(t, s);
    CHECK(missing == std::vector<missing_root>{{"cat", pos::noun}, {"have", pos::noun}});

    s.put(simple_entry("cat", "Noun", {"Base_Noun"}));
    CHECK(check_superset(t, s) == std::vector<missing_root>{{"have", pos::noun}});
    CHECK(check_superset(morph_table::parse(""), s).empty());
}
