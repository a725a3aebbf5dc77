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

#include "doctest.h"

#include <array>
#include <cstdio>
#include <sys/wait.h>

using namespace synlex;
using namespace synlex::test;

namespace {

struct run_result {
    int exit_code = -1;
    std::string out; // stdout and stderr, interleaved
};

std::string quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out += c;
        }
    }
    return out + "'";
}

run_result run(const std::vector<std::string>& args, bool with_stderr = true) {
    std::string cmd = quote(SYNLEX_CLI);
    for (const auto& a : args) {
        cmd += " " + quote(a);
    }
    cmd += with_stderr ? " 2>&1" : " 2>/dev/null";
    run_result r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), n);
    }
    int status = ::pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("build then census on the fixtures") {
    scratch_dir dir;
    auto db = dir.file("fx.db");
    auto r = run({"build", data_path("fixtures.flat"), db});
    CHECK(r.exit_code == 0);
    r = run({"census", db});
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("total 17\n", 0) == 0);
    CHECK(contains(r.out, "Verb\t10 entries\t5 indexes\n"));
    CHECK(contains(r.out, "Verb Verb_Particle\t1 entries\t1 indexes\n"));

    r = run({"census", db, "--mode", "xtag"});
    CHECK(contains(r.out, "V\t10 entries\t5 indexes\n"));

    // An existing store is not overwritten by accident.
    r = run({"build", data_path("fixtures.flat"), db});
    CHECK(r.exit_code != 0);
    CHECK(run({"build", data_path("fixtures.flat"), db, "--force"}).exit_code == 0);
    CHECK(run({"verify", db}).exit_code == 0);
}

TEST_CASE("querying a missing store fails with the path") {
    scratch_dir dir;
    auto db = dir.file("missing.db");
    auto r = run({"query", db, "INDEX=need"});
    CHECK(r.exit_code != 0);
    CHECK(contains(r.out, db));
}

TEST_CASE("query prints every block for the index") {
    scratch_dir dir;
    auto db = dir.file("s.db");
    REQUIRE(run({"build", data_path("sample_lexicon.flat"), db}).exit_code == 0);
    auto r = run({"query", db, "INDEX=need"}, false);
    CHECK(r.exit_code == 0);
    std::size_t blocks = 0;
    for (auto at = r.out.find("INDEX: need\n"); at != std::string::npos; at = r.out.find("INDEX: need\n", at + 1)) {
        ++blocks;
    }
    CHECK(blocks == 5);
    CHECK(contains(r.out, "FRAME: Transitive_Verb\n"));

    r = run({"query", db, "EX=ticket"});
    CHECK(r.exit_code != 0);
}

TEST_CASE("usage errors") {
    auto r = run({"no-such-command"});
    CHECK(r.exit_code == 2);
    CHECK(run({}).exit_code == 2);
    r = run({"--help"});
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "query"));
    CHECK(contains(r.out, "stats"));
    CHECK(run({"query"}).exit_code == 2);
}

TEST_CASE("export writes a flat file in either spelling") {
    scratch_dir dir;
    auto db = dir.file("fx.db");
    REQUIRE(run({"build", data_path("fixtures.flat"), db}).exit_code == 0);
    CHECK(run({"export", db, "POS=Adverb", dir.file("adv.flat")}).exit_code == 0);
    CHECK(run({"export", db, "POS=Adverb", dir.file("adv-x.flat"), "--mode", "xtag"}).exit_code == 0);
    auto verbose = load_lexicon(dir.file("adv.flat"), reg());
    auto xtag_text = slurp(dir.file("adv-x.flat"));
    CHECK(verbose.entries.size() == 4);
    CHECK(contains(xtag_text, "POS: Ad\t"));
    CHECK(parse_lexicon(xtag_text, reg()).entries == verbose.entries);
}

TEST_CASE("put and delete from flat files") {
    scratch_dir dir;
    auto db = dir.file("fx.db");
    REQUIRE(run({"build", data_path("fixtures.flat"), db}).exit_code == 0);
    spit(dir.file("new.flat"), "INDEX: cat\tENTRY: cat\tPOS: Noun\tFRAME: Base_Noun\n");
    CHECK(run({"put", db, dir.file("new.flat")}).exit_code == 0);
    CHECK(run({"census", db}).out.rfind("total 18\n", 0) == 0);
    CHECK(run({"put", db, dir.file("new.flat")}).exit_code != 0);
    CHECK(run({"delete", db, dir.file("new.flat")}).exit_code == 0);
    CHECK(run({"census", db}).out.rfind("total 17\n", 0) == 0);

    spit(dir.file("bad.flat"), "INDEX: cat\tENTRY: cat\tPOS: Noun\n");
    auto r = run({"put", db, dir.file("bad.flat")});
    CHECK(r.exit_code != 0);
    CHECK(contains(r.out, "line 1"));
    CHECK(contains(r.out, "FRAME"));
}

TEST_CASE("coverage statistics") {
    scratch_dir dir;
    auto db = dir.file("s.db");
    REQUIRE(run({"build", data_path("sample_lexicon.flat"), db}).exit_code == 0);
    auto r = run({"stats", data_path("mini_corpus.tsv"), db, data_path("morph_sample.tsv"), data_path("tagmap_ptb.tsv"),
                  "--name", "mini", "--format", "kv"});
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "corpus=mini\nhits=368\ntotal=429\npercent=85.78\nnon_hits=61\n"));
    CHECK(contains(r.out, "missing.ProperNoun.percent=37.7\n"));

    r = run({"stats", data_path("mini_corpus.tsv"), db, data_path("morph_sample.tsv"), data_path("tagmap_ptb.tsv")});
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "Percent Hit"));
    CHECK(contains(r.out, "85.78%"));

    r = run({"morph-check", data_path("morph_sample.tsv"), db});
    CHECK(contains(r.out, "13"));
}

TEST_CASE("generate produces a loadable lexicon") {
    scratch_dir dir;
    auto out = dir.file("gen.flat");
    CHECK(run({"generate", "200", out, "--seed", "3"}).exit_code == 0);
    auto parsed = load_lexicon(out, reg());
    CHECK(parsed.diagnostics.empty());
    CHECK(parsed.entries.size() == 200);
    auto again = dir.file("gen2.flat");
    CHECK(run({"generate", "200", again, "--seed", "3"}).exit_code == 0);
    CHECK(slurp(out) == slurp(again));
}

TEST_CASE("compact keeps the contents") {
    scratch_dir dir;
    auto db = dir.file("fx.db");
    REQUIRE(run({"build", data_path("fixtures.flat"), db}).exit_code == 0);
    auto before = run({"census", db}).out;
    CHECK(run({"compact", db}).exit_code == 0);
    CHECK(run({"census", db}).out == before);
    CHECK(run({"verify", db}).exit_code == 0);
}
