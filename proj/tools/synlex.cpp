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

// synlex: command-line front end for building, querying, curating and
// evaluating a lexicon store.

#include "synlex/coverage.hpp"
#include "synlex/flatfile.hpp"
#include "synlex/lexstore.hpp"
#include "synlex/morph.hpp"
#include "synlex/query.hpp"
#include "synlex/service.hpp"
#include "synlex/synth.hpp"

#include "CLI11.hpp"

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

using namespace synlex;

constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

struct options {
    std::string registry_path;
    std::string mode = "verbose";
    std::string store;
    std::string input;
    std::string output;
    std::string query_text;
    std::string corpus;
    std::string morph;
    std::string tagmap;
    std::string name;
    std::string format = "table";
    std::string host = "127.0.0.1";
    int port = 8080;
    std::size_t count = 0;
    uint64_t seed = 1;
    bool force = false;
};

std::shared_ptr<const registry> load_registry(const options& o) {
    return o.registry_path.empty() ? registry::builtin() : registry::load(o.registry_path);
}

lex_store open_store(const options& o, open_mode mode) {
    if (mode == open_mode::read_only && !std::filesystem::exists(o.store)) {
        throw io_error("cannot open " + o.store + ": no such file");
    }
    return lex_store::open(o.store, mode, load_registry(o));
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Parses a flat file, printing every diagnostic as `path:line: ...`.
/// Throws when the file has errors.
std::vector<lex_entry> read_flat(const std::string& path, const registry& reg) {
    auto result = parse_lexicon(read_input(path), reg);
    for (const auto& d : result.diagnostics) {
        std::cerr << path << ":" << d.str() << "\n";
    }
    if (result.has_errors()) {
        throw error(path + ": lexicon has errors; nothing was written");
    }
    return std::move(result.entries);
}

int cmd_build(const options& o) {
    auto reg = load_registry(o);
    auto entries = read_flat(o.input, *reg);
    if (std::filesystem::exists(o.store)) {
        if (!o.force) {
            throw io_error(o.store + " already exists; pass --force to replace it");
        }
        std::filesystem::remove(o.store);
    }
    auto store = lex_store::open(o.store, open_mode::read_write, reg);
    for (const auto& e : entries) {
        store.put(e);
    }
    store.close();
    std::cout << "stored " << entries.size() << " entries in " << o.store << "\n";
    return 0;
}

int cmd_verify(const options& o) {
    auto store = open_store(o, open_mode::read_only);
    auto r = store.verify();
    std::cout << "records " << r.records << "\n"
              << "puts " << r.puts << "\n"
              << "deletes " << r.deletes << "\n"
              << "replaces " << r.replaces << "\n"
              << "live " << r.live << "\n";
    for (const auto& p : r.problems) {
        std::cerr << o.store << ": " << p << "\n";
    }
    std::cout << (r.ok() ? "ok" : "damaged") << "\n";
    return r.ok() ? 0 : exit_failure;
}

int cmd_compact(const options& o) {
    auto store = open_store(o, open_mode::read_write);
    auto before = std::filesystem::file_size(o.store);
    store.compact();
    store.close();
    std::cout << "compacted " << o.store << ": " << before << " -> " << std::filesystem::file_size(o.store)
              << " bytes\n";
    return 0;
}

int cmd_census(const options& o) {
    auto store = open_store(o, open_mode::read_only);
    auto c = store.census();
    auto mode = parse_render_mode(o.mode);
    std::cout << "total " << c.total << "\n";
    for (const auto& [tag, n] : c.by_pos) {
        std::cout << tag.str(mode) << "\t" << n.entries << " entries\t" << n.distinct_indexes << " indexes\n";
    }
    return 0;
}

int cmd_query(const options& o) {
    auto store = open_store(o, open_mode::read_only);
    auto mode = parse_render_mode(o.mode);
    auto rs = eval_query(store, query::parse(o.query_text));
    bool first = true;
    for (const auto& row : rs.rows()) {
        if (!first) {
            std::cout << "\n";
        }
        first = false;
        std::cout << render_entry(row.entry, store.reg(), mode);
    }
    std::cerr << rs.size() << (rs.size() == 1 ? " entry" : " entries") << "\n";
    return 0;
}

int cmd_export(const options& o) {
    auto store = open_store(o, open_mode::read_only);
    auto rs = eval_query(store, query::parse(o.query_text));
    export_results(rs, store, o.output, parse_render_mode(o.mode));
    std::cout << "exported " << rs.size() << " entries to " << o.output << "\n";
    return 0;
}

int cmd_put(const options& o) {
    auto store = open_store(o, open_mode::read_write);
    auto entries = read_flat(o.input, store.reg());
    for (const auto& e : entries) {
        store.put(e);
    }
    store.close();
    std::cout << "added " << entries.size() << " entries\n";
    return 0;
}

int cmd_delete(const options& o) {
    auto store = open_store(o, open_mode::read_write);
    auto entries = read_flat(o.input, store.reg());
    for (const auto& e : entries) {
        store.remove(e);
    }
    store.close();
    std::cout << "deleted " << entries.size() << " entries\n";
    return 0;
}

int cmd_stats(const options& o) {
    auto store = open_store(o, open_mode::read_only);
    auto morph = morph_table::load(o.morph);
    auto tags = tag_map::load(o.tagmap);
    auto name = o.name.empty() ? std::filesystem::path(o.corpus).stem().string() : o.name;
    auto report = make_coverage_report(name, read_corpus(read_input(o.corpus), tags), store, morph);
    if (o.format == "table" || o.format == "both") {
        std::cout << format_report_table({report});
    }
    if (o.format == "both") {
        std::cout << "\n";
    }
    if (o.format == "kv" || o.format == "both") {
        std::cout << format_report_kv(report);
    }
    return 0;
}

int cmd_morph_check(const options& o) {
    auto store = open_store(o, open_mode::read_only);
    auto missing = check_superset(morph_table::load(o.morph), store);
    for (const auto& m : missing) {
        std::cout << m.root << "\t" << pos_name(m.category) << "\n";
    }
    std::cerr << missing.size() << " morphology targets missing from the lexicon\n";
    return missing.empty() ? 0 : exit_failure;
}

int cmd_generate(const options& o) {
    auto reg = load_registry(o);
    synth_options so;
    so.seed = o.seed;
    auto entries = synthesize_entries(o.count, *reg, so);
    auto text = serialize_lexicon(entries, *reg, parse_render_mode(o.mode));
    if (o.output == "-") {
        std::cout << text;
    } else {
        std::ofstream out(o.output, std::ios::binary);
        out << text;
        if (!out) {
            throw io_error("cannot write " + o.output);
        }
    }
    return 0;
}

http_server* running_server = nullptr;

extern "C" void on_signal(int) {
    if (running_server) {
        running_server->stop();
    }
}

int cmd_serve(const options& o) {
    auto store = open_store(o, open_mode::read_write);
    morph_table morph;
    if (!o.morph.empty()) {
        morph = morph_table::load(o.morph);
    }
    std::optional<tag_map> tags;
    if (!o.tagmap.empty()) {
        tags = tag_map::load(o.tagmap);
    }
    service svc(std::move(store), std::move(morph), std::move(tags));
    http_server server(svc);
    int port = server.bind(o.host, o.port);
    std::cout << "serving " << o.store << " on http://" << o.host << ":" << port << std::endl;
    running_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    server.listen();
    running_server = nullptr;
    svc.close();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"synlex: syntactic lexicon store, query and coverage tool"};
    app.require_subcommand(1);
    options o;
    app.add_option("--registry", o.registry_path, "Frame/feature registry file (default: builtin)")
      ->check(CLI::ExistingFile);

    auto mode_option = [&](CLI::App* sub) {
        sub->add_option("--mode", o.mode, "Symbol spelling: verbose or xtag")
          ->check(CLI::IsMember({"verbose", "xtag"}));
    };

    std::function<int(const options&)> action;
    auto command = [&](const char* name, const char* help, int (*fn)(const options&)) {
        auto* sub = app.add_subcommand(name, help);
        sub->callback([&action, fn] { action = fn; });
        return sub;
    };

    auto* build = command("build", "Build a store from a flat file", cmd_build);
    build->add_option("flatfile", o.input, "Flat lexicon file ('-' for stdin)")->required();
    build->add_option("store", o.store, "Store file to create")->required();
    build->add_flag("--force", o.force, "Replace an existing store");

    auto* verify = command("verify", "Check every record and the index of a store", cmd_verify);
    verify->add_option("store", o.store)->required();

    auto* compact = command("compact", "Rewrite a store without dead records", cmd_compact);
    compact->add_option("store", o.store)->required();

    auto* census = command("census", "Entry counts per part of speech", cmd_census);
    census->add_option("store", o.store)->required();
    mode_option(census);

    auto* query_cmd = command("query", "Print entries matching a query, e.g. 'POS=Noun FS=wh+'", cmd_query);
    query_cmd->add_option("store", o.store)->required();
    query_cmd->add_option("query", o.query_text)->required();
    mode_option(query_cmd);

    auto* export_cmd = command("export", "Save the entries matching a query as a flat file", cmd_export);
    export_cmd->add_option("store", o.store)->required();
    export_cmd->add_option("query", o.query_text)->required();
    export_cmd->add_option("output", o.output, "Flat file to write")->required();
    mode_option(export_cmd);

    auto* put = command("put", "Add the entries of a flat file to a store", cmd_put);
    put->add_option("store", o.store)->required();
    put->add_option("flatfile", o.input, "Flat lexicon file ('-' for stdin)")->required();

    auto* del = command("delete", "Remove the entries of a flat file from a store", cmd_delete);
    del->add_option("store", o.store)->required();
    del->add_option("flatfile", o.input, "Flat lexicon file ('-' for stdin)")->required();

    auto* stats = command("stats", "Corpus coverage report", cmd_stats);
    stats->add_option("corpus", o.corpus, "token<TAB>tag corpus file")->required();
    stats->add_option("store", o.store)->required();
    stats->add_option("morph", o.morph, "Morphology table")->required()->check(CLI::ExistingFile);
    stats->add_option("tagmap", o.tagmap, "Corpus tag map")->required()->check(CLI::ExistingFile);
    stats->add_option("--name", o.name, "Corpus name in the report (default: file stem)");
    stats->add_option("--format", o.format, "table, kv or both")->check(CLI::IsMember({"table", "kv", "both"}));

    auto* morph_check = command("morph-check", "List morphology roots missing from the lexicon", cmd_morph_check);
    morph_check->add_option("morph", o.morph)->required()->check(CLI::ExistingFile);
    morph_check->add_option("store", o.store)->required();

    auto* generate = command("generate", "Write a synthetic flat lexicon", cmd_generate);
    generate->add_option("count", o.count, "Number of entries")->required();
    generate->add_option("output", o.output, "Flat file to write ('-' for stdout)")->required();
    generate->add_option("--seed", o.seed, "Random seed");
    mode_option(generate);

    auto* serve = command("serve", "Run the curation HTTP service", cmd_serve);
    serve->add_option("store", o.store)->required();
    serve->add_option("--morph", o.morph, "Morphology table for coverage requests")->check(CLI::ExistingFile);
    serve->add_option("--tagmap", o.tagmap, "Default tag map for coverage requests")->check(CLI::ExistingFile);
    serve->add_option("--host", o.host, "Bind address");
    serve->add_option("--port", o.port, "Port (0 picks a free one)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_usage;
    }

    try {
        return action(o);
    } catch (const synlex::validation_error& e) {
        std::cerr << "synlex: " << e.what() << "\n";
        for (const auto& v : e.violations()) {
            std::cerr << "  " << v.field << ": " << v.message << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "synlex: " << e.what() << "\n";
    }
    return exit_failure;
}
