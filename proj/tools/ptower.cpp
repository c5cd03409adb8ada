#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ptower/generators.hpp"
#include "ptower/io.hpp"
#include "ptower/verify.hpp"

namespace {

using namespace ptower;

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

uint64_t effective_seed(uint64_t seed) {
    if (const char* env = std::getenv("PTOWER_SEED")) return std::stoull(env);
    return seed;
}

int cmd_presentation(const std::string& file, int degree, bool relrel, bool reduce,
                     const std::string& out_path) {
    tower_bundle tb = io::parse_tower_file(file);
    auto vrep = validate(tb.tower);
    if (!vrep.ok()) {
        for (const auto& v : vrep.violations) std::cerr << "invalid tower: " << v << "\n";
        return 1;
    }
    presentation_options opts;
    opts.relrel = relrel || reduce;
    opts.reduce = reduce;
    chain_presentation cp = run_presentation(tb.tower, opts);

    std::ostringstream text;
    for (int d = 0; d <= cp.max_degree(); ++d) {
        if (degree >= 0 && d != degree) continue;
        const auto& dd = cp.deg(d);
        text << "degree " << d << ": generators " << dd.gens.size() << " relations "
             << dd.rels.size();
        if (opts.relrel) text << " relrels " << dd.live_rel_rels();
        text << "\n";
        graded_matrix p1 = cp.presentation_matrix(d);
        for (uint32_t j = 0; j < p1.cols(); ++j) {
            const auto& cl = p1.col_labels()[j];
            text << cl.name << "@" << tb.base->name(cl.grade) << ":";
            for (uint32_t i : p1.entries().col(j)) {
                const auto& rl = p1.row_labels()[i];
                text << " " << rl.name << "@" << tb.base->name(rl.grade);
            }
            text << "\n";
        }
    }
    text << "time_ms " << cp.wall_ms << "\n";
    std::cout << text.str();

    if (!out_path.empty()) {
        std::ostringstream ser;
        io::serialize_presentation(ser, cp, degree);
        write_output(out_path, ser.str());
    }
    return 0;
}

int cmd_pirep(const std::string& file, int degree, const std::string& out_path) {
    tower_bundle tb = io::parse_tower_file(file);
    presentation_options opts;
    opts.relrel = true;
    opts.reduce = true;
    chain_presentation cp = run_presentation(tb.tower, opts);
    pirep pr = assemble_pirep(cp, degree);
    std::ostringstream ser;
    io::serialize_pirep(ser, pr);
    write_output(out_path, ser.str());
    return 0;
}

int cmd_homology(const std::string& file, int degree, bool minimize, const std::string& out_path) {
    tower_bundle tb = io::parse_tower_file(file);
    presentation_options opts;
    opts.relrel = true;
    opts.reduce = true;
    chain_presentation cp = run_presentation(tb.tower, opts);
    pirep pr = assemble_pirep(cp, degree);
    homology_presentation_t hp = homology_presentation(pr, minimize);
    std::ostringstream ser;
    io::serialize_homology(ser, hp, degree);
    write_output(out_path, ser.str());
    return 0;
}

int cmd_verify(const std::string& file, int degree, bool quick) {
    tower_bundle tb = io::parse_tower_file(file);
    auto vrep = validate(tb.tower);
    if (!vrep.ok()) {
        for (const auto& v : vrep.violations) std::cout << "invalid_tower: FAIL " << v << "\n";
        return 1;
    }
    oracle::verify_options opts;
    opts.degree = degree;
    opts.quick = quick;
    oracle::report rep = oracle::full_verify(tb.tower, opts);
    for (const auto& l : rep.lines) {
        std::cout << l.name << " degree " << l.degree << ": " << (l.pass ? "PASS" : "FAIL");
        if (!l.pass && !l.detail.empty()) std::cout << " " << l.detail;
        std::cout << "\n";
    }
    return rep.ok() ? 0 : 1;
}

int cmd_stats(const std::string& file) {
    tower_bundle tb = io::parse_tower_file(file);
    const auto& t = tb.tower;
    std::cout << "n " << t.size() << "\n";
    std::cout << "t0 " << tb.base->node_count() << "\n";
    std::cout << "t1 " << tb.base->edge_count() << "\n";
    std::cout << "generators " << t.generators.size() << "\n";
    std::cout << "events " << t.events.size() << "\n";
    int maxdeg = t.max_degree();
    for (int d = 0; d <= maxdeg; ++d) {
        std::size_t n = 0;
        for (const auto& g : t.generators)
            if (g.degree() == d) ++n;
        std::cout << "degree " << d << ": " << n << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimal presentations and projective implicit representations of poset towers"};
    app.require_subcommand(1);

    std::string file, out_path;
    int degree = -1;
    bool relrel = false, reduce = false, quick = false, minimize = false;

    auto* cmd_pres = app.add_subcommand("presentation", "compute the chain presentations");
    cmd_pres->add_option("file", file)->required();
    cmd_pres->add_option("--degree", degree);
    cmd_pres->add_flag("--relrel", relrel);
    cmd_pres->add_flag("--reduce", reduce);
    cmd_pres->add_option("--out", out_path);

    auto* cmd_pi = app.add_subcommand("pirep", "assemble a projective implicit representation");
    cmd_pi->add_option("file", file)->required();
    cmd_pi->add_option("--degree", degree)->required();
    cmd_pi->add_option("--out", out_path);

    auto* cmd_hom = app.add_subcommand("homology", "present the homology of one degree");
    cmd_hom->add_option("file", file)->required();
    cmd_hom->add_option("--degree", degree)->required();
    cmd_hom->add_flag("--minimize", minimize);
    cmd_hom->add_option("--out", out_path);

    auto* cmd_ver = app.add_subcommand("verify", "run the brute-force oracle checks");
    cmd_ver->add_option("file", file)->required();
    cmd_ver->add_option("--degree", degree);
    cmd_ver->add_flag("--quick", quick);

    auto* cmd_st = app.add_subcommand("stats", "input size summary");
    cmd_st->add_option("file", file)->required();

    auto* cmd_gen = app.add_subcommand("gen", "emit a generated tower file");
    cmd_gen->require_subcommand(1);
    uint64_t seed = 1;
    uint32_t nx = 3, ny = 3, len = 8, simplices = 12, nodes = 10, edges = 14, gens = 16, events = 4;
    double fill = 12.0;
    auto* gen_grid = cmd_gen->add_subcommand("grid", "one-critical multi-filtration on a grid");
    gen_grid->add_option("--nx", nx);
    gen_grid->add_option("--ny", ny);
    gen_grid->add_option("--fill", fill);
    gen_grid->add_option("--seed", seed);
    gen_grid->add_option("--out", out_path);
    auto* gen_chain = cmd_gen->add_subcommand("chain", "filtration on a chain poset");
    gen_chain->add_option("--len", len);
    gen_chain->add_option("--simplices", simplices);
    gen_chain->add_option("--seed", seed);
    gen_chain->add_option("--out", out_path);
    auto* gen_random = cmd_gen->add_subcommand("random", "random tower on a random poset");
    gen_random->add_option("--nodes", nodes);
    gen_random->add_option("--edges", edges);
    gen_random->add_option("--gens", gens);
    gen_random->add_option("--events", events);
    gen_random->add_option("--seed", seed);
    gen_random->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_pres->parsed()) return cmd_presentation(file, degree, relrel, reduce, out_path);
        if (cmd_pi->parsed()) return cmd_pirep(file, degree, out_path);
        if (cmd_hom->parsed()) return cmd_homology(file, degree, minimize, out_path);
        if (cmd_ver->parsed()) return cmd_verify(file, degree, quick);
        if (cmd_st->parsed()) return cmd_stats(file);
        if (cmd_gen->parsed()) {
            tower_bundle tb;
            uint64_t s = effective_seed(seed);
            if (gen_grid->parsed())
                tb = gen::grid_tower(nx, ny, fill, s);
            else if (gen_chain->parsed())
                tb = gen::chain_tower(len, simplices, s);
            else
                tb = gen::random_tower(nodes, edges, gens, events, s);
            write_output(out_path, io::serialize_tower(tb.tower));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
