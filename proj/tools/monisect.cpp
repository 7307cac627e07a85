// Command-line surface: classify monoids, decide intersection non-emptiness,
// compress and verify witnesses, run the reductions, generate test corpora,
// and check or solve tiling systems. All input and output is JSON; every
// command reads from files (or "-" for standard input) and writes to standard
// output unless --out is given.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "monisect/compress.hpp"
#include "monisect/gen.hpp"
#include "monisect/instance.hpp"
#include "monisect/json_io.hpp"
#include "monisect/models.hpp"
#include "monisect/monoid.hpp"
#include "monisect/reductions.hpp"
#include "monisect/tiling.hpp"
#include "monisect/varieties.hpp"

namespace {

using monisect::error;
using monisect::json;

json read_json_file(const std::string& path) {
    try {
        if (path == "-") {
            std::stringstream buf;
            buf << std::cin.rdbuf();
            return json::parse(buf.str());
        }
        std::ifstream in(path);
        if (!in)
            monisect::fail("parse_error", "cannot open " + path);
        return json::parse(in);
    } catch (const json::exception& e) {
        monisect::fail("parse_error", std::string("invalid JSON in ") + path + ": " + e.what());
    }
}

struct Output {
    std::string path; // empty = stdout

    void emit(const json& j) const { emit_text(j.dump(2) + "\n"); }

    void emit_text(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path);
        if (!out)
            monisect::fail("io_error", "cannot write " + path);
        out << text;
    }
};

// Errors that blame the input rather than the computation; they exit with 2.
bool input_error(const std::string& code) {
    static const char* codes[] = {
        "parse_error",        "not_associative", "bad_table",          "bad_identity",
        "bad_morphism",       "bad_instance",    "bad_dfa",            "bad_transformation",
        "bad_tiling_system",  "bad_slp",         "cycle",              "undeclared_symbol",
        "alphabet_mismatch",  "bad_element",     "dimension_mismatch", "unknown_letter",
        "index_out_of_range", "disjointness",    "non_singleton_accepting", "bad_word",
    };
    for (const char* c : codes)
        if (code == c)
            return true;
    return false;
}

monisect::Word parse_word_argument(const std::vector<std::string>& alphabet,
                                   const std::string& arg) {
    if (arg == "-" || std::ifstream(arg).good())
        return monisect::word_from_json(alphabet, read_json_file(arg));
    if (!arg.empty() && arg.front() == '[') {
        try {
            return monisect::word_from_json(alphabet, json::parse(arg));
        } catch (const json::exception& e) {
            monisect::fail("parse_error", std::string("invalid word JSON: ") + e.what());
        }
    }
    monisect::Word w;
    for (char c : arg)
        w.push_back(monisect::require_letter(alphabet, std::string(1, c)));
    return w;
}

std::string human_classify_table(const monisect::Monoid& m, const monisect::VarietyReport& r) {
    std::ostringstream out;
    auto row = [&](const std::string& name, bool value, const std::string& witness) {
        out << name;
        for (std::size_t i = name.size(); i < 14; ++i)
            out << ' ';
        out << (value ? "yes" : "no");
        if (!witness.empty())
            out << "   witness: " << witness;
        out << '\n';
    };
    row("is_group", r.is_group, r.group_witness ? m.name(*r.group_witness) : "");
    row("is_aperiodic", r.is_aperiodic,
        r.aperiodic_witness ? m.name(*r.aperiodic_witness) : "");
    row("in_DS", r.in_ds,
        r.ds_witness ? m.name(r.ds_witness->first) + ", " + m.name(r.ds_witness->second) : "");
    if (r.ds_char4)
        row("in_DS_char4", *r.ds_char4, "");
    row("in_DO", r.in_do,
        r.do_witness ? m.name(r.do_witness->first) + ", " + m.name(r.do_witness->second) : "");
    return out.str();
}

json witness_json(const monisect::Instance& inst, const std::optional<monisect::Word>& w) {
    if (!w)
        return nullptr;
    return monisect::word_to_json(inst.alphabet, *w);
}

} // namespace

int main(int argc, char** argv) {
    using namespace monisect;

    CLI::App app{"Intersection non-emptiness for morphism-recognized languages, "
                 "with SLP witness compression and tiling reductions"};
    app.require_subcommand(1);
    app.fallthrough();

    Output out;
    app.add_option("--out", out.path, "Write the result to a file instead of stdout");

    // classify
    std::string classify_path;
    bool char4 = false, human = false;
    std::uint64_t budget_closure = 64;
    auto* cmd_classify = app.add_subcommand("classify", "Variety membership of a monoid");
    cmd_classify->add_option("monoid", classify_path, "Monoid JSON file")->required();
    cmd_classify->add_flag("--char4", char4, "Also run the division-based DS test");
    cmd_classify->add_option("--budget-closure", budget_closure,
                             "Size cap for the division search of --char4");
    cmd_classify->add_flag("--human", human, "Print a plain-text table");

    // solve
    std::string solve_path;
    std::uint64_t budget_states = 10'000'000;
    auto* cmd_solve = app.add_subcommand("solve", "Decide intersection non-emptiness");
    cmd_solve->add_option("instance", solve_path, "Instance JSON file")->required();
    cmd_solve->add_option("--budget-states", budget_states, "BFS state budget");

    // compress
    std::string compress_path, compress_word;
    bool lcm_omega = false;
    std::uint64_t budget_sift = 10'000'000;
    auto* cmd_compress =
        app.add_subcommand("compress", "Compress a word into an image-equivalent SLP");
    cmd_compress->add_option("instance", compress_path, "Instance JSON file")->required();
    cmd_compress->add_option("word", compress_word, "Word (inline or a JSON file)")->required();
    cmd_compress->add_flag("--lcm-omega", lcm_omega, "Use lcm of group orders as omega");
    cmd_compress->add_option("--budget-sift", budget_sift, "Sift call budget");

    // verify
    std::string verify_instance, verify_slp;
    auto* cmd_verify = app.add_subcommand("verify", "Check an SLP against an instance");
    cmd_verify->add_option("instance", verify_instance, "Instance JSON file")->required();
    cmd_verify->add_option("slp", verify_slp, "SLP JSON file")->required();

    // reduce
    auto* cmd_reduce = app.add_subcommand("reduce", "Constructive translations");
    cmd_reduce->require_subcommand(1);
    std::string reduce_path, reduce_monoid_path, reduce_x;
    auto* red_dfa = cmd_reduce->add_subcommand("to-dfa", "Instance to a DFA list");
    red_dfa->add_option("instance", reduce_path, "Instance JSON file")->required();
    auto* red_tm =
        cmd_reduce->add_subcommand("to-transmon", "Singleton instance to transformations");
    red_tm->add_option("instance", reduce_path, "Instance JSON file")->required();
    auto* red_sq =
        cmd_reduce->add_subcommand("from-square-tiling", "Square tiling to an instance");
    red_sq->add_option("tiling", reduce_path, "Tiling-system JSON file")->required();
    red_sq->add_option("--monoid", reduce_monoid_path, "Carrier monoid JSON file");
    red_sq->add_option("--x", reduce_x, "Distinguished non-identity element");
    auto* red_cr =
        cmd_reduce->add_subcommand("from-corridor-tiling", "Corridor tiling to an instance");
    red_cr->add_option("tiling", reduce_path, "Tiling-system JSON file")->required();

    // gen
    std::string gen_kind;
    std::uint64_t seed = 0;
    std::string filter;
    std::uint32_t g_states = 3, g_letters = 2, g_k = 2, g_alphabet = 2;
    std::uint32_t g_width = 2, g_tiles = 3, g_labels = 2;
    bool g_neutral = false;
    auto* cmd_gen = app.add_subcommand("gen", "Seeded corpus generators");
    cmd_gen->add_option("kind", gen_kind, "monoid | instance | tiling | group-tuple")
        ->required();
    cmd_gen->add_option("--seed", seed, "Generator seed")->required();
    cmd_gen->add_option("--filter", filter, "Variety filter: G | A | DS | DO");
    cmd_gen->add_option("--states", g_states, "DFA states for monoid generation");
    cmd_gen->add_option("--letters", g_letters, "DFA letters for monoid generation");
    cmd_gen->add_option("--k", g_k, "Recognizers per instance");
    cmd_gen->add_option("--alphabet", g_alphabet, "Instance alphabet size");
    cmd_gen->add_option("--width,--n", g_width, "Tiling width");
    cmd_gen->add_option("--tiles", g_tiles, "Tile count upper bound");
    cmd_gen->add_option("--labels", g_labels, "Label count");
    cmd_gen->add_flag("--neutral", g_neutral, "Add a letter mapped to every identity");

    // check-tiling
    std::string ct_system, ct_tiling;
    auto* cmd_check = app.add_subcommand("check-tiling", "Validate a grid against a system");
    cmd_check->add_option("system", ct_system, "Tiling-system JSON file")->required();
    cmd_check->add_option("tiling", ct_tiling, "Tiling JSON file")->required();

    // solve-tiling
    std::string st_system, st_mode = "square";
    std::uint64_t st_budget = 10'000'000;
    auto* cmd_st = app.add_subcommand("solve-tiling", "Brute-force tiling solvers");
    cmd_st->add_option("system", st_system, "Tiling-system JSON file")->required();
    cmd_st->add_option("--mode", st_mode, "square | corridor")
        ->check(CLI::IsMember({"square", "corridor"}));
    cmd_st->add_option("--budget", st_budget, "Square solver placement budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    JsonLoader loader = [](const std::string& path) { return read_json_file(path); };

    try {
        if (cmd_classify->parsed()) {
            Monoid m = monoid_from_json(read_json_file(classify_path));
            VarietyReport r = classify(m, char4, budget_closure);
            if (human)
                out.emit_text(human_classify_table(m, r));
            else
                out.emit(variety_report_to_json(m, r));
        } else if (cmd_solve->parsed()) {
            Instance inst = instance_from_json(read_json_file(solve_path), loader);
            SolveStats stats;
            auto w = nonempty_bfs(inst, budget_states, &stats);
            json j;
            j["nonempty"] = w.has_value();
            j["witness"] = witness_json(inst, w);
            j["states_explored"] = stats.states_explored;
            out.emit(j);
        } else if (cmd_compress->parsed()) {
            Instance inst = instance_from_json(read_json_file(compress_path), loader);
            Word w = parse_word_argument(inst.alphabet, compress_word);
            Slp s = compress_witness(inst, w, {lcm_omega, budget_sift});
            json j;
            j["slp"] = slp_to_json(s);
            json report;
            report["original_length"] = w.size();
            report["slp_size"] = slp_size(s);
            json images = json::array();
            for (const auto& r : inst.recognizers)
                images.push_back(r.h.target.name(eval_morphism(s, r.h)));
            report["images"] = std::move(images);
            j["report"] = std::move(report);
            out.emit(j);
        } else if (cmd_verify->parsed()) {
            Instance inst = instance_from_json(read_json_file(verify_instance), loader);
            Slp s = slp_from_json(read_json_file(verify_slp));
            json j;
            j["member"] = member_slp(inst, s);
            json images = json::array();
            for (const auto& r : inst.recognizers)
                images.push_back(r.h.target.name(eval_morphism(s, r.h)));
            j["images"] = std::move(images);
            out.emit(j);
        } else if (red_dfa->parsed()) {
            Instance inst = instance_from_json(read_json_file(reduce_path), loader);
            json j;
            json dfas = json::array();
            for (const auto& r : inst.recognizers)
                dfas.push_back(dfa_to_json(monoid_to_dfa(r.h, r.accepting)));
            j["dfas"] = std::move(dfas);
            out.emit(j);
        } else if (red_tm->parsed()) {
            Instance inst = instance_from_json(read_json_file(reduce_path), loader);
            auto ti = instance_to_transformation(inst);
            json j;
            j["n"] = ti.domain;
            json gens = json::object();
            for (Letter a = 0; a < inst.alphabet.size(); ++a)
                gens[inst.alphabet[a]] = ti.generators[a].map;
            j["generators"] = std::move(gens);
            j["target"] = ti.target.map;
            out.emit(j);
        } else if (red_sq->parsed()) {
            TilingSystem ts = tiling_system_from_json(read_json_file(reduce_path));
            Instance inst;
            if (reduce_monoid_path.empty()) {
                inst = square_tiling_to_instance(ts);
            } else {
                Monoid m = monoid_from_json(read_json_file(reduce_monoid_path));
                Elem x = reduce_x.empty() ? (m.identity() == 0 ? 1 : 0) : m.require(reduce_x);
                inst = square_tiling_to_instance(ts, m, x);
            }
            out.emit(instance_to_json(inst));
        } else if (red_cr->parsed()) {
            TilingSystem ts = tiling_system_from_json(read_json_file(reduce_path));
            CorridorReduction red = corridor_tiling_to_instance(ts);
            out.emit(instance_to_json(red.instance));
        } else if (cmd_gen->parsed()) {
            gen::VarietyFilter vf = gen::VarietyFilter::none;
            if (filter == "G")
                vf = gen::VarietyFilter::group;
            else if (filter == "A")
                vf = gen::VarietyFilter::aperiodic;
            else if (filter == "DS")
                vf = gen::VarietyFilter::ds;
            else if (filter == "DO")
                vf = gen::VarietyFilter::do_;
            else if (!filter.empty())
                fail("parse_error", "unknown filter " + filter);
            if (gen_kind == "monoid") {
                Monoid m = vf == gen::VarietyFilter::do_
                               ? gen::random_do_monoid(seed)
                               : gen::random_monoid(seed, {g_states, g_states, g_letters,
                                                           g_letters, vf, 2000});
                out.emit(monoid_to_json(m));
            } else if (gen_kind == "instance") {
                Instance inst = gen::random_instance(
                    seed, {g_k, g_alphabet, vf == gen::VarietyFilter::do_, g_neutral,
                           {g_states, g_states, g_letters, g_letters, vf, 2000}});
                out.emit(instance_to_json(inst));
            } else if (gen_kind == "tiling") {
                out.emit(tiling_system_to_json(
                    gen::random_tiling(seed, {g_width, g_labels, g_tiles})));
            } else if (gen_kind == "group-tuple") {
                out.emit(group_tuple_to_json(gen::random_group_tuple(seed, {g_k, g_alphabet})));
            } else {
                fail("parse_error", "unknown generator kind " + gen_kind);
            }
        } else if (cmd_check->parsed()) {
            TilingSystem ts = tiling_system_from_json(read_json_file(ct_system));
            Tiling t = tiling_from_json(read_json_file(ct_tiling), ts.width);
            auto violation = check_tiling(ts, t);
            json j;
            j["ok"] = !violation.has_value();
            if (violation) {
                j["condition"] = violation->condition;
                j["row"] = violation->row;
                j["col"] = violation->col;
            }
            out.emit(j);
        } else if (cmd_st->parsed()) {
            TilingSystem ts = tiling_system_from_json(read_json_file(st_system));
            std::optional<Tiling> t =
                st_mode == "square" ? solve_square(ts, st_budget) : solve_corridor(ts);
            json j;
            j["solvable"] = t.has_value();
            if (t) {
                j["rows"] = t->rows;
                j["grid"] = tiling_to_json(*t)["grid"];
            } else {
                j["rows"] = nullptr;
                j["grid"] = nullptr;
            }
            out.emit(j);
        }
    } catch (const error& e) {
        json j;
        j["error"] = e.code();
        j["detail"] = e.what();
        if (e.code() == "not_associative" && e.items().size() == 3)
            j["triple"] = e.items();
        out.emit(j);
        return input_error(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        json j;
        j["error"] = "internal";
        j["detail"] = e.what();
        out.emit(j);
        return 1;
    }
    return 0;
}
