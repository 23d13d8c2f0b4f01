// fcalc: build the index categories, run towers and cube predicates, and
// drive the verification battery from the command line.
//
// exit codes: 0 success, 1 property failure/refutation, 2 usage error,
// 3 guard exceeded

#include "CLI11.hpp"
#include "fc/json_io.hpp"
#include "fc/verify.hpp"

#include <fstream>
#include <iostream>

using namespace fc;

namespace {

std::string out_dir() {
    const char* v = std::getenv("FCALC_OUT");
    return v ? std::string(v) : std::string(".");
}

void emit(const Json& j, const std::string& out, bool table, const std::string& table_text) {
    if (!out.empty()) {
        std::ofstream f(out.front() == '/' ? out : out_dir() + "/" + out);
        f << j.dump(2) << "\n";
    }
    if (table)
        std::cout << table_text;
    else
        std::cout << j.dump(2) << "\n";
}

FinCat shape_by_name(const std::string& name) {
    auto starts = [&](const char* p) { return name.rfind(p, 0) == 0; };
    if (name == "pb") return pb_category();
    if (name == "po") return po_category();
    if (name == "arrow" || name == "[1]") return arrow_category();
    if (name == "point" || name == "*") return terminal_category();
    if (starts("discrete:")) return discrete_category(std::stoi(name.substr(9)));
    if (starts("p0:")) return powerset(std::stoi(name.substr(3)), PowersetVariant::Punctured).cat;
    if (starts("p1:")) return powerset(std::stoi(name.substr(3)), PowersetVariant::Copunctured).cat;
    if (starts("p:")) return powerset(std::stoi(name.substr(2)), PowersetVariant::Full).cat;
    if (starts("spider:")) return int_po(std::stoi(name.substr(7))).g.total;
    if (starts("jn:*:")) {
        int n = std::stoi(name.substr(5));
        return jn(terminal_category(), n).stage[n - 1];
    }
    if (starts("intpb:")) return int_pb(shape_by_name(name.substr(6))).g.total;
    if (starts("twisted:")) return twisted_arrow(shape_by_name(name.substr(8))).cat;
    if (starts("plus:")) return plus(shape_by_name(name.substr(5))).cat;
    std::ifstream f(name);
    if (f.good()) {
        Json j;
        f >> j;
        return cat_from_json(j);
    }
    throw CLI::ValidationError("unknown shape or file: " + name);
}

ChainComplex complex_by_name(const std::string& name) {
    auto starts = [&](const char* p) { return name.rfind(p, 0) == 0; };
    if (name == "Z0" || name == "pt") return free_complex(0, 1);
    if (name == "S1") {
        ChainComplex c;
        c.lo = 0;
        c.ranks = {1, 1};
        c.d = {IntMat(0, 1), IntMat(1, 1)};
        return c;
    }
    if (name == "mod2") return two_term(1, 2);
    if (starts("Zk:")) return free_complex(std::stoi(name.substr(3)), 1);
    if (starts("rand:")) {
        // rand:<maxrank>:<lo>:<span>:<seed>
        std::istringstream ss(name.substr(5));
        int maxrank, lo, span;
        unsigned long long seed;
        char colon;
        ss >> maxrank >> colon >> lo >> colon >> span >> colon >> seed;
        Rng rng(seed);
        return random_complex(rng, maxrank, lo, span);
    }
    std::ifstream f(name);
    if (f.good()) {
        Json j;
        f >> j;
        return complex_from_json(j);
    }
    throw CLI::ValidationError("unknown complex or file: " + name);
}

FunctorSpec functor_by_cli(const std::string& name) {
    auto starts = [&](const char* p) { return name.rfind(p, 0) == 0; };
    if (starts("const:")) return functor_constant(complex_by_name(name.substr(6)));
    if (starts("tensorC:")) return functor_tensor_with(complex_by_name(name.substr(8)));
    return functor_by_name(name);
}

std::string homology_line(const HomologySummary& h) { return h.str(); }

int run_cat(const std::vector<std::string>& args, const std::string& constants, bool table, const std::string& out) {
    if (args.empty()) throw CLI::ValidationError("cat: need an action (build|iso|reedy|validate)");
    const std::string& action = args[0];
    if (action == "build") {
        if (args.size() < 2) throw CLI::ValidationError("cat build: need a shape");
        const std::string& name = args[1];
        FinCat c = shape_by_name(name);
        Json j = cat_to_json(c);
        // split (op)fibrations also record their projection and fiber tables
        auto attach_groth = [&](const GrothResult& g, const FinCat& base) {
            Json proj = Json::object();
            for (int o = 0; o < g.total.object_count(); ++o)
                proj[g.total.object_label(o)] = base.object_label(g.obj_pair[o].first);
            j["projection"] = std::move(proj);
            Json fibers = Json::array();
            for (int b = 0; b < base.object_count(); ++b) {
                Json inc = Json::array();
                for (int fo : g.fiber_inclusion[b].obj_map) inc.push_back(g.total.object_label(fo));
                fibers.push_back({{"over", base.object_label(b)}, {"objects", inc}});
            }
            j["fiber_inclusions"] = std::move(fibers);
        };
        if (name.rfind("spider:", 0) == 0)
            attach_groth(int_po(std::stoi(name.substr(7))).g, po_category());
        else if (name.rfind("intpb:", 0) == 0)
            attach_groth(int_pb(shape_by_name(name.substr(6))).g, pb_category());
        std::ostringstream txt;
        txt << "objects: " << c.object_count() << "\nmorphisms: " << c.morphism_count() << "\n";
        for (int o = 0; o < c.object_count(); ++o) txt << "  " << c.object_label(o) << "\n";
        emit(j, out, table, txt.str());
        return 0;
    }
    if (action == "iso") {
        if (args.size() < 3) throw CLI::ValidationError("cat iso: need two shapes");
        FinCat a = shape_by_name(args[1]);
        FinCat b = shape_by_name(args[2]);
        auto iso = find_isomorphism(a, b);
        Json j;
        j["isomorphic"] = iso.has_value();
        std::ostringstream txt;
        txt << "isomorphic: " << (iso ? "true" : "false") << "\n";
        if (iso) {
            Json table_json = Json::array();
            for (int o = 0; o < a.object_count(); ++o) {
                table_json.push_back({{"from", a.object_label(o)}, {"to", b.object_label(iso->obj_map[o])}});
                txt << "  " << a.object_label(o) << " -> " << b.object_label(iso->obj_map[o]) << "\n";
            }
            j["objects"] = table_json;
        }
        emit(j, out, table, txt.str());
        return iso ? 0 : 1;
    }
    if (action == "reedy") {
        if (args.size() < 2) throw CLI::ValidationError("cat reedy: need a shape");
        const std::string& name = args[1];
        ReedyStructure r;
        if (name.rfind("p0:", 0) == 0)
            r = reedy_punctured_cube(std::stoi(name.substr(3)));
        else if (name.rfind("p:", 0) == 0)
            r = reedy_full_cube(std::stoi(name.substr(2)));
        else if (name.rfind("spider:", 0) == 0)
            r = reedy_spider(std::stoi(name.substr(7)));
        else {
            std::ifstream f(name);
            if (!f.good()) throw CLI::ValidationError("cat reedy: unknown structure " + name);
            Json j;
            f >> j;
            r = reedy_from_json(j);
        }
        ValidationReport rep = check_reedy(r);
        Json j;
        j["axioms_ok"] = rep.ok();
        j["violations"] = rep.violations;
        std::ostringstream txt;
        txt << "axioms: " << (rep.ok() ? "pass" : "fail") << "\n";
        bool cc_ok = true;
        if (!constants.empty()) {
            ConstantsSide side = constants == "fibrant" ? ConstantsSide::Fibrant : ConstantsSide::Cofibrant;
            ConstantsReport cc = constants_criterion(r, side);
            cc_ok = cc.holds;
            j["constants"] = constants;
            j["constants_ok"] = cc.holds;
            txt << constants << " constants: " << (cc.holds ? "pass" : "fail") << "\n";
            for (auto& [o, comps] : cc.witnesses)
                txt << "  object " << r.cat.object_label(o) << " has " << comps << " components\n";
        }
        emit(j, out, table, txt.str());
        return rep.ok() && cc_ok ? 0 : 1;
    }
    if (action == "validate") {
        if (args.size() < 2) throw CLI::ValidationError("cat validate: need a shape or file");
        FinCat c = shape_by_name(args[1]);
        ValidationReport rep = validate_category(c);
        Json j;
        j["ok"] = rep.ok();
        j["violations"] = rep.violations;
        std::ostringstream txt;
        txt << (rep.ok() ? "valid\n" : "invalid\n");
        for (auto& v : rep.violations) txt << "  " << v << "\n";
        emit(j, out, table, txt.str());
        return rep.ok() ? 0 : 1;
    }
    throw CLI::ValidationError("cat: unknown action " + action);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact functor-calculus engine over integer chain complexes"};
    app.require_subcommand(1);

    // cat
    auto* cat = app.add_subcommand("cat", "build and check index categories");
    std::vector<std::string> cat_args;
    std::string cat_constants, cat_out;
    bool cat_table = false;
    cat->add_option("args", cat_args, "action and arguments: build|iso|reedy|validate ...");
    cat->add_option("--constants", cat_constants, "check constants criterion: cofibrant|fibrant");
    cat->add_flag("--table", cat_table, "aligned text output");
    cat->add_option("--out", cat_out, "write the JSON artifact to this file");
    cat->add_flag("--json", [](int64_t) {}, "JSON output (default)");

    // tower
    auto* tower = app.add_subcommand("tower", "Taylor tower stages and comparisons");
    std::string tw_functor = "id", tw_input = "Z0", tw_levels = "0..1", tw_out;
    int tw_max_iter = 2;
    bool tw_aux = false, tw_table = false;
    tower->add_option("--functor", tw_functor, "id | sq | sum | shift:k | const:<cx> | tensorC:<cx>");
    tower->add_option("--input", tw_input, "Z0 | S1 | mod2 | Zk:<d> | rand:<r>:<lo>:<span>:<seed> | file");
    tower->add_option("--levels", tw_levels, "a..b");
    tower->add_option("--max-iter", tw_max_iter, "iterate cap for stabilization; nonlinear functors grow fast past 2");
    tower->add_flag("--compare-aux", tw_aux, "compare against the homotopy-variant tower");
    tower->add_flag("--table", tw_table, "aligned text output");
    tower->add_option("--out", tw_out, "write the JSON report here");

    // cube
    auto* cube = app.add_subcommand("cube", "homotopy (co)Cartesian predicates");
    std::vector<std::string> cube_args;
    std::string cube_input, cube_shape = "p0:2", cube_out;
    unsigned long long cube_seed = 1;
    int cube_n = 2;
    bool cube_random = false, cube_table = false;
    cube->add_option("args", cube_args, "action: cartesian|classify|del");
    cube->add_option("--input", cube_input, "cube JSON file");
    cube->add_option("--shape", cube_shape, "puncture shape for random cubes");
    cube->add_option("--n", cube_n, "cube dimension for the co-Cartesian side");
    cube->add_flag("--random", cube_random, "generate the cube from the seed");
    cube->add_option("--seed", cube_seed, "random seed");
    cube->add_flag("--table", cube_table, "aligned text output");
    cube->add_option("--out", cube_out, "write the JSON report here");

    // verify
    auto* verify = app.add_subcommand("verify", "run the property battery");
    std::string vf_suite = "all", vf_out;
    unsigned long long vf_seed = 1;
    bool vf_table = false;
    verify->add_option("--suite", vf_suite, "all | fincat | groth | reedy | simp | chain | calculus");
    verify->add_option("--seed", vf_seed, "random seed");
    verify->add_flag("--table", vf_table, "aligned text output");
    verify->add_option("--out", vf_out, "write the JSON report here");

    try {
        app.parse(argc, argv);

        if (cat->parsed()) return run_cat(cat_args, cat_constants, cat_table, cat_out);

        if (tower->parsed()) {
            auto dots = tw_levels.find("..");
            int lo = std::stoi(tw_levels.substr(0, dots));
            int hi = dots == std::string::npos ? lo : std::stoi(tw_levels.substr(dots + 2));
            FunctorSpec f = functor_by_cli(tw_functor);
            ChainComplex x = complex_by_name(tw_input);
            Json report;
            report["functor"] = tw_functor;
            report["input_homology"] = homology_to_json(homology(x));
            std::ostringstream txt;
            txt << "input: " << homology_line(homology(x)) << "\n";
            bool all_stable = true;
            Json levels = Json::array();
            for (int n = lo; n <= hi; ++n) {
                TowerStage s = p_n(f, x, n, tw_max_iter);
                Json lvl;
                lvl["level"] = n;
                lvl["stabilized"] = s.stabilized;
                lvl["iterates"] = s.iterates;
                lvl["homology"] = homology_to_json(homology(s.value));
                Json iters = Json::array();
                for (auto& v : s.iterate_value) iters.push_back(homology_to_json(homology(v)));
                lvl["iterate_homology"] = iters;
                txt << "level " << n << ": " << homology_line(homology(s.value))
                    << (s.stabilized ? " (stabilized at iterate " + std::to_string(s.iterates) + ")"
                                     : " (no stabilization by iterate " + std::to_string(s.iterates) + ")")
                    << "\n";
                if (!s.stabilized) all_stable = false;
                if (tw_aux) {
                    AuxStage a = aux_tower(f, x, n, tw_max_iter);
                    lvl["aux_homology"] = homology_to_json(homology(a.stage.value));
                    lvl["aux_compare_qiso"] = a.compare_qiso;
                    txt << "  aux comparison quasi-iso: " << (a.compare_qiso ? "true" : "false") << "\n";
                }
                levels.push_back(std::move(lvl));
            }
            report["levels"] = std::move(levels);
            emit(report, tw_out, tw_table, txt.str());
            return all_stable ? 0 : 1;
        }

        if (cube->parsed()) {
            if (cube_args.empty()) throw CLI::ValidationError("cube: need an action (cartesian|classify)");
            const std::string& action = cube_args[0];
            if (action == "cartesian") {
                Cube c = [&] {
                    if (cube_random) {
                        Rng rng(cube_seed);
                        return random_cube(shape_by_name(cube_shape), rng);
                    }
                    if (cube_input.empty()) throw CLI::ValidationError("cube cartesian: need --input or --random");
                    std::ifstream fin(cube_input);
                    Json j;
                    fin >> j;
                    return cartesian_cube_from_json(j);
                }();
                bool hc = is_homotopy_cartesian(c);
                Diagram rest = restrict_diagram(c.diag, c.shape.inclusion);
                HomologySummary hinit = homology(c.diag.value[c.shape.init_obj]);
                HomologySummary hlim = homology(holim(rest).total);
                Json j;
                j["cartesian"] = hc;
                j["initial_vertex_homology"] = homology_to_json(hinit);
                j["holim_homology"] = homology_to_json(hlim);
                std::ostringstream txt;
                txt << "cartesian: " << (hc ? "true" : "false") << "\n"
                    << "initial vertex: " << homology_line(hinit) << "\n"
                    << "holim of the rest: " << homology_line(hlim) << "\n";
                emit(j, cube_out, cube_table, txt.str());
                return hc ? 0 : 1;
            }
            if (action == "gen") {
                Rng rng(cube_seed);
                Json j;
                if (cube->count("--n")) {
                    CocartCube c = random_cell_cube(cube_n, rng, false).cube;
                    j = cocart_cube_to_json(c);
                } else {
                    Cube c = random_cube(shape_by_name(cube_shape), rng);
                    j = cartesian_cube_to_json(c);
                }
                emit(j, cube_out, false, "");
                return 0;
            }
            if (action == "classify") {
                CocartCube c = [&] {
                    if (cube_random) {
                        Rng rng(cube_seed);
                        return random_cell_cube(cube_n, rng, false).cube;
                    }
                    if (cube_input.empty()) throw CLI::ValidationError("cube classify: need --input or --random");
                    std::ifstream fin(cube_input);
                    Json j;
                    fin >> j;
                    return cocart_cube_from_json(j);
                }();
                CubeClass cls = cube_classify(c);
                Json j;
                j["cofibration_cube"] = cls.cofibration_cube;
                j["ho_cocartesian"] = cls.ho_cocartesian;
                j["strongly_ho_cocartesian"] = cls.strongly_ho_cocartesian;
                std::ostringstream txt;
                txt << "cofibration_cube: " << (cls.cofibration_cube ? "true" : "false") << "\n"
                    << "ho_cocartesian: " << (cls.ho_cocartesian ? "true" : "false") << "\n"
                    << "strongly_ho_cocartesian: " << (cls.strongly_ho_cocartesian ? "true" : "false") << "\n";
                emit(j, cube_out, cube_table, txt.str());
                return 0;
            }
            throw CLI::ValidationError("cube: unknown action " + action);
        }

        if (verify->parsed()) {
            auto results = run_suite(vf_suite, vf_seed);
            if (results.empty()) throw CLI::ValidationError("verify: unknown suite " + vf_suite);
            Json j;
            j["suite"] = vf_suite;
            j["seed"] = vf_seed;
            Json cases = Json::array();
            std::ostringstream txt;
            int failed = 0;
            for (auto& r : results) {
                cases.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
                char line[256];
                std::snprintf(line, sizeof(line), "%-14s %-60s %s\n", r.id.c_str(), r.name.c_str(),
                              r.pass ? "pass" : "FAIL");
                txt << line;
                if (!r.detail.empty()) txt << "    " << r.detail << "\n";
                if (!r.pass) ++failed;
            }
            j["cases"] = std::move(cases);
            j["passed"] = (int)results.size() - failed;
            j["failed"] = failed;
            txt << (int)results.size() - failed << "/" << results.size() << " properties passed\n";
            emit(j, vf_out, vf_table, txt.str());
            return failed == 0 ? 0 : 1;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const GuardError& e) {
        std::cerr << "guard exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
