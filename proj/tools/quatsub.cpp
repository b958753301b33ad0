// quatsub: numerical laboratory for Riemannian submersions with quaternionic
// structure. Loads a builtin fixture or a TOML manifest, runs validation /
// classification / tensor evaluation / theorem checks, and emits deterministic
// JSON reports (sorted keys, 17-significant-digit floats).
//
// Exit codes: 0 all requested verdicts pass (or are inapplicable),
//             1 a verdict failed, 2 invalid input.

#include "quatsub/parallel.hpp"
#include "quatsub/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace quatsub;

struct Options {
    std::string manifest_path;
    std::string fixture_name;
    std::string point_csv;
    std::string json_path;
    double tol = kDefaultTol;
    int samples = -1;
    long long seed = -1;
    std::string theorem_id;
    bool all = false;
};

[[noreturn]] void fail_input(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    std::exit(2);
}

LoadedFixture load_target(const Options& opt) {
    if (!opt.manifest_path.empty() && !opt.fixture_name.empty())
        fail_input("--manifest and --fixture are mutually exclusive");
    std::string source;
    if (!opt.manifest_path.empty()) {
        std::ifstream in(opt.manifest_path);
        if (!in) fail_input("cannot open manifest '" + opt.manifest_path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        source = ss.str();
    } else {
        std::string name = opt.fixture_name.empty() ? "example-3-1" : opt.fixture_name;
        try {
            source = builtin_manifest(name);
        } catch (const ManifestError& e) {
            fail_input(e.what());
        }
    }
    try {
        LoadedFixture lf = load_fixture(source);
        if (opt.samples > 0 || opt.seed >= 0) {
            SamplePlan plan = lf.manifest.samples;
            if (opt.samples > 0) plan.count = opt.samples;
            if (opt.seed >= 0) plan.seed = static_cast<std::uint64_t>(opt.seed);
            lf.points = sample_points(lf.manifest.box, plan);
        }
        return lf;
    } catch (const std::exception& e) {
        fail_input(e.what());
    }
}

VectorXd parse_point(const std::string& csv, int dim) {
    std::vector<double> vals;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            vals.push_back(std::stod(item));
        } catch (const std::exception&) {
            fail_input("malformed --point coordinate '" + item + "'");
        }
    }
    if (static_cast<int>(vals.size()) != dim)
        fail_input("--point needs " + std::to_string(dim) + " coordinates, got " +
                   std::to_string(vals.size()));
    VectorXd p(dim);
    for (int i = 0; i < dim; ++i) p(i) = vals[i];
    return p;
}

void emit(const Json& j, const Options& opt) {
    std::string text = to_json(j);
    if (!opt.json_path.empty()) {
        std::ofstream out(opt.json_path, std::ios::binary);
        if (!out) fail_input("cannot write '" + opt.json_path + "'");
        out << text;
    }
    std::cout << text;
}

int cmd_list() {
    Json root;
    JsonArray arr;
    for (const std::string& name : builtin_names()) {
        Manifest m = parse_manifest(builtin_manifest(name));
        Json e;
        e["name"] = name;
        e["description"] = m.description;
        arr.push_back(e);
    }
    root["fixtures"] = Json(arr);
    std::cout << to_json(root);
    return 0;
}

int cmd_check(const Options& opt) {
    LoadedFixture lf = load_target(opt);
    bool ok = true;
    Json root;
    root["fixture"] = lf.manifest.name;
    ValidationReport vr = validate_submersion(lf.fix, lf.points);
    ok = ok && vr.rank_ok && vr.isometry_ok;
    root["validation"] = validation_json(vr);
    if (lf.triple) {
        StructureReport sr = validate_structure(*lf.triple, lf.fix.total, lf.points,
                                                lf.manifest.structure == StructureKind::Explicit);
        ok = ok && sr.pass();
        Json sj;
        sj["worst_square"] = sr.worst_square;
        sj["worst_anticommute"] = sr.worst_anticommute;
        sj["worst_cyclic"] = sr.worst_cyclic;
        sj["worst_metric"] = sr.worst_metric;
        sj["parallel_checked"] = sr.parallel_checked;
        sj["worst_parallel"] = sr.worst_parallel;
        sj["pass"] = sr.pass();
        root["structure"] = sj;
    }
    root["pass"] = ok;
    emit(root, opt);
    return ok ? 0 : 1;
}

int cmd_classify(const Options& opt) {
    LoadedFixture lf = load_target(opt);
    if (!lf.triple) fail_input("fixture declares no quaternionic structure");
    ClassificationVerdict c = classify(lf.fix, *lf.triple, lf.points, 1e-8);
    Json root;
    root["fixture"] = lf.manifest.name;
    root["classification"] = classification_json(c);
    emit(root, opt);
    return 0;
}

int cmd_tensors(const Options& opt) {
    LoadedFixture lf = load_target(opt);
    if (opt.point_csv.empty()) fail_input("tensors requires --point");
    VectorXd p = parse_point(opt.point_csv, lf.manifest.total_dim);
    try {
        PointContext ctx = point_context(lf.fix, p);
        Json root;
        root["fixture"] = lf.manifest.name;
        root["point"] = json_vector(p);
        Json frames;
        JsonArray vb, hb;
        for (int i = 0; i < ctx.m(); ++i) vb.push_back(json_vector(ctx.Vb.col(i)));
        for (int i = 0; i < ctx.n(); ++i) hb.push_back(json_vector(ctx.Hb.col(i)));
        frames["vertical"] = Json(vb);
        frames["horizontal"] = Json(hb);
        root["frames"] = frames;
        JsonArray tgrid, agrid, sffgrid;
        MatrixXd frame(ctx.dim(), ctx.dim());
        frame << ctx.Vb, ctx.Hb;
        for (int i = 0; i < ctx.m(); ++i) {
            JsonArray row;
            for (int j = 0; j < ctx.m(); ++j)
                row.push_back(json_vector(
                    oneill_T(ctx, VectorXd(ctx.Vb.col(i)), VectorXd(ctx.Vb.col(j)))));
            tgrid.push_back(Json(row));
        }
        for (int i = 0; i < ctx.n(); ++i) {
            JsonArray row;
            for (int j = 0; j < ctx.n(); ++j)
                row.push_back(json_vector(
                    oneill_A(ctx, VectorXd(ctx.Hb.col(i)), VectorXd(ctx.Hb.col(j)))));
            agrid.push_back(Json(row));
        }
        for (int i = 0; i < ctx.dim(); ++i) {
            JsonArray row;
            for (int j = 0; j < ctx.dim(); ++j)
                row.push_back(json_vector(
                    second_fundamental_form(ctx, VectorXd(frame.col(i)), VectorXd(frame.col(j)))));
            sffgrid.push_back(Json(row));
        }
        root["oneill_T_vertical_frame"] = Json(tgrid);
        root["oneill_A_horizontal_frame"] = Json(agrid);
        root["second_fundamental_form_full_frame"] = Json(sffgrid);
        MeanCurvatureReport mc = mean_curvatures(ctx);
        root["mean_curvature_vertical"] = json_vector(mc.H);
        root["mean_curvature_horizontal"] = json_vector(mc.H_perp);
        emit(root, opt);
        return 0;
    } catch (const std::exception& e) {
        fail_input(e.what());
    }
}

int cmd_theorem(const Options& opt) {
    LoadedFixture lf = load_target(opt);
    const std::string& id = opt.theorem_id;
    Json root;
    root["fixture"] = lf.manifest.name;
    bool pass = true;
    if (id == "integrability") {
        TheoremReport r = horizontal_integrability(lf.fix, lf.points, opt.tol);
        root["theorem"] = theorem_json(r);
        pass = r.pass;
    } else if (id == "thm44") {
        TheoremReport r = thm44_check(lf.fix, lf.points, opt.tol);
        root["theorem"] = theorem_json(r);
        pass = r.pass;
    } else if (id == "harmonic") {
        HarmonicityReport h = harmonicity(lf.fix, lf.points, opt.tol);
        Json hj;
        hj["id"] = "harmonic";
        hj["is_harmonic"] = h.is_harmonic;
        hj["worst_trace_residual"] = h.worst_trace_residual;
        hj["worst_consistency"] = h.worst_consistency;
        root["theorem"] = hj;
        pass = h.is_harmonic;
    } else if (id == "thm31" || id == "thm32" || id == "thm33" || id == "thm34" ||
               id == "thm35" || id == "thm46" || id == "lemma36") {
        if (!lf.triple) fail_input("theorem '" + id + "' needs a quaternionic structure");
        if (id == "thm31") {
            Thm31Report t = thm31_check(lf.fix, *lf.triple, lf.points, opt.tol);
            Json j = theorem_json(t.report);
            j["identity_residual"] = t.worst_identity_residual;
            j["max_abs_term"] = t.max_abs_term;
            root["theorem"] = j;
            pass = !t.report.applicable || t.report.pass;
        } else if (id == "lemma36") {
            Lemma36Report l = lemma36_check(lf.fix, *lf.triple, lf.points);
            Json j;
            j["id"] = "lemma36";
            j["applicable"] = l.applicable;
            j["worst"] = l.worst;
            JsonArray res;
            for (double r : l.residuals) res.emplace_back(r);
            j["residuals"] = Json(res);
            j["pass"] = l.pass(opt.tol);
            root["theorem"] = j;
            pass = !l.applicable || l.pass(opt.tol);
        } else {
            TheoremReport r;
            if (id == "thm32") r = thm32_check(lf.fix, *lf.triple, lf.points, opt.tol);
            else if (id == "thm33") r = thm33_check(lf.fix, *lf.triple, lf.points, opt.tol);
            else if (id == "thm34") r = thm34_check(lf.fix, *lf.triple, lf.points, opt.tol);
            else if (id == "thm35") r = thm35_check(lf.fix, *lf.triple, lf.points, opt.tol);
            else r = thm46_check(lf.fix, *lf.triple, lf.points, opt.tol);
            root["theorem"] = theorem_json(r);
            pass = !r.applicable || r.pass;
        }
    } else {
        fail_input("unknown theorem id '" + id +
                   "' (expected integrability|thm31|thm32|thm33|thm34|thm35|thm44|thm46|"
                   "lemma36|harmonic)");
    }
    emit(root, opt);
    return pass ? 0 : 1;
}

int cmd_report(const Options& opt) {
    auto t0 = std::chrono::steady_clock::now();
    bool all_pass = true;
    Json root;
    if (opt.all && opt.manifest_path.empty() && opt.fixture_name.empty()) {
        std::vector<std::string> names = builtin_names();
        std::vector<Json> parts(names.size());
        std::vector<NonexistenceEntry> entries(names.size());
        std::vector<char> oks(names.size(), 1);
        parallel_for(static_cast<int>(names.size()), [&](int i) {
            LoadedFixture lf = load_builtin(names[i]);
            bool ok = true;
            ProductReport pr;
            parts[i] = run_report(lf, opt.tol, &ok, &pr);
            oks[i] = ok ? 1 : 0;
            // cross-fixture consistency with the non-existence statements
            entries[i] = nonexistence_entry(names[i], lf.fix,
                                            lf.triple ? &*lf.triple : nullptr, lf.points, opt.tol,
                                            &pr);
        });
        JsonObject fixtures;
        JsonArray nonex;
        for (std::size_t i = 0; i < names.size(); ++i) {
            fixtures[names[i]] = parts[i];
            all_pass = all_pass && oks[i];
            const NonexistenceEntry& e = entries[i];
            Json ej;
            ej["name"] = e.name;
            ej["verdict"] = overall_name(e.verdict);
            ej["product"] = product_name(e.product);
            ej["consistent"] = e.consistent;
            nonex.push_back(ej);
            all_pass = all_pass && e.consistent;
        }
        root["tool_version"] = kToolVersion;
        root["fixtures"] = Json(fixtures);
        root["nonexistence"] = Json(nonex);
    } else {
        LoadedFixture lf = load_target(opt);
        root = run_report(lf, opt.tol, &all_pass);
    }
    root["pass"] = all_pass;
    emit(root, opt);
    auto t1 = std::chrono::steady_clock::now();
    std::cerr << "wall_time_ms: "
              << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() << "\n";
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for Riemannian submersions with quaternionic structure"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--manifest", opt.manifest_path, "path to a TOML manifest");
        sub->add_option("--fixture", opt.fixture_name, "builtin fixture name");
        sub->add_option("--point", opt.point_csv, "comma-separated point coordinates");
        sub->add_option("--tol", opt.tol, "verdict tolerance");
        sub->add_option("--samples", opt.samples, "override sample count");
        sub->add_option("--seed", opt.seed, "override sample seed");
        sub->add_option("--json", opt.json_path, "also write the JSON report to this path");
    };

    CLI::App* list = app.add_subcommand("list", "list builtin fixtures");
    CLI::App* check = app.add_subcommand("check", "validate submersion and structure axioms");
    CLI::App* classify_cmd = app.add_subcommand("classify", "anti-invariance classification");
    CLI::App* tensors = app.add_subcommand("tensors", "fundamental tensors at a point");
    CLI::App* theorem = app.add_subcommand("theorem", "run one theorem check");
    CLI::App* report = app.add_subcommand("report", "full report");
    for (CLI::App* sub : {check, classify_cmd, tensors, theorem, report}) add_common(sub);
    theorem->add_option("id", opt.theorem_id, "theorem id")->required();
    report->add_flag("--all", opt.all, "report on every builtin fixture");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (list->parsed()) return cmd_list();
        if (check->parsed()) return cmd_check(opt);
        if (classify_cmd->parsed()) return cmd_classify(opt);
        if (tensors->parsed()) return cmd_tensors(opt);
        if (theorem->parsed()) return cmd_theorem(opt);
        if (report->parsed()) return cmd_report(opt);
    } catch (const ManifestError& e) {
        fail_input(e.what());
    } catch (const ParseError& e) {
        fail_input(e.what());
    } catch (const DomainError& e) {
        fail_input(e.what());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
