#include "ordref/cli.hpp"

#include "ordref/fixtures.hpp"
#include "ordref/io.hpp"
#include "ordref/rivals.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

namespace ordref {

namespace {

const char* kPartialNote = "axioms are checked on the observed menus only; unobserved menus can still violate them";

struct Options {
    bool json = false;
    unsigned long long seed = 0;
    std::string out;
    std::string model;
};

// A failure that still produced a structured result.
struct Outcome {
    int code = 0;
    Json body;
    std::string text;
};

int exit_code_for(const std::string& code) { return code == "AxiomFails" || code == "Infeasible" ? 1 : 2; }

Json witnesses_json(const ChoiceDataset& ds, const Witnesses& ws) {
    Json arr = Json::array();
    for (const auto& w : ws) arr.push_back(witness_json(ds, w));
    return arr;
}

std::string witness_text(const ChoiceDataset& ds, const ViolationWitness& w) {
    std::string s = "  " + w.kind + ": " + w.narrative;
    for (const auto& m : w.menus) {
        s += "\n    " + ds.menu_label(m);
        if (auto i = ds.find(m)) s += " -> " + ds.menu_label(ds.choice(*i));
    }
    return s;
}

Model require_model(const Options& o) {
    if (o.model.empty()) throw Error("Usage", "--model is required");
    return parse_model(o.model);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("BadPath", "cannot write '" + path + "'");
    f << content;
}

Params load_params(const std::string& path, const Options& o) {
    auto p = params_from_json(read_json_file(path));
    if (!o.model.empty() && parse_model(o.model) != model_of(p))
        throw Error("BadModel", "the params file holds " + to_string(model_of(p)) + " params, not " + o.model);
    validate_params(p);
    return p;
}

Outcome cmd_validate(const std::string& src) {
    auto ds = load_dataset(src);
    Json j;
    j["valid"] = true;
    j["kind"] = to_string(ds.kind());
    j["alternatives"] = ds.universe().size();
    j["observations"] = ds.size();
    std::ostringstream t;
    t << "valid " << to_string(ds.kind()) << " dataset: " << ds.universe().size() << " alternatives, " << ds.size()
      << " observations\n";
    return {0, j, t.str()};
}

Outcome cmd_check(const Options& o, const std::string& src) {
    const Model m = require_model(o);
    auto ds = load_dataset(src);
    auto results = axiom_battery(m, ds);
    const bool pass = battery_passes(results);
    Json j;
    j["model"] = to_string(m);
    j["pass"] = pass;
    j["axioms"] = Json::array();
    std::ostringstream t;
    t << to_string(m) << ": " << (pass ? "pass" : "FAIL") << "\n";
    for (const auto& r : results) {
        Json a;
        a["axiom"] = r.axiom;
        a["pass"] = r.pass();
        a["witnesses"] = witnesses_json(ds, r.witnesses);
        j["axioms"].push_back(a);
        t << r.axiom << ": " << (r.pass() ? "pass" : "fail") << "\n";
        for (const auto& w : r.witnesses) t << witness_text(ds, w) << "\n";
    }
    j["note"] = kPartialNote;
    t << "note: " << kPartialNote << "\n";
    return {pass ? 0 : 1, j, t.str()};
}

Outcome cmd_fit(const Options& o, const std::string& src) {
    const Model m = require_model(o);
    auto ds = load_dataset(src);
    try {
        auto fit = fit_model(m, ds);
        Json params = params_json(fit.params);
        params["method"] = fit.method;
        std::ostringstream t;
        if (!o.out.empty()) {
            write_file(o.out, params.dump(2) + "\n");
            Json j;
            j["model"] = to_string(m);
            j["method"] = fit.method;
            j["out"] = o.out;
            t << "fitted " << to_string(m) << " (" << fit.method << "), params written to " << o.out << "\n";
            return {0, j, t.str()};
        }
        return {0, params, params.dump(2) + "\n"};
    } catch (const AxiomFailure& e) {
        Json j;
        j["error"] = {{"code", e.code()}, {"message", e.what()}};
        j["witnesses"] = witnesses_json(ds, e.witnesses());
        std::string t = "error [" + e.code() + "]: " + e.what() + "\n";
        for (const auto& w : e.witnesses()) t += witness_text(ds, w) + "\n";
        return {1, j, t};
    }
}

std::string emit_dataset(const Options& o, const Json& j) {
    if (o.out.empty()) return j.dump(2) + "\n";
    write_file(o.out, j.dump(2) + "\n");
    return "";
}

Outcome cmd_simulate(const Options& o, const std::string& params_path, const std::string& menus_path) {
    if (params_path.empty() != menus_path.empty())
        throw Error("Usage", "simulate needs both a params file and a menus file, or neither with --model");
    if (params_path.empty()) {
        const Model m = require_model(o);
        std::mt19937_64 rng(o.seed);
        auto in = random_instance(m, rng);
        auto ds = simulate_model(in.params, in.universe, in.menus);
        Json j;
        j["seed"] = o.seed;
        j["params"] = params_json(in.params);
        j["dataset"] = dataset_json(ds);
        auto text = emit_dataset(o, j);
        if (!o.out.empty()) j = {{"seed", o.seed}, {"model", to_string(m)}, {"out", o.out}};
        return {0, j, text.empty() ? "simulated dataset written to " + o.out + "\n" : text};
    }
    auto p = load_params(params_path, o);
    auto mf = menus_from_json(read_json_file(menus_path));
    auto universe = params_universe(p);
    if (universe.empty()) universe = mf.universe;
    if (universe.empty()) throw Error("BadJson", "the menus file must list alternatives for " + to_string(model_of(p)));
    std::vector<std::string> ids;
    for (const auto& a : universe) ids.push_back(a.id);
    std::vector<Menu> menus;
    for (const auto& m : mf.menus) menus.push_back(menu_from_ids(ids, m));
    auto ds = simulate_model(p, universe, menus);
    Json j = dataset_json(ds);
    auto text = emit_dataset(o, j);
    if (!o.out.empty()) j = {{"model", to_string(model_of(p))}, {"observations", ds.size()}, {"out", o.out}};
    return {0, j, text.empty() ? "simulated dataset written to " + o.out + "\n" : text};
}

Outcome cmd_verify(const Options& o, const std::string& params_path, const std::string& src) {
    auto p = load_params(params_path, o);
    auto ds = load_dataset(src);
    auto mm = verify_model(p, ds);
    Json j;
    j["model"] = to_string(model_of(p));
    j["pass"] = mm.empty();
    j["mismatches"] = Json::array();
    std::ostringstream t;
    t << (mm.empty() ? "pass" : "FAIL") << ": " << mm.size() << " of " << ds.size() << " observations differ\n";
    for (const auto& m : mm) {
        j["mismatches"].push_back(mismatch_json(ds, m));
        t << "  " << describe(ds, m) << "\n";
    }
    return {mm.empty() ? 0 : 1, j, t.str()};
}

Json optional_json(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

Outcome cmd_fixtures(const std::string& action, const std::string& name) {
    if (action == "list") {
        Json j = Json::array();
        std::ostringstream t;
        for (const auto& f : list_fixtures()) {
            j.push_back({{"name", f.name}, {"model", to_string(f.model)}, {"description", f.description}});
            t << f.name << " [" << to_string(f.model) << "] " << f.description << "\n";
        }
        return {0, j, t.str()};
    }
    if (name.empty()) throw Error("Usage", "fixtures " + action + " needs a fixture name");
    const Model m = fixture_model(name);
    auto ds = fixture_dataset(name);
    if (action == "show") {
        Json j = dataset_json(ds);
        return {0, j, j.dump(2) + "\n"};
    }
    if (action != "run") throw Error("Usage", "fixtures action must be list, show or run");
    Json j;
    j["name"] = name;
    j["model"] = to_string(m);
    std::ostringstream t;
    int code = 0;
    const auto& rivals = fixture_names();
    if (std::find(rivals.begin(), rivals.end(), name) != rivals.end()) {
        auto row = classify_fixture(load_fixture(name));
        j["ordu"] = row.ordu;
        j["subset_closed"] = row.subset_closed;
        j["remark1"] = optional_json(row.remark1);
        j["rsm"] = optional_json(row.rsm);
        j["pe"] = row.pe;
        j["cla_note"] = row.cla_note;
        j["disagreements"] = row.disagreements;
        auto yn = [](const std::optional<bool>& b) { return b ? (*b ? "yes" : "no") : "n/a"; };
        t << name << ": ORDU " << yn(row.ordu) << ", subset-closed " << yn(row.subset_closed) << ", Remark 1 "
          << yn(row.remark1) << ", RSM " << yn(row.rsm) << ", PE " << yn(row.pe) << "\n";
        if (!row.cla_note.empty()) t << "CLA: " << row.cla_note << "\n";
        for (const auto& d : row.disagreements) t << "disagreement: " << d << "\n";
        code = row.disagreements.empty() ? 0 : 1;
    }
    auto results = axiom_battery(m, ds);
    j["pass"] = battery_passes(results);
    j["axioms"] = Json::array();
    for (const auto& r : results) {
        j["axioms"].push_back({{"axiom", r.axiom}, {"pass", r.pass()}, {"witnesses", witnesses_json(ds, r.witnesses)}});
        t << r.axiom << ": " << (r.pass() ? "pass" : "fail") << "\n";
        for (const auto& w : r.witnesses) t << witness_text(ds, w) << "\n";
    }
    try {
        auto fit = fit_model(m, ds);
        Json params = params_json(fit.params);
        params["method"] = fit.method;
        j["fit"] = params;
        t << "fit: " << fit.method << "\n";
    } catch (const Error& e) {
        j["fit"] = {{"error", {{"code", e.code()}, {"message", e.what()}}}};
        t << "fit: " << e.code() << ": " << e.what() << "\n";
    }
    return {code, j, t.str()};
}

std::vector<Rational> parse_prizes(const std::string& s) {
    std::vector<Rational> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_rational(item));
    return out;
}

Outcome cmd_triangle(const Options& o, const std::string& params_path, long grid, const std::string& prizes,
                     bool loving) {
    if (grid < 1) throw Error("Usage", "--grid must be positive");
    AreuParams params;
    if (!params_path.empty()) {
        auto p = load_params(params_path, o);
        if (model_of(p) != Model::Areu) throw Error("BadModel", "export-triangle needs AREU params");
        params = std::get<AreuParams>(p);
    } else {
        params = triangle_params(prize_set(parse_prizes(prizes)), grid, !loving);
    }
    auto report = fanning_classify(params, grid);
    const auto csv = triangle_csv(report);
    Json j;
    j["verdict"] = to_string(report.verdict);
    j["slopes_nondecreasing"] = report.slopes_nondecreasing;
    j["slopes_nonincreasing"] = report.slopes_nonincreasing;
    j["transitive"] = report.transitive;
    j["points"] = report.points.size();
    if (!o.out.empty()) {
        write_file(o.out, csv);
        j["out"] = o.out;
        return {0, j, "verdict " + to_string(report.verdict) + ", CSV written to " + o.out + "\n"};
    }
    j["csv"] = csv;
    return {0, j, csv};
}

Outcome cmd_report(const std::string& src) {
    auto ds = load_dataset(src);
    auto r = linkage_report(ds);
    Json j;
    j["domain"] = r.domain;
    j["warp"] = r.warp;
    j["structural"] = {{"axiom", r.structural}, {"pass", r.structural_pass}};
    j["agree"] = r.warp == r.structural_pass;
    j["coincide"] = optional_json(r.coincide);
    j["fit_method"] = r.fit_method;
    if (!r.fit_error.empty()) j["fit_error"] = r.fit_error;
    j["note"] = kPartialNote;
    std::ostringstream t;
    t << r.domain << " data: WARP " << (r.warp ? "pass" : "fail") << ", " << r.structural << " "
      << (r.structural_pass ? "pass" : "fail") << "\n";
    if (r.coincide) t << "fitted utilities " << (*r.coincide ? "coincide" : "differ") << " (" << r.fit_method << ")\n";
    if (!r.fit_error.empty()) t << "fit: " << r.fit_error << "\n";
    return {0, j, t.str()};
}

Json error_json(const std::string& code, const std::string& message) {
    Json j;
    j["error"] = {{"code", code}, {"message", message}};
    return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    o.json = std::find(args.begin(), args.end(), "--json") != args.end();

    auto fail = [&](const std::string& code, const std::string& message) {
        if (o.json)
            out << error_json(code, message).dump(2) << "\n";
        else
            err << "error [" << code << "]: " << message << "\n";
        return exit_code_for(code);
    };

    CLI::App app{"Reference-dependent choice: axiom checks, fitting and simulation", "ordref"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", o.json, "machine-readable JSON output");
    app.add_option("--seed", o.seed, "seed for random parameters (default 0)");
    app.add_option("--out", o.out, "write the main output to this file");
    app.add_option("--model", o.model, "ordu, areu, pbdu or fspu");

    std::string src, params_path, menus_path, action, fixture;
    long grid = 20;
    std::string prizes = "0,3000,4000";
    bool loving = false;

    auto* validate = app.add_subcommand("validate", "check a dataset against the schema and invariants");
    validate->add_option("dataset", src, "dataset file or fixtures://<name>")->required();
    auto* check = app.add_subcommand("check", "run the model's full axiom battery");
    check->add_option("dataset", src, "dataset file or fixtures://<name>")->required();
    auto* fit = app.add_subcommand("fit", "fit model parameters");
    fit->add_option("dataset", src, "dataset file or fixtures://<name>")->required();
    auto* simulate = app.add_subcommand("simulate", "choices on a menus file, or a random instance from --seed");
    simulate->add_option("params", params_path, "params file");
    simulate->add_option("menus", menus_path, "menus file");
    auto* verify = app.add_subcommand("verify", "compare params predictions with a dataset");
    verify->add_option("params", params_path, "params file")->required();
    verify->add_option("dataset", src, "dataset file or fixtures://<name>")->required();
    auto* fixtures = app.add_subcommand("fixtures", "list, show or run embedded tables");
    fixtures->add_option("action", action, "list, show or run")->required()->check(
        CLI::IsMember({"list", "show", "run"}));
    fixtures->add_option("name", fixture, "fixture name");
    auto* triangle = app.add_subcommand("export-triangle", "CSV of indifference data on the probability triangle");
    triangle->add_option("params", params_path, "AREU params file over three prizes");
    triangle->add_option("--grid", grid, "probabilities are multiples of 1/grid (default 20)");
    triangle->add_option("--prizes", prizes, "three prizes for generated params (default 0,3000,4000)");
    triangle->add_flag("--loving", loving, "generate risk-loving params instead of risk-averse ones");
    auto* report = app.add_subcommand("report", "linkage of WARP, the structural axiom and the fitted utilities");
    report->add_option("dataset", src, "dataset file or fixtures://<name>")->required();

    std::vector<std::string> argv_store{"ordref"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        return fail("Usage", e.what());
    }

    try {
        Outcome r;
        if (*validate)
            r = cmd_validate(src);
        else if (*check)
            r = cmd_check(o, src);
        else if (*fit)
            r = cmd_fit(o, src);
        else if (*simulate)
            r = cmd_simulate(o, params_path, menus_path);
        else if (*verify)
            r = cmd_verify(o, params_path, src);
        else if (*fixtures)
            r = cmd_fixtures(action, fixture);
        else if (*triangle)
            r = cmd_triangle(o, params_path, grid, prizes, loving);
        else
            r = cmd_report(src);
        if (o.json)
            out << r.body.dump(2) << "\n";
        else
            (r.code == 1 && r.body.contains("error") ? err : out) << r.text;
        return r.code;
    } catch (const Error& e) {
        return fail(e.code(), e.what());
    } catch (const std::exception& e) {
        return fail("Internal", e.what());
    }
}

}  // namespace ordref
