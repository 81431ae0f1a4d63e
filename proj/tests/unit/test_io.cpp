#include <doctest.h>

#include "ordref/fixtures.hpp"
#include "ordref/io.hpp"

using namespace ordref;

TEST_CASE("rationals travel as exact strings") {
    CHECK(rational_json(frac(-3, 4)) == Json("-3/4"));
    CHECK(rational_json(Rational(7)) == Json("7"));
    CHECK(rational_from_json(Json("-3/4"), "x") == frac(-3, 4));
    CHECK(rational_from_json(Json("0.25"), "x") == frac(1, 4));
    CHECK(rational_from_json(Json(12), "x") == Rational(12));
    CHECK_THROWS_WITH_AS(rational_from_json(Json(0.5), "x"), doctest::Contains("floating-point"), Error);
    CHECK_THROWS_AS(rational_from_json(Json("1/0"), "x"), Error);
    CHECK_THROWS_AS(rational_from_json(Json("abc"), "x"), Error);
    CHECK_THROWS_AS(rational_from_json(Json::array(), "x"), Error);
}

TEST_CASE("every fixture survives a JSON round trip") {
    for (const auto& f : list_fixtures()) {
        CAPTURE(f.name);
        auto ds = fixture_dataset(f.name);
        auto j = dataset_json(ds);
        auto back = dataset_from_json(Json::parse(j.dump()));
        CHECK(back.kind() == ds.kind());
        CHECK(back.size() == ds.size());
        CHECK(dataset_json(back) == j);
    }
}

TEST_CASE("random params of every model survive a JSON round trip") {
    for (auto m : {Model::Ordu, Model::Areu, Model::Pbdu, Model::Fspu}) {
        std::mt19937_64 rng(41);
        for (int t = 0; t < 5; ++t) {
            CAPTURE(to_string(m));
            auto in = random_instance(m, rng);
            auto j = params_json(in.params);
            CHECK(j["model"] == to_string(m));
            auto back = params_from_json(Json::parse(j.dump()));
            CHECK(model_of(back) == m);
            CHECK(params_json(back) == j);
            auto ds = simulate_model(in.params, in.universe, in.menus);
            CHECK(verify_model(back, ds).empty());
        }
    }
}

TEST_CASE("malformed datasets are rejected with stable codes") {
    auto code = [](const std::string& text) {
        try {
            dataset_from_json(Json::parse(text));
        } catch (const Error& e) {
            return e.code();
        }
        return std::string("none");
    };
    CHECK(code(R"({"alternatives": [{"id": "a"}], "observations": []})") == "BadJson");
    CHECK(code(R"({"kind": "generic", "alternatives": [{"id": "a"}], "observations": [{"menu": ["a"]}]})") ==
          "BadJson");
    CHECK(code(R"({"kind": "weird", "alternatives": [], "observations": []})") != "none");
    CHECK(code(R"({"kind": "generic", "alternatives": [{"id": "a"}, {"id": "b"}],
                   "observations": [{"menu": ["a", "b"], "choice": []}]})") == "EmptyChoice");
    CHECK(code(R"({"kind": "dated_payment", "alternatives": [{"id": "a", "payload": {"amount": 1.5, "time": "0"}}],
                   "observations": []})") == "BadJson");
    CHECK(code(R"({"kind": "generic", "alternatives": [{"id": "a"}, {"id": "a"}], "observations": []})") != "none");
}

TEST_CASE("witness JSON lists observed menus with their choices") {
    auto ds = fixture_dataset("violation_2_1");
    auto res = axiom_battery(Model::Ordu, ds);
    REQUIRE(res.size() == 1);
    REQUIRE_FALSE(res[0].pass());
    for (const auto& w : res[0].witnesses) {
        auto j = witness_json(ds, w);
        CHECK(j["kind"] == w.kind);
        CHECK(j["observations"].size() == w.menus.size());
        for (const auto& o : j["observations"]) {
            std::vector<std::string> menu = o["menu"], choice = o["choice"];
            auto i = ds.find(ds.menu_of(menu));
            REQUIRE(i);
            CHECK(ds.ids(ds.choice(*i)) == choice);
        }
    }
}

TEST_CASE("menus files and file loading") {
    auto mf = menus_from_json(Json::parse(R"({"menus": [["a", "b"], ["b"]]})"));
    CHECK(mf.menus.size() == 2);
    CHECK(mf.universe.empty());
    auto split = menus_from_json(Json::parse(
        R"({"kind": "income_split", "alternatives": [{"id": "z", "payload": {"own": "5", "other": "5"}},
            {"id": "y", "payload": {"own": "8", "other": "2"}}], "menus": [["y", "z"]]})"));
    REQUIRE(split.universe.size() == 2);
    CHECK(split.universe[0].id == "y");
    CHECK_THROWS_AS(menus_from_json(Json::parse(R"({"menu": []})")), Error);
    CHECK_THROWS_WITH_AS(read_json_file("/nonexistent/file.json"), doctest::Contains("cannot open"), Error);
    CHECK(load_dataset("fixtures://dictator").kind() == PayloadKind::IncomeSplit);
    CHECK_THROWS_AS(load_dataset("fixtures://nothing"), Error);
}

TEST_CASE("params validation errors") {
    CHECK_THROWS_AS(params_from_json(Json::parse(R"({"model": "xyz"})")), Error);
    CHECK_THROWS_AS(params_from_json(Json::parse(R"({"model": "fspu"})")), Error);
    auto p = params_from_json(Json::parse(R"({"model": "pbdu", "L": {"1": "0", "2": "-1"}, "D": {"0": "-1"}})"));
    CHECK_THROWS_AS(validate_params(p), Error);
}
