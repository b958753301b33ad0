#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quatsub/fixtures.hpp"
#include "quatsub/manifest.hpp"
#include "quatsub/toml.hpp"

#include <algorithm>

using namespace quatsub;

TEST_CASE("the TOML reader handles tables, arrays, and scalar types") {
    const char* src = R"(
# fixture description
name = "demo"
count = 64
scale = 1.5e-2
flag = true
words = ["a", "b"]
grid = [["1", "0"], ["0", "x1^2"]]

[geometry]
total_dim = 4

[geometry.box]
lo = [-1, -1]
hi = [1_0, 1_0]
)";
    toml::Value root = toml::parse(src);
    CHECK(root.at("name").str() == "demo");
    CHECK(root.at("count").integer() == 64);
    CHECK(root.at("scale").number() == doctest::Approx(0.015));
    CHECK(root.at("flag").boolean());
    CHECK(root.at("words").array().size() == 2);
    CHECK(root.at("grid").array()[1].array()[1].str() == "x1^2");
    CHECK(root.at("geometry").at("total_dim").integer() == 4);
    CHECK(root.at("geometry").at("box").at("hi").array()[0].integer() == 10);
}

TEST_CASE("TOML errors carry line numbers") {
    try {
        toml::parse("a = 1\nb = ");
        FAIL("expected a parse error");
    } catch (const toml::TomlError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(toml::parse("a = 1\na = 2"), toml::TomlError);
    CHECK_THROWS_AS(toml::parse("[[points]]\nx = 1"), toml::TomlError);
}

TEST_CASE("a quaternionic structure on a dim-6 space is rejected") {
    std::string src = R"(
name = "bad"

[total]
dim = 6
box_lo = [-1, -1, -1, -1, -1, -1]
box_hi = [1, 1, 1, 1, 1, 1]

[base]
dim = 3

[map]
components = ["x1", "x2", "x3"]

[structure]
kind = "canonical"
)";
    try {
        parse_manifest(src);
        FAIL("expected a manifest error");
    } catch (const ManifestError& e) {
        CHECK(std::string(e.what()).find("divisible by 4") != std::string::npos);
    }
}

TEST_CASE("digests are stable per manifest and differ between manifests") {
    LoadedFixture a1 = load_builtin("example-3-1");
    LoadedFixture a2 = load_builtin("example-3-1");
    LoadedFixture b = load_builtin("polar");
    CHECK(a1.digest == a2.digest);
    CHECK(a1.digest != b.digest);
}

TEST_CASE("sampling is deterministic and respects mode selection") {
    std::vector<Interval> box{{0.0, 1.0}, {-2.0, 2.0}};
    SamplePlan plan;
    plan.count = 32;
    plan.seed = 7;
    auto p1 = sample_points(box, plan);
    auto p2 = sample_points(box, plan);
    REQUIRE(p1.size() == 32);
    for (std::size_t i = 0; i < p1.size(); ++i) CHECK(p1[i] == p2[i]);

    SamplePlan other = plan;
    other.seed = 8;
    auto p3 = sample_points(box, other);
    CHECK(p1.front() != p3.front());

    for (const auto& p : p1) {
        CHECK(p(0) > 0.0);
        CHECK(p(0) < 1.0);
        CHECK(p(1) > -2.0);
        CHECK(p(1) < 2.0);
    }

    SamplePlan grid;
    grid.mode = SampleMode::Grid;
    grid.count = 9;
    auto pg = sample_points(box, grid);
    CHECK(pg.size() <= 9);
    CHECK(!pg.empty());

    SamplePlan expl;
    expl.mode = SampleMode::Explicit;
    expl.points.push_back((VectorXd(2) << 0.5, 0.0).finished());
    auto pe = sample_points(box, expl);
    REQUIRE(pe.size() == 1);
    CHECK(pe[0](0) == 0.5);
}

TEST_CASE("every built-in fixture loads, samples, and validates") {
    std::vector<std::string> names = builtin_names();
    CHECK(names.size() >= 8);
    CHECK(std::find(names.begin(), names.end(), "example-3-1") != names.end());
    CHECK(std::find(names.begin(), names.end(), "heisenberg") != names.end());
    for (const auto& name : names) {
        LoadedFixture lf = load_builtin(name);
        INFO(name);
        CHECK(!lf.points.empty());
        std::vector<VectorXd> pts(lf.points.begin(), lf.points.begin() + 6);
        ValidationReport v = validate_submersion(lf.fix, pts);
        CHECK(v.rank_ok);
        CHECK(v.isometry_ok);
        if (lf.triple) {
            StructureReport s = validate_structure(*lf.triple, lf.fix.total, pts);
            CHECK(s.pass());
        }
    }
}

TEST_CASE("unknown fixture names and malformed manifests raise clear errors") {
    CHECK_THROWS_AS(load_builtin("no-such-fixture"), ManifestError);
    CHECK_THROWS_AS(parse_manifest("name = \"x\""), ManifestError);
}
