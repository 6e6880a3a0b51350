#include "test_main.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ffl/commands.hpp"
#include "ffl/config.hpp"
#include "ffl/report.hpp"

using namespace ffl;

namespace {

std::string json_of(const Table& t) {
    std::ostringstream os;
    write_json(os, t, false);
    return os.str();
}

std::string csv_of(const Table& t) {
    std::ostringstream os;
    write_csv(os, t);
    return os.str();
}

}  // namespace

TEST_CASE("list parsing") {
    CHECK(parse_int_list("1..3") == std::vector<int>{1, 2, 3});
    CHECK(parse_int_list("1..2,5, 7") == std::vector<int>{1, 2, 5, 7});
    CHECK(parse_real_list("0.5,1..2,-1") == std::vector<double>{0.5, 1, 2, -1});
    CHECK_THROWS_AS(parse_int_list("3..1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_int_list("a"), std::invalid_argument);
    CHECK_THROWS_AS(parse_int_list(""), std::invalid_argument);
}

TEST_CASE("config round trip and validation") {
    RunConfig c;
    c.set("q", "13");
    c.set("g", "1..2");
    c.set("k", "0.5,1,2");
    c.set("ell", "1;x^2+1;1,0,1");
    c.set("mode", "sample");
    c.set("n", "250");
    c.set("seed", "99");
    c.set("out", "/tmp/a b");
    c.set("budget", "1.5e8");
    c.set("criteria", "1,9");
    CHECK(parse_config(c.serialize()) == c);
    RunConfig d;
    CHECK(parse_config(d.serialize()) == d);
    CHECK(parse_config("# comment\n\nq = 13 # trailing\ng=2\n").g == std::vector<int>{2});
    CHECK_THROWS_AS(parse_config("q\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("colour=blue\n"), std::invalid_argument);
    RunConfig bad;
    bad.q = 7;
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("1 mod 4"), std::invalid_argument);
    bad.q = 9;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    RunConfig m;
    m.mode = "partial";
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    RunConfig k;
    k.kind = {"Q"};
    CHECK_THROWS_AS(k.validate(), std::invalid_argument);
}

TEST_CASE("budget warnings") {
    RunConfig c;
    c.g = {1, 4};
    c.budget = full_enumeration_ops(5, 3);
    auto w = budget_warnings(c, "moments");
    REQUIRE(w.size() == 1);
    CHECK(w[0].find("g=4") != std::string::npos);
    c.mode = "sample";
    CHECK(budget_warnings(c, "moments").empty());
    CHECK(full_enumeration_ops(5, 3) > full_enumeration_ops(5, 2));
}

TEST_CASE("csv quoting and cell text") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
    CHECK(cell_text(Cell{0.1}) == "0.10000000000000001");
    CHECK(cell_text(Cell{std::nan("")}) == "nan");
    CHECK(cell_text(Cell{}) == "");
    Table t;
    t.command = "demo";
    t.columns = {"name", "value"};
    t.add({std::string("x,y"), std::nan("")});
    CHECK_THROWS_AS(t.add({std::string("short")}), std::logic_error);
    CHECK(csv_of(t) == "# schema=1 command=demo\nname,value\n\"x,y\",nan\n");
    auto j = json_of(t);
    CHECK(j.find("\"value\": null") != std::string::npos);
    CHECK(j.find("\"schema_version\": 1") != std::string::npos);
    CHECK(j.find("generated_at") == std::string::npos);
}

TEST_CASE("reports are deterministic") {
    RunConfig c;
    c.g = {1, 2};
    c.k = {1, 2};
    c.X = {2, 3};
    c.kind = {"L", "P", "Z", "split"};
    auto a = json_of(cmd_moments(c));
    c.workers = 3;
    auto b = json_of(cmd_moments(c));
    CHECK(a == b);
    RunConfig s;
    s.mode = "sample";
    s.n = 200;
    s.seed = 4;
    s.g = {2};
    CHECK(json_of(cmd_moments(s)) == json_of(cmd_moments(s)));
    RunConfig r;
    r.N = {1, 2};
    r.n = 300;
    r.k = {0, 1};
    auto rt = cmd_rmt(r);
    CHECK(json_of(rt) == json_of(cmd_rmt(r)));
    CHECK(std::get<double>(rt.rows[0][4]) == 1.0);
}

TEST_CASE("command tables") {
    RunConfig c;
    c.g = {1};
    c.k = {1, 2, 3};
    auto m = cmd_moments(c);
    CHECK(m.rows.size() == 3);  // one row per (g, k)
    RunConfig t;
    t.g = {1, 2};
    t.k = {1};
    t.ell = {"1", "x", "x^2", "x^2+x"};
    CHECK(cmd_twisted(t).rows.size() == 8);
    RunConfig z;
    z.D = "x^3+x+1";
    auto zt = cmd_zeros(z);
    REQUIRE(zt.rows.size() == 1);
    CHECK(std::get<double>(zt.rows[0][5]) < 1e-8);
    z.D = "x^3";
    CHECK_THROWS_AS(cmd_zeros(z), std::invalid_argument);
    RunConfig dc;
    dc.mode = "sample";
    dc.n = 20;
    dc.g = {2};
    dc.X = {2, 4};
    auto dt = cmd_decompose(dc);
    CHECK(dt.rows.size() == 40);
    for (auto& row : dt.rows)
        if (!std::get<bool>(row[8])) CHECK(std::get<double>(row[7]) < 1e-6);
    RunConfig k;
    k.k = {1};
    CHECK_THROWS_AS(cmd_moments([&] { RunConfig x; x.g = {1}; x.k = {5}; return x; }()), std::invalid_argument);
    auto ct = cmd_constants(k);
    CHECK(ct.rows.size() > 5);
}

TEST_CASE("report files") {
    auto dir = std::filesystem::temp_directory_path() / "ffl_report_test";
    std::filesystem::create_directories(dir);
    Table t;
    t.command = "demo";
    t.columns = {"a"};
    t.add({std::int64_t{1}});
    write_report(t, (dir / "r").string(), "both");
    CHECK(std::filesystem::exists(dir / "r.csv"));
    CHECK(std::filesystem::exists(dir / "r.json"));
    CHECK_THROWS_WITH(write_report(t, (dir / "missing" / "r").string(), "csv"), doctest::Contains("missing/r.csv"));
    std::filesystem::remove_all(dir);
}
