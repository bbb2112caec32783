#include "doctest.h"

#include "liftgeom/cli.hpp"
#include "liftgeom/errors.hpp"
#include "liftgeom/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace liftgeom;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
};

Result cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text)
{
    auto path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/liftgeom_test_" + name;
    std::ofstream(path) << text;
    return path;
}

const std::string cyclic_desc = R"({"kind": "cyclic-cover", "inner": {"kind": "toric", "fan": "P2"},
  "line_bundle": {"0": 1}, "branch": {"0": 7}, "N": 7, "p": 5,
  "evidence": {"kind": "fermat", "n": 2, "degree": 7, "p": 5}})";

} // namespace

TEST_CASE("witt add")
{
    auto r = cli({"witt", "add", "-p", "2", "-n", "2", "1,0", "1,0"});
    CHECK(r.code == 0);
    auto j = r.json();
    CHECK(j["schema"] == "liftable-geom/1");
    CHECK(j["result"] == "0,1");
    CHECK(cli({"witt", "zmod", "-p", "3", "-n", "2", "2,1"}).json()["result"] == "2");
    CHECK(cli({"witt", "restrict", "-p", "3", "-n", "3", "-m", "1", "2,1,1"}).json()["result"] == "2");
    CHECK(cli({"witt", "teich", "-p", "5", "-n", "2", "2"}).json()["result"] == "2,0");
    CHECK(cli({"witt", "add", "-p", "2", "-n", "2", "1,0"}).code == 2);
    CHECK(cli({"witt", "add", "-p", "2", "-n", "3", "1,0", "1,0"}).code == 2);
    CHECK(cli({"witt", "pow", "-p", "2", "-n", "2", "1,0"}).code == 2);
}

TEST_CASE("kv-check on (5/2)H over P2, inline and from a file")
{
    auto r = cli({"kv-check", "--fan", "P2", "--div", R"({"0": "5/2"})", "-p", "3"});
    CHECK(r.code == 0);
    CHECK(r.json()["pass"] == true);
    auto path = temp_file("D.json", "{\"0\": \"5/2\"}\n");
    auto f = cli({"kv-check", "--fan", "P2", "--div", path, "-p", "3"});
    CHECK(f.code == 0);
    CHECK(f.out == r.out);
    std::remove(path.c_str());
    CHECK(cli({"kv-check", "--fan", "P2", "--div", R"({"0": "-1/2"})", "-p", "3"}).code == 1);
}

TEST_CASE("cyclic cover with p | N exits 1 with the checklist")
{
    auto r = cli({"cover", "cyclic", "--fan", "P2", "-N", "7", "-p", "7", "--line", R"({"0": 1})", "--branch",
                  R"({"0": 7})", "--evidence", "fermat"});
    CHECK(r.code == 1);
    auto j = r.json();
    CHECK(j["status"] == "hypothesis-violation");
    CHECK(j["checks"].size() == 5);
    CHECK(j["checks"][1]["passed"] == false);
}

TEST_CASE("parse errors name the field and the line")
{
    auto path = temp_file("fan.json", "{\n  \"dim\": 2,\n  \"rays\": [[1, 0], [0, 1], [-1, -1]],\n"
                                      "  \"max_cones\": [[0, 1], [1, 2], [2, 7]]\n}\n");
    auto r = cli({"fan", "validate", "--fan", path});
    CHECK(r.code == 2);
    auto msg = r.json()["message"].get<std::string>();
    CHECK(msg.find(":4:") != std::string::npos);
    CHECK(msg.find("max_cones") != std::string::npos);
    std::remove(path.c_str());

    auto bad = cli({"cohom", "--fan", "P2", "--div", "{\"0\": \"1/0\"}"});
    CHECK(bad.code == 2);
    CHECK(bad.json()["message"].get<std::string>().find("field \"0\"") != std::string::npos);

    auto syntax = cli({"cohom", "--fan", "P2", "--div", "{\"0\": 1,,}"});
    CHECK(syntax.code == 2);
    CHECK(syntax.json()["message"].get<std::string>().find("--div:1:") == 0);
    CHECK(cli({"cohom", "--fan", "P2", "--div", "/nonexistent/D.json"}).code == 2);
}

TEST_CASE("certificates round-trip and replay")
{
    auto r = cli({"lift", "classify", "--desc", cyclic_desc});
    CHECK(r.code == 0);
    auto j = r.json();
    CHECK(j["certificate"]["conclusion"] == "liftable-W(k)");
    CHECK(j["replayed"] == "liftable-W(k)");

    JsonDocument doc("report", r.out);
    auto node = read_derivation(JsonField(doc)["certificate"]["derivation"]);
    CHECK(node.rule == "Cor5.13");
    CHECK(to_string(replay(node)) == "liftable-W(k)");

    // the description block re-parses to the same certificate
    JsonDocument again("description", j["description"].dump());
    auto v = read_description(JsonField(again));
    CHECK(to_json(classify(*v)) == j["certificate"]);

    auto unknown = cli({"lift", "classify", "--desc", R"({"kind": "unknown", "text": "K3"})"}).json();
    CHECK(unknown["certificate"]["derivation"].is_null());
}

TEST_CASE("every report re-parses and carries the schema tag")
{
    std::vector<std::vector<std::string>> corpus{
        {"witt", "mul", "-p", "3", "-n", "2", "2,1", "1,1"},
        {"divisor", "floor", "--div", R"({"A": "7/3", "B": "-1/2"})"},
        {"divisor", "perturb", "--div", R"({"A": "1/2"})", "-p", "2", "--bound", "3"},
        {"divisor", "check", "--div", R"({"A": "1/2"})", "-p", "2"},
        {"fan", "validate", "--fan", "Bl1P2"},
        {"fan", "classgroup", "--fan", "F2"},
        {"fan", "blowup", "--fan", "P2", "--cone", "0"},
        {"fan", "ample", "--fan", "F1", "--div", R"({"2": 1, "3": 1})"},
        {"cohom", "--fan", "P1xP1", "--div", R"({"0": -2, "1": 1})", "--cech"},
        {"cover", "kummer", "--fan", "P2", "--div", R"({"0": "1/3"})", "-p", "2"},
        {"lift", "surject", "--fan", "P2", "--div", R"({"0": 2})"},
        {"lift", "sweep", "--fan", "F1", "--bound", "2"},
    };
    for (const auto& args : corpus) {
        auto r = cli(args);
        CAPTURE(r.out);
        CHECK(r.code <= 1);
        JsonDocument doc("report", r.out);
        CHECK(doc.root()["schema"] == schema_tag);
        CHECK(cli(args).out == r.out);
    }
}

TEST_CASE("validate-only checks inputs without computing")
{
    auto r = cli({"kv-check", "--fan", "P2", "--div", R"({"0": "5/2"})", "-p", "3", "--validate-only"});
    CHECK(r.code == 0);
    CHECK(r.json()["valid"] == true);
    CHECK_FALSE(r.json().contains("pass"));
    CHECK(cli({"kv-check", "--fan", "P2", "--div", R"({"7": "5/2"})", "-p", "3", "--validate-only"}).code == 2);
}
