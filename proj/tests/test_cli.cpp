#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "oddcover/cli.hpp"
#include "oddcover/io.hpp"
#include "oddcover/spin_residue.hpp"

using namespace oddcover;
namespace fs = std::filesystem;

namespace
{

struct Result
{
    int code;
    std::string out;
    std::string err;

    Json json() const { return Json::parse(out); }
    Json error() const { return Json::parse(err).at("error"); }
};

Result invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "oddcover");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string &name)
{
    const auto dir = fs::temp_directory_path() / "oddcover_test_cli";
    fs::create_directories(dir);
    const auto p = dir / name;
    fs::remove(p);
    return p;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::string join(const std::vector<int> &v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + std::to_string(v[i]);
    }
    return s;
}

} // namespace

TEST_CASE("profiles lists every spin profile")
{
    const auto r = invoke({"profiles", "2"});
    REQUIRE(r.code == 0);
    const auto j = r.json();
    CHECK(j.at("count") == 6);
    CHECK(j.at("profiles").size() == 6);
    for (const auto &row : j.at("profiles")) {
        const auto n = row.at("n").get<std::vector<int>>();
        CHECK(std::accumulate(n.begin(), n.end(), 0) == 1);
        CHECK(row.at("spin").at("parity") == "odd");
    }

    CHECK(invoke({"profiles", "4"}).json().at("count") == binomial(12, 3));

    const auto csv = invoke({"profiles", "2", "--format", "csv"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("profile,parity,h0\r\n\"", 0) == 0);
}

TEST_CASE("build emits a tuple and an all-pass report; verify accepts it")
{
    const auto r = invoke({"build", "1", "--profile", "0,0,0,0"});
    REQUIRE(r.code == 0);
    const auto j = r.json();
    CHECK(j.at("seed") == 0);
    CHECK(j.at("report").at("all_pass") == true);
    CHECK(j.at("report").at("genus_upstairs") == 1);
    CHECK(j.at("tuple").at("tau").size() == 2);

    const auto path = scratch("build1.json");
    REQUIRE(invoke({"build", "1", "--profile", "0,0,0,0", "--out", path.string()}).out.empty());
    CHECK(slurp(path) == r.out);

    const auto v = invoke({"verify", "--in", path.string()});
    CHECK(v.code == 0);
    CHECK(v.json() == j.at("report"));

    // A bare tuple document is accepted too.
    const auto bare = scratch("bare.json");
    std::ofstream(bare) << j.at("tuple").dump();
    CHECK(invoke({"verify", "--in", bare.string()}).code == 0);
}

TEST_CASE("verify on build output exits 0 for every genus-2 profile and several seeds")
{
    const auto path = scratch("build2.json");
    for (const auto &p : enumerate_profiles(2)) {
        for (int seed : {0, 1, 7}) {
            CAPTURE(join(p.n));
            CAPTURE(seed);
            const auto b = invoke({"build", "2", "--profile", join(p.n), "--seed", std::to_string(seed), "--out", path.string()});
            REQUIRE(b.code == 0);
            CHECK(invoke({"verify", "--in", path.string()}).code == 0);
        }
    }
}

TEST_CASE("identical configuration gives byte-identical output")
{
    CHECK(invoke({"build", "2", "--profile", "0,1,0,0,0,0", "--seed", "3"}).out ==
          invoke({"build", "2", "--profile", "0,1,0,0,0,0", "--seed", "3"}).out);

    auto a = invoke({"census", "1", "--jobs", "1"}).json();
    auto b = invoke({"census", "1", "--jobs", "3"}).json();
    a.erase("metadata");
    b.erase("metadata");
    CHECK(a.dump() == b.dump());

    CHECK(invoke({"census", "1", "--format", "csv"}).out == invoke({"census", "1", "--format", "csv", "-j", "2"}).out);
}

TEST_CASE("elliptic reports four certified solutions")
{
    const auto r = invoke({"elliptic", "--tau", "0,1"});
    REQUIRE(r.code == 0);
    const auto j = r.json();
    CHECK(j.at("tau") == Json::array({0.0, 1.0}));
    REQUIRE(j.at("solutions").size() == 4);
    for (const auto &s : j.at("solutions")) {
        CHECK(s.at("a").size() == 4);
        CHECK(s.at("residual").get<double>() < 1e-8);
        CHECK(s.at("orbit_id") == 0);
        CHECK(s.at("certificate").at("passed") == true);
    }
    // Negative real parts parse without '='.
    CHECK(invoke({"elliptic", "--tau", "-0.3,0.9", "--format", "csv"}).code == 0);
}

TEST_CASE("census output, sharding and CSV quoting")
{
    const auto full = invoke({"census", "1"});
    REQUIRE(full.code == 0);
    const auto j = full.json();
    CHECK(j.at("g") == 1);
    CHECK(j.at("filter").is_null());
    CHECK(j.at("shard") == Json::array({1, 1}));
    REQUIRE(j.at("profiles").size() == 1);
    CHECK(j.at("profiles")[0].at("tuple_count") == 32);
    CHECK(j.at("profiles")[0].at("class_count") == 4);
    CHECK(j.at("metadata").contains("wall_time_seconds"));

    std::uint64_t total = 0;
    for (const char *s : {"1/3", "2/3", "3/3"}) {
        total += invoke({"census", "1", "--shard", s}).json().at("profiles")[0].at("tuple_count").get<std::uint64_t>();
    }
    CHECK(total == 32);

    CHECK(invoke({"census", "1", "--all"}).json().at("profiles")[0].at("tuple_count") == 32);

    const auto csv = invoke({"census", "1", "--format", "csv"});
    CHECK(csv.out == "profile,tuple_count,class_count\r\n\"0,0,0,0\",32,4\r\n");

    const auto verified = invoke({"census", "1", "--verify"}).json().at("profiles")[0];
    CHECK(verified.at("verified") == 32);
    CHECK(verified.at("verify_failures") == 0);
}

TEST_CASE("census checkpoints resume to the same counts")
{
    const auto ckpt = scratch("ckpt.json");
    const auto full = invoke({"census", "1", "--checkpoint", ckpt.string()});
    REQUIRE(full.code == 0);
    REQUIRE(fs::exists(ckpt));
    const auto final_ckpt = checkpoint_from_json(read_json_file(ckpt.string()));
    CHECK(final_ckpt.task_hash == task_hash(EnumerationTask{}));

    // A mid-run checkpoint produced by the library resumes through the CLI.
    std::optional<Checkpoint> early;
    CensusOptions opts;
    opts.on_checkpoint = [&](const Checkpoint &c) {
        if (!early) {
            early = c;
        }
    };
    count_classes(EnumerationTask{}, opts);
    REQUIRE(early);
    REQUIRE(early->cursor > 0);
    const auto round = checkpoint_from_json(Json::parse(to_json(*early).dump()));
    CHECK(round.task_hash == early->task_hash);
    CHECK(round.cursor == early->cursor);
    CHECK(round.partial == early->partial);

    const auto mid = scratch("mid.json");
    std::ofstream(mid) << to_json(*early).dump();
    auto resumed = invoke({"census", "1", "--resume", mid.string()}).json();
    auto expected = full.json();
    resumed.erase("metadata");
    expected.erase("metadata");
    CHECK(resumed == expected);

    // Resuming under a different task is refused.
    const auto bad = invoke({"census", "1", "--all", "--resume", mid.string()});
    CHECK(bad.code == 2);
    CHECK(bad.error().at("code") == "ResumeCursorMismatch");
}

TEST_CASE("jobs fall back to ODDCOVER_JOBS")
{
    setenv("ODDCOVER_JOBS", "2", 1);
    CHECK(invoke({"census", "1"}).json().at("metadata").at("jobs") == 2);
    CHECK(invoke({"census", "1", "--jobs", "1"}).json().at("metadata").at("jobs") == 1);
    setenv("ODDCOVER_JOBS", "many", 1);
    CHECK(invoke({"census", "1"}).code == 2);
    unsetenv("ODDCOVER_JOBS");
}

TEST_CASE("quadric report")
{
    const auto r = invoke({"quadric", "2", "--profile", "1,0,0,0,0,0"});
    REQUIRE(r.code == 0);
    const auto j = r.json();
    CHECK(j.at("coefficients")[0] == Json::array({1, 3}));
    CHECK(j.at("coefficients")[1] == Json::array({1, 1}));
    CHECK(j.at("rank") == 5);
    CHECK(j.at("smooth") == true);
}

TEST_CASE("exit codes and error JSON")
{
    SUBCASE("resource refusal")
    {
        const auto r = invoke({"census", "3"});
        CHECK(r.code == 3);
        CHECK(r.error().at("code") == "SearchSpaceTooLarge");
        CHECK(r.error().at("exit_code") == 3);
    }
    SUBCASE("invalid input")
    {
        CHECK(invoke({"build", "2", "--profile", "0,0,0"}).error().at("code") == "InvalidProfile");
        CHECK(invoke({"build", "2", "--profile", "0,0,0"}).code == 2);
        CHECK(invoke({"build", "1", "--profile", "0,a,0,0"}).code == 2);
        CHECK(invoke({"elliptic", "--tau", "0,-1"}).error().at("code") == "DegenerateLattice");
        CHECK(invoke({"elliptic", "--tau", "1"}).code == 2);
        CHECK(invoke({"census", "1", "--shard", "0/2"}).error().at("code") == "InvalidShard");
        CHECK(invoke({"verify", "--in", scratch("missing.json").string()}).code == 2);
        CHECK(invoke({"profiles", "2", "--tau", "0,1"}).code == 2);
        CHECK(invoke({"frobnicate"}).code == 2);
        CHECK(invoke({}).code == 2);
    }
    SUBCASE("inconsistent configuration")
    {
        cli::RunConfig c;
        c.subcommand = "build";
        c.genus = 1;
        c.profile = std::vector<int>{0, 0, 0, 0};
        c.tau = Complex{0, 1};
        std::ostringstream out, err;
        CHECK(cli::run(c, out, err) == 2);
        CHECK(out.str().empty());
        c.tau.reset();
        CHECK(cli::run(c, out, err) == 0);
    }
    SUBCASE("verification failure")
    {
        // (1 2)(3 4) is not a 3-cycle.
        const auto path = scratch("bad_tuple.json");
        std::ofstream(path) << R"({"g":1,"tau":[{"n":4,"one_line":[2,1,4,3]},{"n":4,"one_line":[3,2,4,1]}]})";
        const auto r = invoke({"verify", "--in", path.string()});
        CHECK(r.code == 1);
        CHECK(r.json().at("all_pass") == false);
    }
    SUBCASE("help")
    {
        const auto r = invoke({"--help"});
        CHECK(r.code == 0);
        CHECK(r.out.find("census") != std::string::npos);
    }
}

TEST_CASE("exit code table")
{
    CHECK(cli::exit_code(ErrorCode::CertificateFailed) == 1);
    CHECK(cli::exit_code(ErrorCode::NotTransitive) == 1);
    CHECK(cli::exit_code(ErrorCode::ParseError) == 2);
    CHECK(cli::exit_code(ErrorCode::ResumeCursorMismatch) == 2);
    CHECK(cli::exit_code(ErrorCode::TransitivityNotFound) == 3);
}

TEST_CASE("CSV field quoting")
{
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("1,0") == "\"1,0\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}
