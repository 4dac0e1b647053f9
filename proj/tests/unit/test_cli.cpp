#include "catch_amalgamated.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "frontspec/cli/app.hpp"
#include "support/generators.hpp"

using namespace frontspec;
using namespace frontspec::cli;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "frontspec");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("frontspec_test_" + name);
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("number formatting round-trips", "[cli][property]") {
    gen::Cases cases(0xc11);
    for (int i = 0; i < 1000; ++i) {
        const double v = cases.uniform(-1.0, 1.0) * std::pow(10.0, cases.integer(-300, 300));
        const std::string s = fmt(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
    }
    CHECK(fmt(0.5) == "0.5");
    CHECK(fmt(NAN) == "nan");
    CHECK(fmt(-INFINITY) == "-inf");
}

TEST_CASE("csv tables", "[cli]") {
    CsvTable t({"a", "b"});
    t.add({1.0, 0.25});
    t.add_cells({"x", "y"});
    CHECK(t.str() == "a,b\n1,0.25\nx,y\n");
    CHECK_THROWS_AS(t.add({1.0}), Error);
}

TEST_CASE("config JSON round-trip", "[cli]") {
    RunConfig c;
    c.params.alpha = 0.3;
    c.epsilon_list = {0.2, 0.1, 0.05};
    c.grid.N = 2001;
    c.evolve.h = 0.02;
    c.holo.angles = {0.0, 0.5};
    c.workers = 3;
    const RunConfig back = from_json(to_json(c));
    CHECK(to_json(back) == to_json(c));
    CHECK(back.params.alpha == 0.3);
    CHECK(back.workers == 3);
}

TEST_CASE("config rejects unknown keys and bad values", "[cli]") {
    auto code_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Numeric;
    };
    CHECK(code_of([] { (void)from_json(json{{"alpah", 0.2}}); }) == ErrorCode::Config);
    CHECK(code_of([] { (void)from_json(json{{"grid", {{"M", 3}}}}); }) == ErrorCode::Config);
    CHECK(code_of([] { (void)from_json(json{{"workers", "many"}}); }) == ErrorCode::Config);

    RunConfig c;
    CHECK_NOTHROW(c.validate());
    c.params.alpha = 0.6;
    CHECK(code_of([&] { c.validate(); }) == ErrorCode::Config);
    c = RunConfig{};
    c.epsilon_list = {0.1, 0.1};
    CHECK(code_of([&] { c.validate(); }) == ErrorCode::Config);
    c = RunConfig{};
    c.grid.N = 1000;
    CHECK(code_of([&] { c.validate(); }) == ErrorCode::Config);
    c = RunConfig{};
    c.evolve.dt_factor = 0.2;
    CHECK(code_of([&] { c.validate(); }) == ErrorCode::Config);
    c = RunConfig{};
    c.holo.angles = {1.6};
    CHECK(code_of([&] { c.validate(); }) == ErrorCode::Config);
}

TEST_CASE("print-defaults emits the default config", "[cli]") {
    const Invocation r = invoke({"--print-defaults"});
    CHECK(r.code == kOk);
    CHECK(json::parse(r.out) == to_json(RunConfig{}));
}

TEST_CASE("configuration errors exit with code 2 and a JSON message", "[cli]") {
    const Invocation r = invoke({"equilibria", "--alpha", "0.7"});
    CHECK(r.code == kConfigError);
    const json e = json::parse(r.err);
    CHECK(e.at("error") == "config");

    const Invocation none = invoke({});
    CHECK(none.code == kConfigError);

    const auto dir = scratch("badcfg");
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "c.json") << R"({"unknown": 1})";
    const Invocation f = invoke({"wave", "--config", (dir / "c.json").string()});
    CHECK(f.code == kConfigError);
    CHECK(json::parse(f.err).at("message").get<std::string>().find("unknown") != std::string::npos);
}

TEST_CASE("equilibria command writes its tables", "[cli]") {
    const auto dir = scratch("equilibria");
    const Invocation r = invoke({"equilibria", "--out", dir.string(), "--epsilon", "0.2", "--epsilon", "0.1",
                                 "--epsilon", "0.05"});
    CHECK(r.code == kOk);
    CHECK(r.out.find("PASS equilibria.vieta_1e-9") != std::string::npos);
    CHECK(std::filesystem::exists(dir / "equilibria/roots.csv"));
    CHECK(std::filesystem::exists(dir / "equilibria/expansion_residuals.svg"));
    std::ifstream is(dir / "equilibria/roots.json");
    const json doc = json::parse(is);
    CHECK(doc.at("rows").size() == 3);
    CHECK(doc.contains("fits"));
}

TEST_CASE("svg output can be switched off", "[cli]") {
    RunConfig c;
    c.emit_svg = false;
    c.epsilon_list = {0.2, 0.1, 0.05};
    const CommandOutput out = run_equilibria(c);
    for (const auto& [path, content] : out.files) CHECK(path.find(".svg") == std::string::npos);
}

TEST_CASE("commands are deterministic", "[cli]") {
    RunConfig c;
    c.epsilon_list = {0.2, 0.1, 0.05};
    c.grid = {10.0, 1001};
    CHECK(run_wave(c).files == run_wave(c).files);
    CHECK(run_gap(c).files == run_gap(c).files);
    RunConfig par = c;
    par.workers = 4;
    CHECK(run_gap(c).files == run_gap(par).files);
}
