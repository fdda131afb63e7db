#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unistd.h>

#include "cli.hpp"
#include "dtmfilt/persistence.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

class Workspace {
public:
    Workspace() {
        static int counter = 0;
        dir_ = fs::temp_directory_path() / ("dtmfilt_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(dir_);
    }
    ~Workspace() {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }

    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(dir_ / name, std::ios::binary) << text;
        return path(name);
    }
    std::string read(const std::string& name) const {
        std::ifstream in(dir_ / name, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

private:
    fs::path dir_;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "dtmfilt");
    std::ostringstream out, err;
    const int code = dtmf::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::size_t occurrences(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("dtm command") {
    Workspace ws;
    const auto input = ws.write("x.csv", "0\n1\n2\n");
    const auto queries = ws.write("q.csv", "0.5\n");
    auto r = run({"dtm", "--input", input, "--m", "1/3", "--queries", queries});
    CHECK(r.code == 0);
    CHECK(r.out == "0.5\n");

    r = run({"dtm", "--input", ws.write("one.csv", "4,2\n"), "--m", "0.3"});
    CHECK(r.out == "0\n");

    const auto weighted = ws.write("mu.csv", "-1,0.2\n1,0.8\n");
    r = run({"dtm", "--input", weighted, "--weighted", "--m", "0.3", "--queries", ws.write("q2.csv", "-1\n"),
             "--output", ws.path("out.csv")});
    CHECK(r.code == 0);
    CHECK(std::abs(std::stod(ws.read("out.csv")) - 1.1547005383792515) <= 1e-12);
}

TEST_CASE("pipeline examples") {
    Workspace ws;
    const auto weighted = ws.write("mu.csv", "-1,0.2\n1,0.8\n");
    auto r = run({"pipeline", "--input", weighted, "--weighted", "--m", "0.3", "--p", "1"});
    CHECK(r.code == 0);
    const auto d = dtmf::parse_diagram(r.out);
    REQUIRE(d.points.size() == 2);
    CHECK(r.out.rfind("dim,birth,death\n0,0,inf\n0,1.1547005", 0) == 0);
    CHECK(std::abs(d.points[1].death - 1.5773502691896257) <= 1e-12);

    r = run({"pipeline", "--input", ws.write("one.csv", "0,0\n"), "--m", "0.5"});
    CHECK(r.out == "dim,birth,death\n0,0,inf\n");

    const auto square = ws.write("square.csv", "0,0\n1,0\n1,1\n0,1\n");
    r = run({"pipeline", "--input", square, "--m", "1/4", "--diagram-out", ws.path("sq.csv")});
    CHECK(r.code == 0);
    CHECK(ws.read("sq.csv").find("1,0.5,0.70710678") != std::string::npos);
    CHECK(r.out.find("essential deaths censored at t_max") != std::string::npos);

    r = run({"pipeline", "--input", square, "--m", "1/4", "--filtration", "cech"});
    CHECK(r.code == 0);
    CHECK(r.out.find("1,0.5,0.70710678") != std::string::npos);
}

TEST_CASE("pipeline is deterministic and round-trips through a complex file") {
    Workspace ws;
    REQUIRE(run({"synth", "--kind", "circle-with-outliers", "--n", "40", "--outliers", "8", "--seed", "7", "--output",
                 ws.path("pts.csv")})
                .code == 0);
    const std::vector<std::string> args{"pipeline", "--input", ws.path("pts.csv"), "--m", "0.1", "--p", "2"};
    auto first = args;
    first.insert(first.end(), {"--diagram-out", ws.path("a.csv"), "--complex-out", ws.path("k.txt")});
    auto second = args;
    second.insert(second.end(), {"--diagram-out", ws.path("b.csv")});
    REQUIRE(run(first).code == 0);
    REQUIRE(run(second).code == 0);
    CHECK(ws.read("a.csv") == ws.read("b.csv"));
    REQUIRE(run({"reduce", "--complex", ws.path("k.txt"), "--diagram-out", ws.path("c.csv")}).code == 0);
    CHECK(ws.read("a.csv") == ws.read("c.csv"));
    CHECK(!ws.read("a.csv").empty());
}

TEST_CASE("stability command") {
    Workspace ws;
    const auto x = ws.write("x.csv", "0,0\n1,0\n1,1\n0,1\n0.5,2\n");
    auto r = run({"stability", "--theorem", "T4.6", "--x", x, "--gamma", x, "--m", "0.25"});
    CHECK(r.code == 0);
    auto json = nlohmann::json::parse(r.out);
    CHECK(json["measured_bottleneck"] == 0.0);
    CHECK(json["satisfied"] == true);
    CHECK(json["bound"].get<double>() == doctest::Approx(2.0 * json["terms"]["c_gamma"].get<double>()));

    const auto bad = ws.write("g.csv", "0,0\n9,9\n");
    r = run({"stability", "--theorem", "T4.6", "--x", x, "--gamma", bad, "--m", "0.25"});
    CHECK(r.code == 2);
    CHECK(r.err.find("is not in x") != std::string::npos);

    const auto gamma = ws.write("gamma.csv", "0,0\n1,0\n1,1\n0,1\n");
    r = run({"stability", "--theorem", "T4.13", "--x", x, "--gamma", gamma, "--m", "0.25", "--p", "inf",
             "--report-out", ws.path("report.json")});
    CHECK(r.code == 0);
    json = nlohmann::json::parse(ws.read("report.json"));
    CHECK(json["theorem"] == "T4.13");
    CHECK(json["p"] == "inf");
    CHECK(json["satisfied"] == true);

    r = run({"stability", "--theorem", "P4.8-bound", "--mu", gamma, "--x", x, "--m", "0.5"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["satisfied"].is_null());
}

TEST_CASE("render command") {
    Workspace ws;
    auto r = run({"render", "--diagram", ws.write("empty.csv", "dim,birth,death\n")});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("<svg", 0) == 0);
    CHECK(occurrences(r.out, "<circle") == 0);
    CHECK(occurrences(r.out, "<polygon") == 0);
    CHECK(r.out.find("stroke-dasharray") != std::string::npos);

    r = run({"render", "--diagram", ws.write("one.csv", "dim,birth,death\n1,0.5,0.75\n")});
    CHECK(occurrences(r.out, "<circle") == 1);

    r = run({"render", "--diagram", ws.write("ess.csv", "dim,birth,death\n0,0,inf\n0,0.2,0.6\n")});
    CHECK(occurrences(r.out, "<polygon") == 1);
    CHECK(occurrences(r.out, "<circle") == 1);
    const auto again = run({"render", "--diagram", ws.path("ess.csv")});
    CHECK(again.out == r.out);

    r = run({"render", "--diagram", ws.write("bad.csv", "birth,death\n")});
    CHECK(r.code == 2);
}

TEST_CASE("distance and utility commands") {
    Workspace ws;
    const auto a = ws.write("a.csv", "dim,birth,death\n0,0,2\n");
    const auto b = ws.write("b.csv", "dim,birth,death\n0,0,3\n");
    CHECK(run({"bottleneck", a, b}).out == "1\n");
    CHECK(run({"bottleneck", a, b, "--dim", "1"}).out == "0\n");
    const auto e = ws.write("e.csv", "dim,birth,death\n0,0,inf\n");
    const auto r = run({"bottleneck", a, e});
    CHECK(r.out.rfind("inf\n", 0) == 0);

    CHECK(run({"w2", ws.write("p.csv", "0\n0\n"), ws.write("q.csv", "0\n4\n")}).out.rfind("2.828427", 0) == 0);
    CHECK(run({"hausdorff", ws.write("h1.csv", "0,0\n"), ws.write("h2.csv", "3,4\n0,0\n")}).out == "5\n");
    CHECK(run({"embed", "--input", ws.write("s.txt", "1\n2\n3\n"), "--dim", "2"}).out == "1,2\n2,3\n");
    CHECK(run({"synth", "--kind", "circle", "--n", "5", "--seed", "3"}).out ==
          run({"synth", "--kind", "circle", "--n", "5", "--seed", "3"}).out);
}

TEST_CASE("exit codes") {
    Workspace ws;
    CHECK(run({}).code == 2);
    CHECK(run({"pipeline"}).code == 2);
    CHECK(run({"nosuch"}).code == 2);
    const auto x = ws.write("x.csv", "0\n1\n");
    CHECK(run({"pipeline", "--input", x, "--m", "1.5"}).code == 2);
    CHECK(run({"pipeline", "--input", x, "--m", "0.5", "--p", "0.5"}).code == 2);
    CHECK(run({"pipeline", "--input", ws.path("missing.csv"), "--m", "0.5"}).code == 2);
    CHECK(run({"dtm", "--input", ws.write("bad.csv", "0,1\n2\n"), "--m", "0.5"}).code == 2);

    std::string many;
    for (int i = 0; i < 200; ++i) many += std::to_string(i) + "\n";
    const auto big = ws.write("big.csv", many);
    const auto r = run({"pipeline", "--input", big, "--m", "0.1", "--filtration", "cech", "--max-dim", "3"});
    CHECK(r.code == 3);
    CHECK(!r.err.empty());
}

}
