#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <fstream>
#include <sstream>
#include <string>

#include "extridge/filters.hpp"
#include "extridge/io.hpp"

using namespace extridge;
namespace fs = std::filesystem;

namespace {

const std::string kCli = EXTRIDGE_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "extridge_cli_test") {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
    std::string file(const std::string& name) const {
        return (path / name).string();
    }
};

int run(const std::string& args, const std::string& out_file,
        const std::string& err_file) {
    const std::string cmd =
        kCli + " " + args + " > " + out_file + " 2> " + err_file;
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

} // namespace

TEST_CASE("solve: identity system with zero noise returns the rhs") {
    TempDir tmp;
    write_text(tmp.file("m.csv"), "1,0\n0,1\n");
    write_text(tmp.file("y.csv"), "3\n-4\n");
    const int code = run("solve --matrix " + tmp.file("m.csv") + " --rhs " +
                             tmp.file("y.csv") +
                             " --a 1 --p 0 --q 0 --method optimal --out " +
                             tmp.file("x.csv"),
                         tmp.file("out.txt"), tmp.file("err.txt"));
    CHECK(code == 0);
    const Vector x = read_vector_file(tmp.file("x.csv"));
    CHECK(x[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(-4.0).epsilon(1e-12));
    const std::string summary = slurp(tmp.file("out.txt"));
    CHECK(summary.find("theta = 1") != std::string::npos);
    CHECK(summary.find("alpha = 1") != std::string::npos);
}

TEST_CASE("solve: malformed CSV cell exits 2 and cites the location") {
    TempDir tmp;
    write_text(tmp.file("m.csv"), "1,0\n0,abc\n");
    write_text(tmp.file("y.csv"), "1\n1\n");
    const int code = run("solve --matrix " + tmp.file("m.csv") + " --rhs " +
                             tmp.file("y.csv"),
                         tmp.file("out.txt"), tmp.file("err.txt"));
    CHECK(code == 2);
    const std::string err = slurp(tmp.file("err.txt"));
    CHECK(err.find("line 2") != std::string::npos);
    CHECK(err.find("column 2") != std::string::npos);
}

TEST_CASE("solve: dimension mismatch exits 2") {
    TempDir tmp;
    write_text(tmp.file("m.csv"), "1,0\n0,1\n");
    write_text(tmp.file("y.csv"), "1\n2\n3\n");
    CHECK(run("solve --matrix " + tmp.file("m.csv") + " --rhs " +
                  tmp.file("y.csv"),
              tmp.file("o"), tmp.file("e")) == 2);
}

TEST_CASE("solve: numeric failure exits 3") {
    TempDir tmp;
    write_text(tmp.file("m.csv"), "1\n");
    write_text(tmp.file("y.csv"), "1\n");
    // confluent pole exactly at the single eigenvalue
    CHECK(run("solve --matrix " + tmp.file("m.csv") + " --rhs " +
                  tmp.file("y.csv") + " --method confluent:1",
              tmp.file("o"), tmp.file("e")) == 3);
}

TEST_CASE("solve: output matches library-level solve_optimal bitwise") {
    TempDir tmp;
    const NoiseModel model(1, 0.5, 0.2, 4, 6);
    const auto ps = sample_instance(model, RngSpec{4242, 0});
    {
        std::ofstream m(tmp.file("m.csv"));
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                m << format_double(ps.R(i, j)) << (j == 3 ? "\n" : ",");
            }
        }
        std::ofstream y(tmp.file("y.csv"));
        for (std::size_t i = 0; i < 6; ++i) {
            y << format_double(ps.y[i]) << "\n";
        }
    }
    const int code = run("solve --matrix " + tmp.file("m.csv") + " --rhs " +
                             tmp.file("y.csv") +
                             " --a 1 --p 0.5 --q 0.2 --method optimal --out " +
                             tmp.file("x.csv"),
                         tmp.file("o"), tmp.file("e"));
    REQUIRE(code == 0);

    const Matrix r = read_matrix_file(tmp.file("m.csv"));
    const Vector y = read_vector_file(tmp.file("y.csv"));
    const Vector expected = solve_optimal(r, y, derive_params(model));
    std::string expected_text;
    for (std::size_t i = 0; i < expected.dim(); ++i) {
        expected_text += format_double(expected[i]) + "\n";
    }
    CHECK(slurp(tmp.file("x.csv")) == expected_text);
}

TEST_CASE("mc: noiseless rows are exactly zero and runs are byte-identical") {
    TempDir tmp;
    const std::string flags =
        "mc --a 1 --p 0 --q 0 --n 3 --N 3 --trials 50 --samples 10 --seed 7 "
        "--filters optimal,standard";
    REQUIRE(run(flags + " --out " + tmp.file("r1.csv"), tmp.file("o1"),
                tmp.file("e1")) == 0);
    REQUIRE(run(flags + " --out " + tmp.file("r2.csv"), tmp.file("o2"),
                tmp.file("e2")) == 0);
    CHECK(slurp(tmp.file("r1.csv")) == slurp(tmp.file("r2.csv")));

    std::ifstream in(tmp.file("r1.csv"));
    std::string header;
    std::getline(in, header);
    CHECK(header == "filter,empirical_mean,stderr,theory,z_score");
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        // empirical_mean column is a denormal-free exact zero
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const double emp = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        CHECK(emp <= 1e-16);
    }
    CHECK(rows == 2);
}

TEST_CASE("mc: json format carries the same fields") {
    TempDir tmp;
    REQUIRE(run("mc --a 1 --p 0.5 --q 0.1 --n 3 --N 5 --trials 20 --samples 5 "
                "--seed 3 --filters optimal --format json --out " +
                    tmp.file("r.json"),
                tmp.file("o"), tmp.file("e")) == 0);
    const std::string text = slurp(tmp.file("r.json"));
    CHECK(text.find("\"empirical_mean\"") != std::string::npos);
    CHECK(text.find("\"z_score\"") != std::string::npos);
}

TEST_CASE("mc: bad filter list exits 2") {
    TempDir tmp;
    CHECK(run("mc --n 2 --N 3 --filters nonsense", tmp.file("o"),
              tmp.file("e")) == 2);
}

TEST_CASE("spectrum: counts, round trip, and divergent-regime summary") {
    TempDir tmp;
    REQUIRE(run("spectrum --a 1 --p 0 --n 1 --N 1 --samples 3 --seed 5 --out " +
                    tmp.file("s.csv"),
                tmp.file("o"), tmp.file("e")) == 0);
    const Spectrum spec = read_spectrum_csv(tmp.file("s.csv"));
    CHECK(spec.n == 1);
    CHECK(spec.samples == 3);
    const std::string summary = slurp(tmp.file("o"));
    CHECK(summary.find("divergent regime") != std::string::npos);

    REQUIRE(run("spectrum --a 1 --p 0.5 --n 2 --N 6 --samples 5 --seed 5 --out " +
                    tmp.file("s2.csv"),
                tmp.file("o2"), tmp.file("e2")) == 0);
    const std::string summary2 = slurp(tmp.file("o2"));
    CHECK(summary2.find("inv_trace_oracle = ") != std::string::npos);
    CHECK(summary2.find("divergent") == std::string::npos);
}

TEST_CASE("sweep: equality case, inf rendering, and unknown keys") {
    TempDir tmp;
    write_text(tmp.file("cfg.json"),
               R"({"a":1,"p":0,"q":0,"n":3,"N":6,"filters":["optimal","standard"],
                   "trials":30,"seed":11,"samples":10})");
    REQUIRE(run("sweep --config " + tmp.file("cfg.json") + " --out " +
                    tmp.file("t.csv"),
                tmp.file("o"), tmp.file("e")) == 0);
    std::ifstream in(tmp.file("t.csv"));
    std::string header;
    std::getline(in, header);
    CHECK(header == "a,p,q,n,N,filter,theory,empirical,stderr,gap_vs_opt");
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        const auto last = line.rfind(',');
        const double gap = std::stod(line.substr(last + 1));
        CHECK(gap >= -1e-12);
        CHECK(gap <= 1e-12); // p = q = 0 equality case
    }
    CHECK(rows == 2);

    // divergent cell renders the literal token "inf"
    write_text(tmp.file("cfg2.json"),
               R"({"a":1,"p":0.5,"q":0.2,"n":4,"N":4,"filters":["standard"],
                   "trials":20,"seed":2,"samples":30})");
    REQUIRE(run("sweep --config " + tmp.file("cfg2.json") + " --out " +
                    tmp.file("t2.csv"),
                tmp.file("o2"), tmp.file("e2")) == 0);
    // not asserted: whether a zero eigenvalue occurred; just check the file
    // parses and any inf is the bare token
    const std::string table = slurp(tmp.file("t2.csv"));
    CHECK(table.find("infinity") == std::string::npos);

    write_text(tmp.file("cfg3.json"), R"({"a":1,"bogus":2})");
    const int code = run("sweep --config " + tmp.file("cfg3.json"),
                         tmp.file("o3"), tmp.file("e3"));
    CHECK(code == 2);
    CHECK(slurp(tmp.file("e3")).find("bogus") != std::string::npos);
}

TEST_CASE("unknown flag exits 2") {
    TempDir tmp;
    CHECK(run("mc --n 2 --N 3 --frobnicate 1", tmp.file("o"), tmp.file("e")) ==
          2);
}
