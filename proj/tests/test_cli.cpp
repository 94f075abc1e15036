#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "qcrb-cli-test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    const fs::path out_file = scratch_dir() / ("out" + std::to_string(counter++) + ".txt");
    const std::string cmd = env_prefix + " \"" + QCRB_CLI_PATH + "\" " + args + " > " +
                            out_file.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    const int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

    std::ifstream in(out_file);
    std::stringstream buf;
    buf << in.rdbuf();
    return {exit_code, buf.str()};
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> lines;
    std::istringstream is(s);
    for (std::string line; std::getline(is, line);) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("fisher: pure Model 2 bundle JSON") {
    const auto r = run("fisher --generators mechanical --state pure");
    REQUIRE(r.exit_code == 0);
    const json d = json::parse(r.out);
    // g_r_inv = 0.5 [[1, i], [-i, 1]] encoded as [re, im] pairs.
    CHECK(d["g_r_inv"][0][0][0].get<double>() == doctest::Approx(0.5));
    CHECK(d["g_r_inv"][0][0][1].get<double>() == doctest::Approx(0.0));
    CHECK(d["g_r_inv"][0][1][0].get<double>() == doctest::Approx(0.0));
    CHECK(d["g_r_inv"][0][1][1].get<double>() == doctest::Approx(0.5));
    CHECK(d["g_r_inv"][1][0][1].get<double>() == doctest::Approx(-0.5));
    CHECK(d["g_s_inv"][0][0].get<double>() == doctest::Approx(0.5));
    CHECK(d["d_invariant"].get<bool>());
    CHECK(d["ordering_case"].get<std::string>() == "no_ordering");
    CHECK(d["pure_state"].get<bool>());
    // The lambda^2-normalized block is eB-independent.
    CHECK(d["lambda_sq_normalized"]["g_s_inv"][0][0].get<double>() == doctest::Approx(0.25));
}

TEST_CASE("fisher: thermal Fig. 2 scenario with numerical verification") {
    const auto r = run("fisher --generators canonical --state thermal "
                       "--beta-omega 1.0986122886681098 --L0 1 --verify");
    REQUIRE(r.exit_code == 0);
    const json d = json::parse(r.out);
    CHECK(d["g_s_inv"][0][0].get<double>() == doctest::Approx(3.75).epsilon(1e-10));
    CHECK(d["g_s_inv"][1][1].get<double>() == doctest::Approx(3.75).epsilon(1e-10));
    CHECK(d["g_r_inv"][0][0][0].get<double>() == doctest::Approx(3.5).epsilon(1e-10));
    CHECK(d["g_r_inv"][0][1][1].get<double>() == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(d["kappa_a_sq"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(d["kappa_b_sq"].get<double>() == doctest::Approx(0.5).epsilon(1e-10));
    CHECK_FALSE(d["d_invariant"].get<bool>());
    CHECK(d["verified"].get<bool>());
    for (const auto& [key, err] : d["max_rel_err"].items()) CHECK(err.get<double>() < 1e-6);
}

TEST_CASE("fisher: invalid configurations exit with code 2") {
    CHECK(run("fisher --state pure --L0 1").exit_code == 2);
    CHECK(run("fisher --state thermal --beta-omega 1").exit_code == 2);          // no L0/mu
    CHECK(run("fisher --state thermal --beta-omega 1 --L0 1 --mu 0.5").exit_code == 2);
    CHECK(run("fisher --state thermal --L0 1").exit_code == 2);                  // no beta
    CHECK(run("fisher --generators bogus --state pure").exit_code == 2);
    CHECK(run("fisher --state pure --eB -1").exit_code == 2);
    CHECK(run("no-such-command").exit_code == 2);
}

TEST_CASE("fisher: config file with flag override") {
    const fs::path cfg = scratch_dir() / "config.json";
    std::ofstream(cfg) << R"({"generators":"canonical","state":"thermal",)"
                       << R"("beta_omega":1.0986122886681098,"L0":1.0})";
    const auto r = run("fisher --config " + cfg.string());
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.out)["g_s_inv"][0][0].get<double>() ==
          doctest::Approx(3.75).epsilon(1e-10));
    // Flag overrides the file value.
    const auto r2 = run("fisher --config " + cfg.string() + " --L0 0");
    REQUIRE(r2.exit_code == 0);
    CHECK(json::parse(r2.out)["L0"].get<double>() == doctest::Approx(0.0));

    CHECK(run("fisher --config /nonexistent/config.json").exit_code == 5);
}

TEST_CASE("chempot: single values and error handling") {
    const auto r = run("chempot --beta-omega 2 --L0 0");
    REQUIRE(r.exit_code == 0);
    CHECK(std::stod(r.out) == doctest::Approx(1.0).epsilon(1e-12));

    const auto r2 = run("chempot --beta-omega 1 --L0 -1");
    REQUIRE(r2.exit_code == 0);
    CHECK(std::stod(r2.out) == doctest::Approx(0.3798854930417224).epsilon(1e-7));

    CHECK(run("chempot --beta-omega -1 --L0 0").exit_code == 2);
    CHECK(run("chempot --beta-omega 1").exit_code == 2);  // neither --L0 nor --sweep
}

TEST_CASE("chempot: sweep emits the 483-row grid") {
    const auto r = run("chempot --sweep");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 485);  // version line + header + 3 * 161 rows
    CHECK(lines[0].rfind("# qcrb", 0) == 0);
    CHECK(lines[1] == "beta_omega,L0,mu");
}

TEST_CASE("region: deterministic CSV with the Fig. 2 intersection") {
    const std::string args = "region --generators canonical --state thermal "
                             "--beta-omega 1.0986122886681098 --L0 1 --samples 9";
    const auto r1 = run(args);
    const auto r2 = run(args);
    REQUIRE(r1.exit_code == 0);
    CHECK(r1.out == r2.out);  // byte-identical on identical config
    CHECK(r1.out.find("rld,rld_hyperbola,4.5,3.75") != std::string::npos);
    CHECK(r1.out.find("sld_v11,sld_lines,3.75,") != std::string::npos);

    // Normalized output divides by lambda^2 = 2.
    const auto rn = run(args + " --normalized");
    CHECK(rn.out.find("rld,rld_hyperbola,2.25,1.875") != std::string::npos);
}

TEST_CASE("figure: all four figures render CSV and SVG") {
    const fs::path dir = scratch_dir() / "figs";
    fs::create_directories(dir);
    for (int n = 1; n <= 4; ++n) {
        REQUIRE(run("figure " + std::to_string(n) + " --output-dir " + dir.string())
                    .exit_code == 0);
        CHECK(fs::exists(dir / ("figure-" + std::to_string(n) + ".csv")));
        CHECK(fs::exists(dir / ("figure-" + std::to_string(n) + ".svg")));
    }

    // Fig. 1: 3 mu-curves over the L0 grid.
    std::ifstream f1(dir / "figure-1.csv");
    std::stringstream b1;
    b1 << f1.rdbuf();
    CHECK(lines_of(b1.str()).size() == 485);

    // Fig. 3: delta_v_rs vanishes at L0 = +/- 0.5 for every beta*omega.
    std::ifstream f3(dir / "figure-3.csv");
    int zero_rows = 0;
    for (std::string line; std::getline(f3, line);) {
        if (line.empty() || line[0] == '#' || line.rfind("beta_omega", 0) == 0) continue;
        std::istringstream is(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(is, field, ',')) fields.push_back(field);
        REQUIRE(fields.size() == 6);
        if (std::abs(std::abs(std::stod(fields[1])) - 0.5) < 1e-12) {
            CHECK(std::abs(std::stod(fields[4])) < 1e-12);
            CHECK(fields[5] == "sld_dominates");
            ++zero_rows;
        }
    }
    CHECK(zero_rows == 6);

    // Fig. 4: Model 2 hyperbola passes through (1, 1); lines at 1.0 and 0.5.
    std::ifstream f4(dir / "figure-4.csv");
    bool through_unit = false;
    std::stringstream b4;
    for (std::string line; std::getline(f4, line);) {
        b4 << line << "\n";
        if (line.rfind("model2_rld,", 0) == 0) {
            std::istringstream is(line);
            std::string field;
            std::vector<std::string> fields;
            while (std::getline(is, field, ',')) fields.push_back(field);
            REQUIRE(fields.size() == 4);
            if (std::abs(std::stod(fields[2]) - 1.0) < 1e-9 &&
                std::abs(std::stod(fields[3]) - 1.0) < 1e-9)
                through_unit = true;
        }
    }
    CHECK(through_unit);
    CHECK(b4.str().find("model1_sld_v11,sld_lines,1,") != std::string::npos);
    CHECK(b4.str().find("model2_sld_v11,sld_lines,0.5,") != std::string::npos);

    CHECK(run("figure 5 --output-dir " + dir.string()).exit_code == 2);
    CHECK(run("figure 1 --output-dir /nonexistent/dir").exit_code == 5);
}

TEST_CASE("verify: pass by default, fail below attainable precision") {
    const auto ok = run("verify");
    REQUIRE(ok.exit_code == 0);
    const auto lines = lines_of(ok.out);
    REQUIRE(lines.size() == 14);  // version + header + 4 scenarios x 3 matrices
    CHECK(lines[1] == "scenario,matrix,max_rel_err,tolerance,pass");
    for (size_t i = 2; i < lines.size(); ++i)
        CHECK(lines[i].find(",true") != std::string::npos);

    const auto strict = run("verify --tolerance 1e-15");
    CHECK(strict.exit_code == 4);
    CHECK(strict.out.find(",false") != std::string::npos);
}

TEST_CASE("verify: raising the cutoffs shrinks every thermal error") {
    auto errors_of = [](const std::string& out) {
        std::vector<std::pair<std::string, double>> errs;
        for (const auto& line : lines_of(out)) {
            if (line.empty() || line[0] == '#' || line.rfind("scenario", 0) == 0) continue;
            std::istringstream is(line);
            std::string scenario, matrix, err;
            std::getline(is, scenario, ',');
            std::getline(is, matrix, ',');
            std::getline(is, err, ',');
            errs.emplace_back(scenario + "/" + matrix, std::stod(err));
        }
        return errs;
    };
    const auto base = errors_of(run("verify").out);
    const auto bumped = errors_of(run("verify --cutoff-bump 8").out);
    REQUIRE(base.size() == bumped.size());
    for (size_t i = 0; i < base.size(); ++i) {
        CHECK(base[i].first == bumped[i].first);
        if (base[i].first.rfind("thermal", 0) == 0) CHECK(bumped[i].second < base[i].second);
    }
}

TEST_CASE("dump-operators: file format and env-var cutoff") {
    const fs::path dir = scratch_dir() / "dump";
    fs::create_directories(dir);
    REQUIRE(run("dump-operators --cutoff 3 3 --eB 2 --output-dir " + dir.string())
                .exit_code == 0);
    for (const char* name : {"a", "a_dag", "b", "b_dag", "p_x", "p_y", "x", "y",
                             "pi_x", "pi_y", "h", "l"})
        CHECK(fs::exists(dir / (std::string(name) + ".txt")));

    std::ifstream in(dir / "pi_x.txt");
    std::string header;
    std::getline(in, header);
    CHECK(header == "9 3 3 pi_x");
    int rows = 0;
    double row, col, re, im;
    bool saw_entry = false;
    while (in >> row >> col >> re >> im) {
        ++rows;
        if (row == 3 && col == 0) {
            // <1,0| pi_x |0,0> = i/lambda = i at eB = 2.
            CHECK(re == doctest::Approx(0.0));
            CHECK(im == doctest::Approx(1.0));
            saw_entry = true;
        }
    }
    CHECK(rows == 81);
    CHECK(saw_entry);

    // Env var sets the cutoff when no flag is given.
    const fs::path dir2 = scratch_dir() / "dump-env";
    fs::create_directories(dir2);
    REQUIRE(run("dump-operators --output-dir " + dir2.string(),
                "QCRB_DEFAULT_CUTOFF=3,4").exit_code == 0);
    std::ifstream in2(dir2 / "a.txt");
    std::string header2;
    std::getline(in2, header2);
    CHECK(header2 == "12 3 4 a");
}

TEST_CASE("cutoff too small exits with code 3") {
    // kappa_a^2 = 1 needs ~52 levels; 8 is far too few.
    CHECK(run("fisher --generators canonical --state thermal --beta-omega "
              "1.0986122886681098 --L0 1 --verify --cutoff 8 8").exit_code == 3);
}
