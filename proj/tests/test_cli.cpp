#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef ENTANGLEDYN_CLI_PATH
#error "ENTANGLEDYN_CLI_PATH must be defined by the build"
#endif
#ifndef ENTANGLEDYN_CONFIG_DIR
#error "ENTANGLEDYN_CONFIG_DIR must be defined by the build"
#endif

namespace fs = std::filesystem;

namespace {

const std::string cli = ENTANGLEDYN_CLI_PATH;
const std::string cfg_dir = ENTANGLEDYN_CONFIG_DIR;

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "entangledyn_cli_test";
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    const fs::path out = scratch() / "stdout.txt";
    const fs::path err = scratch() / "stderr.txt";
    const std::string cmd =
        cli + " " + args + " > " + out.string() + " 2> " + err.string();
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

fs::path write_config(const std::string& name, const std::string& body) {
    const fs::path p = scratch() / name;
    std::ofstream(p) << body;
    return p;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST_CASE("run emits CSV on stdout") {
    const auto r = run_cli("run " + cfg_dir + "/fig4a_ladder.json");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("t,EOE,abs_u\n", 0) == 0);
    CHECK(count_lines(r.out) == 402); // header + one row per sample
}

TEST_CASE("run writes to --out and emits a plot script next to it") {
    const fs::path csv = scratch() / "ladder.csv";
    const auto r = run_cli("run " + cfg_dir + "/fig4a_ladder.json --out " +
                           csv.string() + " --plot-script");
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    const std::string data = slurp(csv);
    CHECK(data.rfind("t,EOE,abs_u\n", 0) == 0);
    const std::string gp = slurp(csv.string() + ".gp");
    CHECK(gp.rfind("set datafile separator", 0) == 0);
    CHECK(gp.find(csv.string()) != std::string::npos);
}

TEST_CASE("sweep output is byte-identical across worker counts and runs") {
    const std::string cfg = cfg_dir + "/fig1_theta_sweep.json";
    const auto a = run_cli("sweep " + cfg + " --workers 1");
    const auto b = run_cli("sweep " + cfg + " --workers 4");
    const auto c = run_cli("sweep " + cfg + " --workers 4");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.out == b.out);
    CHECK(b.out == c.out);
    CHECK(a.out.rfind("t,sweep_value,LN,EOE\n", 0) == 0);
    CHECK(count_lines(a.out) == 1 + 201 * 5);
}

TEST_CASE("ENTANGLEDYN_WORKERS is a fallback for --workers") {
    const std::string cfg = cfg_dir + "/fig2_delta_sweep.json";
    const auto a = run_cli("sweep " + cfg + " --workers 1");
    setenv("ENTANGLEDYN_WORKERS", "3", 1);
    const auto b = run_cli("sweep " + cfg);
    unsetenv("ENTANGLEDYN_WORKERS");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("poles report lists spectral and product rows") {
    const auto r = run_cli("poles " + cfg_dir + "/ladder_poles.json");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("re_z,im_z,weight_re,weight_im,method,secular_residual\n", 0) == 0);
    CHECK(count_lines(r.out) == 1 + 2 * 4); // Q=1: four poles, both methods
    CHECK(r.out.find(",spectral,") != std::string::npos);
    CHECK(r.out.find(",product,") != std::string::npos);
}

TEST_CASE("cavity poles report carries numeric and perturbative rows") {
    const auto r = run_cli("poles " + cfg_dir + "/cavity_offres_poles.json");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("re_z,im_z,weight_re,weight_im,method\n", 0) == 0);
    CHECK(count_lines(r.out) == 3); // header + numeric + perturbative
    CHECK(r.out.find(",numeric\n") != std::string::npos);
    CHECK(r.out.find(",perturbative\n") != std::string::npos);
}

TEST_CASE("exit code 1 on unreadable or malformed config") {
    CHECK(run_cli("run " + scratch().string() + "/does_not_exist.json").code == 1);
    const fs::path bad = write_config("bad.json", "{ not json ");
    CHECK(run_cli("run " + bad.string()).code == 1);
}

TEST_CASE("exit code 2 on validation errors") {
    const fs::path bad_model = write_config("bad_model.json", R"({
        "model": "nope",
        "time_grid": { "t_start": 0.0, "t_end": 1.0, "samples": 10 },
        "measures": ["LN"]
    })");
    const auto r1 = run_cli("run " + bad_model.string());
    CHECK(r1.code == 2);
    CHECK(!r1.err.empty());

    const fs::path bad_grid = write_config("bad_grid.json", R"({
        "model": "jcm",
        "time_grid": { "t_start": 0.0, "t_end": 1.0, "samples": 1 },
        "measures": ["LN"]
    })");
    CHECK(run_cli("run " + bad_grid.string()).code == 2);

    const fs::path mixed_eoe = write_config("mixed_eoe.json", R"({
        "model": "jcm",
        "initial_state": { "r": 0.5 },
        "time_grid": { "t_start": 0.0, "t_end": 1.0, "samples": 10 },
        "measures": ["EOE"]
    })");
    CHECK(run_cli("run " + mixed_eoe.string()).code == 2);

    // sweep invoked on a config without a sweep block
    CHECK(run_cli("sweep " + cfg_dir + "/fig4a_ladder.json").code == 2);
}

TEST_CASE("exit code 3 on numerical failure") {
    // near the resonance guard but outside the band where the pole pair
    // exists, the pair search cannot converge
    const fs::path cfg = write_config("pair_missing.json", R"({
        "model": "cavity-poles",
        "params": {
            "lambda": 0.03,
            "epsilon_omega0": 3.0e-3,
            "L_omega_over_pi": 1.04
        }
    })");
    const auto r = run_cli("poles " + cfg.string());
    CHECK(r.code == 3);
    CHECK(r.err.find("pole pair") != std::string::npos);
}
