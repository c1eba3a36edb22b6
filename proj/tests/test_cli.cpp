#include "config.hpp"
#include "runner.hpp"

#include "setprop/errors.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;
using namespace setprop;
using namespace setprop::cli;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("setprop_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<std::string> f;
        std::istringstream is(line);
        std::string cell;
        while (std::getline(is, cell, ',')) {
            f.push_back(cell);
        }
        rows.push_back(f);
    }
    return rows;
}

std::string first_line(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
}

int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string(SETPROP_CLI_PATH) + " " + args + " >" + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

RunConfig parse(const std::string& text) { return parse_config(text, "test.yaml", fs::temp_directory_path()); }

const char* const kOscillator = R"(
name: osc
problem: {builtin: oscillator}
method: setprop_box
delta: 0.025
steps: 160
initial_set:
  displacement: {center: 1.0, radius: 0.1}
  velocity: {center: 0.0, radius: 0.1}
outputs:
  - {name: u, dof: 0}
  - {name: v, dof: 0, quantity: velocity}
plot: false
)";

}  // namespace

TEST_CASE("config parsing fills defaults") {
    const RunConfig cfg = parse(kOscillator);
    CHECK(cfg.name == "osc");
    CHECK(cfg.problem.parameters.at("omega") == doctest::Approx(4.0 * 3.141592653589793));
    REQUIRE(cfg.methods.size() == 1);
    CHECK(cfg.methods[0] == Method::setprop_box);
    CHECK(cfg.steps == 160);
    CHECK(cfg.seed == 1);
    CHECK(cfg.out_dir == "out/osc");
    CHECK(cfg.initial.first_key == "displacement");
    CHECK(cfg.initial.has_second);
    CHECK(cfg.outputs[1].quantity == OutputQuantity::velocity);
}

TEST_CASE("horizon and steps") {
    std::string text = kOscillator;
    text.replace(text.find("steps: 160"), 10, "horizon: 4.0");
    CHECK(parse(text).steps == 160);
    text.replace(text.find("horizon: 4.0"), 12, "horizon: 4.01");
    CHECK_THROWS_AS(parse(text), ConfigError);
    std::string both = kOscillator;
    both += "horizon: 5.0\n";
    CHECK_THROWS_AS(parse(both), ConfigError);
}

TEST_CASE("config errors carry locations") {
    std::string bad = kOscillator;
    bad.replace(bad.find("delta: 0.025"), 12, "delta: -1.0");
    try {
        parse(bad);
        FAIL("expected a config error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("test.yaml:5:") == 0);
    }

    std::string unknown = kOscillator;
    unknown += "colour: red\n";
    CHECK_THROWS_WITH_AS(parse(unknown), doctest::Contains("unknown key 'colour'"), ConfigError);

    std::string method = kOscillator;
    method.replace(method.find("setprop_box"), 11, "runge_kutta");
    CHECK_THROWS_AS(parse(method), UsageError);

    CHECK_THROWS_AS(parse("name: [unclosed\n"), ConfigError);
    CHECK_THROWS_AS(parse("- just a list\n"), ConfigError);

    std::string dup = kOscillator;
    dup.replace(dup.find("name: v,"), 8, "name: u,");
    CHECK_THROWS_WITH_AS(parse(dup), doctest::Contains("duplicate output"), ConfigError);

    std::string radius = kOscillator;
    radius.replace(radius.find("radius: 0.1}"), 12, "radius: -0.1}");
    CHECK_THROWS_AS(parse(radius), ConfigError);

    std::string param = kOscillator;
    param.replace(param.find("{builtin: oscillator}"), 21, "{builtin: oscillator, length: 3}");
    CHECK_THROWS_WITH_AS(parse(param), doctest::Contains("unknown parameter 'length'"), ConfigError);

    std::string input = kOscillator;
    input += "inputs:\n  - {f0: 1.0, model: constant, alpha: 2}\n";
    CHECK_THROWS_AS(parse(input), ConfigError);
}

TEST_CASE("problem construction checks dimensions") {
    RunConfig cfg = parse(kOscillator);
    const Problem prob = build_problem(cfg);
    CHECK(prob.state_dim == 2);
    CHECK(prob.outputs(1, 1) == 1.0);
    CHECK(prob.x0.center()[0] == 1.0);

    RunConfig wrong = cfg;
    wrong.initial.first.center = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(build_problem(wrong), ConfigError);

    RunConfig out_of_range = cfg;
    out_of_range.outputs[0].index = 5;
    CHECK_THROWS_AS(build_problem(out_of_range), ConfigError);

    RunConfig be = cfg;
    be.methods = {Method::backward_euler};
    CHECK_THROWS_AS(build_problem(be), ConfigError);

    RunConfig profile = cfg;
    profile.initial = {};
    profile.initial.profile = "sine_modes";
    CHECK_THROWS_AS(build_problem(profile), ConfigError);

    RunConfig missing = cfg;
    missing.problem.builtin.clear();
    missing.problem.system = "/nonexistent/system.sys";
    CHECK_THROWS_AS(build_problem(missing), IoError);
}

TEST_CASE("resolved YAML reproduces the config") {
    for (const char* name : {"oscillator", "clamped_bar", "heat_rod", "wave2d", "hydration"}) {
        const RunConfig cfg = load_config(std::string(SETPROP_CONFIGS) + "/" + name + ".yaml");
        const std::string once = to_yaml(cfg);
        const RunConfig again = parse_config(once, "again.yaml", "/");
        CHECK(to_yaml(again) == once);
        CHECK(again.steps == cfg.steps);
        CHECK(again.delta == cfg.delta);
        CHECK(again.problem.system == cfg.problem.system);
    }
}

TEST_CASE("oscillator box run reproduces the initial set bounds") {
    TempDir dir;
    RunConfig cfg = parse(kOscillator);
    cfg.out_dir = dir.path.string();
    run(cfg);
    CHECK(first_line(dir.path / "setprop_box_flowpipe.csv") == "k,t_lo,t_hi,output_id,lo,hi");
    const auto rows = read_csv(dir.path / "setprop_box_flowpipe.csv");
    REQUIRE(rows.size() == 320);
    CHECK(rows[0][3] == "u");
    CHECK(std::abs(std::stod(rows[0][4]) - (0.97471 - 0.12868)) < 1e-5);
    CHECK(std::abs(std::stod(rows[0][5]) - (0.97471 + 0.12868)) < 1e-5);
    CHECK(std::abs(std::stod(rows[1][4]) - (-2.13332 - 2.23332)) < 1e-5);
    CHECK(std::abs(std::stod(rows[1][5]) - (-2.13332 + 2.23332)) < 1e-5);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const int k = std::stoi(rows[i][0]);
        CHECK(k == static_cast<int>(i / 2));
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", k * 0.025);
        CHECK(rows[i][1] == buf);
        std::snprintf(buf, sizeof buf, "%.17g", (k + 1) * 0.025);
        CHECK(rows[i][2] == buf);
    }
    CHECK(fs::exists(dir.path / "manifest.yaml"));
    CHECK(!fs::exists(dir.path / "u.svg"));
}

TEST_CASE("flowpipe schemes agree through the runner") {
    RunConfig cfg = parse(kOscillator);
    const Problem prob = build_problem(cfg);
    cfg.support_from_box = true;
    const MethodResult box = run_method(cfg, prob, Method::setprop_box);
    const MethodResult zono = run_method(cfg, prob, Method::setprop_zono);
    const MethodResult sup = run_method(cfg, prob, Method::setprop_support);
    for (std::size_t j = 0; j < 2; ++j) {
        for (int k = 0; k < cfg.steps; ++k) {
            const auto& b = box.bounds[j][static_cast<std::size_t>(k)];
            const auto& z = zono.bounds[j][static_cast<std::size_t>(k)];
            const auto& s = sup.bounds[j][static_cast<std::size_t>(k)];
            const double scale = 1e-12 * (1.0 + std::abs(b.lo) + std::abs(b.hi));
            CHECK(std::abs(b.lo - z.lo) <= scale);
            CHECK(std::abs(b.hi - z.hi) <= scale);
            CHECK(std::abs(b.lo - s.lo) <= scale);
            CHECK(std::abs(b.hi - s.hi) <= scale);
        }
    }
}

TEST_CASE("heat rod: extreme Backward Euler runs are bracketed by the flowpipe") {
    TempDir dir;
    RunConfig cfg = load_config(std::string(SETPROP_CONFIGS) + "/heat_rod.yaml");
    cfg.out_dir = dir.path.string();
    cfg.steps = 300;
    const RunSummary summary = run(cfg);
    CHECK(fs::exists(dir.path / "backward_euler_trajectory_0.csv"));
    CHECK(fs::exists(dir.path / "backward_euler_trajectory_1.csv"));
    CHECK(!fs::exists(dir.path / "backward_euler_trajectory_2.csv"));
    CHECK(fs::exists(dir.path / "backward_euler_envelope.csv"));
    CHECK(fs::exists(dir.path / "theta_mid.svg"));

    // (output, k) -> (lo, hi)
    std::map<std::pair<std::string, int>, std::pair<double, double>> pipe;
    for (const auto& r : read_csv(dir.path / "setprop_support_flowpipe.csv")) {
        pipe[{r[3], std::stoi(r[0])}] = {std::stod(r[4]), std::stod(r[5])};
    }
    REQUIRE(pipe.size() == 600);
    for (const char* file : {"backward_euler_trajectory_0.csv", "backward_euler_trajectory_1.csv"}) {
        const auto rows = read_csv(dir.path / file);
        REQUIRE(rows.size() == 602);
        for (const auto& r : rows) {
            const int k = std::stoi(r[0]);
            const double v = std::stod(r[3]);
            // The sample at t_k lies in X_{k-1} and X_k.
            bool inside = false;
            for (int j : {k - 1, k}) {
                const auto it = pipe.find({r[2], j});
                if (it != pipe.end()) {
                    inside = inside || (v >= it->second.first - 1e-12 && v <= it->second.second + 1e-12);
                }
            }
            CHECK(inside);
        }
    }
    // eps = +0.1 is the upper corner: hotter than eps = -0.1 at the midpoint.
    const auto hot = read_csv(dir.path / "backward_euler_trajectory_0.csv");
    const auto cold = read_csv(dir.path / "backward_euler_trajectory_1.csv");
    CHECK(std::stod(hot[0][3]) == doctest::Approx(1.1 * 0.5));
    CHECK(std::stod(cold[0][3]) == doctest::Approx(0.9 * 0.5));
}

TEST_CASE("manifest re-runs to identical CSVs") {
    TempDir dir;
    RunConfig cfg = parse(kOscillator);
    cfg.methods = {Method::setprop_support, Method::newmark};
    cfg.trajectories = {SampleRule::vertices, 3};
    cfg.seed = 17;
    cfg.out_dir = (dir.path / "a").string();
    run(cfg);

    RunConfig again = load_config((dir.path / "a" / "manifest.yaml").string());
    CHECK(again.seed == 17);
    again.out_dir = (dir.path / "b").string();
    run(again);
    for (const char* f : {"setprop_support_flowpipe.csv", "newmark_trajectory_0.csv", "newmark_trajectory_2.csv",
                          "newmark_envelope.csv"}) {
        REQUIRE(fs::exists(dir.path / "b" / f));
        CHECK(slurp(dir.path / "a" / f) == slurp(dir.path / "b" / f));
    }
    const std::string manifest = slurp(dir.path / "a" / "manifest.yaml");
    CHECK(manifest.find("peak_width") != std::string::npos);
    CHECK(manifest.find("wall_time_s") != std::string::npos);
}

TEST_CASE("sampled trajectories start inside the initial box") {
    RunConfig cfg = parse(kOscillator);
    cfg.steps = 4;
    cfg.trajectories = {SampleRule::uniform, 50};
    const Problem prob = build_problem(cfg);
    const MethodResult r = run_method(cfg, prob, Method::bathe);
    REQUIRE(r.samples[0].cols() == 50);
    for (Index s = 0; s < 50; ++s) {
        CHECK(std::abs(r.samples[0](0, s) - 1.0) <= 0.1);
        CHECK(std::abs(r.samples[1](0, s)) <= 0.1);
    }
    CHECK(r.envelope[0](0, 0) >= 0.9);
    CHECK(r.envelope[0](0, 1) <= 1.1);
}

TEST_CASE("exit codes") {
    TempDir dir;
    const fs::path log = dir.path / "log.txt";
    const fs::path good = dir.path / "good.yaml";
    write(good, kOscillator);

    CHECK(run_cli("validate " + good.string(), log) == 0);
    CHECK(run_cli("run " + good.string() + " --out-dir " + (dir.path / "out").string(), log) == 0);
    CHECK(fs::exists(dir.path / "out" / "setprop_box_flowpipe.csv"));

    CHECK(run_cli("run " + good.string() + " --method bogus", log) == 2);
    CHECK(slurp(log).find("unknown method") != std::string::npos);
    CHECK(run_cli("frobnicate", log) == 2);
    CHECK(run_cli("run", log) == 2);
    CHECK(run_cli("demo no_such_demo", log) == 2);

    std::string method = kOscillator;
    method.replace(method.find("setprop_box"), 11, "leapfrog");
    write(dir.path / "method.yaml", method);
    CHECK(run_cli("run " + (dir.path / "method.yaml").string(), log) == 2);

    std::string bad = kOscillator;
    bad.replace(bad.find("delta: 0.025"), 12, "delta: zero");
    write(dir.path / "bad.yaml", bad);
    CHECK(run_cli("validate " + (dir.path / "bad.yaml").string(), log) == 3);
    CHECK(slurp(log).find("bad.yaml:5:") != std::string::npos);

    write(dir.path / "broken.sys", "kind: dynamics\nn: 1\nmatrix K\n1 1 abc\n");
    write(dir.path / "broken.yaml", "problem: {system: broken.sys}\nmethod: newmark\ndelta: 0.1\nsteps: 3\n"
                                    "outputs: [{dof: 0}]\n");
    CHECK(run_cli("validate " + (dir.path / "broken.yaml").string(), log) == 3);
    CHECK(slurp(log).find("broken.sys:4") != std::string::npos);

    write(dir.path / "missing.yaml", "problem: {system: nothere.sys}\nmethod: newmark\ndelta: 0.1\nsteps: 3\n"
                                     "outputs: [{dof: 0}]\n");
    CHECK(run_cli("run " + (dir.path / "missing.yaml").string(), log) == 5);
    CHECK(run_cli("run " + (dir.path / "absent.yaml").string(), log) == 5);
    write(dir.path / "blocker", "");
    CHECK(run_cli("run " + good.string() + " --out-dir " + (dir.path / "blocker" / "sub").string(), log) == 5);

    // Negative stiffness grows like e^{100 t}: overflow after a few steps.
    write(dir.path / "unstable.sys", "kind: dynamics\nn: 1\nmatrix K\n1 1 -1e4\nmatrix M\n1 1 1\n");
    write(dir.path / "unstable.yaml",
          "problem: {system: unstable.sys}\nmethod: setprop_box\ndelta: 1.0\nsteps: 50\n"
          "initial_set: {displacement: {center: 1, radius: 0.1}}\noutputs: [{dof: 0}]\nplot: false\n");
    CHECK(run_cli("run " + (dir.path / "unstable.yaml").string() + " --out-dir " + (dir.path / "u").string(), log) ==
          4);
    CHECK(slurp(log).find("step") != std::string::npos);
}

TEST_CASE("shipped configs validate") {
    TempDir dir;
    for (const auto& entry : fs::directory_iterator(SETPROP_CONFIGS)) {
        if (entry.path().extension() != ".yaml") {
            continue;
        }
        CAPTURE(entry.path().string());
        CHECK(run_cli("validate " + entry.path().string(), dir.path / "log.txt") == 0);
    }
}
