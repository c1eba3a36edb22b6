#include "config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace fs = std::filesystem;

namespace setprop::cli {

namespace {

const std::map<std::string, std::map<std::string, double>>& builtin_defaults() {
    static const std::map<std::string, std::map<std::string, double>> defaults{
        {"oscillator", {{"omega", 4.0 * std::numbers::pi}, {"damping_ratio", 0.0}}},
        {"clamped_bar",
         {{"modulus", 30e6}, {"area", 1.0}, {"density", 7.3e-4}, {"length", 200.0}, {"elements", 1000.0}}},
        {"heat_rod",
         {{"conductivity", 1.0},
          {"density", 1.0},
          {"specific_heat", 1.0},
          {"length", 1.0},
          {"elements", 100.0},
          {"dirichlet_both_ends", 1.0}}},
    };
    return defaults;
}

struct Reader {
    std::string source;

    [[noreturn]] void fail(const YAML::Node& at, const std::string& what) const {
        const YAML::Mark m = at.Mark();
        std::ostringstream os;
        os << source;
        if (m.line >= 0) {
            os << ':' << m.line + 1 << ':' << m.column + 1;
        }
        os << ": " << what;
        throw ConfigError(os.str());
    }

    void keys(const YAML::Node& map, const std::set<std::string>& allowed, const std::string& where) const {
        if (!map.IsMap()) {
            fail(map, where + " must be a mapping");
        }
        for (const auto& kv : map) {
            const auto key = kv.first.as<std::string>();
            if (allowed.count(key) == 0) {
                fail(kv.first, "unknown key '" + key + "' in " + where);
            }
        }
    }

    template <class T>
    T scalar(const YAML::Node& n, const std::string& what) const {
        if (!n.IsScalar()) {
            fail(n, what + " must be a scalar");
        }
        try {
            return n.as<T>();
        } catch (const YAML::BadConversion&) {
            fail(n, "cannot read " + what + " from '" + n.Scalar() + "'");
        }
    }

    double number(const YAML::Node& n, const std::string& what) const {
        const auto v = scalar<double>(n, what);
        if (!std::isfinite(v)) {
            fail(n, what + " must be finite");
        }
        return v;
    }

    long integer(const YAML::Node& n, const std::string& what) const { return scalar<long>(n, what); }

    std::vector<double> numbers(const YAML::Node& n, const std::string& what) const {
        if (n.IsScalar()) {
            return {number(n, what)};
        }
        if (!n.IsSequence() || n.size() == 0) {
            fail(n, what + " must be a number or a nonempty list");
        }
        std::vector<double> out;
        for (const auto& e : n) {
            out.push_back(number(e, what));
        }
        return out;
    }

    Interval interval(const YAML::Node& n, const std::string& what) const {
        if (n.IsScalar()) {
            return Interval::point(number(n, what));
        }
        if (!n.IsSequence() || n.size() != 2) {
            fail(n, what + " must be a number or a [lo, hi] pair");
        }
        const double lo = number(n[0], what);
        const double hi = number(n[1], what);
        if (lo > hi) {
            fail(n, what + " has lo > hi");
        }
        return Interval(lo, hi);
    }

    std::vector<std::pair<long, double>> sparse(const YAML::Node& n, const std::string& what) const {
        if (!n.IsSequence() || n.size() == 0) {
            fail(n, what + " must be a nonempty list of [index, value] pairs");
        }
        std::vector<std::pair<long, double>> out;
        for (const auto& e : n) {
            if (!e.IsSequence() || e.size() != 2) {
                fail(e, what + " entries must be [index, value] pairs");
            }
            out.emplace_back(integer(e[0], what + " index"), number(e[1], what + " value"));
        }
        return out;
    }

    BlockSpec block(const YAML::Node& n, const std::string& what) const {
        keys(n, {"center", "radius"}, what);
        BlockSpec b;
        if (n["center"]) {
            b.center = numbers(n["center"], what + ".center");
        }
        if (n["radius"]) {
            b.radius = numbers(n["radius"], what + ".radius");
            for (double r : b.radius) {
                if (r < 0.0) {
                    fail(n["radius"], what + ".radius must be nonnegative");
                }
            }
        }
        return b;
    }
};

void parse_problem(const Reader& r, const YAML::Node& n, const std::string& base_dir, ProblemSpec& p) {
    if (!n.IsMap()) {
        r.fail(n, "problem must be a mapping");
    }
    const bool has_builtin = static_cast<bool>(n["builtin"]);
    const bool has_system = static_cast<bool>(n["system"]);
    if (has_builtin == has_system) {
        r.fail(n, "problem needs exactly one of 'builtin' or 'system'");
    }
    if (has_system) {
        r.keys(n, {"system"}, "problem");
        fs::path path = r.scalar<std::string>(n["system"], "problem.system");
        if (path.is_relative()) {
            path = fs::path(base_dir) / path;
        }
        p.system = fs::weakly_canonical(path).string();
        return;
    }
    p.builtin = r.scalar<std::string>(n["builtin"], "problem.builtin");
    const auto it = builtin_defaults().find(p.builtin);
    if (it == builtin_defaults().end()) {
        r.fail(n["builtin"], "unknown builtin problem '" + p.builtin + "' (oscillator, clamped_bar, heat_rod)");
    }
    p.parameters = it->second;
    for (const auto& kv : n) {
        const auto key = kv.first.as<std::string>();
        if (key == "builtin") {
            continue;
        }
        if (p.parameters.count(key) == 0) {
            r.fail(kv.first, "unknown parameter '" + key + "' for " + p.builtin);
        }
        p.parameters[key] = r.number(kv.second, "problem." + key);
    }
    for (const auto& [key, v] : p.parameters) {
        if (key == "damping_ratio" || key == "dirichlet_both_ends") {
            if (v < 0.0) {
                r.fail(n, "problem." + key + " must be nonnegative");
            }
        } else if (!(v > 0.0)) {
            r.fail(n, "problem." + key + " must be positive");
        }
    }
    if (p.parameters.count("elements") && p.parameters["elements"] != std::floor(p.parameters["elements"])) {
        r.fail(n, "problem.elements must be an integer");
    }
}

void parse_initial(const Reader& r, const YAML::Node& n, InitialSetSpec& s) {
    r.keys(n, {"state", "displacement", "velocity", "temperature", "profile", "epsilon"}, "initial_set");
    int firsts = 0;
    for (const char* k : {"state", "displacement", "temperature"}) {
        if (n[k]) {
            ++firsts;
            s.first_key = k;
            s.first = r.block(n[k], std::string("initial_set.") + k);
        }
    }
    if (firsts > 1) {
        r.fail(n, "initial_set takes only one of state, displacement, temperature");
    }
    if (n["velocity"]) {
        if (n["state"] || n["temperature"]) {
            r.fail(n["velocity"], "initial_set.velocity goes with displacement");
        }
        s.second = r.block(n["velocity"], "initial_set.velocity");
        s.has_second = true;
        if (!n["displacement"]) {
            s.first_key = "displacement";
        }
    }
    if (n["profile"]) {
        if (firsts > 0 || n["velocity"]) {
            r.fail(n["profile"], "initial_set.profile excludes explicit blocks");
        }
        s.profile = r.scalar<std::string>(n["profile"], "initial_set.profile");
        if (s.profile != "sine_modes") {
            r.fail(n["profile"], "unknown profile '" + s.profile + "' (sine_modes)");
        }
        if (n["epsilon"]) {
            s.epsilon = r.interval(n["epsilon"], "initial_set.epsilon");
        }
    } else if (n["epsilon"]) {
        r.fail(n["epsilon"], "initial_set.epsilon needs a profile");
    }
}

InputSpec parse_input(const Reader& r, const YAML::Node& n) {
    r.keys(n, {"f0", "model", "value", "x0", "alpha", "omega", "xi1", "xi2"}, "input");
    InputSpec in;
    if (!n["f0"] || !n["model"]) {
        r.fail(n, "input needs 'f0' and 'model'");
    }
    const YAML::Node f0 = n["f0"];
    if (f0.IsMap()) {
        r.keys(f0, {"sparse"}, "input.f0");
        in.f0_sparse = r.sparse(f0["sparse"], "input.f0.sparse");
    } else {
        in.f0 = r.numbers(f0, "input.f0");
    }
    in.model = r.scalar<std::string>(n["model"], "input.model");
    auto need = [&](const char* key) {
        if (!n[key]) {
            r.fail(n, in.model + " input needs '" + key + "'");
        }
        return n[key];
    };
    auto forbid = [&](std::initializer_list<const char*> ks) {
        for (const char* k : ks) {
            if (n[k]) {
                r.fail(n[k], "'" + std::string(k) + "' does not apply to a " + in.model + " input");
            }
        }
    };
    if (in.model == "constant") {
        forbid({"x0", "alpha", "omega", "xi1", "xi2"});
        in.value = r.interval(need("value"), "input.value");
    } else if (in.model == "exponential") {
        forbid({"value", "omega", "xi1", "xi2"});
        in.rate = r.number(need("alpha"), "input.alpha");
        in.value = r.interval(need("x0"), "input.x0");
    } else if (in.model == "sinusoid") {
        forbid({"value", "x0", "alpha"});
        in.rate = r.number(need("omega"), "input.omega");
        if (!(in.rate > 0.0)) {
            r.fail(n["omega"], "input.omega must be positive");
        }
        in.xi1 = r.interval(need("xi1"), "input.xi1");
        if (n["xi2"]) {
            in.xi2 = r.interval(n["xi2"], "input.xi2");
        }
    } else {
        r.fail(n["model"], "unknown input model '" + in.model + "' (constant, exponential, sinusoid)");
    }
    return in;
}

OutputSpec parse_output(const Reader& r, const YAML::Node& n, std::size_t position) {
    r.keys(n, {"name", "state", "dof", "quantity", "direction"}, "output");
    OutputSpec o;
    o.name = n["name"] ? r.scalar<std::string>(n["name"], "output.name") : "out" + std::to_string(position);
    if (o.name.empty() || o.name.find_first_of(",\n\"/") != std::string::npos) {
        r.fail(n, "output name must be nonempty without commas, quotes or slashes");
    }
    const int kinds = (n["state"] ? 1 : 0) + (n["dof"] ? 1 : 0) + (n["direction"] ? 1 : 0);
    if (kinds != 1) {
        r.fail(n, "output needs exactly one of 'state', 'dof', 'direction'");
    }
    if (n["quantity"] && !n["dof"]) {
        r.fail(n["quantity"], "output.quantity goes with 'dof'");
    }
    if (n["state"]) {
        o.kind = OutputKind::state;
        o.index = r.integer(n["state"], "output.state");
    } else if (n["dof"]) {
        o.kind = OutputKind::dof;
        o.index = r.integer(n["dof"], "output.dof");
        if (n["quantity"]) {
            const auto q = r.scalar<std::string>(n["quantity"], "output.quantity");
            if (q == "displacement" || q == "temperature") {
                o.quantity = OutputQuantity::displacement;
            } else if (q == "velocity") {
                o.quantity = OutputQuantity::velocity;
            } else {
                r.fail(n["quantity"], "unknown quantity '" + q + "' (displacement, velocity, temperature)");
            }
        }
    } else {
        o.kind = OutputKind::direction;
        o.direction = r.sparse(n["direction"], "output.direction");
    }
    return o;
}

void parse_trajectories(const Reader& r, const YAML::Node& n, TrajectorySpec& t) {
    if (n.IsScalar()) {
        const auto rule = n.as<std::string>();
        if (rule == "center") {
            t = {SampleRule::center, 1};
        } else if (rule == "extremes") {
            t = {SampleRule::extremes, 2};
        } else {
            r.fail(n, "unknown trajectory rule '" + rule + "' (center, extremes, {vertices: N}, {uniform: N})");
        }
        return;
    }
    if (!n.IsMap() || n.size() != 1) {
        r.fail(n, "trajectories must be center, extremes, {vertices: N} or {uniform: N}");
    }
    r.keys(n, {"vertices", "uniform"}, "trajectories");
    const bool vertices = static_cast<bool>(n["vertices"]);
    const YAML::Node c = vertices ? n["vertices"] : n["uniform"];
    const long count = r.integer(c, "trajectory count");
    if (count < 1 || count > 1000000) {
        r.fail(c, "trajectory count must be in [1, 1e6]");
    }
    t = {vertices ? SampleRule::vertices : SampleRule::uniform, static_cast<int>(count)};
}

}  // namespace

std::string to_string(Method m) {
    switch (m) {
        case Method::setprop_box: return "setprop_box";
        case Method::setprop_zono: return "setprop_zono";
        case Method::setprop_support: return "setprop_support";
        case Method::backward_euler: return "backward_euler";
        case Method::newmark: return "newmark";
        case Method::bathe: return "bathe";
    }
    return "?";
}

Method parse_method(const std::string& name) {
    for (Method m : {Method::setprop_box, Method::setprop_zono, Method::setprop_support, Method::backward_euler,
                     Method::newmark, Method::bathe}) {
        if (to_string(m) == name) {
            return m;
        }
    }
    throw UsageError("unknown method '" + name +
                     "' (setprop_box, setprop_zono, setprop_support, backward_euler, newmark, bathe)");
}

bool is_setprop(Method m) {
    return m == Method::setprop_box || m == Method::setprop_zono || m == Method::setprop_support;
}

RunConfig parse_config(const std::string& text, const std::string& source, const std::string& base_dir) {
    const Reader r{source};
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) +
                          ": " + e.msg);
    }
    if (!root.IsMap()) {
        throw ConfigError(source + ": top level must be a mapping");
    }
    r.keys(root,
           {"name", "problem", "method", "delta", "steps", "horizon", "seed", "initial_set", "inputs", "outputs",
            "trajectories", "setprop", "plot", "out_dir", "results"},
           "config");

    RunConfig cfg;
    cfg.source = source;
    cfg.name = root["name"] ? r.scalar<std::string>(root["name"], "name") : fs::path(source).stem().string();
    if (!root["problem"]) {
        r.fail(root, "missing 'problem'");
    }
    parse_problem(r, root["problem"], base_dir, cfg.problem);

    if (!root["method"]) {
        r.fail(root, "missing 'method'");
    }
    const YAML::Node method = root["method"];
    std::vector<YAML::Node> names;
    if (method.IsSequence()) {
        for (const auto& m : method) {
            names.push_back(m);
        }
    } else {
        names.push_back(method);
    }
    if (names.empty()) {
        r.fail(method, "method list is empty");
    }
    for (const auto& m : names) {
        const auto name = r.scalar<std::string>(m, "method");
        try {
            cfg.methods.push_back(parse_method(name));
        } catch (const UsageError& e) {
            throw UsageError(source + ":" + std::to_string(m.Mark().line + 1) + ": " + e.what());
        }
    }

    if (!root["delta"]) {
        r.fail(root, "missing 'delta'");
    }
    cfg.delta = r.number(root["delta"], "delta");
    if (!(cfg.delta > 0.0)) {
        r.fail(root["delta"], "delta must be positive");
    }
    if (root["steps"]) {
        const long steps = r.integer(root["steps"], "steps");
        if (steps < 1 || steps > 100000000) {
            r.fail(root["steps"], "steps must be in [1, 1e8]");
        }
        cfg.steps = static_cast<int>(steps);
    }
    if (root["horizon"]) {
        const double horizon = r.number(root["horizon"], "horizon");
        const double ratio = horizon / cfg.delta;
        const long steps = std::lround(ratio);
        if (!(horizon > 0.0) || steps < 1 || std::abs(ratio - static_cast<double>(steps)) > 1e-9 * ratio) {
            r.fail(root["horizon"], "horizon must be a positive multiple of delta");
        }
        if (cfg.steps != 0 && cfg.steps != steps) {
            r.fail(root["horizon"], "horizon disagrees with steps * delta");
        }
        cfg.steps = static_cast<int>(steps);
    }
    if (cfg.steps == 0) {
        r.fail(root, "missing 'steps' or 'horizon'");
    }
    cfg.seed = root["seed"] ? r.scalar<std::uint64_t>(root["seed"], "seed") : 1;

    if (root["initial_set"]) {
        parse_initial(r, root["initial_set"], cfg.initial);
    }
    if (root["inputs"]) {
        if (!root["inputs"].IsSequence()) {
            r.fail(root["inputs"], "inputs must be a list");
        }
        for (const auto& in : root["inputs"]) {
            cfg.inputs.push_back(parse_input(r, in));
        }
    }
    if (!root["outputs"] || !root["outputs"].IsSequence() || root["outputs"].size() == 0) {
        r.fail(root["outputs"] ? root["outputs"] : root, "'outputs' must be a nonempty list");
    }
    std::set<std::string> seen;
    for (const auto& o : root["outputs"]) {
        cfg.outputs.push_back(parse_output(r, o, cfg.outputs.size()));
        if (!seen.insert(cfg.outputs.back().name).second) {
            r.fail(o, "duplicate output name '" + cfg.outputs.back().name + "'");
        }
    }
    if (root["trajectories"]) {
        parse_trajectories(r, root["trajectories"], cfg.trajectories);
    }
    if (root["setprop"]) {
        r.keys(root["setprop"], {"omega0"}, "setprop");
        if (root["setprop"]["omega0"]) {
            const auto mode = r.scalar<std::string>(root["setprop"]["omega0"], "setprop.omega0");
            if (mode != "symbolic" && mode != "box") {
                r.fail(root["setprop"]["omega0"], "setprop.omega0 must be 'symbolic' or 'box'");
            }
            cfg.support_from_box = mode == "box";
        }
    }
    cfg.plot = root["plot"] ? r.scalar<bool>(root["plot"], "plot") : true;
    cfg.out_dir = root["out_dir"] ? r.scalar<std::string>(root["out_dir"], "out_dir") : "out/" + cfg.name;
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    const fs::path base = fs::absolute(path).parent_path();
    return parse_config(text.str(), path, base.string());
}

void apply_overrides(RunConfig& cfg, const Overrides& o) {
    if (o.delta) {
        if (!(*o.delta > 0.0) || !std::isfinite(*o.delta)) {
            throw UsageError("--delta must be positive");
        }
        cfg.delta = *o.delta;
    }
    if (o.steps) {
        if (*o.steps < 1) {
            throw UsageError("--steps must be positive");
        }
        cfg.steps = *o.steps;
    }
    if (o.method) {
        cfg.methods.clear();
        std::istringstream is(*o.method);
        std::string name;
        while (std::getline(is, name, ',')) {
            cfg.methods.push_back(parse_method(name));
        }
        if (cfg.methods.empty()) {
            throw UsageError("--method is empty");
        }
    }
    if (o.out_dir) {
        cfg.out_dir = *o.out_dir;
    }
    if (o.seed) {
        cfg.seed = *o.seed;
    }
}

namespace {

void emit_numbers(YAML::Emitter& e, const std::vector<double>& v) {
    if (v.size() == 1) {
        e << v[0];
        return;
    }
    e << YAML::Flow << YAML::BeginSeq;
    for (double x : v) {
        e << x;
    }
    e << YAML::EndSeq;
}

void emit_interval(YAML::Emitter& e, const Interval& i) {
    if (i.lo == i.hi) {
        e << i.lo;
    } else {
        e << YAML::Flow << YAML::BeginSeq << i.lo << i.hi << YAML::EndSeq;
    }
}

void emit_sparse(YAML::Emitter& e, const std::vector<std::pair<long, double>>& v) {
    e << YAML::Flow << YAML::BeginSeq;
    for (const auto& [i, x] : v) {
        e << YAML::Flow << YAML::BeginSeq << i << x << YAML::EndSeq;
    }
    e << YAML::EndSeq;
}

void emit_block(YAML::Emitter& e, const char* key, const BlockSpec& b) {
    e << YAML::Key << key << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "center" << YAML::Value;
    emit_numbers(e, b.center);
    e << YAML::Key << "radius" << YAML::Value;
    emit_numbers(e, b.radius);
    e << YAML::EndMap;
}

}  // namespace

std::string to_yaml(const RunConfig& cfg) {
    YAML::Emitter e;
    e.SetDoublePrecision(17);
    e << YAML::BeginMap;
    e << YAML::Key << "name" << YAML::Value << cfg.name;
    e << YAML::Key << "problem" << YAML::Value << YAML::BeginMap;
    if (cfg.problem.builtin.empty()) {
        e << YAML::Key << "system" << YAML::Value << cfg.problem.system;
    } else {
        e << YAML::Key << "builtin" << YAML::Value << cfg.problem.builtin;
        for (const auto& [k, v] : cfg.problem.parameters) {
            e << YAML::Key << k << YAML::Value << v;
        }
    }
    e << YAML::EndMap;
    e << YAML::Key << "method" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (Method m : cfg.methods) {
        e << to_string(m);
    }
    e << YAML::EndSeq;
    e << YAML::Key << "delta" << YAML::Value << cfg.delta;
    e << YAML::Key << "steps" << YAML::Value << cfg.steps;
    e << YAML::Key << "seed" << YAML::Value << cfg.seed;

    e << YAML::Key << "initial_set" << YAML::Value << YAML::BeginMap;
    if (!cfg.initial.profile.empty()) {
        e << YAML::Key << "profile" << YAML::Value << cfg.initial.profile;
        e << YAML::Key << "epsilon" << YAML::Value;
        emit_interval(e, cfg.initial.epsilon);
    } else {
        emit_block(e, cfg.initial.first_key.c_str(), cfg.initial.first);
        if (cfg.initial.has_second) {
            emit_block(e, "velocity", cfg.initial.second);
        }
    }
    e << YAML::EndMap;

    if (!cfg.inputs.empty()) {
        e << YAML::Key << "inputs" << YAML::Value << YAML::BeginSeq;
        for (const auto& in : cfg.inputs) {
            e << YAML::BeginMap;
            e << YAML::Key << "f0" << YAML::Value;
            if (in.f0_sparse.empty()) {
                emit_numbers(e, in.f0);
            } else {
                e << YAML::Flow << YAML::BeginMap << YAML::Key << "sparse" << YAML::Value;
                emit_sparse(e, in.f0_sparse);
                e << YAML::EndMap;
            }
            e << YAML::Key << "model" << YAML::Value << in.model;
            if (in.model == "constant") {
                e << YAML::Key << "value" << YAML::Value;
                emit_interval(e, in.value);
            } else if (in.model == "exponential") {
                e << YAML::Key << "alpha" << YAML::Value << in.rate;
                e << YAML::Key << "x0" << YAML::Value;
                emit_interval(e, in.value);
            } else {
                e << YAML::Key << "omega" << YAML::Value << in.rate;
                e << YAML::Key << "xi1" << YAML::Value;
                emit_interval(e, in.xi1);
                e << YAML::Key << "xi2" << YAML::Value;
                emit_interval(e, in.xi2);
            }
            e << YAML::EndMap;
        }
        e << YAML::EndSeq;
    }

    e << YAML::Key << "outputs" << YAML::Value << YAML::BeginSeq;
    for (const auto& o : cfg.outputs) {
        e << YAML::Flow << YAML::BeginMap << YAML::Key << "name" << YAML::Value << o.name;
        switch (o.kind) {
            case OutputKind::state:
                e << YAML::Key << "state" << YAML::Value << o.index;
                break;
            case OutputKind::dof:
                e << YAML::Key << "dof" << YAML::Value << o.index;
                e << YAML::Key << "quantity" << YAML::Value
                  << (o.quantity == OutputQuantity::velocity ? "velocity" : "displacement");
                break;
            case OutputKind::direction:
                e << YAML::Key << "direction" << YAML::Value;
                emit_sparse(e, o.direction);
                break;
        }
        e << YAML::EndMap;
    }
    e << YAML::EndSeq;

    e << YAML::Key << "trajectories" << YAML::Value;
    switch (cfg.trajectories.rule) {
        case SampleRule::center: e << "center"; break;
        case SampleRule::extremes: e << "extremes"; break;
        case SampleRule::vertices:
            e << YAML::Flow << YAML::BeginMap << YAML::Key << "vertices" << YAML::Value << cfg.trajectories.count
              << YAML::EndMap;
            break;
        case SampleRule::uniform:
            e << YAML::Flow << YAML::BeginMap << YAML::Key << "uniform" << YAML::Value << cfg.trajectories.count
              << YAML::EndMap;
            break;
    }
    e << YAML::Key << "setprop" << YAML::Value << YAML::Flow << YAML::BeginMap << YAML::Key << "omega0"
      << YAML::Value << (cfg.support_from_box ? "box" : "symbolic") << YAML::EndMap;
    e << YAML::Key << "plot" << YAML::Value << cfg.plot;
    e << YAML::Key << "out_dir" << YAML::Value << cfg.out_dir;
    e << YAML::EndMap;
    return e.c_str();
}

}  // namespace setprop::cli
