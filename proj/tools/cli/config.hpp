#pragma once

// Run configuration: one YAML file per run. See configs/schema.md.

#include "setprop/model.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace setprop::cli {

/// Bad command-line usage or an unknown method / demo name (exit code 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration content, with location when known (exit code 3).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Files that cannot be read or written (exit code 5).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Method { setprop_box, setprop_zono, setprop_support, backward_euler, newmark, bathe };

std::string to_string(Method m);
/// Throws UsageError for unknown names.
Method parse_method(const std::string& name);
bool is_setprop(Method m);

struct ProblemSpec {
    /// oscillator, clamped_bar or heat_rod; empty when `system` is set.
    std::string builtin;
    /// Absolute path of a system file.
    std::string system;
    /// Builtin parameters with every default filled in.
    std::map<std::string, double> parameters;
};

/// Per-dof values; a single entry is broadcast.
struct BlockSpec {
    std::vector<double> center{0.0};
    std::vector<double> radius{0.0};
};

struct InitialSetSpec {
    /// displacement/velocity for dynamics, temperature (in `first`) for heat,
    /// the state itself for a one-block description.
    std::string first_key = "state";
    BlockSpec first;
    bool has_second = false;
    BlockSpec second;
    /// Named nodal profile scaled by (1 + epsilon); heat_rod only.
    std::string profile;
    Interval epsilon = Interval::point(0.0);
};

struct InputSpec {
    std::string model;  // constant, exponential, sinusoid
    /// Either dense f0, or sparse (dof, value) entries.
    std::vector<double> f0;
    std::vector<std::pair<long, double>> f0_sparse;
    Interval value = Interval::point(0.0);  // constant value or exponential x0
    double rate = 0.0;                      // exponential alpha or sinusoid omega
    Interval xi1 = Interval::point(0.0);
    Interval xi2 = Interval::point(0.0);
};

enum class OutputKind { state, dof, direction };
enum class OutputQuantity { displacement, velocity };

struct OutputSpec {
    std::string name;
    OutputKind kind = OutputKind::state;
    long index = 0;
    OutputQuantity quantity = OutputQuantity::displacement;
    std::vector<std::pair<long, double>> direction;
};

enum class SampleRule { center, extremes, vertices, uniform };

struct TrajectorySpec {
    SampleRule rule = SampleRule::center;
    int count = 1;
};

struct RunConfig {
    std::string name;
    std::string source;
    ProblemSpec problem;
    std::vector<Method> methods;
    double delta = 0.0;
    int steps = 0;
    std::uint64_t seed = 0;
    InitialSetSpec initial;
    std::vector<InputSpec> inputs;
    std::vector<OutputSpec> outputs;
    TrajectorySpec trajectories;
    /// Support scheme only: propagate the symbolic Omega0 or its box.
    bool support_from_box = false;
    bool plot = true;
    std::string out_dir;
};

/// Reads and checks a config file. Relative system paths resolve against
/// the config's directory.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text, const std::string& source, const std::string& base_dir);

/// Command-line overrides; unset fields leave the config unchanged.
struct Overrides {
    std::optional<double> delta;
    std::optional<int> steps;
    std::optional<std::string> method;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
};
void apply_overrides(RunConfig& cfg, const Overrides& o);

/// Fully resolved config as YAML; loading it again yields the same run.
std::string to_yaml(const RunConfig& cfg);

}  // namespace setprop::cli
