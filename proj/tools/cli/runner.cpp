#include "runner.hpp"

#include "svg.hpp"

#include "setprop/analysis.hpp"
#include "setprop/errors.hpp"
#include "setprop/integrators.hpp"
#include "setprop/system_io.hpp"

#include <yaml-cpp/yaml.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

namespace fs = std::filesystem;

namespace setprop::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Index wrap(long index, Index size, const std::string& what) {
    const long s = static_cast<long>(size);
    const long i = index < 0 ? index + s : index;
    if (i < 0 || i >= s) {
        throw ConfigError(what + " index " + std::to_string(index) + " is out of range for size " +
                          std::to_string(size));
    }
    return static_cast<Index>(i);
}

Vector expand(const std::vector<double>& v, Index n, const std::string& what) {
    if (v.size() == 1) {
        return Vector::Constant(n, v[0]);
    }
    if (static_cast<Index>(v.size()) != n) {
        throw ConfigError(what + " has " + std::to_string(v.size()) + " entries, expected 1 or " + std::to_string(n));
    }
    return Eigen::Map<const Vector>(v.data(), n);
}

SparseMatrix scalar_matrix(double x) {
    SparseMatrix m(1, 1);
    if (x != 0.0) {
        m.insert(0, 0) = x;
    }
    return m;
}

SecondOrderSystem builtin_system(const ProblemSpec& p) {
    const auto& q = p.parameters;
    if (p.builtin == "oscillator") {
        const double omega = q.at("omega");
        SecondOrderSystem s;
        s.kind = SystemKind::dynamics;
        s.mass = scalar_matrix(1.0);
        s.stiffness = scalar_matrix(omega * omega);
        s.damping = scalar_matrix(2.0 * q.at("damping_ratio") * omega);
        return s;
    }
    if (p.builtin == "clamped_bar") {
        BarParameters b;
        b.modulus = q.at("modulus");
        b.area = q.at("area");
        b.density = q.at("density");
        b.length = q.at("length");
        b.elements = static_cast<int>(q.at("elements"));
        return assemble_bar_1d(b);
    }
    HeatRodParameters h;
    h.conductivity = q.at("conductivity");
    h.density = q.at("density");
    h.specific_heat = q.at("specific_heat");
    h.length = q.at("length");
    h.elements = static_cast<int>(q.at("elements"));
    h.dirichlet_both_ends = q.at("dirichlet_both_ends") != 0.0;
    return assemble_heat_1d(h);
}

Vector sine_modes(const ProblemSpec& p, Index n) {
    const double elements = p.parameters.at("elements");
    const bool dirichlet = p.parameters.at("dirichlet_both_ends") != 0.0;
    Vector g(n);
    for (Index i = 0; i < n; ++i) {
        const double x = static_cast<double>(dirichlet ? i + 1 : i) / elements;
        g[i] = std::sin(std::numbers::pi * x) + 0.5 * std::sin(3.0 * std::numbers::pi * x);
    }
    return g;
}

InputTerm build_input(const InputSpec& in, Index n) {
    Vector f0 = Vector::Zero(n);
    if (in.f0_sparse.empty()) {
        f0 = expand(in.f0, n, "input f0");
    } else {
        for (const auto& [i, v] : in.f0_sparse) {
            f0[wrap(i, n, "input f0")] += v;
        }
    }
    if (in.model == "constant") {
        return InputTerm::constant(f0, in.value);
    }
    if (in.model == "exponential") {
        return InputTerm::exponential(f0, in.rate, in.value);
    }
    return InputTerm::sinusoid(f0, in.rate, in.xi1, in.xi2);
}

Vector output_direction(const OutputSpec& o, const SecondOrderSystem& sys, Index state_dim) {
    Vector d = Vector::Zero(state_dim);
    const Index n = sys.dofs();
    switch (o.kind) {
        case OutputKind::state:
            d[wrap(o.index, state_dim, "output '" + o.name + "' state")] = 1.0;
            break;
        case OutputKind::dof: {
            const Index i = wrap(o.index, n, "output '" + o.name + "' dof");
            if (o.quantity == OutputQuantity::velocity) {
                if (sys.kind != SystemKind::dynamics) {
                    throw ConfigError("output '" + o.name + "': heat systems have no velocity");
                }
                d[n + i] = 1.0;
            } else {
                d[i] = 1.0;
            }
            break;
        }
        case OutputKind::direction:
            for (const auto& [i, v] : o.direction) {
                d[wrap(i, state_dim, "output '" + o.name + "' direction")] += v;
            }
            if (d.isZero()) {
                throw ConfigError("output '" + o.name + "' has a zero direction");
            }
            break;
    }
    return d;
}

/// Generator coefficients in [-1, 1]^p for each trajectory sample.
std::vector<Vector> sample_coefficients(const TrajectorySpec& t, Index p, std::uint64_t seed) {
    switch (t.rule) {
        case SampleRule::center:
            return {Vector::Zero(p)};
        case SampleRule::extremes:
            return {Vector::Ones(p), -Vector::Ones(p)};
        case SampleRule::vertices:
            return vertex_sampler(Hyperrectangle(Vector::Zero(p), Vector::Ones(p)),
                                  static_cast<std::size_t>(t.count), seed);
        case SampleRule::uniform:
            return uniform_sampler(Hyperrectangle(Vector::Zero(p), Vector::Ones(p)),
                                   static_cast<std::size_t>(t.count), seed);
    }
    return {};
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    out.flush();
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
}

class CsvWriter {
public:
    explicit CsvWriter(const fs::path& path) : path_(path), file_(std::fopen(path.c_str(), "wb")) {
        if (file_ == nullptr) {
            throw IoError("cannot write '" + path.string() + "'");
        }
    }
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;
    ~CsvWriter() {
        if (file_ != nullptr) {
            std::fclose(file_);
        }
    }

    std::FILE* get() const { return file_; }

    void close() {
        const bool bad = std::ferror(file_) != 0;
        const bool failed = std::fclose(file_) != 0;
        file_ = nullptr;
        if (bad || failed) {
            throw IoError("error writing '" + path_.string() + "'");
        }
    }

private:
    fs::path path_;
    std::FILE* file_;
};

}  // namespace

Problem build_problem(const RunConfig& cfg) {
    Problem prob;
    if (cfg.problem.builtin.empty()) {
        if (!fs::exists(cfg.problem.system)) {
            throw IoError("system file '" + cfg.problem.system + "' does not exist");
        }
        prob.system = load_system(cfg.problem.system);
    } else {
        prob.system = builtin_system(cfg.problem);
    }
    SecondOrderSystem& sys = prob.system;
    const Index n = sys.dofs();
    const bool dynamics = sys.kind == SystemKind::dynamics;
    prob.state_dim = dynamics ? 2 * n : n;
    for (const auto& in : cfg.inputs) {
        sys.inputs.push_back(build_input(in, n));
    }

    const InitialSetSpec& s = cfg.initial;
    if (!s.profile.empty()) {
        if (cfg.problem.builtin != "heat_rod") {
            throw ConfigError("initial_set.profile '" + s.profile + "' needs the heat_rod problem");
        }
        const Vector g = sine_modes(cfg.problem, n);
        prob.x0 = Zonotope((1.0 + s.epsilon.mid()) * g, Matrix(s.epsilon.radius() * g));
    } else {
        Vector center;
        Vector radius;
        if (s.first_key == "state") {
            center = expand(s.first.center, prob.state_dim, "initial_set.state.center");
            radius = expand(s.first.radius, prob.state_dim, "initial_set.state.radius");
        } else if (s.first_key == "temperature") {
            if (dynamics) {
                throw ConfigError("initial_set.temperature needs a heat system");
            }
            center = expand(s.first.center, n, "initial_set.temperature.center");
            radius = expand(s.first.radius, n, "initial_set.temperature.radius");
        } else {
            if (!dynamics) {
                throw ConfigError("initial_set.displacement/velocity need a dynamics system");
            }
            center.resize(2 * n);
            radius.resize(2 * n);
            center << expand(s.first.center, n, "initial_set.displacement.center"),
                expand(s.second.center, n, "initial_set.velocity.center");
            radius << expand(s.first.radius, n, "initial_set.displacement.radius"),
                expand(s.second.radius, n, "initial_set.velocity.radius");
        }
        prob.x0 = Zonotope::from_box(Hyperrectangle(center, radius));
    }

    prob.outputs.resize(prob.state_dim, static_cast<Index>(cfg.outputs.size()));
    for (std::size_t j = 0; j < cfg.outputs.size(); ++j) {
        prob.outputs.col(static_cast<Index>(j)) = output_direction(cfg.outputs[j], sys, prob.state_dim);
    }
    for (Method m : cfg.methods) {
        if (m == Method::backward_euler && dynamics) {
            throw ConfigError("backward_euler needs a heat system");
        }
        if ((m == Method::newmark || m == Method::bathe) && !dynamics) {
            throw ConfigError(to_string(m) + " needs a dynamics system");
        }
    }
    return prob;
}

MethodResult run_method(const RunConfig& cfg, const Problem& prob, Method method) {
    const auto start = Clock::now();
    MethodResult res;
    res.method = method;
    const Index outputs = prob.outputs.cols();
    const int steps = cfg.steps;
    const double delta = cfg.delta;

    if (is_setprop(method)) {
        const LinearSystem sys = homogenize(prob.system, prob.system.inputs, SetExpr(prob.x0));
        Matrix dirs = Matrix::Zero(sys.dim(), outputs);
        dirs.topRows(prob.state_dim) = prob.outputs;
        const bool need_box = method != Method::setprop_support || cfg.support_from_box;
        const DiscretizedProblem dp = discretize(
            sys, delta, steps, need_box ? DiscretizationMode::box : DiscretizationMode::symbolic);
        res.bounds.assign(static_cast<std::size_t>(outputs), std::vector<BoundRow>(static_cast<std::size_t>(steps)));
        auto store = [&](int k, Index j, double lo, double hi) {
            const double kd = static_cast<double>(k);
            res.bounds[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = {kd * delta, (kd + 1.0) * delta,
                                                                                    lo, hi};
        };
        if (method == Method::setprop_box) {
            propagate_box(dp.phi, *dp.omega0_box, steps, [&](int k, const Hyperrectangle& h) {
                for (Index j = 0; j < outputs; ++j) {
                    const Vector d = dirs.col(j);
                    store(k, j, -support(h, Vector(-d)), support(h, d));
                }
            });
        } else if (method == Method::setprop_zono) {
            propagate_zonotope(dp.phi, Zonotope::from_box(*dp.omega0_box), steps, [&](int k, const Zonotope& z) {
                for (Index j = 0; j < outputs; ++j) {
                    const Vector d = dirs.col(j);
                    store(k, j, -support(z, Vector(-d)), support(z, d));
                }
            });
        } else {
            const SetExpr omega0 = cfg.support_from_box ? SetExpr(*dp.omega0_box) : dp.omega0;
            propagate_support(dp.phi, omega0, dirs, steps, [&](int k, const Vector& lo, const Vector& hi) {
                for (Index j = 0; j < outputs; ++j) {
                    store(k, j, lo[j], hi[j]);
                }
            });
        }
        res.seconds = seconds_since(start);
        return res;
    }

    const SecondOrderSystem& sys = prob.system;
    const Index n = sys.dofs();
    const Index p = prob.x0.generators().cols();
    const std::vector<Vector> coeffs = sample_coefficients(cfg.trajectories, p, cfg.seed);
    const auto count = static_cast<Index>(coeffs.size());
    Matrix x0(prob.state_dim, count);
    for (Index j = 0; j < count; ++j) {
        x0.col(j) = prob.x0.center() + prob.x0.generators() * coeffs[static_cast<std::size_t>(j)];
    }
    const Forcing f = sys.inputs.empty() ? zero_forcing(n) : input_forcing(sys.inputs);
    const Index stored = std::min<Index>(count, kMaxTrajectoryFiles);
    res.times.resize(static_cast<std::size_t>(steps) + 1);
    res.samples.assign(static_cast<std::size_t>(outputs), Matrix(steps + 1, stored));
    if (count > 1) {
        res.envelope.assign(static_cast<std::size_t>(outputs), Matrix(steps + 1, 2));
    }
    const StepObserver observe = [&](const StepState& st) {
        res.times[static_cast<std::size_t>(st.k)] = static_cast<double>(st.k) * delta;
        for (Index j = 0; j < outputs; ++j) {
            const Vector d = prob.outputs.col(j);
            Eigen::RowVectorXd values = d.head(n).transpose() * st.u;
            if (st.v != nullptr) {
                values += d.tail(n).transpose() * *st.v;
            }
            auto& m = res.samples[static_cast<std::size_t>(j)];
            m.row(st.k) = values.head(stored);
            if (count > 1) {
                res.envelope[static_cast<std::size_t>(j)](st.k, 0) = values.minCoeff();
                res.envelope[static_cast<std::size_t>(j)](st.k, 1) = values.maxCoeff();
            }
        }
    };
    if (method == Method::backward_euler) {
        backward_euler(sys, f, x0, delta, steps, observe);
    } else if (method == Method::newmark) {
        newmark(sys, f, x0.topRows(n), x0.bottomRows(n), delta, steps, observe);
    } else {
        bathe(sys, f, x0.topRows(n), x0.bottomRows(n), delta, steps, observe);
    }
    res.seconds = seconds_since(start);
    return res;
}

RunSummary run(const RunConfig& cfg_in) {
    const auto start = Clock::now();
    RunConfig cfg = cfg_in;
    const Problem prob = build_problem(cfg);
    fs::path out_dir;
    try {
        out_dir = fs::absolute(cfg.out_dir);
        fs::create_directories(out_dir);
    } catch (const fs::filesystem_error& e) {
        throw IoError("cannot create output directory '" + cfg.out_dir + "': " + e.code().message());
    }
    cfg.out_dir = out_dir.string();

    RunSummary summary;
    for (Method m : cfg.methods) {
        summary.results.push_back(run_method(cfg, prob, m));
        const MethodResult& res = summary.results.back();
        const std::string tag = to_string(m);
        if (!res.bounds.empty()) {
            const std::string file = tag + "_flowpipe.csv";
            CsvWriter csv(out_dir / file);
            std::fprintf(csv.get(), "k,t_lo,t_hi,output_id,lo,hi\n");
            for (int k = 0; k < cfg.steps; ++k) {
                for (std::size_t j = 0; j < cfg.outputs.size(); ++j) {
                    const BoundRow& r = res.bounds[j][static_cast<std::size_t>(k)];
                    std::fprintf(csv.get(), "%d,%.17g,%.17g,%s,%.17g,%.17g\n", k, r.t_lo, r.t_hi,
                                 cfg.outputs[j].name.c_str(), r.lo, r.hi);
                }
            }
            csv.close();
            summary.files.push_back(file);
            continue;
        }
        const Index stored = res.samples.front().cols();
        for (Index s = 0; s < stored; ++s) {
            const std::string file = tag + "_trajectory_" + std::to_string(s) + ".csv";
            CsvWriter csv(out_dir / file);
            std::fprintf(csv.get(), "k,t,output_id,value\n");
            for (int k = 0; k <= cfg.steps; ++k) {
                for (std::size_t j = 0; j < cfg.outputs.size(); ++j) {
                    std::fprintf(csv.get(), "%d,%.17g,%s,%.17g\n", k, res.times[static_cast<std::size_t>(k)],
                                 cfg.outputs[j].name.c_str(), res.samples[j](k, s));
                }
            }
            csv.close();
            summary.files.push_back(file);
        }
        if (!res.envelope.empty()) {
            const std::string file = tag + "_envelope.csv";
            CsvWriter csv(out_dir / file);
            std::fprintf(csv.get(), "k,t,output_id,lo,hi\n");
            for (int k = 0; k <= cfg.steps; ++k) {
                for (std::size_t j = 0; j < cfg.outputs.size(); ++j) {
                    std::fprintf(csv.get(), "%d,%.17g,%s,%.17g,%.17g\n", k, res.times[static_cast<std::size_t>(k)],
                                 cfg.outputs[j].name.c_str(), res.envelope[j](k, 0), res.envelope[j](k, 1));
                }
            }
            csv.close();
            summary.files.push_back(file);
        }
    }

    if (cfg.plot) {
        for (std::size_t j = 0; j < cfg.outputs.size(); ++j) {
            std::vector<Band> bands;
            std::vector<Line> lines;
            for (const auto& res : summary.results) {
                const std::string tag = to_string(res.method);
                if (!res.bounds.empty()) {
                    Band b{tag, {}, {}, {}, {}};
                    for (const auto& r : res.bounds[j]) {
                        b.t_lo.push_back(r.t_lo);
                        b.t_hi.push_back(r.t_hi);
                        b.lo.push_back(r.lo);
                        b.hi.push_back(r.hi);
                    }
                    bands.push_back(std::move(b));
                    continue;
                }
                const Matrix& m = res.samples[j];
                for (Index s = 0; s < std::min<Index>(m.cols(), 6); ++s) {
                    Line l{m.cols() > 1 ? tag + " #" + std::to_string(s) : tag, res.times, {}};
                    l.y.assign(m.col(s).data(), m.col(s).data() + m.rows());
                    lines.push_back(std::move(l));
                }
            }
            const std::string file = cfg.outputs[j].name + ".svg";
            write_file(out_dir / file, render_svg(cfg.name + ": " + cfg.outputs[j].name, bands, lines));
            summary.files.push_back(file);
        }
    }
    summary.seconds = seconds_since(start);

    YAML::Node manifest = YAML::Load(to_yaml(cfg));
    YAML::Node results;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", summary.seconds);
    results["wall_time_s"] = std::string(buf);
    for (const auto& res : summary.results) {
        YAML::Node entry;
        std::snprintf(buf, sizeof buf, "%.6g", res.seconds);
        entry["seconds"] = std::string(buf);
        if (!res.bounds.empty()) {
            for (std::size_t j = 0; j < cfg.outputs.size(); ++j) {
                double width = 0.0;
                for (const auto& r : res.bounds[j]) {
                    width = std::max(width, r.hi - r.lo);
                }
                std::snprintf(buf, sizeof buf, "%.17g", width);
                entry["peak_width"][cfg.outputs[j].name] = std::string(buf);
            }
        } else {
            entry["trajectories"] = res.samples.front().cols();
        }
        results["methods"][to_string(res.method)] = entry;
    }
    for (const auto& f : summary.files) {
        results["files"].push_back(f);
    }
    manifest["results"] = results;
    YAML::Emitter e;
    e << manifest;
    write_file(out_dir / "manifest.yaml", std::string("# re-run with: setprop run manifest.yaml\n") + e.c_str() + "\n");
    summary.files.push_back("manifest.yaml");
    return summary;
}

}  // namespace setprop::cli
