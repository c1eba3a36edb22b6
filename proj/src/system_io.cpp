#include "setprop/system_io.hpp"

#include "setprop/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace setprop {

namespace {

std::vector<std::string> split(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) {
        out.push_back(tok);
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Parser {
    const std::string& source;
    std::size_t line = 0;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(source, line, what); }

    double number(const std::string& tok) const {
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0') {
            fail("expected a number, got '" + tok + "'");
        }
        if (!std::isfinite(v)) {
            fail("non-finite value '" + tok + "'");
        }
        return v;
    }

    long integer(const std::string& tok) const {
        char* end = nullptr;
        const long v = std::strtol(tok.c_str(), &end, 10);
        if (end == tok.c_str() || *end != '\0') {
            fail("expected an integer, got '" + tok + "'");
        }
        return v;
    }

    Interval interval(const std::vector<std::string>& toks, std::size_t at, bool pair) const {
        if (!pair) {
            return Interval::point(number(toks[at]));
        }
        const double lo = number(toks[at]);
        const double hi = number(toks[at + 1]);
        if (!(lo <= hi)) {
            fail("interval bounds out of order");
        }
        return {lo, hi};
    }
};

struct PendingInput {
    std::size_t line = 0;
    std::optional<Vector> f0;
    std::vector<std::string> model;
};

}  // namespace

SecondOrderSystem parse_system(std::istream& in, const std::string& source) {
    Parser p{source};
    std::optional<SystemKind> kind;
    std::optional<Index> n;
    std::map<char, std::vector<Eigen::Triplet<double>>> triplets;
    std::map<char, std::size_t> matrix_lines;
    std::optional<char> current_matrix;
    std::vector<PendingInput> inputs;
    bool in_input = false;

    std::string raw;
    while (std::getline(in, raw)) {
        ++p.line;
        const auto hash = raw.find('#');
        const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (text.empty()) {
            continue;
        }
        const auto toks = split(text);
        if (toks[0] == "matrix") {
            if (toks.size() != 2 || toks[1].size() != 1 || std::string("KCM").find(toks[1][0]) == std::string::npos) {
                p.fail("expected 'matrix K', 'matrix C' or 'matrix M'");
            }
            if (!n) {
                p.fail("'n:' must precede matrix blocks");
            }
            const char name = toks[1][0];
            if (matrix_lines.count(name) != 0) {
                p.fail(std::string("duplicate matrix ") + name);
            }
            matrix_lines[name] = p.line;
            triplets[name];
            current_matrix = name;
            in_input = false;
            continue;
        }
        if (toks[0] == "input") {
            if (toks.size() != 1) {
                p.fail("'input' takes no arguments");
            }
            inputs.push_back({p.line, std::nullopt, {}});
            current_matrix.reset();
            in_input = true;
            continue;
        }
        const auto colon = text.find(':');
        if (colon != std::string::npos) {
            const std::string key = trim(text.substr(0, colon));
            const auto values = split(text.substr(colon + 1));
            if (in_input) {
                auto& cur = inputs.back();
                if (key == "f0") {
                    if (cur.f0) {
                        p.fail("duplicate f0");
                    }
                    if (static_cast<Index>(values.size()) != *n) {
                        throw DimensionError(source + ":" + std::to_string(p.line) + ": f0 has " +
                                             std::to_string(values.size()) + " entries, expected " +
                                             std::to_string(*n));
                    }
                    Vector f(*n);
                    for (Index i = 0; i < *n; ++i) {
                        f[i] = p.number(values[static_cast<std::size_t>(i)]);
                    }
                    cur.f0 = std::move(f);
                } else if (key == "model") {
                    if (!cur.model.empty()) {
                        p.fail("duplicate model");
                    }
                    if (values.empty()) {
                        p.fail("model line is empty");
                    }
                    cur.model = values;
                    cur.line = p.line;
                } else {
                    p.fail("unknown input key '" + key + "'");
                }
                continue;
            }
            if (current_matrix) {
                p.fail("key '" + key + "' inside a matrix block");
            }
            if (values.size() != 1) {
                p.fail("'" + key + ":' expects one value");
            }
            if (key == "kind") {
                if (values[0] == "heat") {
                    kind = SystemKind::heat;
                } else if (values[0] == "dynamics") {
                    kind = SystemKind::dynamics;
                } else {
                    p.fail("kind must be 'heat' or 'dynamics'");
                }
            } else if (key == "n") {
                const long v = p.integer(values[0]);
                if (v < 1) {
                    p.fail("n must be positive");
                }
                n = static_cast<Index>(v);
            } else {
                p.fail("unknown key '" + key + "'");
            }
            continue;
        }
        if (!current_matrix) {
            p.fail("unexpected line '" + text + "'");
        }
        if (toks.size() != 3) {
            p.fail("expected 'row col value'");
        }
        const long r = p.integer(toks[0]);
        const long c = p.integer(toks[1]);
        const double v = p.number(toks[2]);
        if (r < 1 || c < 1 || r > *n || c > *n) {
            throw DimensionError(source + ":" + std::to_string(p.line) + ": entry (" + toks[0] + ", " + toks[1] +
                                 ") outside " + std::to_string(*n) + "x" + std::to_string(*n));
        }
        triplets[*current_matrix].emplace_back(r - 1, c - 1, v);
    }

    ++p.line;
    if (!kind) {
        p.fail("missing 'kind:'");
    }
    if (!n) {
        p.fail("missing 'n:'");
    }
    if (matrix_lines.count('K') == 0) {
        p.fail("missing 'matrix K'");
    }
    if (*kind == SystemKind::heat && matrix_lines.count('M') != 0) {
        p.line = matrix_lines['M'];
        p.fail("heat systems have no mass matrix");
    }
    if (*kind == SystemKind::heat && matrix_lines.count('C') == 0) {
        p.fail("heat systems require 'matrix C'");
    }
    if (*kind == SystemKind::dynamics && matrix_lines.count('M') == 0) {
        p.fail("dynamics systems require 'matrix M'");
    }

    auto build = [&](char name) {
        SparseMatrix m(*n, *n);
        const auto& t = triplets[name];
        m.setFromTriplets(t.begin(), t.end());
        return m;
    };

    SecondOrderSystem sys;
    sys.kind = *kind;
    sys.stiffness = build('K');
    sys.damping = build('C');
    if (*kind == SystemKind::dynamics) {
        sys.mass = build('M');
    }

    for (const auto& pin : inputs) {
        p.line = pin.line;
        if (!pin.f0) {
            p.fail("input block without 'f0:'");
        }
        if (pin.model.empty()) {
            p.fail("input block without 'model:'");
        }
        const std::string& name = pin.model[0];
        const std::size_t args = pin.model.size() - 1;
        if (name == "constant") {
            if (args != 1 && args != 2) {
                p.fail("constant model takes 'v' or 'lo hi'");
            }
            sys.inputs.push_back(InputTerm::constant(*pin.f0, p.interval(pin.model, 1, args == 2)));
        } else if (name == "exponential") {
            if (args != 2 && args != 3) {
                p.fail("exponential model takes 'alpha x0' or 'alpha lo hi'");
            }
            sys.inputs.push_back(
                InputTerm::exponential(*pin.f0, p.number(pin.model[1]), p.interval(pin.model, 2, args == 3)));
        } else if (name == "sinusoid") {
            if (args != 3 && args != 5) {
                p.fail("sinusoid model takes 'omega xi1 xi2' or 'omega lo1 hi1 lo2 hi2'");
            }
            const bool pairs = args == 5;
            const double omega = p.number(pin.model[1]);
            if (!(omega > 0.0)) {
                p.fail("sinusoid angular frequency must be positive");
            }
            sys.inputs.push_back(InputTerm::sinusoid(*pin.f0, omega, p.interval(pin.model, 2, pairs),
                                                     p.interval(pin.model, pairs ? 4 : 3, pairs)));
        } else {
            p.fail("unknown input model '" + name + "'");
        }
    }
    sys.validate();
    return sys;
}

SecondOrderSystem load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path, 0, "cannot open file");
    }
    return parse_system(in, path);
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(const Interval& iv) { return iv.lo == iv.hi ? fmt(iv.lo) : fmt(iv.lo) + " " + fmt(iv.hi); }

void write_matrix(std::ostream& out, char name, const SparseMatrix& m) {
    out << "matrix " << name << '\n';
    for (Index k = 0; k < m.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
            out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << fmt(it.value()) << '\n';
        }
    }
}

}  // namespace

void write_system(const SecondOrderSystem& sys, std::ostream& out) {
    sys.validate();
    out << "kind: " << (sys.kind == SystemKind::heat ? "heat" : "dynamics") << '\n';
    out << "n: " << sys.dofs() << '\n';
    write_matrix(out, 'K', sys.stiffness);
    write_matrix(out, 'C', sys.damping);
    if (sys.mass) {
        write_matrix(out, 'M', *sys.mass);
    }
    for (const auto& in : sys.inputs) {
        const auto& b = in.initial_bounds();
        out << "input\nf0:";
        for (Index i = 0; i < in.f0().size(); ++i) {
            out << ' ' << fmt(in.f0()[i]);
        }
        out << "\nmodel: ";
        switch (in.model()) {
            case InputModel::constant:
                out << "constant " << fmt(b[0]);
                break;
            case InputModel::exponential:
                out << "exponential " << fmt(in.rate()) << ' ' << fmt(b[0]);
                break;
            case InputModel::sinusoid:
                if ((b[0].lo == b[0].hi) != (b[1].lo == b[1].hi)) {
                    out << "sinusoid " << fmt(in.rate()) << ' ' << fmt(b[0].lo) << ' ' << fmt(b[0].hi) << ' '
                        << fmt(b[1].lo) << ' ' << fmt(b[1].hi);
                } else {
                    out << "sinusoid " << fmt(in.rate()) << ' ' << fmt(b[0]) << ' ' << fmt(b[1]);
                }
                break;
            case InputModel::custom:
                throw ArgumentError("input terms with a custom generator cannot be written to a system file");
        }
        out << '\n';
    }
}

void save_system(const SecondOrderSystem& sys, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write system file " + path);
    }
    write_system(sys, out);
    if (!out) {
        throw Error("error while writing system file " + path);
    }
}

}  // namespace setprop
