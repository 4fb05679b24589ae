#include "hydrosleigh/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <vector>

#include "hydrosleigh/errors.hpp"

namespace hydrosleigh {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

using Section = std::map<std::string, std::string>;
using Sections = std::map<std::string, Section>;

double parse_number(const std::string& section, const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v))
        throw ConfigError("[" + section + "]." + key + ": not a finite number: '" + value + "'");
    return v;
}

/// Pulls keys from a section, enforcing that no unknown keys remain.
class SectionReader {
public:
    SectionReader(const Sections& all, std::string name) : name_(std::move(name)) {
        auto it = all.find(name_);
        if (it != all.end()) entries_ = it->second;
    }

    bool present() const { return !entries_.empty(); }
    bool has(const std::string& key) const { return entries_.count(key) > 0; }

    double number(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end())
            throw ConfigError("[" + name_ + "]." + key + ": missing required key");
        const double v = parse_number(name_, key, it->second);
        entries_.erase(it);
        return v;
    }

    double number_or(const std::string& key, double fallback) {
        return has(key) ? number(key) : fallback;
    }

    std::optional<std::string> text(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        std::string v = it->second;
        entries_.erase(it);
        return v;
    }

    void finish() const {
        if (!entries_.empty())
            throw ConfigError("[" + name_ + "]." + entries_.begin()->first + ": unknown key");
    }

private:
    std::string name_;
    Section entries_;
};

ScenarioMode parse_mode(const std::string& text) {
    if (text == "sleigh2d") return ScenarioMode::Sleigh2d;
    if (text == "kirchhoff3d-free") return ScenarioMode::Kirchhoff3dFree;
    if (text == "eps3d-suslov") return ScenarioMode::Eps3dSuslov;
    if (text == "eps3d-sleigh") return ScenarioMode::Eps3dSleigh;
    throw ConfigError("mode: unknown mode '" + text +
                      "' (expected sleigh2d, kirchhoff3d-free, eps3d-suslov, eps3d-sleigh)");
}

}  // namespace

std::string to_string(ScenarioMode mode) {
    switch (mode) {
        case ScenarioMode::Sleigh2d: return "sleigh2d";
        case ScenarioMode::Kirchhoff3dFree: return "kirchhoff3d-free";
        case ScenarioMode::Eps3dSuslov: return "eps3d-suslov";
        case ScenarioMode::Eps3dSleigh: return "eps3d-sleigh";
    }
    return "?";
}

Mat3 to_matrix(const TensorEntries2& e) {
    Mat3 t;
    t(0, 0) = e.J;
    t(0, 1) = t(1, 0) = -e.L2;
    t(0, 2) = t(2, 0) = e.L1;
    t(1, 1) = e.M;
    t(1, 2) = t(2, 1) = e.Z;
    t(2, 2) = e.N;
    return t;
}

ScenarioConfig parse_config(const std::string& text) {
    Sections sections;
    std::string current;  // "" = preamble
    std::optional<std::string> mode_text;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (const auto hash = line.find_first_of("#;"); hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
            current = trim(line.substr(1, line.size() - 2));
            static const char* known[] = {"body", "fluid", "tensor", "constraint",
                                          "initial", "sim", "output"};
            bool ok = false;
            for (const char* k : known) ok = ok || current == k;
            if (!ok) throw ConfigError("[" + current + "]: unknown section");
            sections[current];  // record even if empty
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");

        if (current.empty()) {
            if (key != "mode")
                throw ConfigError(key + ": only 'mode' may appear before the first section");
            mode_text = value;
            continue;
        }
        if (!sections[current].emplace(key, value).second)
            throw ConfigError("[" + current + "]." + key + ": duplicate key");
    }

    ScenarioConfig cfg;
    cfg.mode = parse_mode(mode_text.value_or("sleigh2d"));
    const bool planar = cfg.mode == ScenarioMode::Sleigh2d;

    // Tensor sources.
    const bool has_tensor = sections.count("tensor") > 0;
    const bool has_body = sections.count("body") > 0;
    const bool has_fluid = sections.count("fluid") > 0;

    if (planar) {
        if (has_tensor && (has_body || has_fluid))
            throw ConfigError("[tensor] conflicts with [body]/[fluid]: give exactly one tensor source");
        if (!has_tensor && !has_body)
            throw ConfigError("missing tensor source: give [tensor] or [body] (with optional [fluid])");
        if (has_tensor) {
            SectionReader r(sections, "tensor");
            TensorEntries2 e;
            e.J = r.number("J");
            e.M = r.number("M");
            e.N = r.number("N");
            e.L1 = r.number("L1");
            e.L2 = r.number("L2");
            e.Z = r.number("Z");
            r.finish();
            cfg.tensor_entries = e;
        } else {
            SectionReader r(sections, "body");
            BodySpec2 b;
            b.mass = r.number("m");
            b.a = r.number("a");
            b.b = r.number("b");
            b.moment = r.number("I");
            r.finish();
            cfg.body = b;
            if (has_fluid) {
                SectionReader f(sections, "fluid");
                const bool ellipse = f.has("rho") || f.has("A") || f.has("B") || f.has("theta");
                const bool entries = f.has("J") || f.has("M") || f.has("N") || f.has("L1") ||
                                     f.has("L2") || f.has("Z");
                if (ellipse && entries)
                    throw ConfigError("[fluid]: give either ellipse keys (rho, A, B, theta) or "
                                      "added-tensor entries (J, M, N, L1, L2, Z), not both");
                if (ellipse) {
                    EllipseSpec e;
                    e.rho = f.number("rho");
                    e.semi_major = f.number("A");
                    e.semi_minor = f.number("B");
                    e.theta = f.number("theta");
                    cfg.fluid_ellipse = e;
                } else if (entries) {
                    TensorEntries2 e;
                    e.J = f.number("J");
                    e.M = f.number("M");
                    e.N = f.number("N");
                    e.L1 = f.number("L1");
                    e.L2 = f.number("L2");
                    e.Z = f.number("Z");
                    cfg.fluid_entries = e;
                } else {
                    throw ConfigError("[fluid]: section is empty");
                }
                f.finish();
            }
        }
        if (sections.count("constraint"))
            throw ConfigError("[constraint]: only valid in 3-D modes (the sleigh2d constraint is v2 = 0)");

        SectionReader i(sections, "initial");
        cfg.initial.omega = i.number_or("omega", 0.0);
        cfg.initial.v1 = i.number_or("v1", 0.0);
        cfg.pose0.phi = i.number_or("phi", 0.0);
        cfg.pose0.x = i.number_or("x", 0.0);
        cfg.pose0.y = i.number_or("y", 0.0);
        i.finish();
    } else {
        if (has_body || has_fluid)
            throw ConfigError("[body]/[fluid]: 3-D modes take a raw 6x6 [tensor] only");
        if (!has_tensor) throw ConfigError("missing required section [tensor]");
        SectionReader r(sections, "tensor");
        Mat6 t;
        for (int i = 0; i < 6; ++i)
            for (int j = i; j < 6; ++j) {
                const std::string key = "I" + std::to_string(i + 1) + std::to_string(j + 1);
                t(i, j) = t(j, i) = r.number(key);
            }
        r.finish();
        cfg.tensor6 = t;

        SectionReader c(sections, "constraint");
        const bool want_a = cfg.mode == ScenarioMode::Eps3dSuslov;
        const bool want_f = cfg.mode == ScenarioMode::Eps3dSleigh;
        if (cfg.mode == ScenarioMode::Kirchhoff3dFree) {
            if (c.present())
                throw ConfigError("[constraint]: kirchhoff3d-free is unconstrained");
        } else if (want_a) {
            cfg.constraint_a = Vec3{c.number("ax"), c.number("ay"), c.number("az")};
        } else if (want_f) {
            cfg.constraint_f = Vec3{c.number("fx"), c.number("fy"), c.number("fz")};
        }
        c.finish();

        SectionReader i(sections, "initial");
        cfg.omega0 = {i.number_or("wx", 0.0), i.number_or("wy", 0.0), i.number_or("wz", 0.0)};
        cfg.v0 = {i.number_or("vx", 0.0), i.number_or("vy", 0.0), i.number_or("vz", 0.0)};
        i.finish();
    }

    SectionReader s(sections, "sim");
    cfg.t0 = s.number_or("t0", -10.0);
    cfg.t1 = s.number_or("t1", 10.0);
    cfg.dt = s.number_or("dt", 1e-3);
    s.finish();
    if (!(cfg.dt > 0.0)) throw ConfigError("[sim].dt: must be positive");
    if (!(cfg.t1 > cfg.t0)) throw ConfigError("[sim].t1: must exceed t0");

    SectionReader o(sections, "output");
    cfg.out_csv = o.text("csv");
    cfg.out_json = o.text("json");
    o.finish();

    return cfg;
}

std::string emit_config(const ScenarioConfig& cfg) {
    std::ostringstream out;
    out << "mode = " << to_string(cfg.mode) << "\n";

    if (cfg.body) {
        out << "\n[body]\n";
        out << "m = " << fmt(cfg.body->mass) << "\n";
        out << "a = " << fmt(cfg.body->a) << "\n";
        out << "b = " << fmt(cfg.body->b) << "\n";
        out << "I = " << fmt(cfg.body->moment) << "\n";
    }
    if (cfg.fluid_ellipse) {
        out << "\n[fluid]\n";
        out << "rho = " << fmt(cfg.fluid_ellipse->rho) << "\n";
        out << "A = " << fmt(cfg.fluid_ellipse->semi_major) << "\n";
        out << "B = " << fmt(cfg.fluid_ellipse->semi_minor) << "\n";
        out << "theta = " << fmt(cfg.fluid_ellipse->theta) << "\n";
    }
    if (cfg.fluid_entries) {
        out << "\n[fluid]\n";
        const TensorEntries2& e = *cfg.fluid_entries;
        out << "J = " << fmt(e.J) << "\nM = " << fmt(e.M) << "\nN = " << fmt(e.N) << "\n";
        out << "L1 = " << fmt(e.L1) << "\nL2 = " << fmt(e.L2) << "\nZ = " << fmt(e.Z) << "\n";
    }
    if (cfg.tensor_entries) {
        out << "\n[tensor]\n";
        const TensorEntries2& e = *cfg.tensor_entries;
        out << "J = " << fmt(e.J) << "\nM = " << fmt(e.M) << "\nN = " << fmt(e.N) << "\n";
        out << "L1 = " << fmt(e.L1) << "\nL2 = " << fmt(e.L2) << "\nZ = " << fmt(e.Z) << "\n";
    }
    if (cfg.tensor6) {
        out << "\n[tensor]\n";
        for (int i = 0; i < 6; ++i)
            for (int j = i; j < 6; ++j)
                out << "I" << i + 1 << j + 1 << " = " << fmt((*cfg.tensor6)(i, j)) << "\n";
    }
    if (cfg.constraint_a) {
        out << "\n[constraint]\n";
        out << "ax = " << fmt(cfg.constraint_a->x) << "\nay = " << fmt(cfg.constraint_a->y)
            << "\naz = " << fmt(cfg.constraint_a->z) << "\n";
    }
    if (cfg.constraint_f) {
        out << "\n[constraint]\n";
        out << "fx = " << fmt(cfg.constraint_f->x) << "\nfy = " << fmt(cfg.constraint_f->y)
            << "\nfz = " << fmt(cfg.constraint_f->z) << "\n";
    }

    out << "\n[initial]\n";
    if (cfg.mode == ScenarioMode::Sleigh2d) {
        out << "omega = " << fmt(cfg.initial.omega) << "\n";
        out << "v1 = " << fmt(cfg.initial.v1) << "\n";
        out << "phi = " << fmt(cfg.pose0.phi) << "\n";
        out << "x = " << fmt(cfg.pose0.x) << "\n";
        out << "y = " << fmt(cfg.pose0.y) << "\n";
    } else {
        out << "wx = " << fmt(cfg.omega0.x) << "\nwy = " << fmt(cfg.omega0.y) << "\nwz = "
            << fmt(cfg.omega0.z) << "\n";
        out << "vx = " << fmt(cfg.v0.x) << "\nvy = " << fmt(cfg.v0.y) << "\nvz = "
            << fmt(cfg.v0.z) << "\n";
    }

    out << "\n[sim]\n";
    out << "t0 = " << fmt(cfg.t0) << "\n";
    out << "t1 = " << fmt(cfg.t1) << "\n";
    out << "dt = " << fmt(cfg.dt) << "\n";

    if (cfg.out_csv || cfg.out_json) {
        out << "\n[output]\n";
        if (cfg.out_csv) out << "csv = " << *cfg.out_csv << "\n";
        if (cfg.out_json) out << "json = " << *cfg.out_json << "\n";
    }
    return out.str();
}

InertiaTensor3 resolve_tensor2(const ScenarioConfig& cfg) {
    if (cfg.mode != ScenarioMode::Sleigh2d)
        throw ConfigError("2-D tensor requested for a 3-D mode");
    if (cfg.tensor_entries) {
        const Mat3 t = to_matrix(*cfg.tensor_entries);
        if (!is_positive_definite(t))
            throw DegenerateTensorError("[tensor]: total inertia tensor is not positive definite");
        return t;
    }
    const InertiaTensor3 body = body_inertia_2d(*cfg.body);
    Mat3 added;  // vacuum unless a fluid is given
    if (cfg.fluid_ellipse) added = ellipse_added_inertia(*cfg.fluid_ellipse);
    if (cfg.fluid_entries) added = to_matrix(*cfg.fluid_entries);
    return total_inertia(body, added);
}

void apply_override(ScenarioConfig& cfg, const std::string& path, double value) {
    const auto fail = [&]() -> double& {
        throw ConfigError("override path '" + path + "' does not exist in this scenario");
    };
    const auto pick = [&]() -> double& {
        if (path == "sim.t0") return cfg.t0;
        if (path == "sim.t1") return cfg.t1;
        if (path == "sim.dt") return cfg.dt;
        if (path == "initial.omega") return cfg.initial.omega;
        if (path == "initial.v1") return cfg.initial.v1;
        if (path == "initial.phi") return cfg.pose0.phi;
        if (path == "initial.x") return cfg.pose0.x;
        if (path == "initial.y") return cfg.pose0.y;
        if (path.rfind("body.", 0) == 0) {
            if (!cfg.body) return fail();
            if (path == "body.m") return cfg.body->mass;
            if (path == "body.a") return cfg.body->a;
            if (path == "body.b") return cfg.body->b;
            if (path == "body.I") return cfg.body->moment;
        }
        if (path.rfind("fluid.", 0) == 0) {
            if (!cfg.fluid_ellipse) return fail();
            if (path == "fluid.rho") return cfg.fluid_ellipse->rho;
            if (path == "fluid.A") return cfg.fluid_ellipse->semi_major;
            if (path == "fluid.B") return cfg.fluid_ellipse->semi_minor;
            if (path == "fluid.theta") return cfg.fluid_ellipse->theta;
        }
        if (path.rfind("tensor.", 0) == 0) {
            if (!cfg.tensor_entries) return fail();
            if (path == "tensor.J") return cfg.tensor_entries->J;
            if (path == "tensor.M") return cfg.tensor_entries->M;
            if (path == "tensor.N") return cfg.tensor_entries->N;
            if (path == "tensor.L1") return cfg.tensor_entries->L1;
            if (path == "tensor.L2") return cfg.tensor_entries->L2;
            if (path == "tensor.Z") return cfg.tensor_entries->Z;
        }
        return fail();
    };
    if (!std::isfinite(value)) throw ConfigError("override value must be finite");
    pick() = value;
}

}  // namespace hydrosleigh
