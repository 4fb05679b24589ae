#include "hydrosleigh/run.hpp"

#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <memory>

#include <json.hpp>

#include "hydrosleigh/asymptotics.hpp"
#include "hydrosleigh/errors.hpp"

namespace hydrosleigh {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string resolve_path(const std::string& out_dir, const std::optional<std::string>& configured,
                         const std::string& fallback) {
    const std::filesystem::path name = configured.value_or(fallback);
    if (name.is_absolute()) return name.string();
    return (std::filesystem::path(out_dir) / name).string();
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_output(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw ConfigError("cannot open output file: " + path);
    return f;
}

void write_row(std::FILE* f, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        std::fprintf(f, first ? "%.17g" : ",%.17g", v);
        first = false;
    }
    std::fputc('\n', f);
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    FilePtr f = open_output(path);
    std::fputs("t,omega,v1,phi,x,y,energy,constraint_residual\n", f.get());
    for (const TrajectorySample& s : traj.samples)
        write_row(f.get(), {s.t, s.state.omega, s.state.v1, s.pose.phi, s.pose.x, s.pose.y,
                            s.energy, s.constraint_residual});
}

void write_json(const std::string& path, const ordered_json& j) {
    FilePtr f = open_output(path);
    const std::string text = j.dump(2) + "\n";
    std::fwrite(text.data(), 1, text.size(), f.get());
}

ordered_json report_to_json(const AsymptoticsReport& r) {
    ordered_json j;
    j["regime"] = to_string(r.regime);
    if (r.limit_radius) j["r"] = *r.limit_radius;
    if (r.alpha) {
        j["alpha"] = *r.alpha;
        j["beta"] = *r.beta;
        j["c1"] = *r.c1;
        j["c2"] = *r.c2;
    }
    if (r.d_formula) j["d_formula"] = *r.d_formula;
    if (r.d_quadrature) j["d_quadrature"] = *r.d_quadrature;
    if (r.delta_phi) j["delta_phi"] = *r.delta_phi;
    if (r.center_point) j["center_point"] = {r.center_point->first, r.center_point->second};
    j["measure_exists"] = r.measure_exists;
    j["measure_residuals"] = {r.measure_residuals.first, r.measure_residuals.second};
    return j;
}

SimOptions sim_options(const ScenarioConfig& cfg) {
    SimOptions opt;
    opt.t0 = cfg.t0;
    opt.t1 = cfg.t1;
    opt.dt = cfg.dt;
    return opt;
}

EpsSystem3 build_system3(const ScenarioConfig& cfg) {
    std::vector<Constraint3> constraints;
    if (cfg.mode == ScenarioMode::Eps3dSuslov)
        constraints.push_back({Momentum3{*cfg.constraint_a, Vec3{}}, "a.omega = 0"});
    if (cfg.mode == ScenarioMode::Eps3dSleigh)
        constraints.push_back({Momentum3{Vec3{}, *cfg.constraint_f}, "F.V = 0"});
    return EpsSystem3(*cfg.tensor6, std::move(constraints));
}

int run_simulate3(const ScenarioConfig& cfg, const std::string& out_dir) {
    EpsSystem3 sys = build_system3(cfg);
    const auto mu_raw = *cfg.tensor6 * std::array<double, 6>{cfg.omega0.x, cfg.omega0.y,
                                                             cfg.omega0.z, cfg.v0.x,
                                                             cfg.v0.y, cfg.v0.z};
    const Momentum3 mu0 = sys.project({{mu_raw[0], mu_raw[1], mu_raw[2]},
                                       {mu_raw[3], mu_raw[4], mu_raw[5]}});

    if (!(cfg.t0 <= 0.0 && 0.0 <= cfg.t1))
        throw ConfigError("[sim]: the window must contain t = 0 (the initial condition)");

    const OdeRhs rhs = [&sys](double, std::span<const double> y, std::span<double> dy) {
        const Momentum3 d = sys.rhs({{y[0], y[1], y[2]}, {y[3], y[4], y[5]}});
        dy[0] = d.k.x;
        dy[1] = d.k.y;
        dy[2] = d.k.z;
        dy[3] = d.p.x;
        dy[4] = d.p.y;
        dy[5] = d.p.z;
    };

    std::vector<double> y0{mu0.k.x, mu0.k.y, mu0.k.z, mu0.p.x, mu0.p.y, mu0.p.z};
    OdeSolution merged;
    if (cfg.t0 < 0.0) {
        const OdeRhs reversed = [&rhs](double t, std::span<const double> y, std::span<double> dy) {
            rhs(-t, y, dy);
            for (double& v : dy) v = -v;
        };
        OdeSolution back = rk4_integrate(reversed, y0, 0.0, -cfg.t0, cfg.dt);
        for (std::size_t i = back.times.size(); i-- > 0;) {
            if (back.times[i] == 0.0) continue;
            merged.times.push_back(-back.times[i]);
            merged.states.push_back(std::move(back.states[i]));
        }
    }
    if (cfg.t1 > 0.0) {
        OdeSolution fwd = rk4_integrate(rhs, y0, 0.0, cfg.t1, cfg.dt);
        for (std::size_t i = 0; i < fwd.times.size(); ++i) {
            merged.times.push_back(fwd.times[i]);
            merged.states.push_back(std::move(fwd.states[i]));
        }
    } else {
        merged.times.push_back(0.0);
        merged.states.push_back(y0);
    }

    const std::string path = resolve_path(out_dir, cfg.out_csv, "trajectory.csv");
    FilePtr f = open_output(path);
    std::fputs("t,k1,k2,k3,p1,p2,p3,energy,constraint_residual\n", f.get());
    for (std::size_t i = 0; i < merged.times.size(); ++i) {
        const auto& y = merged.states[i];
        const Momentum3 mu{{y[0], y[1], y[2]}, {y[3], y[4], y[5]}};
        double residual = 0.0;
        for (std::size_t c = 0; c < sys.constraints().size(); ++c)
            residual = std::max(residual, std::abs(sys.constraint_residual(mu, c)));
        write_row(f.get(), {merged.times[i], y[0], y[1], y[2], y[3], y[4], y[5],
                            sys.energy(mu), residual});
    }
    return 0;
}

int run_measure_check(const ScenarioConfig& cfg, const std::string& out_dir) {
    ordered_json j;
    if (cfg.mode == ScenarioMode::Sleigh2d) {
        const SleighCoefficients c = coefficients(resolve_tensor2(cfg));
        const auto [r1, r2] = measure_residual_2d(c);
        j["residuals"] = {r1, r2};
        j["measure_exists"] = measure_exists_2d(c);
    } else if (cfg.mode == ScenarioMode::Kirchhoff3dFree) {
        throw ConfigError("measure-check needs a constrained mode (eps3d-suslov or eps3d-sleigh)");
    } else {
        const Vec3 a = cfg.constraint_a.value_or(Vec3{});
        const Vec3 F = cfg.constraint_f.value_or(Vec3{});
        const MeasureResidual3 r = measure_residual_3d(*cfg.tensor6, a, F);
        j["residuals"] = r.residual;
        j["c"] = r.c;
        j["residual_norm"] = r.norm;
        j["measure_exists"] = r.exists;
    }
    write_json(resolve_path(out_dir, cfg.out_json, "measure.json"), j);
    std::cout << j.dump() << "\n";
    return 0;
}

int run_report(const ScenarioConfig& cfg, const std::string& out_dir) {
    if (cfg.mode != ScenarioMode::Sleigh2d)
        throw ConfigError("report is defined for mode sleigh2d");
    const SleighCoefficients c = coefficients(resolve_tensor2(cfg));
    const ordered_json j = report_to_json(asymptotics_report(c, cfg.initial));
    write_json(resolve_path(out_dir, cfg.out_json, "report.json"), j);
    std::cout << j.dump() << "\n";
    return 0;
}

int run_closed_form(const ScenarioConfig& cfg, const std::string& out_dir) {
    if (cfg.mode != ScenarioMode::Sleigh2d)
        throw ConfigError("closed-form is defined for mode sleigh2d");
    const SleighCoefficients c = coefficients(resolve_tensor2(cfg));
    const SimulationResult res =
        closed_form_trajectory(c, cfg.initial, cfg.pose0, sim_options(cfg));
    write_trajectory_csv(resolve_path(out_dir, cfg.out_csv, "closed_form.csv"), res.trajectory);
    return 0;
}

int run_compare(const ScenarioConfig& cfg, const std::string& out_dir) {
    if (cfg.mode != ScenarioMode::Sleigh2d)
        throw ConfigError("compare is defined for mode sleigh2d");
    const SleighCoefficients c = coefficients(resolve_tensor2(cfg));
    const SimulationResult sim = simulate_sleigh(c, cfg.initial, cfg.pose0, sim_options(cfg));
    const FittedForm fit = fit_closed_form(c, cfg.initial, cfg.pose0.phi);

    double dev_omega = 0.0, dev_v1 = 0.0, dev_phi = 0.0;
    for (const TrajectorySample& s : sim.trajectory.samples) {
        const ClosedFormPoint p = closed_form_eval(fit.form, s.t + fit.t_offset);
        dev_omega = std::max(dev_omega, std::abs(s.state.omega - p.state.omega));
        dev_v1 = std::max(dev_v1, std::abs(s.state.v1 - p.state.v1));
        dev_phi = std::max(dev_phi, std::abs(s.pose.phi - p.phi));
    }

    ordered_json j;
    j["max_abs"] = {{"omega", dev_omega}, {"v1", dev_v1}, {"phi", dev_phi}};
    j["samples"] = sim.trajectory.samples.size();
    write_json(resolve_path(out_dir, cfg.out_json, "compare.json"), j);
    std::cout << j.dump() << "\n";
    return 0;
}

}  // namespace

Command parse_command(const std::string& name) {
    if (name == "simulate") return Command::Simulate;
    if (name == "closed-form") return Command::ClosedForm;
    if (name == "compare") return Command::Compare;
    if (name == "report") return Command::Report;
    if (name == "measure-check") return Command::MeasureCheck;
    throw ConfigError("unknown command '" + name + "'");
}

std::string to_string(SleighRegime regime) {
    switch (regime) {
        case SleighRegime::LimitCircles: return "limit-circles";
        case SleighRegime::StraightLines: return "straight-lines";
        case SleighRegime::Degenerate: return "degenerate";
        case SleighRegime::Steady: return "steady";
    }
    return "?";
}

int run(const ScenarioConfig& cfg, Command command, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    switch (command) {
        case Command::Simulate: {
            if (cfg.mode != ScenarioMode::Sleigh2d) return run_simulate3(cfg, out_dir);
            const InertiaTensor3 tensor = resolve_tensor2(cfg);
            const SimulationResult sim =
                simulate_sleigh(tensor, cfg.initial, cfg.pose0, sim_options(cfg));
            write_trajectory_csv(resolve_path(out_dir, cfg.out_csv, "trajectory.csv"),
                                 sim.trajectory);
            const ordered_json j = report_to_json(sim.report);
            write_json(resolve_path(out_dir, cfg.out_json, "report.json"), j);
            return 0;
        }
        case Command::ClosedForm: return run_closed_form(cfg, out_dir);
        case Command::Compare: return run_compare(cfg, out_dir);
        case Command::Report: return run_report(cfg, out_dir);
        case Command::MeasureCheck: return run_measure_check(cfg, out_dir);
    }
    return 1;
}

int run_sweep(const ScenarioConfig& base, const std::string& param,
              const std::vector<double>& values, const std::string& out_dir) {
    if (values.empty()) throw ConfigError("sweep needs at least one value");
    std::filesystem::create_directories(out_dir);

    std::vector<std::future<int>> jobs;
    for (std::size_t i = 0; i < values.size(); ++i) {
        ScenarioConfig cfg = base;
        apply_override(cfg, param, values[i]);
        char suffix[32];
        std::snprintf(suffix, sizeof suffix, "sweep_%03zu", i);
        cfg.out_csv = std::string(suffix) + ".csv";
        cfg.out_json = std::string(suffix) + ".json";
        jobs.push_back(std::async(std::launch::async, [cfg, out_dir]() {
            try {
                return run(cfg, Command::Simulate, out_dir);
            } catch (const Error& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 1;
            }
        }));
    }
    int status = 0;
    for (auto& job : jobs) status = std::max(status, job.get());
    return status;
}

}  // namespace hydrosleigh
