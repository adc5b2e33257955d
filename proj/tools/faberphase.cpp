// faberphase — experiment driver for the phase-field Faber–Krahn library.
//
// Exit codes: 0 all checks pass, 1 property violation, 2 configuration error,
// 3 solver failure.  FABER_PHASE_THREADS caps sweep parallelism.  All outputs
// are written atomically (temp file + rename); seeds and tolerances are
// recorded next to every numeric claim.

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fk/coefficient.hpp"
#include "fk/domain.hpp"
#include "fk/eigen.hpp"
#include "fk/errors.hpp"
#include "fk/objective.hpp"
#include "fk/optimize.hpp"
#include "fk/potential.hpp"
#include "fk/profile.hpp"
#include "fk/rearrange.hpp"
#include "fk/rng.hpp"
#include "fk/shapes.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fk;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitProperty = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

int thread_cap() {
    int cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap < 1) cap = 1;
    if (const char* env = std::getenv("FABER_PHASE_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v < 1) throw ConfigError("FABER_PHASE_THREADS must be >= 1");
            cap = std::min(cap, v);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("FABER_PHASE_THREADS is not an integer");
        }
    }
    return cap;
}

void write_text_atomic(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string());
        os << content;
        if (!os) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

void write_json_atomic(const fs::path& path, const json& j) {
    write_text_atomic(path, j.dump(2) + "\n");
}

void write_field_atomic(const fs::path& path, const ScalarField& f) {
    std::ostringstream os;
    write_csv(os, f);
    write_text_atomic(path, os.str());
}

std::vector<double> parse_double_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ConfigError(std::string(what) + ": bad number '" + tok + "'");
        }
    }
    if (out.empty()) throw ConfigError(std::string(what) + ": empty list");
    return out;
}

// Options shared by the grid-based subcommands.
struct GridOpts {
    int n = 2;
    double R = 1.0;
    std::string grid = "radial";
    int resolution = 256;

    void attach(CLI::App* cmd) {
        cmd->add_option("--n", n, "space dimension (2 or 3)");
        cmd->add_option("--R", R, "domain radius");
        cmd->add_option("--grid", grid, "grid type: radial | cartesian")
            ->check(CLI::IsMember({"radial", "cartesian"}));
        cmd->add_option("--resolution", resolution, "nodes per radius / cells per axis");
    }
    GridPtr make() const {
        BallDomain dom(n, R);
        return grid == "radial" ? Grid::radial(dom, resolution)
                                : Grid::cartesian(dom, resolution);
    }
    json to_json() const {
        return {{"n", n}, {"R", R}, {"grid", grid}, {"resolution", resolution}};
    }
};

struct ModelOpts {
    std::string potential = "double-well";
    double beta_bar = 1.0;
    double kappa = 0.5;
    double c_half = -1.0;  // default 10/R^2, resolved at use

    void attach(CLI::App* cmd) {
        cmd->add_option("--potential", potential,
                        "potential: double-well | double-obstacle");
        cmd->add_option("--beta-bar", beta_bar, "coefficient scale beta_bar");
        cmd->add_option("--kappa", kappa, "growth exponent kappa");
        cmd->add_option("--c-half", c_half, "b^0(1/2); default 10/R^2");
    }
    CoefficientFamily family(const GridOpts& g) const {
        const double c = c_half > 0 ? c_half : 10.0 / (g.R * g.R);
        return CoefficientFamily(g.n, beta_bar, kappa, c);
    }
    json to_json(const GridOpts& g) const {
        return {{"potential", potential},
                {"beta_bar", beta_bar},
                {"kappa", kappa},
                {"c_half", c_half > 0 ? c_half : 10.0 / (g.R * g.R)}};
    }
};

// Phase-field specs accepted on the command line.
ScalarField make_phase_values(const GridPtr& g, const std::string& spec) {
    if (spec == "ones") return ScalarField(g, 1.0);
    if (spec == "zeros") return ScalarField(g, 0.0);
    if (spec.rfind("ball:", 0) == 0) {
        const double r = std::stod(spec.substr(5));
        std::vector<double> v(g->size());
        for (int i = 0; i < g->size(); ++i) v[i] = g->radii()[i] < r ? 1.0 : 0.0;
        return ScalarField(g, std::move(v));
    }
    if (spec.rfind("file:", 0) == 0) {
        std::ifstream is(spec.substr(5));
        if (!is) throw ConfigError("cannot open phase file " + spec.substr(5));
        return read_csv(is, g);
    }
    throw ConfigError("unknown phase spec '" + spec +
                      "' (expected ones | zeros | ball:<r> | file:<path>)");
}

PhaseField admissible_from_spec(const GridPtr& g, const std::string& spec) {
    ScalarField raw = make_phase_values(g, spec);
    std::vector<double> v = raw.values();
    for (int i = 0; i < g->size(); ++i)
        if (g->boundary_layer()[i]) v[i] = 0.0;
    ScalarField f(g, std::move(v));
    const double m = weighted_mean(f);
    if (m <= 0.0) throw ConfigError("phase spec '" + spec + "' has zero mass");
    return PhaseField(f, m);
}

InitField parse_init(const std::string& s) {
    if (s == "radial-bump") return InitField::RadialBump;
    if (s == "offset-bump") return InitField::OffsetBump;
    if (s == "seeded-noise") return InitField::SeededNoise;
    throw ConfigError("unknown init '" + s +
                      "' (expected radial-bump | offset-bump | seeded-noise)");
}

std::string trace_csv(const OptimizerTrace& trace) {
    std::ostringstream os;
    os << "iter,j,lambda1,energy,step,pg_norm,asymmetry\n";
    os.precision(17);
    for (const auto& r : trace.records)
        os << r.iter << ',' << r.j << ',' << r.lambda1 << ',' << r.energy << ','
           << r.step << ',' << r.pg_norm << ',' << r.asymmetry << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// subcommand bodies; each returns the process exit code
// ---------------------------------------------------------------------------

int run_eig(const GridOpts& go, const ModelOpts& mo, const std::string& phase,
            double eps, double tol, const fs::path& out, bool dump_eigenfunction) {
    auto g = go.make();
    const CoefficientFamily b = mo.family(go);
    const ScalarField phi = make_phase_values(g, phase);
    std::vector<double> bv(g->size());
    for (int i = 0; i < g->size(); ++i) bv[i] = b.b_eps(eps, phi[i]);
    const EigenPair pair = principal_eigenpair(OperatorHandle(g, std::move(bv)), tol);
    json j = {{"subcommand", "eig"},
              {"grid", go.to_json()},
              {"model", mo.to_json(go)},
              {"phase", phase},
              {"eps", eps},
              {"lambda1", pair.lambda},
              {"residual", pair.residual},
              {"iterations", pair.iterations},
              {"tolerance", tol}};
    write_json_atomic(out / "eig.json", j);
    if (dump_eigenfunction) write_field_atomic(out / "eigenfunction.csv", pair.w);
    std::cout << "lambda1 = " << pair.lambda << " (residual " << pair.residual
              << ", tol " << tol << ")\n";
    return kExitOk;
}

int run_sharp_eig(const GridOpts& go, const std::string& shape_spec, double tol,
                  const fs::path& out) {
    auto g = go.make();
    const SharpShape shape = SharpShape::parse(shape_spec);
    json j = {{"subcommand", "sharp-eig"},
              {"grid", go.to_json()},
              {"shape", shape.describe()},
              {"tolerance", tol}};
    try {
        const EigenPair pair = sharp_eigenvalue(g, shape, tol);
        j["lambda1"] = pair.lambda;
        j["residual"] = pair.residual;
        j["iterations"] = pair.iterations;
        std::cout << "lambda1 = " << pair.lambda << " (residual " << pair.residual
                  << ", tol " << tol << ")\n";
    } catch (const TrivialSpaceError&) {
        j["lambda1"] = "inf";
        std::cout << "lambda1 = inf (trivial restricted space)\n";
    }
    write_json_atomic(out / "sharp_eig.json", j);
    return kExitOk;
}

int run_energy(const GridOpts& go, const ModelOpts& mo, const std::string& phase,
               double eps, double gamma, double tol, const fs::path& out) {
    auto g = go.make();
    const Potential psi = Potential::by_name(mo.potential);
    const CoefficientFamily b = mo.family(go);
    const PhaseField phi = admissible_from_spec(g, phase);
    EigenOptions opt;
    opt.tol = tol;
    const EnergyBreakdown e = j_eps(phi, eps, gamma, psi, b, opt);
    json j = {{"subcommand", "energy"},
              {"grid", go.to_json()},
              {"model", mo.to_json(go)},
              {"phase", phase},
              {"mass", phi.mass()},
              {"eps", eps},
              {"gamma", gamma},
              {"gradient_term", e.gradient_term},
              {"potential_term", e.potential_term},
              {"energy", e.total},
              {"lambda1", e.lambda1},
              {"j", e.j},
              {"eigen_residual", e.eigen_residual},
              {"tolerance", tol}};
    write_json_atomic(out / "energy.json", j);
    std::cout << "E^eps = " << e.total << ", lambda1 = " << e.lambda1
              << ", J = " << e.j << " (eigen tol " << tol << ")\n";
    return kExitOk;
}

json minimize_summary(const OptimizerConfig& cfg, const MinimizeResult& res,
                      const Potential& psi, double delta, double calibrated_c) {
    const auto& last = res.trace.records.back();
    const CertificationReport rep = certify_minimizer(
        res.phi, res.eigenpair, cfg.eps, cfg.gamma, delta, psi, calibrated_c);
    return {{"eps", cfg.eps},
            {"gamma", cfg.gamma},
            {"mass", cfg.mass},
            {"seed", cfg.seed},
            {"iterations", last.iter},
            {"converged", res.trace.converged},
            {"message", res.trace.message},
            {"j", last.j},
            {"lambda1", last.lambda1},
            {"energy", last.energy},
            {"pg_norm", last.pg_norm},
            {"pg_tolerance", cfg.tol},
            {"asymmetry", rep.asymmetry},
            {"eigen_asymmetry", rep.eigen_asymmetry},
            {"delta", delta},
            {"interface_measure", rep.interface},
            {"interface_bound", rep.bound},
            {"calibrated_c", rep.calibrated_c},
            {"interface_ok", rep.interface_ok},
            {"eigen_tolerance", cfg.eigen_tol},
            {"symmetrize_every", cfg.symmetrize_every}};
}

int run_minimize(const GridOpts& go, const ModelOpts& mo, OptimizerConfig cfg,
                 const std::string& init, double delta, const fs::path& out) {
    auto g = go.make();
    const Potential psi = Potential::by_name(mo.potential);
    const CoefficientFamily b = mo.family(go);
    cfg.init = parse_init(init);
    const MinimizeResult res = minimize(cfg, g, psi, b);
    const double C = calibrate_interface_constant(g, psi, b, cfg.gamma, cfg.mass,
                                                  {2 * cfg.eps, cfg.eps});
    json j = minimize_summary(cfg, res, psi, delta, C);
    j["subcommand"] = "minimize";
    j["grid"] = go.to_json();
    j["model"] = mo.to_json(go);
    write_json_atomic(out / "minimize.json", j);
    write_text_atomic(out / "trace.csv", trace_csv(res.trace));
    write_field_atomic(out / "phi.csv", res.phi.field());
    write_field_atomic(out / "eigenfunction.csv", res.eigenpair.w);
    std::cout << "J = " << j["j"].get<double>() << " after "
              << j["iterations"].get<int>() << " iterations (pg tol " << cfg.tol
              << "), asymmetry = " << j["asymmetry"].get<double>()
              << " (seed " << cfg.seed << ")\n";
    return kExitOk;
}

int run_sweep(const GridOpts& go, const ModelOpts& mo, const std::string& eps_list,
              const std::string& gamma_list, const std::string& seed_list,
              OptimizerConfig base, const std::string& init, double delta,
              const fs::path& out) {
    auto g = go.make();
    const Potential psi = Potential::by_name(mo.potential);
    const CoefficientFamily b = mo.family(go);
    base.init = parse_init(init);

    struct Task {
        OptimizerConfig cfg;
        std::string tag;
        json summary;
        std::string error;
        int code = kExitOk;
    };
    std::vector<Task> tasks;
    for (double eps : parse_double_list(eps_list, "--eps"))
        for (double gamma : parse_double_list(gamma_list, "--gamma"))
            for (double seed : parse_double_list(seed_list, "--seeds")) {
                Task t;
                t.cfg = base;
                t.cfg.eps = eps;
                t.cfg.gamma = gamma;
                t.cfg.seed = static_cast<std::uint64_t>(seed);
                std::ostringstream tag;
                tag << "eps" << eps << "_gamma" << gamma << "_seed" << t.cfg.seed;
                t.tag = tag.str();
                tasks.push_back(std::move(t));
            }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next.fetch_add(1); k < tasks.size();
             k = next.fetch_add(1)) {
            Task& t = tasks[k];
            try {
                const MinimizeResult res = minimize(t.cfg, g, psi, b);
                const double C = calibrate_interface_constant(
                    g, psi, b, t.cfg.gamma, t.cfg.mass, {2 * t.cfg.eps, t.cfg.eps});
                t.summary = minimize_summary(t.cfg, res, psi, delta, C);
                write_text_atomic(out / ("trace_" + t.tag + ".csv"),
                                  trace_csv(res.trace));
                write_field_atomic(out / ("phi_" + t.tag + ".csv"), res.phi.field());
            } catch (const ConfigError& e) {
                t.error = e.what();
                t.code = kExitConfig;
            } catch (const SolverError& e) {
                t.error = e.what();
                t.code = kExitSolver;
            }
        }
    };
    const int nthreads = std::min<int>(thread_cap(), static_cast<int>(tasks.size()));
    std::vector<std::thread> pool;
    for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    json rows = json::array();
    int code = kExitOk;
    for (const auto& t : tasks) {
        if (!t.error.empty()) {
            rows.push_back({{"task", t.tag}, {"error", t.error}});
            code = std::max(code, t.code);
        } else {
            json row = t.summary;
            row["task"] = t.tag;
            rows.push_back(std::move(row));
        }
    }
    json j = {{"subcommand", "sweep"},
              {"grid", go.to_json()},
              {"model", mo.to_json(go)},
              {"threads", nthreads},
              {"tasks", rows}};
    write_json_atomic(out / "sweep.json", j);
    std::cout << tasks.size() << " tasks on " << nthreads << " threads -> "
              << (out / "sweep.json").string() << "\n";
    return code;
}

int run_rearrange_check(std::uint64_t seed, int trials, int resolution,
                        const fs::path& out) {
    if (trials < 1) throw ConfigError("--trials must be >= 1");
    auto g = Grid::cartesian(BallDomain(2, 1.0), resolution);
    Rng rng(seed);
    auto random_field = [&](bool zero_boundary) {
        std::vector<double> v(g->size());
        for (int i = 0; i < g->size(); ++i)
            v[i] = (zero_boundary && g->boundary_layer()[i]) ? 0.0 : rng.uniform();
        return ScalarField(g, std::move(v));
    };
    int violations = 0;
    auto tally = [&](bool ok) { violations += ok ? 0 : 1; };
    for (int t = 0; t < trials; ++t) {
        const ScalarField f = random_field(false), h = random_field(false);
        for (int p : {1, 2, 0}) tally(check_norm_preservation(f, p).ok);
        tally(check_hardy_littlewood(f, h).ok);
        tally(check_nonexpansivity(f, h, [](double d) { return std::abs(d); }).ok);
        tally(check_nonexpansivity(f, h, [](double d) { return d * d; }).ok);
        tally(check_polya_szego(random_field(true)).ok);
    }
    json j = {{"subcommand", "rearrange-check"},
              {"seed", seed},
              {"trials", trials},
              {"resolution", resolution},
              {"checks_per_trial", 7},
              {"violations", violations},
              {"slack", 1e-13},
              {"polya_szego_slack_rel", 1e-2}};
    write_json_atomic(out / "rearrange_check.json", j);
    std::cout << trials << " trials, " << violations
              << " violations (exact checks at 1e-13 slack)\n";
    return violations == 0 ? kExitOk : kExitProperty;
}

int run_profile(const std::string& potential, double t_max, const fs::path& out) {
    const Potential psi = Potential::by_name(potential);
    const ProfileSolution sol = solve_profile(psi, t_max);
    std::ostringstream csv;
    csv << "index,r_or_x,value\n";
    csv.precision(17);
    const int samples = 2000;
    for (int k = 0; k <= samples; ++k) {
        const double t = -t_max + 2.0 * t_max * k / samples;
        csv << k << ',' << t << ',' << sol.eta(t) << '\n';
    }
    write_text_atomic(out / "profile.csv", csv.str());
    json j = {{"subcommand", "profile"},
              {"potential", potential},
              {"t_max", t_max},
              {"ode_step", sol.step()},
              {"eta_at_0", sol.eta(0.0)}};
    auto put_opt = [&](const char* key, const std::optional<double>& v) {
        if (v) j[key] = *v;
    };
    put_opt("hit_zero", sol.hit_zero());
    put_opt("hit_one", sol.hit_one());
    auto put_fit = [&](const char* key, const std::optional<ProfileSolution::TailFit>& f) {
        if (f) j[key] = {{"c", f->c}, {"rate", f->rate}, {"fit_residual", f->residual}};
    };
    put_fit("tail_zero", sol.tail_zero());
    put_fit("tail_one", sol.tail_one());
    write_json_atomic(out / "profile.json", j);
    std::cout << "profile for " << potential << " written (RK4 step "
              << sol.step() << ")\n";
    return kExitOk;
}

int run_gamma_check(const GridOpts& go, const ModelOpts& mo,
                    const std::string& shape_spec, const std::string& eps_list,
                    double gamma, double tol, const fs::path& out) {
    auto g = go.make();
    const Potential psi = Potential::by_name(mo.potential);
    const CoefficientFamily b = mo.family(go);
    const SharpShape shape = SharpShape::parse(shape_spec);
    const auto rows =
        gamma_check(shape, parse_double_list(eps_list, "--eps"), g, gamma, psi, b, tol);
    std::ostringstream csv;
    csv << "eps,energy,f_eps,f_zero,lambda_eps,lambda_sharp,energy_gap,eigen_gap,"
           "penalty,l1_distance\n";
    csv.precision(17);
    json jrows = json::array();
    for (const auto& r : rows) {
        csv << r.eps << ',' << r.energy << ',' << r.f_eps << ',' << r.f_zero << ','
            << r.lambda_eps << ',' << r.lambda_sharp << ',' << r.energy_gap << ','
            << r.eigen_gap << ',' << r.penalty << ',' << r.l1_distance << '\n';
        jrows.push_back({{"eps", r.eps},
                         {"energy", r.energy},
                         {"f_eps", r.f_eps},
                         {"f_zero", r.f_zero},
                         {"lambda_eps", r.lambda_eps},
                         {"lambda_sharp", r.lambda_sharp},
                         {"energy_gap", r.energy_gap},
                         {"eigen_gap", r.eigen_gap},
                         {"penalty", r.penalty},
                         {"l1_distance", r.l1_distance}});
    }
    write_text_atomic(out / "gamma_check.csv", csv.str());
    write_json_atomic(out / "gamma_check.json",
                      {{"subcommand", "gamma-check"},
                       {"grid", go.to_json()},
                       {"model", mo.to_json(go)},
                       {"shape", shape.describe()},
                       {"gamma", gamma},
                       {"eigen_tolerance", tol},
                       {"rows", jrows}});
    std::cout << rows.size() << " rows; smallest eps gap |f_eps - f_zero| = "
              << std::abs(rows.back().f_eps - rows.back().f_zero)
              << " (eigen tol " << tol << ")\n";
    return kExitOk;
}

int run_fk_compare(const GridOpts& go, const std::string& shapes_spec, double tol,
                   const fs::path& out) {
    auto g = go.make();
    if (g->kind() != GridKind::Cartesian)
        throw ConfigError("fk-compare requires a cartesian grid");
    std::vector<std::string> specs;
    std::stringstream ss(shapes_spec);
    std::string tok;
    while (std::getline(ss, tok, '|')) specs.push_back(tok);
    if (specs.size() < 2) throw ConfigError("--shapes needs >= 2 '|'-separated shapes");
    json rows = json::array();
    double best = std::numeric_limits<double>::infinity();
    std::string best_shape;
    bool disk_present = false;
    double disk_lambda = 0.0;
    for (const auto& spec : specs) {
        const SharpShape shape = SharpShape::parse(spec);
        shape.validate_inside(g->domain());
        const EigenPair pair = sharp_eigenvalue(g, shape, tol);
        rows.push_back({{"shape", shape.describe()},
                        {"volume", shape.volume(g->domain().dim)},
                        {"lambda1", pair.lambda},
                        {"residual", pair.residual}});
        if (pair.lambda < best) {
            best = pair.lambda;
            best_shape = shape.describe();
        }
        if (spec.rfind("ball:", 0) == 0) {
            disk_present = true;
            disk_lambda = pair.lambda;
        }
        std::cout << shape.describe() << ": lambda1 = " << pair.lambda
                  << " (tol " << tol << ")\n";
    }
    // Faber-Krahn: the disk must rank first when it is in the lineup
    const bool fk_ok = !disk_present || disk_lambda <= best * (1.0 + 1e-12);
    write_json_atomic(out / "fk_compare.json", {{"subcommand", "fk-compare"},
                                                {"grid", go.to_json()},
                                                {"tolerance", tol},
                                                {"rows", rows},
                                                {"minimizer", best_shape},
                                                {"faber_krahn_ok", fk_ok}});
    std::cout << "minimizer: " << best_shape << (fk_ok ? "" : "  [VIOLATION]") << "\n";
    return fk_ok ? kExitOk : kExitProperty;
}

int run_check_assumptions(const GridOpts& go, const ModelOpts& mo,
                          const fs::path& out) {
    const CoefficientFamily b = mo.family(go);
    json rows = json::array();
    bool all_ok = true;
    for (const auto& c : b.check_assumptions()) {
        rows.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
        all_ok = all_ok && c.ok;
        std::cout << (c.ok ? "  ok  " : " FAIL ") << c.name << ": " << c.detail << "\n";
    }
    // construction of the built-in potentials runs their validation
    for (const char* name : {"double-well", "double-obstacle"}) {
        bool ok = true;
        std::string detail = "psi(0)=psi(1)=0, psi>0 on (0,1), endpoints non-degenerate";
        try {
            (void)Potential::by_name(name);
        } catch (const ConfigError& e) {
            ok = false;
            detail = e.what();
        }
        rows.push_back(
            {{"name", std::string("potential:") + name}, {"ok", ok}, {"detail", detail}});
        all_ok = all_ok && ok;
    }
    write_json_atomic(out / "check_assumptions.json",
                      {{"subcommand", "check-assumptions"},
                       {"model", mo.to_json(go)},
                       {"all_ok", all_ok},
                       {"checks", rows}});
    return all_ok ? kExitOk : kExitProperty;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "faberphase: phase-field Faber-Krahn experiments.\n"
        "Field CSVs use the header index,r_or_x,y,value (radial grids omit y);\n"
        "optimizer traces use iter,j,lambda1,energy,step,pg_norm,asymmetry.\n"
        "Exit codes: 0 pass, 1 property violation, 2 config error, 3 solver failure."};
    app.require_subcommand(1);
    app.set_config("--config", "", "key = value config file; flags override");
    app.allow_config_extras(CLI::config_extras_mode::error);

    GridOpts go;
    ModelOpts mo;
    std::string out_dir = ".";
    std::string phase = "ones", shape = "ball:0.5", init = "offset-bump";
    std::string eps_list = "0.05", gamma_list = "0.01", seed_list = "1";
    std::string shapes = "ball:1|rectangle:1.7724538509055159,1.7724538509055159";
    double eps = 0.05, gamma = 0.01, tol = 1e-8, delta = 0.1, t_max = 30.0;
    bool dump_eigenfunction = false;
    OptimizerConfig cfg;
    std::uint64_t seed = 1;
    int trials = 1000, rc_resolution = 20;

    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_dir, "output directory");
    };

    CLI::App* eig = app.add_subcommand("eig", "principal eigenvalue of -Lap + b^eps(phi)");
    go.attach(eig);
    mo.attach(eig);
    add_out(eig);
    eig->add_option("--phase", phase, "ones | zeros | ball:<r> | file:<csv>");
    eig->add_option("--eps", eps, "diffuseness eps");
    eig->add_option("--tol", tol, "eigen residual tolerance");
    eig->add_flag("--eigenfunction", dump_eigenfunction, "also write eigenfunction.csv");

    CLI::App* sharp = app.add_subcommand("sharp-eig", "Dirichlet eigenvalue of a sharp shape");
    go.attach(sharp);
    add_out(sharp);
    sharp->add_option("--shape", shape, "shape spec, e.g. ball:0.5 or annulus:0.3,0.6");
    sharp->add_option("--tol", tol, "eigen residual tolerance");

    CLI::App* energy = app.add_subcommand("energy", "E^eps and J^eps_gamma of a phase field");
    go.attach(energy);
    mo.attach(energy);
    add_out(energy);
    energy->add_option("--phase", phase, "ones | zeros | ball:<r> | file:<csv>");
    energy->add_option("--eps", eps, "diffuseness eps");
    energy->add_option("--gamma", gamma, "perimeter weight gamma");
    energy->add_option("--tol", tol, "eigen residual tolerance");

    CLI::App* mini = app.add_subcommand("minimize", "projected gradient descent on J^eps_gamma");
    go.attach(mini);
    mo.attach(mini);
    add_out(mini);
    mini->add_option("--eps", cfg.eps, "diffuseness eps");
    mini->add_option("--gamma", cfg.gamma, "perimeter weight gamma");
    mini->add_option("--m", cfg.mass, "mass fraction m");
    mini->add_option("--max-iterations", cfg.max_iterations, "iteration cap");
    mini->add_option("--pg-tol", cfg.tol, "projected-gradient stopping tolerance");
    mini->add_option("--eigen-tol", cfg.eigen_tol, "inner eigen tolerance");
    mini->add_option("--symmetrize-every", cfg.symmetrize_every,
                     "try the rearranged iterate every k iterations (0 disables)");
    mini->add_option("--init", init, "radial-bump | offset-bump | seeded-noise");
    mini->add_option("--seed", cfg.seed, "RNG seed (seeded-noise init)");
    mini->add_option("--delta", delta, "interface threshold delta");

    CLI::App* sweep = app.add_subcommand("sweep", "minimize over (eps, gamma, seed) triples");
    go.attach(sweep);
    mo.attach(sweep);
    add_out(sweep);
    sweep->add_option("--eps", eps_list, "comma-separated eps values");
    sweep->add_option("--gamma", gamma_list, "comma-separated gamma values");
    sweep->add_option("--seeds", seed_list, "comma-separated seeds");
    sweep->add_option("--m", cfg.mass, "mass fraction m");
    sweep->add_option("--max-iterations", cfg.max_iterations, "iteration cap");
    sweep->add_option("--pg-tol", cfg.tol, "projected-gradient stopping tolerance");
    sweep->add_option("--eigen-tol", cfg.eigen_tol, "inner eigen tolerance");
    sweep->add_option("--init", init, "radial-bump | offset-bump | seeded-noise");
    sweep->add_option("--delta", delta, "interface threshold delta");

    CLI::App* rc = app.add_subcommand("rearrange-check", "exact rearrangement inequality suite");
    add_out(rc);
    rc->add_option("--seed", seed, "RNG seed");
    rc->add_option("--trials", trials, "number of random trials");
    rc->add_option("--resolution", rc_resolution, "cells per axis of the test grid");

    CLI::App* prof = app.add_subcommand("profile", "optimal interface profile ODE");
    add_out(prof);
    prof->add_option("--potential", mo.potential, "double-well | double-obstacle");
    prof->add_option("--t-max", t_max, "integration horizon (>= 20)");

    CLI::App* gc = app.add_subcommand("gamma-check", "recovery-sequence convergence table");
    go.attach(gc);
    mo.attach(gc);
    add_out(gc);
    gc->add_option("--shape", shape, "target shape spec");
    gc->add_option("--eps", eps_list, "comma-separated, strictly decreasing eps");
    gc->add_option("--gamma", gamma, "perimeter weight gamma");
    gc->add_option("--tol", tol, "eigen residual tolerance");

    CLI::App* fk = app.add_subcommand("fk-compare", "rank sharp shapes by lambda1");
    go.attach(fk);
    add_out(fk);
    fk->add_option("--shapes", shapes, "'|'-separated shape specs");
    fk->add_option("--tol", tol, "eigen residual tolerance");

    CLI::App* ca = app.add_subcommand("check-assumptions", "coefficient/potential assumption report");
    go.attach(ca);
    mo.attach(ca);
    add_out(ca);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        const fs::path out(out_dir);
        fs::create_directories(out);
        if (eig->parsed())
            return run_eig(go, mo, phase, eps, tol, out, dump_eigenfunction);
        if (sharp->parsed()) return run_sharp_eig(go, shape, tol, out);
        if (energy->parsed()) return run_energy(go, mo, phase, eps, gamma, tol, out);
        if (mini->parsed()) return run_minimize(go, mo, cfg, init, delta, out);
        if (sweep->parsed())
            return run_sweep(go, mo, eps_list, gamma_list, seed_list, cfg, init,
                             delta, out);
        if (rc->parsed()) return run_rearrange_check(seed, trials, rc_resolution, out);
        if (prof->parsed()) return run_profile(mo.potential, t_max, out);
        if (gc->parsed())
            return run_gamma_check(go, mo, shape, eps_list, gamma, tol, out);
        if (fk->parsed()) return run_fk_compare(go, shapes, tol, out);
        if (ca->parsed()) return run_check_assumptions(go, mo, out);
        std::cerr << "no subcommand\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
}
