// Command-line front end: Fisher bundles, chemical-potential solutions,
// uncertainty-region geometry, figure data (CSV + SVG), the closed-form
// verification suite, and operator dumps.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qcrb/bounds.hpp"
#include "qcrb/closed_forms.hpp"
#include "qcrb/svg.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace qcrb;

constexpr const char* kVersion = "qcrb 1.0.0";

// Exit codes per the interface contract.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCutoff = 3;
constexpr int kExitVerification = 4;
constexpr int kExitIo = 5;

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

// ---------------------------------------------------------------------------
// Scenario configuration shared by fisher / region / verify-style commands.

struct ScenarioFlags {
    std::string generators = "canonical";
    std::string state = "pure";
    double eB = 1.0;
    double beta_omega = 0.0;
    double L0 = 0.0;
    double mu = 0.0;
    std::vector<int> cutoff;  // empty = auto / env
    std::string config_path;
};

struct Scenario {
    closed_forms::ScenarioKey key;
    PhysicalConstants constants;
    std::optional<states::ThermalParams> thermal;
    FockCutoff cutoff;
    bool cutoff_overridden = false;
};

void add_scenario_options(CLI::App* cmd, ScenarioFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file; flags override its values");
    cmd->add_option("--generators", f.generators, "canonical | mechanical")
        ->check(CLI::IsMember({"canonical", "mechanical"}));
    cmd->add_option("--state", f.state, "pure | thermal")
        ->check(CLI::IsMember({"pure", "thermal"}));
    cmd->add_option("--eB", f.eB, "field strength eB > 0 (lambda = sqrt(2/eB))");
    cmd->add_option("--beta-omega", f.beta_omega, "inverse temperature times omega");
    cmd->add_option("--L0", f.L0, "target <L>_0 (thermal)");
    cmd->add_option("--mu", f.mu, "chemical potential (thermal, alternative to --L0)");
    cmd->add_option("--cutoff", f.cutoff, "Fock cutoff n_a n_b")->expected(2);
}

// Fill in any flag the user did not pass from the JSON config file.
void apply_json_config(CLI::App* cmd, ScenarioFlags& f) {
    if (f.config_path.empty()) return;
    std::ifstream in(f.config_path);
    if (!in) throw IoFailure("cannot open config file " + f.config_path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    auto unset = [&](const char* flag) { return cmd->count(flag) == 0; };
    if (cfg.contains("generators") && unset("--generators"))
        f.generators = cfg["generators"].get<std::string>();
    if (cfg.contains("state") && unset("--state")) f.state = cfg["state"].get<std::string>();
    if (cfg.contains("eB") && unset("--eB")) f.eB = cfg["eB"].get<double>();
    if (cfg.contains("beta_omega") && !cmd->get_option("--beta-omega")->count()) {
        f.beta_omega = cfg["beta_omega"].get<double>();
        cmd->get_option("--beta-omega")->add_result(std::to_string(f.beta_omega));
    }
    if (cfg.contains("L0") && unset("--L0")) {
        f.L0 = cfg["L0"].get<double>();
        cmd->get_option("--L0")->add_result(std::to_string(f.L0));
    }
    if (cfg.contains("mu") && unset("--mu")) {
        f.mu = cfg["mu"].get<double>();
        cmd->get_option("--mu")->add_result(std::to_string(f.mu));
    }
    if (cfg.contains("cutoff") && unset("--cutoff"))
        f.cutoff = cfg["cutoff"].get<std::vector<int>>();
}

std::optional<FockCutoff> env_cutoff() {
    const char* env = std::getenv("QCRB_DEFAULT_CUTOFF");
    if (!env || !*env) return std::nullopt;
    int na = 0, nb = 0;
    if (std::sscanf(env, "%d,%d", &na, &nb) == 2) return FockCutoff{na, nb};
    if (std::sscanf(env, "%d", &na) == 1) return FockCutoff{na, na};
    throw ConfigError("QCRB_DEFAULT_CUTOFF must be 'n' or 'n_a,n_b'");
}

Scenario resolve_scenario(const CLI::App* cmd, const ScenarioFlags& f) {
    const bool thermal = f.state == "thermal";
    const bool have_bw = cmd->get_option("--beta-omega")->count() > 0;
    const bool have_l0 = cmd->get_option("--L0")->count() > 0;
    const bool have_mu = cmd->get_option("--mu")->count() > 0;

    if (thermal) {
        if (!have_bw) throw ConfigError("thermal state requires --beta-omega");
        if (have_l0 == have_mu)
            throw ConfigError("thermal state requires exactly one of --L0 / --mu");
    } else if (have_bw || have_l0 || have_mu) {
        throw ConfigError("pure state forbids --beta-omega/--L0/--mu");
    }

    Scenario s{{f.generators == "canonical" ? closed_forms::Generators::Canonical
                                            : closed_forms::Generators::Mechanical,
                thermal ? closed_forms::StateFamily::Thermal : closed_forms::StateFamily::Pure},
               PhysicalConstants(f.eB),
               std::nullopt,
               FockCutoff{20, 20},
               false};

    if (thermal) {
        s.thermal = have_l0 ? states::thermal_params_from(f.L0, f.beta_omega)
                            : states::thermal_params_from_mu(f.mu, f.beta_omega);
        s.cutoff = states::auto_cutoff(*s.thermal);
    }

    if (!f.cutoff.empty()) {
        s.cutoff = {f.cutoff[0], f.cutoff[1]};
        s.cutoff_overridden = true;
    } else if (auto env = env_cutoff()) {
        s.cutoff = *env;
        s.cutoff_overridden = true;
    }
    s.cutoff.validate();
    return s;
}

closed_forms::ScenarioParams scenario_params(const Scenario& s) {
    closed_forms::ScenarioParams p{s.constants, 0.0, 0.0};
    if (s.thermal) {
        p.kappa_a_sq = s.thermal->kappa_a_sq;
        p.kappa_b_sq = s.thermal->kappa_b_sq;
    }
    return p;
}

states::ReferenceState build_state(const Scenario& s) {
    if (!s.thermal) return states::build_pure_lll(s.cutoff);
    // An explicit cutoff override shifts responsibility for the tail to the
    // caller; keep a coarse guard so absurd cutoffs still exit with code 3.
    const double weight_tol = s.cutoff_overridden ? 1e-6 : 1e-8;
    return states::build_thermal_state(*s.thermal, s.cutoff, weight_tol);
}

qfi::GeneratorPair build_generators(const Scenario& s) {
    if (s.key.generators == closed_forms::Generators::Canonical) {
        auto ops = fock::canonical_operators(s.cutoff, s.constants);
        return {ops.p_x, ops.p_y};
    }
    auto ops = fock::mechanical_operators(s.cutoff, s.constants);
    return {ops.pi_x, ops.pi_y};
}

// ---------------------------------------------------------------------------
// JSON encoding of a Fisher bundle.

json encode_real(const qfi::Matrix2r& m) {
    return json::array({json::array({m(0, 0), m(0, 1)}), json::array({m(1, 0), m(1, 1)})});
}

json encode_complex(const qfi::Matrix2c& m) {
    auto entry = [](Complex z) { return json::array({z.real(), z.imag()}); };
    return json::array({json::array({entry(m(0, 0)), entry(m(0, 1))}),
                        json::array({entry(m(1, 0)), entry(m(1, 1))})});
}

json encode_bundle(const qfi::FisherBundle& b) {
    json out;
    out["g_s"] = encode_real(b.g_s);
    out["g_r"] = encode_complex(b.g_r);
    out["z"] = encode_complex(b.z);
    out["g_s_inv"] = encode_real(b.g_s_inv);
    out["g_r_inv"] = encode_complex(b.g_r_inv);
    out["d_invariant"] = b.d_invariant;
    out["ordering_case"] = bounds::to_string(b.ordering_case);
    out["pure_state"] = b.pure_state;
    return out;
}

double rel_err(const qfi::Matrix2c& num, const qfi::Matrix2c& ref) {
    const double scale = std::max(ref.cwiseAbs().maxCoeff(), 1e-300);
    return (num - ref).cwiseAbs().maxCoeff() / scale;
}

double rel_err(const qfi::Matrix2r& num, const qfi::Matrix2r& ref) {
    return rel_err(qfi::Matrix2c(num.cast<Complex>()), qfi::Matrix2c(ref.cast<Complex>()));
}

// ---------------------------------------------------------------------------
// Output plumbing.

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw IoFailure("cannot open " + path);
    out << content;
    if (!out.good()) throw IoFailure("write failed for " + path);
}

// Emits to stdout when path is empty.
void emit(const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        write_text_file(path, content);
}

// ---------------------------------------------------------------------------
// fisher

int cmd_fisher(const CLI::App* cmd, const ScenarioFlags& flags, bool verify,
               double tolerance) {
    const Scenario s = resolve_scenario(cmd, flags);
    const auto params = scenario_params(s);
    const auto closed = closed_forms::closed_fisher(s.key, params);

    json out;
    out["version"] = kVersion;
    out["eB"] = s.constants.eB();
    out["lambda_sq"] = s.constants.lambda_sq();
    out["generators"] = flags.generators;
    out["state"] = flags.state;
    if (s.thermal) {
        out["beta_omega"] = s.thermal->beta_omega;
        out["mu"] = s.thermal->mu;
        out["L0"] = s.thermal->L0;
        out["kappa_a_sq"] = s.thermal->kappa_a_sq;
        out["kappa_b_sq"] = s.thermal->kappa_b_sq;
    }
    out.update(encode_bundle(closed));

    // lambda^2-normalized block: Fisher matrices scale as lambda^-2, their
    // inverses and Z as lambda^2, so these entries are eB-independent.
    const double l2 = s.constants.lambda_sq();
    json norm;
    norm["g_s"] = encode_real((l2 * closed.g_s).eval());
    norm["g_r"] = encode_complex((l2 * closed.g_r).eval());
    norm["z"] = encode_complex((closed.z / l2).eval());
    norm["g_s_inv"] = encode_real((closed.g_s_inv / l2).eval());
    norm["g_r_inv"] = encode_complex((closed.g_r_inv / l2).eval());
    out["lambda_sq_normalized"] = norm;

    bool failed = false;
    if (verify) {
        const auto state = build_state(s);
        const auto numeric = qfi::fisher_matrices(state, build_generators(s));
        json errs;
        errs["g_s"] = rel_err(numeric.g_s, closed.g_s);
        errs["g_r"] = rel_err(numeric.g_r, closed.g_r);
        errs["z"] = rel_err(numeric.z, closed.z);
        errs["g_s_inv"] = rel_err(numeric.g_s_inv, closed.g_s_inv);
        errs["g_r_inv"] = rel_err(numeric.g_r_inv, closed.g_r_inv);
        out["max_rel_err"] = errs;
        out["tolerance"] = tolerance;
        for (const auto& [key, value] : errs.items())
            if (value.get<double>() > tolerance) failed = true;
        out["verified"] = !failed;
    }

    std::cout << out.dump(2) << "\n";
    return failed ? kExitVerification : kExitOk;
}

// ---------------------------------------------------------------------------
// chempot

int cmd_chempot(bool sweep, double beta_omega, bool have_l0, double L0,
                const std::vector<double>& beta_omegas, double l0_min, double l0_max,
                double l0_step, const std::string& output) {
    if (!sweep) {
        if (!have_l0) throw ConfigError("chempot requires --L0 (or --sweep)");
        const double mu = states::solve_chemical_potential(L0, beta_omega);
        std::ostringstream os;
        os << sig(mu, 15) << "\n";
        emit(output, os.str());
        return kExitOk;
    }

    std::ostringstream os;
    os << "# " << kVersion << "\n" << "beta_omega,L0,mu\n";
    for (double bw : beta_omegas) {
        const int steps = static_cast<int>(std::lround((l0_max - l0_min) / l0_step));
        for (int i = 0; i <= steps; ++i) {
            const double l0 = l0_min + i * l0_step;
            os << sig(bw, 12) << "," << sig(l0, 12) << ","
               << sig(states::solve_chemical_potential(l0, bw), 12) << "\n";
        }
    }
    emit(output, os.str());
    return kExitOk;
}

// ---------------------------------------------------------------------------
// region

std::string region_csv(const std::vector<bounds::BoundarySample>& samples, double scale,
                       const std::string& curve_prefix = "") {
    std::ostringstream os;
    for (const auto& p : samples)
        os << curve_prefix << p.curve << "," << bounds::to_string(p.kind) << ","
           << sig(p.v11 / scale, 12) << "," << sig(p.v22 / scale, 12) << "\n";
    return os.str();
}

int cmd_region(const CLI::App* cmd, const ScenarioFlags& flags, double v11_max, int samples,
               bool normalized, const std::string& output) {
    const Scenario s = resolve_scenario(cmd, flags);
    const auto bundle = closed_forms::closed_fisher(s.key, scenario_params(s));
    const auto region = bounds::region_from_bundle(bundle);
    const auto pts = bounds::boundary_samples(region, v11_max, samples);
    const double scale = normalized ? s.constants.lambda_sq() : 1.0;

    std::ostringstream os;
    os << "# " << kVersion << "\n" << "curve,kind,v11,v22\n" << region_csv(pts, scale);
    emit(output, os.str());
    return kExitOk;
}

// ---------------------------------------------------------------------------
// figure

std::vector<double> l0_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 160; ++i) grid.push_back(-4.0 + 0.05 * i);
    return grid;
}

svg::LineStyle style_of(int i) {
    switch (i % 3) {
        case 0: return svg::LineStyle::Solid;
        case 1: return svg::LineStyle::Dashed;
        default: return svg::LineStyle::Dotted;
    }
}

const char* color_of(int i) {
    static const char* colors[] = {"#1f6fb2", "#c23b22", "#2e8540"};
    return colors[i % 3];
}

int cmd_figure(int n, const std::string& dir, double eB) {
    const PhysicalConstants constants(eB);
    const std::vector<double> betas = {0.1, 1.0, 5.0};
    const std::string base = dir + "/figure-" + std::to_string(n);
    std::ostringstream csv;
    csv << "# " << kVersion << "\n";
    svg::Figure fig;

    if (n == 1) {
        csv << "beta_omega,L0,mu\n";
        fig = {"Chemical potential", "<L>_0", "mu", {}};
        for (size_t i = 0; i < betas.size(); ++i) {
            svg::Series series{"beta*omega = " + sig(betas[i], 6), style_of(static_cast<int>(i)),
                               color_of(static_cast<int>(i)), {}};
            for (double l0 : l0_grid()) {
                const double mu = states::solve_chemical_potential(l0, betas[i]);
                csv << sig(betas[i], 12) << "," << sig(l0, 12) << "," << sig(mu, 12) << "\n";
                series.points.push_back({l0, mu});
            }
            fig.series.push_back(std::move(series));
        }
    } else if (n == 2) {
        csv << "curve,kind,v11,v22\n";
        fig = {"Uncertainty region, thermal canonical model", "V11", "V22", {}};
        const auto tp = states::thermal_params_from_kappas(1.0, 0.5);
        closed_forms::ScenarioParams sp{constants, tp.kappa_a_sq, tp.kappa_b_sq};
        const auto bundle = closed_forms::closed_fisher(
            {closed_forms::Generators::Canonical, closed_forms::StateFamily::Thermal}, sp);
        const auto region = bounds::region_from_bundle(bundle);
        const auto pts = bounds::boundary_samples(region, 6.0 * constants.lambda_sq() / 2.0, 129);
        csv << region_csv(pts, 1.0);
        svg::Series sld{"SLD bound", svg::LineStyle::Solid, color_of(0), {}};
        svg::Series rld{"RLD bound", svg::LineStyle::Dashed, color_of(1), {}};
        for (const auto& p : pts) {
            if (p.curve == "rld")
                rld.points.push_back({p.v11, p.v22});
        }
        // The SLD boundary is drawn as one corner polyline rather than the
        // raw per-line samples.
        const double vmax = 6.0 * constants.lambda_sq() / 2.0;
        sld.points = {{region.sld.g11, region.sld.g22 + (vmax - region.sld.g11)},
                      {region.sld.g11, region.sld.g22},
                      {vmax, region.sld.g22}};
        fig.series = {sld, rld};
    } else if (n == 3) {
        csv << "beta_omega,L0,mu,delta_g,delta_v_rs,ordering_case\n";
        fig = {"Delta V^{R-S}", "<L>_0", "delta V", {}};
        for (size_t i = 0; i < betas.size(); ++i) {
            const auto rows = bounds::transition_scan(betas[i], l0_grid(), constants);
            svg::Series series{"beta*omega = " + sig(betas[i], 6), style_of(static_cast<int>(i)),
                               color_of(static_cast<int>(i)), {}};
            for (const auto& r : rows) {
                csv << sig(r.beta_omega, 12) << "," << sig(r.L0, 12) << "," << sig(r.mu, 12)
                    << "," << sig(r.delta_g, 12) << "," << sig(r.delta_v_rs, 12) << ","
                    << bounds::to_string(r.ordering_case) << "\n";
                series.points.push_back({r.L0, r.delta_v_rs});
            }
            fig.series.push_back(std::move(series));
        }
    } else if (n == 4) {
        csv << "curve,kind,v11,v22\n";
        fig = {"Pure-state uncertainty regions", "V11", "V22", {}};
        const double l2 = constants.lambda_sq();
        const double vmax = 1.25 * l2;
        closed_forms::ScenarioParams sp{constants, 0.0, 0.0};
        const auto r1 = bounds::region_from_bundle(closed_forms::closed_fisher(
            {closed_forms::Generators::Canonical, closed_forms::StateFamily::Pure}, sp));
        const auto r2 = bounds::region_from_bundle(closed_forms::closed_fisher(
            {closed_forms::Generators::Mechanical, closed_forms::StateFamily::Pure}, sp));
        const auto pts1 = bounds::boundary_samples(r1, vmax, 129);
        const auto pts2 = bounds::boundary_samples(r2, vmax, 129);
        csv << region_csv(pts1, 1.0, "model1_") << region_csv(pts2, 1.0, "model2_");

        svg::Series s1{"Model 1 SLD", svg::LineStyle::Solid, color_of(0), {}};
        s1.points = {{r1.sld.g11, vmax}, {r1.sld.g11, r1.sld.g22}, {vmax, r1.sld.g22}};
        svg::Series s2{"Model 2 SLD", svg::LineStyle::Dashed, color_of(1), {}};
        s2.points = {{r2.sld.g11, vmax}, {r2.sld.g11, r2.sld.g22}, {vmax, r2.sld.g22}};
        svg::Series s3{"Model 2 RLD", svg::LineStyle::Dotted, color_of(2), {}};
        for (const auto& p : pts2)
            if (p.curve == "rld") s3.points.push_back({p.v11, p.v22});
        fig.series = {s1, s2, s3};
    } else {
        throw ConfigError("figure number must be 1..4");
    }

    write_text_file(base + ".csv", csv.str());
    write_text_file(base + ".svg", svg::render(fig));
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(double tolerance, int cutoff_bump, double eB) {
    const PhysicalConstants constants(eB);

    struct Case {
        std::string name;
        closed_forms::ScenarioKey key;
        double ka, kb;  // zero for pure
    };
    const std::vector<Case> cases = {
        {"pure_canonical",
         {closed_forms::Generators::Canonical, closed_forms::StateFamily::Pure}, 0, 0},
        {"pure_mechanical",
         {closed_forms::Generators::Mechanical, closed_forms::StateFamily::Pure}, 0, 0},
        {"thermal_canonical",
         {closed_forms::Generators::Canonical, closed_forms::StateFamily::Thermal}, 1.0, 0.5},
        {"thermal_mechanical",
         {closed_forms::Generators::Mechanical, closed_forms::StateFamily::Thermal}, 1.0, 0.25},
    };

    std::ostringstream os;
    os << "# " << kVersion << "\n" << "scenario,matrix,max_rel_err,tolerance,pass\n";
    bool all_pass = true;
    for (const auto& c : cases) {
        closed_forms::ScenarioParams sp{constants, c.ka, c.kb};
        const auto closed = closed_forms::closed_fisher(c.key, sp);

        Scenario s{c.key, constants, std::nullopt, FockCutoff{20 + cutoff_bump, 20 + cutoff_bump},
                   false};
        if (c.key.state == closed_forms::StateFamily::Thermal) {
            s.thermal = states::thermal_params_from_kappas(c.ka, c.kb);
            s.cutoff = states::auto_cutoff(*s.thermal);
            s.cutoff.n_a += cutoff_bump;
            s.cutoff.n_b += cutoff_bump;
        }
        const auto numeric = qfi::fisher_matrices(build_state(s), build_generators(s));

        const std::vector<std::pair<std::string, double>> errs = {
            {"g_s", rel_err(numeric.g_s, closed.g_s)},
            {"g_r", rel_err(numeric.g_r, closed.g_r)},
            {"z", rel_err(numeric.z, closed.z)},
        };
        for (const auto& [name, err] : errs) {
            const bool pass = err <= tolerance;
            all_pass = all_pass && pass;
            os << c.name << "," << name << "," << sig(err, 6) << "," << sig(tolerance, 6)
               << "," << (pass ? "true" : "false") << "\n";
        }
    }
    std::cout << os.str();
    return all_pass ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------------------------
// dump-operators

void dump_operator(const OperatorMatrix& op, const std::string& dir) {
    std::ostringstream os;
    os << op.dim() << " " << op.cutoff.n_a << " " << op.cutoff.n_b << " " << op.label << "\n";
    for (int r = 0; r < op.dim(); ++r)
        for (int c = 0; c < op.dim(); ++c)
            os << r << " " << c << " " << sig(op.mat(r, c).real(), 17) << " "
               << sig(op.mat(r, c).imag(), 17) << "\n";
    write_text_file(dir + "/" + op.label + ".txt", os.str());
}

int cmd_dump_operators(const std::vector<int>& cutoff_flag, double eB, double mass,
                       const std::string& dir) {
    FockCutoff cutoff{8, 8};
    if (!cutoff_flag.empty())
        cutoff = {cutoff_flag[0], cutoff_flag[1]};
    else if (auto env = env_cutoff())
        cutoff = *env;
    cutoff.validate();

    const PhysicalConstants constants(eB);
    const auto lad = fock::ladder_operators(cutoff);
    const auto can = fock::canonical_operators(cutoff, constants);
    const auto mech = fock::mechanical_operators(cutoff, constants);
    const auto hl = fock::hamiltonian_and_angular_momentum(cutoff, constants, mass);
    for (const OperatorMatrix* op : {&lad.a, &lad.a_dag, &lad.b, &lad.b_dag, &can.p_x,
                                     &can.p_y, &can.x, &can.y, &mech.pi_x, &mech.pi_y,
                                     &hl.h, &hl.l})
        dump_operator(*op, dir);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum Cramer-Rao uncertainty relations for an electron in a "
                 "uniform magnetic field"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // fisher -----------------------------------------------------------------
    ScenarioFlags fisher_flags;
    bool fisher_verify = false;
    double fisher_tol = 1e-6;
    auto* fisher = app.add_subcommand("fisher", "Print the closed-form Fisher bundle as JSON");
    add_scenario_options(fisher, fisher_flags);
    fisher->add_flag("--verify", fisher_verify, "cross-check against the numerical solver");
    fisher->add_option("--tolerance", fisher_tol, "verification tolerance");

    // chempot ----------------------------------------------------------------
    bool sweep = false;
    double cp_bw = 1.0, cp_l0 = 0.0;
    std::vector<double> cp_bws = {0.1, 1.0, 5.0};
    double cp_l0_min = -4.0, cp_l0_max = 4.0, cp_l0_step = 0.05;
    std::string cp_output;
    auto* chempot = app.add_subcommand("chempot", "Solve the chemical-potential equation");
    chempot->add_option("--beta-omega", cp_bw, "inverse temperature times omega");
    chempot->add_option("--L0", cp_l0, "target <L>_0");
    chempot->add_flag("--sweep", sweep, "emit a CSV sweep instead of a single value");
    chempot->add_option("--beta-omegas", cp_bws, "sweep beta*omega values");
    chempot->add_option("--L0-min", cp_l0_min, "sweep lower bound");
    chempot->add_option("--L0-max", cp_l0_max, "sweep upper bound");
    chempot->add_option("--L0-step", cp_l0_step, "sweep step");
    chempot->add_option("--output", cp_output, "write to file instead of stdout");

    // region -----------------------------------------------------------------
    ScenarioFlags region_flags;
    double v11_max = 6.0;
    int region_samples = 65;
    bool region_normalized = false;
    std::string region_output;
    auto* region = app.add_subcommand("region", "Sample the uncertainty-region boundary as CSV");
    add_scenario_options(region, region_flags);
    region->add_option("--v11-max", v11_max, "sampling range for V11");
    region->add_option("--samples", region_samples, "points per curve");
    region->add_flag("--normalized", region_normalized, "report V values in units of lambda^2");
    region->add_option("--output", region_output, "write to file instead of stdout");

    // figure -----------------------------------------------------------------
    int figure_n = 1;
    std::string figure_dir = ".";
    double figure_eB = 1.0;
    auto* figure = app.add_subcommand("figure", "Emit figure-n.csv and figure-n.svg");
    figure->add_option("n", figure_n, "figure number 1..4")->required();
    figure->add_option("--output-dir", figure_dir, "output directory");
    figure->add_option("--eB", figure_eB, "field strength");

    // verify -----------------------------------------------------------------
    double verify_tol = 1e-6;
    int cutoff_bump = 0;
    double verify_eB = 1.0;
    auto* verify = app.add_subcommand("verify", "Run the oracle-vs-closed-form suite");
    verify->add_option("--tolerance", verify_tol, "max relative error per matrix");
    verify->add_option("--cutoff-bump", cutoff_bump, "raise every cutoff by this amount");
    verify->add_option("--eB", verify_eB, "field strength");

    // dump-operators ---------------------------------------------------------
    std::vector<int> dump_cutoff;
    double dump_eB = 1.0, dump_mass = 1.0;
    std::string dump_dir = ".";
    auto* dump = app.add_subcommand("dump-operators", "Write every operator matrix to files");
    dump->add_option("--cutoff", dump_cutoff, "Fock cutoff n_a n_b")->expected(2);
    dump->add_option("--eB", dump_eB, "field strength");
    dump->add_option("--mass", dump_mass, "electron mass (enters H only)");
    dump->add_option("--output-dir", dump_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (fisher->parsed()) {
            apply_json_config(fisher, fisher_flags);
            return cmd_fisher(fisher, fisher_flags, fisher_verify, fisher_tol);
        }
        if (chempot->parsed())
            return cmd_chempot(sweep, cp_bw, chempot->get_option("--L0")->count() > 0, cp_l0,
                               cp_bws, cp_l0_min, cp_l0_max, cp_l0_step, cp_output);
        if (region->parsed()) {
            apply_json_config(region, region_flags);
            return cmd_region(region, region_flags, v11_max, region_samples,
                              region_normalized, region_output);
        }
        if (figure->parsed()) return cmd_figure(figure_n, figure_dir, figure_eB);
        if (verify->parsed()) return cmd_verify(verify_tol, cutoff_bump, verify_eB);
        if (dump->parsed()) return cmd_dump_operators(dump_cutoff, dump_eB, dump_mass, dump_dir);
    } catch (const CutoffTooSmall& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCutoff;
    } catch (const VerificationFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerification;
    } catch (const IoFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        // Config/range problems (InvalidRange, NonPhysicalBranch, ConfigError).
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
