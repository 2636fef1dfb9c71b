// qcspec: spectral lower bounds for the Neumann p-Laplacian on
// quasiconformally mapped discs, with an FEM eigensolver for verification.

#include "qcspec/bounds.hpp"
#include "qcspec/eigensolver.hpp"
#include "qcspec/errors.hpp"
#include "qcspec/maps.hpp"
#include "qcspec/mesh.hpp"
#include "qcspec/quadrature.hpp"
#include "qcspec/quasidisc.hpp"
#include "qcspec/svg.hpp"
#include "qcspec/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using json = nlohmann::json;
using namespace qcspec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoConvergence = 3;

// Everything needed to reproduce a run; serialized under "config" in every
// JSON output and reloadable with --from-json.
struct RunConfig {
    std::string command;
    std::string domain = "identity";
    double p = 4.0;
    std::string beta = "inf"; // number or "inf"
    std::optional<double> K; // quasidisc coefficient (defaults to the map's)
    std::string variant = "auto";
    int rings = 64;
    double tol = 1e-8;
    std::uint64_t seed = 12345;
    int starts = 3;
    int max_iter = 20000;
    int quad_radial = 64;
    int quad_angular = 256;
};

json config_to_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["domain"] = c.domain;
    j["p"] = c.p;
    j["beta"] = c.beta;
    if (c.K) j["K"] = *c.K;
    j["variant"] = c.variant;
    j["rings"] = c.rings;
    j["tol"] = c.tol;
    j["seed"] = c.seed;
    j["starts"] = c.starts;
    j["max_iter"] = c.max_iter;
    j["quad_radial"] = c.quad_radial;
    j["quad_angular"] = c.quad_angular;
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    c.domain = j.value("domain", c.domain);
    c.p = j.value("p", c.p);
    c.beta = j.value("beta", c.beta);
    if (j.contains("K")) c.K = j.at("K").get<double>();
    c.variant = j.value("variant", c.variant);
    c.rings = j.value("rings", c.rings);
    c.tol = j.value("tol", c.tol);
    c.seed = j.value("seed", c.seed);
    c.starts = j.value("starts", c.starts);
    c.max_iter = j.value("max_iter", c.max_iter);
    c.quad_radial = j.value("quad_radial", c.quad_radial);
    c.quad_angular = j.value("quad_angular", c.quad_angular);
    return c;
}

BetaParam parse_beta(const std::string& s) {
    if (s == "inf" || s == "infinity") return BetaParam::infinite();
    const double v = std::stod(s);
    if (!(v > 1.0)) throw ParameterError("beta must be > 1 or 'inf'");
    return BetaParam::finite(v);
}

QuadratureSpec quad_of(const RunConfig& c) {
    QuadratureSpec q;
    q.radial_nodes = c.quad_radial;
    q.angular_nodes = c.quad_angular;
    return q;
}

SolveOptions solve_of(const RunConfig& c) {
    SolveOptions s;
    s.tolerance = c.tol;
    s.seed = c.seed;
    s.starts = c.starts;
    s.max_iter = c.max_iter;
    return s;
}

// numeric result fields always carry their meaning
json num(double value, const std::string& meaning) {
    return json{{"value", value}, {"meaning", meaning}};
}

json lognum(const LogValue& v, const std::string& meaning) {
    json j{{"sign", v.sign > 0 ? "+" : (v.sign < 0 ? "-" : "0")},
           {"ln", v.ln_mag},
           {"meaning", meaning}};
    const std::string dec = decimal_if_representable(v);
    if (!dec.empty()) j["decimal"] = dec;
    return j;
}

json quadrature_report(const MapDescriptor& map, double beta,
                       const QuadratureSpec& spec) {
    const RefinementReport rep = integrate_disc_refined(
        [&](double x, double y) {
            return std::pow(std::abs(jacobian(map, {x, y})), beta);
        },
        spec);
    json j;
    j["radial_nodes"] = spec.radial_nodes;
    j["angular_nodes"] = spec.angular_nodes;
    j["value"] = num(rep.value, "node-doubled integral of |J|^beta");
    j["coarse"] = num(rep.coarse, "integral at the base node counts");
    j["rel_change"] = num(rep.rel_change, "relative change under node doubling");
    return j;
}

json bound_report_json(const BoundReport& rep) {
    json j;
    j["variant"] = bound_variant_name(rep.variant);
    j["p"] = num(rep.p, "integrability exponent of the eigenvalue problem");
    j["beta"] = rep.beta.str();
    j["K"] = num(rep.K, "quasiconformality coefficient");
    j["r"] = num(rep.r, "embedding exponent p*beta/(beta-1)");
    j["q_star"] = num(rep.q_star, "lower endpoint of the admissible q interval");
    j["q_opt"] = num(rep.q_opt, "minimizing q");
    j["rhs"] = num(rep.rhs, "upper bound on 1/mu_p");
    j["mu_lower"] = num(rep.mu_lower, "lower bound on mu_p");
    j["ingredients"] = json{
        {"area", num(rep.ingredients.area, "image area")},
        {"jnorm", num(rep.ingredients.jnorm,
                      "Jacobian norm (or sup) entering the bound")},
        {"bracket", num(rep.ingredients.bracket, "minimized q-term")},
    };
    if (rep.default_form_rhs) {
        j["default_form_rhs"] =
            num(*rep.default_form_rhs,
                "rhs of the default bracket form for comparison");
        j["intro_over_default"] =
            num(rep.rhs / *rep.default_form_rhs,
                "constant-factor discrepancy between the two headline forms");
    }
    return j;
}

struct OutputPaths {
    std::string json_path; // empty -> stdout
    std::string csv_path;
    std::string svg_path;
    std::string mesh_path;
    std::string field_path;
};

std::string resolve_path(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    const char* dir = std::getenv("QCSPEC_OUT_DIR");
    if (!dir || !*dir) return path;
    return std::string(dir) + "/" + path;
}

void flatten_csv(const json& j, const std::string& prefix, std::ostream& os) {
    if (j.is_object()) {
        if (j.contains("value") && j.contains("meaning")) {
            os << prefix << "," << j["value"].dump() << "\n";
            return;
        }
        if (j.contains("ln") && j.contains("sign")) {
            os << prefix << "_ln," << j["ln"].dump() << "\n";
            os << prefix << "_sign," << j["sign"].get<std::string>() << "\n";
            return;
        }
        for (const auto& [k, v] : j.items()) {
            flatten_csv(v, prefix.empty() ? k : prefix + "." + k, os);
        }
        return;
    }
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            flatten_csv(j[i], prefix + "." + std::to_string(i), os);
        }
        return;
    }
    os << prefix << "," << j.dump() << "\n";
}

void write_outputs(const json& out, const OutputPaths& paths) {
    const std::string text = out.dump(2) + "\n";
    if (paths.json_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(resolve_path(paths.json_path));
        if (!f) throw ParameterError("cannot write " + paths.json_path);
        f << text;
    }
    if (!paths.csv_path.empty()) {
        std::ofstream f(resolve_path(paths.csv_path));
        if (!f) throw ParameterError("cannot write " + paths.csv_path);
        f << "field,value\n";
        flatten_csv(out.at("result"), "", f);
    }
}

void write_svg_boundary(const OutputPaths& paths, const MapDescriptor& map) {
    if (paths.svg_path.empty()) return;
    std::ofstream f(resolve_path(paths.svg_path));
    if (!f) throw ParameterError("cannot write " + paths.svg_path);
    emit_boundary_svg(f, map);
}

json eigen_json(const EigenResult& r) {
    json j;
    j["mu"] = num(r.mu, "first non-trivial Neumann eigenvalue estimate");
    j["iterations"] = num(r.iterations, "accepted descent steps (best start)");
    j["converged"] = r.converged;
    j["constraint_residual"] =
        num(r.constraint_residual,
            "|int |u|^{p-2} u| / int |u|^{p-1} at the final field");
    j["best_start"] = r.best_start;
    j["seed"] = num(static_cast<double>(r.seed), "random-start seed");
    j["trace_length"] =
        num(static_cast<double>(r.rayleigh_trace.size()),
            "number of recorded Rayleigh-quotient values");
    j["rayleigh_initial"] =
        num(r.rayleigh_trace.front(), "Rayleigh quotient at the start");
    j["rayleigh_final"] = num(r.rayleigh_trace.back(),
                              "Rayleigh quotient at termination (= mu)");
    return j;
}

// --- subcommand implementations -----------------------------------------

json run_catalog() {
    json entries = json::array();
    entries.push_back(json{
        {"kind", "identity"},
        {"form", "z"},
        {"distortion", "1"},
        {"area", "pi"},
        {"measure_preserving", true}});
    entries.push_back(json{
        {"kind", "epicycloid"},
        {"form", "A(z + z^n/n) + B(conj z + conj(z)^n/n), A > B >= 0"},
        {"distortion", "(A+B)/(A-B)"},
        {"area", "(A^2-B^2) (n+1)/n pi"},
        {"measure_preserving", false}});
    entries.push_back(json{
        {"kind", "ellipse-shear"},
        {"form", "sqrt(a^2+1) z + a conj z, a >= 0"},
        {"distortion", "(sqrt(a^2+1)+a)/(sqrt(a^2+1)-a)"},
        {"area", "pi"},
        {"measure_preserving", true}});
    entries.push_back(json{
        {"kind", "rose-petal"},
        {"form", "sqrt(2) (1+z)^{3/4} (1+conj z)^{1/4}"},
        {"distortion", "2"},
        {"area", "pi"},
        {"measure_preserving", true}});
    entries.push_back(json{
        {"kind", "linear-shear"},
        {"form", "(x, y) -> (a x + f(y), y/a), a > 0"},
        {"distortion", "sup_y lambda_max(D D^T) (profile sup)"},
        {"area", "pi"},
        {"measure_preserving", true}});
    return json{{"maps", entries}};
}

json run_bound(const RunConfig& c, const MapDescriptor& map) {
    if (!(c.p > 2.0)) {
        throw ParameterError("bound requires p > 2");
    }
    const MapInfo info = map_info(map);
    const BetaParam beta = parse_beta(c.beta);
    const QuadratureSpec quad = quad_of(c);
    const double K = c.K.value_or(info.distortion);

    BoundReport rep;
    bool used_quadrature = false;
    if (c.variant == "intro-form") {
        if (!info.measure_preserving) {
            throw ParameterError("intro-form requires a measure-preserving map");
        }
        rep = bound_intro_form(c.p, beta, K);
    } else if (c.variant != "auto") {
        throw ParameterError("bound --variant must be auto or intro-form");
    } else if (info.measure_preserving) {
        rep = bound_measure_preserving(c.p, beta, K);
    } else if (beta.is_infinite) {
        const double area = info.area ? *info.area : image_area(map, quad);
        rep = bound_inf_regular(c.p, K, area, jacobian_sup(map, quad).value);
    } else {
        const double area = info.area ? *info.area : image_area(map, quad);
        rep = bound_beta_regular(c.p, beta.value, K, area,
                                 jacobian_norm(map, beta.value, quad));
        used_quadrature = true;
    }

    json result = bound_report_json(rep);
    result["domain"] = format_map(map);
    json out;
    out["result"] = result;
    if (used_quadrature) {
        out["quadrature"] = quadrature_report(map, beta.is_infinite ? 1.0 : beta.value, quad);
    }
    return out;
}

json run_quasidisc(const RunConfig& c, const MapDescriptor& map) {
    const double K = c.K.value_or(map_info(map).distortion);
    const QuasidiscConstants qc = mp_constant(K, c.p);
    json result;
    result["K"] = num(qc.K, "quasidisc coefficient (reflection uses K^2)");
    result["p"] = num(qc.p, "integrability exponent");
    result["beta_tilde_offset"] =
        num(qc.beta_tilde_offset, "eps with beta~ = 1 + eps solving nu = 1");
    result["beta_star_offset"] =
        num(qc.beta_star_offset, "eps* with beta* = min(K/(K-1), beta~)");
    result["mp"] = lognum(qc.mp, "M_p(K)");
    result["mp_star"] = lognum(qc.mp_star, "M_p(K) pi^{-p/2}");
    result["best_beta_offset"] =
        num(qc.best_beta_offset, "optimizing beta offset in the double infimum");
    result["best_q"] = num(qc.best_q, "optimizing q in the double infimum");
    result["beta_boundary_attained"] = qc.beta_boundary_attained;

    const MapInfo info = map_info(map);
    const double area = info.area ? *info.area : image_area(map, quad_of(c));
    const QuasidiscBound qb = quasidisc_lower_bound(K, c.p, area);
    result["area"] = num(area, "image area entering the bound");
    result["mu_lower"] = lognum(qb.mu_lower, "M_p / area^{p/2}");
    result["mu_lower_via_radius"] =
        lognum(qb.via_radius, "M_p* / R*^p, R* = sqrt(area/pi)");
    json out;
    out["result"] = result;
    return out;
}

json run_norm(const RunConfig& c, const MapDescriptor& map) {
    const BetaParam beta = parse_beta(c.beta);
    const QuadratureSpec quad = quad_of(c);
    json result;
    result["domain"] = format_map(map);
    result["area"] = num(image_area(map, quad), "integral of |J| over the disc");
    if (!beta.is_infinite) {
        result["jnorm"] =
            num(jacobian_norm(map, beta.value, quad),
                "L_beta norm of the Jacobian, beta = " + beta.str());
    }
    const SupEstimate sup = jacobian_sup(map, quad);
    result["jsup"] = num(sup.value, sup.analytic
                                        ? "essential sup of |J| (analytic)"
                                        : "sampled max of |J| (lower estimate)");
    result["jsup_analytic"] = sup.analytic;
    json out;
    out["result"] = result;
    out["quadrature"] =
        quadrature_report(map, beta.is_infinite ? 1.0 : beta.value, quad);
    return out;
}

json run_eigen(const RunConfig& c, const MapDescriptor& map,
               const OutputPaths& paths, int* exit_code) {
    if (!(c.p >= 2.0)) {
        throw ParameterError("eigen requires p >= 2");
    }
    const Mesh mesh = mesh_for_map(map, c.rings);
    const EigenResult r = solve_mapped_eigen(map, c.p, c.rings, solve_of(c));
    if (!r.converged) *exit_code = kExitNoConvergence;

    if (!paths.mesh_path.empty()) {
        std::ofstream f(resolve_path(paths.mesh_path));
        if (!f) throw ParameterError("cannot write " + paths.mesh_path);
        write_mesh(f, mesh);
    }
    if (!paths.field_path.empty()) {
        std::ofstream f(resolve_path(paths.field_path));
        if (!f) throw ParameterError("cannot write " + paths.field_path);
        write_field(f, r.field);
    }
    if (!paths.svg_path.empty()) {
        std::ofstream f(resolve_path(paths.svg_path));
        if (!f) throw ParameterError("cannot write " + paths.svg_path);
        emit_field_svg(f, mesh, r.field, map);
    }

    json result = eigen_json(r);
    result["domain"] = format_map(map);
    result["rings"] = num(c.rings, "concentric mesh rings");
    result["vertices"] =
        num(static_cast<double>(mesh.vertex_count()), "mesh vertex count");
    result["mesh_area"] = num(mesh.total_area(), "polygonal image area");
    json out;
    out["result"] = result;
    return out;
}

json run_verify(const RunConfig& c, const MapDescriptor& map,
                const OutputPaths& paths, int* exit_code) {
    VerifyOptions opts;
    opts.variant = parse_verify_variant(c.variant);
    const BetaParam beta = parse_beta(c.beta);
    if (!beta.is_infinite) opts.beta = beta.value;
    opts.rings = c.rings;
    opts.solve = solve_of(c);
    opts.quad = quad_of(c);

    const VerifyReport rep = verify_bound(map, c.p, opts);
    switch (rep.status) {
        case VerifyReport::Status::Pass:
            break;
        case VerifyReport::Status::Fail:
            *exit_code = kExitVerifyFail;
            break;
        case VerifyReport::Status::Inconclusive:
            *exit_code = kExitNoConvergence;
            break;
    }

    json result;
    result["domain"] = format_map(map);
    result["K"] = num(rep.K, "quasiconformality coefficient");
    result["p"] = num(rep.p, "integrability exponent");
    result["variant"] = verify_variant_name(rep.variant);
    result["area"] = num(rep.area, "image area");
    result["mu_lower"] = lognum(rep.mu_lower_log, "theoretical lower bound");
    result["mu_numeric"] =
        num(rep.mu_numeric, "FEM estimate of the first non-trivial eigenvalue");
    result["slack_log"] =
        num(rep.slack_log, "ln(mu_numeric) - ln(mu_lower); >= ln 0.98 passes");
    result["status"] = rep.status == VerifyReport::Status::Pass
                           ? "pass"
                           : (rep.status == VerifyReport::Status::Fail
                                  ? "fail"
                                  : "inconclusive");
    result["eigen"] = eigen_json(rep.eigen);
    if (!paths.svg_path.empty()) {
        const Mesh mesh = mesh_for_map(map, c.rings);
        std::ofstream f(resolve_path(paths.svg_path));
        if (!f) throw ParameterError("cannot write " + paths.svg_path);
        emit_field_svg(f, mesh, rep.eigen.field, map);
    }
    json out;
    out["result"] = result;
    return out;
}

json dispatch(const RunConfig& c, const OutputPaths& paths, int* exit_code) {
    json out;
    if (c.command == "catalog") {
        out = json{{"result", run_catalog()}};
    } else {
        const MapDescriptor map = parse_map(c.domain);
        if (c.command == "bound") {
            out = run_bound(c, map);
            write_svg_boundary(paths, map);
        } else if (c.command == "quasidisc") {
            out = run_quasidisc(c, map);
            write_svg_boundary(paths, map);
        } else if (c.command == "norm") {
            out = run_norm(c, map);
            write_svg_boundary(paths, map);
        } else if (c.command == "eigen") {
            out = run_eigen(c, map, paths, exit_code);
        } else if (c.command == "verify") {
            out = run_verify(c, map, paths, exit_code);
        } else {
            throw ParameterError("unknown command: " + c.command);
        }
    }
    out["command"] = c.command;
    out["config"] = config_to_json(c);
    return out;
}

// key = value lines; '#' starts a comment
void apply_config_file(const std::string& path, RunConfig& c) {
    std::ifstream f(path);
    if (!f) throw ParameterError("cannot read config file " + path);
    std::string line;
    while (std::getline(f, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return (a == std::string::npos) ? std::string{}
                                            : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "domain") c.domain = val;
        else if (key == "p") c.p = std::stod(val);
        else if (key == "beta") c.beta = val;
        else if (key == "K") c.K = std::stod(val);
        else if (key == "variant") c.variant = val;
        else if (key == "rings") c.rings = std::stoi(val);
        else if (key == "tol") c.tol = std::stod(val);
        else if (key == "seed") c.seed = std::stoull(val);
        else if (key == "starts") c.starts = std::stoi(val);
        else if (key == "max_iter") c.max_iter = std::stoi(val);
        else if (key == "quad_radial") c.quad_radial = std::stoi(val);
        else if (key == "quad_angular") c.quad_angular = std::stoi(val);
        else throw ParameterError("unknown config key: " + key);
    }
}

MapDescriptor map_from_flags(const std::string& domain, double A, double B,
                             int n, double a, const std::string& profile,
                             double amplitude) {
    if (domain.find('(') != std::string::npos) {
        return parse_map(domain); // full descriptor string
    }
    if (domain == "epicycloid") {
        std::ostringstream os;
        os.precision(17);
        os << "epicycloid(A=" << A << ",B=" << B << ",n=" << n << ")";
        return parse_map(os.str());
    }
    if (domain == "ellipse-shear") {
        std::ostringstream os;
        os.precision(17);
        os << "ellipse-shear(a=" << a << ")";
        return parse_map(os.str());
    }
    if (domain == "linear-shear") {
        std::ostringstream os;
        os.precision(17);
        os << "linear-shear(a=" << a << ",profile=" << profile
           << ",amplitude=" << amplitude << ")";
        return parse_map(os.str());
    }
    return parse_map(domain);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Neumann p-Laplacian spectral bounds on quasiconformally "
                 "mapped discs"};
    app.require_subcommand(0, 1);

    RunConfig cfg;
    OutputPaths paths;
    std::string config_file;
    std::string from_json;
    double A = 1.0, B = 0.0, a = 1.0, amplitude = 1.0;
    int n = 2;
    std::string profile = "sine";

    app.add_option("--from-json", from_json,
                   "re-run the configuration saved in a JSON output file");
    app.add_option("--json", paths.json_path, "write JSON here (default stdout)");

    const auto add_common = [&](CLI::App* sub, bool with_solver) {
        sub->add_option("--domain", cfg.domain,
                        "map kind or full descriptor, e.g. "
                        "'epicycloid(A=2,B=1,n=3)'");
        sub->add_option("--A", A, "epicycloid A");
        sub->add_option("--B", B, "epicycloid B");
        sub->add_option("--n", n, "epicycloid n");
        sub->add_option("--a", a, "ellipse/linear shear parameter");
        sub->add_option("--profile", profile, "linear-shear profile: sine|quadratic");
        sub->add_option("--amplitude", amplitude, "linear-shear amplitude");
        sub->add_option("--p", cfg.p, "exponent p");
        sub->add_option("--beta,--beta-param", cfg.beta, "beta (> 1) or 'inf'");
        sub->add_option("--quad-radial", cfg.quad_radial, "radial quadrature nodes");
        sub->add_option("--quad-angular", cfg.quad_angular, "angular quadrature nodes");
        sub->add_option("--config", config_file, "key=value config file");
        sub->add_option("--json", paths.json_path, "write JSON here (default stdout)");
        sub->add_option("--csv", paths.csv_path, "write a flat CSV projection here");
        sub->add_option("--svg", paths.svg_path, "write an SVG plot here");
        if (with_solver) {
            sub->add_option("--rings", cfg.rings, "mesh rings");
            sub->add_option("--tol", cfg.tol, "solver tolerance");
            sub->add_option("--seed", cfg.seed, "random-start seed");
            sub->add_option("--starts", cfg.starts, "number of starts (1-3)");
            sub->add_option("--max-iter", cfg.max_iter, "iteration cap");
            sub->add_option("--mesh-out", paths.mesh_path, "mesh text export");
            sub->add_option("--field-out", paths.field_path,
                            "eigenfunction vertex-value export");
        }
    };

    CLI::App* sc_catalog = app.add_subcommand("catalog", "list the map catalog");
    sc_catalog->add_option("--json", paths.json_path,
                           "write JSON here (default stdout)");
    CLI::App* sc_bound =
        app.add_subcommand("bound", "spectral lower bound from the map's data");
    add_common(sc_bound, false);
    sc_bound->add_option("--variant", cfg.variant, "auto|intro-form");
    CLI::App* sc_quasidisc = app.add_subcommand(
        "quasidisc", "quasidisc constants M_p(K) in log space");
    add_common(sc_quasidisc, false);
    sc_quasidisc->add_option("--K", cfg.K, "quasidisc coefficient override");
    CLI::App* sc_norm =
        app.add_subcommand("norm", "Jacobian norms and image area");
    add_common(sc_norm, false);
    CLI::App* sc_eigen =
        app.add_subcommand("eigen", "FEM eigenvalue on the mapped disc");
    add_common(sc_eigen, true);
    CLI::App* sc_verify = app.add_subcommand(
        "verify", "check the numerical eigenvalue against a theoretical bound");
    add_common(sc_verify, true);
    sc_verify->add_option("--variant", cfg.variant,
                          "auto|beta-regular|inf-regular|measure-preserving-"
                          "beta|measure-preserving-inf|intro-form|quasidisc|"
                          "convex");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    int exit_code = kExitOk;
    try {
        RunConfig run_cfg;
        if (!from_json.empty()) {
            std::ifstream f(from_json);
            if (!f) throw ParameterError("cannot read " + from_json);
            json saved = json::parse(f);
            run_cfg = config_from_json(saved.at("config"));
        } else {
            if (app.get_subcommands().empty()) {
                std::cerr << app.help();
                return kExitUsage;
            }
            CLI::App* sub = app.get_subcommands().front();
            cfg.command = sub->get_name();
            if (!config_file.empty()) apply_config_file(config_file, cfg);
            // map flags are folded into the canonical descriptor string so
            // the saved config is self-contained
            if (cfg.command != "catalog") {
                cfg.domain = format_map(map_from_flags(cfg.domain, A, B, n, a,
                                                       profile, amplitude));
            }
            run_cfg = cfg;
        }
        const json out = dispatch(run_cfg, paths, &exit_code);
        write_outputs(out, paths);
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return exit_code;
}
