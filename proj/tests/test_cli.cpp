// Integration checks for the command-line tool: exit codes, JSON shape,
// config round-trips, CSV/SVG side outputs. Spawns the real binary.

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

using json = nlohmann::json;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cerr << "FAIL: " << what << "\n";
    }
}

int run(const std::string& args, const std::string& env = {}) {
    const std::string cmd =
        (env.empty() ? std::string{} : env + " ") + QCSPEC_BIN + " " + args;
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

// every numeric leaf in "result" must carry its meaning (or be a log-form
// object with sign/ln)
void check_annotated(const json& j, const std::string& path) {
    if (j.is_object()) {
        if (j.contains("meaning") && (j.contains("value") || j.contains("ln"))) {
            return;
        }
        for (const auto& [k, v] : j.items()) {
            check_annotated(v, path + "." + k);
        }
        return;
    }
    if (j.is_array()) {
        for (const auto& v : j) check_annotated(v, path + "[]");
        return;
    }
    expect(!j.is_number(), "bare number at " + path);
}

} // namespace

int main() {
    std::string tmp = "/tmp/qcspec_cli_test";
    std::system(("rm -rf " + tmp + " && mkdir -p " + tmp).c_str());

    // catalog: exit 0, five kinds
    expect(run("catalog --json " + tmp + "/catalog.json") == 0, "catalog rc");
    {
        const json j = json::parse(slurp(tmp + "/catalog.json"));
        expect(j.at("result").at("maps").size() == 5, "catalog lists 5 kinds");
    }

    // bound on the rose petal: spec'd closed form (2 sqrt 2)^p factor
    expect(run("bound --domain rose-petal --p 3 --json " + tmp + "/b.json") == 0,
           "bound rc");
    {
        const json j = json::parse(slurp(tmp + "/b.json"));
        const double rhs = j.at("result").at("rhs").at("value").get<double>();
        const double bracket =
            j.at("result").at("ingredients").at("bracket").at("value").get<double>();
        const double display = bracket / 8.0 * 22.627416997969522; // (2v2)^3
        expect(std::abs(rhs - display) < 1e-9 * display,
               "rose-petal rhs equals the closed-form display");
        const double mu_lower =
            j.at("result").at("mu_lower").at("value").get<double>();
        expect(std::abs(mu_lower * rhs - 1.0) < 1e-12, "mu_lower = 1/rhs");
        check_annotated(j.at("result"), "result");
    }

    // beta-regular path emits a quadrature convergence report
    expect(run("bound --domain epicycloid --A 2 --B 1 --n 3 --p 4 --beta 2 "
               "--json " + tmp + "/bq.json") == 0,
           "beta-regular bound rc");
    {
        const json j = json::parse(slurp(tmp + "/bq.json"));
        expect(j.contains("quadrature"), "quadrature report present");
        expect(j.at("quadrature").at("rel_change").at("value").get<double>() <
                   1e-8,
               "quadrature converged");
    }

    // quasidisc: log-form objects with sign/ln
    expect(run("quasidisc --domain ellipse-shear --a 1 --p 4 --json " + tmp +
               "/q.json") == 0,
           "quasidisc rc");
    {
        const json j = json::parse(slurp(tmp + "/q.json"));
        const json& mp = j.at("result").at("mp");
        expect(mp.at("sign") == "+", "mp sign");
        expect(mp.at("ln").get<double>() < -20000.0, "mp magnitude");
        expect(!mp.contains("decimal"), "no decimal rendering below e^-700");
        check_annotated(j.at("result"), "result");
    }

    // norm subcommand
    expect(run("norm --domain rose-petal --beta 3 --json " + tmp +
               "/n.json --csv " + tmp + "/n.csv") == 0,
           "norm rc");
    {
        const json j = json::parse(slurp(tmp + "/n.json"));
        const double jn = j.at("result").at("jnorm").at("value").get<double>();
        expect(std::abs(jn - std::pow(M_PI, 1.0 / 3.0)) < 1e-9,
               "measure-preserving norm pi^{1/3}");
        const std::string csv = slurp(tmp + "/n.csv");
        expect(csv.rfind("field,value", 0) == 0, "csv header");
        expect(csv.find("jnorm,") != std::string::npos, "csv jnorm row");
    }

    // eigen + verify round-trip: byte-identical numerical fields
    expect(run("verify --domain identity --p 4 --rings 12 --json " + tmp +
               "/v.json") == 0,
           "verify rc (pass)");
    expect(run("--from-json " + tmp + "/v.json --json " + tmp +
               "/v2.json") == 0,
           "from-json rc");
    {
        const json a = json::parse(slurp(tmp + "/v.json"));
        const json b = json::parse(slurp(tmp + "/v2.json"));
        expect(a.at("result").dump() == b.at("result").dump(),
               "from-json reproduces byte-identical result");
        expect(a.at("result").at("status") == "pass", "verify pass status");
    }

    // eigen with exports
    expect(run("eigen --domain identity --p 2 --rings 8 --json " + tmp +
               "/e.json --svg " + tmp + "/e.svg --mesh-out " + tmp +
               "/mesh.txt --field-out " + tmp + "/field.txt") == 0,
           "eigen rc");
    {
        const json j = json::parse(slurp(tmp + "/e.json"));
        const double mu = j.at("result").at("mu").at("value").get<double>();
        expect(std::abs(mu - 3.39) < 0.15, "eigen disc p=2 ballpark");
        expect(slurp(tmp + "/mesh.txt").rfind("vertices", 0) == 0, "mesh export");
        expect(!slurp(tmp + "/field.txt").empty(), "field export");
        const std::string svg1 = slurp(tmp + "/e.svg");
        expect(svg1.rfind("<svg", 0) == 0, "svg starts with <svg");
        // determinism: re-run writes identical bytes
        expect(run("eigen --domain identity --p 2 --rings 8 --json " + tmp +
                   "/e2.json --svg " + tmp + "/e2.svg") == 0,
               "eigen rerun rc");
        expect(slurp(tmp + "/e2.svg") == svg1, "svg byte-deterministic");
    }

    // config file path
    {
        std::ofstream f(tmp + "/run.conf");
        f << "# config\ndomain = rose-petal\np = 3\nbeta = inf\n";
        f.close();
        expect(run("bound --config " + tmp + "/run.conf --json " + tmp +
                   "/bc.json") == 0,
               "config file rc");
        const json j = json::parse(slurp(tmp + "/bc.json"));
        expect(j.at("config").at("domain") == "rose-petal", "config applied");
    }

    // usage errors: exit 2, single-line diagnostic
    expect(run("bound --domain heptagon --p 3 2>" + tmp + "/err.txt") == 2,
           "unknown map kind exits 2");
    {
        const std::string err = slurp(tmp + "/err.txt");
        expect(err.find("error:") != std::string::npos, "diagnostic printed");
        expect(std::count(err.begin(), err.end(), '\n') <= 1,
               "single-line diagnostic");
    }
    expect(run("bound --domain identity --p 1.5 2>/dev/null") == 2,
           "p out of range exits 2");
    expect(run("verify --domain epicycloid --A 2 --B 1 --n 3 --p 3 "
               "--variant measure-preserving-inf --rings 8 2>/dev/null") == 2,
           "mp variant on non-mp map exits 2");

    // non-convergence: a one-iteration cap cannot converge; exit 3,
    // inconclusive status
    expect(run("verify --domain identity --p 3 --rings 8 --max-iter 1 --json " +
               tmp + "/nc.json") == 3,
           "iteration-starved verify exits 3");
    {
        const json j = json::parse(slurp(tmp + "/nc.json"));
        expect(j.at("result").at("status") == "inconclusive",
               "inconclusive status");
    }

    // QCSPEC_OUT_DIR prefixes relative output paths
    expect(run("catalog --json env_cat.json", "QCSPEC_OUT_DIR=" + tmp) == 0,
           "env out dir rc");
    expect(!slurp(tmp + "/env_cat.json").empty(), "env out dir honored");

    if (failures == 0) {
        std::cout << "cli: all checks passed\n";
        return 0;
    }
    std::cout << "cli: " << failures << " checks failed\n";
    return 1;
}
