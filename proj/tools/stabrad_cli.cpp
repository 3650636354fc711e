// stabrad: stability radii, transfer-function suprema, and input-output
// norms for finite-dimensional linear systems under lp norms.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stabrad/eig.hpp"
#include "stabrad/expm.hpp"
#include "stabrad/ionorm.hpp"
#include "stabrad/json_io.hpp"
#include "stabrad/nonaut.hpp"
#include "stabrad/radius.hpp"
#include "stabrad/syscheck.hpp"
#include "stabrad/transfer.hpp"

using nlohmann::json;
using namespace stabrad;

namespace {

constexpr const char* kVersion = "0.1.0";

// FNV-1a of the raw input file bytes.
std::string digest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    unsigned long long h = 1469598103934665603ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", h);
    return buf;
}

struct ReportContext {
    json report;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    ReportContext(const std::string& command, const std::string& system_path, long seed) {
        report["schema"] = "stabrad-report/1";
        report["version"] = kVersion;
        report["command"] = command;
        report["seed"] = seed;
        if (!system_path.empty()) report["inputs_digest"] = digest_file(system_path);
        report["values"] = json::object();
        report["provenance"] = json::array();
    }
    void value(const std::string& key, const json& v, const std::string& op, double tol) {
        report["values"][key] = v;
        report["provenance"].push_back(json{{"value", key}, {"operation", op}, {"tolerance", tol}});
    }
    void emit() {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report["wall_clock_sec"] = secs;
        std::cout << report.dump(2) << "\n";
    }
};

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open csv file: " + path);
    out << header << "\n";
    out.precision(15);
    for (const auto& r : rows) {
        for (size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
        out << "\n";
    }
}

std::string mode_name(IoNormMode m) {
    switch (m) {
        case IoNormMode::exact_l1: return "exact-L1";
        case IoNormMode::exact_l2: return "exact-L2";
        default: return "lower-bound-search";
    }
}

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

LtiSystem stephen1() {
    return LtiSystem::unstructured(Matrix(2, 2, {-1.0, 1.0, -1.0, -1.0}), NormSpec::l1());
}

LtiSystem stephen2() {
    return LtiSystem::unstructured(Matrix(2, 2, {4.5, -2.5, 12.5, -6.5}), NormSpec::l2());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stability radii and input-output norms for linear control systems"};
    app.require_subcommand(1);

    std::string system_path, csv_path;
    double p = 2.0, tol = 1e-6, xi = 0.0, horizon = 40.0, omega = 0.0, time_t_arg = 1.0;
    double freq = std::numeric_limits<double>::quiet_NaN();
    long seed = 12345;
    int budget = 24, xi_grid = 64, input_index = 1;

    auto add_common = [&](CLI::App* sub, bool needs_system = true) {
        auto* opt = sub->add_option("--system", system_path, "system description JSON file");
        if (needs_system) opt->required();
        sub->add_option("--tol", tol, "numerical tolerance");
        sub->add_option("--seed", seed, "seed for randomized searches");
        sub->add_option("--csv", csv_path, "write sweep data to CSV");
        sub->add_option("--budget", budget, "evaluation budget for searches");
    };

    auto* sc_sup = app.add_subcommand("supnorm", "sup over s of ||C(A-is)^{-1}B||");
    add_common(sc_sup);
    auto* sc_ion = app.add_subcommand("ionorm", "input-output operator norm on L^p");
    add_common(sc_ion);
    sc_ion->add_option("--p", p, "time-index exponent");
    auto* sc_rad = app.add_subcommand("radius", "stability-radius bound chain");
    add_common(sc_rad);
    sc_rad->add_option("--p", p, "time-index exponent");
    auto* sc_dst = app.add_subcommand("destabilize", "construct a destabilizing perturbation");
    add_common(sc_dst);
    sc_dst->add_option("--freq", freq, "target frequency s* (default: transfer-sup argmax)");
    auto* sc_ptw = app.add_subcommand("pointwise", "pointwise radius bounds at shift xi");
    add_common(sc_ptw);
    sc_ptw->add_option("--p", p, "time-index exponent");
    sc_ptw->add_option("--xi", xi, "imaginary shift in [0,1]");
    auto* sc_dch = app.add_subcommand("dichotomy", "dichotomy radius via xi sweep");
    add_common(sc_dch);
    sc_dch->add_option("--p", p, "time-index exponent");
    sc_dch->add_option("--xi-grid", xi_grid, "xi grid size");
    auto* sc_dat = app.add_subcommand("datko", "Datko integral stability test");
    add_common(sc_dat);
    sc_dat->add_option("--p", p, "integral exponent");
    sc_dat->add_option("--horizon", horizon, "integration horizon T");
    auto* sc_frq = app.add_subcommand("freqresp", "nonautonomous frequency response");
    add_common(sc_frq);
    sc_frq->add_option("--omega", omega, "input frequency");
    sc_frq->add_option("--time", time_t_arg, "evaluation time t");
    sc_frq->add_option("--input", input_index, "basis index of u0 (1-based)");
    auto* sc_chk = app.add_subcommand("check", "internal/external stability equivalence");
    add_common(sc_chk);
    sc_chk->add_option("--p", p, "time-index exponent");
    auto* sc_rep = app.add_subcommand("reproduce-paper", "golden-value reproduction table");
    add_common(sc_rep, /*needs_system=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sc_sup->parsed()) {
            auto doc = load_system_document(system_path);
            ReportContext ctx("supnorm", system_path, seed);
            FrequencySupremum s = sup_transfer_real_axis(doc.lti, tol);
            ctx.value("sup_norm", s.value, "sup_transfer_real_axis", tol);
            ctx.value("argmax_frequency", s.argmax, "sup_transfer_real_axis", tol);
            if (!csv_path.empty()) {
                std::vector<std::vector<double>> rows;
                double S = std::max(doc.lti.A.colsum_norm(), doc.lti.A.rowsum_norm()) + 10.0;
                for (int i = 0; i <= 2000; ++i) {
                    double sv = -S + 2.0 * S * i / 2000;
                    rows.push_back({sv, induced_pnorm(transfer_eval(doc.lti, cd(0.0, sv)),
                                                      doc.lti.norm_U, doc.lti.norm_Y)});
                }
                write_csv(csv_path, "s,transfer_norm", rows);
            }
            ctx.emit();
        } else if (sc_ion->parsed()) {
            auto doc = load_system_document(system_path);
            ReportContext ctx("ionorm", system_path, seed);
            IoNormEstimate est;
            if (p == 1.0)
                est = io_norm_l1(doc.lti);
            else if (p == 2.0 && doc.lti.norm_U.p == 2.0 && doc.lti.norm_Y.p == 2.0)
                est = io_norm_l2_hilbert(doc.lti, tol);
            else
                est = multiplier_lower_bound(doc.lti, p, budget,
                                             static_cast<unsigned>(seed));
            ctx.value("io_norm", est.value, "ionorm(p=" + std::to_string(p) + ")", tol);
            ctx.value("mode", mode_name(est.mode), "ionorm", 0.0);
            ctx.value("witness", est.witness, "ionorm", 0.0);
            ctx.emit();
        } else if (sc_rad->parsed()) {
            auto doc = load_system_document(system_path);
            ReportContext ctx("radius", system_path, seed);
            RadiusReport r = radius_bounds(doc.lti, p, tol);
            ctx.value("lower", r.lower, "radius_bounds", tol);
            ctx.value("upper", r.upper, "radius_bounds", tol);
            ctx.value("exact", r.exact ? json(*r.exact) : json(), "radius_bounds", tol);
            ctx.value("strict_gap", r.gap_strict, "radius_bounds", tol);
            ctx.value("lower_one_sided", r.lower_one_sided, "radius_bounds", 0.0);
            ctx.value("io_norm", r.io_norm, "radius_bounds", tol);
            ctx.value("witness_frequency", r.witness_frequency, "radius_bounds", tol);
            ctx.emit();
        } else if (sc_dst->parsed()) {
            auto doc = load_system_document(system_path);
            ReportContext ctx("destabilize", system_path, seed);
            double s_star = freq;
            if (std::isnan(s_star)) s_star = sup_transfer_real_axis(doc.lti, tol).argmax;
            Perturbation pert = destabilizing_perturbation(doc.lti, s_star);
            ctx.value("frequency", pert.frequency, "destabilizing_perturbation", tol);
            ctx.value("norm", pert.norm, "destabilizing_perturbation", 1e-10);
            ctx.value("delta", matrix_to_json(pert.delta), "destabilizing_perturbation", 0.0);
            Matrix closed = doc.lti.A + doc.lti.B * pert.delta * doc.lti.C;
            json evs = json::array();
            for (cd l : eigenvalues(closed)) evs.push_back(complex_json(l));
            ctx.value("closed_loop_eigenvalues", evs, "eigenvalues", 1e-10);
            Matrix probe = closed - Matrix::identity(doc.lti.n()) * cd(0.0, s_star);
            ctx.value("singularity_residual", smallest_singular_value(probe),
                      "smallest_singular_value", 1e-8);
            ctx.emit();
        } else if (sc_ptw->parsed()) {
            auto doc = load_system_document(system_path);
            ReportContext ctx("pointwise", system_path, seed);
            auto [lo, hi] = pointwise_radius_bounds(doc.lti, xi, p, budget);
            ctx.value("lower", lo, "pointwise_radius_bounds", tol);
            ctx.value("upper", hi, "pointwise_radius_bounds", tol);
            ctx.value("xi", xi, "pointwise_radius_bounds", 0.0);
            ctx.emit();
        } else if (sc_dch->parsed()) {
            auto doc = load_system_document(system_path);
            ReportContext ctx("dichotomy", system_path, seed);
            DichotomyRadius d = dichotomy_radius(doc.lti, p, xi_grid);
            ctx.value("radius", d.value, "dichotomy_radius", tol);
            ctx.value("minimizing_xi", d.minimizing_xi, "dichotomy_radius", tol);
            if (!csv_path.empty()) {
                std::vector<std::vector<double>> rows;
                for (int i = 0; i <= xi_grid; ++i) {
                    double x = static_cast<double>(i) / xi_grid;
                    double v = sup_transfer_integers(doc.lti, x, 1e-9).value;
                    rows.push_back({x, v > 0.0 ? 1.0 / v : 0.0});
                }
                write_csv(csv_path, "xi,pointwise_upper", rows);
            }
            ctx.emit();
        } else if (sc_dat->parsed()) {
            auto doc = load_system_document(system_path);
            ReportContext ctx("datko", system_path, seed);
            auto tv = doc.make_time_varying(1e-3);
            DatkoResult r = datko_test(tv, p, horizon, static_cast<unsigned>(seed));
            ctx.value("sup_integral", r.sup_integral, "datko_test", tol);
            ctx.value("verdict",
                      r.verdict == DatkoVerdict::stable
                          ? "stable"
                          : (r.verdict == DatkoVerdict::unstable ? "unstable" : "inconclusive"),
                      "datko_test", 0.0);
            ctx.value("growth_exponent", r.growth_exponent, "datko_test", 0.05);
            if (!csv_path.empty()) {
                // Running integral of the worst basis probe from tau = 0.
                std::vector<std::vector<double>> rows;
                Matrix x(tv.family.dim(), 1);
                x(0, 0) = 1.0;
                Matrix v = x;
                double integral = 0.0, tprev = 0.0;
                double fprev = std::pow(vec_pnorm(v, tv.norm_X.p), p);
                for (int i = 1; i <= 400; ++i) {
                    double t = horizon * i / 400;
                    v = tv.family.propagate(t, tprev) * v;
                    double f = std::pow(vec_pnorm(v, tv.norm_X.p), p);
                    integral += 0.5 * (fprev + f) * (t - tprev);
                    rows.push_back({t, integral});
                    fprev = f;
                    tprev = t;
                }
                write_csv(csv_path, "t,running_integral", rows);
            }
            ctx.emit();
        } else if (sc_frq->parsed()) {
            auto doc = load_system_document(system_path);
            ReportContext ctx("freqresp", system_path, seed);
            auto tv = doc.make_time_varying(1e-3);
            Matrix u0(doc.lti.inputs(), 1);
            if (input_index < 1 || input_index > doc.lti.inputs())
                throw std::invalid_argument("--input out of range");
            u0(input_index - 1, 0) = 1.0;
            Matrix y = nonaut_freq_response(tv, omega, u0, time_t_arg);
            json out = json::array();
            for (int i = 0; i < y.rows(); ++i) out.push_back(complex_json(y(i, 0)));
            ctx.value("response", out, "nonaut_freq_response", tol);
            ctx.value("omega", omega, "nonaut_freq_response", 0.0);
            ctx.value("time", time_t_arg, "nonaut_freq_response", 0.0);
            ctx.emit();
        } else if (sc_chk->parsed()) {
            auto doc = load_system_document(system_path);
            ReportContext ctx("check", system_path, seed);
            StabilityVerdict v = internal_external_check(doc.lti, p);
            ctx.value("internal", v.internal, "internal_external_check", 0.0);
            ctx.value("stabilizable", v.stabilizable, "hautus_stabilizable", 1e-10);
            ctx.value("detectable", v.detectable, "hautus_detectable", 1e-10);
            ctx.value("externally_bounded", v.externally_bounded, "internal_external_check", 0.0);
            ctx.value("io_bounded", v.io_bounded, "internal_external_check", 0.0);
            ctx.value("consistent", v.consistent, "internal_external_check", 0.0);
            ctx.emit();
        } else if (sc_rep->parsed()) {
            ReportContext ctx("reproduce-paper", "", seed);
            struct Row {
                const char* name;
                double target;
                double computed;
            };
            LtiSystem s1 = stephen1();
            LtiSystem s2 = stephen2();
            Matrix e1v(2, 1);
            e1v(0, 0) = 1.0;
            std::vector<Row> rows = {
                {"sup_resolvent_l1", 1.087494476, sup_transfer_real_axis(s1, 1e-8).value},
                {"io_norm_L1_l1", 1.262434309, io_norm_l1(s1).value},
                {"state_response_integral_l2", 7.748310791,
                 state_response_integral(s2, e1v, 1e-9)},
                {"sup_resolvent_l2", 2.732492852, sup_transfer_real_axis(s2, 1e-8).value},
            };
            json table = json::array();
            std::cout.precision(12);
            for (const auto& r : rows) {
                table.push_back(json{{"name", r.name},
                                     {"target", r.target},
                                     {"computed", r.computed},
                                     {"abs_delta", std::abs(r.computed - r.target)}});
            }
            ctx.report["values"]["golden_values"] = table;
            ctx.emit();
        }
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
