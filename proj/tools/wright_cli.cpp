// wright: validated unstable manifolds for Wright's equation and its
// pseudospectral approximation.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wright/pipeline.hpp"

using namespace wright;

namespace {

void print_interval(const char* label, const RealInterval& x) {
    std::printf("%s[%s, %s]\n", label, decimal_down(x.lo).c_str(), decimal_up(x.hi).c_str());
}

void print_root(const char* label, const RootCertificate& c) {
    std::printf("%s\n", label);
    print_interval("  re ", c.enclosure.re);
    print_interval("  im ", c.enclosure.im);
    std::printf("  radius %s\n", decimal_up(c.r0).c_str());
}

void print_bounds(const char* label, const BoundSet& b) {
    std::printf("%s\n  Y0 %s\n  Z0 %s\n  Z1 %s\n  Z2 %s\n", label, decimal_up(b.Y0).c_str(), decimal_up(b.Z0).c_str(),
                decimal_up(b.Z1).c_str(), decimal_up(b.Z2).c_str());
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream f(path);
    if (!f) throw StageError(Stage::io, Error(Errc::IoError, "cannot open " + path));
    f << j.dump(2) << "\n";
    if (!f) throw StageError(Stage::io, Error(Errc::IoError, "write failed for " + path));
}

int fail(const StageError& e) {
    std::fprintf(stderr, "error [%s]: %s\n", stage_name(e.stage()), e.what());
    return e.exit_code();
}

int cmd_eigs(double alpha, int n, const std::string& out_path) {
    nlohmann::json out;
    out["alpha"] = alpha;
    if (!alpha_in_hayes_range(alpha))
        throw StageError(Stage::config, Error(Errc::AlphaOutOfRange, "alpha must lie in (pi/2, 5pi/2)"));
    SpectralPair dde;
    try {
        dde = find_dde_pair(RealInterval(alpha));
    } catch (const Error& e) {
        throw StageError(Stage::census, e);
    }
    print_root("dde lambda+", dde.plus);
    print_root("dde lambda-", dde.minus);
    out["lambda_dde"] = pair_json(dde);
    if (n > 0) {
        CensusResult cen;
        try {
            ChebyshevScheme s = build_scheme(n, RealInterval(alpha));
            cen = census_psa_report(s);
        } catch (const Error& e) {
            throw StageError(e.code() == Errc::InvalidConfig ? Stage::config : Stage::census, e);
        }
        std::printf("psa census n=%d: %zu validated zeros, %d in the open right half plane\n", n, cen.all.size(),
                    cen.unstable_count);
        nlohmann::json zeros = nlohmann::json::array();
        for (const auto& c : cen.all) {
            std::printf("  re [%s, %s]  im [%s, %s]\n", decimal_down(c.enclosure.re.lo).c_str(),
                        decimal_up(c.enclosure.re.hi).c_str(), decimal_down(c.enclosure.im.lo).c_str(),
                        decimal_up(c.enclosure.im.hi).c_str());
            zeros.push_back(root_json(c));
        }
        out["psa"] = {{"n", n}, {"zeros", zeros}, {"unstable_count", cen.unstable_count}};
        if (cen.unstable) {
            print_root("psa lambda_n+", cen.unstable->plus);
            out["psa"]["lambda_psa"] = pair_json(*cen.unstable);
        }
    }
    if (!out_path.empty()) write_json(out_path, out);
    return 0;
}

void report(const ValidationCertificate& c) {
    std::printf("validate %s: alpha=%.17g n=%d N=%d M=%d xi=%.17g norm=%s\n", c.kind.c_str(), c.alpha, c.n, c.trunc_N,
                c.tail_M, c.xi_scale, c.norm.c_str());
    if (c.lambda_dde) print_root("dde lambda+", c.lambda_dde->plus);
    if (c.lambda_psa) print_root("psa lambda_n+", c.lambda_psa->plus);
    if (c.tail)
        std::printf("sweep: M=%d epsilon=%.17g |D|=%s |D1|=%s explicit solves=%ld\n", c.tail->M, c.tail->epsilon,
                    decimal_up(c.tail->normD).c_str(), decimal_up(c.tail->normD1).c_str(), c.tail->explicit_solves);
    if (c.bounds_psa) print_bounds("psa bounds", *c.bounds_psa);
    if (c.r_psa) std::printf("r_psa %s\n", decimal_up(*c.r_psa).c_str());
    if (c.bounds_dde) print_bounds("dde bounds", *c.bounds_dde);
    if (c.r_dde) std::printf("r_dde %s\n", decimal_up(*c.r_dde).c_str());
    if (c.total_bound) std::printf("total_bound %s\n", decimal_up(*c.total_bound).c_str());
    if (!c.xhat_sha256.empty()) std::printf("xhat_sha256 %s\n", c.xhat_sha256.c_str());
    std::printf("%s\n", c.certified ? "certified" : "NOT certified");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Validated unstable manifolds for Wright's equation and its pseudospectral approximation"};
    app.require_subcommand(1);

    RunConfig cfg;
    bool serial = false;
    auto add_common = [&](CLI::App* sub, bool with_tail) {
        sub->add_option("--alpha", cfg.alpha, "delay feedback parameter")->capture_default_str();
        sub->add_option("--n", cfg.n, "pseudospectral discretization index")->capture_default_str();
        sub->add_option("--trunc", cfg.trunc_N, "Taylor truncation degree N")->capture_default_str();
        sub->add_option("--xi-scale", cfg.xi_scale, "first-order coefficient scale")->capture_default_str();
        if (with_tail) {
            sub->add_option("--tail-m", cfg.tail_M, "resolvent sweep threshold M")->capture_default_str();
            sub->add_option("--epsilon", cfg.epsilon, "Neumann margin (default: just below Re(lambda_n) M - |D|)");
            sub->add_flag("--serial", serial, "use the serial reference kernels");
        }
    };

    auto* eigs = app.add_subcommand("eigs", "validated eigenvalue enclosures");
    double eigs_alpha = 2.0;
    int eigs_n = 0;
    std::string eigs_out;
    eigs->add_option("--alpha", eigs_alpha, "delay feedback parameter")->capture_default_str();
    eigs->add_option("--n", eigs_n, "also run the census of Delta_n for this n");
    eigs->add_option("--out", eigs_out, "write the enclosures as JSON");

    auto* validate = app.add_subcommand("validate", "radii polynomial validation");
    validate->require_subcommand(1);
    std::string vout;
    ValidateKind vkind = ValidateKind::distance;
    for (auto [name, kind] : {std::pair{"dde", ValidateKind::dde}, std::pair{"psa", ValidateKind::psa},
                              std::pair{"distance", ValidateKind::distance}}) {
        auto* sub = validate->add_subcommand(name, std::string("validate the ") + name + " manifold");
        add_common(sub, true);
        sub->add_option("--out", vout, "certificate JSON path");
        sub->callback([&vkind, kind = kind] { vkind = kind; });
    }

    auto* coeffs = app.add_subcommand("coeffs", "write x_hat (and optionally the multiplier table) as CSV");
    add_common(coeffs, false);
    std::string coeffs_out = "xhat.csv";
    std::string mult_out;
    coeffs->add_option("--out", coeffs_out, "CSV path for x_hat")->capture_default_str();
    coeffs->add_option("--multipliers", mult_out, "CSV path for the r_n multiplier table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 14;
    }
    cfg.exec = serial ? Exec::serial : Exec::parallel;

    try {
        if (*eigs) return cmd_eigs(eigs_alpha, eigs_n, eigs_out);
        if (*validate) {
            ValidationRun run = run_validation(cfg, vkind);
            report(run.cert);
            std::fflush(stdout);
            if (!run.cert.certified && run.cert.error_code)
                std::fprintf(stderr, "error: %s: %s\n", errc_name(*run.cert.error_code),
                             run.cert.error_message.c_str());
            if (!vout.empty()) write_json(vout, to_json(run.cert));
            return run.exit_code;
        }
        if (*coeffs) {
            try {
                check_config(cfg, false);
            } catch (const Error& e) {
                throw StageError(Stage::config, e);
            }
            GuessData g = compute_guess(cfg, cfg.trunc_N);
            try {
                write_csv_file(coeffs_out, g.xhat);
                if (!mult_out.empty()) {
                    std::ofstream f(mult_out);
                    if (!f) throw Error(Errc::IoError, "cannot open " + mult_out);
                    write_csv(f, g.psa.mult);
                }
            } catch (const Error& e) {
                throw StageError(Stage::io, e);
            }
            std::printf("wrote %zu coefficients to %s\n", g.xhat.size(), coeffs_out.c_str());
            return 0;
        }
    } catch (const StageError& e) {
        return fail(e);
    } catch (const Error& e) {
        return fail(StageError(Stage::io, e));
    }
    return 0;
}
