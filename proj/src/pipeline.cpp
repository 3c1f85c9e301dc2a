#include "wright/pipeline.hpp"

#include <cmath>
#include <utility>

namespace wright {

const char* stage_name(Stage s) {
    switch (s) {
        case Stage::config: return "config";
        case Stage::census: return "census";
        case Stage::sweep: return "sweep";
        case Stage::recursion: return "recursion";
        case Stage::bounds: return "bounds";
        case Stage::radii: return "radii";
        case Stage::io: return "io";
    }
    return "?";
}

int exit_code(Stage stage, Errc code) {
    if (code == Errc::ResonantIndex) return 12;
    if (code == Errc::AlphaOutOfRange || code == Errc::InvalidConfig) return 14;
    if (code == Errc::NoNegativePoint) return 13;
    switch (stage) {
        case Stage::config: return 14;
        case Stage::census: return 10;
        case Stage::sweep: return 11;
        case Stage::bounds:
        case Stage::radii: return 13;
        default: return 1;
    }
}

const char* validate_kind_name(ValidateKind k) {
    switch (k) {
        case ValidateKind::dde: return "dde";
        case ValidateKind::psa: return "psa";
        case ValidateKind::distance: return "distance";
    }
    return "?";
}

void check_config(const RunConfig& cfg, bool need_dde) {
    if (!std::isfinite(cfg.alpha) || cfg.alpha <= 0) throw Error(Errc::InvalidConfig, "alpha must be positive");
    if (cfg.n < 1) throw Error(Errc::InvalidConfig, "n must be >= 1");
    if (cfg.trunc_N < 2) throw Error(Errc::InvalidConfig, "trunc must be >= 2");
    if (cfg.tail_M <= cfg.trunc_N) throw Error(Errc::InvalidConfig, "tail-m must exceed trunc");
    if (!(cfg.xi_scale > 0) || !std::isfinite(cfg.xi_scale))
        throw Error(Errc::InvalidConfig, "xi-scale must be positive");
    if (cfg.epsilon && !(*cfg.epsilon > 0)) throw Error(Errc::InvalidConfig, "epsilon must be positive");
    if (need_dde && !alpha_in_hayes_range(cfg.alpha))
        throw Error(Errc::AlphaOutOfRange, "alpha must lie in (pi/2, 5pi/2)");
}

namespace {

template <class F>
auto staged(Stage s, F&& f) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError(s, e);
    }
}

}  // namespace

GuessData compute_guess(const RunConfig& cfg, int maxdeg) {
    const RealInterval alpha(cfg.alpha);
    GuessData g;
    g.scheme = staged(Stage::census, [&] { return build_scheme(cfg.n, alpha); });
    g.census = staged(Stage::census, [&] { return census_psa(g.scheme); });
    g.psa = staged(Stage::sweep, [&] {
        return make_problem(Kind::psa, alpha, *g.census.unstable, &g.scheme, maxdeg, cfg.xi_scale, cfg.exec);
    });
    g.xhat = staged(Stage::recursion, [&] { return recurse_coeffs(g.psa, cfg.trunc_N); });
    return g;
}

ValidationRun run_validation(const RunConfig& cfg, ValidateKind kind) {
    ValidationRun run;
    ValidationCertificate& c = run.cert;
    c.kind = validate_kind_name(kind);
    c.alpha = cfg.alpha;
    c.n = cfg.n;
    c.trunc_N = cfg.trunc_N;
    c.tail_M = cfg.tail_M;
    c.epsilon = cfg.epsilon;
    c.xi_scale = cfg.xi_scale;
    c.timestamp = utc_timestamp();
    const bool do_psa = kind != ValidateKind::dde;
    const bool do_dde = kind != ValidateKind::psa;
    const int N = cfg.trunc_N;
    const RealInterval alpha(cfg.alpha);

    // each gate records a check, passing or not, before the error propagates
    auto gate = [&](const std::string& name, Stage stage, auto&& f) {
        try {
            auto v = staged(stage, f);
            c.checks.push_back({name, true, ""});
            return v;
        } catch (const Error& e) {
            c.checks.push_back({name, false, e.what()});
            throw;
        }
    };

    try {
        gate("config", Stage::config, [&] {
            check_config(cfg, do_dde);
            return 0;
        });
        ChebyshevScheme scheme = gate("scheme", Stage::census, [&] { return build_scheme(cfg.n, alpha); });
        CensusResult census = gate("psa_census", Stage::census, [&] { return census_psa(scheme); });
        c.lambda_psa = census.unstable;
        if (do_dde) c.lambda_dde = gate("dde_pair", Stage::census, [&] { return find_dde_pair(alpha); });
        if (do_psa) {
            c.tail = gate("sweep_invertible", Stage::sweep, [&] {
                return invertibility_sweep(scheme, *census.unstable, cfg.tail_M, cfg.epsilon, cfg.exec);
            });
            c.checks.push_back({"threshold_norm", c.tail->threshold_norm, ""});
            c.checks.push_back({"threshold_sharp", c.tail->threshold_sharp, ""});
        }
        // PSA tables go to 2N for the Y0 tail; dde only needs them up to N to build x_hat
        ProblemData psa = gate("psa_multipliers", Stage::sweep, [&] {
            return make_problem(Kind::psa, alpha, *census.unstable, &scheme, do_psa ? 2 * N : N, cfg.xi_scale,
                                cfg.exec);
        });
        TaylorSeq2 xhat = gate("recursion", Stage::recursion, [&] { return recurse_coeffs(psa, N); });
        c.xhat_sha256 = xhat_sha256(xhat);

        if (do_psa) {
            c.bounds_psa = gate("psa_bounds", Stage::bounds, [&] {
                ApproxSolution sol = make_approx_solution(psa, xhat, N, cfg.exec);
                return compute_bounds(psa, sol, &*c.tail, cfg.exec);
            });
            c.r_psa = gate("psa_radii", Stage::radii, [&] { return radii_root(*c.bounds_psa); });
        }
        if (do_dde) {
            c.bounds_dde = gate("dde_bounds", Stage::bounds, [&] {
                ProblemData dde = make_problem(Kind::dde, alpha, *c.lambda_dde, nullptr, 2 * N, cfg.xi_scale, cfg.exec);
                ApproxSolution sol = make_approx_solution(dde, xhat, N, cfg.exec);
                return compute_bounds(dde, sol, nullptr, cfg.exec);
            });
            c.r_dde = gate("dde_radii", Stage::radii, [&] { return radii_root(*c.bounds_dde); });
        }
        if (kind == ValidateKind::distance) {
            const std::string h_psa = c.xhat_sha256;
            const std::string h_dde = xhat_sha256(xhat);
            c.total_bound = gate("xhat_shared", Stage::radii,
                                 [&] { return distance_bound(*c.r_psa, *c.r_dde, h_psa, h_dde); });
        }
        c.certified = true;
        run.exit_code = 0;
    } catch (const StageError& e) {
        c.certified = false;
        c.error_code = e.code();
        c.error_message = e.detail();
        run.exit_code = e.exit_code();
    }
    return run;
}

}  // namespace wright
