#pragma once

#include <optional>
#include <string>

#include "wright/certificate.hpp"

namespace wright {

inline constexpr double kDefaultXiScale = 0.15;

struct RunConfig {
    double alpha = 2.0;
    int n = 10;
    int trunc_N = 25;
    int tail_M = 1000;
    double xi_scale = kDefaultXiScale;
    std::optional<double> epsilon;
    std::string out_path;
    Exec exec = Exec::parallel;
};

enum class Stage { config, census, sweep, recursion, bounds, radii, io };
const char* stage_name(Stage s);

// 0 ok; 10 census; 11 sweep; 12 resonance; 13 radii; 14 config; 1 anything else
int exit_code(Stage stage, Errc code);

/// A library error tagged with the pipeline stage it came from.
class StageError : public Error {
public:
    StageError(Stage stage, const Error& e) : Error(e.code(), e.detail()), stage_(stage) {}
    Stage stage() const { return stage_; }
    int exit_code() const { return wright::exit_code(stage_, code()); }

private:
    Stage stage_;
};

// n >= 1, N >= 2, M > N, xi_scale > 0; with need_dde also pi/2 < alpha < 5pi/2.
void check_config(const RunConfig& cfg, bool need_dde);

// Census, PSA tables up to degree maxdeg and the recursion for x_hat at trunc_N.
struct GuessData {
    ChebyshevScheme scheme;
    CensusResult census;
    ProblemData psa;
    TaylorSeq2 xhat;
};
GuessData compute_guess(const RunConfig& cfg, int maxdeg);

enum class ValidateKind { dde, psa, distance };
const char* validate_kind_name(ValidateKind k);

// Runs every stage and fills the certificate as it goes. On failure the
// certificate has certified = false, the failing check and the error; the
// returned exit code says which stage failed.
struct ValidationRun {
    ValidationCertificate cert;
    int exit_code = 0;
};
ValidationRun run_validation(const RunConfig& cfg, ValidateKind kind);

}  // namespace wright
