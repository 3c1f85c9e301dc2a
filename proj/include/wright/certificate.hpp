#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wright/bounds.hpp"

namespace wright {

// Decimal strings that bound x from above (up = true) or below, 17 significant
// digits. The exact binary expansion is truncated and the last digit bumped
// away from x when anything nonzero was dropped.
std::string decimal_up(double x);
std::string decimal_down(double x);

// SHA-256 over the midpoint (re, im) doubles of x in storage order, as hex.
std::string xhat_sha256(const TaylorSeq2& x);

std::string utc_timestamp();

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationCertificate {
    std::string kind;  // dde, psa or distance
    double alpha = 0.0;
    int n = 0;
    int trunc_N = 0;
    int tail_M = 0;
    std::optional<double> epsilon;
    double xi_scale = 0.0;
    std::string norm = "l1";

    std::optional<SpectralPair> lambda_dde;
    std::optional<SpectralPair> lambda_psa;
    std::optional<TailData> tail;
    std::optional<BoundSet> bounds_psa;
    std::optional<BoundSet> bounds_dde;
    std::optional<double> r_psa;
    std::optional<double> r_dde;
    std::optional<double> total_bound;
    std::string xhat_sha256;
    std::vector<Check> checks;

    bool certified = false;
    std::optional<Errc> error_code;
    std::string error_message;
    std::string timestamp;
};

nlohmann::json interval_json(const RealInterval& x);
nlohmann::json rect_json(const ComplexRect& z);
nlohmann::json root_json(const RootCertificate& c);
nlohmann::json pair_json(const SpectralPair& p);
nlohmann::json bounds_json(const BoundSet& b);
nlohmann::json tail_json(const TailData& t);
nlohmann::json to_json(const ValidationCertificate& c);

}  // namespace wright
