#include "wright/certificate.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <string>

namespace wright {

namespace {

constexpr int kDigits = 17;

std::string directed_decimal(double x, bool up) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0) return "0";
    // glibc prints the exact binary value; 780 digits cover every double
    static thread_local char buf[1024];
    std::snprintf(buf, sizeof buf, "%.780e", std::fabs(x));
    std::string s(buf);
    const auto epos = s.find('e');
    int exp10 = std::atoi(s.c_str() + epos + 1);
    std::string mant = s.substr(0, 1) + s.substr(2, epos - 2);
    std::string head = mant.substr(0, kDigits);
    bool dropped = mant.find_first_not_of('0', kDigits) != std::string::npos;
    // moving away from zero is rounding up for positive x and down for negative x
    if (dropped && (up == (x > 0))) {
        int i = kDigits - 1;
        while (i >= 0 && head[i] == '9') head[i--] = '0';
        if (i < 0) {
            head = "1" + std::string(kDigits - 1, '0');
            ++exp10;
        } else {
            ++head[i];
        }
    }
    std::string out = x < 0 ? "-" : "";
    out += head.substr(0, 1) + "." + head.substr(1);
    char e[16];
    std::snprintf(e, sizeof e, "e%+03d", exp10);
    return out + e;
}

}  // namespace

std::string decimal_up(double x) { return directed_decimal(x, true); }
std::string decimal_down(double x) { return directed_decimal(x, false); }

std::string xhat_sha256(const TaylorSeq2& x) {
    std::vector<double> buf;
    buf.reserve(2 * x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto m = x[i].mid();
        buf.push_back(m.real());
        buf.push_back(m.imag());
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(buf.data(), buf.size() * sizeof(double), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error(Errc::IoError, "sha256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string utc_timestamp() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::json interval_json(const RealInterval& x) {
    return nlohmann::json::array({decimal_down(x.lo), decimal_up(x.hi)});
}

nlohmann::json rect_json(const ComplexRect& z) { return {{"re", interval_json(z.re)}, {"im", interval_json(z.im)}}; }

nlohmann::json root_json(const RootCertificate& c) {
    nlohmann::json j = rect_json(c.enclosure);
    j["r0"] = decimal_up(c.r0);
    j["Y"] = decimal_up(c.Y);
    j["Z"] = decimal_up(c.Z);
    return j;
}

nlohmann::json pair_json(const SpectralPair& p) { return {{"plus", root_json(p.plus)}, {"minus", root_json(p.minus)}}; }

nlohmann::json bounds_json(const BoundSet& b) {
    return {{"Y0", decimal_up(b.Y0)}, {"Z0", decimal_up(b.Z0)}, {"Z1", decimal_up(b.Z1)}, {"Z2", decimal_up(b.Z2)}};
}

nlohmann::json tail_json(const TailData& t) {
    return {{"M", t.M},
            {"epsilon", decimal_down(t.epsilon)},
            {"normD", decimal_up(t.normD)},
            {"norm1", decimal_up(t.norm1)},
            {"normD1", decimal_up(t.normD1)},
            {"resolvent_tail", decimal_up(t.resolvent_tail)},
            {"resolvent_tail_sharp", decimal_up(t.resolvent_tail_sharp)},
            {"delta_tail", decimal_up(t.delta_tail)},
            {"finite_max", decimal_up(t.finite_max)},
            {"explicit_solves", t.explicit_solves}};
}

nlohmann::json to_json(const ValidationCertificate& c) {
    nlohmann::json j;
    j["kind"] = c.kind;
    j["certified"] = c.certified;
    nlohmann::json cfg = {{"alpha", c.alpha},         {"n", c.n}, {"trunc_N", c.trunc_N}, {"tail_M", c.tail_M},
                          {"xi_scale", c.xi_scale}, {"norm", c.norm}};
    // epsilon is fed back verbatim by --epsilon, so it is printed to round-trip
    if (c.tail) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", c.tail->epsilon);
        cfg["epsilon"] = buf;
    } else {
        cfg["epsilon"] = nullptr;
    }
    j["config"] = cfg;
    j["lambda_dde"] = c.lambda_dde ? pair_json(*c.lambda_dde) : nlohmann::json(nullptr);
    j["lambda_psa"] = c.lambda_psa ? pair_json(*c.lambda_psa) : nlohmann::json(nullptr);
    j["tail"] = c.tail ? tail_json(*c.tail) : nlohmann::json(nullptr);
    j["bounds_psa"] = c.bounds_psa ? bounds_json(*c.bounds_psa) : nlohmann::json(nullptr);
    j["bounds_dde"] = c.bounds_dde ? bounds_json(*c.bounds_dde) : nlohmann::json(nullptr);
    j["r_psa"] = c.r_psa ? nlohmann::json(decimal_up(*c.r_psa)) : nlohmann::json(nullptr);
    j["r_dde"] = c.r_dde ? nlohmann::json(decimal_up(*c.r_dde)) : nlohmann::json(nullptr);
    j["total_bound"] = c.total_bound ? nlohmann::json(decimal_up(*c.total_bound)) : nlohmann::json(nullptr);
    j["xhat_sha256"] = c.xhat_sha256;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& ch : c.checks) {
        nlohmann::json e = {{"name", ch.name}, {"passed", ch.passed}};
        if (!ch.detail.empty()) e["detail"] = ch.detail;
        checks.push_back(e);
    }
    j["checks"] = checks;
    if (c.error_code) j["error"] = {{"code", errc_name(*c.error_code)}, {"message", c.error_message}};
    j["timestamp"] = c.timestamp;
    return j;
}

}  // namespace wright
