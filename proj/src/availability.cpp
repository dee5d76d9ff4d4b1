#include "ldpcstore/availability.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <sstream>

#include "ldpcstore/codec.hpp"
#include "ldpcstore/errors.hpp"

namespace ldpcstore::avail {

namespace {

void check_mu(double mu) {
    if (!(mu >= 0.0 && mu <= 1.0)) throw ConfigError("mu must be in [0, 1]");
}

// Pascal rows in uint64; every entry of row 64 fits.
std::uint64_t binomial_u64(unsigned n, unsigned k) {
    std::array<std::uint64_t, 65> row{};
    row[0] = 1;
    for (unsigned r = 1; r <= n; ++r)
        for (unsigned c = r; c > 0; --c) row[c] += row[c - 1];
    return row[k];
}

// P(exactly i of `total` blocks available), in long double.
long double binom_pmf(long double mu, unsigned total, unsigned i) {
    return static_cast<long double>(binomial(total, i)) * std::pow(mu, static_cast<int>(i)) *
           std::pow(1.0L - mu, static_cast<int>(total - i));
}

}  // namespace

double binomial(unsigned n, unsigned k) {
    if (k > n) return 0.0;
    if (n <= 64) return static_cast<double>(binomial_u64(n, k));
    return std::exp(std::lgamma(static_cast<double>(n) + 1) -
                    std::lgamma(static_cast<double>(k) + 1) -
                    std::lgamma(static_cast<double>(n - k) + 1));
}

double replication_availability(double mu, unsigned S) {
    check_mu(mu);
    if (S < 1) throw ConfigError("replication: S must be >= 1");
    return static_cast<double>(1.0L - std::pow(1.0L - static_cast<long double>(mu),
                                               static_cast<int>(S)));
}

double replication_failure(double mu, unsigned S) {
    check_mu(mu);
    if (S < 1) throw ConfigError("replication: S must be >= 1");
    return static_cast<double>(std::pow(1.0L - static_cast<long double>(mu),
                                        static_cast<int>(S)));
}

double erasure_availability(double mu, unsigned n, unsigned m) {
    check_mu(mu);
    if (n < 1) throw ConfigError("erasure: n must be >= 1");
    const unsigned total = n + m;
    long double sum = 0.0L;
    for (unsigned i = n; i <= total; ++i) sum += binom_pmf(mu, total, i);
    return static_cast<double>(std::min(sum, 1.0L));
}

double erasure_failure(double mu, unsigned n, unsigned m) {
    check_mu(mu);
    if (n < 1) throw ConfigError("erasure: n must be >= 1");
    const unsigned total = n + m;
    long double sum = 0.0L;
    for (unsigned i = 0; i < n; ++i) sum += binom_pmf(mu, total, i);
    return static_cast<double>(std::min(sum, 1.0L));
}

double code_rate(unsigned n, unsigned m) {
    if (n < 1) throw ConfigError("code_rate: n must be >= 1");
    return static_cast<double>(n) / static_cast<double>(n + m);
}

EquivalentParams ldpc_equivalent_params(double f, unsigned n, unsigned m) {
    if (f < 1.0) throw ConfigError("equivalent params: f must be >= 1");
    const double np = f * static_cast<double>(n);
    if (np > static_cast<double>(n + m) + 1e-9)
        throw ConfigError("equivalent params: f*n exceeds n+m");
    const unsigned n_prime = static_cast<unsigned>(std::ceil(np - 1e-9));
    return EquivalentParams{n_prime, n + m - n_prime};
}

double ldpc_availability_bound(double mu, unsigned n, unsigned m, unsigned f_max_blocks) {
    if (f_max_blocks < n || f_max_blocks > n + m)
        throw ConfigError("availability bound: f_max_blocks out of [n, n+m]");
    return erasure_availability(mu, f_max_blocks, n + m - f_max_blocks);
}

double ldpc_failure_bound(double mu, unsigned n, unsigned m, unsigned f_max_blocks) {
    if (f_max_blocks < n || f_max_blocks > n + m)
        throw ConfigError("availability bound: f_max_blocks out of [n, n+m]");
    return erasure_failure(mu, f_max_blocks, n + m - f_max_blocks);
}

namespace {

// Shared enumeration for the exact oracle: sums the failure side (usually
// the small one) and derives availability as its complement.
long double graph_failure_sum(const TannerGraph& graph, long double mu) {
    const std::size_t total = graph.total_blocks();
    if (total > 20) throw SizeLimitExceeded("exact_graph_availability: n+m must be <= 20");
    const auto masks = graph.coding_masks();
    const std::size_t n = graph.n();
    const std::size_t m = graph.m();

    std::array<long double, 21> p_up{}, p_down{};
    p_up[0] = p_down[0] = 1.0L;
    for (std::size_t i = 1; i <= total; ++i) {
        p_up[i] = p_up[i - 1] * mu;
        p_down[i] = p_down[i - 1] * (1.0L - mu);
    }

    long double failure = 0.0L;
    const std::uint64_t end = std::uint64_t{1} << total;
    for (std::uint64_t subset = 0; subset < end; ++subset) {
        if (!codec::is_decodable_mask(masks, n, m, subset)) {
            const unsigned up = static_cast<unsigned>(std::popcount(subset));
            failure += p_up[up] * p_down[total - up];
        }
    }
    return failure;
}

}  // namespace

double exact_graph_availability(const TannerGraph& graph, double mu) {
    check_mu(mu);
    return static_cast<double>(1.0L - graph_failure_sum(graph, mu));
}

double exact_graph_failure(const TannerGraph& graph, double mu) {
    check_mu(mu);
    return static_cast<double>(graph_failure_sum(graph, mu));
}

std::vector<CurvePoint> stretch_failure_curves(const CurveConfig& cfg) {
    std::vector<CurvePoint> points;
    const unsigned n = cfg.ldpc_n;
    for (double mu : cfg.mus) {
        check_mu(mu);
        for (unsigned S = 1; S <= static_cast<unsigned>(cfg.max_stretch + 1e-9); ++S)
            points.push_back({"replication", mu, static_cast<double>(S),
                              replication_failure(mu, S)});
        for (unsigned m = 1; n + m <= static_cast<unsigned>(cfg.max_stretch * n + 1e-9); ++m) {
            const double fn = cfg.ldpc_f * n;
            if (fn > n + m) continue;  // equivalent code infeasible at this stretch
            const auto eq = ldpc_equivalent_params(cfg.ldpc_f, n, m);
            points.push_back({"ldpc", mu, static_cast<double>(n + m) / n,
                              erasure_failure(mu, eq.n_prime, eq.m_prime)});
        }
    }
    return points;
}

std::vector<CurvePoint> rate_failure_curves(const CurveConfig& cfg) {
    std::vector<CurvePoint> points;
    check_mu(cfg.rate_mu);
    for (const auto& [num, den] : cfg.rates) {
        const std::string scheme = "rate-" + std::to_string(num) + "/" + std::to_string(den);
        for (unsigned n = num; n <= cfg.n_max; n += num) {
            // rate n/(n+m) = num/den requires m = n*(den-num)/num, integral here
            const unsigned m = n / num * (den - num);
            points.push_back({scheme, cfg.rate_mu, static_cast<double>(n),
                              erasure_failure(cfg.rate_mu, n, m)});
        }
    }
    return points;
}

std::string curves_csv(const std::vector<CurvePoint>& points) {
    std::ostringstream out;
    out.precision(14);
    out << "scheme,mu,x,failure\n";
    for (const auto& p : points)
        out << p.scheme << ',' << p.mu << ',' << p.x << ',' << p.failure << '\n';
    return out.str();
}

}  // namespace ldpcstore::avail
