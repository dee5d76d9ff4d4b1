#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ldpcstore/tanner_graph.hpp"

namespace ldpcstore::avail {

// Exact binomial coefficient; integer arithmetic up to n = 64, log-space
// beyond.
double binomial(unsigned n, unsigned k);

// Availability of a file replicated S times: 1 - (1-mu)^S.
double replication_availability(double mu, unsigned S);
double replication_failure(double mu, unsigned S);

// Availability of an ideal erasure-coded file: any n of n+m blocks decode.
// The failure variant sums the complement tail directly, so values around
// 1e-8 keep full relative precision.
double erasure_availability(double mu, unsigned n, unsigned m);
double erasure_failure(double mu, unsigned n, unsigned m);

double code_rate(unsigned n, unsigned m);

// Equivalent ideal-code dimensions of an LDPC code with overhead factor f:
// n' = f*n (rounded up, conservative), m' = n+m-n'.
struct EquivalentParams {
    unsigned n_prime;
    unsigned m_prime;
};
EquivalentParams ldpc_equivalent_params(double f, unsigned n, unsigned m);

// Guaranteed availability of an LDPC-coded file given its certified
// f_max_blocks: any f_max_blocks of the n+m blocks decode, so this is the
// ideal-erasure tail at n' = f_max_blocks. The true availability of a
// concrete graph lies between this and erasure_availability(mu, n, m).
double ldpc_availability_bound(double mu, unsigned n, unsigned m, unsigned f_max_blocks);
double ldpc_failure_bound(double mu, unsigned n, unsigned m, unsigned f_max_blocks);

// Exact availability of a specific graph under i.i.d. block availability mu:
// sums mu^|B| (1-mu)^(n+m-|B|) over every decodable subset B. n+m <= 20.
double exact_graph_availability(const TannerGraph& graph, double mu);
double exact_graph_failure(const TannerGraph& graph, double mu);

struct CurvePoint {
    std::string scheme;
    double mu;
    double x;  // stretch factor S (fig 1 style) or n (fig 4 style)
    double failure;
};

struct CurveConfig {
    // stretch-sweep comparison: replication vs LDPC at fixed n and assumed f
    std::vector<double> mus{0.5, 0.95, 0.99};
    unsigned ldpc_n = 8;
    double ldpc_f = 1.1;
    double max_stretch = 4.0;

    // rate-sweep: ideal-erasure failure vs n at fixed mu
    double rate_mu = 0.95;
    std::vector<std::pair<unsigned, unsigned>> rates{{1, 3}, {1, 2}, {4, 7}, {2, 3}};
    unsigned n_max = 30;
};

// Failure-vs-stretch dataset: replication at integer S plus the LDPC
// equivalent code at f, one series per mu.
std::vector<CurvePoint> stretch_failure_curves(const CurveConfig& cfg);

// Failure-vs-n dataset at fixed mu, one series per code rate; only n where
// the rate gives integral m are emitted.
std::vector<CurvePoint> rate_failure_curves(const CurveConfig& cfg);

// CSV: header `scheme,mu,x,failure`, >= 12 significant digits.
std::string curves_csv(const std::vector<CurvePoint>& points);

}  // namespace ldpcstore::avail
