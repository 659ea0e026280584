#pragma once

#include <string>
#include <vector>

#include "futaki/multipoly.hpp"
#include "futaki/types.hpp"

namespace futaki {

// ---------------------------------------------------------------------------
// Complete intersections in P^N: torus weight data for k semi-invariant
// defining polynomials of degrees d_1..d_k.

struct CISpec {
    int N = 0;                  // ambient projective dimension
    int k = 0;                  // number of defining equations
    std::vector<int> degrees;   // d_1..d_k
    int m = 0;                  // torus rank
    MatZ gamma;                 // m x (N+1) coordinate weights, rows sum to 0
    MatZ kweights;              // m x k semi-invariance weights

    int total_degree() const {
        int d = 0;
        for (int dj : degrees) d += dj;
        return d;
    }

    void validate() const {
        if (N <= 0 || k <= 0 || m <= 0) throw Error("ci: N, k, m must be positive");
        if (k >= N) throw Error("ci: need k < N");
        if (static_cast<int>(degrees.size()) != k) throw Error("ci: degrees list has wrong length");
        for (int dj : degrees)
            if (dj < 1) throw Error("ci: degrees must be >= 1");
        if (total_degree() > N) throw Error("ci: need d_1 + ... + d_k <= N (Fano condition)");
        if (gamma.rows() != m || gamma.cols() != N + 1)
            throw Error("ci: gamma must be m x (N+1)");
        if (kweights.rows() != m || kweights.cols() != k)
            throw Error("ci: kweights must be m x k");
        for (int i = 0; i < m; ++i) {
            Int s = 0;
            for (int j = 0; j <= N; ++j) s += gamma(i, j);
            if (s != 0)
                throw WeightSumNonzero("ci: gamma row " + std::to_string(i + 1) +
                                       " sums to " + s.str() + ", expected 0");
        }
    }
};

/// Direct route: expand ((N-d+1)h - k_i e)^{N-k+1} * prod_j (d_j h + k_i^j e)
/// in Q[h, e], read off the h^N e coefficient, divide by N-k+1. One torus
/// coordinate at a time; requires the gamma rows to sum to 0.
inline CharForm ci_futaki_direct(const CISpec& s) {
    s.validate();
    const int d = s.total_degree();
    CharForm f = zero_form(s.m);
    for (int i = 0; i < s.m; ++i) {
        Int ki = 0;
        for (int j = 0; j < s.k; ++j) ki += s.kweights(i, j);
        // two variables: h (index 0) and e (index 1)
        MultiPoly h = MultiPoly::variable(2, 0);
        MultiPoly e = MultiPoly::variable(2, 1);
        MultiPoly base = h * Rat(s.N - d + 1) - e * Rat(ki);
        MultiPoly p = pow(base, s.N - s.k + 1);
        for (int j = 0; j < s.k; ++j)
            p = p * (h * Rat(s.degrees[static_cast<size_t>(j)]) + e * Rat(s.kweights(i, j)));
        f(i) = p.coefficient({s.N, 1}) * Rat(1, s.N - s.k + 1);
    }
    return f;
}

/// Closed-form route:
///   a_i = (N-d+1)^{N-k} * prod_j d_j * sum_j ((N-d+1)/((N-k+1) d_j) - 1) k_i^j.
inline CharForm ci_futaki_closed(const CISpec& s) {
    s.validate();
    const int d = s.total_degree();
    Rat lead = 1;
    for (int t = 0; t < s.N - s.k; ++t) lead *= Rat(s.N - d + 1);
    for (int dj : s.degrees) lead *= Rat(dj);
    CharForm f = zero_form(s.m);
    for (int i = 0; i < s.m; ++i) {
        Rat acc = 0;
        for (int j = 0; j < s.k; ++j) {
            Rat frac(s.N - d + 1, (s.N - s.k + 1) * s.degrees[static_cast<size_t>(j)]);
            acc += (frac - 1) * Rat(s.kweights(i, j));
        }
        f(i) = lead * acc;
    }
    return f;
}

}  // namespace futaki
