#pragma once

#include <random>
#include <string>
#include <vector>

#include "futaki/factored_rational.hpp"
#include "futaki/lattice.hpp"
#include "futaki/types.hpp"

namespace futaki {

// ---------------------------------------------------------------------------
// Fan: ray generators plus maximal cones as ray-index lists.

struct Fan {
    int n = 0;
    std::vector<VecZ> rays;
    std::vector<std::vector<int>> cones;  // each of length n, 0-based

    /// Rows = ray generators of cone i.
    MatZ cone_matrix(int i) const {
        const auto& c = cones[static_cast<size_t>(i)];
        MatZ m(n, n);
        for (int r = 0; r < static_cast<int>(c.size()); ++r)
            m.row(r) = rays[static_cast<size_t>(c[static_cast<size_t>(r)])].transpose();
        return m;
    }
};

struct ConeData {
    int coneIndex = -1;
    CharForm m;                     // anticanonical vector: <m, v> = -1 on rays
    std::vector<CharForm> weights;  // tangent weights w_i = -u_i
    FactoredRational beta;          // 1 / prod(weights)
    bool smooth = false;
};

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
    std::vector<Int> coneDet;
    std::vector<bool> coneSmooth;
    std::vector<std::string> errors;    // structural failures
    std::vector<std::string> warnings;  // non-smooth / non-Gorenstein findings
    bool complete = false;
    bool gorenstein = false;
    int samplesTried = 0;

    bool all_smooth() const {
        for (bool s : coneSmooth)
            if (!s) return false;
        return !coneSmooth.empty();
    }
    bool ok() const { return errors.empty() && all_smooth() && complete && gorenstein; }
};

namespace detail {

inline bool ray_primitive(const VecZ& v) {
    Int g = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, v(i));
    return g == 1;
}

/// Barycentric coordinates of d in the cone spanned by the rows of `rays`.
inline VecQ cone_coordinates(const MatZ& rays, const VecZ& d) {
    return cramer_solve(rays.transpose(), d);
}

}  // namespace detail

/// Structural checks plus a probabilistic completeness proxy: a random
/// direction must lie in exactly one maximal cone.
inline ValidationReport validate_fan(const Fan& f, int samples = 64, unsigned seed = 12345) {
    ValidationReport rep;
    const int n = f.n;
    if (n <= 0) {
        rep.errors.push_back("fan dimension must be positive");
        return rep;
    }
    for (size_t r = 0; r < f.rays.size(); ++r) {
        if (f.rays[r].size() != n) {
            rep.errors.push_back("ray " + std::to_string(r) + " has wrong length");
            return rep;
        }
        if (!detail::ray_primitive(f.rays[r]))
            rep.errors.push_back("ray " + std::to_string(r) + " is not primitive");
    }
    std::vector<bool> used(f.rays.size(), false);
    for (size_t ci = 0; ci < f.cones.size(); ++ci) {
        const auto& c = f.cones[ci];
        if (static_cast<int>(c.size()) != n) {
            rep.errors.push_back("cone " + std::to_string(ci) + " does not have n rays");
            continue;
        }
        bool bad = false;
        for (size_t a = 0; a < c.size(); ++a) {
            int idx = c[a];
            if (idx < 0 || idx >= static_cast<int>(f.rays.size())) {
                rep.errors.push_back("cone " + std::to_string(ci) + " references ray " +
                                     std::to_string(idx) + " out of range");
                bad = true;
                continue;
            }
            used[static_cast<size_t>(idx)] = true;
            for (size_t b = a + 1; b < c.size(); ++b)
                if (c[b] == idx) {
                    rep.errors.push_back("cone " + std::to_string(ci) + " repeats ray " +
                                         std::to_string(idx));
                    bad = true;
                }
        }
        if (bad) continue;
        Int d = det(f.cone_matrix(static_cast<int>(ci)));
        rep.coneDet.push_back(d);
        bool smooth = (d == 1 || d == -1);
        rep.coneSmooth.push_back(smooth);
        if (d == 0)
            rep.errors.push_back("cone " + std::to_string(ci) + " is degenerate (det = 0)");
        else if (!smooth)
            rep.warnings.push_back("cone " + std::to_string(ci) + " is not smooth (|det| = " +
                                   Int(abs(d)).str() + ")");
    }
    for (size_t r = 0; r < used.size(); ++r)
        if (!used[r]) rep.errors.push_back("ray " + std::to_string(r) + " unused by any cone");
    if (!rep.errors.empty()) return rep;

    // Completeness proxy: random rational directions, exact membership.
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> dist(-997, 997);
    rep.complete = true;
    int done = 0;
    for (int attempt = 0; done < samples && attempt < samples * 20; ++attempt) {
        VecZ d(n);
        bool zero = true;
        for (int i = 0; i < n; ++i) {
            d(i) = Int(dist(rng));
            if (d(i) != 0) zero = false;
        }
        if (zero) continue;
        int inside = 0;
        bool boundary = false;
        for (size_t ci = 0; ci < f.cones.size(); ++ci) {
            VecQ lam = detail::cone_coordinates(f.cone_matrix(static_cast<int>(ci)), d);
            bool in = true;
            for (Eigen::Index i = 0; i < lam.size(); ++i) {
                if (lam(i) == 0) boundary = true;
                if (lam(i) < 0) { in = false; break; }
            }
            if (in) ++inside;
        }
        if (boundary) continue;  // resample away from cone walls
        ++done;
        if (inside != 1) {
            rep.complete = false;
            rep.errors.push_back("direction (" + std::to_string(done) +
                                 "-th sample) lies in " + std::to_string(inside) +
                                 " maximal cones; fan not complete");
            break;
        }
    }
    rep.samplesTried = done;

    rep.gorenstein = true;
    for (size_t ci = 0; ci < f.cones.size(); ++ci) {
        CharForm m = solve_support(f.cone_matrix(static_cast<int>(ci)), Rat(-1));
        for (Eigen::Index i = 0; i < m.size(); ++i)
            if (!is_integral(m(i))) {
                rep.gorenstein = false;
                rep.warnings.push_back("cone " + std::to_string(ci) +
                                       " has non-integral anticanonical vector");
                break;
            }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Per-cone localization data

inline ConeData cone_data(const Fan& f, int i) {
    MatZ m = f.cone_matrix(i);
    Int d = det(m);
    if (d != 1 && d != -1)
        throw NonSmoothCone("cone " + std::to_string(i) + " is not smooth (|det| = " +
                            Int(abs(d)).str() + "); supply a resolved fan");
    ConeData cd;
    cd.coneIndex = i;
    cd.smooth = true;
    cd.m = solve_support(m, Rat(-1));
    for (const CharForm& u : dual_basis(m)) cd.weights.push_back(-u);
    cd.beta = FactoredRational::reciprocal_of_forms(cd.weights);
    return cd;
}

/// sum over maximal cones of m(sigma)^p * beta_sigma, folded in cone order.
inline FactoredRational toric_residue_sum(const Fan& f, int p) {
    FactoredRational acc = FactoredRational::zero(f.n);
    for (size_t i = 0; i < f.cones.size(); ++i) {
        ConeData cd = cone_data(f, static_cast<int>(i));
        acc = acc + form_pow(cd.m, p) * cd.beta;
    }
    return acc;
}

/// Futaki invariant F = (1/(n+1)) * sum m(sigma)^{n+1} beta_sigma.
inline CharForm toric_futaki(const Fan& f) {
    MultiPoly p = toric_residue_sum(f, f.n + 1).to_poly();
    return p.as_linear_form() * Rat(1, f.n + 1);
}

/// Anticanonical degree (-K)^n = sum m(sigma)^n beta_sigma.
inline Rat toric_degree(const Fan& f) {
    MultiPoly p = toric_residue_sum(f, f.n).to_poly();
    return p.constant_value();
}

}  // namespace futaki
