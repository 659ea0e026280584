#pragma once

#include <vector>

#include "futaki/types.hpp"

namespace futaki {

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Int det(MatZ a) {
    const Eigen::Index n = a.rows();
    if (n != a.cols()) throw Error("det: matrix not square");
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            Eigen::Index p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.row(k).swap(a.row(p));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i) {
            for (Eigen::Index j = k + 1; j < n; ++j) {
                a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

/// Solve A x = b exactly by Cramer's rule over Bareiss determinants.
inline VecQ cramer_solve(const MatZ& a, const VecZ& b) {
    const Eigen::Index n = a.rows();
    Int d = det(a);
    if (d == 0) throw SingularCone("singular integer system (det = 0)");
    VecQ x(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        MatZ ai = a;
        ai.col(i) = b;
        Int num = det(ai);
        x(i) = d < 0 ? Rat(-num, -d) : Rat(num, d);
    }
    return x;
}

/// Rows of `rays` are lattice vectors v_1..v_n; returns u_1..u_n in M_Q with
/// <u_i, v_j> = delta_ij.
inline std::vector<CharForm> dual_basis(const MatZ& rays) {
    const Eigen::Index n = rays.rows();
    std::vector<CharForm> us;
    us.reserve(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        VecZ e = VecZ::Zero(n);
        e(i) = 1;
        us.push_back(cramer_solve(rays, e));
    }
    return us;
}

/// The unique form m with <m, v_j> = value for every row v_j of `rays`.
inline CharForm solve_support(const MatZ& rays, const Rat& value) {
    VecZ ones = VecZ::Constant(rays.rows(), 1);
    VecQ base = cramer_solve(rays, ones);
    return base * value;
}

// ---------------------------------------------------------------------------
// Rational Gaussian elimination, for over-determined exact systems.

enum class SolveStatus { Unique, Inconsistent, Underdetermined };

struct LinSolveResult {
    SolveStatus status;
    VecQ solution;  // valid iff status == Unique
};

inline LinSolveResult gauss_solve(MatQ a, VecQ b) {
    const Eigen::Index rows = a.rows(), cols = a.cols();
    Eigen::Index rank = 0;
    std::vector<Eigen::Index> pivot_col;
    for (Eigen::Index c = 0; c < cols && rank < rows; ++c) {
        Eigen::Index p = rank;
        while (p < rows && a(p, c) == 0) ++p;
        if (p == rows) continue;
        a.row(rank).swap(a.row(p));
        std::swap(b(rank), b(p));
        Rat inv = Rat(1) / a(rank, c);
        a.row(rank) *= inv;
        b(rank) *= inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == rank || a(i, c) == 0) continue;
            Rat f = a(i, c);
            a.row(i) -= f * a.row(rank);
            b(i) -= f * b(rank);
        }
        pivot_col.push_back(c);
        ++rank;
    }
    for (Eigen::Index i = rank; i < rows; ++i)
        if (b(i) != 0) return {SolveStatus::Inconsistent, VecQ()};
    if (rank < cols) return {SolveStatus::Underdetermined, VecQ()};
    VecQ x = VecQ::Zero(cols);
    for (Eigen::Index r = 0; r < rank; ++r) x(pivot_col[static_cast<size_t>(r)]) = b(r);
    return {SolveStatus::Unique, x};
}

inline Eigen::Index rank(MatQ a) {
    const Eigen::Index rows = a.rows(), cols = a.cols();
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index p = r;
        while (p < rows && a(p, c) == 0) ++p;
        if (p == rows) continue;
        a.row(r).swap(a.row(p));
        for (Eigen::Index i = r + 1; i < rows; ++i) {
            if (a(i, c) == 0) continue;
            Rat f = a(i, c) / a(r, c);  // materialize before the aliasing row update
            a.row(i) -= f * a.row(r);
        }
        ++r;
    }
    return r;
}

}  // namespace futaki
