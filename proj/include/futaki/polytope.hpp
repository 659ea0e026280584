#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "futaki/lattice.hpp"
#include "futaki/toric.hpp"
#include "futaki/types.hpp"

namespace futaki {

/// {u in M_R : <u, v> >= -1 for every facet normal v}.
struct HPolytope {
    std::vector<VecZ> normals;
    int n() const { return normals.empty() ? 0 : static_cast<int>(normals[0].size()); }
};

struct VPolytope {
    std::vector<CharForm> vertices;
};

/// One facet per ray; small resolutions add no rays, so a resolved fan
/// yields the polytope of the variety it resolves.
inline HPolytope anticanonical_polytope(const Fan& f) {
    HPolytope p;
    p.normals = f.rays;
    return p;
}

namespace detail {

inline bool lex_less(const VecQ& a, const VecQ& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a(i) != b(i)) return a(i) < b(i);
    return false;
}

/// Direction spanning the kernel of a rank n-1 (n-1) x n integer matrix,
/// by signed maximal minors.
inline VecZ kernel_direction(const MatZ& a) {
    const Eigen::Index n = a.cols();
    VecZ d(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        MatZ minor(n - 1, n - 1);
        for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
            if (c == i) continue;
            minor.col(cc++) = a.col(c);
        }
        d(i) = (i % 2 == 0 ? 1 : -1) * det(minor);
    }
    return d;
}

inline void check_bounded(const HPolytope& p) {
    const int n = p.n();
    const auto& rows = p.normals;
    MatQ a(static_cast<Eigen::Index>(rows.size()), n);
    for (size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < n; ++c) a(static_cast<Eigen::Index>(r), c) = Rat(rows[r](c));
    if (rank(a) < n) throw UnboundedPolytope("facet normals do not span M_R");
    // A nonzero recession cone (A d >= 0) is pointed and full-rank here, so it
    // has an extreme ray supported on n-1 independent rows.
    std::vector<int> idx(rows.size());
    std::vector<bool> pick(rows.size(), false);
    std::fill(pick.end() - (n - 1), pick.end(), true);
    if (n == 1) {
        bool pos = false, neg = false;
        for (const auto& v : rows) {
            if (v(0) > 0) pos = true;
            if (v(0) < 0) neg = true;
        }
        if (!(pos && neg)) throw UnboundedPolytope("recession direction exists");
        return;
    }
    do {
        MatZ sub(n - 1, n);
        Eigen::Index r = 0;
        for (size_t i = 0; i < rows.size(); ++i)
            if (pick[i]) sub.row(r++) = rows[i].transpose();
        VecZ d = kernel_direction(sub);
        bool zero = true;
        for (Eigen::Index i = 0; i < d.size(); ++i)
            if (d(i) != 0) zero = false;
        if (zero) continue;  // rows dependent
        for (int flip = 0; flip < 2; ++flip) {
            bool feasible = true;
            for (const auto& v : rows) {
                Int dot = 0;
                for (Eigen::Index i = 0; i < d.size(); ++i) dot += v(i) * d(i);
                if (dot < 0) { feasible = false; break; }
            }
            if (feasible)
                throw UnboundedPolytope("recession direction " +
                                        format_form(d.cast<Rat>(), "u") + " exists");
            d = -d;
        }
    } while (std::next_permutation(pick.begin(), pick.end()));
}

}  // namespace detail

/// Exhaustive vertex enumeration over n-subsets of facets.
inline VPolytope enumerate_vertices(const HPolytope& p) {
    const int n = p.n();
    if (n == 0 || static_cast<int>(p.normals.size()) < n)
        throw UnboundedPolytope("fewer facets than dimensions");
    detail::check_bounded(p);

    std::vector<bool> pick(p.normals.size(), false);
    std::fill(pick.end() - n, pick.end(), true);
    std::vector<CharForm> found;
    do {
        MatZ sub(n, n);
        Eigen::Index r = 0;
        for (size_t i = 0; i < p.normals.size(); ++i)
            if (pick[i]) sub.row(r++) = p.normals[i].transpose();
        if (det(sub) == 0) continue;
        CharForm u = solve_support(sub, Rat(-1));
        bool inside = true;
        for (const auto& v : p.normals) {
            Rat dot = 0;
            for (Eigen::Index i = 0; i < u.size(); ++i) dot += u(i) * Rat(v(i));
            if (dot < -1) { inside = false; break; }
        }
        if (inside) found.push_back(u);
    } while (std::next_permutation(pick.begin(), pick.end()));

    std::sort(found.begin(), found.end(), detail::lex_less);
    found.erase(std::unique(found.begin(), found.end(),
                            [](const VecQ& a, const VecQ& b) { return exact_eq(a, b); }),
                found.end());
    VPolytope out;
    out.vertices = std::move(found);
    return out;
}

namespace detail {

inline Rat det_q(MatQ a) {
    const Eigen::Index n = a.rows();
    Rat d = 1;
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index p = k;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) return Rat(0);
        if (p != k) {
            a.row(k).swap(a.row(p));
            d = -d;
        }
        d *= a(k, k);
        for (Eigen::Index i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rat f = a(i, k) / a(k, k);  // materialize before the aliasing row update
            a.row(i) -= f * a.row(k);
        }
    }
    return d;
}

inline Eigen::Index affine_rank(const std::vector<CharForm>& verts) {
    if (verts.size() <= 1) return 0;
    MatQ a(static_cast<Eigen::Index>(verts.size() - 1), verts[0].size());
    for (size_t i = 1; i < verts.size(); ++i)
        a.row(static_cast<Eigen::Index>(i - 1)) = (verts[i] - verts[0]).transpose();
    return rank(a);
}

/// Proper faces of the given vertex set: subsets cut out by a polytope normal
/// with affine dimension dim-1, deduplicated across normals.
inline std::vector<std::vector<CharForm>> proper_faces(const std::vector<CharForm>& verts,
                                                       int dim,
                                                       const std::vector<VecZ>& normals) {
    std::vector<std::vector<CharForm>> faces;
    std::set<std::vector<size_t>> seen;
    for (const auto& nv : normals) {
        std::vector<CharForm> sub;
        std::vector<size_t> key;
        for (size_t i = 0; i < verts.size(); ++i) {
            Rat dot = 0;
            for (Eigen::Index c = 0; c < verts[i].size(); ++c) dot += verts[i](c) * Rat(nv(c));
            if (dot == -1) {
                sub.push_back(verts[i]);
                key.push_back(i);
            }
        }
        if (sub.size() == verts.size() || sub.empty()) continue;
        if (affine_rank(sub) != dim - 1) continue;
        if (!seen.insert(key).second) continue;
        faces.push_back(std::move(sub));
    }
    return faces;
}

/// Recursive triangulation of a d-dimensional face into d-simplices; a
/// non-simplex face is the cone over its own facet triangulations with the
/// face's vertex centroid as apex.
inline void triangulate_face(const std::vector<CharForm>& verts, int dim,
                             const std::vector<VecZ>& normals,
                             std::vector<std::vector<CharForm>>& out) {
    if (static_cast<int>(verts.size()) == dim + 1) {
        out.push_back(verts);
        return;
    }
    CharForm centre = zero_form(verts[0].size());
    for (const auto& v : verts) centre += v;
    centre /= Rat(static_cast<long>(verts.size()));

    for (const auto& sub : proper_faces(verts, dim, normals)) {
        std::vector<std::vector<CharForm>> lower;
        triangulate_face(sub, dim - 1, normals, lower);
        for (auto& s : lower) {
            s.push_back(centre);
            out.push_back(std::move(s));
        }
    }
}

}  // namespace detail

struct MomentData {
    Rat volume;
    CharForm moment;  // integral of u over the polytope
};

/// Exact volume and first moment by coning over a triangulated boundary.
/// The apex defaults to the vertex average; any interior point gives the
/// same totals.
inline MomentData moment_integral(const VPolytope& vp, const HPolytope& hp,
                                  std::optional<CharForm> apex = std::nullopt) {
    const int n = hp.n();
    if (vp.vertices.empty()) throw DegeneratePolytope("no vertices");
    CharForm top = apex ? *apex : [&] {
        CharForm c = zero_form(n);
        for (const auto& v : vp.vertices) c += v;
        c /= Rat(static_cast<long>(vp.vertices.size()));
        return c;
    }();

    // Cone the triangulated boundary facets over the apex.
    std::vector<std::vector<CharForm>> simplices;
    for (const auto& facet : detail::proper_faces(vp.vertices, n, hp.normals)) {
        std::vector<std::vector<CharForm>> lower;
        detail::triangulate_face(facet, n - 1, hp.normals, lower);
        for (auto& s : lower) {
            s.push_back(top);
            simplices.push_back(std::move(s));
        }
    }

    Rat nfact = 1;
    for (int i = 2; i <= n; ++i) nfact *= i;

    MomentData md{Rat(0), zero_form(n)};
    for (const auto& s : simplices) {
        MatQ edges(n, n);
        for (int i = 1; i <= n; ++i)
            edges.col(i - 1) = s[static_cast<size_t>(i)] - s[0];
        Rat vol = detail::det_q(edges) / nfact;
        if (vol < 0) vol = -vol;
        md.volume += vol;
        CharForm centroid = zero_form(n);
        for (const auto& w : s) centroid += w;
        centroid /= Rat(n + 1);
        md.moment += vol * centroid;
    }
    if (md.volume == 0) throw DegeneratePolytope("polytope has zero volume");
    return md;
}

// ---------------------------------------------------------------------------
// Cross-check: F against the anticanonical polytope's first moment.
// The global constant below was pinned once on the 10-cone blow-up fan and
// must hold unchanged for every other fan.

inline constexpr int kBarycenterSign = +1;

struct CheckReport {
    CharForm futaki;
    Rat volume;
    CharForm moment;
    CharForm scaled_moment;  // kBarycenterSign * n! * moment
    bool match = false;
};

inline CheckReport barycenter_cross_check(const Fan& f) {
    CheckReport rep;
    rep.futaki = toric_futaki(f);
    HPolytope hp = anticanonical_polytope(f);
    VPolytope vp = enumerate_vertices(hp);
    MomentData md = moment_integral(vp, hp);
    rep.volume = md.volume;
    rep.moment = md.moment;
    Rat nfact = 1;
    for (int i = 2; i <= f.n; ++i) nfact *= i;
    rep.scaled_moment = md.moment * (nfact * Rat(kBarycenterSign));
    rep.match = exact_eq(rep.scaled_moment, rep.futaki);
    if (!rep.match)
        throw NormalizationMismatch("localization gives F = " + format_form(rep.futaki) +
                                    " but the polytope moment gives " +
                                    format_form(rep.scaled_moment));
    return rep;
}

}  // namespace futaki
