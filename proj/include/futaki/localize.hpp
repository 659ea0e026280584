#pragma once

#include <set>
#include <string>
#include <vector>

#include "futaki/factored_rational.hpp"
#include "futaki/lattice.hpp"
#include "futaki/toric.hpp"
#include "futaki/types.hpp"

namespace futaki {

// ---------------------------------------------------------------------------
// Generic Bott-residue engine over explicit fixed-point data.

struct FixedPointDatum {
    std::string label;
    CharForm m;             // restriction of the equivariant anticanonical class
    FactoredRational beta;  // localized contribution, normalized
};

/// Construct a datum from tangent weights: beta = 1 / prod(weights).
inline FixedPointDatum point_from_weights(std::string label, CharForm m,
                                          std::span<const CharForm> weights) {
    return {std::move(label), std::move(m), FactoredRational::reciprocal_of_forms(weights)};
}

inline std::vector<FixedPointDatum> export_fixed_points(const Fan& f) {
    std::vector<FixedPointDatum> pts;
    for (size_t i = 0; i < f.cones.size(); ++i) {
        ConeData cd = cone_data(f, static_cast<int>(i));
        pts.push_back({"sigma" + std::to_string(i + 1), cd.m, cd.beta});
    }
    return pts;
}

/// sum_j m_j^p beta_j as a polynomial; diagnoses surviving poles by the
/// points that contributed them.
inline MultiPoly residue_sum(std::span<const FixedPointDatum> points, int p) {
    if (points.empty()) throw Error("residue_sum: empty fixed-point list");
    const int m = static_cast<int>(points[0].m.size());
    FactoredRational acc = FactoredRational::zero(m);
    for (const auto& pt : points) {
        if (pt.m.size() != m)
            throw VariableMismatch("fixed point " + pt.label + " has wrong variable count");
        acc = acc + form_pow(pt.m, p) * pt.beta;
    }
    if (!acc.denominator_factors().empty()) {
        std::string what = "pole not cancelled in residue sum (p = " + std::to_string(p) + "):";
        for (const auto& [l, mu] : acc.denominator_factors()) {
            what += " factor (" + format_form(l.as_form()) + ")^" + std::to_string(mu) + " from";
            for (const auto& pt : points)
                if (pt.beta.denominator_factors().count(l)) what += " " + pt.label;
            what += ";";
        }
        throw PoleNotCancelled(what);
    }
    return acc.to_poly();
}

inline CharForm futaki_from_points(std::span<const FixedPointDatum> points, int n) {
    return residue_sum(points, n + 1).as_linear_form() * Rat(1, n + 1);
}

/// The beta forced on one missing point by the degree-zero vanishing
/// identity sum_j beta_j = 0.
inline FactoredRational complete_missing_beta(std::span<const FixedPointDatum> known) {
    if (known.empty()) throw Error("complete_missing_beta: empty list");
    FactoredRational acc = FactoredRational::zero(static_cast<int>(known[0].m.size()));
    for (const auto& pt : known) acc = acc + pt.beta;
    return -acc;
}

// ---------------------------------------------------------------------------
// Pole-cancellation solve for one unknown restriction m at a fixed point
// whose beta is unavailable. With x the unknown coefficient vector,
//   E(x) = degree * m_x + sum_known m_j^n beta_j (m_j - m_x)
// must be a polynomial; each denominator hyperplane yields linear
// constraints on x.

struct MissingPointSolution {
    CharForm m;       // solved restriction at the unknown point
    CharForm futaki;  // F = (1/(n+1)) E(x*)
};

inline MissingPointSolution solve_missing_point(std::span<const FixedPointDatum> known,
                                                const std::string& unknown_label,
                                                const Rat& degree, int n) {
    if (known.empty()) throw Error("solve_missing_point: no known points");
    const int m = static_cast<int>(known[0].m.size());

    FactoredRational s_deg = FactoredRational::zero(m);   // sum m_j^n beta_j
    FactoredRational c0 = FactoredRational::zero(m);      // sum m_j^{n+1} beta_j
    for (const auto& pt : known) {
        FactoredRational t = form_pow(pt.m, n) * pt.beta;
        s_deg = s_deg + t;
        c0 = c0 + t * MultiPoly::from_form(pt.m);
    }
    // E(x) = c0 + sum_i x_i * ci, with ci = (degree - s_deg) * e^i.
    FactoredRational gap = FactoredRational::from_rat(m, degree) - s_deg;
    std::vector<FactoredRational> ci;
    for (int i = 0; i < m; ++i) ci.push_back(gap * MultiPoly::variable(m, i));

    FactoredRational::DenMap common = c0.denominator_factors();
    for (const auto& c : ci)
        for (const auto& [l, mu] : c.denominator_factors()) {
            auto it = common.find(l);
            if (it == common.end()) common[l] = mu;
            else it->second = std::max(it->second, mu);
        }

    MultiPoly n0 = c0.numerator_over(common);
    std::vector<MultiPoly> ni;
    for (const auto& c : ci) ni.push_back(c.numerator_over(common));

    // Constraint rows: the restriction to each denominator hyperplane of the
    // numerator (and of its pivot-direction derivatives, up to the factor
    // multiplicity) must vanish identically; affine in x throughout.
    std::vector<VecQ> rows;
    std::vector<Rat> rhs;
    for (const auto& [l, mu] : common) {
        int s = detail::pivot_var(l);
        MultiPoly d0 = n0;
        std::vector<MultiPoly> di = ni;
        for (int k = 0; k < mu; ++k) {
            MultiPoly r0 = restrict_to_hyperplane(d0, l);
            std::vector<MultiPoly> ri;
            for (const auto& q : di) ri.push_back(restrict_to_hyperplane(q, l));
            std::set<MultiPoly::Expo> monos;
            for (const auto& [e, c] : r0.terms()) monos.insert(e);
            for (const auto& q : ri)
                for (const auto& [e, c] : q.terms()) monos.insert(e);
            for (const auto& e : monos) {
                VecQ row(m);
                for (int i = 0; i < m; ++i) row(i) = ri[static_cast<size_t>(i)].coefficient(e);
                rows.push_back(row);
                rhs.push_back(-r0.coefficient(e));
            }
            d0 = derivative(d0, s);
            for (auto& q : di) q = derivative(q, s);
        }
    }
    if (rows.empty())
        throw Underdetermined("no pole-cancellation constraints for point " + unknown_label);

    MatQ a(static_cast<Eigen::Index>(rows.size()), m);
    VecQ b(static_cast<Eigen::Index>(rows.size()));
    for (size_t r = 0; r < rows.size(); ++r) {
        a.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
        b(static_cast<Eigen::Index>(r)) = rhs[r];
    }
    LinSolveResult sol = gauss_solve(a, b);
    if (sol.status == SolveStatus::Inconsistent)
        throw InconsistentSystem("no restriction at " + unknown_label +
                                 " makes the residue sum polynomial; check the degree input");
    if (sol.status == SolveStatus::Underdetermined)
        throw Underdetermined("restriction at " + unknown_label +
                              " is not uniquely determined by pole cancellation");

    FactoredRational e_star = c0;
    for (int i = 0; i < m; ++i) e_star = e_star + ci[static_cast<size_t>(i)] * sol.solution(i);

    // Pole cancellation alone cannot see the degree (changing it only shifts
    // E by a polynomial), so cross-check it: with beta at the solved point
    // recovered from the p = 0 vanishing identity, the p = n sum must equal
    // the stated degree exactly.
    FactoredRational residual = s_deg +
                                complete_missing_beta(known) * form_pow(sol.solution, n) -
                                FactoredRational::from_rat(m, degree);
    if (!residual.is_zero())
        throw InconsistentSystem("solved restriction at " + unknown_label +
                                 " does not reproduce the stated degree (-K)^n = " +
                                 rat_to_string(degree));

    MissingPointSolution out;
    out.m = sol.solution;
    out.futaki = e_star.to_poly().as_linear_form() * Rat(1, n + 1);
    return out;
}

}  // namespace futaki
