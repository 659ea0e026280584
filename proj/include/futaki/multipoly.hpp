#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "futaki/types.hpp"

namespace futaki {

// ---------------------------------------------------------------------------
// PrimitiveForm: canonical representative of a line of linear forms.
// Integer coefficients, content 1, first nonzero entry positive.

struct PrimitiveForm {
    VecZ coeffs;

    Eigen::Index nvars() const { return coeffs.size(); }

    CharForm as_form() const {
        CharForm f(coeffs.size());
        for (Eigen::Index i = 0; i < coeffs.size(); ++i) f(i) = Rat(coeffs(i));
        return f;
    }

    /// Factor a nonzero linear form as scale * primitive.
    static std::pair<PrimitiveForm, Rat> canonicalize(const CharForm& f) {
        Rat g = vector_content(f);
        if (g == 0) throw Error("cannot canonicalize the zero form");
        Eigen::Index lead = 0;
        while (f(lead) == 0) ++lead;
        if (f(lead) < 0) g = -g;
        PrimitiveForm p;
        p.coeffs.resize(f.size());
        for (Eigen::Index i = 0; i < f.size(); ++i) p.coeffs(i) = numerator(Rat(f(i) / g));
        return {p, g};
    }

    friend bool operator==(const PrimitiveForm& a, const PrimitiveForm& b) {
        return exact_eq(a.coeffs, b.coeffs);
    }
    friend bool operator<(const PrimitiveForm& a, const PrimitiveForm& b) {
        if (a.coeffs.size() != b.coeffs.size()) return a.coeffs.size() < b.coeffs.size();
        for (Eigen::Index i = 0; i < a.coeffs.size(); ++i)
            if (a.coeffs(i) != b.coeffs(i)) return a.coeffs(i) < b.coeffs(i);
        return false;
    }
};

// ---------------------------------------------------------------------------
// MultiPoly: sparse multivariate polynomial over Q, exponent vectors of a
// fixed length per computation context. The zero polynomial is the empty map.

class MultiPoly {
  public:
    using Expo = std::vector<int>;
    using TermMap = std::map<Expo, Rat>;

    MultiPoly() = default;
    explicit MultiPoly(int nvars) : nvars_(nvars) {}

    static MultiPoly constant(int nvars, const Rat& c) {
        MultiPoly p(nvars);
        if (c != 0) p.terms_[Expo(static_cast<size_t>(nvars), 0)] = c;
        return p;
    }

    static MultiPoly variable(int nvars, int idx) {
        MultiPoly p(nvars);
        Expo e(static_cast<size_t>(nvars), 0);
        e[static_cast<size_t>(idx)] = 1;
        p.terms_[e] = 1;
        return p;
    }

    static MultiPoly from_form(const CharForm& f) {
        MultiPoly p(static_cast<int>(f.size()));
        for (Eigen::Index i = 0; i < f.size(); ++i) {
            if (f(i) == 0) continue;
            Expo e(static_cast<size_t>(f.size()), 0);
            e[static_cast<size_t>(i)] = 1;
            p.terms_[e] = f(i);
        }
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    void add_term(const Expo& e, const Rat& c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0) terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int t = 0;
            for (int k : e) t += k;
            if (t > d) d = t;
        }
        return d;  // -1 for the zero polynomial
    }

    int degree_in(int var) const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<size_t>(var)]);
        return d;
    }

    Rat coefficient(const Expo& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    Rat constant_value() const {
        if (is_zero()) return Rat(0);
        if (total_degree() != 0) throw DegreeError("polynomial is not constant");
        return terms_.begin()->second;
    }

    /// Extract an exactly-linear polynomial (degree <= 1, no constant term)
    /// as a CharForm.
    CharForm as_linear_form() const {
        CharForm f = zero_form(nvars_);
        for (const auto& [e, c] : terms_) {
            int t = 0, var = -1;
            for (size_t i = 0; i < e.size(); ++i) {
                t += e[i];
                if (e[i] > 0) var = static_cast<int>(i);
            }
            if (t != 1) throw DegreeError("polynomial is not a linear form");
            f(var) = c;
        }
        return f;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  private:
    int nvars_ = 0;
    TermMap terms_;
};

inline void check_context(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars() != b.nvars())
        throw VariableMismatch("polynomials over different variable contexts: " +
                               std::to_string(a.nvars()) + " vs " + std::to_string(b.nvars()));
}

inline MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    check_context(a, b);
    MultiPoly r = a;
    for (const auto& [e, c] : b.terms()) r.add_term(e, c);
    return r;
}

inline MultiPoly operator-(const MultiPoly& a) {
    MultiPoly r(a.nvars());
    for (const auto& [e, c] : a.terms()) r.add_term(e, -c);
    return r;
}

inline MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

inline MultiPoly operator*(const MultiPoly& a, const Rat& s) {
    MultiPoly r(a.nvars());
    if (s == 0) return r;
    for (const auto& [e, c] : a.terms()) r.add_term(e, c * s);
    return r;
}

inline MultiPoly operator*(const Rat& s, const MultiPoly& a) { return a * s; }

inline MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    check_context(a, b);
    MultiPoly r(a.nvars());
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            MultiPoly::Expo e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

inline MultiPoly pow(const MultiPoly& a, int p) {
    MultiPoly r = MultiPoly::constant(a.nvars(), 1);
    for (int i = 0; i < p; ++i) r = r * a;
    return r;
}

/// Multinomial expansion of a linear form raised to the p-th power.
inline MultiPoly form_pow(const CharForm& l, int p) {
    if (p < 0) throw Error("form_pow: negative exponent");
    return pow(MultiPoly::from_form(l), p);
}

inline MultiPoly derivative(const MultiPoly& a, int var) {
    MultiPoly r(a.nvars());
    for (const auto& [e, c] : a.terms()) {
        int k = e[static_cast<size_t>(var)];
        if (k == 0) continue;
        MultiPoly::Expo d = e;
        d[static_cast<size_t>(var)] = k - 1;
        r.add_term(d, c * k);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Division by a linear form, via substitution along the pivot variable.
// p is divisible by L iff its restriction to the hyperplane L = 0 vanishes;
// the restriction is returned either way.

struct DivLinear {
    std::optional<MultiPoly> quotient;  // set iff the division is exact
    MultiPoly remainder;                // restriction of p to L = 0
};

namespace detail {

inline int pivot_var(const PrimitiveForm& l) {
    for (Eigen::Index i = 0; i < l.coeffs.size(); ++i)
        if (l.coeffs(i) != 0) return static_cast<int>(i);
    throw Error("zero linear form");
}

/// The substitution e^s -> -(1/a_s) * sum_{r != s} a_r e^r as a polynomial.
inline MultiPoly pivot_substitution(const PrimitiveForm& l, int s) {
    const int m = static_cast<int>(l.coeffs.size());
    Rat as(l.coeffs(s));
    MultiPoly r(m);
    for (int j = 0; j < m; ++j) {
        if (j == s || l.coeffs(j) == 0) continue;
        r = r + MultiPoly::variable(m, j) * Rat(-l.coeffs(j) / as);
    }
    return r;
}

}  // namespace detail

inline DivLinear exact_div_linear(const MultiPoly& p, const PrimitiveForm& l) {
    if (p.nvars() != l.nvars())
        throw VariableMismatch("exact_div_linear: variable context mismatch");
    const int m = p.nvars();
    const int s = detail::pivot_var(l);
    const Rat as = Rat(l.coeffs(s));
    const MultiPoly subst = detail::pivot_substitution(l, s);

    // Regroup p as a univariate polynomial in e^s with coefficients in the
    // remaining variables.
    const int d = p.degree_in(s);
    std::vector<MultiPoly> coef(static_cast<size_t>(d) + 1, MultiPoly(m));
    for (const auto& [e, c] : p.terms()) {
        MultiPoly::Expo rest = e;
        int k = rest[static_cast<size_t>(s)];
        rest[static_cast<size_t>(s)] = 0;
        coef[static_cast<size_t>(k)].add_term(rest, c);
    }

    // Synthetic division by (e^s - subst); quotient then rescaled by 1/a_s.
    std::vector<MultiPoly> q(static_cast<size_t>(std::max(d, 1)), MultiPoly(m));
    MultiPoly carry(m);
    for (int k = d; k >= 1; --k) {
        carry = coef[static_cast<size_t>(k)] + subst * carry;
        q[static_cast<size_t>(k - 1)] = carry;
    }
    MultiPoly remainder = coef[0] + subst * carry;

    DivLinear out;
    out.remainder = remainder;
    if (remainder.is_zero()) {
        MultiPoly quot(m);
        for (int k = 0; k < d; ++k) {
            MultiPoly es_k = pow(MultiPoly::variable(m, s), k);
            quot = quot + q[static_cast<size_t>(k)] * es_k * (Rat(1) / as);
        }
        out.quotient = quot;
    }
    return out;
}

/// Restriction of p to the hyperplane L = 0 (remainder of the division).
inline MultiPoly restrict_to_hyperplane(const MultiPoly& p, const PrimitiveForm& l) {
    return exact_div_linear(p, l).remainder;
}

// ---------------------------------------------------------------------------
// Formatting (diagnostics and tests)

inline std::string to_string(const MultiPoly& p, const std::string& var = "e") {
    if (p.is_zero()) return "0";
    std::string out;
    // print highest-degree terms first
    std::vector<std::pair<MultiPoly::Expo, Rat>> ts(p.terms().begin(), p.terms().end());
    std::reverse(ts.begin(), ts.end());
    bool first = true;
    for (const auto& [e, c] : ts) {
        Rat a = c;
        if (first) {
            if (a < 0) { out += "-"; a = -a; }
        } else {
            out += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        first = false;
        std::string mono;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += var + std::to_string(i + 1);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            out += rat_to_string(a);
        } else {
            if (a != 1) out += rat_to_string(a) + "*";
            out += mono;
        }
    }
    return out;
}

}  // namespace futaki
