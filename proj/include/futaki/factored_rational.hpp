#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "futaki/multipoly.hpp"
#include "futaki/types.hpp"

namespace futaki {

/// Content of a polynomial: positive rational g with p/g primitive integral,
/// sign-adjusted so the leading (lex-largest) term of p/g is positive.
inline Rat poly_content(const MultiPoly& p) {
    if (p.is_zero()) return Rat(0);
    Int num_gcd = 0, den_lcm = 1;
    for (const auto& [e, c] : p.terms()) {
        num_gcd = gcd(num_gcd, numerator(c));
        den_lcm = lcm(den_lcm, denominator(c));
    }
    Rat g(abs(num_gcd), den_lcm);
    if (p.terms().rbegin()->second < 0) g = -g;
    return g;
}

// ---------------------------------------------------------------------------
// FactoredRational: scale * numerator / prod L_k^mu_k with linear-form
// denominator factors kept factored. Normal form: no denominator factor
// divides the numerator, numerator primitive with positive leading term,
// zero is (scale 0, numerator 0, empty denominator).

class FactoredRational {
  public:
    using DenMap = std::map<PrimitiveForm, int>;

    FactoredRational() = default;
    explicit FactoredRational(int nvars)
        : nvars_(nvars), scale_(0), num_(nvars) {}

    static FactoredRational zero(int nvars) { return FactoredRational(nvars); }

    static FactoredRational from_poly(const MultiPoly& p) {
        FactoredRational f(p.nvars());
        f.scale_ = 1;
        f.num_ = p;
        f.normalize();
        return f;
    }

    static FactoredRational from_rat(int nvars, const Rat& c) {
        return from_poly(MultiPoly::constant(nvars, c));
    }

    /// 1 / prod(forms); each form is factored into scale * primitive.
    static FactoredRational reciprocal_of_forms(std::span<const CharForm> forms) {
        if (forms.empty()) throw Error("reciprocal_of_forms: empty product");
        FactoredRational f(static_cast<int>(forms[0].size()));
        f.scale_ = 1;
        f.num_ = MultiPoly::constant(f.nvars_, 1);
        for (const auto& l : forms) {
            auto [prim, s] = PrimitiveForm::canonicalize(l);
            f.scale_ /= s;
            f.den_[prim] += 1;
        }
        return f;
    }

    static FactoredRational make(const Rat& scale, MultiPoly num, DenMap den) {
        FactoredRational f(num.nvars());
        f.scale_ = scale;
        f.num_ = std::move(num);
        f.den_ = std::move(den);
        f.normalize();
        return f;
    }

    int nvars() const { return nvars_; }
    const Rat& scale() const { return scale_; }
    const MultiPoly& numerator_poly() const { return num_; }
    const DenMap& denominator_factors() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    int denominator_multiplicity() const {
        int t = 0;
        for (const auto& [l, mu] : den_) t += mu;
        return t;
    }

    /// Numerator over the denominator lifted to a common multiset `target`
    /// (target must contain den_). Includes the scale.
    MultiPoly numerator_over(const DenMap& target) const {
        MultiPoly n = num_ * scale_;
        for (const auto& [l, mu] : target) {
            auto it = den_.find(l);
            int have = (it == den_.end()) ? 0 : it->second;
            if (have > mu) throw Error("numerator_over: target denominator too small");
            for (int k = have; k < mu; ++k) n = n * MultiPoly::from_form(l.as_form());
        }
        return n;
    }

    /// scale * numerator if no denominator factors survive, else throws.
    MultiPoly to_poly() const {
        if (!den_.empty()) {
            std::string what = "pole not cancelled; surviving factors:";
            for (const auto& [l, mu] : den_)
                what += " (" + format_form(l.as_form()) + ")^" + std::to_string(mu);
            throw PoleNotCancelled(what);
        }
        return num_ * scale_;
    }

    friend bool operator==(const FactoredRational& a, const FactoredRational& b) {
        return a.nvars_ == b.nvars_ && a.scale_ == b.scale_ && a.num_ == b.num_ &&
               a.den_ == b.den_;
    }
    friend bool operator!=(const FactoredRational& a, const FactoredRational& b) {
        return !(a == b);
    }

    friend FactoredRational operator+(const FactoredRational& a, const FactoredRational& b) {
        if (a.nvars_ != b.nvars_)
            throw VariableMismatch("frac_add: variable context mismatch");
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        DenMap lcm_den = a.den_;
        for (const auto& [l, mu] : b.den_) {
            auto it = lcm_den.find(l);
            if (it == lcm_den.end()) lcm_den[l] = mu;
            else it->second = std::max(it->second, mu);
        }
        FactoredRational r(a.nvars_);
        r.scale_ = 1;
        r.num_ = a.numerator_over(lcm_den) + b.numerator_over(lcm_den);
        r.den_ = std::move(lcm_den);
        r.normalize();
        return r;
    }

    friend FactoredRational operator-(const FactoredRational& a) {
        FactoredRational r = a;
        r.scale_ = -r.scale_;
        return r;
    }
    friend FactoredRational operator-(const FactoredRational& a, const FactoredRational& b) {
        return a + (-b);
    }

    friend FactoredRational operator*(const FactoredRational& a, const Rat& s) {
        if (s == 0) return zero(a.nvars_);
        FactoredRational r = a;
        r.scale_ *= s;
        return r;
    }
    friend FactoredRational operator*(const Rat& s, const FactoredRational& a) { return a * s; }

    friend FactoredRational operator*(const FactoredRational& a, const MultiPoly& p) {
        FactoredRational r(a.nvars_);
        r.scale_ = a.scale_;
        r.num_ = a.num_ * p;
        r.den_ = a.den_;
        r.normalize();
        return r;
    }
    friend FactoredRational operator*(const MultiPoly& p, const FactoredRational& a) {
        return a * p;
    }

    friend FactoredRational operator*(const FactoredRational& a, const FactoredRational& b) {
        if (a.nvars_ != b.nvars_)
            throw VariableMismatch("frac_mul: variable context mismatch");
        FactoredRational r(a.nvars_);
        r.scale_ = a.scale_ * b.scale_;
        r.num_ = a.num_ * b.num_;
        r.den_ = a.den_;
        for (const auto& [l, mu] : b.den_) r.den_[l] += mu;
        r.normalize();
        return r;
    }

  private:
    void normalize() {
        if (num_.is_zero() || scale_ == 0) {
            scale_ = 0;
            num_ = MultiPoly(nvars_);
            den_.clear();
            return;
        }
        // Cancel denominator factors that exactly divide the numerator.
        for (auto it = den_.begin(); it != den_.end();) {
            bool erased = false;
            while (it->second > 0) {
                DivLinear d = exact_div_linear(num_, it->first);
                if (!d.quotient) break;
                num_ = std::move(*d.quotient);
                if (--it->second == 0) {
                    it = den_.erase(it);
                    erased = true;
                    break;
                }
            }
            if (!erased) ++it;
        }
        Rat g = poly_content(num_);
        num_ = num_ * (Rat(1) / g);
        scale_ *= g;
    }

    int nvars_ = 0;
    Rat scale_ = 0;
    MultiPoly num_;
    DenMap den_;
};

inline FactoredRational frac_add(const FactoredRational& a, const FactoredRational& b) {
    return a + b;
}

inline MultiPoly frac_to_poly(const FactoredRational& f) { return f.to_poly(); }

inline std::string to_string(const FactoredRational& f) {
    if (f.is_zero()) return "0";
    std::string out = rat_to_string(f.scale());
    out += " * (" + to_string(f.numerator_poly()) + ")";
    if (!f.denominator_factors().empty()) {
        out += " / [";
        bool first = true;
        for (const auto& [l, mu] : f.denominator_factors()) {
            if (!first) out += " * ";
            first = false;
            out += "(" + format_form(l.as_form()) + ")";
            if (mu > 1) out += "^" + std::to_string(mu);
        }
        out += "]";
    }
    return out;
}

}  // namespace futaki
