#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace futaki {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using VecZ = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using MatZ = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using VecQ = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using MatQ = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

/// A linear form sum a_i e^i on the torus Lie algebra, coefficients in Q.
using CharForm = VecQ;

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VariableMismatch : Error { using Error::Error; };
struct SingularCone : Error { using Error::Error; };
struct NonSmoothCone : Error { using Error::Error; };
struct PoleNotCancelled : Error { using Error::Error; };
struct DegreeError : Error { using Error::Error; };
struct InconsistentSystem : Error { using Error::Error; };
struct Underdetermined : Error { using Error::Error; };
struct WeightSumNonzero : Error { using Error::Error; };
struct UnboundedPolytope : Error { using Error::Error; };
struct DegeneratePolytope : Error { using Error::Error; };
struct NormalizationMismatch : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Rational helpers

inline std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den <= 0) throw ParseError("rational with nonpositive denominator: " + s);
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw ParseError("bad rational literal: " + s);
    }
}

inline bool is_integral(const Rat& r) { return denominator(r) == 1; }

// ---------------------------------------------------------------------------
// CharForm helpers

/// Exact elementwise equality for dense vectors/matrices.
template <typename D1, typename D2>
inline bool exact_eq(const Eigen::MatrixBase<D1>& a, const Eigen::MatrixBase<D2>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

template <typename D>
inline bool exact_zero(const Eigen::MatrixBase<D>& a) {
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0) return false;
    return true;
}

inline CharForm zero_form(Eigen::Index m) { return CharForm::Zero(m); }

inline CharForm unit_form(Eigen::Index m, Eigen::Index i) {
    CharForm f = CharForm::Zero(m);
    f(i) = 1;
    return f;
}

inline CharForm form_from_ints(const std::vector<long>& c) {
    CharForm f(static_cast<Eigen::Index>(c.size()));
    for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = Rat(c[static_cast<size_t>(i)]);
    return f;
}

/// Content of a rational vector: the positive rational g with v/g primitive
/// integral. Zero vector has content 0.
inline Rat vector_content(const CharForm& v) {
    Int num_gcd = 0, den_lcm = 1;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v(i) == 0) continue;
        num_gcd = gcd(num_gcd, numerator(v(i)));
        den_lcm = lcm(den_lcm, denominator(v(i)));
    }
    if (num_gcd == 0) return Rat(0);
    return Rat(abs(num_gcd), den_lcm);
}

/// Render a linear form as text, e.g. "4*(-e1 - e2 + e3)" or "-3*e1 + e2".
/// Factors out the positive content when more than one variable appears.
inline std::string format_form(const CharForm& f, const std::string& var = "e") {
    int nonzero = 0;
    for (Eigen::Index i = 0; i < f.size(); ++i)
        if (f(i) != 0) ++nonzero;
    if (nonzero == 0) return "0";

    auto term = [&](const Rat& c, Eigen::Index i, bool leading) {
        std::string out;
        Rat a = c;
        if (leading) {
            if (a < 0) { out += "-"; a = -a; }
        } else {
            out += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        if (a != 1) out += rat_to_string(a) + "*";
        out += var + std::to_string(i + 1);
        return out;
    };

    if (nonzero == 1) {
        for (Eigen::Index i = 0; i < f.size(); ++i)
            if (f(i) != 0) return term(f(i), i, true);
    }

    Rat g = vector_content(f);
    std::string inner;
    bool first = true;
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        if (f(i) == 0) continue;
        inner += term(f(i) / g, i, first);
        first = false;
    }
    if (g == 1) return inner;
    return rat_to_string(g) + "*(" + inner + ")";
}

}  // namespace futaki
