#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "futaki/ci.hpp"
#include "futaki/localize.hpp"
#include "futaki/toric.hpp"
#include "futaki/types.hpp"

namespace futaki::io {

using nlohmann::json;

namespace detail {

inline void check_keys(const json& j, std::initializer_list<const char*> allowed,
                       const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) throw ParseError(where + ": unknown field \"" + it.key() + "\"");
    }
}

inline const json& require(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(where + ": missing field \"" + key + "\"");
    return *it;
}

inline Rat parse_rat(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw ParseError(where + ": expected an integer or a rational string, got " + j.dump());
}

inline Int parse_int(const json& j, const std::string& where) {
    Rat r = parse_rat(j, where);
    if (!is_integral(r)) throw ParseError(where + ": expected an integer, got " + j.dump());
    return numerator(r);
}

inline VecZ parse_int_vector(const json& j, Eigen::Index len, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array");
    if (len >= 0 && static_cast<Eigen::Index>(j.size()) != len)
        throw ParseError(where + ": expected length " + std::to_string(len) + ", got " +
                         std::to_string(j.size()));
    VecZ v(static_cast<Eigen::Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = parse_int(j[i], where + "[" + std::to_string(i) + "]");
    return v;
}

inline CharForm parse_form(const json& j, Eigen::Index len, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array");
    if (len >= 0 && static_cast<Eigen::Index>(j.size()) != len)
        throw ParseError(where + ": expected length " + std::to_string(len) + ", got " +
                         std::to_string(j.size()));
    CharForm v(static_cast<Eigen::Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = parse_rat(j[i], where + "[" + std::to_string(i) + "]");
    return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Fan files: {"n": 3, "rays": [[0,0,1], ...], "cones": [[0,1,2], ...]}

inline Fan parse_fan(const json& j) {
    detail::check_keys(j, {"n", "rays", "cones"}, "fan");
    Fan f;
    f.n = static_cast<int>(detail::parse_int(detail::require(j, "n", "fan"), "fan.n"));
    if (f.n <= 0) throw ParseError("fan.n must be positive");
    const json& rays = detail::require(j, "rays", "fan");
    if (!rays.is_array()) throw ParseError("fan.rays: expected an array");
    for (size_t i = 0; i < rays.size(); ++i)
        f.rays.push_back(
            detail::parse_int_vector(rays[i], f.n, "fan.rays[" + std::to_string(i) + "]"));
    const json& cones = detail::require(j, "cones", "fan");
    if (!cones.is_array()) throw ParseError("fan.cones: expected an array");
    for (size_t i = 0; i < cones.size(); ++i) {
        const std::string where = "fan.cones[" + std::to_string(i) + "]";
        VecZ c = detail::parse_int_vector(cones[i], f.n, where);
        std::vector<int> idx;
        for (Eigen::Index k = 0; k < c.size(); ++k) {
            if (c(k) < 0 || c(k) >= static_cast<long>(f.rays.size()))
                throw ParseError(where + ": ray index out of range");
            idx.push_back(static_cast<int>(c(k)));
        }
        f.cones.push_back(idx);
    }
    if (f.cones.empty()) throw ParseError("fan has no maximal cones");
    return f;
}

// ---------------------------------------------------------------------------
// Fixed-point files:
// {"m": 2, "n": 3,
//  "points": [{"label": "P1", "m": [3,0],
//              "beta": {"scale": "1", "num": [[[0,0],"1"]],
//                       "den": [[[1,0],1],[[0,1],1],[[2,-1],1]]}},
//             {"label": "Q", "m": [...], "weights": [[...],[...]]}, ...],
//  "unknown": {"label": "P5"}, "degree": "38"}

struct PointsFile {
    int m = 0;  // torus rank (variable count)
    int n = 0;  // dimension of the variety
    std::vector<FixedPointDatum> points;
    std::optional<std::string> unknownLabel;
    std::optional<Rat> degree;
};

inline FactoredRational parse_beta(const json& j, int m, const std::string& where) {
    detail::check_keys(j, {"scale", "num", "den"}, where);
    Rat scale = detail::parse_rat(detail::require(j, "scale", where), where + ".scale");
    const json& num = detail::require(j, "num", where);
    if (!num.is_array()) throw ParseError(where + ".num: expected an array of terms");
    MultiPoly np(m);
    for (size_t t = 0; t < num.size(); ++t) {
        const std::string tw = where + ".num[" + std::to_string(t) + "]";
        if (!num[t].is_array() || num[t].size() != 2)
            throw ParseError(tw + ": expected [exponents, coefficient]");
        VecZ expo = detail::parse_int_vector(num[t][0], m, tw + ".exponents");
        MultiPoly::Expo e;
        for (Eigen::Index i = 0; i < expo.size(); ++i) {
            if (expo(i) < 0) throw ParseError(tw + ": negative exponent");
            e.push_back(static_cast<int>(expo(i)));
        }
        np.add_term(e, detail::parse_rat(num[t][1], tw + ".coefficient"));
    }
    const json& den = detail::require(j, "den", where);
    if (!den.is_array()) throw ParseError(where + ".den: expected an array of factors");
    FactoredRational::DenMap dm;
    for (size_t t = 0; t < den.size(); ++t) {
        const std::string tw = where + ".den[" + std::to_string(t) + "]";
        if (!den[t].is_array() || den[t].size() != 2)
            throw ParseError(tw + ": expected [form, multiplicity]");
        VecZ c = detail::parse_int_vector(den[t][0], m, tw + ".form");
        int mu = static_cast<int>(detail::parse_int(den[t][1], tw + ".multiplicity"));
        if (mu < 1) throw ParseError(tw + ": multiplicity must be >= 1");
        auto [prim, s] = PrimitiveForm::canonicalize(c.cast<Rat>());
        for (int k = 0; k < mu; ++k) scale /= s;
        dm[prim] += mu;
    }
    return FactoredRational::make(scale, std::move(np), std::move(dm));
}

inline PointsFile parse_points(const json& j) {
    detail::check_keys(j, {"m", "n", "points", "unknown", "degree"}, "points");
    PointsFile pf;
    pf.m = static_cast<int>(detail::parse_int(detail::require(j, "m", "points"), "points.m"));
    pf.n = static_cast<int>(detail::parse_int(detail::require(j, "n", "points"), "points.n"));
    if (pf.m <= 0 || pf.n <= 0) throw ParseError("points.m and points.n must be positive");
    const json& pts = detail::require(j, "points", "points");
    if (!pts.is_array() || pts.empty())
        throw ParseError("points.points: expected a nonempty array");
    for (size_t i = 0; i < pts.size(); ++i) {
        const std::string where = "points.points[" + std::to_string(i) + "]";
        detail::check_keys(pts[i], {"label", "m", "beta", "weights"}, where);
        FixedPointDatum d;
        const json& lbl = detail::require(pts[i], "label", where);
        if (!lbl.is_string()) throw ParseError(where + ".label: expected a string");
        d.label = lbl.get<std::string>();
        d.m = detail::parse_form(detail::require(pts[i], "m", where), pf.m, where + ".m");
        bool has_beta = pts[i].contains("beta"), has_w = pts[i].contains("weights");
        if (has_beta == has_w)
            throw ParseError(where + ": exactly one of \"beta\" and \"weights\" is required");
        if (has_beta) {
            d.beta = parse_beta(pts[i]["beta"], pf.m, where + ".beta");
        } else {
            const json& ws = pts[i]["weights"];
            if (!ws.is_array() || static_cast<int>(ws.size()) != pf.n)
                throw ParseError(where + ".weights: expected n forms");
            std::vector<CharForm> weights;
            for (size_t k = 0; k < ws.size(); ++k)
                weights.push_back(detail::parse_form(ws[k], pf.m,
                                  where + ".weights[" + std::to_string(k) + "]"));
            d.beta = FactoredRational::reciprocal_of_forms(weights);
        }
        pf.points.push_back(std::move(d));
    }
    if (j.contains("unknown")) {
        detail::check_keys(j["unknown"], {"label"}, "points.unknown");
        const json& lbl = detail::require(j["unknown"], "label", "points.unknown");
        if (!lbl.is_string()) throw ParseError("points.unknown.label: expected a string");
        pf.unknownLabel = lbl.get<std::string>();
    }
    if (j.contains("degree"))
        pf.degree = detail::parse_rat(j["degree"], "points.degree");
    return pf;
}

// ---------------------------------------------------------------------------
// CI files:
// {"N": 3, "k": 1, "degrees": [2], "m": 1, "gamma": [[2,1,0,-3]], "kweights": [[2]]}

inline CISpec parse_ci(const json& j) {
    detail::check_keys(j, {"N", "k", "degrees", "m", "gamma", "kweights"}, "ci");
    CISpec s;
    s.N = static_cast<int>(detail::parse_int(detail::require(j, "N", "ci"), "ci.N"));
    s.k = static_cast<int>(detail::parse_int(detail::require(j, "k", "ci"), "ci.k"));
    s.m = static_cast<int>(detail::parse_int(detail::require(j, "m", "ci"), "ci.m"));
    const json& deg = detail::require(j, "degrees", "ci");
    VecZ d = detail::parse_int_vector(deg, s.k, "ci.degrees");
    for (Eigen::Index i = 0; i < d.size(); ++i) s.degrees.push_back(static_cast<int>(d(i)));
    auto parse_matrix = [&](const char* key, Eigen::Index cols) {
        const json& rows = detail::require(j, key, "ci");
        if (!rows.is_array() || static_cast<int>(rows.size()) != s.m)
            throw ParseError(std::string("ci.") + key + ": expected m rows");
        MatZ mat(s.m, cols);
        for (size_t r = 0; r < rows.size(); ++r)
            mat.row(static_cast<Eigen::Index>(r)) =
                detail::parse_int_vector(rows[r], cols,
                                         std::string("ci.") + key + "[" + std::to_string(r) + "]")
                    .transpose();
        return mat;
    };
    s.gamma = parse_matrix("gamma", s.N + 1);
    s.kweights = parse_matrix("kweights", s.k);
    s.validate();
    return s;
}

// ---------------------------------------------------------------------------
// File loading and result serialization

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("JSON parse error in ") + path + ": " + e.what());
    }
    return j;
}

inline json form_to_json(const CharForm& f) {
    json coeffs = json::array();
    for (Eigen::Index i = 0; i < f.size(); ++i) coeffs.push_back(rat_to_string(f(i)));
    return coeffs;
}

inline CharForm form_from_json(const json& j) {
    return detail::parse_form(j, -1, "form");
}

}  // namespace futaki::io
