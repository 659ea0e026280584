// futaki: exact Futaki invariants of almost Fano varieties by torus
// localization. Subcommands operate on small JSON input files; all
// arithmetic is exact rational.

#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "futaki/ci.hpp"
#include "futaki/io.hpp"
#include "futaki/localize.hpp"
#include "futaki/polytope.hpp"
#include "futaki/toric.hpp"

namespace {

using namespace futaki;
using nlohmann::json;

struct Options {
    std::string input;
    std::string format = "text";
    std::string checks;
    unsigned seed = 12345;

    std::set<std::string> check_set() const {
        std::set<std::string> out;
        std::stringstream ss(checks);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) out.insert(item);
        for (const auto& c : out)
            if (c != "degree" && c != "vanishing" && c != "barycenter")
                throw ParseError("unknown check: " + c);
        return out;
    }
};

void emit(const Options& opt, const json& doc, const std::string& text) {
    if (opt.format == "json")
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << text;
}

std::string report_text(const ValidationReport& rep, const Fan& f) {
    std::ostringstream os;
    for (size_t i = 0; i < rep.coneDet.size(); ++i)
        os << "cone " << i << ": det = " << rep.coneDet[i]
           << (rep.coneSmooth[i] ? " (smooth)" : " (NOT smooth)") << "\n";
    os << "complete: " << (rep.complete ? "yes" : "NO") << " (" << rep.samplesTried
       << " samples)\n";
    os << "gorenstein: " << (rep.gorenstein ? "yes" : "NO") << "\n";
    for (const auto& w : rep.warnings) os << "warning: " << w << "\n";
    for (const auto& e : rep.errors) os << "error: " << e << "\n";
    os << (rep.ok() ? "fan OK" : "fan INVALID") << " (" << f.rays.size() << " rays, "
       << f.cones.size() << " maximal cones)\n";
    return os.str();
}

json report_json(const ValidationReport& rep) {
    json j;
    j["smooth"] = rep.all_smooth();
    j["complete"] = rep.complete;
    j["gorenstein"] = rep.gorenstein;
    j["dets"] = json::array();
    for (const auto& d : rep.coneDet) j["dets"].push_back(d.str());
    j["warnings"] = rep.warnings;
    j["errors"] = rep.errors;
    j["ok"] = rep.ok();
    return j;
}

int require_valid(const Options& opt, const Fan& fan, const ValidationReport& rep) {
    if (rep.ok()) return 0;
    emit(opt, report_json(rep), report_text(rep, fan));
    return 2;
}

int cmd_validate(const Options& opt) {
    Fan fan = io::parse_fan(io::load_json(opt.input));
    ValidationReport rep = validate_fan(fan, 64, opt.seed);
    json j = report_json(rep);
    j["command"] = "validate";
    emit(opt, j, report_text(rep, fan));
    return rep.ok() ? 0 : 2;
}

void append_toric_checks(const Options& opt, const Fan& fan, json& doc, std::ostringstream& os) {
    auto checks = opt.check_set();
    if (checks.count("degree")) {
        Rat deg = toric_degree(fan);
        os << "(-K)^" << fan.n << " = " << rat_to_string(deg) << "\n";
        doc["checks"]["degree"] = rat_to_string(deg);
    }
    if (checks.count("vanishing")) {
        bool ok = true;
        for (int p = 0; p < fan.n; ++p)
            if (!toric_residue_sum(fan, p).to_poly().is_zero()) ok = false;
        os << "vanishing (p < n): " << (ok ? "OK" : "FAILED") << "\n";
        doc["checks"]["vanishing"] = ok;
        if (!ok) throw DegreeError("localization sum below top degree did not vanish");
    }
    if (checks.count("barycenter")) {
        CheckReport rep = barycenter_cross_check(fan);
        os << "barycenter cross-check: OK (n! * integral u du = "
           << format_form(rep.scaled_moment) << ")\n";
        doc["checks"]["barycenter"] = io::form_to_json(rep.scaled_moment);
    }
}

int cmd_toric(const Options& opt) {
    Fan fan = io::parse_fan(io::load_json(opt.input));
    ValidationReport rep = validate_fan(fan, 64, opt.seed);
    if (int rc = require_valid(opt, fan, rep)) return rc;
    CharForm f = toric_futaki(fan);
    json doc;
    doc["command"] = "toric";
    doc["F"] = io::form_to_json(f);
    doc["text"] = format_form(f);
    std::ostringstream os;
    os << "F = " << format_form(f) << "\n";
    append_toric_checks(opt, fan, doc, os);
    emit(opt, doc, os.str());
    return 0;
}

int cmd_barycenter(const Options& opt) {
    Fan fan = io::parse_fan(io::load_json(opt.input));
    ValidationReport rep = validate_fan(fan, 64, opt.seed);
    if (int rc = require_valid(opt, fan, rep)) return rc;
    CheckReport cr = barycenter_cross_check(fan);
    json doc;
    doc["command"] = "barycenter";
    doc["F"] = io::form_to_json(cr.futaki);
    doc["volume"] = rat_to_string(cr.volume);
    doc["moment"] = io::form_to_json(cr.moment);
    doc["scaled_moment"] = io::form_to_json(cr.scaled_moment);
    doc["match"] = cr.match;
    std::ostringstream os;
    os << "F = " << format_form(cr.futaki) << "\n";
    os << "volume = " << rat_to_string(cr.volume) << "\n";
    os << "integral u du = [";
    for (Eigen::Index i = 0; i < cr.moment.size(); ++i)
        os << (i ? ", " : "") << rat_to_string(cr.moment(i));
    os << "]\n";
    os << "n! * integral u du = " << format_form(cr.scaled_moment) << "\n";
    os << "match: " << (cr.match ? "yes" : "no") << "\n";
    emit(opt, doc, os.str());
    return 0;
}

int cmd_localize(const Options& opt) {
    io::PointsFile pf = io::parse_points(io::load_json(opt.input));
    if (pf.unknownLabel)
        throw ParseError("input declares an unknown point; use solve-missing");
    CharForm f = futaki_from_points(pf.points, pf.n);
    json doc;
    doc["command"] = "localize";
    doc["F"] = io::form_to_json(f);
    doc["text"] = format_form(f);
    std::ostringstream os;
    os << "F = " << format_form(f) << "\n";
    auto checks = opt.check_set();
    if (checks.count("vanishing")) {
        bool ok = true;
        for (int p = 0; p < pf.n; ++p)
            if (!residue_sum(pf.points, p).is_zero()) ok = false;
        os << "vanishing (p < n): " << (ok ? "OK" : "FAILED") << "\n";
        doc["checks"]["vanishing"] = ok;
        if (!ok) throw DegreeError("localization sum below top degree did not vanish");
    }
    if (checks.count("degree")) {
        Rat deg = residue_sum(pf.points, pf.n).constant_value();
        os << "(-K)^" << pf.n << " = " << rat_to_string(deg) << "\n";
        doc["checks"]["degree"] = rat_to_string(deg);
        if (pf.degree && *pf.degree != deg)
            throw DegreeError("computed degree " + rat_to_string(deg) +
                              " differs from declared " + rat_to_string(*pf.degree));
    }
    emit(opt, doc, os.str());
    return 0;
}

int cmd_solve_missing(const Options& opt) {
    io::PointsFile pf = io::parse_points(io::load_json(opt.input));
    if (!pf.unknownLabel) throw ParseError("solve-missing requires an \"unknown\" entry");
    if (!pf.degree) throw ParseError("solve-missing requires a \"degree\" entry");
    MissingPointSolution sol = solve_missing_point(pf.points, *pf.unknownLabel, *pf.degree, pf.n);
    json doc;
    doc["command"] = "solve-missing";
    doc["unknown"] = *pf.unknownLabel;
    doc["m"] = io::form_to_json(sol.m);
    doc["F"] = io::form_to_json(sol.futaki);
    doc["text"] = format_form(sol.futaki);
    std::ostringstream os;
    os << "m(" << *pf.unknownLabel << ") = " << format_form(sol.m) << "\n";
    os << "F = " << format_form(sol.futaki) << "\n";
    emit(opt, doc, os.str());
    return 0;
}

int cmd_ci(const Options& opt) {
    CISpec spec = io::parse_ci(io::load_json(opt.input));
    CharForm direct = ci_futaki_direct(spec);
    CharForm closed = ci_futaki_closed(spec);
    if (!exact_eq(direct, closed))
        throw Error("direct and closed-form routes disagree: " + format_form(direct) +
                    " vs " + format_form(closed));
    json doc;
    doc["command"] = "ci";
    doc["F"] = io::form_to_json(direct);
    doc["text"] = format_form(direct);
    std::ostringstream os;
    os << "F = " << format_form(direct) << "\n";
    emit(opt, doc, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Futaki invariants of almost Fano varieties by torus localization"};
    app.require_subcommand(1);

    Options opt;
    std::string command;
    auto add = [&](const char* name, const char* desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("input", opt.input, "input JSON file")->required();
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--check", opt.checks,
                        "comma-separated checks: degree,vanishing,barycenter");
        sub->add_option("--seed", opt.seed, "seed for randomized validation");
        sub->callback([&, name] { command = name; });
        return sub;
    };
    add("toric", "Futaki invariant of a complete smooth fan");
    add("localize", "Futaki invariant from explicit fixed-point data");
    add("solve-missing", "recover an unknown restriction by pole cancellation");
    add("ci", "Futaki invariant of a complete intersection in P^N");
    add("barycenter", "cross-check F against the anticanonical polytope moment");
    add("validate", "structural checks on a fan file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (command == "toric") return cmd_toric(opt);
        if (command == "localize") return cmd_localize(opt);
        if (command == "solve-missing") return cmd_solve_missing(opt);
        if (command == "ci") return cmd_ci(opt);
        if (command == "barycenter") return cmd_barycenter(opt);
        if (command == "validate") return cmd_validate(opt);
        std::cerr << "unknown command\n";
        return 1;
    } catch (const futaki::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const futaki::WeightSumNonzero& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const futaki::NonSmoothCone& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const futaki::SingularCone& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const futaki::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
