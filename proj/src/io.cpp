#include "oddcover/io.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "oddcover/error.hpp"

namespace oddcover
{

namespace
{

template <class T> T field(const Json &j, const char *key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw Error(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::ParseError, std::string("field \"") + key + "\": " + e.what());
    }
}

Json rational_pair(const Rational &r)
{
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    using boost::multiprecision::cpp_int;
    const cpp_int lo = std::numeric_limits<std::int64_t>::min();
    const cpp_int hi = std::numeric_limits<std::int64_t>::max();
    if (num >= lo && num <= hi && den <= hi) {
        return Json::array({num.convert_to<std::int64_t>(), den.convert_to<std::int64_t>()});
    }
    return Json::array({num.str(), den.str()}); // beyond 64 bits: decimal strings
}

std::string join(const std::vector<int> &v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + std::to_string(v[i]);
    }
    return s;
}

} // namespace

Json to_json(const Permutation &p) { return Json{{"n", p.degree()}, {"one_line", p.one_line()}}; }

Permutation permutation_from_json(const Json &j)
{
    const auto n = field<int>(j, "n");
    const auto one_line = field<std::vector<int>>(j, "one_line");
    if (static_cast<int>(one_line.size()) != n) {
        throw Error(ErrorCode::DegreeMismatch, "one_line has " + std::to_string(one_line.size()) + " entries, n = " + std::to_string(n));
    }
    return Permutation::from_one_line(one_line);
}

Json to_json(const MonodromyTuple &t)
{
    Json tau = Json::array();
    for (const auto &x : t.tau) {
        tau.push_back(to_json(x));
    }
    return Json{{"g", t.g}, {"tau", tau}};
}

MonodromyTuple tuple_from_json(const Json &j)
{
    const auto g = field<int>(j, "g");
    if (!j.contains("tau") || !j.at("tau").is_array()) {
        throw Error(ErrorCode::ParseError, "missing array \"tau\"");
    }
    std::vector<Permutation> tau;
    for (const auto &x : j.at("tau")) {
        tau.push_back(permutation_from_json(x));
    }
    return MonodromyTuple::make(g, std::move(tau));
}

Json to_json(const RamificationProfile &p) { return Json{{"g", p.g}, {"n", p.n}}; }

RamificationProfile profile_from_json(const Json &j)
{
    return RamificationProfile::make(field<int>(j, "g"), field<std::vector<int>>(j, "n"));
}

Json to_json(const SpinParity &s) { return Json{{"parity", std::string(to_string(s.parity))}, {"h0", s.h0}}; }

Json to_json(const ConditionReport &r)
{
    Json images = Json::array();
    for (const auto &p : r.iota_images) {
        images.push_back(to_json(p));
    }
    Json j{{"tau_is_three_cycle", r.tau_is_three_cycle},
           {"three_cycles", r.three_cycles},
           {"iota_compatible", r.iota_compatible},
           {"iota_images", images},
           {"infinity_cycle_type", r.infinity_type.parts},
           {"infinity_odd", r.infinity_odd}};
    j["profile_match"] = r.profile_match ? Json(*r.profile_match) : Json(nullptr);
    j["all_pass"] = r.all_pass();
    return j;
}

Json to_json(const QuotientCertificate &q)
{
    return Json{{"composite_degree", q.composite_degree},
                {"composite_infinity_contribution", q.composite_infinity_contribution},
                {"admissible_fixed_counts", q.admissible_fixed_counts},
                {"fixed_points", q.fixed_points},
                {"quotient_branch_contribution", q.quotient_branch_contribution},
                {"quotient_zero_contribution", q.quotient_zero_contribution},
                {"quotient_infinity_contribution", q.quotient_infinity_contribution},
                {"quotient_genus", q.quotient_genus}};
}

Json to_json(const CoveringReport &r)
{
    Json j{{"g", r.g}, {"degree", r.degree}, {"conditions", to_json(r.conditions)}, {"transitive", r.transitive}};
    j["genus_upstairs"] = r.genus_upstairs ? Json(*r.genus_upstairs) : Json(nullptr);
    j["odd"] = r.odd;
    j["profile"] = r.profile ? to_json(*r.profile) : Json(nullptr);
    j["quotient"] = r.quotient ? to_json(*r.quotient) : Json(nullptr);
    j["spin"] = r.spin ? to_json(*r.spin) : Json(nullptr);
    j["root_normalizes_infinity"] = r.root_normalizes_infinity;
    j["all_pass"] = r.all_pass();
    return j;
}

Json to_json(const ResidueQuadric &q)
{
    Json coeffs = Json::array();
    for (const auto &c : q.coefficients) {
        coeffs.push_back(rational_pair(c));
    }
    return Json{{"profile", to_json(q.profile)},
                {"coefficients", coeffs},
                {"rank", q.rank_on_residue_space},
                {"residue_space_dimension", residue_space(q.profile.g).dimension},
                {"smooth", q.smooth()}};
}

std::string covering_csv_header() { return "g,profile,conditions,transitive,odd,all_pass,genus\r\n"; }

std::string covering_csv_row(const CoveringReport &r)
{
    const auto flag = [](bool b) { return std::string(b ? "1" : "0"); };
    return std::to_string(r.g) + "," + csv_field(r.profile ? join(r.profile->n) : "") + "," + flag(r.conditions.all_pass()) + "," +
           flag(r.transitive) + "," + flag(r.odd) + "," + flag(r.all_pass()) + "," +
           (r.genus_upstairs ? std::to_string(*r.genus_upstairs) : "") + "\r\n";
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const EllipticSolution &s)
{
    Json a = Json::array();
    for (const auto &x : s.a) {
        a.push_back(to_json(x));
    }
    return Json{{"a", a}, {"residual", s.residual}, {"on_q1_residual", s.on_q1_residual}, {"orbit_id", s.orbit_id}};
}

Json to_json(const SolutionCertificate &c)
{
    Json zeros = Json::array();
    for (const auto &z : c.zeros) {
        zeros.push_back(to_json(z));
    }
    Json values = Json::array();
    for (const auto &v : c.critical_values) {
        values.push_back(to_json(v));
    }
    return Json{{"residue_quadric_residual", c.residue_quadric_residual},
                {"psi_residual", c.psi_residual},
                {"h_periodicity_defect", c.h_periodicity_defect},
                {"h_oddness_defect", c.h_oddness_defect},
                {"zeros", zeros},
                {"min_zero_derivative", c.min_zero_derivative},
                {"critical_values", values},
                {"critical_pairing_defect", c.critical_pairing_defect},
                {"clauses", c.clauses},
                {"passed", c.passed()}};
}

Json census_to_json(const ClassCensus &c)
{
    Json rows = Json::array();
    for (const auto &[key, pc] : c.counts) {
        rows.push_back(Json{{"profile", key},
                            {"tuple_count", pc.tuple_count},
                            {"class_count", pc.class_count()},
                            {"verified", pc.verified},
                            {"verify_failures", pc.verify_failures}});
    }
    // 2^{2g}: the fibre degree over a general curve, listed for comparison only.
    return Json{{"g", c.g},
                {"profiles", rows},
                {"reference_fibre_degree", Json{{"value", std::uint64_t{1} << (2 * c.g)}, {"informational", true}}},
                {"metadata", Json{{"wall_time_seconds", c.wall_time_seconds}}}};
}

std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    return out + "\"";
}

std::string census_to_csv(const ClassCensus &c)
{
    std::string out = "profile,tuple_count,class_count\r\n";
    for (const auto &[key, pc] : c.counts) {
        out += csv_field(join(key)) + "," + std::to_string(pc.tuple_count) + "," + std::to_string(pc.class_count()) + "\r\n";
    }
    return out;
}

Json to_json(const Checkpoint &c)
{
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(c.task_hash));
    Json rows = Json::array();
    for (const auto &[key, pc] : c.partial.counts) {
        rows.push_back(Json{{"profile", key},
                            {"tuple_count", pc.tuple_count},
                            {"classes", pc.classes},
                            {"verified", pc.verified},
                            {"verify_failures", pc.verify_failures}});
    }
    return Json{{"task_hash", hash}, {"cursor", c.cursor}, {"partial", Json{{"g", c.partial.g}, {"profiles", rows}}}};
}

Checkpoint checkpoint_from_json(const Json &j)
{
    Checkpoint c;
    const auto hash = field<std::string>(j, "task_hash");
    try {
        std::size_t used = 0;
        c.task_hash = std::stoull(hash, &used, 16);
        if (used != hash.size()) {
            throw std::invalid_argument(hash);
        }
    } catch (const std::exception &) {
        throw Error(ErrorCode::ParseError, "task_hash must be a hexadecimal string");
    }
    c.cursor = field<std::uint64_t>(j, "cursor");
    if (!j.contains("partial")) {
        throw Error(ErrorCode::ParseError, "missing field \"partial\"");
    }
    const auto &p = j.at("partial");
    c.partial.g = field<int>(p, "g");
    if (!p.contains("profiles") || !p.at("profiles").is_array()) {
        throw Error(ErrorCode::ParseError, "missing array \"profiles\"");
    }
    for (const auto &row : p.at("profiles")) {
        auto &pc = c.partial.counts[field<std::vector<int>>(row, "profile")];
        pc.tuple_count = field<std::uint64_t>(row, "tuple_count");
        const auto classes = field<std::vector<std::uint64_t>>(row, "classes");
        pc.classes.insert(classes.begin(), classes.end());
        pc.verified = field<std::uint64_t>(row, "verified");
        pc.verify_failures = field<std::uint64_t>(row, "verify_failures");
    }
    return c;
}

Json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot open " + path);
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
}

void write_text_file(const std::string &path, const std::string &text)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorCode::ParseError, "cannot write " + tmp);
        }
        out << text;
        if (!out) {
            throw Error(ErrorCode::ParseError, "write failed for " + tmp);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw Error(ErrorCode::ParseError, "cannot rename " + tmp + " to " + path);
    }
}

} // namespace oddcover
