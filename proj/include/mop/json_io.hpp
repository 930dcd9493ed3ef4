#ifndef MOP_JSON_IO_HPP
#define MOP_JSON_IO_HPP

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mop/apery.hpp"
#include "mop/hermite_pade.hpp"
#include "mop/kernel.hpp"
#include "mop/measures.hpp"
#include "mop/mopcore.hpp"
#include "mop/series.hpp"
#include "mop/zeros.hpp"

namespace mop {

using nlohmann::json;

inline json load_json_file(const std::string &path) {
    std::ifstream is(path);
    if (!is)
        throw IoError("cannot open '" + path + "'");
    json j;
    try {
        is >> j;
    } catch (const std::exception &e) {
        throw FormatError("invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

// ---------------------------------------------------------------- measures

// {"kind": "lebesgue_unit" | "log_weight" | "hermite_external" |
//  "moment_table", "power": 1|2, "a": "p/q", "s": "p/q",
//  "values": ["p/q", ...]}
inline json measure_to_json(const MeasureSpec &m) {
    json j;
    j["kind"] = m.kind_name();
    if (const auto *lw = std::get_if<MeasureSpec::LogWeight>(&m.data()))
        j["power"] = lw->power;
    if (const auto *he = std::get_if<MeasureSpec::HermiteExternal>(&m.data())) {
        j["a"] = rational_to_string(he->a);
        j["s"] = rational_to_string(he->s);
    }
    if (const auto *mt = std::get_if<MeasureSpec::MomentTable>(&m.data())) {
        json vals = json::array();
        for (const auto &v : mt->values)
            vals.push_back(rational_to_string(v));
        j["values"] = std::move(vals);
    }
    return j;
}

inline MeasureSpec measure_from_json(const json &j) {
    if (!j.is_object() || !j.contains("kind"))
        throw FormatError("measure: expected an object with a 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "lebesgue_unit")
        return MeasureSpec::lebesgue_unit();
    if (kind == "log_weight") {
        if (!j.contains("power"))
            throw FormatError("log_weight measure needs 'power'");
        return MeasureSpec::log_weight(j.at("power").get<int>());
    }
    if (kind == "hermite_external") {
        if (!j.contains("a") || !j.contains("s"))
            throw FormatError("hermite_external measure needs 'a' and 's'");
        return MeasureSpec::hermite_external(
            parse_rational(j.at("a").get<std::string>()),
            parse_rational(j.at("s").get<std::string>()));
    }
    if (kind == "moment_table") {
        if (!j.contains("values") || !j.at("values").is_array())
            throw FormatError("moment_table measure needs 'values' array");
        std::vector<Rational> vals;
        for (const auto &v : j.at("values"))
            vals.push_back(parse_rational(v.get<std::string>()));
        return MeasureSpec::moment_table(std::move(vals));
    }
    throw FormatError("unknown measure kind '" + kind + "'");
}

inline std::vector<MeasureSpec> measures_from_json(const json &j) {
    std::vector<MeasureSpec> out;
    if (j.is_array())
        for (const auto &e : j)
            out.push_back(measure_from_json(e));
    else
        out.push_back(measure_from_json(j));
    if (out.empty())
        throw FormatError("measures: empty list");
    return out;
}

// ------------------------------------------------------------- coefficients

namespace detail {
inline json coeff_to_json(const Rational &q) { return rational_to_string(q); }
inline json coeff_to_json(const BigFloat &x) { return to_decimal_string(x); }
inline json coeff_to_json(const BigComplex &z) {
    return json::array({to_decimal_string(z.re), to_decimal_string(z.im)});
}

template <class S> S coeff_from_json(const json &j);
template <> inline Rational coeff_from_json<Rational>(const json &j) {
    return parse_rational(j.get<std::string>());
}
template <> inline BigFloat coeff_from_json<BigFloat>(const json &j) {
    return bigfloat_from_string(j.get<std::string>());
}
template <> inline BigComplex coeff_from_json<BigComplex>(const json &j) {
    if (!j.is_array() || j.size() != 2)
        throw FormatError("complex coefficient: expected [re, im]");
    return BigComplex(bigfloat_from_string(j.at(0).get<std::string>()),
                      bigfloat_from_string(j.at(1).get<std::string>()));
}

template <class S> std::string domain_name() {
    return scalar_traits<S>::name();
}
} // namespace detail

// {"domain": "rational"|"real"|"complex", "coeffs": [...]} low-to-high
template <class S> json poly_to_json(const Polynomial<S> &p) {
    json j;
    j["domain"] = detail::domain_name<S>();
    json coeffs = json::array();
    for (const auto &c : p.coeffs())
        coeffs.push_back(detail::coeff_to_json(c));
    j["coeffs"] = std::move(coeffs);
    return j;
}

template <class S> Polynomial<S> poly_from_json(const json &j) {
    if (!j.is_object() || !j.contains("coeffs"))
        throw FormatError("polynomial: expected {domain, coeffs}");
    if (j.contains("domain") &&
        j.at("domain").get<std::string>() != detail::domain_name<S>())
        throw FormatError("polynomial: domain mismatch, file has '" +
                          j.at("domain").get<std::string>() + "'");
    std::vector<S> c;
    for (const auto &e : j.at("coeffs"))
        c.push_back(detail::coeff_from_json<S>(e));
    return Polynomial<S>(std::move(c));
}

// {"domain": ..., "poly_part": [...], "tail": [...]}
template <class S> json series_to_json(const LaurentSeries<S> &f) {
    json j;
    j["domain"] = detail::domain_name<S>();
    json pp = json::array(), tail = json::array();
    for (const auto &c : f.poly_part.coeffs())
        pp.push_back(detail::coeff_to_json(c));
    for (const auto &c : f.tail)
        tail.push_back(detail::coeff_to_json(c));
    j["poly_part"] = std::move(pp);
    j["tail"] = std::move(tail);
    return j;
}

template <class S> LaurentSeries<S> series_from_json(const json &j) {
    if (!j.is_object() || !j.contains("tail"))
        throw FormatError("series: expected {domain, poly_part, tail}");
    if (j.contains("domain") &&
        j.at("domain").get<std::string>() != detail::domain_name<S>())
        throw FormatError("series: domain mismatch, file has '" +
                          j.at("domain").get<std::string>() + "'");
    LaurentSeries<S> f;
    std::vector<S> pp;
    if (j.contains("poly_part"))
        for (const auto &e : j.at("poly_part"))
            pp.push_back(detail::coeff_from_json<S>(e));
    f.poly_part = Polynomial<S>(std::move(pp));
    for (const auto &e : j.at("tail"))
        f.tail.push_back(detail::coeff_from_json<S>(e));
    return f;
}

// ------------------------------------------------------------ mixed systems

// {"degree_caps": [1,1],
//  "forms": [{"order": 1, "terms": [{"coeff": "p/q", "measure": 0,
//             "unknown": 0}, ...]}, ...],
//  "point_constraints": [{"unknown": 0, "point": "1", "value": "0"}],
//  "solution_space": "one_dimensional" | "unique"}
inline MixedSystemSpec mixed_spec_from_json(const json &j) {
    MixedSystemSpec spec;
    if (!j.is_object() || !j.contains("degree_caps") || !j.contains("forms"))
        throw FormatError("mixed spec: expected {degree_caps, forms, ...}");
    for (const auto &d : j.at("degree_caps"))
        spec.degree_caps.push_back(d.get<std::size_t>());
    for (const auto &fj : j.at("forms")) {
        MixedForm form;
        form.order = fj.at("order").get<std::size_t>();
        for (const auto &tj : fj.at("terms"))
            form.terms.push_back(
                {parse_rational(tj.at("coeff").get<std::string>()),
                 tj.at("measure").get<std::size_t>(),
                 tj.at("unknown").get<std::size_t>()});
        spec.forms.push_back(std::move(form));
    }
    if (j.contains("point_constraints"))
        for (const auto &pj : j.at("point_constraints"))
            spec.point_constraints.push_back(
                {pj.at("unknown").get<std::size_t>(),
                 parse_rational(pj.at("point").get<std::string>()),
                 parse_rational(pj.at("value").get<std::string>())});
    const std::string space =
        j.value("solution_space", std::string("one_dimensional"));
    if (space == "unique")
        spec.solution_space = MixedSystemSpec::Space::Unique;
    else if (space == "one_dimensional")
        spec.solution_space = MixedSystemSpec::Space::OneDimensional;
    else
        throw FormatError("mixed spec: unknown solution_space '" + space + "'");
    return spec;
}

// ------------------------------------------------------------- curve specs

// {"coeffs": [[["re","im"], ...], ...] outer index = power of w,
//  "branch": {"exponent": 1, "re": "...", "im": "..."}}
inline AlgebraicCurveSpec curve_from_json(const json &j,
                                          unsigned precision_bits) {
    PrecisionScope scope(precision_bits);
    if (!j.is_object() || !j.contains("coeffs"))
        throw FormatError("curve: expected {coeffs, branch}");
    AlgebraicCurveSpec curve;
    for (const auto &pj : j.at("coeffs")) {
        std::vector<BigComplex> c;
        for (const auto &e : pj)
            c.push_back(detail::coeff_from_json<BigComplex>(e));
        curve.coeffs.emplace_back(std::move(c));
    }
    if (j.contains("branch")) {
        const auto &b = j.at("branch");
        curve.branch_exponent = b.value("exponent", 1);
        curve.branch_coefficient = BigComplex(
            bigfloat_from_string(b.value("re", std::string("0"))),
            bigfloat_from_string(b.value("im", std::string("0"))));
    }
    return curve;
}

// ----------------------------------------------------------------- reports

inline json multi_index_to_json(const MultiIndex &n) {
    json j = json::array();
    for (unsigned p : n.parts)
        j.push_back(p);
    return j;
}

inline MultiIndex multi_index_from_json(const json &j) {
    std::vector<unsigned> parts;
    for (const auto &e : j)
        parts.push_back(e.get<unsigned>());
    return MultiIndex(parts);
}

template <class S> json type_ii_to_json(const TypeIISolution<S> &sol) {
    json j;
    j["index"] = multi_index_to_json(sol.index);
    j["poly"] = poly_to_json(sol.poly);
    json res = json::array();
    for (const auto &r : sol.residuals)
        res.push_back(detail::coeff_to_json(r));
    j["residuals"] = std::move(res);
    j["moments_normalized"] = sol.moments_normalized;
    return j;
}

template <class S> json type_i_to_json(const TypeISolution<S> &sol) {
    json j;
    j["index"] = multi_index_to_json(sol.index);
    json polys = json::array();
    for (const auto &p : sol.polys)
        polys.push_back(poly_to_json(p));
    j["polys"] = std::move(polys);
    j["normalization_value"] = detail::coeff_to_json(sol.normalization_value);
    json res = json::array();
    for (const auto &r : sol.residuals)
        res.push_back(detail::coeff_to_json(r));
    j["residuals"] = std::move(res);
    j["moments_normalized"] = sol.moments_normalized;
    return j;
}

inline json apery_step_to_json(const AperyStep &s) {
    json j;
    j["n"] = s.n;
    j["A"] = poly_to_json(s.A);
    j["B"] = poly_to_json(s.B);
    j["C"] = poly_to_json(s.C);
    j["D"] = poly_to_json(s.D);
    j["approximant"] = rational_to_string(s.approximant);
    j["abs_error"] = to_decimal_string(s.abs_error);
    j["order_first"] = s.order_first;
    j["order_second"] = s.order_second;
    return j;
}

inline json apery_sequence_to_json(const AperySequence &seq) {
    json j;
    json steps = json::array();
    for (const auto &s : seq.steps)
        steps.push_back(apery_step_to_json(s));
    j["steps"] = std::move(steps);
    json ratios = json::array();
    for (const auto &r : seq.error_ratios)
        ratios.push_back(to_decimal_string(r));
    j["error_ratios"] = std::move(ratios);
    return j;
}

} // namespace mop

#endif // MOP_JSON_IO_HPP
