#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "empirics.hpp"
#include "errors.hpp"
#include "psi.hpp"
#include "tail_bounds.hpp"
#include "tensor.hpp"

namespace orlicz {

using json = nlohmann::json;

/// 17 significant digits, '.' decimal point, no locale; "inf" for infinity.
inline std::string fmt(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (std::isnan(v))
        return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

/// JSON number, or the string "inf" for infinite values.
inline json num(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v;
}

namespace detail {

inline void expect_keys(const json& j, std::initializer_list<const char*> required,
                        std::initializer_list<const char*> optional, const std::string& where)
{
    if (!j.is_object())
        throw InputError(where + ": expected a JSON object");
    std::set<std::string> allowed;
    for (const char* k : required) {
        if (!j.contains(k))
            throw InputError(where + ": missing field '" + k + "'");
        allowed.insert(k);
    }
    for (const char* k : optional)
        allowed.insert(k);
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k))
            throw InputError(where + ": unrecognized field '" + k + "'");
}

inline double get_number(const json& j, const char* key, const std::string& where)
{
    const auto& v = j.at(key);
    if (v.is_number())
        return v.get<double>();
    if (v.is_string() && (v == "inf" || v == "infinity"))
        return kInf;
    throw InputError(where + ": field '" + key + "' must be a number");
}

} // namespace detail

inline json norm_to_json(const NormDescriptor& n)
{
    json j = {{"norm", n.name()}};
    if (n.name() == "lq")
        j["q"] = n.q;
    return j;
}

inline json to_json(const PsiSpec& spec)
{
    json params = json::object();
    std::visit(
        [&](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, PowerNorm>) {
                params = norm_to_json(f.norm);
                params["a"] = f.a;
            } else if constexpr (std::is_same_v<F, SeparableTwoLevel>) {
                params["r"] = f.r;
            } else if constexpr (std::is_same_v<F, SeparableFromPhi>) {
                if (!f.phi.is_power())
                    throw UnsupportedSpecError("to_json: custom Phi cannot be serialized");
                params["phi"] = "power";
                params["s"] = f.phi.exponent();
            } else if constexpr (std::is_same_v<F, UserSeparable>) {
                if (f.knots.empty())
                    throw UnsupportedSpecError("to_json: only tabulated UserSeparable components can be serialized");
                json k = json::array();
                for (const auto& [t, h] : f.knots)
                    k.push_back({t, h});
                params["knots"] = k;
                if (std::isfinite(f.domain_bound))
                    params["domain_bound"] = f.domain_bound;
            }
        },
        spec.family());
    return {{"family", spec.family_name()}, {"params", params}, {"dim", spec.dim()}};
}

inline PsiSpec psi_from_json(const json& j)
{
    const std::string where = "PsiSpec";
    detail::expect_keys(j, {"family", "params", "dim"}, {}, where);
    if (!j["family"].is_string())
        throw InputError(where + ": 'family' must be a string");
    if (!j["dim"].is_number_integer() || j["dim"].get<long long>() <= 0)
        throw InputError(where + ": 'dim' must be a positive integer");
    const auto dim = j["dim"].get<std::size_t>();
    const auto family = j["family"].get<std::string>();
    const json& p = j["params"];
    const std::string pw = where + "." + family + ".params";

    if (family == "PowerNorm") {
        detail::expect_keys(p, {"norm", "a"}, {"q"}, pw);
        if (!p["norm"].is_string())
            throw InputError(pw + ": 'norm' must be a string");
        const auto nm = p["norm"].get<std::string>();
        NormDescriptor nd;
        if (nm == "l1")
            nd = NormDescriptor::l1();
        else if (nm == "l2")
            nd = NormDescriptor::l2();
        else if (nm == "linf")
            nd = NormDescriptor::linf();
        else if (nm == "lq") {
            if (!p.contains("q"))
                throw InputError(pw + ": norm 'lq' requires 'q'");
            nd = NormDescriptor::lq(detail::get_number(p, "q", pw));
        } else
            throw InputError(pw + ": unknown norm '" + nm + "'");
        if (nm != "lq" && p.contains("q"))
            throw InputError(pw + ": 'q' is only valid with norm 'lq'");
        return PsiSpec::power_norm(nd, detail::get_number(p, "a", pw), dim);
    }
    if (family == "SeparableTwoLevel") {
        detail::expect_keys(p, {"r"}, {}, pw);
        return PsiSpec::two_level(detail::get_number(p, "r", pw), dim);
    }
    if (family == "SeparableFromPhi") {
        detail::expect_keys(p, {"phi", "s"}, {}, pw);
        if (p["phi"] != "power")
            throw InputError(pw + ": only phi = \"power\" is serializable");
        return PsiSpec::from_phi(PhiSpec::power(detail::get_number(p, "s", pw)), dim);
    }
    if (family == "BobkovLedouxCap") {
        detail::expect_keys(p, {}, {}, pw);
        return PsiSpec::bobkov_ledoux_cap(dim);
    }
    if (family == "UserSeparable") {
        detail::expect_keys(p, {"knots"}, {"domain_bound"}, pw);
        std::vector<std::pair<double, double>> knots;
        if (!p["knots"].is_array())
            throw InputError(pw + ": 'knots' must be an array of [t, h] pairs");
        for (const auto& k : p["knots"]) {
            if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number())
                throw InputError(pw + ": each knot must be a [t, h] pair of numbers");
            knots.emplace_back(k[0].get<double>(), k[1].get<double>());
        }
        const double bound = p.contains("domain_bound") ? detail::get_number(p, "domain_bound", pw) : kInf;
        return PsiSpec::tabulated(std::move(knots), dim, bound);
    }
    throw InputError(where + ": unknown family '" + family + "'");
}

inline json to_json(const GrowthEnvelope& e)
{
    return {{"K", e.K}, {"alpha", e.alpha}, {"beta", e.beta}, {"D", e.D}, {"d", e.d}};
}

inline GrowthEnvelope envelope_from_json(const json& j)
{
    const std::string w = "GrowthEnvelope";
    detail::expect_keys(j, {}, {"K", "alpha", "beta", "D", "d"}, w);
    GrowthEnvelope e;
    if (j.contains("K"))
        e.K = detail::get_number(j, "K", w);
    if (j.contains("alpha"))
        e.alpha = detail::get_number(j, "alpha", w);
    if (j.contains("beta"))
        e.beta = detail::get_number(j, "beta", w);
    if (j.contains("D"))
        e.D = detail::get_number(j, "D", w);
    if (j.contains("d"))
        e.d = detail::get_number(j, "d", w);
    e.validate();
    return e;
}

/// Parses inline JSON, or reads it from a file when the argument starts with '@'.
inline json parse_json_arg(const std::string& arg)
{
    std::string text = arg;
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in)
            throw InputError("cannot open '" + arg.substr(1) + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
}

// Matrices

inline json to_json(const MultiIndexMatrix& A)
{
    return {{"k", A.order()}, {"n", A.dim()}, {"data", A.data()}};
}

inline MultiIndexMatrix matrix_from_json(const json& j)
{
    const std::string w = "matrix";
    detail::expect_keys(j, {"k", "n", "data"}, {}, w);
    if (!j["k"].is_number_integer() || !j["n"].is_number_integer() || j["k"].get<long long>() <= 0 ||
        j["n"].get<long long>() <= 0)
        throw InputError(w + ": 'k' and 'n' must be positive integers");
    if (!j["data"].is_array())
        throw InputError(w + ": 'data' must be a flat array");
    std::vector<double> data;
    for (const auto& v : j["data"]) {
        if (!v.is_number())
            throw InputError(w + ": 'data' entries must be numbers");
        data.push_back(v.get<double>());
    }
    return MultiIndexMatrix(j["k"].get<std::size_t>(), j["n"].get<std::size_t>(), std::move(data));
}

/// Whitespace-separated dense text: one row per line. A single row is a vector (k = 1);
/// n rows of n numbers form a 2-indexed matrix.
inline MultiIndexMatrix read_matrix_text(std::istream& in)
{
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        std::istringstream ls(line);
        std::vector<double> row;
        std::string tok;
        while (ls >> tok) {
            double v;
            const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
                throw InputError("matrix text: cannot parse '" + tok + "'");
            row.push_back(v);
        }
        if (!row.empty())
            rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw InputError("matrix text: no data");
    if (rows.size() == 1)
        return MultiIndexMatrix::vector(std::move(rows[0]));
    const std::size_t n = rows.size();
    std::vector<double> data;
    for (const auto& r : rows) {
        if (r.size() != n)
            throw InputError("matrix text: expected " + std::to_string(n) + " columns per row");
        data.insert(data.end(), r.begin(), r.end());
    }
    return MultiIndexMatrix(2, n, std::move(data));
}

inline void write_matrix_text(const MultiIndexMatrix& A, std::ostream& os)
{
    if (A.order() > 2)
        throw InputError("write_matrix_text: only k <= 2 has a text form");
    const std::size_t cols = A.dim();
    for (std::size_t i = 0; i < A.size(); ++i)
        os << fmt(A[i]) << ((i + 1) % cols == 0 ? "\n" : " ");
}

// Reports

inline json to_json(const PartitionNorms& n)
{
    return {{"hs", n.hs},
            {"op", n.op},
            {"entry_lr", n.entry_lr},
            {"mixed_2_rstar", n.mixed_2_rstar},
            {"rstar_rstar", n.rstar_rstar},
            {"r", n.r}};
}

inline json to_json(const MomentReport& r)
{
    json rows = json::array();
    for (const auto& x : r.rows)
        rows.push_back({{"p", x.p},
                        {"lhs", x.lhs},
                        {"lhs_se", x.lhs_se},
                        {"G", x.G},
                        {"G_se", x.G_se},
                        {"bound", x.bound},
                        {"ratio", num(x.ratio)},
                        {"ratio_se", x.ratio_se},
                        {"top10_fraction", x.top10_fraction},
                        {"high_p_flag", x.high_p_flag}});
    return {{"kind", r.kind},
            {"sampler", r.sampler},
            {"function", r.function},
            {"spec", r.spec},
            {"env", to_json(r.env)},
            {"seed", r.seed},
            {"N", r.N},
            {"C", r.C},
            {"fitted_constant", num(r.fitted_constant)},
            {"fitted_C", num(r.fitted_C)},
            {"rows", rows}};
}

inline void write_csv(const MomentReport& r, std::ostream& os)
{
    os << "p,lhs,lhs_se,G,G_se,bound,ratio,ratio_se,top10_fraction,high_p_flag\n";
    for (const auto& x : r.rows)
        os << fmt(x.p) << ',' << fmt(x.lhs) << ',' << fmt(x.lhs_se) << ',' << fmt(x.G) << ',' << fmt(x.G_se) << ','
           << fmt(x.bound) << ',' << fmt(x.ratio) << ',' << fmt(x.ratio_se) << ',' << fmt(x.top10_fraction) << ','
           << (x.high_p_flag ? 1 : 0) << '\n';
}

inline json to_json(const NuLogpReport& r)
{
    json rows = json::array();
    for (const auto& x : r.rows)
        rows.push_back({{"p", x.p},
                        {"norm_p", x.norm_p},
                        {"se", x.se},
                        {"norm_1", x.norm_1},
                        {"lower", x.lower},
                        {"upper", x.upper},
                        {"top10_fraction", x.top10_fraction},
                        {"lower_ok", x.lower_ok},
                        {"upper_ok", x.upper_ok}});
    return {{"kind", "nu_logp"}, {"seed", r.seed}, {"N", r.N}, {"rows", rows}};
}

inline void write_csv(const NuLogpReport& r, std::ostream& os)
{
    os << "p,norm_p,se,norm_1,lower,upper,lower_ok,upper_ok\n";
    for (const auto& x : r.rows)
        os << fmt(x.p) << ',' << fmt(x.norm_p) << ',' << fmt(x.se) << ',' << fmt(x.norm_1) << ',' << fmt(x.lower)
           << ',' << fmt(x.upper) << ',' << x.lower_ok << ',' << x.upper_ok << '\n';
}

inline json to_json(const EnlargementReport& r)
{
    json rows = json::array();
    for (const auto& x : r.rows)
        rows.push_back({{"u", x.u}, {"radius", x.radius}, {"mass", x.mass}, {"se", x.se}, {"bound", x.bound}});
    return {{"kind", "enlargement"},
            {"m", r.m},
            {"mass_A", r.mass_A},
            {"mass_A_se", r.mass_A_se},
            {"precondition_ok", r.precondition_ok},
            {"seed", r.seed},
            {"N", r.N},
            {"rows", rows}};
}

inline void write_csv(const EnlargementReport& r, std::ostream& os)
{
    os << "u,radius,mass,se,bound\n";
    for (const auto& x : r.rows)
        os << fmt(x.u) << ',' << fmt(x.radius) << ',' << fmt(x.mass) << ',' << fmt(x.se) << ',' << fmt(x.bound)
           << '\n';
}

inline void write_csv(const SampleMatrix& m, std::ostream& os)
{
    for (std::size_t i = 0; i < m.rows; ++i) {
        const auto r = m.row(i);
        for (std::size_t j = 0; j < r.size(); ++j)
            os << fmt(r[j]) << (j + 1 < r.size() ? "," : "\n");
    }
}

} // namespace orlicz
