#pragma once

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orlicz/orlicz.hpp"

namespace orlicz::cli {

enum ExitCode : int
{
    kOk = 0,
    kVerifyFailed = 1,
    kInputError = 2,
    kNumericalError = 3,
};

inline double parse_double(const std::string& tok)
{
    if (tok == "inf" || tok == "+inf")
        return kInf;
    double v;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw InputError("cannot parse number '" + tok + "'");
    return v;
}

/// Comma- or whitespace-separated list of numbers.
inline std::vector<double> parse_list(const std::string& s)
{
    std::vector<double> out;
    std::string tok;
    for (char c : s + ",") {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!tok.empty())
                out.push_back(parse_double(tok));
            tok.clear();
        } else {
            tok += c;
        }
    }
    if (out.empty())
        throw InputError("empty number list");
    return out;
}

/// "lo:hi:n" (linear) or "log:lo:hi:n" (log-spaced).
inline std::vector<double> parse_grid(const std::string& s)
{
    std::vector<std::string> parts;
    std::string tok;
    for (char c : s + ":") {
        if (c == ':') {
            parts.push_back(tok);
            tok.clear();
        } else {
            tok += c;
        }
    }
    const bool log = !parts.empty() && parts[0] == "log";
    if (log)
        parts.erase(parts.begin());
    if (parts.size() != 3)
        throw InputError("grid must be 'lo:hi:n' or 'log:lo:hi:n'");
    const double lo = parse_double(parts[0]), hi = parse_double(parts[1]);
    const double nd = parse_double(parts[2]);
    if (!(nd >= 1.0) || nd != std::floor(nd) || nd > 1e6)
        throw InputError("grid size must be a positive integer");
    if (!(hi >= lo))
        throw InputError("grid requires lo <= hi");
    const auto n = static_cast<std::size_t>(nd);
    if (log) {
        if (!(lo > 0.0))
            throw InputError("log grid requires lo > 0");
        return log_grid(lo, hi, n);
    }
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

/// Named numeric/string parameters of a `bound` evaluator.
class Params
{
public:
    Params(std::map<std::string, std::string> raw) : raw_(std::move(raw)) {}

    double num(const std::string& k) const
    {
        used_.insert(k);
        const auto it = raw_.find(k);
        if (it == raw_.end())
            throw InputError("missing parameter --" + k);
        return parse_double(it->second);
    }
    double num(const std::string& k, double dflt) const
    {
        if (has(k))
            return num(k);
        used_.insert(k);
        defaults_[k] = dflt;
        return dflt;
    }
    std::string str(const std::string& k) const
    {
        used_.insert(k);
        const auto it = raw_.find(k);
        if (it == raw_.end())
            throw InputError("missing parameter --" + k);
        return it->second;
    }
    bool has(const std::string& k) const { return raw_.count(k) != 0; }

    GrowthEnvelope env(bool need_alpha = true) const
    {
        GrowthEnvelope e;
        e.K = num("K");
        e.D = num("D");
        e.alpha = need_alpha ? num("alpha") : 2.0;
        e.beta = num("beta");
        e.d = num("d", 0.0);
        e.validate();
        return e;
    }

    void reject_unused() const
    {
        for (const auto& [k, v] : raw_)
            if (!used_.count(k))
                throw InputError("unrecognized parameter --" + k);
    }

    json resolved() const
    {
        json j = json::object();
        for (const auto& [k, v] : defaults_)
            j[k] = v;
        for (const auto& [k, v] : raw_) {
            try {
                const double x = parse_double(v);
                j[k] = std::isfinite(x) ? json(x) : json(v);
            } catch (const InputError&) {
                j[k] = v;
            }
        }
        return j;
    }

private:
    std::map<std::string, std::string> raw_;
    mutable std::set<std::string> used_;
    mutable std::map<std::string, double> defaults_;
};

struct Output
{
    json config = json::object();
    std::string format = "csv";
    std::ostringstream csv;
    json result;

    std::string render() const
    {
        if (format == "json")
            return json{{"config", config}, {"result", result}}.dump(2) + "\n";
        return "# config: " + config.dump() + "\n" + csv.str();
    }
};

inline void emit(const Output& o, const std::string& out_path, std::ostream& out)
{
    const auto text = o.render();
    if (out_path.empty() || out_path == "-") {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f)
        throw InputError("cannot open output file '" + out_path + "'");
    f << text;
}

inline std::vector<std::vector<double>> read_vectors(const std::vector<std::string>& inline_x,
                                                     const std::string& file)
{
    std::vector<std::vector<double>> xs;
    for (const auto& s : inline_x)
        xs.push_back(parse_list(s));
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in)
            throw InputError("cannot open '" + file + "'");
        std::string line;
        while (std::getline(in, line))
            if (line.find_first_not_of(" \t\r") != std::string::npos && line[0] != '#')
                xs.push_back(parse_list(line));
    }
    if (xs.empty())
        throw InputError("no input vectors (use --x or --x-file)");
    return xs;
}

// Scalar evaluators of the `bound` subcommand.
inline const std::map<std::string, std::function<double(const Params&)>>& scalar_bounds()
{
    static const std::map<std::string, std::function<double(const Params&)>> m{
        {"l_constant", [](const Params& p) { return l_constant(p.env()); }},
        {"defective_moment_bound",
         [](const Params& p) { return defective_moment_bound({p.num("p"), p.num("norm_beta"), p.num("G"), p.env()}); }},
        {"defective_moment_bound_q",
         [](const Params& p) {
             return defective_moment_bound_q({p.num("p"), p.num("norm_q"), p.num("G"), p.env()}, p.num("q"));
         }},
        {"smaller_moment_prefactor",
         [](const Params& p) { return smaller_moment_prefactor(p.num("p"), p.num("q"), p.num("beta"), p.num("d", 0.0)); }},
        {"alpha1_moment_bound",
         [](const Params& p) { return alpha1_moment_bound(p.num("norm_beta"), p.num("G"), p.env(false), p.num("p")); }},
        {"centered_moment_bound",
         [](const Params& p) { return centered_moment_bound(p.num("G"), p.env(), p.num("p"), p.num("C", 1.0)); }},
        {"poincare_beta_bound",
         [](const Params& p) { return poincare_beta_bound(p.num("G"), p.env(), p.num("C", 1.0)); }},
        {"enlargement_rate", [](const Params& p) { return enlargement_rate(p.env(), p.num("C_impl", 1.0)); }},
        {"quadratic_chaos_moment",
         [](const Params& p) {
             return quadratic_chaos_moment({p.num("hs"), p.num("op"), p.num("entry_lr"), p.num("mixed_2_rstar"),
                                            p.num("rstar_rstar"), p.num("r")},
                                           p.num("p"));
         }},
        {"gk_moment",
         [](const Params& p) { return gk_moment(parse_list(p.str("x")), PhiSpec::power(p.num("s")), p.num("p")); }},
        {"moment_interpolation_factor",
         [](const Params& p) { return moment_interpolation_factor(p.num("A"), p.num("p"), p.num("q"), p.num("r")); }},
        {"bcg_moment_first_line",
         [](const Params& p) {
             return bcg_moment_first_line(p.num("L"), p.num("p"), p.num("mean_grad_norm"), p.num("hess_op_mp"));
         }},
        {"bcg_moment_bound",
         [](const Params& p) {
             const auto md = parse_list(p.str("mean_derivs"));
             return bcg_moment_bound(p.num("L"), p.num("p"), p.num("hess_op_mp"), md, p.num("dk_norm"));
         }},
        {"gradient_chain_bound",
         [](const Params& p) {
             const auto md = parse_list(p.str("mean_derivs"));
             return gradient_chain_bound(p.num("L"), md, p.num("dk_norm"));
         }},
    };
    return m;
}

// Profile evaluators: build the profile from parameters; the variable is `t` (or `u`).
inline const std::map<std::string, std::pair<std::string, std::function<std::function<double(double)>(const Params&)>>>&
profile_bounds()
{
    using Maker = std::function<std::function<double(double)>(const Params&)>;
    static const std::map<std::string, std::pair<std::string, Maker>> m{
        {"two_level_tail", {"t", [](const Params& p) -> std::function<double(double)> {
                                const double a = p.num("a"), b = p.num("b"), r = p.num("r"), c = p.num("c", 1.0);
                                return [=](double t) { return two_level_tail(a, b, r, c, t); };
                            }}},
        {"hanson_wright_tail", {"t", [](const Params& p) -> std::function<double(double)> {
                                    const double A = p.num("A_q"), B = p.num("B"), q = p.num("q"), c = p.num("c", 1.0);
                                    return [=](double t) { return hanson_wright_tail(A, B, q, c, t); };
                                }}},
        {"bcg_tail", {"t", [](const Params& p) -> std::function<double(double)> {
                          const double L = p.num("L"), h = p.num("hess_hs_m2"), g = p.num("mean_grad"),
                                       o = p.num("hess_op_sup");
                          return [=](double t) { return bcg_tail(L, h, g, o, t); };
                      }}},
        {"enlargement_bound", {"u", [](const Params& p) -> std::function<double(double)> {
                                   const auto env = p.env();
                                   const double c = p.num("C_impl", 1.0);
                                   return [=](double u) { return enlargement_bound(u, env, c); };
                               }}},
        {"chebyshev_level", {"t", [](const Params& p) -> std::function<double(double)> {
                                 const auto env = p.env();
                                 const double g0 = p.num("G0"), gamma = p.num("gamma"), C = p.num("C", 1.0);
                                 return [=](double t) {
                                     return chebyshev_level([=](double q) { return g0 * std::pow(q, gamma); }, env, C,
                                                            t);
                                 };
                             }}},
        {"lipschitz_profile", {"t", [](const Params& p) -> std::function<double(double)> {
                                   const auto env = p.env();
                                   const double a = p.num("a"), b = p.num("b"), C = p.num("C", 1.0);
                                   const auto spec = psi_from_json(parse_json_arg(p.str("psi")));
                                   return [=](double t) { return lipschitz_profile(a, b, env, spec, C, t); };
                               }}},
    };
    return m;
}

inline std::string bound_names()
{
    std::string s;
    for (const auto& [k, v] : scalar_bounds())
        s += (s.empty() ? "" : ", ") + k;
    for (const auto& [k, v] : profile_bounds())
        s += ", " + k;
    return s;
}

inline json argv_json(int argc, const char* const* argv)
{
    json a = json::array();
    for (int i = 1; i < argc; ++i)
        a.push_back(argv[i]);
    return a;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Generalized Orlicz norms, conjugate growth functions, moment and tail bounds, and Monte Carlo "
                 "verification.",
                 "orlicz_conc"};
    app.require_subcommand(1);
    std::string format = "csv", out_path;
    const auto add_common = [&](CLI::App* s) {
        s->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        s->add_option("--out", out_path, "Output file (default: stdout)");
    };

    // norm
    auto* norm = app.add_subcommand("norm", "psi_p_norm of input vectors");
    std::string psi_arg, p_arg, x_file;
    std::vector<std::string> x_args;
    double tol = kDefaultNormTol;
    norm->add_option("--psi", psi_arg, "PsiSpec JSON, or @file")->required();
    norm->add_option("--p", p_arg, "p value(s), comma-separated")->required();
    norm->add_option("--x", x_args, "Input vector, comma-separated (repeatable)");
    norm->add_option("--x-file", x_file, "File with one vector per line");
    norm->add_option("--tol", tol, "Relative tolerance");
    add_common(norm);

    // conjugate
    auto* conj = app.add_subcommand("conjugate", "omega, omega^-1, omega*, lambda tables and Psi*");
    std::string t_arg, grid_arg, y_arg;
    conj->add_option("--psi", psi_arg, "PsiSpec JSON, or @file")->required();
    conj->add_option("--t", t_arg, "t value(s), comma-separated");
    conj->add_option("--t-grid", grid_arg, "lo:hi:n or log:lo:hi:n");
    conj->add_option("--y", y_arg, "Evaluate Psi* at this vector instead");
    add_common(conj);

    // bound
    auto* bound = app.add_subcommand("bound", "Evaluate a named moment/tail bound");
    std::string bound_name, params_arg;
    bound->add_option("name", bound_name, "Evaluator name")->required();
    bound->add_option("--params", params_arg, "Parameters as a JSON object (or @file)");
    bound->add_option("--t-grid", grid_arg, "Tabulate a profile on lo:hi:n or log:lo:hi:n");
    bound->allow_extras();
    add_common(bound);

    // tensor
    auto* tens = app.add_subcommand("tensor", "Partition norms, form evaluation, chaos deterministic term");
    std::string matrix_file, matrix_json;
    double r = 2.0, p_val = 0.0;
    std::size_t restarts = kDefaultRestarts;
    std::uint64_t seed = 0;
    bool do_sym = false;
    tens->add_option("--matrix", matrix_file, "Dense whitespace-separated text file");
    tens->add_option("--matrix-json", matrix_json, "JSON {k, n, data}, or @file");
    tens->add_option("--r", r, "Exponent r >= 2 of the partition norms");
    tens->add_option("--restarts", restarts, "Random restarts for the mixed norms");
    tens->add_option("--seed", seed, "Seed for restarts");
    tens->add_option("--x", y_arg, "Evaluate the form and its gradient at x");
    tens->add_option("--psi", psi_arg, "PsiSpec for the chaos deterministic term");
    tens->add_option("--p", p_val, "p for the chaos deterministic term");
    tens->add_flag("--symmetrize", do_sym, "Symmetrize before evaluation");
    add_common(tens);

    // sample
    auto* samp = app.add_subcommand("sample", "Draw samples from a reference measure");
    std::string family, sformat = "csv";
    std::size_t n = 1, count = 0;
    double s_exp = 2.0;
    std::uint32_t stream = 0;
    samp->add_option("--family", family, "gaussian | phi_tail | nu")
        ->required()
        ->check(CLI::IsMember({"gaussian", "phi_tail", "nu"}));
    samp->add_option("--n", n, "Dimension");
    samp->add_option("--s", s_exp, "Exponent of Phi(t) = t^s for phi_tail");
    samp->add_option("--count", count, "Number of samples")->required();
    samp->add_option("--seed", seed, "Seed");
    samp->add_option("--stream", stream, "Stream id");
    samp->add_option("--format", sformat, "csv | bin (little-endian float64)")->check(CLI::IsMember({"csv", "bin"}));
    samp->add_option("--out", out_path, "Output file (required for bin)");

    // verify
    auto* ver = app.add_subcommand("verify", "Run a named verification scenario");
    std::string scenario;
    std::optional<std::size_t> N;
    ver->add_option("scenario", scenario, "Scenario name")->required();
    ver->add_option("--N", N, "Sample size / trial count");
    ver->add_option("--seed", seed, "Seed");
    add_common(ver);

    const auto fail = [&](const char* kind, const std::string& msg, int code) {
        err << json{{"error", kind}, {"message", msg}}.dump() << "\n";
        return code;
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        return fail("input_error", e.what(), kInputError);
    }

    try {
        Output o;
        o.format = format;
        o.config["argv"] = argv_json(argc, argv);

        if (norm->parsed()) {
            const auto spec = psi_from_json(parse_json_arg(psi_arg));
            const auto ps = parse_list(p_arg);
            const auto xs = read_vectors(x_args, x_file);
            o.config.update({{"subcommand", "norm"}, {"psi", to_json(spec)}, {"p", ps}, {"tol", tol}});
            o.csv << "row,p,norm\n";
            o.result = json::array();
            for (std::size_t i = 0; i < xs.size(); ++i)
                for (double p : ps) {
                    const double v = psi_p_norm(spec, p, xs[i], tol);
                    o.csv << i << ',' << fmt(p) << ',' << fmt(v) << '\n';
                    o.result.push_back({{"row", i}, {"p", p}, {"norm", v}});
                }
            emit(o, out_path, out);
            return kOk;
        }

        if (conj->parsed()) {
            const auto spec = psi_from_json(parse_json_arg(psi_arg));
            o.config.update({{"subcommand", "conjugate"}, {"psi", to_json(spec)}});
            if (!y_arg.empty()) {
                const auto y = parse_list(y_arg);
                const auto v = psi_star(spec, y);
                o.config["y"] = y;
                o.csv << "quantity,value\npsi_star," << fmt(v.value()) << '\n';
                o.result = {{"psi_star", num(v.value())}};
            } else {
                std::vector<double> ts;
                if (!t_arg.empty())
                    ts = parse_list(t_arg);
                else
                    ts = parse_grid(grid_arg.empty() ? "log:0.001:1000:13" : grid_arg);
                o.config["t"] = ts;
                o.csv << "t,omega,omega_inv,omega_star,lambda\n";
                o.result = json::array();
                const OmegaProfile prof(spec);
                for (double t : ts) {
                    const double w = prof.omega(t).value(), wi = prof.omega_inv(t), ws = prof.omega_star(t),
                                 l = prof.lambda(t).value();
                    o.csv << fmt(t) << ',' << fmt(w) << ',' << fmt(wi) << ',' << fmt(ws) << ',' << fmt(l) << '\n';
                    o.result.push_back(
                        {{"t", t}, {"omega", num(w)}, {"omega_inv", wi}, {"omega_star", ws}, {"lambda", num(l)}});
                }
            }
            emit(o, out_path, out);
            return kOk;
        }

        if (bound->parsed()) {
            std::map<std::string, std::string> raw;
            if (!params_arg.empty()) {
                const auto j = parse_json_arg(params_arg);
                if (!j.is_object())
                    throw InputError("--params must be a JSON object");
                for (const auto& [k, v] : j.items())
                    raw[k] = v.is_string() ? v.get<std::string>() : v.dump();
            }
            const auto extras = bound->remaining();
            for (std::size_t i = 0; i < extras.size(); ++i) {
                const auto& k = extras[i];
                if (k.rfind("--", 0) != 0 || k.size() <= 2)
                    throw InputError("unexpected argument '" + k + "'");
                if (i + 1 >= extras.size())
                    throw InputError("missing value for " + k);
                raw[k.substr(2)] = extras[++i];
            }
            const Params prm(raw);
            o.config.update({{"subcommand", "bound"}, {"name", bound_name}});
            if (const auto it = scalar_bounds().find(bound_name); it != scalar_bounds().end()) {
                if (!grid_arg.empty())
                    throw InputError("'" + bound_name + "' is not a profile; --t-grid does not apply");
                const double v = it->second(prm);
                prm.reject_unused();
                o.csv << "name,value\n" << bound_name << ',' << fmt(v) << '\n';
                o.result = {{"name", bound_name}, {"value", num(v)}};
            } else if (const auto pt = profile_bounds().find(bound_name); pt != profile_bounds().end()) {
                const auto& var = pt->second.first;
                const auto f = pt->second.second(prm);
                std::vector<double> ts;
                if (!grid_arg.empty())
                    ts = parse_grid(grid_arg);
                else
                    ts = {prm.num(var)};
                prm.reject_unused();
                o.config["grid"] = ts;
                o.csv << var << ",bound\n";
                o.result = json::array();
                for (double t : ts) {
                    const double v = f(t);
                    o.csv << fmt(t) << ',' << fmt(v) << '\n';
                    o.result.push_back({{var, t}, {"bound", v}});
                }
            } else {
                throw InputError("unknown bound '" + bound_name + "'; available: " + bound_names());
            }
            o.config["params"] = prm.resolved();
            emit(o, out_path, out);
            return kOk;
        }

        if (tens->parsed()) {
            if (matrix_file.empty() == matrix_json.empty())
                throw InputError("give exactly one of --matrix and --matrix-json");
            std::optional<MultiIndexMatrix> A;
            if (!matrix_file.empty()) {
                std::ifstream in(matrix_file);
                if (!in)
                    throw InputError("cannot open '" + matrix_file + "'");
                A = read_matrix_text(in);
            } else {
                A = matrix_from_json(parse_json_arg(matrix_json));
            }
            if (do_sym)
                A = symmetrize(*A);
            else
                A->check_symmetric();
            o.config.update({{"subcommand", "tensor"},
                             {"k", A->order()},
                             {"n", A->dim()},
                             {"r", r},
                             {"restarts", restarts},
                             {"seed", seed},
                             {"symmetrize", do_sym}});
            o.csv << "quantity,value\n";
            o.result = json::object();
            const auto put = [&](const std::string& k, double v) {
                o.csv << k << ',' << fmt(v) << '\n';
                o.result[k] = num(v);
            };
            if (A->order() == 2) {
                const auto pn = partition_norms(*A, r, restarts, seed);
                put("hs", pn.hs);
                put("op", pn.op);
                put("entry_lr", pn.entry_lr);
                put("mixed_2_rstar", pn.mixed_2_rstar);
                put("rstar_rstar", pn.rstar_rstar);
            }
            if (!y_arg.empty()) {
                const auto x = parse_list(y_arg);
                o.config["x"] = x;
                put("form", eval_form(*A, x));
                const auto g = form_gradient(*A, x);
                for (std::size_t i = 0; i < g.size(); ++i)
                    put("grad_" + std::to_string(i), g[i]);
            }
            if (!psi_arg.empty()) {
                const auto spec = psi_from_json(parse_json_arg(psi_arg));
                o.config["psi"] = to_json(spec);
                o.config["p"] = p_val;
                put("chaos_term", chaos_deterministic_term(*A, spec, p_val, restarts, seed));
            }
            emit(o, out_path, out);
            return kOk;
        }

        if (samp->parsed()) {
            SamplerSpec spec;
            if (family == "gaussian")
                spec.family = StandardGaussian{n};
            else if (family == "phi_tail")
                spec.family = ProductPhiTail{PhiSpec::power(s_exp), n};
            else {
                if (n != 1)
                    throw InputError("nu is one-dimensional; use --n 1");
                spec.family = NuMeasure{};
            }
            spec.seed = seed;
            spec.count = count;
            spec.validate();
            json cfg = {{"argv", argv_json(argc, argv)},
                        {"subcommand", "sample"},
                        {"family", family},
                        {"n", spec.dim()},
                        {"count", count},
                        {"seed", seed},
                        {"stream", stream},
                        {"format", sformat}};
            if (family == "phi_tail")
                cfg["s"] = s_exp;
            const auto m = sample(spec, stream);
            if (sformat == "bin") {
                if (out_path.empty() || out_path == "-")
                    throw InputError("--format bin requires --out");
                std::ofstream f(out_path, std::ios::binary);
                if (!f)
                    throw InputError("cannot open output file '" + out_path + "'");
                write_binary(m, f);
                std::ofstream side(out_path + ".json");
                side << cfg.dump(2) << "\n";
                return kOk;
            }
            o.config = cfg;
            write_csv(m, o.csv);
            emit(o, out_path, out);
            return kOk;
        }

        if (ver->parsed()) {
            ScenarioOptions opt;
            opt.N = N;
            opt.seed = seed ? seed : ScenarioOptions{}.seed;
            o.config.update({{"subcommand", "verify"}, {"scenario", scenario}, {"seed", opt.seed}});
            if (N)
                o.config["N"] = *N;
            const auto res = run_scenario(scenario, opt);
            o.result = to_json(res);
            o.csv << "check,pass,detail\n";
            for (const auto& c : res.checks)
                o.csv << '"' << c.label << "\"," << (c.pass ? "PASS" : "FAIL") << ",\"" << c.detail << "\"\n";
            emit(o, out_path, out);
            return res.ok() ? kOk : kVerifyFailed;
        }
    } catch (const NumericalError& e) {
        return fail("numerical_error", e.what(), kNumericalError);
    } catch (const InputError& e) {
        return fail("input_error", e.what(), kInputError);
    } catch (const json::exception& e) {
        return fail("input_error", e.what(), kInputError);
    }
    return fail("input_error", "no subcommand", kInputError);
}

} // namespace orlicz::cli
