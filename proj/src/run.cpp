#include "weyl_scope/run.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <random>

#include "weyl_scope/detect.hpp"
#include "weyl_scope/firstorder.hpp"

namespace weyl {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); }

double num(const Json& cfg, const char* key, double fallback) {
    if (!cfg.is_object() || !cfg.contains(key)) return fallback;
    if (!cfg[key].is_number()) invalid(std::string(key) + " must be a number");
    return cfg[key].get<double>();
}

int count(const Json& cfg, const char* key, int fallback, int min_value = 1) {
    if (!cfg.is_object() || !cfg.contains(key)) return fallback;
    if (!cfg[key].is_number_integer() || cfg[key].get<long>() < min_value) {
        invalid(std::string(key) + " must be an integer >= " + std::to_string(min_value));
    }
    return cfg[key].get<int>();
}

const Json& sub(const Json& cfg, const char* key) {
    static const Json empty = Json::object();
    if (!cfg.is_object() || !cfg.contains(key)) return empty;
    return cfg[key];
}

std::string resolve(const std::string& path, const RunOptions& opts) {
    const std::filesystem::path p(path);
    if (p.is_absolute() || opts.base_dir.empty()) return path;
    return (std::filesystem::path(opts.base_dir) / p).string();
}

double tolerance(const RunOptions& opts, double fallback) {
    if (opts.tol && !(*opts.tol > 0.0)) invalid("tolerance must be positive");
    return opts.tol.value_or(fallback);
}

ContourSpec contour_from(const Json& j, const ContourSpec& fallback) {
    if (j.is_null() || (j.is_object() && j.empty())) return fallback;
    ContourSpec c;
    c.center = j.contains("center") ? complex_from_json(j["center"]) : fallback.center;
    c.radius = num(j, "radius", fallback.radius);
    c.nodes = count(j, "nodes", fallback.nodes, 8);
    try {
        c.validate();
    } catch (const Error& e) {
        invalid(e.what());
    }
    return c;
}

Json contour_to_json(const ContourSpec& c) {
    Json j;
    j["center"] = complex_to_json(c.center);
    j["radius"] = c.radius;
    j["nodes"] = c.nodes;
    return j;
}

/// {"random": {"m", "h", "seed"}} | {"file": path} | {"inline": triple-v1},
/// optionally with "hidden": block matrix appended as an invisible summand.
TriplePtr load_triple(const Json& spec, const RunOptions& opts, std::uint64_t fallback_seed) {
    if (!spec.is_object()) invalid("triple entry must be an object");
    TriplePtr tr;
    if (spec.contains("random")) {
        const Json& r = spec["random"];
        const int m = count(r, "m", 8), h = count(r, "h", 2);
        if (h >= m) invalid("random triple needs h < m");
        const auto seed = r.contains("seed") ? r["seed"].get<std::uint64_t>() : fallback_seed;
        tr = random_triple(m, h, seed, "random-m" + std::to_string(m) + "-h" + std::to_string(h));
    } else if (spec.contains("file")) {
        if (!spec["file"].is_string()) invalid("file must be a path");
        tr = triple_from_json(read_json_file(resolve(spec["file"].get<std::string>(), opts)));
    } else if (spec.contains("inline")) {
        tr = triple_from_json(spec["inline"]);
    } else {
        invalid("triple entry needs one of random, file, inline");
    }
    if (spec.contains("hidden")) {
        const CMatrix block = matrix_from_json(spec["hidden"]);
        if (block.rows() == 0 || block.rows() != block.cols()) invalid("hidden block must be square");
        tr = direct_sum_hidden(tr, block);
    }
    return tr;
}

ExtensionHandle load_extension(const TriplePtr& tr, const Json& spec, std::uint64_t seed) {
    CMatrix b;
    if (spec.contains("B")) {
        b = matrix_from_json(spec["B"]);
        if (b.rows() == 0) b = CMatrix(tr->boundary_dim(), tr->second_boundary_dim());
    } else {
        b = random_matrix(tr->boundary_dim(), tr->second_boundary_dim(), seed);
    }
    if (b.rows() != tr->boundary_dim() || b.cols() != tr->second_boundary_dim()) invalid("B must be h x k");
    return ExtensionHandle(tr, b);
}

/// Nonreal sample at distance >= 0.1 scale from the given spectra.
cplx draw_lambda(std::mt19937_64& rng, const std::vector<std::vector<cplx>>& spectra) {
    double rho = 1.0;
    for (const auto& s : spectra) {
        for (cplx z : s) rho = std::max(rho, std::abs(z));
    }
    std::uniform_real_distribution<double> re(-1.0, 1.0), im(0.2, 1.0);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const double sign = re(rng) < 0.0 ? -1.0 : 1.0;
        const cplx z(1.5 * rho * re(rng), sign * 1.5 * rho * im(rng));
        bool ok = true;
        for (const auto& s : spectra) {
            for (cplx e : s) ok = ok && std::abs(z - e) > 0.1 * rho;
        }
        if (ok) return z;
    }
    throw Error(ErrorCode::NoConvergence, "could not draw a sample away from the spectrum");
}

Json check_entry(const std::string& name, const std::string& identity, double residual, double tol) {
    Json j;
    j["name"] = name;
    j["identity"] = identity;
    j["residual"] = residual;
    j["tolerance"] = tol;
    j["pass"] = residual < tol;
    j["status"] = residual < tol ? "pass" : "fail";
    return j;
}

/// A residual that must be large (a nonzero contour integral).
Json nonzero_entry(const std::string& name, const std::string& identity, double value, double floor) {
    Json j;
    j["name"] = name;
    j["identity"] = identity;
    j["residual"] = value;
    j["tolerance"] = floor;
    j["pass"] = value > floor;
    j["status"] = value > floor ? "expected-nonzero" : "fail";
    return j;
}

Json triple_checks(const TriplePtr& tr, const Json& spec, const RunOptions& opts, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto next_seed = [&] { return rng(); };
    Json checks = Json::array();
    const auto n = tr->state_dim();
    const auto h = tr->boundary_dim(), k = tr->second_boundary_dim();

    double green = 0.0;
    const int pairs = count(spec, "pairs", 100);
    for (int j = 0; j < pairs; ++j) {
        green = std::max(green, green_residual(*tr, random_vector(n, next_seed()), random_vector(n, next_seed())));
    }
    checks.push_back(check_entry("green", "<T u, E v> - <E u, Ttilde v> = <G1 u, Gt2 v> - <G2 u, Gt1 v>", green,
                                 tolerance(opts, 1e-12)));

    if (n != tr->hilbert_dim() + h) return checks;  // the extension is not an operator on H

    const ExtensionHandle ext = load_extension(tr, spec, next_seed());
    const auto spec_a = eigenvalues(operator_matrix(ext));
    const int draws = count(spec, "draws", 50);
    double hilbert = 0.0, krein = 0.0, m_eq = 0.0;
    for (int j = 0; j < draws; ++j) {
        const ExtensionHandle eb(tr, random_matrix(h, k, next_seed()));
        const ExtensionHandle ec(tr, random_matrix(h, k, next_seed()));
        const auto sb = eigenvalues(operator_matrix(eb)), sc = eigenvalues(operator_matrix(ec));
        const cplx l = draw_lambda(rng, {sb, sc}), l0 = draw_lambda(rng, {sb});
        hilbert = std::max(hilbert, hilbert_identity_residual(eb, l, l0, random_vector(h, next_seed())));
        krein = std::max(krein, krein_residual(eb, ec, l));
    }
    for (int j = 0; j < count(spec, "m_pairs", 20); ++j) {
        const cplx l = draw_lambda(rng, {spec_a}), l0 = draw_lambda(rng, {spec_a});
        m_eq = std::max(m_eq, max_abs(m_function(ext, l) - m_via_resolvent(ext, l, l0)));
    }
    checks.push_back(check_entry("hilbert", "S(l) - S(l0) = (l - l0) R(l) E S(l0)", hilbert, tolerance(opts, 1e-9)));
    checks.push_back(check_entry("krein", "R_B - R_C = S_C (I + (B - C) M_B)(C - B) G2 R_C", krein,
                                 tolerance(opts, 1e-9)));
    checks.push_back(check_entry("m-equality", "M from solution operator = M from resolvent", m_eq,
                                 tolerance(opts, 1e-9)));

    const auto sampling = saturate_sampling(ext, default_sampling(ext));
    const auto s = build_S(ext, sampling);
    const auto t = build_T(ext, sampling);
    double angle = 1.0;
    if (s.dim() == t.dim()) {
        const auto a = principal_angles(s.basis, t.basis);
        angle = a.empty() ? 0.0 : a.back();
    }
    checks.push_back(check_entry("s-t-angles", "closure of S equals closure of T", angle, tolerance(opts, 1e-8)));
    double inv = 0.0;
    for (int j = 0; j < 3; ++j) inv = std::max(inv, invariance_residual(s, ext, draw_lambda(rng, {spec_a})));
    checks.push_back(check_entry("invariance", "R(mu) maps closure of S into itself", inv, tolerance(opts, 1e-8)));

    double rho = 0.0;
    for (cplx z : spec_a) rho = std::max(rho, std::abs(z));
    // Default contour: a disc in the resolvent set above the spectrum.
    const ContourSpec contour = contour_from(sub(spec, "contour"), ContourSpec{cplx(0.0, 3.0 * rho + 3.0), rho + 1.0, 64});
    const auto st = build_adjoint_spaces(ext, sampling).first;
    checks.push_back(check_entry("morera", "closed integral of the bordered resolvent vanishes",
                                 morera_residual(ext, contour, st, s), tolerance(opts, 1e-8)));
    if (spec.contains("hidden")) {
        if (!spec.contains("contour")) invalid("hidden entries need a contour");
        checks.push_back(nonzero_entry("morera-full", "closed integral of the full resolvent",
                                       full_resolvent_residual(ext, contour), 0.1));
    }
    return checks;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

bool all_pass(const Json& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Json& c) { return c["pass"].get<bool>(); });
}

// Scan helpers

std::vector<double> axis(const Json& j, const char* name) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() || !j[2].is_number_integer() ||
        j[2].get<long>() < 1) {
        invalid(std::string("grid.") + name + " must be [min, max, count]");
    }
    const double a = j[0].get<double>(), b = j[1].get<double>();
    const int n = j[2].get<int>();
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = n == 1 ? a : a + (b - a) * i / (n - 1.0);
    return out;
}

std::vector<cplx> grid_points(const Json& cfg, const Json& fallback) {
    const Json& g = cfg.contains("grid") ? cfg["grid"] : fallback;
    const auto re = axis(sub(g, "re"), "re");
    const auto im = axis(sub(g, "im"), "im");
    std::vector<cplx> pts;
    for (double x : re) {
        for (double y : im) pts.emplace_back(x, y);
    }
    return pts;
}

HLModel hl_model_from(const Json& model, const RunOptions& opts) {
    if (model.contains("preset")) {
        const std::string p = model["preset"].get<std::string>();
        if (p == "step") return hl_step_model();
        if (p == "neumann") {
            HLModel m;
            m.u = PiecewisePoly::constant(5.0);
            return m;
        }
        invalid("unknown hainlust preset " + p);
    }
    if (model.contains("file")) return hl_model_from_json(read_json_file(resolve(model["file"].get<std::string>(), opts)));
    if (model.contains("spec")) return hl_model_from_json(model["spec"]);
    return hl_step_model();
}

/// phi = 1/(x + 1 + i), psi = 1/(x + i) + 0.5/(x - 2 + 2i): both in H^2_+.
FriedrichsModel hardy_model(cplx b) {
    FriedrichsModel m;
    m.phi = RationalH2::pole(cplx(-1.0, -1.0));
    m.psi = RationalH2::simple({cplx(0.0, -1.0), cplx(2.0, -2.0)}, {1.0, 0.5});
    m.B = b;
    return m;
}

FriedrichsModel fr_model_from(const Json& model, const RunOptions& opts) {
    FriedrichsModel m;
    if (model.contains("file")) {
        m = fr_model_from_json(read_json_file(resolve(model["file"].get<std::string>(), opts)));
    } else if (model.contains("spec")) {
        m = fr_model_from_json(model["spec"]);
    } else {
        m = hardy_model(0.5);
    }
    if (model.contains("B")) m.B = complex_from_json(model["B"]);
    return m;
}

std::string model_type(const Json& cfg) {
    const Json& model = sub(cfg, "model");
    if (!model.contains("type") || !model["type"].is_string()) invalid("model.type missing");
    return model["type"].get<std::string>();
}

std::string scan_hainlust(const Json& cfg, const RunOptions& opts) {
    const Json& model_cfg = sub(cfg, "model");
    const HLModel model = hl_model_from(model_cfg, opts);
    const auto pts = grid_points(cfg, Json::parse(R"({"re": [1.0, 4.0, 31], "im": [-0.01, 0.01, 3]})"));
    const int n = count(cfg, "n", 32, 32);
    const double eps = num(cfg, "eps", 1e-6);
    // One discretised scan per distinct offset |Im lambda| (eps on the axis).
    std::map<double, std::vector<double>> by_offset;
    for (cplx z : pts) {
        const double o = z.imag() == 0.0 ? eps : std::abs(z.imag());
        auto& xs = by_offset[o];
        if (std::find(xs.begin(), xs.end(), z.real()) == xs.end()) xs.push_back(z.real());
    }
    std::map<std::pair<double, double>, HLScanRow> jumps;
    for (const auto& [o, xs] : by_offset) {
        const auto rows = hl_bordered_scan(model, xs, o, n, true);
        for (std::size_t i = 0; i < xs.size(); ++i) jumps[{o, xs[i]}] = rows[i];
    }
    std::vector<std::vector<double>> out(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        const cplx z = pts[i];
        const double o = z.imag() == 0.0 ? eps : std::abs(z.imag());
        const HLScanRow& j = jumps.at({o, z.real()});
        std::vector<double> row{z.real(), z.imag()};
        CMatrix m;
        double denom = kNaN;
        try {
            const auto s = hl_shoot(model, z);
            denom = std::abs(s.dy2_at_1 + s.y2_at_1 / std::tan(model.beta));
            m = hl_m_matrix(model, z);
        } catch (const Error&) {
            m.resize(0, 0);
        }
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                row.push_back(m.size() ? m(a, b).real() : kNaN);
                row.push_back(m.size() ? m(a, b).imag() : kNaN);
            }
        }
        row.push_back(denom);
        row.push_back(j.full_jump);
        row.push_back(j.bordered_jump);
        out[i] = row;
    });
    return to_csv({"re_lambda", "im_lambda", "m11_re", "m11_im", "m12_re", "m12_im", "m21_re", "m21_im", "m22_re",
                   "m22_im", "denom_abs", "full_jump", "bordered_jump"},
                  out);
}

std::string scan_friedrichs(const Json& cfg, const RunOptions& opts) {
    const FriedrichsModel model = fr_model_from(sub(cfg, "model"), opts);
    const auto pts = grid_points(cfg, Json::parse(R"({"re": [-5.0, 5.0, 21], "im": [-1.0, 1.0, 2]})"));
    std::vector<std::vector<double>> out(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        const cplx z = pts[i];
        double re_m = kNaN, im_m = kNaN, abs_d = kNaN, br = kNaN;
        if (z.imag() != 0.0) {
            try {
                abs_d = std::abs(fr_D(model, z));
                const cplx b = fr_bracket(model, z);
                br = std::abs(b);
                const cplx m = fr_m(model, z);
                re_m = m.real();
                im_m = m.imag();
            } catch (const Error&) {
            }
        }
        out[i] = {z.real(), z.imag(), re_m, im_m, abs_d, br};
    });
    return to_csv({"re_lambda", "im_lambda", "re_M", "im_M", "abs_D", "bracket_abs"}, out);
}

std::string scan_firstorder(const Json& cfg, const RunOptions&) {
    FOModel model;
    if (cfg["model"].contains("B")) model.B = complex_from_json(cfg["model"]["B"]);
    const auto pts = grid_points(cfg, Json::parse(R"({"re": [-2.0, 2.0, 5], "im": [-1.0, -0.125, 4]})"));
    std::vector<std::vector<double>> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const cplx z = pts[i];
        // The resolvent is computed on the lower half plane only.
        const double norm = z.imag() < 0.0 ? fo_operator_norm_scan(model, {z}).front() : kNaN;
        const cplx m = fo_m(model, z);
        out[i] = {z.real(), z.imag(), norm, m.real(), m.imag()};
    }
    return to_csv({"re_lambda", "im_lambda", "resolvent_norm", "m_value_re", "m_value_im"}, out);
}

// Examples

Json named(const std::string& name, double value, double tol, bool below = true) {
    Json j;
    j["name"] = name;
    j["value"] = value;
    j["tolerance"] = tol;
    j["pass"] = below ? value < tol : value >= tol;
    return j;
}

Json example1(const Json& cfg, const RunOptions& opts) {
    const FriedrichsModel model = fr_model_from(cfg, opts);
    require(model.phi.is_hardy_plus() && model.psi.is_hardy_plus(), ErrorCode::ConfigInvalid,
            "example ex1 needs phi, psi in H2+");
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> re(-5.0, 5.0), im(0.1, 3.0), coin(0.0, 1.0);
    const int samples = count(cfg, "samples", 100);
    const double tol = tolerance(opts, 1e-9);
    double worst = 0.0;
    int filled_upper = 0, filled_lower = 0;
    for (int j = 0; j < samples; ++j) {
        const cplx z(re(rng), (coin(rng) < 0.5 ? -1.0 : 1.0) * im(rng));
        const cplx expected_bracket = (z.imag() > 0 ? 1.0 : -1.0) * kPi * kI - model.B;
        if (std::abs(expected_bracket) < 1e-12) {
            // M undefined: every point of this half plane is an eigenvalue.
            (z.imag() > 0 ? filled_upper : filled_lower)++;
            require(std::abs(fr_bracket(model, z)) < 1e-9, ErrorCode::EvaluationFailed,
                    "bracket should vanish in the eigenvalue-filled half plane");
            continue;
        }
        worst = std::max(worst, std::abs(fr_m(model, z) - 1.0 / expected_bracket));
    }
    Json rep;
    rep["example"] = "ex1";
    rep["model"] = fr_model_to_json(model);
    rep["samples"] = samples;
    std::string regime = "regular";
    if (std::abs(model.B - kPi * kI) < 1e-12) regime = "upper half plane eigenvalue-filled";
    if (std::abs(model.B + kPi * kI) < 1e-12) regime = "lower half plane eigenvalue-filled";
    rep["regime"] = regime;
    rep["filled_samples"] = filled_upper + filled_lower;
    rep["checks"] = Json::array({named("m_formula_residual", worst, tol)});
    return rep;
}

Json gamma_json(const GammaValues& g) {
    Json j;
    j["gamma1"] = complex_to_json(g.gamma1);
    j["gamma2"] = complex_to_json(g.gamma2);
    return j;
}

Json example2(const Json& cfg, bool lower, const RunOptions& opts) {
    const RationalH2 psi = cfg.contains("psi") ? rational_from_json(cfg["psi"]) : RationalH2::pole(cplx(0.0, -1.0));
    const cplx l0 = cfg.contains("lambda0") ? complex_from_json(cfg["lambda0"]) : (lower ? cplx(0.0, -2.0) : cplx(0.0, 2.0));
    if ((l0.imag() < 0.0) != lower) invalid(lower ? "ex2-lower needs Im lambda0 < 0" : "ex2-upper needs Im lambda0 > 0");
    const RationalH2 probe = cfg.contains("probe") ? rational_from_json(cfg["probe"]) : fr_default_probe();
    const auto r = fr_example2(psi, l0, probe);
    const double tol = tolerance(opts, 1e-9);
    Json rep;
    rep["example"] = lower ? "ex2-lower" : "ex2-upper";
    rep["lambda0"] = complex_to_json(l0);
    rep["c"] = complex_to_json(r.c);
    rep["model"] = fr_model_to_json(r.model);
    rep["u"] = rational_to_json(r.u);
    rep["u_phi"] = complex_to_json(r.u_phi);
    rep["gamma_u"] = gamma_json(r.gamma_u);
    Json checks = Json::array();
    checks.push_back(named("D_lambda0_abs", std::abs(r.D_lambda0), 1e-12));
    checks.push_back(named("u_phi_residual", std::abs(r.u_phi + 1.0), tol));
    checks.push_back(named("gamma2_abs", std::abs(r.gamma_u.gamma2), tol));
    if (lower) checks.push_back(named("gamma1_abs", std::abs(r.gamma_u.gamma1), tol));
    checks.push_back(named("eigen_residual", r.eigen_residual, 1e-7));
    checks.push_back(named("m_pole_residual", r.m0_cauchy_residual, 1e-10));
    if (!lower) {
        rep["obstruction"] = complex_to_json(r.obstruction);
        checks.push_back(named("probe_residual", r.probe_residual, 1e-2, false));
    }
    rep["checks"] = checks;
    return rep;
}

Json example3(const Json& cfg, const RunOptions& opts) {
    const RationalH2 g = cfg.contains("g") ? rational_from_json(cfg["g"]) : RationalH2::pole(cplx(-1.0, -1.0), 2);
    const double l0 = num(cfg, "lambda0", 0.0);
    const double b = num(cfg, "B", 0.0);
    const double eps = num(cfg, "eps", 1e-3);
    const auto r = fr_example3(l0, g, b, eps);
    const double tol = tolerance(opts, 1e-9);
    Json rep;
    rep["example"] = "ex3";
    rep["lambda0"] = l0;
    rep["s"] = r.s;
    rep["model"] = fr_model_to_json(r.model);
    rep["u_norm"] = r.u_norm;
    rep["m_plus"] = complex_to_json(r.m_plus);
    rep["m_minus"] = complex_to_json(r.m_minus);
    rep["m_jump"] = complex_to_json(r.jump);
    rep["expected_jump"] = complex_to_json(r.expected_jump);
    Json checks = Json::array();
    checks.push_back(named("eigen_residual", r.eigen_residual, 1e-7));
    checks.push_back(named("norm_integral_residual", std::abs(r.norm_integral + 1.0), tol));
    checks.push_back(named("m_jump_residual", std::abs(r.jump - r.expected_jump), tol));
    rep["checks"] = checks;
    return rep;
}

}  // namespace

RunOutput run_check(const Json& config, const RunOptions& opts) {
    Json entries = config.contains("triples") ? config["triples"]
                                              : Json::parse(R"([{"random": {"m": 8, "h": 2}}, {"random": {"m": 16, "h": 3}}])");
    if (!entries.is_array() || entries.empty()) invalid("triples must be a nonempty list");
    Json report;
    report["command"] = "check";
    report["seed"] = opts.seed;
    Json triples = Json::array();
    bool ok = true;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::uint64_t seed = opts.seed * 1000003ULL + 7919ULL * i;
        const TriplePtr tr = load_triple(entries[i], opts, seed);
        Json t;
        t["id"] = tr->id;
        t["dims"] = Json{{"n", tr->state_dim()}, {"m", tr->hilbert_dim()}, {"h", tr->boundary_dim()},
                         {"k", tr->second_boundary_dim()}};
        t["checks"] = triple_checks(tr, entries[i], opts, seed + 1);
        ok = ok && all_pass(t["checks"]);
        triples.push_back(t);
    }
    report["triples"] = triples;
    report["all_pass"] = ok;
    return {ok ? 0 : 1, dump(report)};
}

RunOutput run_scan(const Json& config, const RunOptions& opts) {
    const std::string type = model_type(config);
    if (type == "hainlust") return {0, scan_hainlust(config, opts)};
    if (type == "friedrichs") return {0, scan_friedrichs(config, opts)};
    if (type == "firstorder") return {0, scan_firstorder(config, opts)};
    throw Error(ErrorCode::ModelUnknown, "unknown model type " + type);
}

RunOutput run_eig(const Json& config, const RunOptions& opts) {
    const std::string type = model_type(config);
    Json rep;
    rep["command"] = "eig";
    rep["model_type"] = type;
    if (type == "hainlust") {
        const HLModel model = hl_model_from(config["model"], opts);
        const Json& r = sub(config, "region");
        Rectangle region{0.5, 50.0, -1.0, 1.0};
        if (!r.empty()) {
            if (!r.is_array() || r.size() != 4) invalid("region must be [re_min, re_max, im_min, im_max]");
            region = {r[0].get<double>(), r[1].get<double>(), r[2].get<double>(), r[3].get<double>()};
        }
        const auto z = hl_eigenvalues(model, region);
        const int n = count(config, "fd_n", 128, 32);
        const auto fd = eigenvalues(hl_discretize(model, n).matrix);
        Json list = Json::array();
        for (cplx e : z) {
            double gap = INFINITY;
            for (cplx f : fd) gap = std::min(gap, std::abs(f - e));
            list.push_back(Json{{"lambda", complex_to_json(e)},
                                {"denominator_abs", std::abs(hl_denominator(model, e))},
                                {"fd_distance", gap}});
        }
        rep["region"] = {region.re_min, region.re_max, region.im_min, region.im_max};
        rep["winding_number"] = static_cast<int>(z.size());
        rep["fd_n"] = n;
        rep["eigenvalues"] = list;
        return {0, dump(rep)};
    }
    if (type == "triple") {
        const TriplePtr tr = load_triple(config["model"], opts, opts.seed);
        const ExtensionHandle ext = load_extension(tr, config["model"], opts.seed + 1);
        Json list = Json::array();
        for (cplx e : eigenvalues(operator_matrix(ext))) list.push_back(complex_to_json(e));
        rep["triple_id"] = tr->id;
        rep["eigenvalues"] = list;
        return {0, dump(rep)};
    }
    throw Error(ErrorCode::ModelUnknown, "unknown model type " + type);
}

RunOutput run_contour(const Json& config, const RunOptions& opts) {
    const Json& spec = config.contains("triple") ? config["triple"] : Json::parse(R"({"random": {"m": 8, "h": 2}})");
    const TriplePtr tr = load_triple(spec, opts, opts.seed);
    const ExtensionHandle ext = load_extension(tr, spec, opts.seed + 1);
    double rho = 0.0;
    for (cplx z : eigenvalues(operator_matrix(ext))) rho = std::max(rho, std::abs(z));
    const ContourSpec contour = contour_from(sub(config, "contour"), ContourSpec{0.0, 1.5 * rho + 1.0, 128});
    const DetectReport r = detect_report(ext, contour);
    Json rep;
    rep["triple_id"] = r.triple_id;
    rep["contour"] = contour_to_json(r.contour);
    rep["residual_bordered"] = r.residual_bordered;
    rep["residual_full"] = r.residual_full;
    rep["dims"] = Json{{"S", r.dim_s}, {"T", r.dim_t}, {"Sadj", r.dim_s_adjoint}, {"Tadj", r.dim_t_adjoint}};
    return {0, dump(rep)};
}

RunOutput run_example(const Json& config, const RunOptions& opts) {
    if (!config.contains("example") || !config["example"].is_string()) invalid("example name missing");
    const std::string name = config["example"].get<std::string>();
    Json rep;
    if (name == "ex1") {
        rep = example1(config, opts);
    } else if (name == "ex2-lower" || name == "ex2-upper") {
        rep = example2(config, name == "ex2-lower", opts);
    } else if (name == "ex3") {
        rep = example3(config, opts);
    } else {
        invalid("unknown example " + name);
    }
    const bool ok = all_pass(rep["checks"]);
    rep["all_pass"] = ok;
    return {ok ? 0 : 1, dump(rep)};
}

RunOutput run_command(const std::string& command, const Json& config, const RunOptions& opts) {
    if (!config.is_object()) invalid("config must be a JSON object");
    try {
        if (command == "check") return run_check(config, opts);
        if (command == "scan") return run_scan(config, opts);
        if (command == "eig") return run_eig(config, opts);
        if (command == "contour") return run_contour(config, opts);
        if (command == "example") return run_example(config, opts);
    } catch (const nlohmann::json::exception& e) {
        invalid(std::string("malformed config: ") + e.what());
    }
    invalid("unknown command " + command);
}

int exit_code_for(const Error& e) {
    return e.code() == ErrorCode::ConfigInvalid || e.code() == ErrorCode::ModelUnknown ? 2 : 1;
}

}  // namespace weyl
