#include "weyl_scope/hainlust.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>

#include <boost/numeric/odeint.hpp>

#include "weyl_scope/errors.hpp"

namespace weyl {

namespace {

constexpr double kSingularGap = 1e-8;
constexpr double kContourGap = 1e-3;

cplx horner(const std::vector<cplx>& c, double x) {
    cplx v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

bool is_real_poly(const std::vector<cplx>& c) {
    return std::all_of(c.begin(), c.end(), [](cplx a) { return a.imag() == 0.0; });
}

/// Real roots of the derivative inside (a, b).
std::vector<double> critical_points(const std::vector<cplx>& c, double a, double b) {
    std::vector<double> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k].real());
    while (!d.empty() && d.back() == 0.0) d.pop_back();
    std::vector<double> out;
    if (d.size() < 2) return out;
    const int deg = static_cast<int>(d.size()) - 1;
    CMatrix comp = CMatrix::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -d[i] / d[deg];
    for (cplx r : eigenvalues(comp)) {
        if (std::abs(r.imag()) < 1e-10 * (1.0 + std::abs(r)) && r.real() > a && r.real() < b) out.push_back(r.real());
    }
    return out;
}

double point_segment_distance(cplx p, cplx a, cplx b) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

bool segments_cross(cplx a, cplx b, cplx c, cplx d) {
    auto cross = [](cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); };
    const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

double segment_distance(cplx a, cplx b, cplx c, cplx d) {
    if (segments_cross(a, b, c, d)) return 0.0;
    return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                     point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

std::vector<cplx> arc_samples(const EssRange::Arc& arc, int count = 513) {
    std::vector<cplx> pts(count);
    for (int j = 0; j < count; ++j) pts[j] = horner(arc.coeffs, arc.a + (arc.b - arc.a) * j / (count - 1.0));
    return pts;
}

void add_piece(EssRange& r, const std::vector<cplx>& c, double a, double b) {
    if (!(b > a)) return;
    if (is_real_poly(c)) {
        double lo = std::min(horner(c, a).real(), horner(c, b).real());
        double hi = std::max(horner(c, a).real(), horner(c, b).real());
        for (double x : critical_points(c, a, b)) {
            lo = std::min(lo, horner(c, x).real());
            hi = std::max(hi, horner(c, x).real());
        }
        r.intervals.emplace_back(lo, hi);
    } else {
        r.arcs.push_back({c, a, b});
    }
}

void merge_intervals(EssRange& r) {
    auto& iv = r.intervals;
    std::sort(iv.begin(), iv.end());
    std::vector<std::pair<double, double>> out;
    for (const auto& p : iv) {
        if (!out.empty() && p.first <= out.back().second) {
            out.back().second = std::max(out.back().second, p.second);
        } else {
            out.push_back(p);
        }
    }
    iv = out;
}

std::vector<double> merged_breaks(std::initializer_list<const PiecewisePoly*> fs) {
    std::vector<double> b;
    for (const auto* f : fs) b.insert(b.end(), f->breaks.begin(), f->breaks.end());
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

/// Closest point of the rectangle boundary to the range.
double boundary_distance(const EssRange& r, const Rectangle& rect) {
    const std::array<cplx, 4> c{cplx(rect.re_min, rect.im_min), cplx(rect.re_max, rect.im_min),
                                cplx(rect.re_max, rect.im_max), cplx(rect.re_min, rect.im_max)};
    double best = INFINITY;
    for (int s = 0; s < 4; ++s) {
        const cplx a = c[s], b = c[(s + 1) % 4];
        for (const auto& iv : r.intervals) best = std::min(best, segment_distance(a, b, iv.first, iv.second));
        for (const auto& arc : r.arcs) {
            for (cplx p : arc_samples(arc)) best = std::min(best, point_segment_distance(p, a, b));
        }
    }
    return best;
}

bool meets_rectangle(const EssRange& r, const Rectangle& rect, double pad) {
    auto inside = [&](cplx p) {
        return p.real() >= rect.re_min - pad && p.real() <= rect.re_max + pad && p.imag() >= rect.im_min - pad &&
               p.imag() <= rect.im_max + pad;
    };
    for (const auto& iv : r.intervals) {
        if (rect.im_min - pad <= 0.0 && rect.im_max + pad >= 0.0 && iv.second >= rect.re_min - pad &&
            iv.first <= rect.re_max + pad) {
            return true;
        }
    }
    for (const auto& arc : r.arcs) {
        for (cplx p : arc_samples(arc)) {
            if (inside(p)) return true;
        }
    }
    return false;
}

double spectral_norm(const CMatrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::BDCSVD<CMatrix> svd(a);
    return svd.singularValues()(0);
}

using State = std::array<cplx, 4>;

}  // namespace

// PiecewisePoly

PiecewisePoly PiecewisePoly::constant(cplx c) { return PiecewisePoly{{0.0, 1.0}, {{c}}}; }

PiecewisePoly PiecewisePoly::steps(const std::vector<double>& breaks, const std::vector<cplx>& values) {
    PiecewisePoly p;
    p.breaks = breaks;
    p.coeffs.clear();
    for (cplx v : values) p.coeffs.push_back({v});
    p.validate();
    return p;
}

void PiecewisePoly::validate() const {
    require(breaks.size() >= 2 && coeffs.size() + 1 == breaks.size(), ErrorCode::InvalidArgument,
            "piecewise polynomial needs one coefficient list per interval");
    require(breaks.front() == 0.0 && breaks.back() == 1.0, ErrorCode::InvalidArgument,
            "breakpoints must start at 0 and end at 1");
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        require(breaks[i] < breaks[i + 1], ErrorCode::InvalidArgument, "breakpoints must increase");
        require(!coeffs[i].empty(), ErrorCode::InvalidArgument, "empty coefficient list");
        for (cplx c : coeffs[i]) {
            require(std::isfinite(c.real()) && std::isfinite(c.imag()), ErrorCode::InvalidArgument,
                    "coefficients must be finite");
        }
    }
}

std::size_t PiecewisePoly::piece_of(double x) const {
    const auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
    const std::ptrdiff_t i = (it - breaks.begin()) - 1;
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(coeffs.size()) - 1));
}

cplx PiecewisePoly::operator()(double x) const { return eval_piece(piece_of(x), x); }

cplx PiecewisePoly::eval_piece(std::size_t i, double x) const { return horner(coeffs[i], x); }

bool PiecewisePoly::piece_is_zero(std::size_t i) const {
    return std::all_of(coeffs[i].begin(), coeffs[i].end(), [](cplx c) { return c == 0.0; });
}

// HLModel

void HLModel::validate() const {
    q.validate();
    u.validate();
    w.validate();
    require(std::abs(std::sin(alpha)) > 1e-12 && std::abs(std::sin(beta)) > 1e-12, ErrorCode::InvalidArgument,
            "sin(alpha) and sin(beta) must not vanish");
}

std::vector<double> HLModel::breakpoints() const { return merged_breaks({&q, &u, &w}); }

std::vector<std::pair<double, double>> HLModel::support_w() const {
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i + 1 < w.breaks.size(); ++i) {
        if (w.piece_is_zero(i)) continue;
        if (!out.empty() && out.back().second == w.breaks[i]) {
            out.back().second = w.breaks[i + 1];
        } else {
            out.emplace_back(w.breaks[i], w.breaks[i + 1]);
        }
    }
    return out;
}

bool HLModel::in_w(double x) const { return !w.piece_is_zero(w.piece_of(x)); }

double EssRange::distance(cplx z) const {
    double best = INFINITY;
    for (const auto& iv : intervals) best = std::min(best, point_segment_distance(z, iv.first, iv.second));
    for (const auto& arc : arcs) {
        // coarse sampling, then golden-section refinement around the best sample
        const int count = 513;
        const auto pts = arc_samples(arc, count);
        int k = 0;
        for (int j = 1; j < count; ++j) {
            if (std::abs(pts[j] - z) < std::abs(pts[k] - z)) k = j;
        }
        const double step = (arc.b - arc.a) / (count - 1.0);
        double lo = arc.a + step * std::max(k - 1, 0), hi = arc.a + step * std::min(k + 1, count - 1);
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        auto f = [&](double x) { return std::abs(horner(arc.coeffs, x) - z); };
        for (int it = 0; it < 60; ++it) {
            const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
            if (f(m1) < f(m2)) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        best = std::min({best, f(0.5 * (lo + hi)), std::abs(pts[k] - z)});
    }
    return best;
}

HLEssRanges hl_essran(const HLModel& model) {
    model.validate();
    HLEssRanges out;
    const auto& u = model.u;
    for (std::size_t i = 0; i + 1 < u.breaks.size(); ++i) add_piece(out.full, u.coeffs[i], u.breaks[i], u.breaks[i + 1]);
    const auto b = merged_breaks({&model.u, &model.w});
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        const double mid = 0.5 * (b[i] + b[i + 1]);
        if (model.w.piece_is_zero(model.w.piece_of(mid))) continue;
        add_piece(out.on_w, u.coeffs[u.piece_of(mid)], b[i], b[i + 1]);
    }
    merge_intervals(out.full);
    merge_intervals(out.on_w);
    return out;
}

// Shooting

ShootingResult hl_shoot(const HLModel& model, cplx lambda, double tol) {
    namespace odeint = boost::numeric::odeint;
    require(tol > 0.0, ErrorCode::InvalidArgument, "tolerance must be positive");
    const HLEssRanges ess = hl_essran(model);
    if (ess.on_w.distance(lambda) <= kSingularGap) {
        throw Error(ErrorCode::CoefficientSingular, "lambda lies on the essential range of u on W");
    }
    const double ca = std::cos(model.alpha), sa = std::sin(model.alpha);
    State s{ca, sa, -sa, ca};
    // Breakpoints of u only matter where w is nonzero.
    std::vector<double> b = merged_breaks({&model.q, &model.w});
    for (double x : model.u.breaks) {
        if (x > 0.0 && x < 1.0 && (model.in_w(x) || model.in_w(std::nextafter(x, 0.0)))) b.push_back(x);
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    try {
        for (std::size_t i = 0; i + 1 < b.size(); ++i) {
            const double mid = 0.5 * (b[i] + b[i + 1]);
            const std::size_t iq = model.q.piece_of(mid), iu = model.u.piece_of(mid), iw = model.w.piece_of(mid);
            const bool coupled = !model.w.piece_is_zero(iw);
            auto rhs = [&](const State& y, State& dy, double x) {
                cplx v = model.q.eval_piece(iq, x) - lambda;
                if (coupled) {
                    const cplx wx = model.w.eval_piece(iw, x);
                    v += wx * wx / (lambda - model.u.eval_piece(iu, x));
                }
                dy[0] = y[1];
                dy[1] = v * y[0];
                dy[2] = y[3];
                dy[3] = v * y[2];
            };
            auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(0.1 * tol, 0.1 * tol);
            odeint::integrate_adaptive(stepper, rhs, s, b[i], b[i + 1], 1e-3 * (b[i + 1] - b[i]));
        }
    } catch (const std::exception& e) {
        throw Error(ErrorCode::ToleranceNotMet, std::string("ODE integration failed: ") + e.what());
    }
    ShootingResult r;
    r.lambda = lambda;
    r.ode_tol = tol;
    r.y1_at_1 = s[0];
    r.dy1_at_1 = s[1];
    r.y2_at_1 = s[2];
    r.dy2_at_1 = s[3];
    r.wronskian_error = std::abs(s[0] * s[3] - s[1] * s[2] - 1.0);
    const double scale = std::max({1.0, std::abs(s[0] * s[3]), std::abs(s[1] * s[2])});
    if (r.wronskian_error > 10.0 * tol * scale) {
        throw Error(ErrorCode::ToleranceNotMet, "Wronskian drift exceeds 10 tol");
    }
    return r;
}

cplx hl_denominator(const HLModel& model, cplx lambda, double tol) {
    const auto r = hl_shoot(model, lambda, tol);
    return r.dy2_at_1 + r.y2_at_1 / std::tan(model.beta);
}

CMatrix hl_m_matrix(const HLModel& model, cplx lambda, double tol) {
    const auto r = hl_shoot(model, lambda, tol);
    const double cb = 1.0 / std::tan(model.beta);
    const double sa = std::sin(model.alpha), ca = std::cos(model.alpha);
    const cplx d = r.dy2_at_1 + cb * r.y2_at_1;
    if (std::abs(d) < 1e-12) throw Error(ErrorCode::AtEigenvalue, "denominator vanishes: lambda is an eigenvalue");
    CMatrix m(2, 2);
    m(0, 0) = -r.y2_at_1 / d;
    m(0, 1) = sa / d;
    m(1, 0) = m(0, 1);
    m(1, 1) = sa * ca + sa * sa * (r.dy1_at_1 + cb * r.y1_at_1) / d;
    return m;
}

// Eigenvalues

namespace {

struct Winding {
    int count = 0;
    double min_abs = INFINITY;
};

std::vector<cplx> rectangle_nodes(const Rectangle& r, int per_side) {
    const std::array<cplx, 4> c{cplx(r.re_min, r.im_min), cplx(r.re_max, r.im_min), cplx(r.re_max, r.im_max),
                                cplx(r.re_min, r.im_max)};
    std::vector<cplx> pts;
    for (int s = 0; s < 4; ++s) {
        for (int j = 0; j < per_side; ++j) pts.push_back(c[s] + (c[(s + 1) % 4] - c[s]) * (double(j) / per_side));
    }
    return pts;
}

/// Winding of F along the boundary; segments are bisected until the phase
/// step is below pi/4.
std::optional<Winding> winding(const std::function<cplx(cplx)>& f, const Rectangle& r) {
    const auto pts = rectangle_nodes(r, 32);
    std::vector<cplx> vals(pts.size());
    parallel_for(pts.size(), [&](std::size_t j) { vals[j] = f(pts[j]); });
    Winding w;
    double total = 0.0;
    const double scale = std::max(r.re_max - r.re_min, r.im_max - r.im_min);
    std::function<bool(cplx, cplx, cplx, cplx, int)> seg = [&](cplx a, cplx b, cplx fa, cplx fb, int depth) {
        w.min_abs = std::min({w.min_abs, std::abs(fa), std::abs(fb)});
        if (fa == 0.0 || fb == 0.0) return false;
        const double dphi = std::arg(fb / fa);
        if (std::abs(dphi) <= kPi / 4) {
            total += dphi;
            return true;
        }
        if (depth > 40 || std::abs(b - a) < 1e-12 * scale) return false;
        const cplx m = 0.5 * (a + b);
        const cplx fm = f(m);
        return seg(a, m, fa, fm, depth + 1) && seg(m, b, fm, fb, depth + 1);
    };
    for (std::size_t j = 0; j < pts.size(); ++j) {
        const std::size_t k = (j + 1) % pts.size();
        if (!seg(pts[j], pts[k], vals[j], vals[k], 0)) return std::nullopt;
    }
    w.count = static_cast<int>(std::lround(total / (2.0 * kPi)));
    return w;
}

std::optional<cplx> newton(const std::function<cplx(cplx)>& f, cplx z, const Rectangle& cell) {
    for (int it = 0; it < 60; ++it) {
        const cplx fz = f(z);
        if (std::abs(fz) < 1e-14) return z;
        const double h = 1e-5 * std::max(1.0, std::abs(z));
        const cplx df = (f(z + h) - f(z - h)) / (2.0 * h);
        if (df == 0.0) return std::nullopt;
        const cplx step = fz / df;
        z -= step;
        if (!(z.real() >= cell.re_min && z.real() <= cell.re_max && z.imag() >= cell.im_min && z.imag() <= cell.im_max)) {
            return std::nullopt;
        }
        if (std::abs(step) < 1e-10) return z;
    }
    return std::nullopt;
}

}  // namespace

int hl_winding_number(const HLModel& model, const Rectangle& region) {
    require(region.re_min < region.re_max && region.im_min < region.im_max, ErrorCode::InvalidArgument,
            "empty rectangle");
    const HLEssRanges ess = hl_essran(model);
    if (boundary_distance(ess.full, region) < kContourGap || meets_rectangle(ess.on_w, region, kContourGap)) {
        throw Error(ErrorCode::ContourHitsEssran, "region boundary too close to the essential range");
    }
    auto f = [&](cplx z) { return hl_denominator(model, z); };
    const auto w = winding(f, region);
    if (!w) throw Error(ErrorCode::ContourHitsSpectrum, "denominator vanishes on the region boundary");
    return w->count;
}

std::vector<cplx> hl_eigenvalues(const HLModel& model, const Rectangle& region) {
    const int total = hl_winding_number(model, region);
    std::vector<cplx> found;
    if (total == 0) return found;
    auto f = [&](cplx z) { return hl_denominator(model, z); };
    auto f_fine = [&](cplx z) { return hl_denominator(model, z, 1e-12); };
    std::function<void(const Rectangle&, int, int)> solve = [&](const Rectangle& cell, int count, int depth) {
        if (count == 0) return;
        if (depth > 40) throw Error(ErrorCode::NoConvergence, "eigenvalue subdivision did not resolve all zeros");
        if (count == 1) {
            const cplx centre(0.5 * (cell.re_min + cell.re_max), 0.5 * (cell.im_min + cell.im_max));
            if (auto z = newton(f_fine, centre, cell)) {
                found.push_back(*z);
                return;
            }
        }
        // Split the longer side slightly off centre; shift again if the cut hits a zero.
        const bool vertical = (cell.re_max - cell.re_min) >= (cell.im_max - cell.im_min);
        for (double frac : {0.4937, 0.5318, 0.4611, 0.5742}) {
            Rectangle a = cell, b = cell;
            if (vertical) {
                a.re_max = b.re_min = cell.re_min + frac * (cell.re_max - cell.re_min);
            } else {
                a.im_max = b.im_min = cell.im_min + frac * (cell.im_max - cell.im_min);
            }
            const auto wa = winding(f, a);
            if (!wa) continue;
            solve(a, wa->count, depth + 1);
            solve(b, count - wa->count, depth + 1);
            return;
        }
        throw Error(ErrorCode::NoConvergence, "could not place a cut avoiding zeros");
    };
    solve(region, total, 0);
    std::sort(found.begin(), found.end(),
              [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    if (static_cast<int>(found.size()) != total) {
        throw Error(ErrorCode::NoConvergence, "zero count differs from the winding number");
    }
    return found;
}

// Discretisation

HLDiscretization hl_discretize(const HLModel& model, int n) {
    model.validate();
    require(n >= 32, ErrorCode::InvalidArgument, "need at least 32 cells");
    HLDiscretization d;
    d.h = 1.0 / n;
    const double h = d.h, h2 = h * h;
    const double ca = 1.0 / std::tan(model.alpha), cb = 1.0 / std::tan(model.beta);
    require(std::abs(1.0 - 0.5 * ca * h) > 1e-12 && std::abs(1.0 + 0.5 * cb * h) > 1e-12, ErrorCode::InvalidArgument,
            "Robin ghost coefficient degenerates at this cell size");
    // ghost values y_{-1} = r0 y_0 and y_n = r1 y_{n-1}
    const double r0 = (1.0 + 0.5 * ca * h) / (1.0 - 0.5 * ca * h);
    const double r1 = (1.0 - 0.5 * cb * h) / (1.0 + 0.5 * cb * h);
    d.nodes.resize(n);
    d.in_w.resize(n);
    d.matrix = CMatrix::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        const double x = (j + 0.5) * h;
        d.nodes(j) = x;
        d.in_w[j] = model.in_w(x);
        double diag = 2.0;
        if (j == 0) diag -= r0;
        if (j == n - 1) diag -= r1;
        d.matrix(j, j) = diag / h2 + model.q(x);
        if (j > 0) d.matrix(j, j - 1) = -1.0 / h2;
        if (j + 1 < n) d.matrix(j, j + 1) = -1.0 / h2;
        const cplx wx = model.w(x);
        d.matrix(j, n + j) = wx;
        d.matrix(n + j, j) = wx;
        d.matrix(n + j, n + j) = model.u(x);
    }
    return d;
}

namespace {

CMatrix resolvent(const CMatrix& a, cplx lambda) {
    const CMatrix shifted = a - lambda * CMatrix::Identity(a.rows(), a.cols());
    try {
        return solve_linear(shifted, CMatrix(CMatrix::Identity(a.rows(), a.cols())));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SingularMatrix) {
            throw Error(ErrorCode::LambdaInSpectrum, "lambda is an eigenvalue of the discretisation");
        }
        throw;
    }
}

std::pair<std::vector<int>, std::vector<int>> split_indices(int n, const std::vector<bool>& indicator) {
    std::vector<int> in, out;
    for (int j = 0; j < n; ++j) in.push_back(j);
    for (int j = 0; j < n; ++j) (indicator[j] ? in : out).push_back(n + j);
    return {in, out};
}

}  // namespace

std::vector<HLScanRow> hl_bordered_scan(const HLModel& model, const std::vector<double>& xs, double eps, int n,
                                        bool allow_essran_w) {
    require(eps > 0.0, ErrorCode::InvalidArgument, "scan offset must be positive");
    const HLEssRanges ess = hl_essran(model);
    for (double x : xs) {
        if (!allow_essran_w && ess.on_w.distance(x) < kContourGap) {
            throw Error(ErrorCode::GridHitsEssranW, "scan point too close to essran(u|W)");
        }
    }
    const HLDiscretization disc = hl_discretize(model, n);
    const auto [idx, rest] = split_indices(n, disc.in_w);
    (void)rest;
    std::vector<HLScanRow> rows(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) {
        HLScanRow row;
        const double x = xs[i];
        row.lambda = cplx(x, eps);
        row.in_essran = ess.full.distance(x) < kContourGap;
        row.in_essran_w = ess.on_w.distance(x) < kContourGap;
        const CMatrix rp = resolvent(disc.matrix, cplx(x, eps));
        const CMatrix rm = resolvent(disc.matrix, cplx(x, -eps));
        const CMatrix diff = rp - rm;
        row.full_jump = spectral_norm(diff);
        row.bordered_jump = spectral_norm(diff(idx, idx));
        try {
            const auto s = hl_shoot(model, row.lambda);
            row.denom_abs = std::abs(s.dy2_at_1 + s.y2_at_1 / std::tan(model.beta));
            row.m = hl_m_matrix(model, row.lambda);
        } catch (const Error&) {
            row.m.resize(0, 0);
        }
        rows[i] = row;
    });
    return rows;
}

double hl_reducing_check(const HLModel& model, cplx lambda, int n, const std::vector<bool>& indicator) {
    require(static_cast<int>(indicator.size()) == n, ErrorCode::DimensionMismatch, "indicator length must be n");
    const HLDiscretization disc = hl_discretize(model, n);
    const CMatrix r = resolvent(disc.matrix, lambda);
    const auto [in, out] = split_indices(n, indicator);
    if (out.empty()) return 0.0;
    return spectral_norm(r(out, in)) + spectral_norm(r(in, out));
}

double hl_reducing_check(const HLModel& model, cplx lambda, int n) {
    const HLDiscretization disc = hl_discretize(model, n);
    return hl_reducing_check(model, lambda, n, disc.in_w);
}

HLModel hl_step_model() {
    HLModel m;
    m.q = PiecewisePoly::constant(0.0);
    m.u = PiecewisePoly::steps({0.0, 0.5, 1.0}, {2.0, 3.0});
    m.w = PiecewisePoly::steps({0.0, 0.5, 1.0}, {1.0, 0.0});
    return m;
}

}  // namespace weyl
