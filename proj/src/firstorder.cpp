#include "weyl_scope/firstorder.hpp"

#include <algorithm>
#include <cmath>

#include "weyl_scope/errors.hpp"

namespace weyl {

namespace {

void require_lower(cplx lambda) {
    if (!(lambda.imag() < 0.0)) {
        throw Error(ErrorCode::UpperHalfPlane, "resolvent of i d/dx exists only for Im lambda < 0");
    }
}

/// Forward recursion for -i int_0^x exp(-i lambda (x - t)) g(t) dt.
CVector volterra(cplx lambda, double h, const CVector& g) {
    const cplx a = std::exp(-kI * lambda * h);
    CVector f(g.size());
    cplx acc = 0.0;
    if (g.size() > 0) f(0) = 0.0;
    for (Eigen::Index j = 0; j + 1 < g.size(); ++j) {
        acc = a * acc + 0.5 * h * (a * g(j) + g(j + 1));
        f(j + 1) = -kI * acc;
    }
    return f;
}

/// Backward recursion for i int_t^L exp(i conj(lambda) (x - t)) f(x) dx.
CVector volterra_adjoint(cplx lambda, double h, const CVector& f) {
    const cplx b = std::exp(kI * std::conj(lambda) * h);
    const Eigen::Index n = f.size();
    CVector g(n);
    cplx acc = 0.0;
    if (n > 0) g(n - 1) = 0.0;
    for (Eigen::Index j = n - 2; j >= 0; --j) {
        acc = b * acc + 0.5 * h * (f(j) + b * f(j + 1));
        g(j) = kI * acc;
    }
    return g;
}

double power_norm(cplx lambda, const HalfLineGrid& grid, int iterations) {
    const double h = grid.spacing();
    // Smooth, slowly decaying start vector with a generic phase.
    CVector v = sample(grid, [&](double x) {
        return std::exp(-std::abs(lambda.imag()) * x + kI * lambda.real() * x) * (1.0 + 0.3 * std::cos(x));
    });
    double best = 0.0;
    for (int it = 0; it < iterations; ++it) {
        const double nv = grid_norm(grid, v);
        if (nv == 0.0) break;
        v /= nv;
        const CVector rv = volterra(lambda, h, v);
        best = std::max(best, grid_norm(grid, rv));
        v = volterra_adjoint(lambda, h, rv);
    }
    return best;
}

}  // namespace

HalfLineGrid HalfLineGrid::uniform(double length, int count) {
    require(length > 0.0, ErrorCode::InvalidArgument, "grid length must be positive");
    require(count >= 16, ErrorCode::InvalidArgument, "grid needs at least 16 nodes");
    HalfLineGrid g;
    g.L = length;
    g.n = count;
    g.nodes = RVector::LinSpaced(count, 0.0, length);
    const double h = g.spacing();
    g.weights = RVector::Constant(count, h);
    g.weights(0) = g.weights(count - 1) = 0.5 * h;
    return g;
}

CVector sample(const HalfLineGrid& grid, const std::function<cplx(double)>& f) {
    CVector out(grid.n);
    for (int j = 0; j < grid.n; ++j) out(j) = f(grid.nodes(j));
    return out;
}

cplx fo_m(const FOModel&, cplx) { return 0.0; }

cplx fo_m_adjoint(cplx b_tilde, cplx) {
    require(b_tilde != 0.0, ErrorCode::InvalidArgument, "adjoint M needs Bt != 0");
    return -1.0 / b_tilde;
}

CVector fo_resolvent(const FOModel& model, cplx lambda, const CVector& g) {
    require_lower(lambda);
    require(g.size() == model.grid.n, ErrorCode::DimensionMismatch, "grid function has wrong length");
    return volterra(lambda, model.grid.spacing(), g);
}

double grid_norm(const HalfLineGrid& grid, const CVector& f) {
    return std::sqrt((grid.weights.array() * f.array().abs2()).sum());
}

double fo_ode_residual(const FOModel& model, cplx lambda, const CVector& f, const CVector& g) {
    const double h = model.grid.spacing();
    double worst = 0.0;
    for (Eigen::Index j = 1; j + 1 < f.size(); ++j) {
        const cplx df = (f(j + 1) - f(j - 1)) / (2.0 * h);
        worst = std::max(worst, std::abs(kI * df - lambda * f(j) - g(j)));
    }
    return worst;
}

double fo_T_density_residual(const FOModel& model, const CVector& f, const std::vector<cplx>& mus) {
    const auto& grid = model.grid;
    require(f.size() == grid.n, ErrorCode::DimensionMismatch, "grid function has wrong length");
    for (const cplx mu : mus) {
        if (!(mu.imag() < 0.0)) throw Error(ErrorCode::BadMu, "density samples need Im mu < 0");
    }
    const RVector sw = grid.weights.array().sqrt();
    const CVector rhs = sw.cast<cplx>().cwiseProduct(f);
    if (mus.empty()) return rhs.norm();
    CMatrix a(grid.n, static_cast<Eigen::Index>(mus.size()));
    for (std::size_t k = 0; k < mus.size(); ++k) {
        for (int j = 0; j < grid.n; ++j) {
            a(j, static_cast<Eigen::Index>(k)) = sw(j) * std::exp(-kI * mus[k] * grid.nodes(j));
        }
    }
    Eigen::ColPivHouseholderQR<CMatrix> qr(a);
    qr.setThreshold(1e-14);
    const CVector c = qr.solve(rhs);
    return (rhs - a * c).norm();
}

std::vector<cplx> fo_density_mus(int count) {
    std::vector<cplx> mus;
    for (int k = 1; k <= count; ++k) {
        double x = 0.0, f = 0.5;
        for (int v = k; v > 0; v /= 2, f /= 2) x += f * (v & 1);
        mus.push_back(cplx(0.0, -(0.5 + 3.0 * x)));
    }
    return mus;
}

std::vector<double> fo_blowup_scan(const FOModel& model, const std::vector<cplx>& path, const CVector& g) {
    for (const cplx l : path) require_lower(l);
    std::vector<double> out(path.size());
    parallel_for(path.size(), [&](std::size_t j) {
        out[j] = grid_norm(model.grid, fo_resolvent(model, path[j], g));
    });
    return out;
}

std::vector<double> fo_operator_norm_scan(const FOModel& model, const std::vector<cplx>& path, int iterations) {
    for (const cplx l : path) require_lower(l);
    std::vector<double> out(path.size());
    parallel_for(path.size(), [&](std::size_t j) {
        const cplx l = path[j];
        const double length = std::max(model.grid.L, 20.0 / std::abs(l.imag()));
        const double h = 0.1 / std::max(std::abs(l), 1.0);
        const int count = std::max(16, static_cast<int>(std::ceil(length / h)) + 1);
        out[j] = power_norm(l, HalfLineGrid::uniform(length, count), iterations);
    });
    return out;
}

std::vector<cplx> fo_dyadic_path(double x0, int first, int last) {
    std::vector<cplx> path;
    for (int j = first; j <= last; ++j) path.push_back(cplx(x0, -std::ldexp(1.0, -j)));
    return path;
}

}  // namespace weyl
