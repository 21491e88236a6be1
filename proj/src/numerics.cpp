#include "weyl_scope/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "weyl_scope/errors.hpp"

namespace weyl {

namespace {

double one_norm(const CMatrix& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().colwise().sum().maxCoeff();
}

void check_pivots(const Eigen::PartialPivLU<CMatrix>& lu, const CMatrix& a) {
    const double scale = one_norm(a);
    const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (!(min_pivot > 1e-13 * scale) || !std::isfinite(min_pivot)) {
        throw Error(ErrorCode::SingularMatrix,
                    "pivot " + std::to_string(min_pivot) + " below 1e-13*||A||");
    }
}

}  // namespace

CVector solve_linear(const CMatrix& a, const CVector& b) {
    require(a.rows() == a.cols(), ErrorCode::DimensionMismatch, "solve_linear: matrix not square");
    require(a.rows() == b.rows(), ErrorCode::DimensionMismatch, "solve_linear: rhs length");
    if (a.rows() == 0) return CVector(0);
    Eigen::PartialPivLU<CMatrix> lu(a);
    check_pivots(lu, a);
    return lu.solve(b);
}

CMatrix solve_linear(const CMatrix& a, const CMatrix& b) {
    require(a.rows() == a.cols(), ErrorCode::DimensionMismatch, "solve_linear: matrix not square");
    require(a.rows() == b.rows(), ErrorCode::DimensionMismatch, "solve_linear: rhs rows");
    if (a.rows() == 0) return CMatrix(0, b.cols());
    Eigen::PartialPivLU<CMatrix> lu(a);
    check_pivots(lu, a);
    return lu.solve(b);
}

double relative_min_singular_value(const CMatrix& a) {
    if (a.size() == 0) return 1.0;
    Eigen::JacobiSVD<CMatrix> svd(a);
    const auto& s = svd.singularValues();
    if (s(0) == 0.0) return 0.0;
    return s(s.size() - 1) / s(0);
}

std::vector<EigenPair> eig_dense(const CMatrix& a) {
    require(a.rows() == a.cols(), ErrorCode::DimensionMismatch, "eig_dense: matrix not square");
    std::vector<EigenPair> out;
    if (a.rows() == 0) return out;
    Eigen::ComplexEigenSolver<CMatrix> es(a, true);
    if (es.info() != Eigen::Success) {
        throw Error(ErrorCode::NoConvergence, "eig_dense: QR iteration cap reached");
    }
    out.reserve(static_cast<std::size_t>(a.rows()));
    for (Eigen::Index j = 0; j < a.rows(); ++j) {
        CVector v = es.eigenvectors().col(j);
        const double nv = v.norm();
        if (nv > 0) v /= nv;
        out.push_back({es.eigenvalues()(j), std::move(v)});
    }
    return out;
}

std::vector<cplx> eigenvalues(const CMatrix& a) {
    require(a.rows() == a.cols(), ErrorCode::DimensionMismatch, "eigenvalues: matrix not square");
    std::vector<cplx> out;
    if (a.rows() == 0) return out;
    Eigen::ComplexEigenSolver<CMatrix> es(a, false);
    if (es.info() != Eigen::Success) {
        throw Error(ErrorCode::NoConvergence, "eigenvalues: QR iteration cap reached");
    }
    for (Eigen::Index j = 0; j < a.rows(); ++j) out.push_back(es.eigenvalues()(j));
    std::sort(out.begin(), out.end(), [](cplx x, cplx y) {
        return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
    });
    return out;
}

CMatrix orthonormal_basis(const CMatrix& columns, double tol) {
    require(tol > 0, ErrorCode::InvalidArgument, "orthonormal_basis: tol must be positive");
    if (columns.cols() == 0 || columns.rows() == 0) return CMatrix(columns.rows(), 0);
    Eigen::JacobiSVD<CMatrix> svd(columns, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return CMatrix(columns.rows(), 0);
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > tol * s(0)) ++rank;
    return svd.matrixU().leftCols(rank);
}

std::vector<double> principal_angles(const CMatrix& u, const CMatrix& v) {
    require(u.rows() == v.rows(), ErrorCode::DimensionMismatch,
            "principal_angles: bases live in different spaces");
    const CMatrix& wide = u.cols() >= v.cols() ? u : v;
    const CMatrix& narrow = u.cols() >= v.cols() ? v : u;
    const Eigen::Index k = narrow.cols();
    std::vector<double> angles;
    if (k == 0) return angles;

    Eigen::JacobiSVD<CMatrix> cos_svd(CMatrix(wide.adjoint() * narrow));
    CMatrix residual = narrow - wide * (wide.adjoint() * narrow);
    Eigen::JacobiSVD<CMatrix> sin_svd(residual);
    RVector cosines = RVector::Zero(k);
    RVector sines = RVector::Zero(k);
    const auto& cs = cos_svd.singularValues();
    const auto& ss = sin_svd.singularValues();
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(k, cs.size()); ++i) cosines(i) = cs(i);
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(k, ss.size()); ++i) sines(i) = ss(i);
    // cosines descending, sines descending; angle i pairs cos[i] with sin[k-1-i]
    angles.resize(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) {
        const double c = std::min(1.0, cosines(i));
        const double s = std::min(1.0, sines(k - 1 - i));
        angles[static_cast<std::size_t>(i)] = (c * c >= 0.5) ? std::asin(s) : std::acos(c);
    }
    std::sort(angles.begin(), angles.end());
    return angles;
}

void ContourSpec::validate() const {
    require(radius > 0, ErrorCode::InvalidArgument, "contour radius must be positive");
    require(nodes >= 8 && nodes % 2 == 0, ErrorCode::InvalidArgument,
            "contour needs an even node count >= 8");
}

cplx ContourSpec::node(int j) const {
    const double theta = 2.0 * kPi * j / nodes;
    return center + radius * std::polar(1.0, theta);
}

cplx ContourSpec::weight(int j) const {
    const double theta = 2.0 * kPi * j / nodes;
    return kI * radius * std::polar(1.0, theta) * (2.0 * kPi / nodes);
}

CMatrix contour_integral(const MatrixFunction& f, const ContourSpec& contour) {
    contour.validate();
    std::vector<CMatrix> values(static_cast<std::size_t>(contour.nodes));
    parallel_for(values.size(), [&](std::size_t j) {
        try {
            values[j] = f(contour.node(static_cast<int>(j)));
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw Error(ErrorCode::EvaluationFailed, e.what());
        }
    });
    CMatrix acc = CMatrix::Zero(values[0].rows(), values[0].cols());
    for (int j = 0; j < contour.nodes; ++j) {
        const auto& value = values[static_cast<std::size_t>(j)];
        require(value.rows() == acc.rows() && value.cols() == acc.cols(),
                ErrorCode::DimensionMismatch, "contour_integral: integrand changed shape");
        acc += contour.weight(j) * value;
    }
    return acc;
}

cplx contour_integral(const ScalarFunction& f, const ContourSpec& contour) {
    contour.validate();
    cplx acc = 0.0;
    for (int j = 0; j < contour.nodes; ++j) acc += contour.weight(j) * f(contour.node(j));
    return acc;
}

int worker_count() {
    if (const char* env = std::getenv("WEYL_SCOPE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) return static_cast<int>(std::min(v, 256L));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

GaussRule gauss_legendre(int n) {
    require(n >= 1, ErrorCode::InvalidArgument, "gauss_legendre: n >= 1");
    static std::mutex mutex;
    static std::map<int, GaussRule> cache;
    {
        std::lock_guard<std::mutex> lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    GaussRule rule;
    rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
    rule.weights.assign(static_cast<std::size_t>(n), 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(n, rule);
    return rule;
}

cplx real_line_quadrature(const RealLineFunction& f, int decay_order, int nodes) {
    if (decay_order < 2) {
        throw Error(ErrorCode::SlowDecay, "integrand must decay at least like |x|^-2");
    }
    require(nodes >= 2, ErrorCode::InvalidArgument, "real_line_quadrature: nodes >= 2");
    const GaussRule rule = gauss_legendre(nodes / 2);
    cplx acc = 0.0;
    for (double shift : {-kPi / 4.0, kPi / 4.0}) {
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double theta = shift + (kPi / 4.0) * rule.nodes[j];
            const double x = std::tan(theta);
            acc += rule.weights[j] * (kPi / 4.0) * (1.0 + x * x) * f(x);
        }
    }
    return acc;
}

double max_abs(const CMatrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

}  // namespace weyl
