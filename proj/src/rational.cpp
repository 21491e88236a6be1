#include "weyl_scope/rational.hpp"

#include <algorithm>
#include <cmath>

#include "weyl_scope/errors.hpp"

namespace weyl {

namespace {

constexpr double kPoleMerge = 1e-13;

bool same_pole(cplx a, cplx b) { return std::abs(a - b) <= kPoleMerge * (1.0 + std::abs(a)); }

/// binom(-q, i) = (-1)^i binom(q + i - 1, i)
double neg_binom(int q, int i) {
    double v = 1.0;
    for (int j = 0; j < i; ++j) v *= static_cast<double>(-q - j) / (j + 1);
    return v;
}

}  // namespace

RationalH2 RationalH2::simple(const std::vector<cplx>& poles, const std::vector<cplx>& residues) {
    require(poles.size() == residues.size(), ErrorCode::DimensionMismatch, "poles and residues differ in length");
    RationalH2 f;
    for (std::size_t k = 0; k < poles.size(); ++k) f.terms.push_back({poles[k], 1, residues[k]});
    return normalized(f);
}

RationalH2 RationalH2::pole(cplx a, int order, cplx coeff) {
    require(order >= 1, ErrorCode::InvalidArgument, "pole order must be >= 1");
    RationalH2 f;
    f.terms.push_back({a, order, coeff});
    return f;
}

cplx RationalH2::operator()(cplx x) const {
    cplx v = 0.0;
    for (const auto& t : terms) v += t.coeff / std::pow(x - t.pole, t.order);
    return v;
}

bool RationalH2::is_hardy_plus() const {
    return std::all_of(terms.begin(), terms.end(), [](const PoleTerm& t) { return t.pole.imag() < 0.0; });
}

double RationalH2::scale() const {
    double s = 0.0;
    for (const auto& t : terms) s = std::max(s, std::abs(t.coeff));
    return s;
}

RationalH2 normalized(const RationalH2& f) {
    RationalH2 out;
    for (const auto& t : f.terms) {
        auto it = std::find_if(out.terms.begin(), out.terms.end(), [&](const PoleTerm& u) {
            return u.order == t.order && same_pole(u.pole, t.pole);
        });
        if (it == out.terms.end()) {
            out.terms.push_back(t);
        } else {
            it->coeff += t.coeff;
        }
    }
    out.terms.erase(std::remove_if(out.terms.begin(), out.terms.end(),
                                   [](const PoleTerm& t) { return t.coeff == 0.0; }),
                    out.terms.end());
    return out;
}

RationalH2 operator+(const RationalH2& f, const RationalH2& g) {
    RationalH2 out = f;
    out.terms.insert(out.terms.end(), g.terms.begin(), g.terms.end());
    return normalized(out);
}

RationalH2 operator-(const RationalH2& f, const RationalH2& g) { return f + (-1.0) * g; }

RationalH2 operator*(cplx s, const RationalH2& f) {
    RationalH2 out = f;
    for (auto& t : out.terms) t.coeff *= s;
    return normalized(out);
}

RationalH2 operator*(const RationalH2& f, const RationalH2& g) {
    RationalH2 out;
    for (const auto& s : f.terms) {
        for (const auto& t : g.terms) {
            const cplx c = s.coeff * t.coeff;
            if (same_pole(s.pole, t.pole)) {
                out.terms.push_back({s.pole, s.order + t.order, c});
                continue;
            }
            const cplx a = s.pole, b = t.pole;
            const int p = s.order, q = t.order;
            for (int i = 0; i < p; ++i) {
                out.terms.push_back({a, p - i, c * neg_binom(q, i) * std::pow(a - b, -q - i)});
            }
            for (int j = 0; j < q; ++j) {
                out.terms.push_back({b, q - j, c * neg_binom(p, j) * std::pow(b - a, -p - j)});
            }
        }
    }
    return normalized(out);
}

RationalH2 conj(const RationalH2& f) {
    RationalH2 out = f;
    for (auto& t : out.terms) {
        t.pole = std::conj(t.pole);
        t.coeff = std::conj(t.coeff);
    }
    return out;
}

std::pair<RationalH2, cplx> times_linear(const RationalH2& f, cplx z) {
    // (x - z)/(x - a)^p = 1/(x - a)^{p-1} + (a - z)/(x - a)^p
    RationalH2 out;
    cplx constant = 0.0;
    for (const auto& t : f.terms) {
        if (t.order == 1) {
            constant += t.coeff;
        } else {
            out.terms.push_back({t.pole, t.order - 1, t.coeff});
        }
        out.terms.push_back({t.pole, t.order, t.coeff * (t.pole - z)});
    }
    return {normalized(out), constant};
}

RationalH2 divide_linear(const RationalH2& f, cplx z) {
    RationalH2 q = f * RationalH2::pole(z);
    if (z.imag() != 0.0) return q;
    const double tol = 1e-12 * std::max(1.0, q.scale());
    RationalH2 out;
    for (const auto& t : q.terms) {
        if (same_pole(t.pole, z)) {
            if (std::abs(t.coeff) > tol) {
                throw Error(ErrorCode::PoleCollision, "division by (x - z) leaves a real pole");
            }
            continue;
        }
        out.terms.push_back(t);
    }
    return out;
}

cplx residue_sum(const RationalH2& f) {
    cplx s = 0.0;
    for (const auto& t : f.terms) {
        if (t.order == 1) s += t.coeff;
    }
    return s;
}

cplx symmetric_integral(const RationalH2& f) {
    // int_{-R}^{R} (x - a)^{-p} dx -> i pi sign(Im a) for p = 1 and 0 for p >= 2.
    cplx acc = 0.0;
    for (const auto& t : f.terms) {
        if (t.pole.imag() == 0.0) throw Error(ErrorCode::PoleCollision, "real pole in integrand");
        if (t.order == 1) acc += (t.pole.imag() > 0.0 ? 1.0 : -1.0) * t.coeff;
    }
    return kI * kPi * acc;
}

cplx inner(const RationalH2& f, const RationalH2& g) { return symmetric_integral(f * conj(g)); }

}  // namespace weyl
