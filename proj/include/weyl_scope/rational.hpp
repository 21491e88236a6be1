#pragma once

#include <utility>
#include <vector>

#include "weyl_scope/numerics.hpp"

namespace weyl {

struct PoleTerm {
    cplx pole;
    int order = 1;
    cplx coeff;
};

/// Proper rational function sum_k c_k / (x - a_k)^{p_k} without real poles.
/// H^2_+ convention: analytic in the upper half plane, i.e. all poles below.
struct RationalH2 {
    std::vector<PoleTerm> terms;

    static RationalH2 simple(const std::vector<cplx>& poles, const std::vector<cplx>& residues);
    static RationalH2 pole(cplx a, int order = 1, cplx coeff = 1.0);

    cplx operator()(cplx x) const;
    bool is_hardy_plus() const;
    bool empty() const { return terms.empty(); }
    /// Largest |c| over the terms (zero for the empty function).
    double scale() const;
};

/// Merges terms with coinciding (pole, order) and drops zero coefficients.
RationalH2 normalized(const RationalH2& f);

RationalH2 operator+(const RationalH2& f, const RationalH2& g);
RationalH2 operator-(const RationalH2& f, const RationalH2& g);
RationalH2 operator*(cplx s, const RationalH2& f);
/// Product in partial fractions.
RationalH2 operator*(const RationalH2& f, const RationalH2& g);

/// x -> conj(f(x)) on the real line.
RationalH2 conj(const RationalH2& f);

/// (x - z) f = rational part + constant; the constant equals c_f.
std::pair<RationalH2, cplx> times_linear(const RationalH2& f, cplx z);

/// f / (x - z). A pole created at real z must have a vanishing coefficient
/// (|coeff| <= 1e-12 scale), otherwise PoleCollision.
RationalH2 divide_linear(const RationalH2& f, cplx z);

/// lim x f(x): sum of the first-order coefficients.
cplx residue_sum(const RationalH2& f);

/// lim_{R -> inf} int_{-R}^{R} f dx by residues. Throws PoleCollision if a
/// pole lies on the real axis.
cplx symmetric_integral(const RationalH2& f);

/// <f, g> = int f conj(g).
cplx inner(const RationalH2& f, const RationalH2& g);

}  // namespace weyl
