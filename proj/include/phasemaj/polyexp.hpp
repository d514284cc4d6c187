#pragma once

// Generalized functions of the form  w·δ(z) + P(z)·e^{-z}  on [0, ∞).
// This family is closed under convolution with e^{-z} and supports exact
// tail integration, which is all the radial-profile machinery needs.

#include <cmath>
#include <utility>

#include "phasemaj/errors.hpp"
#include "phasemaj/poly.hpp"

namespace phasemaj {

struct PolyExpFn {
    BigRational dirac_weight;  // mass of the δ(z) component
    Poly poly;                 // P in P(z)·e^{-z}

    PolyExpFn() : dirac_weight(0) {}
    PolyExpFn(BigRational w, Poly p) : dirac_weight(std::move(w)), poly(std::move(p)) {}

    friend bool operator==(const PolyExpFn& a, const PolyExpFn& b) {
        return a.dirac_weight == b.dirac_weight && a.poly == b.poly;
    }
};

// R = Σ_{j≥0} P^{(j)}; satisfies R' - R = -P, so ∫_x^∞ P e^{-z} dz = R(x) e^{-x}.
inline Poly tail_poly(const Poly& p) {
    Poly r = p;
    Poly d = derivative(p);
    while (!d.is_zero()) {
        r = r + d;
        d = derivative(d);
    }
    return r;
}

struct TailIntegral {
    Poly r;             // ∫_x^∞ of the continuous part equals r(x)·e^{-x}
    bool include_dirac; // true iff the lower limit is 0, picking up the δ mass
    BigRational dirac_weight;

    BigRational value_at(const BigRational& x) const {
        // exact only at x = 0 (e^0 = 1); callers wanting other points use value_d
        BigRational v = r.eval(x);
        if (include_dirac) v += dirac_weight;
        return v;
    }

    double value_d(double x) const {
        double v = r.eval_d(x) * std::exp(-x);
        if (include_dirac) v += to_double(dirac_weight);
        return v;
    }
};

// ∫_x^∞ f, for x ≥ 0. The δ component contributes exactly when x = 0.
inline TailIntegral tail_integral(const PolyExpFn& f, const BigRational& x) {
    return TailIntegral{tail_poly(f.poly), x == 0, f.dirac_weight};
}

inline BigRational total_integral(const PolyExpFn& f) {
    return tail_integral(f, 0).value_at(0);
}

// (f * e^{-z})(z).  δ * e^{-z} = e^{-z};  (Q' e^{-z}) * e^{-z} = Q e^{-z} with Q(0)=0.
inline PolyExpFn convolve_exp(const PolyExpFn& f) {
    Poly q = antiderivative(f.poly);
    q = q + Poly(std::vector<BigRational>{f.dirac_weight});
    return PolyExpFn{BigRational(0), std::move(q)};
}

// Inverse of convolve_exp on Dirac-free inputs: g = P e^{-z} comes from
// c = P(0)·δ(z) + P'(z) e^{-z}.
inline PolyExpFn deconvolve_exp(const PolyExpFn& g) {
    if (g.dirac_weight != 0)
        throw NonZeroDirac("deconvolve_exp: input carries a Dirac component");
    BigRational at0 = g.poly.is_zero() ? BigRational(0) : g.poly[0];
    return PolyExpFn{std::move(at0), derivative(g.poly)};
}

// Pointwise value of the continuous part. Evaluating on top of a Dirac has
// no pointwise meaning, so that case is an error.
inline double eval(const PolyExpFn& f, double z) {
    if (z == 0.0 && f.dirac_weight != 0)
        throw DiracAtPoint("eval: profile has a Dirac at z = 0");
    return f.poly.eval_d(z) * std::exp(-z);
}

}  // namespace phasemaj
