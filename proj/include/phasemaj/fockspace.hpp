#pragma once

// Radial phase-space profiles of number-state mixtures in the z = r^2
// variable, normalized so the ground state is exactly e^{-z}. The n-th
// state contributes (-1)^n L_n(2z) e^{-z}.

#include <map>
#include <string>
#include <utility>

#include "phasemaj/errors.hpp"
#include "phasemaj/polyexp.hpp"
#include "phasemaj/sturm.hpp"

namespace phasemaj {

struct FockMixture {
    std::map<unsigned, BigRational> weights;

    static FockMixture single(unsigned n) {
        FockMixture m;
        m.weights[n] = 1;
        return m;
    }

    // {0..top} each weighted 1/(top+1)
    static FockMixture uniform(unsigned top) {
        FockMixture m;
        for (unsigned n = 0; n <= top; ++n) m.weights[n] = frac(1, static_cast<long>(top) + 1);
        return m;
    }

    void validate() const {
        BigRational total = 0;
        for (const auto& [n, w] : weights) {
            if (w < 0) throw NotNormalized("negative weight at state " + std::to_string(n));
            total += w;
        }
        if (total != 1) throw NotNormalized("weights sum to " + to_string(total) + ", want 1");
    }
};

struct RadialProfile {
    FockMixture mixture;
    PolyExpFn fn;
};

// polynomial part of the n-th state's profile: (-1)^n L_n(2z)
inline Poly fock_poly(unsigned n) {
    Poly p = scale_arg(laguerre(n), 2);
    return (n % 2 == 1) ? BigRational(-1) * p : p;
}

inline RadialProfile fock_radial(unsigned n) {
    return RadialProfile{FockMixture::single(n), PolyExpFn{BigRational(0), fock_poly(n)}};
}

inline RadialProfile mixture_radial(const FockMixture& m) {
    m.validate();
    Poly p;
    for (const auto& [n, w] : m.weights) p = p + w * fock_poly(n);
    return RadialProfile{m, PolyExpFn{BigRational(0), std::move(p)}};
}

struct NonnegCertificate {
    bool nonneg = true;
    std::string method = "sturm";
    int distinct_positive_roots = 0;
    // when !nonneg: the profile is strictly negative throughout
    // [witness_lo, witness_hi] and in particular at witness_point
    BigRational witness_lo, witness_hi, witness_point;
};

inline NonnegCertificate certify_nonnegative(const RadialProfile& f) {
    HalflineNonneg h = halfline_nonneg(f.fn.poly);
    NonnegCertificate cert;
    cert.nonneg = h.nonneg;
    cert.distinct_positive_roots = h.distinct_positive_roots;
    cert.witness_lo = h.witness_lo;
    cert.witness_hi = h.witness_hi;
    cert.witness_point = h.witness_point;
    return cert;
}

// f = c * e^{-z}, the kernel the ground state reaches f through.
struct VacuumDecomposition {
    PolyExpFn c;
    bool total_is_one = false;   // ∫ c = 1
    bool tails_nonneg = false;   // ∫_x^∞ c ≥ 0 for every x > 0
    HalflineNonneg tail_cert;    // decision on the tail polynomial of c

    bool entry_ok() const { return total_is_one && tails_nonneg; }
};

inline VacuumDecomposition vacuum_decomposition(const RadialProfile& f) {
    VacuumDecomposition out;
    out.c = deconvolve_exp(f.fn);
    out.total_is_one = total_integral(out.c) == 1;
    // for x > 0 the Dirac at 0 never enters: tail(x) = R_c(x) e^{-x}
    out.tail_cert = halfline_nonneg(tail_poly(out.c.poly));
    out.tails_nonneg = out.tail_cert.nonneg;
    return out;
}

// Exact check that the tail integral of the n-th state's derivative profile
// telescopes into twice the partial sum of the lower states' profiles:
//   ∫_x^∞ (-1)^n (L_n(2z))' e^{-z} dz = 2 Σ_{i<n} (-1)^i L_i(2x) e^{-x}
struct RecursionIdentity {
    Poly lhs;  // tail polynomial of the left side
    Poly rhs;  // 2 Σ_{i<n} (-1)^i L_i(2x)
    bool equal = false;
};

inline RecursionIdentity recursion_identity_check(unsigned n) {
    RecursionIdentity out;
    out.lhs = tail_poly(derivative(fock_poly(n)));
    for (unsigned i = 0; i < n; ++i) out.rhs = out.rhs + fock_poly(i);
    out.rhs = BigRational(2) * out.rhs;
    out.equal = out.lhs == out.rhs;
    if (!out.equal)
        throw IdentityViolation("tail recursion identity failed at n = " + std::to_string(n));
    return out;
}

// The mixture whose profile the identity's right side is proportional to:
// the first n states, weight 1/n each.
inline RadialProfile mixture_from_recursion(unsigned n) {
    if (n == 0) throw NotNormalized("empty mixture");
    return mixture_radial(FockMixture::uniform(n - 1));
}

}  // namespace phasemaj
