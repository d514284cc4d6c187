#pragma once

// Diagonal coefficients of the two-mode-mixed states σ(m, n): the number
// basis weights a_{m,z} obtained by splitting m and n = M-m photons on a
// balanced splitter. Everything here is exact.

#include <vector>

#include "phasemaj/errors.hpp"
#include "phasemaj/fockspace.hpp"
#include "phasemaj/rational.hpp"

namespace phasemaj {

inline constexpr unsigned kSigmaDefaultBound = 24;

struct SigmaCoefficients {
    unsigned m = 0, n = 0;
    std::vector<BigRational> a;  // a[z] for z = 0..m+n
};

// a_{m,z} = 2^{-M} ΣΣ (-1)^{i+j} C(m,i) C(M-m,z-i) C(m,j) C(M-m,z-j)
//           · z!(M-z)! / (m!(M-m)!),  i,j over max(0, z+m-M) .. min(z, m)
inline SigmaCoefficients sigma_coefficients(unsigned m, unsigned n,
                                            unsigned bound = kSigmaDefaultBound) {
    if (m + n > bound)
        throw BoundExceeded("sigma_coefficients: m + n = " + std::to_string(m + n) +
                            " exceeds bound " + std::to_string(bound));
    const unsigned M = m + n;
    SigmaCoefficients out;
    out.m = m;
    out.n = n;
    out.a.resize(M + 1);
    BigRational front(factorial(m) * factorial(M - m));
    BigRational two_pow_M(BigInt(1) << M);
    for (unsigned z = 0; z <= M; ++z) {
        const unsigned lo = (z + m > M) ? z + m - M : 0;
        const unsigned hi = std::min(z, m);
        BigInt sum = 0;
        for (unsigned i = lo; i <= hi; ++i) {
            for (unsigned j = lo; j <= hi; ++j) {
                BigInt term = binomial(m, i) * binomial(M - m, z - i) * binomial(m, j) *
                              binomial(M - m, z - j);
                if ((i + j) % 2 == 1)
                    sum -= term;
                else
                    sum += term;
            }
        }
        BigRational val(sum * factorial(z) * factorial(M - z));
        out.a[z] = val / (front * two_pow_M);
    }
    return out;
}

// number-basis mixture carried by the σ diagonal; validation rejects any
// negative coefficient, so building this doubles as a sign check
inline FockMixture sigma_mixture(const SigmaCoefficients& s) {
    FockMixture m;
    for (unsigned z = 0; z < s.a.size(); ++z)
        if (s.a[z] != 0) m.weights[z] = s.a[z];
    m.validate();
    return m;
}

// a_{m,z} = a_{z,m} across the whole ladder at total photon number M
inline bool symmetry_check(unsigned M, unsigned bound = kSigmaDefaultBound) {
    std::vector<SigmaCoefficients> rows(M + 1);
    for (unsigned m = 0; m <= M; ++m) rows[m] = sigma_coefficients(m, M - m, bound);
    for (unsigned m = 0; m <= M; ++m)
        for (unsigned z = 0; z <= M; ++z)
            if (rows[m].a[z] != rows[z].a[m]) return false;
    return true;
}

// Equal-weight average of σ(m, M-m) over m. The exact result must be the
// uniform mixture over the first M+1 number states; anything else means the
// coefficient identity broke.
inline FockMixture equal_mixture(unsigned M, unsigned bound = kSigmaDefaultBound) {
    std::vector<BigRational> avg(M + 1, BigRational(0));
    BigRational share = frac(1, static_cast<long>(M) + 1);
    for (unsigned m = 0; m <= M; ++m) {
        SigmaCoefficients s = sigma_coefficients(m, M - m, bound);
        for (unsigned z = 0; z <= M; ++z) avg[z] += share * s.a[z];
    }
    for (unsigned z = 0; z <= M; ++z)
        if (avg[z] != share)
            throw IdentityViolation("equal-weight sigma average is not uniform at z = " +
                                    std::to_string(z));
    return FockMixture::uniform(M);
}

}  // namespace phasemaj
