#pragma once

// Exact real-root machinery over rational polynomials: Sturm chains,
// root counting on half-open intervals, bisection isolation, and the
// half-line nonnegativity decision used by the profile certifier.

#include <algorithm>
#include <cassert>
#include <vector>

#include "phasemaj/poly.hpp"

namespace phasemaj {

// Scale by the positive rational that makes coefficients coprime integers.
// A positive scale preserves every sign a Sturm chain cares about.
inline Poly positive_primitive(const Poly& p) {
    if (p.is_zero()) return p;
    BigInt g = 0, l = 1;
    for (const auto& c : p.coeffs) {
        if (c == 0) continue;
        g = gcd(g, BigInt(c.get_num()));
        l = lcm(l, BigInt(c.get_den()));
    }
    BigRational scale(l, g);
    scale.canonicalize();
    return scale * p;
}

inline Poly poly_rem(Poly a, const Poly& b) {
    assert(!b.is_zero());
    const int db = b.degree();
    const BigRational& lead = b.coeffs[static_cast<size_t>(db)];
    while (a.degree() >= db) {
        const int da = a.degree();
        BigRational f = a.coeffs[static_cast<size_t>(da)] / lead;
        for (int i = 0; i <= db; ++i)
            a.coeffs[static_cast<size_t>(da - db + i)] -= f * b.coeffs[static_cast<size_t>(i)];
        a.coeffs.pop_back();  // the top term cancels exactly
        a.normalize();
    }
    return a;
}

// Exact quotient; requires b | a.
inline Poly poly_div_exact(Poly a, const Poly& b) {
    assert(!b.is_zero());
    const int db = b.degree();
    const BigRational& lead = b.coeffs[static_cast<size_t>(db)];
    if (a.is_zero()) return Poly{};
    std::vector<BigRational> q(static_cast<size_t>(a.degree() - db + 1));
    while (a.degree() >= db) {
        const int da = a.degree();
        BigRational f = a.coeffs[static_cast<size_t>(da)] / lead;
        q[static_cast<size_t>(da - db)] = f;
        for (int i = 0; i <= db; ++i)
            a.coeffs[static_cast<size_t>(da - db + i)] -= f * b.coeffs[static_cast<size_t>(i)];
        a.coeffs.pop_back();
        a.normalize();
    }
    assert(a.is_zero());
    return Poly(std::move(q));
}

// gcd normalized to a positive leading coefficient, so p / gcd keeps p's sign.
inline Poly poly_gcd(Poly a, Poly b) {
    a = positive_primitive(a);
    b = positive_primitive(b);
    while (!b.is_zero()) {
        Poly r = positive_primitive(poly_rem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero() && a.coeffs.back() < 0) a = BigRational(-1) * a;
    return a;
}

inline Poly squarefree_part(const Poly& p) {
    if (p.degree() <= 0) return p;
    Poly g = poly_gcd(p, derivative(p));
    if (g.degree() <= 0) return p;
    return poly_div_exact(p, g);
}

struct SturmChain {
    std::vector<Poly> seq;

    static SturmChain of(const Poly& p) {
        SturmChain c;
        c.seq.push_back(positive_primitive(p));
        Poly d = positive_primitive(derivative(p));
        if (!d.is_zero()) {
            c.seq.push_back(d);
            while (true) {
                Poly r = poly_rem(c.seq[c.seq.size() - 2], c.seq.back());
                if (r.is_zero()) break;
                c.seq.push_back(positive_primitive(BigRational(-1) * r));
            }
        }
        return c;
    }

    int changes_at(const BigRational& x) const {
        int changes = 0, prev = 0;
        for (const auto& q : seq) {
            int s = sign(q.eval(x));
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
        return changes;
    }

    int changes_at_pos_inf() const {
        int changes = 0, prev = 0;
        for (const auto& q : seq) {
            if (q.is_zero()) continue;
            int s = sign(q.coeffs.back());
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
        return changes;
    }

    // distinct real roots of seq[0] in (a, b]; endpoints must not be roots
    int count_in(const BigRational& a, const BigRational& b) const {
        return changes_at(a) - changes_at(b);
    }

    int count_above(const BigRational& a) const {
        return changes_at(a) - changes_at_pos_inf();
    }
};

// Any real root r of p has |r| < this bound.
inline BigRational cauchy_bound(const Poly& p) {
    assert(!p.is_zero());
    BigRational m = 0;
    const BigRational& lead = p.coeffs.back();
    for (size_t i = 0; i + 1 < p.coeffs.size(); ++i) {
        BigRational q = abs(p.coeffs[i] / lead);
        if (q > m) m = q;
    }
    return m + 1;
}

// Half-open interval (lo, hi] holding exactly one distinct root; endpoints
// are never roots themselves.
struct RootInterval {
    BigRational lo, hi;
};

namespace detail {

// A split point in (a, b) that is not a root of q. Degree-many roots cannot
// occupy degree+1 distinct candidates.
inline BigRational nonroot_split(const Poly& q, const BigRational& a, const BigRational& b) {
    const int tries = q.degree() + 2;
    for (int t = 1; t <= tries; ++t) {
        BigRational m = a + frac(t, tries + 1) * (b - a);
        if (q.eval(m) != 0) return m;
    }
    assert(false && "no nonroot split point found");
    return (a + b) / 2;
}

}  // namespace detail

// Isolation context for the distinct roots of p inside (lo, hi].
struct RootIsolation {
    Poly squarefree;
    SturmChain chain;  // chain of the squarefree part
    std::vector<RootInterval> intervals;

    // Shrink an isolating interval below the given width, keeping exactly
    // one root inside and non-root endpoints.
    RootInterval refine(RootInterval iv, const BigRational& width) const {
        while (iv.hi - iv.lo > width) {
            BigRational m = detail::nonroot_split(squarefree, iv.lo, iv.hi);
            if (chain.count_in(iv.lo, m) == 1)
                iv.hi = m;
            else
                iv.lo = m;
        }
        return iv;
    }
};

// Requires lo < hi with neither endpoint a root of p.
inline RootIsolation isolate_roots(const Poly& p, const BigRational& lo, const BigRational& hi) {
    RootIsolation iso;
    iso.squarefree = squarefree_part(p);
    iso.chain = SturmChain::of(iso.squarefree);
    std::vector<RootInterval> stack{{lo, hi}};
    while (!stack.empty()) {
        RootInterval iv = stack.back();
        stack.pop_back();
        int n = iso.chain.count_in(iv.lo, iv.hi);
        if (n == 0) continue;
        if (n == 1) {
            iso.intervals.push_back(iv);
            continue;
        }
        BigRational m = detail::nonroot_split(iso.squarefree, iv.lo, iv.hi);
        stack.push_back({iv.lo, m});
        stack.push_back({m, iv.hi});
    }
    std::sort(iso.intervals.begin(), iso.intervals.end(),
              [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
    return iso;
}

// Exact decision of p(z) >= 0 for all z in [0, ∞).
struct HalflineNonneg {
    bool nonneg = true;
    int distinct_positive_roots = 0;
    // valid when !nonneg: p < 0 at witness_point and throughout [witness_lo, witness_hi]
    BigRational witness_lo, witness_hi, witness_point;
};

inline HalflineNonneg halfline_nonneg(const Poly& p) {
    HalflineNonneg out;
    if (p.is_zero()) return out;

    // factor out z^k; it never changes signs on (0, ∞)
    size_t k = 0;
    while (p.coeffs[k] == 0) ++k;
    Poly q(std::vector<BigRational>(p.coeffs.begin() + static_cast<long>(k), p.coeffs.end()));

    auto fail = [&](BigRational lo, BigRational hi, BigRational point) {
        out.nonneg = false;
        out.witness_lo = std::move(lo);
        out.witness_hi = std::move(hi);
        out.witness_point = std::move(point);
    };

    if (q.degree() == 0) {
        if (q.coeffs[0] < 0) fail(frac(1, 2), 2, 1);
        return out;
    }

    BigRational bound = cauchy_bound(q);
    RootIsolation iso = isolate_roots(q, 0, bound);
    out.distinct_positive_roots = static_cast<int>(iso.intervals.size());

    // Sign is constant between consecutive roots; sample each gap once.
    // Gap endpoints taken from isolating intervals are never roots, so a
    // negative sample comes with a closed all-negative witness interval.
    BigRational prev_hi = 0;
    int n = out.distinct_positive_roots;
    for (int i = 0; i <= n; ++i) {
        BigRational gap_lo = prev_hi;
        BigRational gap_hi;
        if (i < n) {
            RootInterval iv = iso.intervals[static_cast<size_t>(i)];
            // pull the interval off the gap's edges so the sample stays clear of the root
            while (!(iv.lo > gap_lo)) iv = iso.refine(iv, (iv.hi - iv.lo) / 2);
            gap_hi = iv.lo;
            prev_hi = iv.hi;
        } else {
            gap_hi = bound > prev_hi ? bound : prev_hi + 1;
        }
        BigRational sample = (gap_lo + gap_hi) / 2;
        if (q.eval(sample) < 0) {
            // q(gap_lo) may be 0 only when gap_lo == 0 (root endpoints excluded)
            BigRational wlo = (i == 0) ? sample : gap_lo;
            fail(wlo, gap_hi, sample);
            return out;
        }
    }
    if (q.eval(0) < 0) {
        // negative at the origin itself (k == 0 or the sample loop was all-positive)
        fail(0, 0, 0);
    }
    return out;
}

}  // namespace phasemaj
