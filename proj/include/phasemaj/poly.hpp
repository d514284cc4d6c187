#pragma once

// Dense univariate polynomials over exact rationals, ascending powers.
// Canonical form strips trailing zero coefficients; the zero polynomial
// is the empty list.

#include <cstddef>
#include <utility>
#include <vector>

#include "phasemaj/rational.hpp"

namespace phasemaj {

struct Poly {
    std::vector<BigRational> coeffs;  // coeffs[i] multiplies z^i

    Poly() = default;
    explicit Poly(std::vector<BigRational> c) : coeffs(std::move(c)) { normalize(); }

    void normalize() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }

    bool is_zero() const { return coeffs.empty(); }

    // degree of the zero polynomial is -1 by convention here
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    const BigRational& operator[](size_t i) const { return coeffs[i]; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs == b.coeffs; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<BigRational> c(std::max(a.coeffs.size(), b.coeffs.size()));
        for (size_t i = 0; i < c.size(); ++i) {
            if (i < a.coeffs.size()) c[i] += a.coeffs[i];
            if (i < b.coeffs.size()) c[i] += b.coeffs[i];
        }
        return Poly(std::move(c));
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<BigRational> c(std::max(a.coeffs.size(), b.coeffs.size()));
        for (size_t i = 0; i < c.size(); ++i) {
            if (i < a.coeffs.size()) c[i] += a.coeffs[i];
            if (i < b.coeffs.size()) c[i] -= b.coeffs[i];
        }
        return Poly(std::move(c));
    }

    friend Poly operator-(const Poly& a) {
        std::vector<BigRational> c(a.coeffs);
        for (auto& x : c) x = -x;
        return Poly(std::move(c));
    }

    friend Poly operator*(const BigRational& s, const Poly& a) {
        if (s == 0) return Poly{};
        std::vector<BigRational> c(a.coeffs);
        for (auto& x : c) x *= s;
        return Poly(std::move(c));
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly{};
        std::vector<BigRational> c(a.coeffs.size() + b.coeffs.size() - 1);
        for (size_t i = 0; i < a.coeffs.size(); ++i)
            for (size_t j = 0; j < b.coeffs.size(); ++j)
                c[i + j] += a.coeffs[i] * b.coeffs[j];
        return Poly(std::move(c));
    }

    BigRational eval(const BigRational& z) const {
        BigRational acc = 0;
        for (size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
        return acc;
    }

    double eval_d(double z) const {
        double acc = 0;
        for (size_t i = coeffs.size(); i-- > 0;) acc = acc * z + to_double(coeffs[i]);
        return acc;
    }

    // rounded coefficients for tight evaluation loops
    std::vector<double> coeffs_d() const {
        std::vector<double> c(coeffs.size());
        for (size_t i = 0; i < coeffs.size(); ++i) c[i] = to_double(coeffs[i]);
        return c;
    }
};

inline double eval_horner(const std::vector<double>& coeffs, double z) {
    double acc = 0;
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
    return acc;
}

// p(c*z): coefficient i picks up a factor c^i
inline Poly scale_arg(const Poly& p, const BigRational& c) {
    std::vector<BigRational> out(p.coeffs);
    BigRational f = 1;
    for (size_t i = 1; i < out.size(); ++i) {
        f *= c;
        out[i] *= f;
    }
    return Poly(std::move(out));
}

inline Poly derivative(const Poly& p) {
    if (p.coeffs.size() <= 1) return Poly{};
    std::vector<BigRational> out(p.coeffs.size() - 1);
    for (size_t i = 1; i < p.coeffs.size(); ++i)
        out[i - 1] = BigRational(static_cast<long>(i)) * p.coeffs[i];
    return Poly(std::move(out));
}

// antiderivative Q with Q(0) = 0
inline Poly antiderivative(const Poly& p) {
    if (p.is_zero()) return Poly{};
    std::vector<BigRational> out(p.coeffs.size() + 1);
    for (size_t i = 0; i < p.coeffs.size(); ++i)
        out[i + 1] = p.coeffs[i] / BigRational(static_cast<long>(i + 1));
    return Poly(std::move(out));
}

// Laguerre polynomial L_n by the three-term recurrence
// (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}, L_0 = 1, L_1 = 1-x.
inline Poly laguerre(unsigned n) {
    Poly prev(std::vector<BigRational>{1});
    if (n == 0) return prev;
    Poly cur(std::vector<BigRational>{1, -1});
    for (unsigned k = 1; k < n; ++k) {
        Poly shift(std::vector<BigRational>{BigRational(2L * k + 1), -1});
        Poly next = BigRational(1, static_cast<long>(k + 1)) *
                    (shift * cur - BigRational(static_cast<long>(k)) * prev);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace phasemaj
