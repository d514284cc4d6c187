#pragma once

// Exact arbitrary-precision rational arithmetic used throughout the exact
// layers of the toolkit. Backed by GMP's canonical mpq representation:
// always in lowest terms, denominator > 0.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace phasemaj {

using BigInt = mpz_class;
using BigRational = mpq_class;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses "p", "-p/q" etc. Rejects anything else, notably decimal floats:
// exact code paths must never receive rounded input.
inline BigRational parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    auto digits = [](const std::string& s, size_t from, size_t to) {
        if (from >= to) return false;
        for (size_t i = from; i < to; ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    size_t slash = text.find('/');
    bool ok;
    if (slash == std::string::npos) {
        ok = digits(text, start, text.size());
    } else {
        ok = digits(text, start, slash) && digits(text, slash + 1, text.size());
    }
    if (!ok) throw ParseError("bad rational literal: '" + text + "' (want p or p/q)");
    BigRational r(text);
    if (r.get_den() == 0) throw ParseError("zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const BigRational& r) {
    return r.get_str();  // "p" or "p/q", canonical
}

inline double to_double(const BigRational& r) { return r.get_d(); }

inline BigRational pow_rational(const BigRational& base, unsigned long e) {
    BigRational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
    return out;  // num/den coprime, so powers are too
}

inline BigInt factorial(unsigned long n) {
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    if (k > n) return BigInt(0);
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

inline int sign(const BigRational& r) { return sgn(r); }

// mpq_class(num, den) does not reduce; this does.
inline BigRational frac(long num, long den) {
    BigRational r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace phasemaj
