#pragma once

// Majorization verdicts, discrete and continuous, plus the constructive
// witnesses: decreasing rearrangements, prefix-sum margins, Robin Hood
// transfer sequences with their doubly stochastic product, and the
// Schur-convex functionals (including Wigner entropy) used to sanity-check
// verdicts.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "phasemaj/errors.hpp"
#include "phasemaj/fockspace.hpp"

namespace phasemaj {

struct GridConfig {
    double z_max = 0;          // 0: choose from the exact tail bound
    size_t cells = size_t{1} << 18;
    int refine_rounds = 3;
    double tolerance = 1e-9;   // margin/total tolerance for verdicts
};

// |∫_x^∞ P e^{-z}| is bounded by the tail with |coefficients|; first integer
// x where that bound drops under `budget`.
inline double tail_cutoff(const PolyExpFn& f, double budget) {
    std::vector<BigRational> abs_coeffs(f.poly.coeffs);
    for (auto& c : abs_coeffs) c = abs(c);
    Poly r = tail_poly(Poly(std::move(abs_coeffs)));
    for (double z = 1; z <= 1e4; z += 1)
        if (r.eval_d(z) * std::exp(-z) < budget) return z;
    throw TailTooHeavy("no truncation point meets the tail budget");
}

struct RearrangedCell {
    double value;
    double mass;
};

struct RearrangedProfile {
    std::vector<RearrangedCell> cells;  // value-descending, equal values merged
    double total_mass = 0;              // Σ mass (measure)
    double integral = 0;                // Σ value·mass
};

namespace detail {

inline RearrangedProfile rearrange_values(std::vector<double> values, double cell_mass) {
    std::sort(values.begin(), values.end(), std::greater<>());
    RearrangedProfile out;
    for (double v : values) {
        if (!out.cells.empty() && out.cells.back().value == v)
            out.cells.back().mass += cell_mass;
        else
            out.cells.push_back({v, cell_mass});
        out.total_mass += cell_mass;
        out.integral += v * cell_mass;
    }
    return out;
}

}  // namespace detail

// Midpoint-sampled cells over [0, z_max], sorted by value.
inline RearrangedProfile decreasing_rearrangement(const PolyExpFn& f, const GridConfig& cfg) {
    double z_max = cfg.z_max > 0 ? cfg.z_max : tail_cutoff(f, cfg.tolerance / 10);
    const double dz = z_max / static_cast<double>(cfg.cells);
    const std::vector<double> dc = f.poly.coeffs_d();
    std::vector<double> values(cfg.cells);
    for (size_t i = 0; i < cfg.cells; ++i) {
        double z = (static_cast<double>(i) + 0.5) * dz;
        values[i] = eval_horner(dc, z) * std::exp(-z);
    }
    return detail::rearrange_values(std::move(values), dz);
}

// Sampled-function overload: uniform cells over a total measure.
inline RearrangedProfile decreasing_rearrangement(const std::vector<double>& samples,
                                                  double total_measure) {
    return detail::rearrange_values(std::vector<double>(samples),
                                    total_measure / static_cast<double>(samples.size()));
}

struct RefinementRound {
    size_t cells = 0;
    double min_margin = 0;
    double total_mismatch = 0;
    bool holds = false;
};

struct MajorizationVerdict {
    bool holds = false;
    double min_margin = 0;
    double argmin = 0;  // prefix index (discrete) or measure t (continuous)
    double total_x = 0, total_y = 0;
    std::vector<RefinementRound> rounds;  // continuous verdicts only
};

// x majorizes y: every prefix of the descending rearrangements favors x and
// the totals agree. Vectors of different lengths are zero-padded.
inline MajorizationVerdict majorizes_discrete(std::vector<double> x, std::vector<double> y,
                                              double tol = 1e-9) {
    const size_t n = std::max(x.size(), y.size());
    x.resize(n, 0.0);
    y.resize(n, 0.0);
    std::sort(x.begin(), x.end(), std::greater<>());
    std::sort(y.begin(), y.end(), std::greater<>());
    MajorizationVerdict v;
    double px = 0, py = 0;
    v.min_margin = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < n; ++k) {
        px += x[k];
        py += y[k];
        double margin = px - py;
        if (margin < v.min_margin) {
            v.min_margin = margin;
            v.argmin = static_cast<double>(k);
        }
    }
    v.total_x = px;
    v.total_y = py;
    v.holds = v.min_margin >= -tol && std::abs(px - py) <= tol;
    return v;
}

inline bool is_doubly_stochastic(const std::vector<std::vector<double>>& d, double tol = 1e-12) {
    const size_t n = d.size();
    std::vector<double> col(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        if (d[i].size() != n) return false;
        double row = 0;
        for (size_t j = 0; j < n; ++j) {
            if (d[i][j] < -tol) return false;
            row += d[i][j];
            col[j] += d[i][j];
        }
        if (std::abs(row - 1.0) > tol) return false;
    }
    for (size_t j = 0; j < n; ++j)
        if (std::abs(col[j] - 1.0) > tol) return false;
    return true;
}

struct Transfer {
    size_t from = 0, to = 0;
    double amount = 0;
};

struct TransferSequence {
    std::vector<Transfer> transfers;
    std::vector<std::vector<double>> witness;  // ordered product of the T-transforms
};

namespace detail {

struct TransferRecorder {
    std::vector<double>& w;
    TransferSequence& seq;

    // move `amount` from coordinate i to coordinate j; a T-transform with
    // λ = 1 - amount/(w_i - w_j)
    void apply(size_t i, size_t j, double amount) {
        if (amount == 0.0) return;
        double gap = w[i] - w[j];
        double lam = (gap > 0.0) ? 1.0 - amount / gap : 1.0;
        auto& m = seq.witness;
        for (size_t c = 0; c < m[i].size(); ++c) {
            double ri = m[i][c], rj = m[j][c];
            m[i][c] = lam * ri + (1.0 - lam) * rj;
            m[j][c] = (1.0 - lam) * ri + lam * rj;
        }
        w[i] -= amount;
        w[j] += amount;
        seq.transfers.push_back({i, j, amount});
    }
};

inline std::vector<size_t> argsort_desc(const std::vector<double>& v) {
    std::vector<size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](size_t a, size_t b) { return v[a] > v[b]; });
    return idx;
}

}  // namespace detail

// Classical construction: repeatedly fix the largest unmatched coordinate of
// the sorted views, each step a valid Robin Hood transfer; then transpose
// (λ = 0 transforms) any coordinates the target arranges differently.
inline TransferSequence robin_hood_decompose(const std::vector<double>& x_in,
                                             const std::vector<double>& y_in,
                                             double tol = 1e-9) {
    MajorizationVerdict pre = majorizes_discrete(x_in, y_in, tol);
    if (!pre.holds) throw NotMajorized("robin_hood_decompose: x does not majorize y");

    const size_t n = std::max(x_in.size(), y_in.size());
    std::vector<double> x(x_in), y(y_in);
    x.resize(n, 0.0);
    y.resize(n, 0.0);

    TransferSequence seq;
    seq.witness.assign(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) seq.witness[i][i] = 1.0;
    std::vector<double> w = x;
    detail::TransferRecorder rec{w, seq};

    // The working vector keeps its initial descending arrangement through
    // every step, so sorted slot s is always coordinate ix[s].
    std::vector<size_t> ix = detail::argsort_desc(x);
    std::vector<size_t> iy = detail::argsort_desc(y);

    for (size_t guard = 0; guard < 2 * n + 2; ++guard) {
        size_t j = n, k = n;
        for (size_t s = 0; s < n; ++s)
            if (w[ix[s]] > y[iy[s]]) j = s;
        if (j == n) break;
        for (size_t s = j + 1; s < n; ++s)
            if (w[ix[s]] < y[iy[s]]) {
                k = s;
                break;
            }
        if (k == n) {
            // rounding dust: a surplus with no deficit below it is bounded by
            // the entry tolerance, so write the slot off and keep going
            w[ix[j]] = y[iy[j]];
            continue;
        }
        double over = w[ix[j]] - y[iy[j]];
        double under = y[iy[k]] - w[ix[k]];
        double delta = std::min(over, under);
        rec.apply(ix[j], ix[k], delta);
        // snap the closed slot exactly, so the loop terminates bitwise
        if (delta == over) w[ix[j]] = y[iy[j]];
        if (delta == under) w[ix[k]] = y[iy[k]];
    }

    // w now holds y's multiset in x's arrangement; swap into y's arrangement
    std::vector<char> finalized(n, 0);
    for (size_t s = 0; s < n; ++s) {
        size_t t = iy[s];
        double want = y[t];
        if (w[t] == want) {
            finalized[t] = 1;
            continue;
        }
        size_t u = n;
        double best = std::numeric_limits<double>::infinity();
        for (size_t c = 0; c < n; ++c) {
            if (finalized[c]) continue;
            double diff = std::abs(w[c] - want);
            if (diff < best) {
                best = diff;
                u = c;
            }
        }
        finalized[t] = 1;
        if (u == n || u == t) continue;
        // swap contents of t and u: transfer the whole gap from the larger
        if (w[u] >= w[t])
            rec.apply(u, t, w[u] - w[t]);
        else
            rec.apply(t, u, w[t] - w[u]);
    }
    return seq;
}

namespace detail {

struct CumulativeWalker {
    const RearrangedProfile& p;
    size_t i = 0;
    double t0 = 0, f0 = 0;  // measure and integral consumed through cell i

    double next_breakpoint() const {
        return i < p.cells.size() ? t0 + p.cells[i].mass
                                  : std::numeric_limits<double>::infinity();
    }
    // cumulative ∫ of the rearrangement up to measure t (flat past the end)
    double at(double t) const {
        if (i >= p.cells.size()) return f0;
        double dt = t - t0;
        return f0 + p.cells[i].value * std::max(0.0, dt);
    }
    void advance_past(double t) {
        while (i < p.cells.size() && t0 + p.cells[i].mass <= t) {
            t0 += p.cells[i].mass;
            f0 += p.cells[i].value * p.cells[i].mass;
            ++i;
        }
    }
};

}  // namespace detail

// Margin walk over the union of both rearrangements' breakpoints. Both
// cumulatives are concave piecewise-linear, so the margin's minimum sits on
// a breakpoint.
inline void min_margin_walk(const RearrangedProfile& fr, const RearrangedProfile& gr,
                            double& min_margin, double& argmin) {
    detail::CumulativeWalker wf{fr}, wg{gr};
    min_margin = std::numeric_limits<double>::infinity();
    argmin = 0;
    const double t_end = std::max(fr.total_mass, gr.total_mass);
    double t = 0;
    while (t < t_end) {
        t = std::min(wf.next_breakpoint(), wg.next_breakpoint());
        if (t > t_end) t = t_end;
        double margin = wf.at(t) - wg.at(t);
        if (margin < min_margin) {
            min_margin = margin;
            argmin = t;
        }
        wf.advance_past(t);
        wg.advance_past(t);
    }
}

// Hardy-Littlewood comparison of two profiles after decreasing
// rearrangement, refined until the verdict is stable.
inline MajorizationVerdict majorizes_continuous(const RadialProfile& f, const RadialProfile& g,
                                                const GridConfig& cfg = {}) {
    MajorizationVerdict v;
    for (int round = 0; round < std::max(1, cfg.refine_rounds); ++round) {
        GridConfig rc = cfg;
        rc.cells = cfg.cells << round;
        RearrangedProfile fr = decreasing_rearrangement(f.fn, rc);
        RearrangedProfile gr = decreasing_rearrangement(g.fn, rc);
        RefinementRound r;
        r.cells = rc.cells;
        min_margin_walk(fr, gr, r.min_margin, v.argmin);
        r.total_mismatch = std::abs(fr.integral - gr.integral);
        r.holds = r.min_margin >= -cfg.tolerance && r.total_mismatch <= cfg.tolerance;
        v.rounds.push_back(r);
        v.min_margin = r.min_margin;
        v.total_x = fr.integral;
        v.total_y = gr.integral;
        v.holds = r.holds;
    }
    if (v.rounds.size() >= 2) {
        const auto& a = v.rounds[v.rounds.size() - 2];
        const auto& b = v.rounds.back();
        if (a.holds != b.holds)
            throw Unstable("verdict flipped between the last two refinement rounds");
    }
    return v;
}

enum class ConvexPhi { XLogX, Square, PowerP };

namespace detail {

inline double phi_apply(ConvexPhi phi, double p, double x) {
    switch (phi) {
        case ConvexPhi::XLogX:
            return x > 0 ? x * std::log(x) : 0.0;
        case ConvexPhi::Square:
            return x * x;
        case ConvexPhi::PowerP:
            return std::pow(std::abs(x), p);
    }
    return 0.0;
}

inline double adaptive_simpson(const std::function<double(double)>& h, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = h(lm), frm = h(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(h, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(h, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& h, double a, double b, double tol) {
    double m = 0.5 * (a + b);
    double fa = h(a), fm = h(m), fb = h(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(h, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace detail

// ∫_0^∞ Φ(f(z)) dz by adaptive quadrature with an analytically bounded tail.
inline double convex_functional(const RadialProfile& f, ConvexPhi phi, double p = 2.0,
                                const GridConfig& cfg = {}) {
    if (phi == ConvexPhi::XLogX && !certify_nonnegative(f).nonneg)
        throw NegativeInput("x·ln x functional requires a nonnegative profile");
    const double quad_tol = std::min(cfg.tolerance, 1e-6) * 1e-3;
    // past the cutoff, |Φ(f)| decays at least like |f|·(z + 2)^2 for every
    // built-in Φ once |f| < e^{-2}; budget the whole tail below quad_tol
    std::vector<BigRational> abs_coeffs(f.fn.poly.coeffs);
    for (auto& c : abs_coeffs) c = abs(c);
    Poly grow = Poly(std::vector<BigRational>{4, 4, 1}) * Poly(std::move(abs_coeffs));
    PolyExpFn bound{BigRational(0), std::move(grow)};
    double z_top = tail_cutoff(bound, quad_tol * 0.1);
    const std::vector<double> dc = f.fn.poly.coeffs_d();
    auto h = [&](double z) {
        double v = eval_horner(dc, z) * std::exp(-z);
        if (phi == ConvexPhi::XLogX && v < 0) v = 0;  // certified sign, rounding dust
        return detail::phi_apply(phi, p, v);
    };
    return detail::integrate(h, 0.0, z_top, quad_tol);
}

struct EntropyResult {
    double entropy = 0;        // ln π - ∫ f ln f
    double integral_term = 0;  // ∫ f ln f
};

inline EntropyResult wigner_entropy(const RadialProfile& f, const GridConfig& cfg = {}) {
    NonnegCertificate cert = certify_nonnegative(f);
    if (!cert.nonneg)
        throw NegativeWigner("profile is negative near z = " + to_string(cert.witness_point) +
                             " (certified on [" + to_string(cert.witness_lo) + ", " +
                             to_string(cert.witness_hi) + "])");
    GridConfig ec = cfg;
    ec.tolerance = std::min(cfg.tolerance, 1e-6);
    EntropyResult r;
    r.integral_term = convex_functional(f, ConvexPhi::XLogX, 2.0, ec);
    r.entropy = std::log(M_PI) - r.integral_term;
    return r;
}

}  // namespace phasemaj
