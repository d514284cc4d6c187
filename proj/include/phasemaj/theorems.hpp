#pragma once

// Exact machinery for the convolution-majorization property of discrete
// exponential vectors: the kernel cone, its vertices with their Robin Hood
// slicings, the suffix-sum decomposition that characterizes the cone, and
// the discretization harness that carries the discrete result over to
// continuous profiles by refinement.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "phasemaj/majorize.hpp"
#include "phasemaj/polyexp.hpp"
#include "phasemaj/sturm.hpp"

namespace phasemaj {

// ---------------------------------------------------------------------------
// building blocks

// (a^0, a^1, ..., a^{n-1})
inline std::vector<BigRational> build_v0(unsigned n, const BigRational& a) {
    if (n == 0 || !(a > 0) || !(a < 1))
        throw std::invalid_argument("build_v0: need n >= 1 and 0 < a < 1");
    std::vector<BigRational> v(n);
    v[0] = 1;
    for (unsigned i = 1; i < n; ++i) v[i] = v[i - 1] * a;
    return v;
}

// 2n-vector, zero except the window starting at coordinate k-1 (k = 1..n)
// carrying (-a^0, a^0-a^1, ..., a^{n-2}-a^{n-1}, a^{n-1}); sums to zero
inline std::vector<BigRational> build_vk_uk(unsigned n, const BigRational& a, unsigned k) {
    if (k < 1 || k > n) throw std::invalid_argument("build_vk_uk: need 1 <= k <= n");
    const std::vector<BigRational> pow = [&] {
        std::vector<BigRational> p(n);
        p[0] = 1;
        for (unsigned i = 1; i < n; ++i) p[i] = p[i - 1] * a;
        return p;
    }();
    std::vector<BigRational> w(2 * n);
    w[k - 1] = -1;
    for (unsigned s = 1; s < n; ++s) w[k - 1 + s] = pow[s - 1] - pow[s];
    w[k - 1 + n] = pow[n - 1];
    return w;
}

struct Theorem1Instance {
    unsigned n = 0;
    BigRational a;
    std::vector<BigRational> lambdas;  // λ_1..λ_n

    void validate() const {
        if (n == 0) throw std::invalid_argument("instance: n must be positive");
        if (!(a > 0) || !(a < 1)) throw std::invalid_argument("instance: need 0 < a < 1");
        if (lambdas.size() != n)
            throw std::invalid_argument("instance: need exactly n lambda values");
        for (const BigRational& l : lambdas)
            if (l < 0) throw std::invalid_argument("instance: lambdas must be nonnegative");
    }
};

// kernel x of length n+1: (1, 0, ..., 0) plus, for each k, -λ_k at slot k-1
// and +λ_k at slot k
inline std::vector<BigRational> kernel_x(unsigned n, const std::vector<BigRational>& lambdas) {
    std::vector<BigRational> x(n + 1);
    x[0] = 1;
    for (unsigned k = 1; k <= n; ++k) {
        x[k - 1] -= lambdas[k - 1];
        x[k] += lambdas[k - 1];
    }
    return x;
}

inline std::vector<BigRational> convolve_vectors(const std::vector<BigRational>& x,
                                                 const std::vector<BigRational>& v) {
    std::vector<BigRational> g(x.size() + v.size() - 1);
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) g[i + j] += x[i] * v[j];
    return g;
}

// G = (v0, 0) + Σ λ_k (v_k, u_k); every call cross-checks the equivalent
// Toeplitz form G = x * v0 and both must agree exactly. Negative λ are
// accepted here on purpose: the building block is also used to probe points
// outside the cone.
inline std::vector<BigRational> convolution_G(const Theorem1Instance& inst) {
    if (inst.n == 0 || !(inst.a > 0) || !(inst.a < 1) || inst.lambdas.size() != inst.n)
        throw std::invalid_argument("convolution_G: malformed instance");
    std::vector<BigRational> g(2 * inst.n);
    const std::vector<BigRational> v0 = build_v0(inst.n, inst.a);
    for (unsigned i = 0; i < inst.n; ++i) g[i] = v0[i];
    for (unsigned k = 1; k <= inst.n; ++k) {
        if (inst.lambdas[k - 1] == 0) continue;
        const std::vector<BigRational> vk = build_vk_uk(inst.n, inst.a, k);
        for (size_t i = 0; i < g.size(); ++i) g[i] += inst.lambdas[k - 1] * vk[i];
    }
    if (convolve_vectors(kernel_x(inst.n, inst.lambdas), v0) != g)
        throw IdentityViolation("convolution_G: direct and Toeplitz forms disagree");
    return g;
}

// ---------------------------------------------------------------------------
// exact majorization

struct ExactMajorization {
    bool holds = false;
    BigRational min_margin;
    size_t argmin = 0;
    BigRational total_x, total_y;
};

// Tolerance-free verdict: descending prefix sums compared in exact rational
// arithmetic, totals must match exactly.
inline ExactMajorization majorizes_exact(std::vector<BigRational> x, std::vector<BigRational> y) {
    const size_t n = std::max(x.size(), y.size());
    x.resize(n);
    y.resize(n);
    std::sort(x.begin(), x.end(), std::greater<BigRational>());
    std::sort(y.begin(), y.end(), std::greater<BigRational>());
    ExactMajorization v;
    BigRational px = 0, py = 0;
    bool first = true;
    for (size_t k = 0; k < n; ++k) {
        px += x[k];
        py += y[k];
        BigRational margin = px - py;
        if (first || margin < v.min_margin) {
            v.min_margin = margin;
            v.argmin = k;
            first = false;
        }
    }
    v.total_x = px;
    v.total_y = py;
    v.holds = !first && v.min_margin >= 0 && px == py;
    return v;
}

// ---------------------------------------------------------------------------
// the discrete theorem

struct Theorem1Verdict {
    bool applicable = false;  // G entrywise nonnegative (exact test)
    long negative_index = -1; // first negative entry when not applicable
    ExactMajorization majorization;
    std::vector<BigRational> g;
};

// Computes G exactly. A negative entry disables the claim (not applicable);
// otherwise (v0, 0) must majorize G and a failure aborts loudly, because it
// would be either a bug or a counterexample.
inline Theorem1Verdict verify_theorem1(const Theorem1Instance& inst) {
    inst.validate();
    Theorem1Verdict out;
    out.g = convolution_G(inst);
    for (size_t i = 0; i < out.g.size(); ++i)
        if (out.g[i] < 0) {
            out.negative_index = static_cast<long>(i);
            return out;
        }
    out.applicable = true;
    std::vector<BigRational> v0_padded = build_v0(inst.n, inst.a);
    v0_padded.resize(2 * inst.n);
    out.majorization = majorizes_exact(v0_padded, out.g);
    if (!out.majorization.holds)
        throw TheoremViolation("nonnegative convolution not majorized at n=" +
                               std::to_string(inst.n) + ", a=" + to_string(inst.a) +
                               ", prefix " + std::to_string(out.majorization.argmin) +
                               " short by " + to_string(-out.majorization.min_margin));
    return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo harness

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

struct MonteCarloReport {
    std::uint64_t samples = 0;
    std::uint64_t applicable = 0;
    std::uint64_t not_applicable = 0;
    BigRational min_margin;  // tightest prefix margin over applicable draws
    bool any_applicable = false;
};

namespace detail {

// dyadic λ draw in [0, hi_num/2^12]; index-seeded so results are identical
// for every worker count
inline std::vector<BigRational> dyadic_lambdas(unsigned n, std::uint64_t seed,
                                               std::uint64_t hi_num) {
    std::vector<BigRational> l(n);
    for (unsigned k = 0; k < n; ++k)
        l[k] = frac(static_cast<long>(splitmix64(seed + k) % (hi_num + 1)), 4096);
    return l;
}

}  // namespace detail

// Random instances with dyadic rational λ in [0, range] per coordinate
// (default range 2 covers the cone vertices and beyond). Every G >= 0 draw
// must satisfy the theorem; a violation throws out of the harness.
inline MonteCarloReport theorem1_monte_carlo(unsigned n, const BigRational& a,
                                             std::uint64_t samples, std::uint64_t seed,
                                             unsigned jobs = 1, unsigned range_num = 8192) {
    if (jobs == 0) jobs = 1;
    std::vector<MonteCarloReport> parts(jobs);
    std::vector<std::exception_ptr> errors(jobs);

    auto worker = [&](unsigned w) {
        try {
            MonteCarloReport& r = parts[w];
            for (std::uint64_t i = w; i < samples; i += jobs) {
                Theorem1Instance inst{n, a,
                                      detail::dyadic_lambdas(n, splitmix64(seed ^ (i + 1)),
                                                             range_num)};
                const Theorem1Verdict v = verify_theorem1(inst);
                ++r.samples;
                if (!v.applicable) {
                    ++r.not_applicable;
                    continue;
                }
                ++r.applicable;
                if (!r.any_applicable || v.majorization.min_margin < r.min_margin) {
                    r.min_margin = v.majorization.min_margin;
                    r.any_applicable = true;
                }
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };

    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
        for (std::thread& t : pool) t.join();
    }
    for (std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);

    MonteCarloReport total;
    for (const MonteCarloReport& r : parts) {
        total.samples += r.samples;
        total.applicable += r.applicable;
        total.not_applicable += r.not_applicable;
        if (r.any_applicable && (!total.any_applicable || r.min_margin < total.min_margin)) {
            total.min_margin = r.min_margin;
            total.any_applicable = true;
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// cone vertices

struct ConeVertexSpec {
    unsigned n = 0;
    BigRational a;
    std::vector<char> zeroed;  // size n; true where the index symbol is "0"

    void validate() const {
        if (n == 0) throw std::invalid_argument("vertex spec: n must be positive");
        if (!(a > 0) || !(a < 1)) throw std::invalid_argument("vertex spec: need 0 < a < 1");
        if (zeroed.size() != n)
            throw std::invalid_argument("vertex spec: need exactly n index symbols");
    }
};

struct ExactTransfer {
    size_t from = 0, to = 0;
    BigRational amount;
};

struct ConeVertexResult {
    std::vector<BigRational> vertex;   // length 2n
    std::vector<BigRational> lambdas;  // multiple applied at each zeroed slot
    std::vector<ExactTransfer> transfers;
    ExactMajorization majorization;    // vs (v0, 0)
};

namespace detail {

// Shared vertex construction over any coefficient ring T (exact rationals,
// or polynomials in a for the symbolic variant). pow[e] must hold a^e.
template <typename T>
struct VertexBuild {
    std::vector<T> vec, lambdas;
    std::vector<std::tuple<size_t, size_t, T>> transfers;
};

template <typename T>
VertexBuild<T> cone_vertex_build(unsigned n, const std::vector<T>& pow,
                                 const std::vector<char>& zeroed) {
    VertexBuild<T> b;
    b.vec.assign(2 * n, T{});
    b.lambdas.assign(n, T{});
    for (unsigned i = 0; i < n; ++i) b.vec[i] = pow[i];
    for (unsigned j = 1; j <= n; ++j) {
        if (!zeroed[j - 1]) continue;
        const T mu = b.vec[j - 1];
        b.lambdas[j - 1] = mu;
        // slice the j-th coordinate into the window below it
        for (unsigned s = 1; s < n; ++s) {
            T amount = mu * (pow[s - 1] - pow[s]);
            b.vec[j - 1 + s] = b.vec[j - 1 + s] + amount;
            b.transfers.emplace_back(j - 1, j - 1 + s, std::move(amount));
        }
        T last = mu * pow[n - 1];
        b.vec[j - 1 + n] = b.vec[j - 1 + n] + last;
        b.transfers.emplace_back(j - 1, j - 1 + n, std::move(last));
        b.vec[j - 1] = T{};
    }
    return b;
}

}  // namespace detail

// Step-by-step construction: each zeroed position j (ascending) absorbs the
// multiple of the window vector that cancels coordinate j, and that addition
// is returned as its Robin Hood slicing. The result must be majorized by
// (v0, 0).
inline ConeVertexResult cone_vertex(const ConeVertexSpec& spec) {
    spec.validate();
    std::vector<BigRational> pow(spec.n);
    pow[0] = 1;
    for (unsigned i = 1; i < spec.n; ++i) pow[i] = pow[i - 1] * spec.a;

    // the construction only ever adds nonnegative mass below a coordinate,
    // so a negative multiple would contradict the slicing argument
    detail::VertexBuild<BigRational> b = detail::cone_vertex_build(spec.n, pow, spec.zeroed);
    for (const BigRational& mu : b.lambdas)
        if (mu < 0)
            throw ConstructionFailure("vertex construction produced a negative multiple");
    for (const BigRational& w : b.vec)
        if (w < 0)
            throw ConstructionFailure("vertex construction produced a negative coordinate");

    ConeVertexResult out;
    out.vertex = std::move(b.vec);
    out.lambdas = std::move(b.lambdas);
    for (auto& [from, to, amount] : b.transfers)
        out.transfers.push_back({from, to, std::move(amount)});
    std::vector<BigRational> v0_padded = build_v0(spec.n, spec.a);
    v0_padded.resize(2 * spec.n);
    out.majorization = majorizes_exact(v0_padded, out.vertex);
    if (!out.majorization.holds)
        throw TheoremViolation("cone vertex not majorized by the exponential vector");
    return out;
}

struct SymbolicVertex {
    std::vector<Poly> vertex;   // entries as polynomials in a
    std::vector<Poly> lambdas;
};

// Same construction with a left symbolic: entries come out as polynomials in
// a, so table patterns can be checked for every a at once.
inline SymbolicVertex cone_vertex_symbolic(unsigned n, const std::vector<char>& zeroed) {
    if (n == 0 || zeroed.size() != n)
        throw std::invalid_argument("symbolic vertex: need exactly n index symbols");
    std::vector<Poly> pow(n);
    for (unsigned e = 0; e < n; ++e) {
        std::vector<BigRational> c(e + 1);
        c[e] = 1;
        pow[e] = Poly{std::move(c)};
    }
    detail::VertexBuild<Poly> b = detail::cone_vertex_build(n, pow, zeroed);
    return SymbolicVertex{std::move(b.vec), std::move(b.lambdas)};
}

// ---------------------------------------------------------------------------
// suffix-sum decomposition

struct Lemma1Result {
    bool success = false;
    std::vector<BigRational> lambdas;  // λ_0..λ_N, always filled
    long first_violation = -1;         // smallest k with a negative suffix sum
};

// λ_k = Σ_{i>=k} x_i; the vector decomposes into the elementary difference
// vectors with nonnegative multiples iff every suffix sum is nonnegative.
inline Lemma1Result lemma1_decompose(const std::vector<BigRational>& x) {
    Lemma1Result r;
    r.lambdas.assign(x.size(), BigRational(0));
    BigRational suffix = 0;
    for (size_t k = x.size(); k-- > 0;) {
        suffix += x[k];
        r.lambdas[k] = suffix;
    }
    r.success = true;
    for (size_t k = 0; k < r.lambdas.size(); ++k)
        if (r.lambdas[k] < 0) {
            r.success = false;
            r.first_violation = static_cast<long>(k);
            break;
        }
    return r;
}

// inverse map: x_i = λ_i - λ_{i+1} (λ beyond the end taken as zero)
inline std::vector<BigRational> lemma1_reconstruct(const std::vector<BigRational>& lambdas) {
    std::vector<BigRational> x(lambdas.size());
    for (size_t i = 0; i < lambdas.size(); ++i) {
        x[i] = lambdas[i];
        if (i + 1 < lambdas.size()) x[i] -= lambdas[i + 1];
    }
    return x;
}

// ---------------------------------------------------------------------------
// discretization of a continuous convolution

struct EntryConditions {
    bool total_is_one = false;
    bool tails_nonneg = false;
    HalflineNonneg tail_cert;
    bool ok() const { return total_is_one && tails_nonneg; }
};

// exact entry tests: unit total mass and nonnegative tail integrals
inline EntryConditions theorem2_entry_conditions(const PolyExpFn& c) {
    EntryConditions e;
    e.total_is_one = total_integral(c) == 1;
    e.tail_cert = halfline_nonneg(tail_poly(c.poly));
    e.tails_nonneg = e.tail_cert.nonneg;
    return e;
}

struct Theorem2Discretization {
    PolyExpFn c;
    BigRational z_end;
    unsigned n = 0;           // grid has 2n cells
    BigRational delta_z;      // z_end / (2n)
    double k_tilde = 0;       // normalizer making c_vec sum to 1
    std::vector<double> c_vec;       // n+1 entries, k_tilde included
    std::vector<double> e0_vec;      // n samples of the exponential
    std::vector<double> g_vec;       // 2n, discrete convolution c_vec * e0_vec
    std::vector<double> sup_points;  // argmax per interior cell (diagnostics)
};

namespace detail {

// largest value of P(z)e^{-z} on [lo, hi]: candidates are the endpoints and
// the exactly isolated roots of P' - P inside the cell
inline double cell_supremum(const Poly& p, const std::vector<double>& pd,
                            const BigRational& lo, const BigRational& hi,
                            const Poly& crit, double& arg) {
    auto value = [&](double z) { return eval_horner(pd, z) * std::exp(-z); };
    double best = value(to_double(lo));
    arg = to_double(lo);
    const double at_hi = value(to_double(hi));
    if (at_hi > best) {
        best = at_hi;
        arg = to_double(hi);
    }
    if (crit.degree() < 1) return best;  // constant or zero: no critical points
    // endpoints of the isolation range must not be roots; nudge inward by a
    // vanishing fraction of the cell when they are
    const BigRational tiny = (hi - lo) / BigRational(BigInt(1) << 30);
    BigRational ilo = crit.eval(lo) == 0 ? nonroot_split(crit, lo, lo + tiny) : lo;
    BigRational ihi = crit.eval(hi) == 0 ? nonroot_split(crit, hi - tiny, hi) : hi;
    RootIsolation iso = isolate_roots(crit, ilo, ihi);
    const BigRational width = (hi - lo) / BigRational(BigInt(1) << 34);
    for (const RootInterval& iv : iso.intervals) {
        RootInterval f = iso.refine(iv, width);
        const double z = 0.5 * (to_double(f.lo) + to_double(f.hi));
        const double v = value(z);
        if (v > best) {
            best = v;
            arg = z;
        }
    }
    return best;
}

}  // namespace detail

// Partition [0, z_end] into 2n cells; the kernel vector takes the point mass,
// the true supremum of the continuous part on each of the first n-1 cells,
// and the scaled exact tail from z_n. Its suffix sums must all be
// nonnegative, which holds for every sufficiently fine grid.
inline Theorem2Discretization build_discretization(const PolyExpFn& c, const BigRational& z_end,
                                                   unsigned n) {
    if (n < 2 || !(z_end > 0))
        throw std::invalid_argument("discretization: need n >= 2 and z_end > 0");
    const EntryConditions entry = theorem2_entry_conditions(c);
    if (!entry.ok())
        throw EntryConditionsFailed(std::string("kernel fails entry conditions: ") +
                                    (entry.total_is_one ? "" : "total mass is not one; ") +
                                    (entry.tails_nonneg ? "" : "a tail integral is negative"));

    Theorem2Discretization d;
    d.c = c;
    d.z_end = z_end;
    d.n = n;
    d.delta_z = z_end / BigRational(2 * n);
    const double dz = to_double(d.delta_z);
    const double one_minus = -std::expm1(-dz);  // 1 - e^{-dz} without cancellation

    const Poly crit = derivative(c.poly) - c.poly;
    const std::vector<double> pd = c.poly.coeffs_d();

    std::vector<double> raw(n + 1);
    raw[0] = to_double(c.dirac_weight);
    d.sup_points.assign(n - 1, 0.0);
    for (unsigned i = 1; i < n; ++i) {
        const BigRational lo = BigRational(i - 1) * d.delta_z;
        const BigRational hi = BigRational(i) * d.delta_z;
        raw[i] = detail::cell_supremum(c.poly, pd, lo, hi, crit, d.sup_points[i - 1]) * one_minus;
    }
    const BigRational z_n = BigRational(n) * d.delta_z;
    const double c_last = tail_integral(c, z_n).value_d(to_double(z_n));
    raw[n] = c_last * one_minus / dz;

    double sum = 0;
    for (double v : raw) sum += v;
    if (!(sum > 0))
        throw SuffixConditionFailed("kernel vector total is not positive at dz=" +
                                    to_string(d.delta_z));
    d.k_tilde = 1.0 / sum;
    d.c_vec.resize(n + 1);
    for (unsigned i = 0; i <= n; ++i) d.c_vec[i] = raw[i] * d.k_tilde;

    double suffix = 0;
    for (unsigned k = n + 1; k-- > 0;) {
        suffix += d.c_vec[k];
        if (suffix < 0)
            throw SuffixConditionFailed("suffix sum negative at slot " + std::to_string(k) +
                                        " for dz=" + to_string(d.delta_z) +
                                        "; refine the grid");
    }

    d.e0_vec.resize(n);
    for (unsigned i = 0; i < n; ++i) d.e0_vec[i] = std::exp(-static_cast<double>(i) * dz);
    d.g_vec.assign(2 * n, 0.0);
    for (unsigned i = 0; i <= n; ++i)
        for (unsigned j = 0; j < n; ++j) d.g_vec[i + j] += d.c_vec[i] * d.e0_vec[j];
    return d;
}

// ---------------------------------------------------------------------------
// convergence harness

struct Theorem2Level {
    unsigned n = 0;
    double z_end = 0;
    double delta_z = 0;
    bool applicable = false;         // discrete convolution entrywise >= 0
    bool sign_ok = false;            // positive continuous values stay positive discretely
    bool majorization_holds = false;
    double min_margin = 0;
    double error_metric = 0;         // max_{j<n} |G[j]/k_tilde - g(z_j)|
    double g_min = 0;
};

struct Theorem2Report {
    std::vector<Theorem2Level> levels;
    bool metric_nonincreasing = false;
    bool witness_checked = false;
    bool witness_ok = false;
    size_t witness_transfers = 0;
};

// Runs a refining schedule of discretizations against the exact continuous
// convolution g = c * e^{-z}: positive values of g must stay nonnegative on
// the grid, the padded exponential must majorize the discrete convolution
// whenever it is nonnegative, the deviation metric must improve across the
// last two levels, and the finest level must yield a valid doubly stochastic
// witness.
inline Theorem2Report verify_theorem2_convergence(
    const PolyExpFn& c, const std::vector<std::pair<BigRational, unsigned>>& schedule,
    double tolerance = 1e-9) {
    if (schedule.empty()) throw std::invalid_argument("convergence: empty schedule");
    for (size_t l = 1; l < schedule.size(); ++l) {
        if (schedule[l].second != 2 * schedule[l - 1].second)
            throw std::invalid_argument("convergence: n must double at each level");
        if (schedule[l].first < schedule[l - 1].first)
            throw std::invalid_argument("convergence: z_end must be nondecreasing");
    }
    const EntryConditions entry = theorem2_entry_conditions(c);
    if (!entry.ok()) throw EntryConditionsFailed("kernel fails entry conditions");

    const PolyExpFn g = convolve_exp(c);
    const std::vector<double> gd = g.poly.coeffs_d();

    Theorem2Report report;
    std::vector<Theorem2Discretization> grids;
    for (const auto& [z_end, n] : schedule) {
        Theorem2Discretization d = build_discretization(c, z_end, n);
        Theorem2Level lvl;
        lvl.n = n;
        lvl.z_end = to_double(z_end);
        lvl.delta_z = to_double(d.delta_z);

        lvl.g_min = d.g_vec[0];
        for (double v : d.g_vec) lvl.g_min = std::min(lvl.g_min, v);
        lvl.applicable = lvl.g_min >= 0.0;

        // sign correspondence on the first n grid points, decided with the
        // exact rational sign of the polynomial part
        lvl.sign_ok = true;
        lvl.error_metric = 0;
        for (unsigned j = 0; j < n; ++j) {
            const BigRational z_j = BigRational(j) * d.delta_z;
            const double zd = to_double(z_j);
            const double g_val = eval_horner(gd, zd) * std::exp(-zd);
            if (g_val >= tolerance && sign(g.poly.eval(z_j)) > 0 && d.g_vec[j] < 0.0) {
                lvl.sign_ok = false;
                throw TheoremViolation("discrete entry negative where the continuous "
                                       "convolution is positive, at z=" + to_string(z_j));
            }
            lvl.error_metric =
                std::max(lvl.error_metric, std::abs(d.g_vec[j] / d.k_tilde - g_val));
        }

        if (lvl.applicable) {
            std::vector<double> e0_padded = d.e0_vec;
            e0_padded.resize(2 * n, 0.0);
            const MajorizationVerdict v = majorizes_discrete(e0_padded, d.g_vec, tolerance);
            lvl.majorization_holds = v.holds;
            lvl.min_margin = v.min_margin;
            if (!v.holds)
                throw TheoremViolation("discrete exponential fails to majorize a nonnegative "
                                       "discrete convolution at n=" + std::to_string(n));
        }
        report.levels.push_back(lvl);
        grids.push_back(std::move(d));
    }

    report.metric_nonincreasing = true;
    if (report.levels.size() >= 2) {
        const Theorem2Level& a = report.levels[report.levels.size() - 2];
        const Theorem2Level& b = report.levels.back();
        if (b.error_metric > a.error_metric * (1.0 + 1e-12) + 1e-15) {
            report.metric_nonincreasing = false;
            throw ConvergenceViolation("deviation metric grew from " +
                                       std::to_string(a.error_metric) + " to " +
                                       std::to_string(b.error_metric) +
                                       " across the last two levels");
        }
    }

    const Theorem2Discretization& fine = grids.back();
    if (report.levels.back().applicable) {
        std::vector<double> e0_padded = fine.e0_vec;
        e0_padded.resize(2 * fine.n, 0.0);
        const TransferSequence seq =
            robin_hood_decompose(e0_padded, fine.g_vec, std::max(tolerance, 1e-9));
        report.witness_checked = true;
        report.witness_transfers = seq.transfers.size();
        report.witness_ok = is_doubly_stochastic(seq.witness, 1e-12);
        if (!report.witness_ok)
            throw TheoremViolation("transfer witness is not doubly stochastic on the finest grid");
    }
    return report;
}

}  // namespace phasemaj
