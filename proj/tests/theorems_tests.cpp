#include <catch2/catch_amalgamated.hpp>

#include <phasemaj/theorems.hpp>

#include <cmath>
#include <random>

#include "testutil.hpp"

using namespace phasemaj;
using testutil::random_rational;

namespace {

using RVec = std::vector<BigRational>;

BigRational sum_of(const RVec& v) {
    BigRational s = 0;
    for (const BigRational& x : v) s += x;
    return s;
}

BigRational pow_of(const BigRational& a, unsigned e) {
    BigRational r = 1;
    for (unsigned i = 0; i < e; ++i) r *= a;
    return r;
}

// independent construction of the window vector: shift v0 to slot k, subtract
// the shift to slot k-1
RVec shifted_difference(unsigned n, const BigRational& a, unsigned k) {
    const RVec v0 = build_v0(n, a);
    RVec w(2 * n);
    for (size_t i = 0; i < w.size(); ++i) {
        if (i >= k && i - k < n) w[i] += v0[i - k];
        if (i + 1 >= k && i + 1 - k < n) w[i] -= v0[i + 1 - k];
    }
    return w;
}

BigRational random_unit_interval(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> den(2, 9);
    const long d = den(rng);
    std::uniform_int_distribution<long> num(1, d - 1);
    return frac(num(rng), d);
}

void replay_transfers(const ConeVertexResult& res, unsigned n, const BigRational& a) {
    RVec w = build_v0(n, a);
    w.resize(2 * n);
    for (const ExactTransfer& t : res.transfers) {
        REQUIRE(t.amount >= 0);
        w[t.from] -= t.amount;
        w[t.to] += t.amount;
    }
    REQUIRE(w == res.vertex);
}

}  // namespace

TEST_CASE("geometric base vector") {
    REQUIRE(build_v0(3, frac(1, 2)) == RVec{1, frac(1, 2), frac(1, 4)});
    REQUIRE(build_v0(1, frac(3, 4)) == RVec{1});
    REQUIRE(build_v0(4, frac(1, 3)) == RVec{1, frac(1, 3), frac(1, 9), frac(1, 27)});

    REQUIRE_THROWS_AS(build_v0(0, frac(1, 2)), std::invalid_argument);
    REQUIRE_THROWS_AS(build_v0(3, BigRational(0)), std::invalid_argument);
    REQUIRE_THROWS_AS(build_v0(3, BigRational(1)), std::invalid_argument);
    REQUIRE_THROWS_AS(build_v0(3, frac(3, 2)), std::invalid_argument);
}

TEST_CASE("window building blocks") {
    // n = 3, a = 1/2: window (-1, 1-a, a-a^2, a^2) starting at slot k-1
    REQUIRE(build_vk_uk(3, frac(1, 2), 1) ==
            RVec{-1, frac(1, 2), frac(1, 4), frac(1, 4), 0, 0});
    REQUIRE(build_vk_uk(3, frac(1, 2), 3) ==
            RVec{0, 0, -1, frac(1, 2), frac(1, 4), frac(1, 4)});
    REQUIRE_THROWS_AS(build_vk_uk(3, frac(1, 2), 0), std::invalid_argument);
    REQUIRE_THROWS_AS(build_vk_uk(3, frac(1, 2), 4), std::invalid_argument);

    // equals the shifted-difference construction and sums to zero
    std::mt19937_64 rng(1204);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<unsigned> pick_n(1, 7);
        const unsigned n = pick_n(rng);
        const BigRational a = random_unit_interval(rng);
        std::uniform_int_distribution<unsigned> pick_k(1, n);
        const unsigned k = pick_k(rng);
        const RVec w = build_vk_uk(n, a, k);
        REQUIRE(w == shifted_difference(n, a, k));
        REQUIRE(sum_of(w) == 0);
    }
}

TEST_CASE("kernel assembly") {
    REQUIRE(kernel_x(3, RVec{0, 0, 0}) == RVec{1, 0, 0, 0});
    REQUIRE(kernel_x(3, RVec{1, 1, 1}) == RVec{0, 0, 0, 1});
    // a kernel with a negative element still corresponds to a table vertex
    REQUIRE(kernel_x(3, RVec{0, frac(1, 2), 0}) == RVec{1, frac(-1, 2), frac(1, 2), 0});
    REQUIRE(sum_of(kernel_x(4, RVec{frac(1, 3), 2, 0, frac(7, 5)})) == 1);
}

TEST_CASE("suffix-sum decomposition") {
    {
        const Lemma1Result r = lemma1_decompose(RVec{1, 0, 0});
        REQUIRE(r.success);
        REQUIRE(r.lambdas == RVec{1, 0, 0});
        REQUIRE(r.first_violation == -1);
    }
    {
        const Lemma1Result r = lemma1_decompose(RVec{frac(1, 2), frac(-1, 4), frac(3, 4)});
        REQUIRE(r.success);
        REQUIRE(r.lambdas == RVec{1, frac(1, 2), frac(3, 4)});
    }
    {
        const Lemma1Result r = lemma1_decompose(RVec{1, 1, -1});
        REQUIRE_FALSE(r.success);
        REQUIRE(r.first_violation == 2);
        REQUIRE(r.lambdas == RVec{1, 0, -1});
        // the suffix map inverts regardless of feasibility
        REQUIRE(lemma1_reconstruct(r.lambdas) == RVec{1, 1, -1});
    }

    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<size_t> pick_n(1, 9);
        RVec x(pick_n(rng));
        for (BigRational& v : x) v = random_rational(rng);
        REQUIRE(lemma1_reconstruct(lemma1_decompose(x).lambdas) == x);
    }

    // decomposing a kernel recovers lambda_0 = 1 and the lambdas themselves
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<unsigned> pick_n(1, 6);
        const unsigned n = pick_n(rng);
        RVec lambdas(n);
        for (BigRational& l : lambdas) {
            std::uniform_int_distribution<long> num(0, 16);
            l = frac(num(rng), 8);
        }
        const RVec x = kernel_x(n, lambdas);
        const Lemma1Result r = lemma1_decompose(x);
        REQUIRE(r.success);
        REQUIRE(r.lambdas[0] == 1);
        for (unsigned k = 1; k <= n; ++k) REQUIRE(r.lambdas[k] == lambdas[k - 1]);
        REQUIRE(lemma1_reconstruct(r.lambdas) == x);
    }
}

TEST_CASE("convolution of kernel and base vector") {
    const BigRational h = frac(1, 2);
    REQUIRE(convolution_G({3, h, RVec{0, 0, 0}}) ==
            RVec{1, frac(1, 2), frac(1, 4), 0, 0, 0});
    REQUIRE(convolution_G({3, h, RVec{1, 1, 1}}) ==
            RVec{0, 0, 0, 1, frac(1, 2), frac(1, 4)});
    REQUIRE(convolution_G({3, h, RVec{0, frac(1, 2), 0}}) ==
            RVec{1, 0, frac(1, 2), frac(1, 8), frac(1, 8), 0});

    REQUIRE_THROWS_AS(convolution_G({3, frac(3, 2), RVec{0, 0, 0}}), std::invalid_argument);
    REQUIRE_THROWS_AS(convolution_G({3, h, RVec{0, 0}}), std::invalid_argument);

    // the direct sum of window vectors and the Toeplitz product are
    // cross-checked inside every call; negative lambdas are allowed here
    std::mt19937_64 rng(8080);
    for (int trial = 0; trial < 500; ++trial) {
        std::uniform_int_distribution<unsigned> pick_n(1, 8);
        const unsigned n = pick_n(rng);
        const BigRational a = random_unit_interval(rng);
        RVec lambdas(n);
        for (BigRational& l : lambdas) {
            std::uniform_int_distribution<long> num(-16, 16);
            l = frac(num(rng), 8);
        }
        const RVec g = convolution_G({n, a, lambdas});
        REQUIRE(g.size() == 2 * n);
        REQUIRE(sum_of(g) == sum_of(build_v0(n, a)));
    }
}

TEST_CASE("exact majorization verdicts") {
    {
        const ExactMajorization m = majorizes_exact(RVec{1, frac(1, 2), frac(1, 4)},
                                                    RVec{frac(3, 4), frac(1, 2), frac(1, 2)});
        REQUIRE(m.holds);
        REQUIRE(m.total_x == m.total_y);
        REQUIRE(m.min_margin == 0);
        REQUIRE(m.argmin == 2);
    }
    {
        // totals differ: not majorized even though prefixes lead
        const ExactMajorization m = majorizes_exact(RVec{2, 1}, RVec{1, 1});
        REQUIRE_FALSE(m.holds);
    }
    {
        const ExactMajorization m = majorizes_exact(RVec{1, 1}, RVec{2, 0});
        REQUIRE_FALSE(m.holds);
        REQUIRE(m.min_margin == -1);
        REQUIRE(m.argmin == 0);
    }
    {
        // shorter vector is padded with zeros
        const ExactMajorization m = majorizes_exact(RVec{1}, RVec{frac(1, 2), frac(1, 2)});
        REQUIRE(m.holds);
        REQUIRE(m.min_margin == 0);
    }
}

TEST_CASE("discrete theorem verification") {
    const BigRational h = frac(1, 2);
    {
        const Theorem1Verdict v = verify_theorem1({3, h, RVec{0, 0, 0}});
        REQUIRE(v.applicable);
        REQUIRE(v.majorization.holds);
        REQUIRE(v.majorization.min_margin == 0);
    }
    {
        const Theorem1Verdict v = verify_theorem1({3, h, RVec{1, 1, 1}});
        REQUIRE(v.applicable);
        REQUIRE(v.majorization.holds);
        REQUIRE(v.majorization.min_margin == 0);
    }
    {
        const Theorem1Verdict v = verify_theorem1({3, h, RVec{frac(1, 2), 0, 0}});
        REQUIRE(v.applicable);
        REQUIRE(v.g == RVec{frac(1, 2), frac(3, 4), frac(3, 8), frac(1, 8), 0, 0});
        REQUIRE(v.majorization.holds);
        REQUIRE(v.majorization.min_margin == 0);
        REQUIRE(v.majorization.argmin == 3);
    }
    {
        // lambda_1 = 2 drives the leading kernel entry negative: G starts below
        // zero and the claim does not apply
        const Theorem1Verdict v = verify_theorem1({2, h, RVec{2, 0}});
        REQUIRE_FALSE(v.applicable);
        REQUIRE(v.negative_index == 0);
        REQUIRE(v.g[0] == -1);
    }

    REQUIRE_THROWS_AS(verify_theorem1({3, h, RVec{frac(-1, 2), 0, 0}}), std::invalid_argument);
    REQUIRE_THROWS_AS(verify_theorem1({3, h, RVec{0, 0}}), std::invalid_argument);
    REQUIRE_THROWS_AS(verify_theorem1({0, h, RVec{}}), std::invalid_argument);
}

TEST_CASE("dyadic lambda sampling is deterministic across worker counts") {
    const MonteCarloReport r1 = theorem1_monte_carlo(3, frac(1, 2), 400, 42, 1);
    const MonteCarloReport r3 = theorem1_monte_carlo(3, frac(1, 2), 400, 42, 3);
    const MonteCarloReport r4 = theorem1_monte_carlo(3, frac(1, 2), 400, 42, 4);

    REQUIRE(r1.samples == 400);
    REQUIRE(r1.applicable + r1.not_applicable == r1.samples);
    REQUIRE(r1.any_applicable);
    REQUIRE(r1.applicable > 0);
    REQUIRE(r1.not_applicable > 0);
    REQUIRE(r1.min_margin >= 0);

    for (const MonteCarloReport* r : {&r3, &r4}) {
        REQUIRE(r->samples == r1.samples);
        REQUIRE(r->applicable == r1.applicable);
        REQUIRE(r->not_applicable == r1.not_applicable);
        REQUIRE(r->min_margin == r1.min_margin);
    }

    const MonteCarloReport again = theorem1_monte_carlo(3, frac(1, 2), 400, 42, 2);
    REQUIRE(again.applicable == r1.applicable);
    REQUIRE(again.min_margin == r1.min_margin);

    const MonteCarloReport small = theorem1_monte_carlo(2, frac(1, 4), 200, 7, 2);
    REQUIRE(small.samples == 200);
    REQUIRE(small.applicable + small.not_applicable == 200);
}

TEST_CASE("polytope vertices for three coordinates") {
    struct Row {
        std::vector<char> zeroed;
        RVec vertex, lambdas;
    };
    auto check_all = [](const BigRational& a) {
        auto p = [&](unsigned e) { return pow_of(a, e); };
        const BigRational z = 0, one = 1;
        const std::vector<Row> rows = {
            {{0, 0, 0}, {p(0), p(1), p(2), z, z, z}, {z, z, z}},
            {{1, 1, 1}, {z, z, z, p(0), p(1), p(2)}, {one, one, one}},
            {{1, 0, 0}, {z, p(0), p(1), p(2), z, z}, {one, z, z}},
            {{0, 1, 0}, {p(0), z, p(1), p(2) - p(3), p(3), z}, {z, p(1), z}},
            {{0, 0, 1}, {p(0), p(1), z, p(2) - p(3), p(3) - p(4), p(4)}, {z, z, p(2)}},
            {{0, 1, 1}, {p(0), z, z, p(1) - p(3), p(2), p(3)}, {z, p(1), p(1)}},
            {{1, 0, 1}, {z, p(0), z, p(1), p(2) - p(3), p(3)}, {one, z, p(1)}},
            {{1, 1, 0}, {z, z, p(0), p(1), p(2), z}, {one, one, z}},
        };
        for (const Row& row : rows) {
            const ConeVertexResult res = cone_vertex({3, a, row.zeroed});
            REQUIRE(res.vertex == row.vertex);
            REQUIRE(res.lambdas == row.lambdas);
            REQUIRE(res.majorization.holds);
            // the lambda column feeds back through the kernel convolution
            REQUIRE(convolution_G({3, a, res.lambdas}) == res.vertex);
            replay_transfers(res, 3, a);
        }
    };
    check_all(frac(1, 2));
    check_all(frac(1, 3));

    // the untouched vertex needs no transfers
    const ConeVertexResult base = cone_vertex({3, frac(1, 2), {0, 0, 0}});
    REQUIRE(base.transfers.empty());

    REQUIRE_THROWS_AS(cone_vertex({0, frac(1, 2), {}}), std::invalid_argument);
    REQUIRE_THROWS_AS(cone_vertex({3, frac(1, 2), {1, 0}}), std::invalid_argument);
}

TEST_CASE("vertex as convex combination of window sums") {
    // the fully sliced-to-slot-2 vertex is the midpoint of two cone vectors
    // that both carry negative coordinates
    const BigRational a = frac(1, 2);
    RVec v0p = build_v0(3, a);
    v0p.resize(6);
    const RVec v1 = build_vk_uk(3, a, 1);
    const RVec v2 = build_vk_uk(3, a, 2);

    RVec first = v0p, second = v0p, mid(6);
    bool first_neg = false, second_neg = false;
    for (size_t i = 0; i < 6; ++i) {
        first[i] += 2 * v1[i];
        second[i] += 2 * v2[i];
        first_neg = first_neg || first[i] < 0;
        second_neg = second_neg || second[i] < 0;
        mid[i] = (first[i] + second[i]) / 2;
    }
    REQUIRE(first_neg);
    REQUIRE(second_neg);
    REQUIRE(mid == cone_vertex({3, a, {1, 1, 0}}).vertex);
}

TEST_CASE("symbolic vertices match the table patterns") {
    // slot values as polynomials in a, for every a at once
    const SymbolicVertex sym = cone_vertex_symbolic(3, {0, 1, 1});
    auto P = [](std::vector<BigRational> c) { return Poly(std::move(c)); };
    REQUIRE(sym.vertex == std::vector<Poly>{P({1}), P({}), P({}), P({0, 1, 0, -1}),
                                            P({0, 0, 1}), P({0, 0, 0, 1})});
    REQUIRE(sym.lambdas == std::vector<Poly>{P({}), P({0, 1}), P({0, 1})});

    // instantiating the symbolic build reproduces the exact numeric one
    const std::vector<std::vector<char>> all = {{0, 0, 0}, {1, 1, 1}, {1, 0, 0}, {0, 1, 0},
                                                {0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    for (const BigRational& a : {frac(1, 2), frac(1, 3)}) {
        for (const std::vector<char>& zeroed : all) {
            const SymbolicVertex s = cone_vertex_symbolic(3, zeroed);
            const ConeVertexResult num = cone_vertex({3, a, zeroed});
            for (size_t i = 0; i < 6; ++i) REQUIRE(s.vertex[i].eval(a) == num.vertex[i]);
            for (size_t i = 0; i < 3; ++i) REQUIRE(s.lambdas[i].eval(a) == num.lambdas[i]);
        }
    }

    REQUIRE_THROWS_AS(cone_vertex_symbolic(2, {1, 0, 0}), std::invalid_argument);
}

TEST_CASE("seven-coordinate vertex built in two steps") {
    auto P = [](std::vector<BigRational> c) { return Poly(std::move(c)); };
    auto mono = [&](unsigned e, int s = 1) {
        std::vector<BigRational> c(e + 1);
        c[e] = s;
        return Poly(std::move(c));
    };
    auto diff = [&](unsigned e1, unsigned e2) {
        std::vector<BigRational> c(e2 + 1);
        c[e1] = 1;
        c[e2] = -1;
        return Poly(std::move(c));
    };

    // first step: slice away coordinate 3 only
    const SymbolicVertex step1 = cone_vertex_symbolic(7, {0, 0, 1, 0, 0, 0, 0});
    REQUIRE(step1.vertex ==
            std::vector<Poly>{mono(0), mono(1), P({}), mono(2), mono(3), mono(4), mono(5),
                              diff(6, 7), diff(7, 8), mono(8), P({}), P({}), P({}), P({})});
    REQUIRE(step1.lambdas[2] == mono(2));

    // second step: also slice away coordinate 6
    const SymbolicVertex step2 = cone_vertex_symbolic(7, {0, 0, 1, 0, 0, 1, 0});
    REQUIRE(step2.vertex ==
            std::vector<Poly>{mono(0), mono(1), P({}), mono(2), mono(3), P({}), mono(4),
                              diff(5, 7), diff(6, 8), mono(7), diff(8, 9), diff(9, 10),
                              mono(10), P({})});
    REQUIRE(step2.lambdas[2] == mono(2));
    REQUIRE(step2.lambdas[5] == mono(4));
    for (size_t i : {0u, 1u, 3u, 4u, 6u}) REQUIRE(step2.lambdas[i] == P({}));

    // each step loses ground: base majorizes step one, step one majorizes step two
    const BigRational a = frac(1, 2);
    const ConeVertexResult n1 = cone_vertex({7, a, {0, 0, 1, 0, 0, 0, 0}});
    const ConeVertexResult n2 = cone_vertex({7, a, {0, 0, 1, 0, 0, 1, 0}});
    REQUIRE(n1.majorization.holds);
    REQUIRE(n2.majorization.holds);
    REQUIRE(majorizes_exact(n1.vertex, n2.vertex).holds);
    for (size_t i = 0; i < 14; ++i) {
        REQUIRE(step1.vertex[i].eval(a) == n1.vertex[i]);
        REQUIRE(step2.vertex[i].eval(a) == n2.vertex[i]);
    }
}

TEST_CASE("majorized points outside the lambda cone") {
    // lambda_2 < 0 leaves the cone, yet for small magnitudes the convolution
    // stays nonnegative and majorized; the instance gate still rejects it
    const BigRational a = frac(1, 2);
    RVec v0p = build_v0(3, a);
    v0p.resize(6);

    for (const BigRational& eps : {frac(1, 8), frac(1, 4)}) {
        const Theorem1Instance inst{3, a, RVec{a, -eps, a * a}};
        REQUIRE_THROWS_AS(inst.validate(), std::invalid_argument);
        const RVec g = convolution_G(inst);
        for (const BigRational& x : g) REQUIRE(x >= 0);
        REQUIRE(majorizes_exact(v0p, g).holds);
    }
    REQUIRE(convolution_G({3, a, RVec{a, frac(-1, 8), a * a}}) ==
            RVec{frac(1, 2), frac(7, 8), frac(1, 16), frac(7, 32), frac(1, 32), frac(1, 16)});

    // past the threshold (1-a)^2 the convolution itself goes negative
    const RVec broken = convolution_G({3, a, RVec{a, frac(-1, 2), a * a}});
    bool any_negative = false;
    for (const BigRational& x : broken) any_negative = any_negative || x < 0;
    REQUIRE(any_negative);
}

TEST_CASE("kernel entry conditions") {
    // pure point mass
    REQUIRE(theorem2_entry_conditions(PolyExpFn{1, Poly{}}).ok());
    // pure exponential
    REQUIRE(theorem2_entry_conditions(PolyExpFn{0, Poly({1})}).ok());
    // signed kernel with unit mass and nonnegative tails
    REQUIRE(theorem2_entry_conditions(PolyExpFn{-1, Poly({2})}).ok());

    const EntryConditions heavy = theorem2_entry_conditions(PolyExpFn{0, Poly({2})});
    REQUIRE_FALSE(heavy.total_is_one);
    REQUIRE(heavy.tails_nonneg);
    REQUIRE_FALSE(heavy.ok());

    const EntryConditions dipped = theorem2_entry_conditions(PolyExpFn{2, Poly({-1})});
    REQUIRE(dipped.total_is_one);
    REQUIRE_FALSE(dipped.tails_nonneg);
    REQUIRE_FALSE(dipped.ok());
}

TEST_CASE("discretization of a point-mass kernel is exact") {
    const Theorem2Discretization d = build_discretization(PolyExpFn{1, Poly{}}, 8, 4);
    REQUIRE(d.delta_z == 1);
    REQUIRE(d.k_tilde == 1.0);
    REQUIRE(d.c_vec == std::vector<double>{1.0, 0.0, 0.0, 0.0, 0.0});
    for (unsigned j = 0; j < 4; ++j) REQUIRE(d.g_vec[j] == d.e0_vec[j]);
    for (unsigned j = 4; j < 8; ++j) REQUIRE(d.g_vec[j] == 0.0);
}

TEST_CASE("discretization of the pure exponential kernel") {
    const PolyExpFn c{0, Poly({1})};
    const Theorem2Discretization d = build_discretization(c, 30, 64);
    REQUIRE(d.c_vec.size() == 65);
    for (double v : d.c_vec) REQUIRE(v >= 0.0);
    double total = 0;
    for (double v : d.c_vec) total += v;
    REQUIRE(std::abs(total - 1.0) < 1e-12);

    // the normalized convolution tracks z e^{-z} on the grid
    const double dz = to_double(d.delta_z);
    double metric = 0;
    for (unsigned j = 0; j < 64; ++j) {
        const double zj = j * dz;
        metric = std::max(metric, std::abs(d.g_vec[j] / d.k_tilde - zj * std::exp(-zj)));
    }
    REQUIRE(metric < 0.06);

    // cell suprema of a decreasing kernel sit at the left endpoints
    REQUIRE(d.sup_points.size() == 63);
    REQUIRE(d.sup_points[0] == 0.0);
    REQUIRE(std::abs(d.sup_points[5] - 5 * dz) < 1e-12);
}

TEST_CASE("discretization keeps the sign dip of a signed kernel") {
    // c = -delta + 2 e^{-z} convolves to (2z - 1) e^{-z}, negative below 1/2
    const Theorem2Discretization d =
        build_discretization(PolyExpFn{-1, Poly({2})}, 20, 16);
    REQUIRE(d.g_vec[0] < 0.0);
    for (unsigned j = 1; j < 32; ++j) REQUIRE(d.g_vec[j] > 0.0);
}

TEST_CASE("coarse grids can leave the feasible cone") {
    // a deep dip right of the origin with the compensating mass stranded
    // beyond the sampled cells: the kernel vector total goes negative
    const PolyExpFn c{-23, Poly({-18, 2, 20})};
    REQUIRE(theorem2_entry_conditions(c).ok());
    REQUIRE_THROWS_AS(build_discretization(c, frac(9, 5), 2), SuffixConditionFailed);
    // refining the same kernel restores feasibility
    REQUIRE_NOTHROW(build_discretization(c, frac(9, 5), 64));
}

TEST_CASE("discretization input validation") {
    REQUIRE_THROWS_AS(build_discretization(PolyExpFn{0, Poly({2})}, 10, 8),
                      EntryConditionsFailed);
    REQUIRE_THROWS_AS(build_discretization(PolyExpFn{1, Poly{}}, 10, 1),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(build_discretization(PolyExpFn{1, Poly{}}, 0, 8),
                      std::invalid_argument);
}

TEST_CASE("refinement schedule for the exponential kernel") {
    const PolyExpFn c{0, Poly({1})};
    const Theorem2Report report =
        verify_theorem2_convergence(c, {{30, 8}, {30, 16}, {30, 32}});
    REQUIRE(report.levels.size() == 3);
    for (const Theorem2Level& lvl : report.levels) {
        REQUIRE(lvl.applicable);
        REQUIRE(lvl.sign_ok);
        REQUIRE(lvl.majorization_holds);
        REQUIRE(lvl.min_margin >= -1e-9);
        REQUIRE(lvl.g_min >= 0.0);
    }
    REQUIRE(report.levels[1].error_metric <= report.levels[0].error_metric);
    REQUIRE(report.levels[2].error_metric <= report.levels[1].error_metric);
    REQUIRE(report.metric_nonincreasing);
    REQUIRE(report.witness_checked);
    REQUIRE(report.witness_ok);
    REQUIRE(report.witness_transfers >= 1);
    REQUIRE(report.witness_transfers <= 2 * 63);
}

TEST_CASE("refinement schedule for the point-mass kernel is exact") {
    const Theorem2Report report =
        verify_theorem2_convergence(PolyExpFn{1, Poly{}}, {{20, 4}, {20, 8}});
    REQUIRE(report.levels[0].error_metric == 0.0);
    REQUIRE(report.levels[1].error_metric == 0.0);
    REQUIRE(report.levels.back().applicable);
    REQUIRE(report.witness_checked);
    REQUIRE(report.witness_ok);
    // the discrete convolution is the padded exponential itself
    REQUIRE(report.witness_transfers == 0);
}

TEST_CASE("refinement schedule for a kernel with a negative dip") {
    const Theorem2Report report =
        verify_theorem2_convergence(PolyExpFn{-1, Poly({2})}, {{20, 8}, {20, 16}});
    for (const Theorem2Level& lvl : report.levels) {
        REQUIRE_FALSE(lvl.applicable);
        REQUIRE(lvl.g_min < 0.0);
        REQUIRE(lvl.sign_ok);
    }
    REQUIRE(report.metric_nonincreasing);
    REQUIRE_FALSE(report.witness_checked);
}

TEST_CASE("refinement schedule validation") {
    const PolyExpFn c{0, Poly({1})};
    REQUIRE_THROWS_AS(verify_theorem2_convergence(c, {}), std::invalid_argument);
    REQUIRE_THROWS_AS(verify_theorem2_convergence(c, {{30, 8}, {30, 12}}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(verify_theorem2_convergence(c, {{30, 8}, {20, 16}}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(verify_theorem2_convergence(PolyExpFn{0, Poly({2})}, {{30, 8}}),
                      EntryConditionsFailed);
}
