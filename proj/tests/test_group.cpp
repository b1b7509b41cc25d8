#include "doctest.h"
#include "helpers.hpp"
#include "k3lat/group.hpp"
#include "k3lat/poly.hpp"
#include "k3lat/standard.hpp"

#include <map>

using namespace k3test;

namespace {

Lattice k3() { return k3_lattice().lattice; }

// Swap of the two E8(-1) summands, identity on U^3.
IntMatrix swap_involution() {
    IntMatrix g = IntMatrix::Zero(22, 22);
    for (int i = 0; i < 6; ++i) g(i, i) = 1;
    for (int i = 0; i < 8; ++i) {
        g(14 + i, 6 + i) = 1;
        g(6 + i, 14 + i) = 1;
    }
    return g;
}

IntVector unit(Eigen::Index n, Eigen::Index i) {
    IntVector v = IntVector::Zero(n);
    v(i) = 1;
    return v;
}

// Product of the simple reflections of E8(-1).
IntMatrix e8_coxeter() {
    Lattice e8m = rescale(root_lattice("E8").lattice, -1);
    IntMatrix c = identity(8);
    for (int i = 0; i < 8; ++i) c = IntMatrix(c * reflection(e8m, unit(8, i)));
    return c;
}

IntMatrix companion(const IntPoly& f) {
    const Eigen::Index n = static_cast<Eigen::Index>(f.size()) - 1;
    IntMatrix m = IntMatrix::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) m(i, i - 1) = 1;
    for (Eigen::Index i = 0; i < n; ++i) m(i, n - 1) = -f[static_cast<std::size_t>(i)];
    return m;
}

IntMatrix cycle(long p) {
    IntMatrix m = IntMatrix::Zero(p, p);
    for (long i = 0; i < p; ++i) m((i + 1) % p, i) = 1;
    return m;
}

}  // namespace

TEST_CASE("closure orders") {
    Lattice l = k3();
    CHECK(IsometryGroup(l, {identity(22)}).order() == 1);
    IntVector v = unit(22, 6);   // simple root of the first E8(-1)
    CHECK(IsometryGroup(l, {reflection(l, v)}).order() == 2);
    CHECK(IsometryGroup(l, {swap_involution()}).order() == 2);

    IntMatrix bad = identity(22);
    bad(0, 1) = 1;
    CHECK_THROWS_WITH_AS(IsometryGroup(l, {bad}).order(), doctest::Contains("preserve"), Error);
    try {
        IsometryGroup(l, {bad}).order();
    } catch (const Error& e) {
        CHECK(e.code() == "not-an-isometry");
    }
    Lattice u = hyperbolic_u().lattice;
    Lattice uu = direct_sum(u, u);
    IntMatrix t = mat({{1, 0, 0, 1}, {0, 1, 0, 0}, {0, -1, 1, 0}, {0, 0, 0, 1}});
    REQUIRE(preserves_gram(t, uu));
    try {
        IsometryGroup(uu, {t}).order();
        FAIL("expected not-finite");
    } catch (const Error& e) {
        CHECK(e.code() == "not-finite");
    }
}

TEST_CASE("fixed sublattices") {
    Lattice l = k3();
    IsometryGroup triv(l, {identity(22)});
    CHECK(fixed_sublattice(triv).rank() == 22);

    IsometryGroup sw(l, {swap_involution()});
    Sublattice f = fixed_sublattice(sw);
    CHECK(f.rank() == 14);
    CHECK(is_primitive(f));
    Signature s = signature(f.gram());
    CHECK(s.plus == 3);
    CHECK(s.minus == 11);
    CHECK(abs(determinant(f.gram())) == 256);
    DiscriminantForm d = discriminant_group(f.lattice());
    CHECK(d.orders == std::vector<Int>(8, 2));

    IntVector v = unit(22, 10);
    Sublattice fr = fixed_sublattice(IsometryGroup(l, {reflection(l, v)}));
    CHECK(fr.rank() == 21);
    for (Eigen::Index i = 0; i < fr.rank(); ++i) CHECK(fr.basis().row(i).dot(l.gram() * v) == 0);
}

TEST_CASE("coinvariant lattice of a reflection") {
    Lattice l = k3();
    IntVector v = unit(22, 15);
    CoinvariantResult r = coinvariant_L_G(IsometryGroup(l, {reflection(l, v)}));
    CHECK(r.mode == CoinvariantMode::pointwise_fixed_3_plane);
    REQUIRE(r.L_G.rank() == 1);
    CHECK(r.L_G.gram()(0, 0) == -2);
    IntVector w = r.L_G.basis().row(0).transpose();
    CHECK((w == v || w == IntVector(-v)));
}

TEST_CASE("coinvariant lattice of the swap involution") {
    Lattice l = k3();
    CoinvariantResult r = coinvariant_L_G(IsometryGroup(l, {swap_involution()}));
    CHECK(r.mode == CoinvariantMode::pointwise_fixed_3_plane);
    CHECK(r.L_G.rank() == 8);
    CHECK(signature(r.L_G.gram()).minus == 8);
    CHECK(determinant(r.L_G.gram()) == 256);
}

TEST_CASE("coinvariant lattice of -1 is zero") {
    Lattice l = k3();
    IntMatrix m = -identity(22);
    CoinvariantResult r = coinvariant_L_G(IsometryGroup(l, {m}));
    CHECK(r.mode == CoinvariantMode::rotation_on_3_plane);
    CHECK(r.L_G.rank() == 0);
    REQUIRE(r.p_types.size() == 1);
    CHECK(r.p_types[0] == "sign");
}

TEST_CASE("order-5 action with fixed positive part") {
    // Coxeter^6 on both E8(-1) summands, identity on U^3
    IntMatrix c6 = matrix_power(e8_coxeter(), 6);
    REQUIRE(matrix_order(c6) == 5);
    IntMatrix g = identity(22);
    g.block(6, 6, 8, 8) = c6;
    g.block(14, 14, 8, 8) = c6;
    Lattice l = k3();
    REQUIRE(preserves_gram(g, l));
    CoinvariantResult r = coinvariant_L_G(IsometryGroup(l, {g}));
    CHECK(r.mode == CoinvariantMode::pointwise_fixed_3_plane);
    CHECK(r.L_G.rank() == 16);
    CHECK(abs(determinant(r.L_G.gram())) == 1);
}

TEST_CASE("spinor norm examples") {
    Lattice l = k3();
    IntVector v = unit(22, 6);
    CHECK(spinor_plus_membership(reflection(l, v), l));
    // reflection in e + f (norm 2): x -> x - (x.w) w
    IntVector w = unit(22, 0) + unit(22, 1);
    IntMatrix s = identity(22) - w * (l.gram() * w).transpose();
    REQUIRE(preserves_gram(s, l));
    CHECK_FALSE(spinor_plus_membership(s, l));
    CHECK_FALSE(spinor_plus_membership(IntMatrix(-identity(22)), l));
    CHECK(spinor_plus_membership(swap_involution(), l));
    CHECK(spinor_plus_membership(identity(22), l));
    CHECK(preserves_positive_orientation(reflection(l, v), l));
    CHECK_FALSE(preserves_positive_orientation(s, l));
    CHECK_FALSE(preserves_positive_orientation(IntMatrix(-identity(22)), l));
}

TEST_CASE("reflection decomposition reproduces g") {
    Lattice l = k3();
    IntMatrix g = IntMatrix(reflection(l, unit(22, 7)) * swap_involution());
    auto vs = reflection_decomposition(g, l);
    RatMatrix G = to_rat(l.gram());
    RatMatrix h = RatMatrix::Identity(22, 22);
    for (const auto& v : vs) {
        Rat vv = v.dot(G * v);
        h = h * (RatMatrix::Identity(22, 22) - (v * (G * v).transpose()) * (Rat(2) / vv));
    }
    CHECK(h == to_rat(g));
    CHECK(vs.size() <= 22);
}

TEST_CASE("ZG decomposition examples") {
    Lattice l = k3();
    ZGDecomposition z = zg_decomposition(identity(22), 2);
    CHECK(z.t == 22);
    CHECK(z.c == 0);
    CHECK(z.r == 0);

    z = zg_decomposition(swap_involution(), 2);
    CHECK(z.t == 6);
    CHECK(z.c == 0);
    CHECK(z.r == 8);

    z = zg_decomposition(reflection(l, unit(22, 6)), 2);
    CHECK(z.t == 20);
    CHECK(z.c == 0);
    CHECK(z.r == 1);

    IntMatrix c = e8_coxeter();
    REQUIRE(matrix_order(c) == 30);
    z = zg_decomposition(matrix_power(c, 10), 3);
    CHECK(z.t == 0);
    CHECK(z.c == 4);
    CHECK(z.r == 0);
    z = zg_decomposition(matrix_power(c, 6), 5);
    CHECK(z.c == 2);

    try {
        zg_decomposition(matrix_power(c, 10), 2);
        FAIL("expected wrong-order");
    } catch (const Error& e) {
        CHECK(e.code() == "wrong-order");
    }
}

TEST_CASE("ZG decomposition requires g^p = 1") {
    IntMatrix g = mat({{0, -3}, {1, -1}});
    try {
        zg_decomposition(g, 3);
        FAIL("expected wrong-order");
    } catch (const Error& e) {
        CHECK(e.code() == "wrong-order");
    }
    CHECK(zg_decomposition(companion(cyclotomic(3)), 3).c == 1);
}

TEST_CASE("regular summand discriminant check") {
    Lattice l = k3();
    RegularSummandReport r = regular_summand_discriminant_check(swap_involution(), l, 2);
    CHECK(r.direct_summand);
    CHECK(r.r == 8);
    CHECK(r.elementary);
    CHECK(r.disc_dimension == 8);
    CHECK(r.consistent);

    r = regular_summand_discriminant_check(identity(22), l, 2);
    CHECK(r.r == 0);
    CHECK(r.disc_dimension == 0);
    CHECK(r.consistent);

    IntMatrix g = identity(22);
    g.block(6, 6, 8, 8) = matrix_power(e8_coxeter(), 10);
    try {
        regular_summand_discriminant_check(g, l, 3);
        FAIL("expected inapplicable");
    } catch (const Error& e) {
        CHECK(e.code() == "inapplicable");
    }
}

TEST_CASE("property: ZG decomposition recovers planted block counts") {
    std::mt19937_64 rng(20261014);
    for (long p : {2L, 3L, 5L, 7L}) {
        std::uniform_int_distribution<int> cnt(0, 3);
        for (int trial = 0; trial < 50; ++trial) {
            long t = cnt(rng), c = cnt(rng), r = cnt(rng);
            if (t + c + r == 0) t = 1;
            IntMatrix m(0, 0);
            for (long i = 0; i < t; ++i) m = block_diag(m, identity(1));
            for (long i = 0; i < c; ++i) m = block_diag(m, companion(cyclotomic(static_cast<int>(p))));
            for (long i = 0; i < r; ++i) m = block_diag(m, cycle(p));
            IntMatrix u = random_unimodular(m.rows(), rng);
            IntMatrix g = to_int(RatMatrix(to_rat(u) * to_rat(m) * inverse(to_rat(u))));
            ZGDecomposition z = zg_decomposition(g, p);
            CHECK(z.t == t);
            CHECK(z.c == c);
            CHECK(z.r == r);
            CHECK(z.t + z.c * (p - 1) + z.r * p == g.rows());
        }
    }
}

TEST_CASE("property: spinor membership is a homomorphism") {
    Lattice l = k3();
    IntMatrix r1 = reflection(l, unit(22, 6));
    IntVector w = unit(22, 0) + unit(22, 1);
    IntMatrix s = identity(22) - w * (l.gram() * w).transpose();
    std::vector<IntMatrix> gens{r1, s, swap_involution(), IntMatrix(-identity(22))};
    IsometryGroup G(l, gens);
    const auto& els = G.elements();
    REQUIRE(els.size() == 32);
    std::vector<bool> sp;
    for (const auto& e : els) {
        sp.push_back(spinor_plus_membership(e, l));
        CHECK(sp.back() == preserves_positive_orientation(e, l));
    }
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < els.size(); ++i) index[key(els[i])] = i;
    for (std::size_t i = 0; i < els.size(); ++i)
        for (std::size_t j = 0; j < els.size(); ++j) {
            auto it = index.find(key(IntMatrix(els[i] * els[j])));
            REQUIRE(it != index.end());
            CHECK(sp[it->second] == (sp[i] == sp[j]));
        }
}

TEST_CASE("property: fixed and coinvariant lattices on random reflection groups") {
    Lattice l = k3();
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> pick(6, 21);
    for (int trial = 0; trial < 10; ++trial) {
        // Weyl group of A1, A1^2 or A2
        int a = pick(rng), b = pick(rng);
        std::vector<IntMatrix> gens{reflection(l, unit(22, a)), reflection(l, unit(22, b))};
        IsometryGroup G(l, gens);
        Sublattice f = fixed_sublattice(G);
        CHECK(is_primitive(f));
        for (const auto& g : gens) CHECK(IntMatrix(g * f.basis().transpose()) == IntMatrix(f.basis().transpose()));
        CoinvariantResult r = coinvariant_L_G(G);
        CHECK(r.mode == CoinvariantMode::pointwise_fixed_3_plane);
        Signature s = signature(r.L_G.gram());
        CHECK(s.minus == r.L_G.rank());
        CHECK(s.minus == 19 - signature(f.gram()).minus);
        for (const auto& g : gens) {
            Sublattice img(l, IntMatrix((g * r.L_G.basis().transpose()).transpose()));
            CHECK(hermite_normal_form(img.basis()) == hermite_normal_form(r.L_G.basis()));
        }
        for (Eigen::Index i = 0; i < r.L_G.rank(); ++i)
            for (Eigen::Index j = 0; j < f.rank(); ++j) CHECK(r.L_G.basis().row(i).dot(l.gram() * f.basis().row(j).transpose()) == 0);
    }
}
