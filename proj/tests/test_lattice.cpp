#include "doctest.h"
#include "helpers.hpp"
#include "k3lat/standard.hpp"

using namespace k3test;

TEST_CASE("rescale") {
    auto u = hyperbolic_u().lattice;
    CHECK(rescale(u, Int(3)).gram() == mat({{0, 3}, {3, 0}}));
    CHECK(rescale(u, Int(1)) == u);
    auto e8 = root_lattice("E", 8).lattice;
    auto e8m2 = rescale(e8, Int(-2));
    CHECK(is_even(e8m2));
    CHECK(det(e8m2) == 256);
    CHECK(signature(e8m2) == Signature{0, 8, 0});
    CHECK_THROWS_WITH_AS(rescale(u, Int(0)), doctest::Contains("invalid-scale"), Error);
}

TEST_CASE("dual basis") {
    auto u = hyperbolic_u().lattice;
    RatMatrix d = dual_basis(u);
    CHECK(d == to_rat(mat({{0, 1}, {1, 0}})));
    Lattice a1(mat({{2}}));
    CHECK(dual_basis(a1)(0, 0) == Rat(1, 2));
    auto a2 = root_lattice("A", 2).lattice;
    CHECK(abs(determinant(dual_basis(a2))) == Rat(1, 3));
    // (L(n))^dual = (1/n) L^dual
    CHECK(dual_basis(rescale(a2, Int(5))) == RatMatrix(dual_basis(a2) / Rat(5)));
    Lattice deg(mat({{0}}), true);
    CHECK_THROWS_WITH_AS(dual_basis(deg), doctest::Contains("no-dual"), Error);
}

TEST_CASE("discriminant group") {
    auto e8 = root_lattice("E", 8).lattice;
    CHECK(discriminant_group(e8).orders.empty());

    Lattice a1m2(mat({{-4}}));
    auto d = discriminant_group(a1m2);
    REQUIRE(d.orders == std::vector<Int>{4});
    CHECK((*d.quadratic)(0) == frac_mod(Rat(-1, 4), Int(2)));

    auto u2 = rescale(hyperbolic_u().lattice, Int(2));
    auto u23 = direct_sum(direct_sum(u2, u2), u2);
    auto d6 = discriminant_group(u23);
    CHECK(d6.orders == std::vector<Int>(6, Int(2)));

    // generators really lie in the dual and q(x) = x.x mod 2
    auto a2 = root_lattice("A", 2).lattice;
    auto da2 = discriminant_group(a2);
    REQUIRE(da2.orders == std::vector<Int>{3});
    RatVector g = da2.generators.row(0).transpose();
    CHECK(is_integral(RatMatrix(to_rat(a2.gram()) * g)));
    CHECK((*da2.quadratic)(0) == frac_mod(a2.pair(g, g), Int(2)));
    CHECK((*da2.quadratic)(0) == Rat(2, 3));
    CHECK(da2.coordinates(g) == std::vector<Int>{1});
}

TEST_CASE("signature") {
    CHECK(signature(k3_lattice().lattice) == Signature{3, 19, 0});
    CHECK(signature(hyperbolic_u().lattice) == Signature{1, 1, 0});
    CHECK(signature(rescale(root_lattice("E", 8).lattice, Int(-1))) == Signature{0, 8, 0});
    CHECK(signature(mat({{0, 0}, {0, 0}})) == Signature{0, 0, 2});
    CHECK(signature(mat({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}})) == Signature{1, 1, 1});
}

TEST_CASE("orthogonal complement and saturation") {
    auto u = hyperbolic_u().lattice;
    Sublattice e(u, mat({{1, 0}}));
    CHECK(orthogonal_complement(e).basis() == mat({{1, 0}}));

    auto k3 = k3_lattice().lattice;
    IntMatrix b = IntMatrix::Zero(8, 22);
    for (int i = 0; i < 8; ++i) b(i, 6 + i) = 1;
    auto c = orthogonal_complement(Sublattice(k3, b));
    CHECK(c.rank() == 14);
    CHECK(abs(determinant(c.gram())) == 1);
    CHECK(signature(c.gram()) == Signature{3, 11, 0});

    Lattice z(mat({{1}}));
    auto s = saturation(Sublattice(z, mat({{2}})));
    CHECK(s.index == 2);
    CHECK(s.lattice.basis() == mat({{1}}));
    auto s1 = saturation(Sublattice(k3, b));
    CHECK(s1.index == 1);
}

TEST_CASE("direct sum and evenness") {
    auto u = hyperbolic_u().lattice;
    auto uu = direct_sum(u, u);
    CHECK(uu.rank() == 4);
    CHECK(signature(uu) == Signature{2, 2, 0});
    auto k3 = k3_lattice().lattice;
    CHECK(k3.rank() == 22);
    CHECK(abs(det(k3)) == 1);
    CHECK(is_even(k3));
    CHECK(direct_sum(u, Lattice(IntMatrix(0, 0))) == u);
    CHECK_FALSE(is_even(Lattice(mat({{1}}))));
    CHECK(is_even(Lattice(mat({{-4}}))));
}

TEST_CASE("smith normal form transforms") {
    IntMatrix a = mat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
    auto s = smith_normal_form(a);
    CHECK(IntMatrix(s.U * a * s.V) == s.D);
    CHECK(IntMatrix(s.V * s.Vinv) == identity(3));
    CHECK(s.diagonal() == std::vector<Int>{2, 6, 12});
    CHECK(hermite_normal_form(mat({{2, 4}, {3, 6}, {0, 1}})) == mat({{1, 0}, {0, 1}}));
}

TEST_CASE("round trip of induced lattices") {
    IntMatrix g = mat({{2, 1}, {1, 2}});
    RatMatrix half(1, 2);
    half << Rat(1), Rat(1);
    CHECK(induced_lattice(half, g).gram() == mat({{6}}));
}

namespace {

IntMatrix random_symmetric(Eigen::Index n, std::mt19937_64& rng, int spread) {
    std::uniform_int_distribution<int> d(-spread, spread);
    IntMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) g(i, j) = g(j, i) = d(rng);
    return g;
}

}  // namespace

TEST_CASE("property: discriminant order equals |det|") {
    std::mt19937_64 rng(1001);
    std::uniform_int_distribution<int> dim(1, 6);
    int cases = 0;
    while (cases < 200) {
        const IntMatrix g = random_symmetric(dim(rng), rng, 6);
        const Int d = determinant(g);
        if (d == 0) continue;
        ++cases;
        const DiscriminantForm f = discriminant_group(Lattice(g));
        Int prod = 1;
        for (const auto& o : f.orders) prod *= o;
        CHECK(prod == abs(d));
        CHECK(f.size() == abs(d));
        for (std::size_t i = 1; i < f.orders.size(); ++i) CHECK(f.orders[i] % f.orders[i - 1] == 0);
        const SmithResult s = smith_normal_form(g);
        CHECK(IntMatrix(s.U * g * s.V) == s.D);
        Int sd = 1;
        for (const auto& x : s.diagonal()) sd *= x;
        CHECK(abs(sd) == abs(d));
    }
}

TEST_CASE("property: signature is additive and congruence invariant") {
    std::mt19937_64 rng(1002);
    std::uniform_int_distribution<int> dim(1, 5);
    for (int t = 0; t < 100; ++t) {
        const IntMatrix a = random_symmetric(dim(rng), rng, 4), b = random_symmetric(dim(rng), rng, 4);
        const Signature sa = signature(a), sb = signature(b), ss = signature(block_diag(a, b));
        CHECK(ss.plus == sa.plus + sb.plus);
        CHECK(ss.minus == sa.minus + sb.minus);
        CHECK(ss.zero == sa.zero + sb.zero);
        CHECK(sa.plus + sa.minus == rank(to_rat(a)));
        const IntMatrix u = random_unimodular(a.rows(), rng);
        CHECK(signature(IntMatrix(u.transpose() * a * u)) == sa);
    }
}
