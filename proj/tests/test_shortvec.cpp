#include "doctest.h"
#include "helpers.hpp"
#include "k3lat/shortvec.hpp"
#include "k3lat/standard.hpp"
#include "oracles.hpp"

using namespace k3test;

namespace {

// E8 norm-2 vectors by direct coordinate search in the model Z^8 + (Z+1/2)^8 with even coordinate sum.
int e8_roots_in_coordinates() {
    int count = 0;
    std::vector<int> x(8);
    std::function<void(int)> integral = [&](int i) {
        if (i == 8) {
            int s = 0, n = 0;
            for (int v : x) {
                s += v;
                n += v * v;
            }
            if (n == 2 && s % 2 == 0) ++count;
            return;
        }
        for (int v = -1; v <= 1; ++v) {
            x[i] = v;
            integral(i + 1);
        }
    };
    integral(0);
    for (int mask = 0; mask < 256; ++mask) {
        int s2 = 0;   // twice the coordinate sum
        for (int i = 0; i < 8; ++i) s2 += (mask >> i & 1) ? 1 : -1;
        if (s2 % 4 == 0) ++count;   // all coordinates +-1/2 have norm 2
    }
    return count;
}

}  // namespace

TEST_CASE("enumeration examples") {
    CHECK(e8_roots_in_coordinates() == 240);
    auto e8 = root_lattice("E", 8).lattice;
    auto roots = enumerate_vectors(e8, Int(2));
    CHECK(2 * roots.size() == 240);
    for (std::size_t i = 1; i < roots.size(); ++i) CHECK(lex_less(roots[i - 1], roots[i]));
    auto a2 = root_lattice("A", 2).lattice;
    auto r2 = enumerate_vectors(a2, Int(2));
    CHECK(r2.size() == 3);
    CHECK(r2[0] == vec({0, 1}));
    CHECK(r2[1] == vec({1, 0}));
    CHECK(r2[2] == vec({1, 1}));
    auto e8m2 = rescale(e8, Int(-2));
    CHECK(enumerate_vectors(e8m2, Int(-2)).empty());
    CHECK(2 * enumerate_vectors(e8m2, Int(-4)).size() == 240);
    CHECK_THROWS_WITH_AS(enumerate_vectors(hyperbolic_u().lattice, Int(2)), doctest::Contains("indefinite-unsupported"), Error);
}

TEST_CASE("minus two vectors") {
    auto r = has_minus_two_vector(Lattice(mat({{-2}})));
    CHECK(r.found);
    CHECK(r.witness == vec({1}));
    CHECK_FALSE(has_minus_two_vector(Lattice(IntMatrix(0, 0))).found);
    CHECK_FALSE(has_minus_two_vector(Lattice(mat({{-4, 0, 0, 0}, {0, -4, 0, 0}, {0, 0, -4, 0}, {0, 0, 0, -4}}))).found);
    CHECK_THROWS_WITH_AS(has_minus_two_vector(Lattice(mat({{2}}))), doctest::Contains("wrong-signature"), Error);
}

TEST_CASE("root system classification") {
    auto a2m = rescale(root_lattice("A", 2).lattice, Int(-1));
    auto rs = classify_root_system(a2m);
    CHECK(rs.label() == "A2");
    CHECK(rs.spanning);
    CHECK(classify_root_system(rescale(root_lattice("E", 8).lattice, Int(-2))).label() == "empty");
    Lattice a1a1(mat({{-2, 0}, {0, -2}}));
    auto r11 = classify_root_system(a1a1);
    CHECK(r11.label() == "A1^2");
    CHECK(r11.spanning);
    for (std::string lbl : {"A1", "A3", "A7", "D4", "D5", "D8", "E6", "E7", "E8"}) {
        auto l = rescale(root_lattice(lbl).lattice, Int(-1));
        auto c = classify_root_system(l);
        CHECK(c.label() == lbl);
        CHECK(c.spanning);
        CHECK(c.components.size() == 1);
    }
    auto e8m = rescale(root_lattice("E", 8).lattice, Int(-1));
    CHECK(classify_root_system(direct_sum(e8m, e8m)).label() == "E8^2");
}

TEST_CASE("minimal norm and kissing number") {
    auto e8 = root_lattice("E", 8).lattice;
    auto m = min_norm_and_kissing(e8);
    CHECK(m.min_norm == 2);
    CHECK(m.count == 240);
    auto m2 = min_norm_and_kissing(rescale(e8, Int(-2)));
    CHECK(m2.min_norm == 4);
    CHECK(m2.count == 240);
    CHECK_THROWS_WITH_AS(min_norm_and_kissing(Lattice(IntMatrix(0, 0))), doctest::Contains("empty-lattice"), Error);
    // invariance under unimodular base change
    std::mt19937_64 rng(7);
    for (int t = 0; t < 10; ++t) {
        IntMatrix u = random_unimodular(8, rng, 20);
        Lattice conj(IntMatrix(u * e8.gram() * u.transpose()));
        auto mc = min_norm_and_kissing(conj);
        CHECK(mc.min_norm == 2);
        CHECK(mc.count == 240);
    }
}

TEST_CASE("lattice isometry") {
    Lattice a1(mat({{2}}));
    auto r = lattice_isometry(a1, Lattice(mat({{2}})));
    CHECK(r.status == SearchStatus::found);
    CHECK((r.T == mat({{1}}) || r.T == mat({{-1}})));
    IntMatrix a1m8 = IntMatrix::Zero(8, 8);
    for (int i = 0; i < 8; ++i) a1m8(i, i) = -2;
    auto e8m2 = rescale(root_lattice("E", 8).lattice, Int(-2));
    auto neg = lattice_isometry(Lattice(a1m8), e8m2);
    CHECK(neg.status == SearchStatus::none);
    CHECK(neg.reason == "norm-histogram");
    std::mt19937_64 rng(11);
    for (std::string lbl : {"A2", "A4", "D4", "E6", "E8"}) {
        auto l = root_lattice(lbl).lattice;
        IntMatrix u = random_unimodular(l.rank(), rng, 15);
        Lattice c(IntMatrix(u * l.gram() * u.transpose()));
        auto iso = lattice_isometry(l, c);
        REQUIRE(iso.status == SearchStatus::found);
        CHECK(IntMatrix(iso.T.transpose() * c.gram() * iso.T) == l.gram());
    }
}

TEST_CASE("discriminant form isometry") {
    Lattice zero(IntMatrix(0, 0));
    CHECK(disc_form_isometry(discriminant_group(zero), discriminant_group(zero)));
    auto e8m2 = rescale(root_lattice("E", 8).lattice, Int(-2));
    IntMatrix a1m2 = IntMatrix::Zero(8, 8);
    for (int i = 0; i < 8; ++i) a1m2(i, i) = -4;
    CHECK_FALSE(disc_form_isometry(discriminant_group(e8m2), discriminant_group(Lattice(a1m2))));
    CHECK(disc_form_isometry(discriminant_group(e8m2), discriminant_group(e8m2)));
    // A2 and A2(-1) have opposite forms; A2 is not self-opposite
    auto a2 = root_lattice("A", 2).lattice;
    auto a2m = rescale(a2, Int(-1));
    CHECK(disc_form_isometry(discriminant_group(a2m), opposite(discriminant_group(a2))));
    CHECK_FALSE(disc_form_isometry(discriminant_group(a2m), discriminant_group(a2)));
}

TEST_CASE("LLL returns a unimodular reduced basis") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        IntMatrix g = random_definite(5, rng, 3);
        auto r = lll_reduce(g);
        CHECK(abs(determinant(r.basis)) == 1);
        CHECK(IntMatrix(r.basis * g * r.basis.transpose()) == r.gram);
    }
}

TEST_CASE("property: Fincke-Pohst agrees with the naive box search") {
    std::mt19937_64 rng(1003);
    std::uniform_int_distribution<int> dim(1, 4), bnd(1, 12);
    for (int t = 0; t < 100; ++t) {
        const IntMatrix g = random_definite(dim(rng), rng);
        const Int bound = bnd(rng);
        const auto want = naive_box_vectors(g, bound);
        std::map<std::string, Int> got;
        for (const auto& sv : short_vectors(Lattice(g), bound)) got[key(IntMatrix(sv.v))] = sv.norm;
        CHECK(got == want);
        // the negative definite copy enumerates the same vectors
        CHECK(short_vectors(rescale(Lattice(g), Int(-1)), bound).size() == want.size());
    }
}
