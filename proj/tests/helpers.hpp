#pragma once

#include "k3lat/lattice.hpp"

#include <initializer_list>
#include <random>

namespace k3test {

using namespace k3lat;

inline IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
    IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (auto& r : rows) {
        Eigen::Index j = 0;
        for (long v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

inline IntVector vec(std::initializer_list<long> xs) {
    IntVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (long x : xs) v(i++) = x;
    return v;
}

// Random unimodular matrix built from elementary operations.
inline IntMatrix random_unimodular(Eigen::Index n, std::mt19937_64& rng, int steps = 12) {
    IntMatrix u = identity(n);
    if (n < 2) return u;
    std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int s = 0; s < steps; ++s) {
        Eigen::Index i = pick(rng), j = pick(rng);
        if (i == j) continue;
        u.row(i) += Int(coef(rng)) * u.row(j);
    }
    return u;
}

// Random positive definite integral Gram matrix of the form B B^T with small entries.
inline IntMatrix random_definite(Eigen::Index n, std::mt19937_64& rng, int spread = 2) {
    std::uniform_int_distribution<int> d(-spread, spread);
    for (;;) {
        IntMatrix b(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) b(i, j) = d(rng);
        if (determinant(b) == 0) continue;
        return b * b.transpose();
    }
}

}  // namespace k3test
