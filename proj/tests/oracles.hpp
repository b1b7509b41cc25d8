#pragma once

// Independent reference computations used to freeze expected values.

#include "k3lat/lattice.hpp"

#include <functional>
#include <map>

namespace k3test {

using namespace k3lat;

// Largest t >= 0 with t^2 <= r.
inline long isqrt_floor(const Rat& r) {
    long t = 0;
    while (Rat((t + 1) * (t + 1)) <= r) ++t;
    return t;
}

// Box search: |x_i|^2 <= bound * (G^{-1})_ii by Cauchy-Schwarz; positive definite G.
inline std::map<std::string, Int> naive_box_vectors(const IntMatrix& g, const Int& bound) {
    const Eigen::Index n = g.rows();
    RatMatrix inv = inverse(to_rat(g));
    std::vector<long> box(n);
    for (Eigen::Index i = 0; i < n; ++i) box[i] = isqrt_floor(Rat(bound) * inv(i, i));
    std::map<std::string, Int> out;
    IntVector x = IntVector::Zero(n);
    std::function<void(Eigen::Index)> rec = [&](Eigen::Index i) {
        if (i == n) {
            Int nrm = x.dot(g * x);
            if (nrm > 0 && nrm <= bound) {
                IntVector y = x;
                for (Eigen::Index k = 0; k < n; ++k)
                    if (y(k) != 0) {
                        if (y(k) < 0) y = -y;
                        break;
                    }
                out[key(IntMatrix(y))] = nrm;
            }
            return;
        }
        for (long v = -box[i]; v <= box[i]; ++v) {
            x(i) = v;
            rec(i + 1);
        }
        x(i) = 0;
    };
    rec(0);
    return out;
}

}  // namespace k3test
