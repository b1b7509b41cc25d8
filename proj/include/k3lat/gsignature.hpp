#pragma once

#include "k3lat/group.hpp"
#include "k3lat/types.hpp"

#include <optional>

namespace k3lat {

struct SurfaceDatum {
    long self_intersection = 0;
    long euler_characteristic = 0;
};

// Local data of a fixed-point set of an order-p action: isolated points of type (chi, chi^q) and fixed surfaces.
struct DefectInput {
    long p = 2;
    std::vector<long> points;
    std::vector<SurfaceDatum> surfaces;
};

// Sum over nontrivial p-th roots of unity z of (1+z)(1+z^q) / ((1-z)(1-z^q)), evaluated in Q[x]/Phi_p.
Rat defect_point(long p, long q);
Rat defect_surface(long p, long self_int);

struct BalanceReport {
    Rat lhs;   // p * sigma(N/G)
    Rat rhs;   // sigma(N) + defects
    bool balanced = false;
    Rat discrepancy;   // lhs - rhs
};
BalanceReport signature_balance(long p, long sigma_N, long sigma_quotient, const DefectInput& in);

struct MaxDefectReport {
    long p = 0;
    std::vector<Rat> values;   // values[q - 1]
    long argmax = 0;
    Rat max;
    bool strict_at_minus_one = false;
};
MaxDefectReport max_defect_check(long p);

struct NoetherReport {
    Rat value;
    bool equals_eight = false;
};
// For p = 2 evaluates sum (chi(C) + C.C); otherwise m + sum Def_z / (p-1) + sum (chi(C) + (p+1)/3 C.C).
NoetherReport noether_identity_check(const DefectInput& in);

struct FixedPointPrediction {
    long p = 0;
    long nu = 0;
    long euler = 0;
    long quotient_signature = 0;
    Rat total_defect;
    std::optional<long> edmonds_b0_plus_b2;
    std::optional<long> edmonds_b1;
    long moduli_dimension = 0;
};
// With (t, c, r) supplied the Edmonds counts are filled and checked against euler = b0 - b1 + b2.
FixedPointPrediction fixed_point_predictions(long p, long nu, const std::optional<ZGDecomposition>& zg = std::nullopt);

}  // namespace k3lat
