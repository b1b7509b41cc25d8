#include "k3lat/gsignature.hpp"

#include "k3lat/poly.hpp"

namespace k3lat {

namespace {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

RatPoly monomial(long k, const Rat& c) {
    RatPoly f(static_cast<std::size_t>(k) + 1, Rat(0));
    f[static_cast<std::size_t>(k)] = c;
    return f;
}

RatPoly reduce(const RatPoly& f, const RatPoly& m) {
    RatPoly q, r;
    divmod(f, m, q, r);
    return r;
}

}  // namespace

Rat defect_point(long p, long q) {
    if (!is_prime(p)) throw Error("invalid-prime", std::to_string(p) + " is not prime");
    q = ((q % p) + p) % p;
    if (q == 0) throw Error("invalid-character", "q must be a unit mod p");
    const RatPoly phi = to_rat(cyclotomic(static_cast<int>(p)));
    const RatPoly one{Rat(1)};
    RatPoly total;
    for (long k = 1; k < p; ++k) {
        RatPoly z = reduce(monomial(k, 1), phi);
        RatPoly zq = reduce(monomial(k * q % p, 1), phi);
        RatPoly num = reduce(mul(add(one, z), add(one, zq)), phi);
        RatPoly den = reduce(mul(sub(one, z), sub(one, zq)), phi);
        total = add(total, reduce(mul(num, inverse_mod(den, phi)), phi));
    }
    total = trim(total);
    if (total.size() > 1) throw Error("internal", "defect sum is not rational");
    return total.empty() ? Rat(0) : total[0];
}

Rat defect_surface(long p, long self_int) { return Rat(p * p - 1) * Rat(self_int) / Rat(3); }

BalanceReport signature_balance(long p, long sigma_N, long sigma_quotient, const DefectInput& in) {
    BalanceReport r;
    r.lhs = Rat(p * sigma_quotient);
    r.rhs = Rat(sigma_N);
    for (long q : in.points) r.rhs += defect_point(p, q);
    for (const auto& c : in.surfaces) r.rhs += defect_surface(p, c.self_intersection);
    r.discrepancy = r.lhs - r.rhs;
    r.balanced = r.discrepancy == 0;
    return r;
}

MaxDefectReport max_defect_check(long p) {
    if (p % 2 == 0) throw Error("invalid-prime", "p must be odd");
    MaxDefectReport r;
    r.p = p;
    for (long q = 1; q < p; ++q) {
        r.values.push_back(defect_point(p, q));
        if (q == 1 || r.values.back() > r.max) {
            r.max = r.values.back();
            r.argmax = q;
        }
    }
    r.strict_at_minus_one = r.argmax == p - 1 && r.max == Rat((p - 1) * (p - 2)) / Rat(3);
    for (long q = 1; q < p - 1; ++q)
        if (r.values[static_cast<std::size_t>(q - 1)] >= r.max) r.strict_at_minus_one = false;
    return r;
}

NoetherReport noether_identity_check(const DefectInput& in) {
    NoetherReport r;
    const long p = in.p;
    if (p == 2) {
        for (const auto& c : in.surfaces) r.value += Rat(c.euler_characteristic + c.self_intersection);
    } else {
        r.value = Rat(static_cast<long>(in.points.size()));
        for (long q : in.points) r.value += defect_point(p, q) / Rat(p - 1);
        for (const auto& c : in.surfaces)
            r.value += Rat(c.euler_characteristic) + Rat(p + 1) * Rat(c.self_intersection) / Rat(3);
    }
    r.equals_eight = r.value == 8;
    return r;
}

FixedPointPrediction fixed_point_predictions(long p, long nu, const std::optional<ZGDecomposition>& zg) {
    if (nu * (p - 1) > 19) throw Error("rank-overflow", "nu(p-1) exceeds 19");
    FixedPointPrediction f;
    f.p = p;
    f.nu = nu;
    f.euler = 24 - nu * p;
    f.quotient_signature = nu * (p - 1) - 16;
    f.total_defect = Rat((p - 1) * (nu * p - 16));
    f.moduli_dimension = 3 * (2 * nu - 5);
    if (zg) {
        f.edmonds_b0_plus_b2 = zg->t + 2;
        f.edmonds_b1 = zg->c;
        if (*f.edmonds_b0_plus_b2 - *f.edmonds_b1 != f.euler)
            throw Error("inconsistent", "Edmonds counts disagree with the Euler characteristic");
    }
    return f;
}

}  // namespace k3lat
