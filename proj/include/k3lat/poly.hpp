#pragma once

#include "k3lat/types.hpp"

namespace k3lat {

// Coefficients from low to high degree.
using IntPoly = std::vector<Int>;
using RatPoly = std::vector<Rat>;

IntPoly cyclotomic(int n);
IntPoly characteristic_polynomial(const IntMatrix& m);
IntMatrix evaluate(const IntPoly& f, const IntMatrix& m);
IntMatrix matrix_power(const IntMatrix& m, long e);
// Smallest k >= 1 with m^k = 1, or 0 if none up to cap.
long matrix_order(const IntMatrix& m, long cap = 1000);

RatPoly trim(RatPoly f);
RatPoly add(const RatPoly& a, const RatPoly& b);
RatPoly sub(const RatPoly& a, const RatPoly& b);
RatPoly mul(const RatPoly& a, const RatPoly& b);
void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r);
RatPoly to_rat(const IntPoly& f);
// Inverse of a modulo m; throws "not-invertible".
RatPoly inverse_mod(const RatPoly& a, const RatPoly& m);
// Exact division of integer polynomials; nullopt-like empty result if the division is not exact.
bool divides(const IntPoly& d, const IntPoly& f, IntPoly* quotient = nullptr);
std::string to_string(const IntPoly& f);

}  // namespace k3lat
