#include "k3lat/poly.hpp"

#include <sstream>

namespace k3lat {

namespace {

IntPoly trim_int(IntPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

// Exact division by a monic polynomial.
IntPoly div_monic(IntPoly a, const IntPoly& m) {
    const std::size_t dm = m.size() - 1;
    if (a.size() < m.size()) return {};
    IntPoly q(a.size() - dm, Int(0));
    for (std::size_t i = a.size(); i-- > dm;) {
        Int c = a[i];
        q[i - dm] = c;
        for (std::size_t j = 0; j <= dm; ++j) a[i - dm + j] -= c * m[j];
    }
    return q;
}

}  // namespace

IntPoly cyclotomic(int n) {
    if (n < 1) throw Error("bad-degree", "cyclotomic index must be positive");
    IntPoly f(n + 1, Int(0));
    f[0] = -1;
    f[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) f = div_monic(f, cyclotomic(d));
    return f;
}

IntPoly characteristic_polynomial(const IntMatrix& a) {
    const Eigen::Index n = a.rows();
    IntPoly c(n + 1, Int(0));
    c[n] = 1;
    IntMatrix M = IntMatrix::Zero(n, n);
    IntMatrix I = identity(n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        M = a * M + c[n - k + 1] * I;
        IntMatrix AM = a * M;
        Int tr = 0;
        for (Eigen::Index i = 0; i < n; ++i) tr += AM(i, i);
        c[n - k] = -tr / Int(k);
    }
    return c;
}

IntMatrix evaluate(const IntPoly& f, const IntMatrix& m) {
    const Eigen::Index n = m.rows();
    IntMatrix r = IntMatrix::Zero(n, n);
    for (std::size_t i = f.size(); i-- > 0;) {
        r = IntMatrix(r * m);
        for (Eigen::Index j = 0; j < n; ++j) r(j, j) += f[i];
    }
    return r;
}

IntMatrix matrix_power(const IntMatrix& m, long e) {
    IntMatrix r = identity(m.rows()), b = m;
    while (e > 0) {
        if (e & 1) r = IntMatrix(r * b);
        b = IntMatrix(b * b);
        e >>= 1;
    }
    return r;
}

long matrix_order(const IntMatrix& m, long cap) {
    IntMatrix I = identity(m.rows());
    IntMatrix p = m;
    for (long k = 1; k <= cap; ++k) {
        if (p == I) return k;
        p = IntMatrix(p * m);
    }
    return 0;
}

RatPoly trim(RatPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

RatPoly add(const RatPoly& a, const RatPoly& b) {
    RatPoly r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return trim(r);
}

RatPoly sub(const RatPoly& a, const RatPoly& b) {
    RatPoly r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return trim(r);
}

RatPoly mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return trim(r);
}

void divmod(const RatPoly& a0, const RatPoly& b0, RatPoly& q, RatPoly& r) {
    RatPoly b = trim(b0);
    if (b.empty()) throw Error("division-by-zero", "polynomial division by zero");
    r = trim(a0);
    q.clear();
    if (r.size() < b.size()) return;
    q.assign(r.size() - b.size() + 1, Rat(0));
    while (!r.empty() && r.size() >= b.size()) {
        std::size_t shift = r.size() - b.size();
        Rat c = r.back() / b.back();
        q[shift] = c;
        for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
        r = trim(r);
    }
    q = trim(q);
}

RatPoly to_rat(const IntPoly& f) {
    RatPoly r;
    for (const auto& c : f) r.push_back(Rat(c));
    return trim(r);
}

RatPoly inverse_mod(const RatPoly& a, const RatPoly& m) {
    RatPoly r0 = trim(m), r1, q, rem;
    divmod(a, m, q, r1);
    RatPoly t0, t1{Rat(1)};
    while (!r1.empty()) {
        divmod(r0, r1, q, rem);
        RatPoly t2 = sub(t0, mul(q, t1));
        r0 = r1;
        r1 = rem;
        t0 = t1;
        t1 = t2;
    }
    if (r0.size() != 1) throw Error("not-invertible", "polynomial is not a unit modulo the modulus");
    RatPoly inv;
    for (const auto& c : t0) inv.push_back(c / r0[0]);
    divmod(inv, m, q, rem);
    return rem;
}

bool divides(const IntPoly& d, const IntPoly& f, IntPoly* quotient) {
    RatPoly q, r;
    divmod(to_rat(f), to_rat(d), q, r);
    if (!r.empty()) return false;
    IntPoly qi;
    for (const auto& c : q) {
        if (mp::denominator(c) != 1) return false;
        qi.push_back(mp::numerator(c));
    }
    if (quotient) *quotient = trim_int(qi);
    return true;
}

std::string to_string(const IntPoly& f) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = f.size(); i-- > 0;) {
        if (f[i] == 0) continue;
        Int c = f[i];
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        Int ac = abs(c);
        if (ac != 1 || i == 0) os << ac;
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace k3lat
