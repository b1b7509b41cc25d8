#include "k3lat/types.hpp"

#include <sstream>

namespace k3lat {

IntMatrix to_int(const RatMatrix& m) {
    IntMatrix r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (mp::denominator(m(i, j)) != 1) throw Error("not-integral", "rational entry in integer context");
            r(i, j) = mp::numerator(m(i, j));
        }
    return r;
}

IntVector to_int(const RatVector& v) {
    IntMatrix m = to_int(RatMatrix(v));
    return m.col(0);
}

bool is_integral(const RatMatrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (mp::denominator(m(i, j)) != 1) return false;
    return true;
}

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

Int mod_floor(const Int& a, const Int& b) { return a - b * floor_div(a, b); }

Rat frac_mod(const Rat& x, const Int& m) {
    Int n = mp::numerator(x), d = mp::denominator(x);
    Int r = mod_floor(n, m * d);
    return Rat(r, d);
}

IntMatrix identity(Eigen::Index n) {
    IntMatrix m = IntMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix m = IntMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    m.topLeftCorner(a.rows(), a.cols()) = a;
    m.bottomRightCorner(b.rows(), b.cols()) = b;
    return m;
}

// Bareiss fraction-free elimination.
Int determinant(const IntMatrix& m0) {
    const Eigen::Index n = m0.rows();
    if (n == 0) return 1;
    IntMatrix m = m0;
    Int sign = 1, prev = 1;
    for (Eigen::Index k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            Eigen::Index s = k + 1;
            while (s < n && m(s, k) == 0) ++s;
            if (s == n) return 0;
            m.row(k).swap(m.row(s));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

Rat determinant(const RatMatrix& m0) {
    const Eigen::Index n = m0.rows();
    RatMatrix m = m0;
    Rat det = 1;
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index s = k;
        while (s < n && m(s, k) == 0) ++s;
        if (s == n) return 0;
        if (s != k) {
            m.row(k).swap(m.row(s));
            det = -det;
        }
        det *= m(k, k);
        for (Eigen::Index i = k + 1; i < n; ++i) {
            if (m(i, k) == 0) continue;
            Rat f = m(i, k) / m(k, k);
            for (Eigen::Index j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

RatMatrix inverse(const RatMatrix& m0) {
    const Eigen::Index n = m0.rows();
    RatMatrix a = m0;
    RatMatrix inv = RatMatrix::Identity(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index s = k;
        while (s < n && a(s, k) == 0) ++s;
        if (s == n) throw Error("singular", "matrix is not invertible");
        a.row(k).swap(a.row(s));
        inv.row(k).swap(inv.row(s));
        Rat piv = a(k, k);
        a.row(k) /= piv;
        inv.row(k) /= piv;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0) continue;
            Rat f = a(i, k);
            a.row(i) -= f * a.row(k);
            inv.row(i) -= f * inv.row(k);
        }
    }
    return inv;
}

Eigen::Index rank(const RatMatrix& m0) {
    RatMatrix m = m0;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < m.cols() && r < m.rows(); ++c) {
        Eigen::Index s = r;
        while (s < m.rows() && m(s, c) == 0) ++s;
        if (s == m.rows()) continue;
        m.row(r).swap(m.row(s));
        for (Eigen::Index i = r + 1; i < m.rows(); ++i) {
            if (m(i, c) == 0) continue;
            Rat f = m(i, c) / m(r, c);
            m.row(i) -= f * m.row(r);
        }
        ++r;
    }
    return r;
}

Eigen::Index rank_mod_p(const IntMatrix& m0, long p) {
    const Eigen::Index R = m0.rows(), C = m0.cols();
    std::vector<std::vector<long>> m(R, std::vector<long>(C));
    Int P = p;
    for (Eigen::Index i = 0; i < R; ++i)
        for (Eigen::Index j = 0; j < C; ++j) m[i][j] = mod_floor(m0(i, j), P).convert_to<long>();
    auto inv = [p](long a) {
        long r = 1, e = p - 2, b = a % p;
        while (e > 0) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < C && r < R; ++c) {
        Eigen::Index s = r;
        while (s < R && m[s][c] == 0) ++s;
        if (s == R) continue;
        std::swap(m[r], m[s]);
        long iv = inv(m[r][c]);
        for (Eigen::Index i = r + 1; i < R; ++i) {
            if (m[i][c] == 0) continue;
            long f = m[i][c] * iv % p;
            for (Eigen::Index j = c; j < C; ++j) m[i][j] = ((m[i][j] - f * m[r][j]) % p + p) % p;
        }
        ++r;
    }
    return r;
}

std::string key(const IntMatrix& m) {
    std::ostringstream os;
    os << m.rows() << 'x' << m.cols() << ':';
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) os << m(i, j) << ',';
    return os.str();
}

bool lex_less(const IntVector& a, const IntVector& b) {
    for (Eigen::Index i = 0; i < a.size() && i < b.size(); ++i) {
        if (a(i) < b(i)) return true;
        if (b(i) < a(i)) return false;
    }
    return a.size() < b.size();
}

}  // namespace k3lat
