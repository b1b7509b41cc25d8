#include "k3lat/lattice.hpp"

namespace k3lat {

namespace {

bool is_symmetric(const IntMatrix& g) {
    if (g.rows() != g.cols()) return false;
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < i; ++j)
            if (g(i, j) != g(j, i)) return false;
    return true;
}

// x*a + y*b = g >= 0
void xgcd(const Int& a, const Int& b, Int& g, Int& x, Int& y) {
    Int r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        Int s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
        Int t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    g = r0;
    x = s0;
    y = t0;
}

}  // namespace

Lattice::Lattice(IntMatrix gram, bool allow_degenerate)
    : gram_(std::move(gram)), allow_degenerate_(allow_degenerate) {
    if (!is_symmetric(gram_)) throw Error("not-symmetric", "Gram matrix must be square and symmetric");
    if (!allow_degenerate_ && gram_.rows() > 0 && determinant(gram_) == 0)
        throw Error("degenerate", "Gram matrix is singular");
}

Sublattice::Sublattice(Lattice ambient, IntMatrix basis) : ambient_(std::move(ambient)), basis_(std::move(basis)) {
    if (basis_.rows() > 0 && basis_.cols() != ambient_.rank())
        throw Error("bad-basis", "basis width differs from ambient rank");
    if (basis_.cols() == 0) basis_.resize(0, ambient_.rank());
    if (k3lat::rank(to_rat(basis_)) != basis_.rows()) throw Error("dependent-basis", "basis rows are linearly dependent");
}

std::vector<Int> SmithResult::diagonal() const {
    std::vector<Int> d;
    for (Eigen::Index i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
}

SmithResult smith_normal_form(const IntMatrix& a) {
    const Eigen::Index m = a.rows(), n = a.cols();
    SmithResult s;
    s.D = a;
    s.U = identity(m);
    s.V = identity(n);
    s.Vinv = identity(n);
    IntMatrix& D = s.D;

    auto swap_rows = [&](Eigen::Index i, Eigen::Index j) {
        if (i == j) return;
        D.row(i).swap(D.row(j));
        s.U.row(i).swap(s.U.row(j));
    };
    auto swap_cols = [&](Eigen::Index i, Eigen::Index j) {
        if (i == j) return;
        D.col(i).swap(D.col(j));
        s.V.col(i).swap(s.V.col(j));
        s.Vinv.row(i).swap(s.Vinv.row(j));
    };
    auto add_row = [&](Eigen::Index dst, Eigen::Index src, const Int& k) {
        D.row(dst) += k * D.row(src);
        s.U.row(dst) += k * s.U.row(src);
    };
    auto add_col = [&](Eigen::Index dst, Eigen::Index src, const Int& k) {
        D.col(dst) += k * D.col(src);
        s.V.col(dst) += k * s.V.col(src);
        s.Vinv.row(src) -= k * s.Vinv.row(dst);
    };

    Eigen::Index t = 0;
    for (; t < std::min(m, n); ++t) {
        bool any = false;
        for (;;) {
            Eigen::Index pi = -1, pj = -1;
            Int best = 0;
            for (Eigen::Index i = t; i < m; ++i)
                for (Eigen::Index j = t; j < n; ++j) {
                    if (D(i, j) == 0) continue;
                    Int v = abs(D(i, j));
                    if (pi < 0 || v < best) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) break;
            any = true;
            swap_rows(t, pi);
            swap_cols(t, pj);
            bool clean = true;
            for (Eigen::Index i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                add_row(i, t, -(D(i, t) / D(t, t)));
                if (D(i, t) != 0) clean = false;
            }
            for (Eigen::Index j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                add_col(j, t, -(D(t, j) / D(t, t)));
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            Eigen::Index bad = -1;
            for (Eigen::Index i = t + 1; i < m && bad < 0; ++i)
                for (Eigen::Index j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            add_row(t, bad, Int(1));
        }
        if (!any) break;
        if (D(t, t) < 0) {
            D.row(t) *= Int(-1);
            s.U.row(t) *= Int(-1);
        }
    }
    s.rank = t;
    return s;
}

IntMatrix hermite_normal_form(const IntMatrix& rows) {
    IntMatrix m = rows;
    const Eigen::Index R = m.rows(), C = m.cols();
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < C && r < R; ++c) {
        for (Eigen::Index i = r + 1; i < R; ++i) {
            if (m(i, c) == 0) continue;
            if (m(r, c) == 0) {
                m.row(r).swap(m.row(i));
                continue;
            }
            Int a = m(r, c), b = m(i, c), g, x, y;
            xgcd(a, b, g, x, y);
            Eigen::Matrix<Int, 1, Eigen::Dynamic> rr = m.row(r), ri = m.row(i);
            m.row(r) = x * rr + y * ri;
            m.row(i) = Int(-(b / g)) * rr + Int(a / g) * ri;
        }
        if (m(r, c) == 0) continue;
        if (m(r, c) < 0) m.row(r) *= Int(-1);
        for (Eigen::Index i = 0; i < r; ++i) {
            Int q = floor_div(m(i, c), m(r, c));
            if (q != 0) m.row(i) -= q * m.row(r);
        }
        ++r;
    }
    return m.topRows(r);
}

IntMatrix kernel(const IntMatrix& a) {
    SmithResult s = smith_normal_form(a);
    const Eigen::Index n = a.cols();
    return s.V.rightCols(n - s.rank).transpose();
}

IntMatrix saturate_rows(const IntMatrix& rows) {
    if (rows.rows() == 0) return rows;
    SmithResult s = smith_normal_form(rows);
    return s.Vinv.topRows(s.rank);
}

Saturated saturation(const Sublattice& s) {
    if (s.rank() == 0) return {s, Int(1)};
    SmithResult sm = smith_normal_form(s.basis());
    Int index = 1;
    for (Eigen::Index i = 0; i < sm.rank; ++i) index *= sm.D(i, i);
    return {Sublattice(s.ambient(), sm.Vinv.topRows(sm.rank)), index};
}

bool is_primitive(const Sublattice& s) { return saturation(s).index == 1; }

Lattice rescale(const Lattice& l, const Int& n) {
    if (n == 0) throw Error("invalid-scale", "cannot rescale by 0");
    return Lattice(IntMatrix(l.gram() * n), l.allow_degenerate());
}

RatMatrix dual_basis(const Lattice& l) {
    if (l.rank() > 0 && determinant(l.gram()) == 0) throw Error("no-dual", "degenerate lattice has no dual");
    return inverse(to_rat(l.gram()));
}

DiscriminantForm discriminant_group(const Lattice& l) {
    if (l.rank() > 0 && determinant(l.gram()) == 0)
        throw Error("no-discriminant", "degenerate lattice has no discriminant form");
    SmithResult s = smith_normal_form(l.gram());
    DiscriminantForm d;
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < s.rank; ++i)
        if (s.D(i, i) != 1) {
            idx.push_back(i);
            d.orders.push_back(s.D(i, i));
        }
    const Eigen::Index k = static_cast<Eigen::Index>(idx.size()), n = l.rank();
    d.generators.resize(k, n);
    d.coord_map.resize(k, n);
    IntMatrix UG = s.U * l.gram();
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index j = 0; j < n; ++j) d.generators(a, j) = Rat(s.V(j, idx[a]), d.orders[a]);
        d.coord_map.row(a) = UG.row(idx[a]);
    }
    RatMatrix G = to_rat(l.gram());
    RatMatrix B = d.generators * G * d.generators.transpose();
    d.bilinear.resize(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b) d.bilinear(a, b) = frac_mod(B(a, b), Int(1));
    if (is_even(l)) {
        RatVector q(k);
        for (Eigen::Index a = 0; a < k; ++a) q(a) = frac_mod(B(a, a), Int(2));
        d.quadratic = q;
    }
    return d;
}

DiscriminantForm opposite(const DiscriminantForm& d) {
    DiscriminantForm o = d;
    for (Eigen::Index a = 0; a < o.bilinear.rows(); ++a)
        for (Eigen::Index b = 0; b < o.bilinear.cols(); ++b) o.bilinear(a, b) = frac_mod(-d.bilinear(a, b), Int(1));
    if (d.quadratic)
        for (Eigen::Index a = 0; a < d.quadratic->size(); ++a) (*o.quadratic)(a) = frac_mod(-(*d.quadratic)(a), Int(2));
    return o;
}

Int DiscriminantForm::size() const {
    Int s = 1;
    for (const auto& d : orders) s *= d;
    return s;
}

std::vector<Int> DiscriminantForm::coordinates(const RatVector& x) const {
    RatVector y = to_rat(coord_map) * x;
    std::vector<Int> a(orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (mp::denominator(y(i)) != 1) throw Error("not-in-dual", "vector is not in the dual lattice");
        a[i] = mod_floor(mp::numerator(y(i)), orders[i]);
    }
    return a;
}

Rat DiscriminantForm::q_of(const std::vector<Int>& a) const {
    if (!quadratic) throw Error("no-quadratic", "odd lattice has no quadratic form");
    Rat q = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        q += Rat(a[i] * a[i]) * (*quadratic)(i);
        for (std::size_t j = i + 1; j < a.size(); ++j) q += 2 * Rat(a[i] * a[j]) * bilinear(i, j);
    }
    return frac_mod(q, Int(2));
}

Rat DiscriminantForm::b_of(const std::vector<Int>& a, const std::vector<Int>& c) const {
    Rat b = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j) b += Rat(a[i] * c[j]) * bilinear(i, j);
    return frac_mod(b, Int(1));
}

Signature signature(const IntMatrix& g) {
    RatMatrix a = to_rat(g);
    const Eigen::Index n = a.rows();
    Signature s;
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index idx = -1;
        for (Eigen::Index i = k; i < n; ++i)
            if (a(i, i) != 0) {
                idx = i;
                break;
            }
        if (idx < 0) {
            Eigen::Index pi = -1, pj = -1;
            for (Eigen::Index i = k; i < n && pi < 0; ++i)
                for (Eigen::Index j = i + 1; j < n; ++j)
                    if (a(i, j) != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi < 0) {
                s.zero += static_cast<int>(n - k);
                break;
            }
            a.row(pi) += a.row(pj);
            a.col(pi) += a.col(pj);
            idx = pi;
        }
        if (idx != k) {
            a.row(idx).swap(a.row(k));
            a.col(idx).swap(a.col(k));
        }
        const Rat piv = a(k, k);
        if (piv > 0) ++s.plus; else ++s.minus;
        for (Eigen::Index i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rat f = a(i, k) / piv;
            a.row(i) -= f * a.row(k);
            a.col(i) -= f * a.col(k);
        }
    }
    return s;
}

Sublattice orthogonal_complement(const Sublattice& s) {
    const Lattice& amb = s.ambient();
    if (s.rank() == 0) return Sublattice(amb, identity(amb.rank()));
    IntMatrix k = kernel(IntMatrix(s.basis() * amb.gram()));
    return Sublattice(amb, k);
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
    return Lattice(block_diag(a.gram(), b.gram()), a.allow_degenerate() || b.allow_degenerate());
}

bool is_even(const Lattice& l) {
    for (Eigen::Index i = 0; i < l.rank(); ++i)
        if (l.gram()(i, i) % 2 != 0) return false;
    return true;
}

std::optional<RatVector> solve_in_span(const IntMatrix& basis, const RatVector& v) {
    // Solve basis^T c = v by elimination on the augmented system.
    const Eigen::Index k = basis.rows(), n = basis.cols();
    RatMatrix a(n, k + 1);
    a.leftCols(k) = to_rat(IntMatrix(basis.transpose()));
    a.col(k) = v;
    std::vector<Eigen::Index> pivcol;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < k && r < n; ++c) {
        Eigen::Index s = r;
        while (s < n && a(s, c) == 0) ++s;
        if (s == n) continue;
        a.row(r).swap(a.row(s));
        a.row(r) /= Rat(a(r, c));
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == r || a(i, c) == 0) continue;
            Rat f = a(i, c);
            a.row(i) -= f * a.row(r);
        }
        pivcol.push_back(c);
        ++r;
    }
    for (Eigen::Index i = r; i < n; ++i)
        if (a(i, k) != 0) return std::nullopt;
    RatVector c = RatVector::Zero(k);
    for (Eigen::Index i = 0; i < r; ++i) c(pivcol[i]) = a(i, k);
    return c;
}

RatMatrix span_basis(const RatMatrix& rows) {
    Int den = 1;
    for (Eigen::Index i = 0; i < rows.rows(); ++i)
        for (Eigen::Index j = 0; j < rows.cols(); ++j) den = lcm(den, Int(mp::denominator(rows(i, j))));
    IntMatrix scaled = to_int(RatMatrix(rows * Rat(den)));
    IntMatrix h = hermite_normal_form(scaled);
    return to_rat(h) / Rat(den);
}

Lattice induced_lattice(const RatMatrix& basis, const IntMatrix& gram, bool allow_degenerate) {
    RatMatrix g = basis * to_rat(gram) * basis.transpose();
    return Lattice(to_int(g), allow_degenerate);
}

}  // namespace k3lat
