#include "k3lat/group.hpp"

#include "k3lat/poly.hpp"

#include <deque>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace k3lat {

IsometryGroup::IsometryGroup(Lattice ambient, std::vector<IntMatrix> generators)
    : ambient_(std::move(ambient)), generators_(std::move(generators)) {
    for (const auto& g : generators_)
        if (g.rows() != ambient_.rank() || g.cols() != ambient_.rank())
            throw Error("bad-generator", "generator is not a square matrix of ambient rank");
}

bool preserves_gram(const IntMatrix& g, const Lattice& l) {
    return IntMatrix(g.transpose() * l.gram() * g) == l.gram();
}

std::vector<IntMatrix> closure(const std::vector<IntMatrix>& gens, std::size_t n, std::size_t cap) {
    std::vector<IntMatrix> out{identity(static_cast<Eigen::Index>(n))};
    std::unordered_set<std::string> seen{key(out[0])};
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (const auto& s : gens) {
            IntMatrix e = out[i] * s;
            std::string k = key(e);
            if (seen.insert(k).second) {
                out.push_back(std::move(e));
                if (out.size() > cap) throw Error("not-finite", "closure exceeds the element cap");
            }
        }
    }
    return out;
}

const std::vector<IntMatrix>& IsometryGroup::elements() const {
    std::call_once(cache_->once, [this] {
        for (const auto& g : generators_)
            if (!preserves_gram(g, ambient_)) throw Error("not-an-isometry", "generator does not preserve the Gram matrix");
        cache_->elements = closure(generators_, ambient_.rank());
    });
    return cache_->elements;
}

GroupReport validate_group(const IsometryGroup& g) {
    const auto& els = g.elements();
    return {els.size(), els};
}

Sublattice kernel_sublattice(const Lattice& ambient, const IntMatrix& a) {
    if (a.rows() == 0) return Sublattice(ambient, identity(ambient.rank()));
    return Sublattice(ambient, kernel(a));
}

Sublattice fixed_sublattice(const IsometryGroup& g) {
    const Eigen::Index n = g.ambient().rank();
    IntMatrix stacked(static_cast<Eigen::Index>(g.generators().size()) * n, n);
    Eigen::Index r = 0;
    for (const auto& s : g.generators()) {
        stacked.middleRows(r, n) = s - identity(n);
        r += n;
    }
    return kernel_sublattice(g.ambient(), stacked);
}

Sublattice fixed_in(const IsometryGroup& g, const Sublattice& s) {
    const Eigen::Index n = g.ambient().rank(), k = s.rank();
    if (k == 0) return s;
    // coefficient vectors c with (g - 1) B^T c = 0 for all generators
    IntMatrix stacked(static_cast<Eigen::Index>(g.generators().size()) * n, k);
    Eigen::Index r = 0;
    for (const auto& m : g.generators()) {
        stacked.middleRows(r, n) = (m - identity(n)) * s.basis().transpose();
        r += n;
    }
    IntMatrix c = stacked.rows() ? kernel(stacked) : identity(k);
    if (c.rows() == 0) return Sublattice(g.ambient(), IntMatrix(0, n));
    return Sublattice(g.ambient(), IntMatrix(c * s.basis()));
}

ZGDecomposition zg_decomposition(const IntMatrix& g, long p) {
    const Eigen::Index n = g.rows();
    if (matrix_power(g, p) != identity(n)) throw Error("wrong-order", "g^p is not the identity");
    ZGDecomposition z;
    z.p = p;
    IntMatrix N = g - identity(n);
    std::vector<Eigen::Index> rk{n};
    IntMatrix Nk = identity(n);
    for (long k = 1; k <= p + 1; ++k) {
        Nk = IntMatrix(Nk * N);
        rk.push_back(rank_mod_p(Nk, p));
    }
    z.blocks.assign(p + 2, 0);
    for (long k = 1; k <= p; ++k) {
        long ge_k = static_cast<long>(rk[k - 1] - rk[k]);
        long ge_k1 = static_cast<long>(rk[k] - rk[k + 1]);
        z.blocks[k] = ge_k - ge_k1;
    }
    for (long k = 2; k < p - 1; ++k)
        if (z.blocks[k] != 0) throw Error("not-a-zg-lattice", "Jordan block of size " + std::to_string(k));
    if (rk[p] != 0) throw Error("not-a-zg-lattice", "(g-1)^p is not zero mod p");
    const long fixed_rank = static_cast<long>(n - rank(to_rat(N)));
    const long cyc_rank = static_cast<long>(n - rank(to_rat(evaluate(cyclotomic(static_cast<int>(p)), g))));
    z.r = z.blocks[p];
    z.t = fixed_rank - z.r;
    if (cyc_rank % (p - 1) != 0) throw Error("not-a-zg-lattice", "cyclotomic part has bad rank");
    z.c = cyc_rank / (p - 1) - z.r;
    bool ok = z.t >= 0 && z.c >= 0;
    if (p == 2) ok = ok && z.blocks[1] == z.t + z.c;
    else ok = ok && z.blocks[1] == z.t && z.blocks[p - 1] == z.c;
    if (!ok) throw Error("not-a-zg-lattice", "Jordan type inconsistent with rational ranks");
    return z;
}

RegularSummandReport regular_summand_discriminant_check(const IntMatrix& g, const Lattice& ambient, long p) {
    ZGDecomposition z = zg_decomposition(g, p);
    if (z.c != 0) throw Error("inapplicable", "module has cyclotomic summands");
    RegularSummandReport rep;
    rep.r = z.r;
    const Eigen::Index n = g.rows();
    SmithResult s = smith_normal_form(IntMatrix(g - identity(n)));
    rep.direct_summand = true;
    for (Eigen::Index i = 0; i < s.rank; ++i)
        if (s.D(i, i) != 1) rep.direct_summand = false;
    Sublattice fixed = kernel_sublattice(ambient, IntMatrix(g - identity(n)));
    Sublattice comp = orthogonal_complement(fixed);
    if (comp.rank() > 0) rep.disc_orders = discriminant_group(comp.lattice()).orders;
    rep.elementary = true;
    for (const auto& d : rep.disc_orders)
        if (d != p) rep.elementary = false;
    rep.disc_dimension = rep.elementary ? static_cast<long>(rep.disc_orders.size()) : -1;
    rep.consistent = rep.direct_summand && rep.elementary && rep.disc_dimension == rep.r;
    return rep;
}

RatMatrix orthogonal_basis(const IntMatrix& gram) {
    RatMatrix a = to_rat(gram);
    const Eigen::Index n = a.rows();
    RatMatrix P = RatMatrix::Identity(n, n);
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
            if (pi < 0) throw Error("degenerate", "form is degenerate");
            a.row(pi) += a.row(pj);
            a.col(pi) += a.col(pj);
            P.row(pi) += P.row(pj);
            idx = pi;
        }
        if (idx != k) {
            a.row(idx).swap(a.row(k));
            a.col(idx).swap(a.col(k));
            P.row(idx).swap(P.row(k));
        }
        for (Eigen::Index i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rat f = a(i, k) / a(k, k);
            a.row(i) -= f * a.row(k);
            a.col(i) -= f * a.col(k);
            P.row(i) -= f * P.row(k);
        }
    }
    return P;
}

std::vector<RatVector> reflection_decomposition(const IntMatrix& g, const Lattice& ambient) {
    const Eigen::Index n = ambient.rank();
    RatMatrix G = to_rat(ambient.gram());
    RatMatrix U = orthogonal_basis(ambient.gram());
    RatMatrix h = to_rat(g);
    std::vector<RatVector> vs;
    auto reflect = [&](const RatVector& w) {
        RatVector gw = G * w;
        Rat c = Rat(2) / w.dot(gw);
        RatVector row = h.transpose() * gw;
        h -= (w * c) * row.transpose();
        vs.push_back(w);
    };
    for (Eigen::Index i = 0; i < n; ++i) {
        RatVector u = U.row(i).transpose();
        RatVector hu = h * u;
        if (hu == u) continue;
        RatVector w = hu - u;
        if (w.dot(G * w) != 0) {
            reflect(w);
        } else {
            reflect(RatVector(hu + u));
            reflect(u);
        }
    }
    if (h != RatMatrix::Identity(n, n)) throw Error("internal", "reflection decomposition did not terminate at the identity");
    return vs;
}

bool spinor_plus_membership(const IntMatrix& g, const Lattice& ambient) {
    RatMatrix G = to_rat(ambient.gram());
    int positive = 0;
    for (const auto& v : reflection_decomposition(g, ambient))
        if (v.dot(G * v) > 0) ++positive;
    return positive % 2 == 0;
}

bool preserves_positive_orientation(const IntMatrix& g, const Lattice& ambient) {
    RatMatrix G = to_rat(ambient.gram());
    RatMatrix U = orthogonal_basis(ambient.gram());
    std::vector<RatVector> pos;
    for (Eigen::Index i = 0; i < U.rows(); ++i) {
        RatVector u = U.row(i).transpose();
        if (u.dot(G * u) > 0) pos.push_back(u);
    }
    const Eigen::Index k = static_cast<Eigen::Index>(pos.size());
    RatMatrix M(k, k);
    RatMatrix gr = to_rat(g);
    for (Eigen::Index j = 0; j < k; ++j) {
        RatVector gu = gr * pos[j];
        for (Eigen::Index i = 0; i < k; ++i) M(i, j) = gu.dot(G * pos[i]) / pos[i].dot(G * pos[i]);
    }
    return determinant(M) > 0;
}

std::string to_string(CoinvariantMode m) {
    switch (m) {
        case CoinvariantMode::pointwise_fixed_3_plane: return "pointwise-fixed-3-plane";
        case CoinvariantMode::rotation_on_3_plane: return "rotation-on-3-plane";
        case CoinvariantMode::supplied_isotypic: return "supplied-isotypic";
    }
    return "?";
}

namespace {

// sign of cos(2 pi r / d)
int cos_sign(long r, long d) {
    r = ((r % d) + d) % d;
    if (4 * r == d || 4 * r == 3 * d) return 0;
    return (4 * r < d || 4 * r > 3 * d) ? 1 : -1;
}

IntMatrix scaled_integer(const RatMatrix& m, Int* den_out = nullptr) {
    Int den = 1;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) den = lcm(den, Int(mp::denominator(m(i, j))));
    if (den_out) *den_out = den;
    return to_int(RatMatrix(m * Rat(den)));
}

// Rotation types k in (Z/d)^x / +-1 that can carry the positive part of V_d.
std::vector<std::string> rotation_types(const IntMatrix& g, const Sublattice& vd, long d, int pos) {
    const long phi = [&] {
        long c = 0;
        for (long k = 1; k <= d; ++k)
            if (std::gcd(k, d) == 1) ++c;
        return c;
    }();
    std::vector<long> reps;
    for (long k = 1; 2 * k < d; ++k)
        if (std::gcd(k, d) == 1) reps.push_back(k);
    const long m = vd.rank() / phi;   // each real type has dimension 2m
    std::vector<int> observed(d);
    const Lattice& amb = vd.ambient();
    for (long j = 1; j < d; ++j) {
        IntMatrix gj = matrix_power(g, j), gmj = matrix_power(g, (d - j) % d == 0 ? 0 : d - j);
        // g has order dividing ord; on V_d, g^{-j} = g^{d-j}
        IntMatrix form = vd.basis() * amb.gram() * (gj + gmj) * vd.basis().transpose();
        observed[j] = signature(form).plus;
    }
    std::vector<std::string> out;
    const std::size_t K = reps.size();
    std::vector<long> a(K, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i == K) {
            if (left != 0) return;
            for (long j = 1; j < d; ++j) {
                long np = 0;
                for (std::size_t t = 0; t < K; ++t) {
                    int s = cos_sign(j * reps[t], d);
                    if (s > 0) np += 2 * a[t];
                    if (s < 0) np += 2 * (m - a[t]);
                }
                if (np != observed[j]) return;
            }
            std::ostringstream os;
            os << "d=" << d << ":";
            bool first = true;
            for (std::size_t t = 0; t < K; ++t)
                if (a[t] > 0) {
                    os << (first ? " " : ", ") << "rotation by 2pi*" << reps[t] << "/" << d;
                    first = false;
                }
            out.push_back(os.str());
            return;
        }
        for (long v = 0; v <= m && 2 * v <= left; ++v) {
            a[i] = v;
            rec(i + 1, left - static_cast<int>(2 * v));
        }
        a[i] = 0;
    };
    rec(0, pos);
    return out;
}

}  // namespace

CoinvariantResult coinvariant_L_G(const IsometryGroup& G, const std::optional<IsotypicData>& iso) {
    CoinvariantResult res;
    const Lattice& amb = G.ambient();
    const Eigen::Index n = amb.rank();
    const auto& els = G.elements();
    res.fixed = fixed_sublattice(G);
    const int fixed_plus = signature(res.fixed.gram()).plus;
    const int total_plus = signature(amb).plus;

    auto finish = [&](Sublattice lg) {
        if (lg.rank() > 0) {
            Signature s = signature(lg.gram());
            if (s.minus != lg.rank()) throw Error("internal", "coinvariant lattice is not negative definite");
        }
        res.L_G = std::move(lg);
        return res;
    };

    if (fixed_plus == total_plus) {
        res.mode = CoinvariantMode::pointwise_fixed_3_plane;
        res.p_types.push_back("trivial");
        return finish(orthogonal_complement(res.fixed));
    }

    // cyclic: some element has order |G|
    const long order = static_cast<long>(els.size());
    const IntMatrix* gen = nullptr;
    for (const auto& e : els)
        if (matrix_order(e, order) == order) {
            gen = &e;
            break;
        }
    if (gen) {
        res.mode = CoinvariantMode::rotation_on_3_plane;
        const IntMatrix& g = *gen;
        std::vector<std::vector<std::string>> per_d;
        std::vector<long> excluded;
        for (long d = 1; d <= order; ++d) {
            if (order % d != 0) continue;
            IntMatrix phi = evaluate(cyclotomic(static_cast<int>(d)), g);
            Sublattice vd = kernel_sublattice(amb, phi);
            if (vd.rank() == 0) continue;
            const int pos = signature(vd.gram()).plus;
            if (pos == 0) {
                excluded.push_back(d);
                continue;
            }
            if (d <= 2) per_d.push_back({d == 1 ? "trivial" : "sign"});
            else per_d.push_back(rotation_types(g, vd, d, pos));
        }
        // every combination of admissible descriptions is a variant
        std::vector<std::string> variants{""};
        for (const auto& opts : per_d) {
            std::vector<std::string> next;
            for (const auto& v : variants)
                for (const auto& o : opts) next.push_back(v.empty() ? o : v + "; " + o);
            variants = next;
        }
        res.p_types = variants;
        // L_G is the lattice part of the sum of components with no positive direction
        if (excluded.empty()) return finish(Sublattice(amb, IntMatrix(0, n)));
        IntMatrix prod = identity(n);
        for (long d : excluded) prod = IntMatrix(prod * evaluate(cyclotomic(static_cast<int>(d)), g));
        return finish(kernel_sublattice(amb, prod));
    }

    if (!iso) throw Error("need-isotypic-data", "non-cyclic group needs rational isotypic projectors");
    res.mode = CoinvariantMode::supplied_isotypic;
    RatMatrix sum = RatMatrix::Zero(n, n), carrying = RatMatrix::Zero(n, n);
    const Rat ord(static_cast<long>(els.size()));
    for (std::size_t pi = 0; pi < iso->projectors.size(); ++pi) {
        const RatMatrix& E = iso->projectors[pi];
        if (E.rows() != n || E.cols() != n) throw Error("bad-projector", "projector has the wrong size");
        if (RatMatrix(E * E) != E) throw Error("bad-projector", "projector is not idempotent");
        for (const auto& s : G.generators())
            if (RatMatrix(E * to_rat(s)) != RatMatrix(to_rat(s) * E)) throw Error("bad-projector", "projector is not central");
        sum += E;
        IntMatrix cols = scaled_integer(RatMatrix(E.transpose()));
        IntMatrix img = hermite_normal_form(cols);
        if (img.rows() == 0) continue;
        Sublattice v(amb, saturate_rows(img));
        const int pos = signature(v.gram()).plus;
        Rat fs = 0;
        for (const auto& e : els) {
            RatMatrix m = to_rat(IntMatrix(e * e)) * E;
            fs += m.trace();
        }
        fs /= ord;
        const std::string schur = fs > 0 ? "real" : fs == 0 ? "complex" : "quaternionic";
        if (pos > 0) {
            if (schur != "real") throw Error("unsupported-schur-type", "P-type constituent of " + schur + " type");
            carrying += E;
            res.p_types.push_back("projector " + std::to_string(pi) + " (rank " + std::to_string(v.rank()) + ", real type)");
        }
    }
    if (sum != RatMatrix::Identity(n, n)) throw Error("bad-projector", "projectors do not sum to the identity");
    std::string all;
    for (const auto& s : res.p_types) all += (all.empty() ? "" : "; ") + s;
    res.p_types = {all};
    if (carrying == RatMatrix::Zero(n, n)) return finish(Sublattice(amb, identity(n)));
    Sublattice lg = kernel_sublattice(amb, scaled_integer(carrying));
    return finish(lg);
}

}  // namespace k3lat
