#include "k3lat/realization.hpp"

#include "k3lat/gsignature.hpp"
#include "k3lat/nikulin.hpp"
#include "k3lat/poly.hpp"
#include "k3lat/standard.hpp"

#include <numeric>
#include <set>
#include <sstream>

namespace k3lat {

const char* const teichmuller_caveat =
    "homological criterion only: invariance of a connected component of the Teichmueller space is not checked";

namespace {

std::string str(const Int& x) { return x.str(); }

IntVector make_primitive(IntVector v) {
    Int g = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, abs(v(i)));
    if (g > 1)
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) /= g;
    return v;
}

IntVector to_ambient(const Sublattice& s, const IntVector& c) { return s.basis().transpose() * c; }

const Lattice& k3() {
    static const Lattice l = k3_lattice().lattice;
    return l;
}

// Matrix X with g B^T = B^T X for the rows B of a g-stable sublattice.
std::optional<IntMatrix> restrict_to(const IntMatrix& g, const IntMatrix& B) {
    const Eigen::Index k = B.rows();
    IntMatrix X(k, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        IntVector img = g * IntVector(B.row(j).transpose());
        auto c = solve_in_span(B, to_rat(img));
        if (!c) return std::nullopt;
        RatVector cc = *c;
        if (!is_integral(RatMatrix(cc))) return std::nullopt;
        X.col(j) = to_int(cc);
    }
    return X;
}

}  // namespace

RealizabilityReport decide_realizability(const IsometryGroup& g, const std::optional<IsotypicData>& iso) {
    RealizabilityReport r;
    r.coinvariant = coinvariant_L_G(g, iso);
    const Sublattice& lg = r.coinvariant.L_G;
    MinusTwoResult m = has_minus_two_vector(lg.lattice());
    r.metric = !m.found;
    if (m.found) {
        r.metric_witness = to_ambient(lg, m.witness);
        r.reason = "no-minus-two-failed";
        return r;
    }
    Sublattice fx = fixed_in(g, orthogonal_complement(lg));
    if (fx.rank() == 0) {
        r.reason = "no-trivial-rep-in-complement";
        return r;
    }
    r.complex = true;
    r.reason = "ok";
    r.complex_witness = IntVector(fx.basis().row(0).transpose());
    return r;
}

DehnTwistReport dehn_twist_obstruction(const IntVector& v) {
    const Lattice& amb = k3();
    if (v.size() != amb.rank() || amb.norm(v) != -2) throw Error("not-a-minus-two-vector", "v.v must be -2");
    DehnTwistReport r;
    r.v = v;
    r.reflection = reflection(amb, v);
    IsometryGroup G(amb, {r.reflection});
    r.realizability = decide_realizability(G);
    const Sublattice& lg = r.realizability.coinvariant.L_G;
    if (lg.rank() == 1 && r.realizability.metric_witness) {
        const IntVector& w = *r.realizability.metric_witness;
        r.witness_is_v = w == v || w == IntVector(-v);
    }
    r.zg = zg_decomposition(r.reflection, 2);
    r.realizable_blocks.assign(r.zg.blocks.size(), 0);
    r.realizable_blocks[1] = 6;
    r.realizable_blocks[2] = 8;
    r.profile_differs = r.zg.blocks != r.realizable_blocks;
    return r;
}

DichotomyReport classify_dichotomy(const IntMatrix& g, long p) {
    const Lattice& amb = k3();
    bool prime = p > 2;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) prime = false;
    if (!prime) throw Error("hypothesis-violated", "p must be an odd prime");
    if (g.rows() != amb.rank() || g.cols() != amb.rank() || !preserves_gram(g, amb))
        throw Error("hypothesis-violated", "g is not an isometry of the K3 lattice");
    if (matrix_order(g, p) != p) throw Error("hypothesis-violated", "g does not have order p");
    IsometryGroup G(amb, {g});
    Sublattice fixed = fixed_sublattice(G);
    if (signature(fixed.gram()).plus != 3) throw Error("hypothesis-violated", "fixed lattice has no positive 3-plane");
    ZGDecomposition zg = zg_decomposition(g, p);
    if (zg.c != 0) throw Error("hypothesis-violated", "cyclotomic summands present (c = " + std::to_string(zg.c) + ")");

    DichotomyReport r;
    r.p = p;
    CoinvariantResult co = coinvariant_L_G(G);
    const Sublattice& lg = co.L_G;
    r.nu = static_cast<long>(lg.rank()) / (p - 1);
    RootSystem rs = classify_root_system(lg.lattice());
    r.root_label = rs.label();
    r.evidence.push_back("(t,c,r) = (" + std::to_string(zg.t) + "," + std::to_string(zg.c) + "," + std::to_string(zg.r) + ")");
    r.evidence.push_back("rank L_G = " + std::to_string(lg.rank()) + ", roots (up to sign) = " + std::to_string(rs.roots.size()));

    if (rs.roots.empty()) {
        r.kind = "Nikulin";
        const bool eq = r.nu * (p + 1) == 24;
        const bool listed = (p == 3 && r.nu == 6) || (p == 5 && r.nu == 4) || (p == 7 && r.nu == 3);
        r.checks.push_back(make_check("nu(p+1) = 24", eq, "24", std::to_string(r.nu * (p + 1))));
        r.checks.push_back(make_check("(p,nu) in {(3,6),(5,4),(7,3)}", listed, "", "(" + std::to_string(p) + "," + std::to_string(r.nu) + ")"));
        if (!eq || !listed) r.kind = "violation";
        return r;
    }

    r.kind = "Coxeter";
    const std::string want = "A" + std::to_string(p - 1) + (r.nu > 1 ? "^" + std::to_string(r.nu) : "");
    r.checks.push_back(make_check("root system type", r.root_label == want, want, r.root_label));
    r.checks.push_back(make_check("roots span L_G", rs.spanning, "true", rs.spanning ? "true" : "false"));
    const IntPoly phi = cyclotomic(static_cast<int>(p));
    for (std::size_t ci = 0; ci < rs.components.size(); ++ci) {
        const RootComponent& comp = rs.components[ci];
        const IntMatrix simple = comp.simple * lg.basis();
        auto X = restrict_to(g, simple);
        bool ok = false;
        std::string computed = "not stable";
        if (X) {
            IntPoly cp = characteristic_polynomial(*X);
            std::set<std::string> roots;
            for (const auto& rt : comp.roots) {
                IntVector a = to_ambient(lg, rt);
                roots.insert(key(IntMatrix(a)));
                roots.insert(key(IntMatrix(IntVector(-a))));
            }
            bool perm = true;
            for (const auto& rt : comp.roots)
                if (!roots.count(key(IntMatrix(IntVector(g * to_ambient(lg, rt)))))) perm = false;
            ok = cp == phi && perm;
            computed = "char poly " + to_string(cp) + (perm ? ", roots permuted" : ", roots not permuted");
        }
        r.checks.push_back(make_check("component " + std::to_string(ci) + " carries a Coxeter element", ok, to_string(phi), computed));
    }
    for (const auto& c : r.checks)
        if (!c.passed()) r.kind = "violation";
    return r;
}

// ---------------------------------------------------------------------------------------------
// A_4 example

namespace {

IntMatrix e8_gram() { return root_lattice("E8").lattice.gram(); }

std::vector<IntVector> e8_roots() {
    std::vector<IntVector> out;
    for (const auto& sv : short_vectors(Lattice(e8_gram()), Int(2)))
        if (sv.norm == 2) {
            out.push_back(sv.v);
            out.push_back(IntVector(-sv.v));
        }
    return out;
}

struct ComplementCheck {
    bool ok = false;
    IntMatrix pair;
};

ComplementCheck check_a3_complement(const IntMatrix& six) {
    ComplementCheck c;
    const IntMatrix G = e8_gram();
    Sublattice comp = orthogonal_complement(Sublattice(Lattice(G), six));
    if (comp.rank() != 2 || abs(determinant(comp.gram())) != 16) return c;
    auto sv = short_vectors(comp.lattice(), Int(4));
    std::vector<IntVector> fours;
    for (const auto& s : sv)
        if (s.norm == 4) fours.push_back(s.v);
    if (fours.size() != 2) return c;
    IntVector a = to_ambient(comp, fours[0]), b = to_ambient(comp, fours[1]);
    if (a.dot(G * b) != 0) return c;
    c.ok = true;
    c.pair = IntMatrix(2, 8);
    c.pair.row(0) = a.transpose();
    c.pair.row(1) = b.transpose();
    return c;
}

bool is_a3_chain(const IntMatrix& G, const IntVector& a, const IntVector& b, const IntVector& c) {
    return a.dot(G * b) == -1 && b.dot(G * c) == -1 && a.dot(G * c) == 0;
}

IntMatrix rows_of(const std::vector<IntVector>& vs) {
    IntMatrix m(static_cast<Eigen::Index>(vs.size()), vs.empty() ? 0 : vs[0].size());
    for (std::size_t i = 0; i < vs.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = vs[i].transpose();
    return m;
}

IntVector unit(Eigen::Index n, Eigen::Index i) {
    IntVector v = IntVector::Zero(n);
    v(i) = 1;
    return v;
}

}  // namespace

A3PairEmbedding search_a3_pair_embedding() {
    const IntMatrix G = e8_gram();
    A3PairEmbedding e;
    e.first = rows_of({unit(8, 0), unit(8, 2), unit(8, 3)});
    std::vector<IntVector> perp;
    for (const auto& r : e8_roots())
        if (IntVector(e.first * G * r).isZero()) perp.push_back(r);
    if (perp.size() != 40) throw Error("internal", "A3 complement in E8 does not have 40 roots");
    for (const auto& a : perp)
        for (const auto& b : perp)
            for (const auto& c : perp) {
                if (!is_a3_chain(G, a, b, c)) continue;
                IntMatrix six(6, 8);
                six.topRows(3) = e.first;
                six.row(3) = a.transpose();
                six.row(4) = b.transpose();
                six.row(5) = c.transpose();
                ComplementCheck cc = check_a3_complement(six);
                if (!cc.ok) continue;
                e.second = rows_of({a, b, c});
                e.complement_pair = cc.pair;
                return e;
            }
    throw Error("internal", "no A3 + A3 embedding with the required complement");
}

A3PairEmbedding pinned_a3_pair_embedding() {
    A3PairEmbedding e;
    e.first = rows_of({unit(8, 0), unit(8, 2), unit(8, 3)});
    e.second = rows_of({unit(8, 7), unit(8, 6), unit(8, 5)});   // alpha_8, alpha_7, alpha_6
    const IntMatrix G = e8_gram();
    IntMatrix six(6, 8);
    six.topRows(3) = e.first;
    six.bottomRows(3) = e.second;
    IntMatrix cartan = six * G * six.transpose();
    IntMatrix want = IntMatrix::Zero(6, 6);
    want.topLeftCorner(3, 3) = root_lattice("A3").lattice.gram();
    want.bottomRightCorner(3, 3) = root_lattice("A3").lattice.gram();
    ComplementCheck cc = check_a3_complement(six);
    if (cartan != want || !cc.ok) throw Error("internal", "pinned A3 + A3 embedding failed verification");
    e.complement_pair = cc.pair;
    return e;
}

Example build_a4_example() {
    Example ex;
    ex.name = "a4-example";
    auto add = [&](std::string n, bool ok, std::string want, std::string got) {
        ex.checks.push_back(make_check(std::move(n), ok, std::move(want), std::move(got)));
    };
    const Lattice& amb = k3();
    const IntMatrix C = root_lattice("A3").lattice.gram();

    // A3 + A3^dual with f((x, xi), (y, eta)) = xi(y) + eta(x)
    IntMatrix GA = IntMatrix::Zero(6, 6);
    GA.topRightCorner(3, 3) = identity(3);
    GA.bottomLeftCorner(3, 3) = identity(3);
    Lattice A(GA);
    Signature sa = signature(A);
    add("A3 + A3^dual is even", is_even(A), "true", is_even(A) ? "true" : "false");
    add("A3 + A3^dual is unimodular", abs(det(A)) == 1, "1", str(abs(det(A))));
    add("A3 + A3^dual has signature (3,3)", sa.plus == 3 && sa.minus == 3, "(3,3)",
        "(" + std::to_string(sa.plus) + "," + std::to_string(sa.minus) + ")");
    // alpha_i -> e_i, alpha_i^* -> f_i
    IntMatrix P = IntMatrix::Zero(6, 6);
    for (int i = 0; i < 3; ++i) {
        P(2 * i, i) = 1;
        P(2 * i + 1, 3 + i) = 1;
    }
    const IntMatrix GU3 = amb.gram().topLeftCorner(6, 6);
    const bool congruent = IntMatrix(P.transpose() * GU3 * P) == GA;
    add("explicit isometry A3 + A3^dual -> U^3", congruent, "P^T G P = Gram", congruent ? "P^T G P = Gram" : "mismatch");

    const A3PairEmbedding emb = pinned_a3_pair_embedding();
    const Lattice E8m(IntMatrix(-e8_gram()));
    std::vector<IntMatrix> refl_first, refl_second;
    for (int k = 0; k < 3; ++k) {
        refl_first.push_back(reflection(E8m, IntVector(emb.first.row(k).transpose())));
        refl_second.push_back(reflection(E8m, IntVector(emb.second.row(k).transpose())));
    }
    auto weyl = [&](int k) {   // simple reflection of A3 on root coordinates
        IntMatrix s = identity(3);
        s.row(k) -= C.row(k);
        return s;
    };
    auto lift = [&](const std::vector<int>& word) {
        IntMatrix w = identity(3), e8 = identity(8);
        for (int k : word) {
            w = IntMatrix(w * weyl(k));
            e8 = IntMatrix(e8 * refl_first[k] * refl_second[k]);
        }
        const IntMatrix wd = to_int(RatMatrix(inverse(to_rat(w)).transpose()));
        IntMatrix g = IntMatrix::Zero(22, 22);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                g(2 * i, 2 * j) = w(i, j);
                g(2 * i + 1, 2 * j + 1) = wd(i, j);
            }
        g.block(6, 6, 8, 8) = e8;
        g.block(14, 14, 8, 8) = e8;
        return g;
    };
    ex.group = IsometryGroup(amb, {lift({0, 1}), lift({1, 2})});
    for (std::size_t i = 0; i < ex.group.generators().size(); ++i) {
        const IntMatrix& g = ex.group.generators()[i];
        const std::string tag = " (generator " + std::to_string(i + 1) + ")";
        const bool keeps = preserves_gram(g, amb), plus = spinor_plus_membership(g, amb);
        add("generator preserves the K3 Gram" + tag, keeps, "true", keeps ? "true" : "false");
        add("generator lies in O^+" + tag, plus, "true", plus ? "true" : "false");
    }
    const auto& els = ex.group.elements();
    add("group order", els.size() == 12, "12", std::to_string(els.size()));

    const Eigen::Index n = amb.rank();
    RatMatrix triv = RatMatrix::Zero(n, n), std_ = RatMatrix::Zero(n, n);
    for (const auto& g : els) {
        RatMatrix gr = to_rat(g);
        triv += gr;
        Rat chi = Rat(Int(g.topLeftCorner(6, 6).trace())) / 2;
        std_ += chi * gr;
    }
    triv /= Rat(12);
    std_ *= Rat(3, 12);
    ex.iso = IsotypicData{{triv, std_}};
    const bool sums = RatMatrix(triv + std_) == RatMatrix::Identity(n, n);
    add("isotypic projectors sum to the identity", sums, "true", sums ? "true" : "false");

    RealizabilityReport rep = decide_realizability(ex.group, ex.iso);
    const Sublattice& lg = rep.coinvariant.L_G;
    add("rank L_G", lg.rank() == 4, "4", std::to_string(lg.rank()));
    if (lg.rank() == 4) {
        MinNorm mn = min_norm_and_kissing(lg.lattice());
        add("minimal |norm| of L_G", mn.min_norm == 4, "4", str(mn.min_norm));
        std::vector<IntVector> fours = enumerate_vectors(lg.lattice(), Int(-4));
        bool orth = fours.size() == 4;
        for (std::size_t i = 0; orth && i < fours.size(); ++i)
            for (std::size_t j = i + 1; j < fours.size(); ++j)
                if (lg.lattice().pair(fours[i], fours[j]) != 0) orth = false;
        const bool spans = orth && abs(determinant(rows_of(fours))) == 1;
        add("L_G has 4 pairwise orthogonal (-4)-generators", spans, "diag(-4,-4,-4,-4)",
            std::to_string(fours.size()) + " pairs of norm -4");
    }
    add("metric verdict", rep.metric, "yes", rep.metric ? "yes" : "no");
    add("complex verdict", !rep.complex && rep.reason == "no-trivial-rep-in-complement", "no (no-trivial-rep-in-complement)",
        std::string(rep.complex ? "yes" : "no") + " (" + rep.reason + ")");
    return ex;
}

Example build_nikulin_involution() {
    Example ex;
    ex.name = "nikulin-involution";
    auto add = [&](std::string n, bool ok, std::string want, std::string got) {
        ex.checks.push_back(make_check(std::move(n), ok, std::move(want), std::move(got)));
    };
    const Lattice& amb = k3();
    IntMatrix g = IntMatrix::Zero(22, 22);
    g.topLeftCorner(6, 6) = identity(6);
    g.block(6, 14, 8, 8) = identity(8);
    g.block(14, 6, 8, 8) = identity(8);
    ex.group = IsometryGroup(amb, {g});
    add("group order", ex.group.order() == 2, "2", std::to_string(ex.group.order()));
    add("generator lies in O^+", spinor_plus_membership(g, amb), "true", spinor_plus_membership(g, amb) ? "true" : "false");

    ZGDecomposition zg = zg_decomposition(g, 2);
    const std::string tcr = "(" + std::to_string(zg.t) + "," + std::to_string(zg.c) + "," + std::to_string(zg.r) + ")";
    add("(t,c,r)", zg.t == 6 && zg.c == 0 && zg.r == 8, "(6,0,8)", tcr);
    FixedPointPrediction fp = fixed_point_predictions(2, 8, zg);
    add("predicted Euler characteristic of the fixed set", fp.euler == 8, "8", std::to_string(fp.euler));

    Sublattice fixed = fixed_sublattice(ex.group);
    Signature sf = signature(fixed.gram());
    const Lattice e8m2 = rescale(root_lattice("E8").lattice, -2);
    const Lattice model = direct_sum(Lattice(amb.gram().topLeftCorner(6, 6)), e8m2);
    add("fixed lattice signature", sf.plus == 3 && sf.minus == 11, "(3,11)",
        "(" + std::to_string(sf.plus) + "," + std::to_string(sf.minus) + ")");
    const bool disc_match = disc_form_isometry(discriminant_group(fixed.lattice()), discriminant_group(model));
    add("fixed lattice discriminant form matches U^3 + E8(-2)", disc_match, "true", disc_match ? "true" : "false");

    RealizabilityReport rep = decide_realizability(ex.group);
    IsometryResult iso = lattice_isometry(rep.coinvariant.L_G.lattice(), e8m2);
    add("L_G isometric to E8(-2)", iso.status == SearchStatus::found, "found", to_string(iso.status));
    RegularSummandReport rs = regular_summand_discriminant_check(g, amb, 2);
    add("im(g-1) summand check", rs.consistent && rs.disc_dimension == 8, "disc dimension 8",
        "disc dimension " + std::to_string(rs.disc_dimension) + (rs.consistent ? ", consistent" : ", inconsistent"));
    add("metric verdict", rep.metric, "yes", rep.metric ? "yes" : "no");
    add("complex verdict", rep.complex, "yes", rep.complex ? "yes" : "no");
    return ex;
}

// ---------------------------------------------------------------------------------------------
// Coxeter model

namespace {

// Three mutually orthogonal A2 pairs in E8, simple-root coordinates.
std::vector<std::pair<IntVector, IntVector>> e8_a2_triple() {
    const IntMatrix G = e8_gram();
    const auto roots = e8_roots();
    std::vector<std::pair<IntVector, IntVector>> chosen;
    std::function<bool()> rec = [&]() {
        if (chosen.size() == 3) return true;
        for (const auto& a : roots) {
            bool ok = true;
            for (const auto& [x, y] : chosen)
                if (a.dot(G * x) != 0 || a.dot(G * y) != 0) ok = false;
            if (!ok) continue;
            for (const auto& b : roots) {
                if (a.dot(G * b) != -1) continue;
                bool okb = true;
                for (const auto& [x, y] : chosen)
                    if (b.dot(G * x) != 0 || b.dot(G * y) != 0) okb = false;
                if (!okb) continue;
                chosen.push_back({a, b});
                if (rec()) return true;
                chosen.pop_back();
            }
            return false;   // a is forced once it is orthogonal to everything chosen
        }
        return false;
    };
    if (!rec()) throw Error("internal", "no A2^3 inside E8");
    return chosen;
}

}  // namespace

Example build_coxeter_model() {
    Example ex;
    ex.name = "coxeter-model";
    const Lattice& amb = k3();
    auto embed = [](const IntVector& v, Eigen::Index off) {
        IntVector x = IntVector::Zero(22);
        x.segment(off, 8) = v;
        return x;
    };
    auto tri = e8_a2_triple();
    std::vector<std::pair<IntVector, IntVector>> a2s;
    {
        IntVector a = IntVector::Zero(22), b = IntVector::Zero(22);
        a(0) = 1, a(1) = -1;            // e1 - f1
        b(1) = 1, b(2) = 1, b(3) = -1;  // f1 + e2 - f2
        a2s.push_back({a, b});
        IntVector c = IntVector::Zero(22);
        c(4) = 1, c(5) = -1;            // e3 - f3
        IntVector d = embed(tri[2].first, 6);
        d(5) += 1;                      // f3 + r
        a2s.push_back({c, d});
    }
    for (Eigen::Index off : {6, 14})
        for (int i = 0; i < 2; ++i) a2s.push_back({embed(tri[i].first, off), embed(tri[i].second, off)});

    IntMatrix g = identity(22), span(12, 22);
    for (std::size_t i = 0; i < a2s.size(); ++i) {
        g = IntMatrix(g * reflection(amb, a2s[i].first) * reflection(amb, a2s[i].second));
        span.row(2 * static_cast<Eigen::Index>(i)) = a2s[i].first.transpose();
        span.row(2 * static_cast<Eigen::Index>(i) + 1) = a2s[i].second.transpose();
    }
    ex.group = IsometryGroup(amb, {g});
    auto add = [&](std::string n, bool ok, std::string want, std::string got) {
        ex.checks.push_back(make_check(std::move(n), ok, std::move(want), std::move(got)));
    };
    IntMatrix want = IntMatrix::Zero(12, 12);
    for (int i = 0; i < 6; ++i) want.block(2 * i, 2 * i, 2, 2) = -root_lattice("A2").lattice.gram();
    const bool six = IntMatrix(span * amb.gram() * span.transpose()) == want;
    add("six orthogonal A2(-1) summands", six, "Gram A2(-1)^6", six ? "Gram A2(-1)^6" : "mismatch");
    const bool prim = is_primitive(Sublattice(amb, span));
    add("A2(-1)^6 is primitive", prim, "true", prim ? "true" : "false");
    add("group order", ex.group.order() == 3, "3", std::to_string(ex.group.order()));
    add("generator lies in O^+", spinor_plus_membership(g, amb), "true", spinor_plus_membership(g, amb) ? "true" : "false");
    ZGDecomposition zg = zg_decomposition(g, 3);
    add("no cyclotomic summands", zg.c == 0, "0", std::to_string(zg.c));
    return ex;
}

// ---------------------------------------------------------------------------------------------
// Frames of even unimodular lattices of signature (3,19)

namespace {

// y with w . y = 1 for a primitive integer vector w.
IntVector unit_dual(const IntVector& w) {
    SmithResult s = smith_normal_form(IntMatrix(w.transpose()));
    IntVector y = s.V.col(0);
    Int d = w.dot(y);
    if (abs(d) != 1) throw Error("internal", "vector is not primitive");
    return y * d;
}

Int int_sqrt_exact(const Int& x, bool& ok) {
    Int r = sqrt(x);
    ok = r * r == x;
    return r;
}

// LLL reduction of the rows B with respect to a positive majorant of the indefinite form G.
IntMatrix reduce_rows(const IntMatrix& B, const IntMatrix& G) {
    const IntMatrix H = B * G * B.transpose();
    const RatMatrix P = orthogonal_basis(H);
    RatMatrix D = P * to_rat(H) * P.transpose();
    for (Eigen::Index i = 0; i < D.rows(); ++i) D(i, i) = abs(D(i, i));
    const RatMatrix Pi = inverse(P);
    RatMatrix M = Pi * D * Pi.transpose();
    Int den = 1;
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j) den = lcm(den, mp::denominator(M(i, j)));
    const IntMatrix Mi = to_int(RatMatrix(M * Rat(den)));
    return lll_reduce(Mi).basis * B;
}

// Isotropic vector of the span of rows B (input coordinates) under G, or nothing.
// `pos` are positive vectors inside the span, tried as anchors before basis vectors.
std::optional<IntVector> isotropic_search(const IntMatrix& B0, const IntMatrix& G, std::vector<IntVector> pos, long& attempts) {
    const IntMatrix B = reduce_rows(B0, G);
    const IntMatrix H = B * G * B.transpose();
    const Signature sig = signature(H);
    if (sig.plus == 0 || sig.minus == 0) return std::nullopt;
    std::optional<IntVector> x;
    Int n = 0;
    for (const auto& h : pos) {
        Int hn = h.dot(G * h);
        if (hn > 0 && (!x || hn < n)) x = h, n = hn;
    }
    if (!x) {
        const Eigen::Index k = B.rows();
        for (Eigen::Index i = 0; i < k; ++i)
            for (Eigen::Index j = i; j < k; ++j)
                for (int s : {1, -1}) {
                    if (i == j && s < 0) continue;
                    IntVector v = B.row(i).transpose();
                    if (j != i) v += s * IntVector(B.row(j).transpose());
                    Int vn = v.dot(G * v);
                    if (vn > 0 && (!x || vn < n)) x = v, n = vn;
                }
    }
    if (!x) {
        const RatMatrix P = orthogonal_basis(H);
        for (Eigen::Index i = 0; i < P.rows(); ++i) {
            RatVector r = P.row(i).transpose();
            if (r.dot(to_rat(H) * r) <= 0) continue;
            Int den = 1;
            for (Eigen::Index j = 0; j < r.size(); ++j) den = lcm(den, mp::denominator(r(j)));
            IntVector v = make_primitive(IntVector(B.transpose() * to_int(RatVector(r * Rat(den)))));
            Int vn = v.dot(G * v);
            if (!x || vn < n) x = v, n = vn;
        }
    }
    if (!x) return std::nullopt;
    IntMatrix K = kernel(IntMatrix((B * G * *x).transpose()));
    const IntMatrix W = K * B;
    if (sig.plus >= 2) {
        std::vector<IntVector> next;
        for (const auto& h : pos) {
            IntVector hp = h * n - *x * h.dot(G * *x);
            if (!hp.isZero()) next.push_back(make_primitive(hp));
        }
        return isotropic_search(W, G, next, attempts);
    }
    // x^perp is negative definite: look for y with y.y = -n k^2
    Lattice wl(IntMatrix(W * G * W.transpose()));
    std::optional<IntVector> found;
    for (Int bound : {n, Int(4 * n), Int(9 * n), Int(25 * n)}) {
        for_each_short_vector(wl, bound, [&](const IntVector& c, const Int& norm) {
            ++attempts;
            if ((-norm) % n != 0) return true;
            bool sq = false;
            Int k = int_sqrt_exact(Int(-norm / n), sq);
            if (!sq) return true;
            found = make_primitive(IntVector(*x * k + W.transpose() * c));
            return false;
        });
        if (found) return found;
    }
    return std::nullopt;
}

struct Split {
    IntVector z, f;       // input coordinates
    IntMatrix rest;       // rows: complement of <z, f> in the span
};

Split split_hyperbolic(const IntMatrix& B, const IntMatrix& G, const IntVector& z) {
    const IntMatrix H = B * G * B.transpose();
    auto zc = solve_in_span(B, to_rat(z));
    if (!zc || !is_integral(RatMatrix(*zc))) throw Error("internal", "isotropic vector outside the span");
    IntVector zi = make_primitive(to_int(*zc));
    IntVector y = unit_dual(IntVector(H * zi));
    Int yy = y.dot(H * y);
    IntVector fi = y - zi * (yy / 2);
    IntMatrix cons(2, H.rows());
    cons.row(0) = (H * zi).transpose();
    cons.row(1) = (H * fi).transpose();
    Split s;
    s.z = B.transpose() * zi;
    s.f = B.transpose() * fi;
    s.rest = IntMatrix(kernel(cons) * B);
    return s;
}

// Projection along a hyperbolic pair; integral for vectors of the ambient.
IntVector project_off(const IntVector& h, const Split& s, const IntMatrix& G) {
    return h - s.z * h.dot(G * s.f) - s.f * h.dot(G * s.z);
}

// E8(-1) bases for a negative definite even unimodular rank-16 lattice of type E8^2.
std::optional<IntMatrix> e8_pair_frame(const IntMatrix& B, const IntMatrix& G) {
    Lattice l(IntMatrix(B * G * B.transpose()));
    RootSystem rs = classify_root_system(l);
    if (rs.label() != "E8^2") return std::nullopt;
    const Lattice e8m(IntMatrix(-e8_gram()));
    IntMatrix out(16, G.rows());
    for (int c = 0; c < 2; ++c) {
        const IntMatrix simple = rs.components[static_cast<std::size_t>(c)].simple;
        Lattice comp(IntMatrix(simple * l.gram() * simple.transpose()));
        IsometryResult iso = lattice_isometry(e8m, comp);
        if (iso.status != SearchStatus::found) return std::nullopt;
        out.middleRows(8 * c, 8) = iso.T.transpose() * simple * B;
    }
    return out;
}

// For l of type D16+: the weight eps_1 + ... + eps_8, whose 2-neighbour is E8^2 (coordinates of l).
std::optional<IntVector> half_sum_weight(const Lattice& l) {
    RootSystem rs = classify_root_system(l);
    if (rs.label() != "D16") return std::nullopt;
    const IntMatrix& S = rs.components[0].simple;
    const IntMatrix cartan = -(S * l.gram() * S.transpose());
    const RatMatrix cinv = inverse(to_rat(cartan));
    for (Eigen::Index j = 0; j < cartan.rows(); ++j) {
        if (cinv(j, j) != 8) continue;
        // w . alpha_i = -delta_ij in the negative definite form
        RatVector w = to_rat(S).transpose() * RatVector(cinv.col(j));
        if (is_integral(RatMatrix(w))) return to_int(w);
    }
    return std::nullopt;
}

}  // namespace

K3Frame k3_frame(const IntMatrix& G, const std::vector<IntVector>& hints) {
    K3Frame fr;
    const Eigen::Index n = G.rows();
    if (n != 22 || abs(determinant(G)) != 1 || !is_even(Lattice(G))) throw Error("no-frame", "not an even unimodular rank-22 lattice");
    Signature sg = signature(G);
    if (sg.plus != 3 || sg.minus != 19) throw Error("no-frame", "signature is not (3,19)");

    std::vector<IntVector> iso_hints, pos_hints;
    for (const auto& h : hints) (h.dot(G * h) == 0 ? iso_hints : pos_hints).push_back(h);
    std::vector<Split> splits;
    IntMatrix B = identity(n);
    for (int stage = 0; stage < 3; ++stage) {
        std::optional<IntVector> z;
        while (!iso_hints.empty() && !z) {
            IntVector h = iso_hints.front();
            iso_hints.erase(iso_hints.begin());
            for (const auto& s : splits) h = project_off(h, s, G);
            if (!h.isZero() && h.dot(G * h) == 0) z = make_primitive(h);
        }
        if (!z) {
            std::vector<IntVector> pos;
            for (IntVector h : pos_hints) {
                for (const auto& s : splits) h = project_off(h, s, G);
                if (h.dot(G * h) > 0) pos.push_back(h);
            }
            z = isotropic_search(B, G, pos, fr.isotropic_attempts);
        }
        if (!z) throw Error("no-frame", "no isotropic vector found");
        splits.push_back(split_hyperbolic(B, G, *z));
        B = splits.back().rest;
    }
    std::optional<IntMatrix> e8s = e8_pair_frame(B, G);
    if (!e8s) {
        // Kneser neighbours at the last hyperbolic plane: z' = 2z + m f + w with w.w = -4m
        const Split last = splits.back();
        const IntMatrix B2 = [&] {
            IntMatrix m(B.rows() + 2, n);
            m.row(0) = last.z.transpose();
            m.row(1) = last.f.transpose();
            m.bottomRows(B.rows()) = B;
            return m;
        }();
        Lattice rest(IntMatrix(B * G * B.transpose()));
        auto attempt = [&](const IntVector& c, const Int& norm) {
            ++fr.isotropic_attempts;
            if ((-norm) % 4 != 0) return true;
            const Int m = -norm / 4;
            IntVector zz = make_primitive(IntVector(last.z * 2 + last.f * m + B.transpose() * c));
            Split s = split_hyperbolic(B2, G, zz);
            auto e = e8_pair_frame(s.rest, G);
            if (!e) return true;
            splits.back() = s;
            e8s = e;
            return false;
        };
        if (auto w = half_sum_weight(rest)) attempt(*w, rest.norm(*w));
        if (!e8s) for_each_short_vector(rest, Int(8), attempt);
        if (!e8s) throw Error("no-frame", "no E8^2 complement found");
    }
    fr.basis = IntMatrix(22, n);
    for (int i = 0; i < 3; ++i) {
        fr.basis.row(2 * i) = splits[static_cast<std::size_t>(i)].z.transpose();
        fr.basis.row(2 * i + 1) = splits[static_cast<std::size_t>(i)].f.transpose();
    }
    fr.basis.bottomRows(16) = *e8s;
    if (IntMatrix(fr.basis * G * fr.basis.transpose()) != k3().gram()) throw Error("internal", "frame verification failed");
    return fr;
}

// ---------------------------------------------------------------------------------------------
// Model prime actions

ModelPrimeAction build_model_prime_action(long p, long budget) {
    if (p != 2 && p != 3 && p != 5 && p != 7) throw Error("unsupported-prime", "p must be one of 2, 3, 5, 7");
    ModelPrimeAction out;
    out.p = p;
    Example& ex = out.example;
    ex.name = "model-prime-" + std::to_string(p);
    auto add = [&](std::string n, bool ok, std::string want, std::string got) {
        ex.checks.push_back(make_check(std::move(n), ok, std::move(want), std::move(got)));
    };

    const NikulinFamily fam = build_family(p);
    out.nu = fam.nu;
    const Lattice L = fam.L.lattice();
    std::string tname;
    const Lattice T = lambda_G_candidate(p, &tname);
    const Eigen::Index nl = L.rank(), nt = T.rank(), n = nl + nt;
    if (n != 22) throw Error("internal", "ranks do not add up to 22");

    // glue along an anti-isometry of discriminant forms
    DiscriminantForm dl = discriminant_group(L), dt = discriminant_group(T);
    DiscIsometryResult gl = find_disc_form_isometry(dl, opposite(dt));
    add("discriminant forms of L_p and " + tname + " are opposite", gl.found, "true", gl.found ? "true" : "false");
    if (!gl.found) throw Error("internal", "no gluing");
    RatMatrix rows = RatMatrix::Zero(n + static_cast<Eigen::Index>(dl.ngens()), n);
    rows.topRows(n) = RatMatrix::Identity(n, n);
    for (std::size_t i = 0; i < dl.ngens(); ++i) {
        const Eigen::Index r = n + static_cast<Eigen::Index>(i);
        rows.block(r, 0, 1, nl) = dl.generators.row(static_cast<Eigen::Index>(i));
        RatVector h = RatVector::Zero(nt);
        for (std::size_t j = 0; j < dt.ngens(); ++j)
            h += Rat(gl.images[i][j]) * RatVector(dt.generators.row(static_cast<Eigen::Index>(j)).transpose());
        rows.block(r, nl, 1, nt) = h.transpose();
    }
    const RatMatrix R = span_basis(rows);
    const IntMatrix GLT = block_diag(L.gram(), T.gram());
    const IntMatrix GM = to_int(RatMatrix(R * to_rat(GLT) * R.transpose()));
    out.glued_gram = GM;
    Signature sm = signature(GM);
    const bool unimod = abs(determinant(GM)) == 1 && is_even(Lattice(GM)) && sm.plus == 3 && sm.minus == 19;
    add("glued lattice is even unimodular of signature (3,19)", unimod, "true", unimod ? "true" : "false");

    const RatMatrix Rt = R.transpose(), Rti = inverse(Rt);
    IntMatrix sLT = block_diag(fam.sigma_L, identity(nt));
    const IntMatrix sM = to_int(RatMatrix(Rti * to_rat(sLT) * Rt));

    // isotropic and positive vectors of the candidate summand, in glued coordinates
    std::vector<IntVector> hints;
    auto from_T = [&](const IntVector& t) {
        RatVector v = RatVector::Zero(n);
        v.tail(nt) = to_rat(t);
        return to_int(RatVector(Rti * v));
    };
    const IntMatrix GT = T.gram();
    for (Eigen::Index i = 0; i + 1 < nt; ++i)
        if (GT(i, i) == 0 && GT(i + 1, i + 1) == 0 && GT(i, i + 1) != 0) hints.push_back(from_T(unit(nt, i)));
    for (Eigen::Index i = 0; i < nt; ++i)
        if (GT(i, i) > 0) hints.push_back(from_T(unit(nt, i)));

    const K3Frame fr = k3_frame(GM, hints);
    const IntMatrix Ft = fr.basis.transpose();
    const IntMatrix g = to_int(RatMatrix(inverse(to_rat(Ft)) * to_rat(sM) * to_rat(Ft)));
    const Lattice& amb = k3();
    ex.group = IsometryGroup(amb, {g});

    add("generator preserves the K3 Gram", preserves_gram(g, amb), "true", preserves_gram(g, amb) ? "true" : "false");
    const long ord = matrix_order(g, 2 * p);
    add("order", ord == p, std::to_string(p), std::to_string(ord));
    const bool plus = spinor_plus_membership(g, amb);
    add("generator lies in O^+", plus, "true", plus ? "true" : "false");
    Sublattice fixed = fixed_sublattice(ex.group);
    Signature sf = signature(fixed.gram());
    add("fixed lattice signature", sf.plus == 3 && sf.minus == 19 - static_cast<int>(nl), "(3," + std::to_string(19 - nl) + ")",
        "(" + std::to_string(sf.plus) + "," + std::to_string(sf.minus) + ")");

    ZGDecomposition zg = zg_decomposition(g, p);
    const std::string tcr = "(" + std::to_string(zg.t) + "," + std::to_string(zg.c) + "," + std::to_string(zg.r) + ")";
    add("no cyclotomic summands", zg.c == 0, "0", tcr);
    FixedPointPrediction fp = fixed_point_predictions(p, fam.nu, zg);
    const long e = 24 - fam.nu * p;
    add("Euler prediction 24 - nu p equals nu", fp.euler == fam.nu && e == fam.nu, std::to_string(fam.nu), std::to_string(fp.euler));

    CoinvariantResult co = coinvariant_L_G(ex.group);
    const Lattice lg = co.L_G.lattice();
    const bool disc_ok = lg.rank() == nl && disc_form_isometry(discriminant_group(lg), dl);
    add("L_G has the rank and discriminant form of L_p", disc_ok, "true", disc_ok ? "true" : "false");
    // the construction carries L_p onto L_G: transport its basis and verify
    IntMatrix E(22, nl);
    const RatMatrix Fti = inverse(to_rat(Ft));
    for (Eigen::Index i = 0; i < nl; ++i) {
        RatVector v = RatVector::Zero(n);
        v(i) = 1;
        E.col(i) = to_int(RatVector(Fti * Rti * v));
    }
    bool transported = IntMatrix(E.transpose() * amb.gram() * E) == L.gram();
    if (transported) {
        IntMatrix C(nl, nl);
        for (Eigen::Index i = 0; i < nl && transported; ++i) {
            auto c = solve_in_span(co.L_G.basis(), to_rat(IntVector(E.col(i))));
            if (!c || !is_integral(RatMatrix(*c))) transported = false;
            else C.col(i) = to_int(*c);
        }
        transported = transported && abs(determinant(C)) == 1;
    }
    out.certification = transported ? "isometry" : "failed";
    add("L_G isometric to L_p (transported basis)", transported, "isometry", out.certification);
    if (nl <= 12) {
        IsometryResult iso = lattice_isometry(lg, L, budget);
        add("L_G isometric to L_p (independent search)", iso.status == SearchStatus::found, "found", to_string(iso.status));
    }
    return out;
}

}  // namespace k3lat
