// One pass/fail line per acceptance criterion. Exit status 0 iff every criterion passes.

#include "helpers.hpp"
#include "nikulin_oracles.hpp"
#include "oracles.hpp"

#include "k3lat/gsignature.hpp"
#include "k3lat/nikulin.hpp"
#include "k3lat/poly.hpp"
#include "k3lat/realization.hpp"
#include "k3lat/shortvec.hpp"
#include "k3lat/standard.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

using namespace k3test;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void need(bool cond, const std::string& what) {
        if (cond) return;
        ok = false;
        detail += (detail.empty() ? "" : "; ") + what;
    }
};

const std::vector<long> primes{2, 3, 5, 7};
const std::map<long, long> nu_of{{2, 8}, {3, 6}, {5, 4}, {7, 3}};

std::map<long, std::vector<Check>>& family_reports() {
    static std::map<long, std::vector<Check>> r;
    return r;
}

const Check* find(const std::vector<Check>& cs, const std::string& name) {
    for (const auto& c : cs)
        if (c.name == name) return &c;
    return nullptr;
}

void need_checks(Outcome& o, long p, const std::vector<std::string>& names) {
    const auto& cs = family_reports().at(p);
    for (const auto& n : names) {
        const Check* c = find(cs, n);
        o.need(c && c->passed(), "p=" + std::to_string(p) + ": " + n + (c ? " (" + c->computed + ")" : " missing"));
    }
}

Outcome defect_closure() {
    Outcome o;
    for (long p : primes) {
        const long nu = nu_of.at(p);
        o.need(Rat(nu) * defect_point(p, p - 1) == Rat((p - 1) * (nu * p - 16)), "nu*def p=" + std::to_string(p));
        o.need(24 - nu * p == nu, "24 - nu p p=" + std::to_string(p));
    }
    return o;
}

Outcome defect_maxima() {
    Outcome o;
    const std::map<long, Rat> want{{3, Rat(2, 3)}, {5, Rat(4)}, {7, Rat(10)}};
    for (long p : {3L, 5L, 7L}) {
        const MaxDefectReport m = max_defect_check(p);
        o.need(m.strict_at_minus_one && m.argmax == p - 1 && m.max == want.at(p), "p=" + std::to_string(p) + " max " + m.max.str());
        for (long q = 1; q < p - 1; ++q) o.need(defect_point(p, q) < m.max, "scan p=" + std::to_string(p));
    }
    return o;
}

Outcome nikulin_family() {
    Outcome o;
    for (long p : primes) {
        family_reports()[p] = verify_family(p);
        need_checks(o, p, {"rho.rho = -2(p-1)p", "varpi.varpi", "[N_p : H2D] = p", "[N_p : L_p] = p", "rho in L_p",
                           "disc L_p = (Z/p)^nu", "L_p has no (-2)-vectors", "sigma has order p", "sigma acts trivially on disc L_p"});
        // sigma preserves L_p: its matrix on the L_p basis is integral and keeps the Gram
        const NikulinFamily fam = build_family(p);
        o.need(IntMatrix(fam.sigma_L.transpose() * fam.L.gram() * fam.sigma_L) == fam.L.gram(), "sigma on L_p");
        o.need(to_int(RatMatrix(to_rat(fam.L.basis()) * to_rat(fam.sigma_N).transpose())) ==
                   IntMatrix(fam.sigma_L.transpose() * fam.L.basis()),
               "sigma_L matches sigma_N");
    }
    return o;
}

Outcome identifications() {
    Outcome o;
    need_checks(o, 2, {"L_2 isometric to E8(-2)", "disc(N_2) = disc(U(2)^3)", "disc(E8(-2)) differs from disc(A1(-2)^8)"});
    need_checks(o, 3, {"L_3 minimal |norm| and kissing number"});
    o.need(l3_norm4_count() == 756, "naive L_3 norm-4 count");
    return o;
}

Outcome kp_relations() {
    Outcome o;
    for (long p : primes)
        need_checks(o, p, {"K_p = i(N_p) + U", "s.rho = 2(p-1)", "(ps+rho)^2 = -2p", "e' is isotropic", "L_p^perp in K_p = <e', f> = U(p)",
                           "sigma extends to K_p fixing e', f"});
    return o;
}

Outcome genus() {
    Outcome o;
    for (long p : {3L, 5L, 7L}) {
        const GenusReport g = genus_check_lambda_G(p, build_family(p));
        const long lr = nu_of.at(p) * (p - 1);
        o.need(g.candidate.rank() == 22 - lr && g.rank_ok, "rank p=" + std::to_string(p));
        o.need(g.signature == Signature{3, static_cast<int>(19 - lr), 0} && g.signature_ok, "signature p=" + std::to_string(p));
        o.need(g.opposite_match, "disc p=" + std::to_string(p));
    }
    return o;
}

void need_all(Outcome& o, const std::vector<Check>& cs) {
    for (const auto& c : cs) o.need(c.passed(), c.name + " (" + c.computed + ")");
}

Outcome a4() {
    Outcome o;
    const Example e = build_a4_example();
    need_all(o, e.checks);
    o.need(e.group.order() == 12, "order");
    const RealizabilityReport r = decide_realizability(e.group, e.iso);
    o.need(r.metric && !r.complex, "verdicts");
    o.need(r.coinvariant.L_G.rank() == 4, "rank L_G");
    return o;
}

Outcome nikulin_involution() {
    Outcome o;
    const Example e = build_nikulin_involution();
    need_all(o, e.checks);
    const ZGDecomposition z = zg_decomposition(e.group.generators()[0], 2);
    o.need(z.t == 6 && z.c == 0 && z.r == 8, "(t,c,r)");
    return o;
}

Outcome dehn() {
    Outcome o;
    IntVector v = IntVector::Zero(22);
    v(0) = 1;
    v(1) = -1;
    const DehnTwistReport d = dehn_twist_obstruction(v);
    o.need(!d.realizability.metric, "metric verdict");
    o.need(d.witness_is_v, "witness");
    o.need(d.zg.blocks.size() > 2 && d.zg.blocks[2] == 1, "one size-2 block");
    o.need(d.realizable_blocks.size() > 2 && d.realizable_blocks[2] == 8, "eight size-2 blocks");
    o.need(d.profile_differs, "profiles differ");
    return o;
}

IntMatrix random_symmetric(Eigen::Index n, std::mt19937_64& rng, int spread) {
    std::uniform_int_distribution<int> d(-spread, spread);
    IntMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) g(i, j) = g(j, i) = d(rng);
    return g;
}

IntMatrix companion(const IntPoly& f) {
    const Eigen::Index n = static_cast<Eigen::Index>(f.size()) - 1;
    IntMatrix m = IntMatrix::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) m(i, i - 1) = 1;
    for (Eigen::Index i = 0; i < n; ++i) m(i, n - 1) = -f[static_cast<std::size_t>(i)];
    return m;
}

IntMatrix cycle(long p) {
    IntMatrix m = IntMatrix::Zero(p, p);
    for (long i = 0; i < p; ++i) m((i + 1) % p, i) = 1;
    return m;
}

IntVector unit(Eigen::Index n, Eigen::Index i) {
    IntVector v = IntVector::Zero(n);
    v(i) = 1;
    return v;
}

bool spinor_multiplicative(const IsometryGroup& g) {
    const auto& els = g.elements();
    std::map<std::string, bool> sp;
    for (const auto& e : els) sp[key(e)] = spinor_plus_membership(e, g.ambient());
    for (const auto& a : els)
        for (const auto& b : els) {
            auto it = sp.find(key(IntMatrix(a * b)));
            if (it == sp.end() || it->second != (sp[key(a)] == sp[key(b)])) return false;
        }
    return true;
}

Outcome properties() {
    Outcome o;
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<int> dim6(1, 6), dim5(1, 5), dim4(1, 4), bnd(1, 12), cnt(0, 3);

    int bad = 0;
    for (int cases = 0; cases < 200;) {
        const IntMatrix g = random_symmetric(dim6(rng), rng, 6);
        const Int d = determinant(g);
        if (d == 0) continue;
        ++cases;
        Int prod = 1;
        for (const auto& x : discriminant_group(Lattice(g)).orders) prod *= x;
        bad += prod != abs(d);
    }
    o.need(bad == 0, std::to_string(bad) + " SNF/det mismatches");

    bad = 0;
    for (int t = 0; t < 100; ++t) {
        const IntMatrix g = random_definite(dim4(rng), rng);
        const Int bound = bnd(rng);
        std::map<std::string, Int> got;
        for (const auto& sv : short_vectors(Lattice(g), bound)) got[key(IntMatrix(sv.v))] = sv.norm;
        bad += got != naive_box_vectors(g, bound);
    }
    o.need(bad == 0, std::to_string(bad) + " Fincke-Pohst mismatches");

    bad = 0;
    for (int t = 0; t < 100; ++t) {
        const IntMatrix a = random_symmetric(dim5(rng), rng, 4), b = random_symmetric(dim5(rng), rng, 4);
        const Signature sa = signature(a), sb = signature(b), ss = signature(block_diag(a, b));
        bad += !(ss.plus == sa.plus + sb.plus && ss.minus == sa.minus + sb.minus && ss.zero == sa.zero + sb.zero);
    }
    o.need(bad == 0, std::to_string(bad) + " signature additivity failures");

    bad = 0;
    for (long p : primes)
        for (int t = 0; t < 50; ++t) {
            long nt = cnt(rng), nc = cnt(rng), nr = cnt(rng);
            if (nt + nc + nr == 0) nt = 1;
            IntMatrix m(0, 0);
            for (long i = 0; i < nt; ++i) m = block_diag(m, identity(1));
            for (long i = 0; i < nc; ++i) m = block_diag(m, companion(cyclotomic(static_cast<int>(p))));
            for (long i = 0; i < nr; ++i) m = block_diag(m, cycle(p));
            const IntMatrix u = random_unimodular(m.rows(), rng);
            const ZGDecomposition z = zg_decomposition(to_int(RatMatrix(to_rat(u) * to_rat(m) * inverse(to_rat(u)))), p);
            bad += !(z.t == nt && z.c == nc && z.r == nr);
        }
    o.need(bad == 0, std::to_string(bad) + " planted (t,c,r) misses");

    // closed groups of order 12, 32 and 48
    const Lattice k3 = k3_lattice().lattice;
    IntMatrix swap = IntMatrix::Zero(22, 22);
    for (int i = 0; i < 6; ++i) swap(i, i) = 1;
    for (int i = 0; i < 8; ++i) swap(14 + i, 6 + i) = swap(6 + i, 14 + i) = 1;
    const IntVector w = unit(22, 0) + unit(22, 1);
    const IntMatrix hyp = identity(22) - w * (k3.gram() * w).transpose();
    std::vector<IsometryGroup> groups{
        build_a4_example().group,
        IsometryGroup(k3, {reflection(k3, unit(22, 6)), hyp, swap, IntMatrix(-identity(22))}),
        IsometryGroup(k3, {reflection(k3, unit(22, 6)), reflection(k3, unit(22, 8)), reflection(k3, unit(22, 9)), IntMatrix(-identity(22))}),
    };
    std::set<std::size_t> orders;
    for (const auto& g : groups) {
        orders.insert(g.order());
        o.need(spinor_multiplicative(g), "spinor multiplicativity at order " + std::to_string(g.order()));
    }
    o.need(orders == std::set<std::size_t>{12, 32, 48}, "group orders");
    return o;
}

struct Criterion {
    int id;
    const char* title;
    double limit_s;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "defect closure", 1, defect_closure},
        {2, "defect maxima", 1, defect_maxima},
        {3, "Nikulin family", 60, nikulin_family},
        {4, "identifications", 120, identifications},
        {5, "K_p relations", 10, kp_relations},
        {6, "genus checks", 60, genus},
        {7, "A4 example", 30, a4},
        {8, "Nikulin involution", 30, nikulin_involution},
        {9, "Dehn twist obstruction", 5, dehn},
        {10, "property suites", 120, properties},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = t < c.limit_s;
        if (!in_time) o.detail += (o.detail.empty() ? "" : "; ") + std::string("over time limit");
        const bool pass = o.ok && in_time;
        failed += !pass;
        std::printf("criterion %2d: %s  %-24s exact, %.2f s (limit %.0f s)%s%s\n", c.id, pass ? "PASS" : "FAIL", c.title, t, c.limit_s,
                    o.detail.empty() ? "" : "  ", o.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
