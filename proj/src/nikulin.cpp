#include "k3lat/nikulin.hpp"

#include "k3lat/poly.hpp"
#include "k3lat/standard.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace k3lat {

namespace {

std::string str(const Int& x) { return x.str(); }
std::string str(const Rat& x) { return x.str(); }

// x in N coordinates lies in L: solve against the L basis.
bool in_sublattice(const IntMatrix& basis_rows, const RatVector& x) {
    auto c = solve_in_span(basis_rows, x);
    if (!c) return false;
    for (Eigen::Index i = 0; i < c->size(); ++i)
        if (mp::denominator((*c)(i)) != 1) return false;
    return true;
}

}  // namespace

std::vector<long> family_k_vector(long p) {
    switch (p) {
        case 2: return std::vector<long>(8, 1);
        case 3: return std::vector<long>(6, 1);
        case 5: return {1, 1, 2, 2};
        case 7: return {1, 2, 3};
        default: throw Error("unsupported-prime", "p must be one of 2, 3, 5, 7");
    }
}

IntVector NikulinFamily::d_in_N(long i, long j) const {
    const Eigen::Index n = H2D.rank();
    RatVector d = RatVector::Zero(n);
    if (j == 0) {
        for (long m = 1; m < p; ++m) d(d_index(i, m)) = -1;
    } else {
        d(d_index(i, j)) = 1;
    }
    return to_N(d);
}

IntVector NikulinFamily::to_N(const RatVector& d) const {
    RatVector c = inverse(RatMatrix(N_basis.transpose())) * d;
    if (!is_integral(RatMatrix(c))) throw Error("not-in-lattice", "vector is not in N_p");
    return to_int(c);
}

NikulinFamily build_family(long p) {
    NikulinFamily fam;
    fam.p = p;
    fam.k = family_k_vector(p);
    fam.nu = static_cast<long>(fam.k.size());
    if (fam.nu * (p + 1) != 24) throw Error("internal", "nu (p + 1) != 24");
    const Eigen::Index n = static_cast<Eigen::Index>(fam.nu * (p - 1));

    Lattice a = rescale(root_lattice("A", static_cast<int>(p - 1)).lattice, -1);
    IntMatrix g(0, 0);
    for (long i = 0; i < fam.nu; ++i) g = block_diag(g, a.gram());
    fam.H2D = Lattice(g);

    fam.varpi = RatVector::Zero(n);
    fam.rho = RatVector::Zero(n);
    for (long i = 0; i < fam.nu; ++i)
        for (long j = 1; j < p; ++j) {
            fam.varpi(fam.d_index(i, j)) = Rat(fam.k[i] * j, p);
            fam.rho(fam.d_index(i, j)) = Rat(-j * (p - j), 2);
        }

    RatMatrix gens(n + 1, n);
    gens.topRows(n) = RatMatrix::Identity(n, n);
    gens.row(n) = fam.varpi.transpose();
    fam.N_basis = span_basis(gens);
    RatMatrix gn = fam.N_basis * to_rat(g) * fam.N_basis.transpose();
    if (!is_integral(gn)) throw Error("internal", "N_p is not integral");
    fam.N = Lattice(to_int(gn));
    if (!is_even(fam.N)) throw Error("internal", "N_p is not even");
    fam.varpi_N = fam.to_N(fam.varpi);
    if (p == 2) fam.rho_N = IntVector(-fam.varpi_N);
    else fam.rho_N = fam.to_N(fam.rho);

    fam.L = build_Lp(fam);
    SigmaMatrices s = build_sigma(fam);
    fam.sigma_D = s.D;
    fam.sigma_N = s.N;
    fam.sigma_L = s.L;
    return fam;
}

KUniquenessReport k_vector_uniqueness(long p) {
    KUniquenessReport r;
    r.p = p;
    if (p == 2) {
        r.vacuous = true;
        r.unique = true;
        return r;
    }
    const long nu = 24 / (p + 1);
    std::vector<long> squares;
    for (long x = 1; x < p; ++x) squares.push_back(x * x % p);
    std::sort(squares.begin(), squares.end());
    squares.erase(std::unique(squares.begin(), squares.end()), squares.end());
    std::vector<long> cur;
    std::function<void(std::size_t, long)> rec = [&](std::size_t from, long sum) {
        if (static_cast<long>(cur.size()) == nu) {
            if (sum % p == 0) r.solutions.push_back(cur);
            return;
        }
        for (std::size_t i = from; i < squares.size(); ++i) {
            cur.push_back(squares[i]);
            rec(i, sum + squares[i]);
            cur.pop_back();
        }
    };
    rec(0, 0);
    r.unique = r.solutions.size() == 1;
    return r;
}

Sublattice build_Lp(const NikulinFamily& fam) {
    const Eigen::Index n = fam.N.rank();
    const long p = fam.p;
    IntVector f = fam.N.gram() * fam.rho_N;
    IntMatrix a(1, n + 1);
    a.leftCols(n) = f.transpose();
    a(0, n) = p;
    IntMatrix ker = kernel(a);
    IntMatrix rows = hermite_normal_form(IntMatrix(ker.leftCols(n)));
    Sublattice L(fam.N, rows);
    if (L.rank() != n) throw Error("internal", "L_p has the wrong rank");
    if (abs(determinant(L.gram())) != abs(det(fam.N)) * p * p) throw Error("internal", "[N_p : L_p] != p");
    if (!in_sublattice(rows, to_rat(fam.rho_N))) throw Error("internal", "rho is not in L_p");
    if (signature(L.gram()).minus != n) throw Error("internal", "L_p is not negative definite");
    return L;
}

bool acts_trivially_on_disc(const IntMatrix& g, const IntMatrix& gram) {
    RatMatrix m = (to_rat(g) - RatMatrix::Identity(g.rows(), g.cols())) * inverse(to_rat(gram));
    return is_integral(m);
}

SigmaMatrices build_sigma(const NikulinFamily& fam) {
    const long p = fam.p;
    SigmaMatrices s;
    IntMatrix cox = coxeter_element("A", static_cast<int>(p - 1));
    s.D = IntMatrix(0, 0);
    for (long i = 0; i < fam.nu; ++i) s.D = block_diag(s.D, matrix_power(cox, fam.k[i]));
    RatMatrix bt = fam.N_basis.transpose();
    RatMatrix sn = inverse(bt) * to_rat(s.D) * bt;
    if (!is_integral(sn)) throw Error("internal", "sigma does not preserve N_p");
    s.N = to_int(sn);
    RatMatrix mt = to_rat(IntMatrix(fam.L.basis().transpose()));
    RatMatrix sl = inverse(mt) * to_rat(s.N) * mt;
    if (!is_integral(sl)) throw Error("internal", "sigma does not preserve L_p");
    s.L = to_int(sl);
    if (IntMatrix(s.N.transpose() * fam.N.gram() * s.N) != fam.N.gram()) throw Error("internal", "sigma is not an isometry");
    if (matrix_order(s.N, p) != p) throw Error("internal", "sigma does not have order p");
    if (!acts_trivially_on_disc(s.L, fam.L.gram())) throw Error("internal", "sigma acts nontrivially on disc(L_p)");
    return s;
}

AutSearchReport aut_trivial_on_disc_search(const NikulinFamily& fam, long budget) {
    AutSearchReport rep;
    const long p = fam.p;
    const IntMatrix G = fam.L.gram();
    const Eigen::Index n = G.rows();
    const RatMatrix Ginv = inverse(to_rat(G));
    // p L^dual, made positive, in dual-basis coordinates
    RatMatrix ms = Ginv * Rat(-p);
    if (!is_integral(ms)) throw Error("internal", "disc(L_p) is not p-elementary");
    Lattice M(to_int(ms));
    LLLResult red = lll_reduce(M.gram());
    const IntMatrix& R = red.basis;
    Int bound = 0;
    for (Eigen::Index i = 0; i < n; ++i) bound = std::max(bound, red.gram(i, i));

    std::map<Int, std::vector<IntVector>> by_norm;
    long visited = 0;
    bool complete = for_each_short_vector(M, bound, [&](const IntVector& v, const Int& nv) {
        by_norm[abs(nv)].push_back(v);
        by_norm[abs(nv)].push_back(IntVector(-v));
        return ++visited <= budget;
    });
    rep.nodes = visited;
    if (!complete) {
        rep.status = "inconclusive";
        return rep;
    }
    BasisImageSearch s;
    s.target_gram = red.gram;
    s.gram2 = M.gram();
    s.candidates.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        IntVector ri = R.row(i).transpose();
        for (const auto& z : by_norm[red.gram(i, i)]) {
            RatVector diff = Ginv * to_rat(IntVector(z - ri));
            if (is_integral(RatMatrix(diff))) s.candidates[i].push_back(z);
        }
    }
    const RatMatrix rt_inv = inverse(to_rat(IntMatrix(R.transpose())));
    long nodes = 0;
    SearchStatus st = search_basis_images(s, budget - visited, nodes, [&](const std::vector<IntVector>& imgs) {
        IntMatrix img(n, n);
        for (Eigen::Index j = 0; j < n; ++j) img.col(j) = imgs[j];
        RatMatrix A = to_rat(img) * rt_inv;
        RatMatrix gl = Ginv * A * to_rat(G);
        if (!is_integral(gl)) throw Error("internal", "automorphism is not integral on L_p");
        rep.elements.push_back(to_int(gl));
        return true;
    });
    rep.nodes += nodes;
    if (st == SearchStatus::timeout) {
        rep.status = "inconclusive";
        return rep;
    }
    rep.status = "verified";
    std::vector<std::string> found, expected;
    for (const auto& e : rep.elements) found.push_back(key(e));
    for (long k = 0; k < p; ++k) expected.push_back(key(matrix_power(fam.sigma_L, k)));
    std::sort(found.begin(), found.end());
    std::sort(expected.begin(), expected.end());
    rep.equals_sigma_group = found == expected;
    rep.contains_sigma_group = std::includes(found.begin(), found.end(), expected.begin(), expected.end());
    return rep;
}

KpModel build_hat_and_K(const NikulinFamily& fam) {
    KpModel km;
    const long p = fam.p;
    km.p = p;
    const Eigen::Index n = fam.N.rank();
    const IntMatrix U = (IntMatrix(2, 2) << 0, 1, 1, -2).finished();
    km.K = Lattice(block_diag(fam.N.gram(), U));
    km.N_hat = Lattice(block_diag(fam.N.gram(), IntMatrix::Zero(1, 1)), true);
    auto unit = [&](Eigen::Index i) {
        IntVector v = IntVector::Zero(n + 2);
        v(i) = 1;
        return v;
    };
    km.f = unit(n);
    km.s = unit(n + 1);
    km.e = km.s + km.f;

    const IntVector rf = fam.N.gram() * fam.rho_N;   // rho . b_k
    auto embed = [&](const IntVector& x) {
        Int rx = x.dot(rf);
        if (rx % p != 0) throw Error("internal", "vector is not in L_p");
        IntVector v = IntVector::Zero(n + 2);
        v.head(n) = x;
        v(n) = -rx / p;
        return v;
    };
    km.L_in_K.resize(fam.L.rank(), n + 2);
    for (Eigen::Index i = 0; i < fam.L.rank(); ++i) km.L_in_K.row(i) = embed(IntVector(fam.L.basis().row(i).transpose())).transpose();
    km.rho = embed(fam.rho_N);
    km.e_prime = Int(p) * km.s + km.rho + km.f;

    const IntMatrix& KG = km.K.gram();
    km.s_dot_rho = km.s.dot(KG * km.rho);
    IntVector ps_rho = Int(p) * km.s + km.rho;
    km.ps_rho_norm = ps_rho.dot(KG * ps_rho);

    bool u_ok = km.e.dot(KG * km.e) == 0 && km.f.dot(KG * km.f) == 0 && km.e.dot(KG * km.f) == 1;
    for (Eigen::Index i = 0; i < n && u_ok; ++i) u_ok = unit(i).dot(KG * km.e) == 0 && unit(i).dot(KG * km.f) == 0;
    km.u_summand = u_ok;

    // In N_p + (1/p)Z, the K-coordinates (c, t, 0) stand for x + (rho.x / p + t) f with x = c . b.
    bool sums = true;
    for (long i = 0; i < fam.nu; ++i) {
        IntVector total = IntVector::Zero(n + 2);
        for (long j = 0; j < p; ++j) {
            IntVector x = fam.d_in_N(i, j);
            IntVector v = IntVector::Zero(n + 2);
            v.head(n) = x;
            if (j == 0) v(n) = 1;
            Rat fcoef = Rat(Int(x.dot(rf)), p) + Rat(v(n));
            if (fcoef != Rat(1, p)) sums = false;   // D~_{i,j} = D_{i,j} + f/p
            total += v;
        }
        if (total != km.f) sums = false;
    }
    km.dtilde_sums = sums;

    RatMatrix P(n + 2, n + 2);
    P.topRows(n) = to_rat(km.L_in_K);
    P.row(n) = to_rat(km.e_prime).transpose();
    P.row(n + 1) = to_rat(km.f).transpose();
    RatMatrix act = RatMatrix::Identity(n + 2, n + 2);
    act.topLeftCorner(n, n) = to_rat(fam.sigma_L);
    RatMatrix pt = P.transpose();
    RatMatrix sk = pt * act * inverse(pt);
    if (!is_integral(sk)) throw Error("internal", "sigma does not extend integrally to K_p");
    km.sigma_K = to_int(sk);
    bool hat = true;
    for (Eigen::Index j = 0; j <= n; ++j) hat = hat && km.sigma_K(n + 1, j) == 0;
    km.sigma_preserves_N_hat = hat;
    return km;
}

ComplementReport Lp_complement_in_Kp(const NikulinFamily& fam, const KpModel& km) {
    ComplementReport r;
    r.complement = orthogonal_complement(Sublattice(km.K, km.L_in_K));
    IntMatrix ef(2, km.K.rank());
    ef.row(0) = km.e_prime.transpose();
    ef.row(1) = km.f.transpose();
    r.gram = ef * km.K.gram() * ef.transpose();
    r.spanned_by_e_prime_f = r.complement.rank() == 2 && hermite_normal_form(r.complement.basis()) == hermite_normal_form(ef);
    const IntMatrix& G = km.K.gram();
    r.e_prime_isotropic = km.e_prime.dot(G * km.e_prime) == 0 && km.e_prime.dot(G * km.f) == fam.p;
    r.sigma_is_isometry = IntMatrix(km.sigma_K.transpose() * G * km.sigma_K) == G &&
                          IntVector(km.sigma_K * km.e_prime) == km.e_prime && IntVector(km.sigma_K * km.f) == km.f;
    return r;
}

Lattice lambda_G_candidate(long p, std::string* name) {
    const Lattice u = hyperbolic_u().lattice;
    auto sum = [](std::vector<Lattice> ls) {
        Lattice out = ls[0];
        for (std::size_t i = 1; i < ls.size(); ++i) out = direct_sum(out, ls[i]);
        return out;
    };
    switch (p) {
        case 2:
            if (name) *name = "U^3 + E8(-2)";
            return sum({u, u, u, rescale(root_lattice("E8").lattice, -2)});
        case 3: {
            if (name) *name = "U + U(3)^2 + A2(-1)^2";
            Lattice a2 = rescale(root_lattice("A2").lattice, -1);
            return sum({u, rescale(u, 3), rescale(u, 3), a2, a2});
        }
        case 5:
            if (name) *name = "U + U(5)^2";
            return sum({u, rescale(u, 5), rescale(u, 5)});
        case 7:
            if (name) *name = "U(7) + [[2,1],[1,4]]";
            return sum({rescale(u, 7), Lattice((IntMatrix(2, 2) << 2, 1, 1, 4).finished())});
        default: throw Error("unsupported-prime", "p must be one of 2, 3, 5, 7");
    }
}

GenusReport genus_check_lambda_G(long p, const NikulinFamily& fam) {
    GenusReport r;
    r.p = p;
    r.candidate = lambda_G_candidate(p, &r.candidate_name);
    r.signature = signature(r.candidate);
    const long lr = fam.nu * (p - 1);
    r.rank_ok = r.candidate.rank() == 22 - lr;
    r.signature_ok = r.signature.plus == 3 && r.signature.minus == 19 - lr;
    DiscriminantForm dc = discriminant_group(r.candidate);
    r.disc_orders = dc.orders;
    r.opposite_match = disc_form_isometry(dc, opposite(discriminant_group(fam.L.lattice())));
    return r;
}

bool hermitian_smoke(const NikulinFamily& fam) {
    const IntMatrix G = fam.L.gram();
    const Eigen::Index n = G.rows();
    const Eigen::Index m = std::min<Eigen::Index>(n, 4);
    for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < m; ++b) {
            IntVector u = IntVector::Zero(n), v = IntVector::Zero(n);
            u(a) = 1;
            v(b) = 1;
            Int augmentation = 0;
            IntVector w = v;
            for (long k = 0; k < fam.p; ++k) {
                augmentation += u.dot(G * w);
                w = fam.sigma_L * w;
            }
            if (augmentation != 0) return false;
        }
    return true;
}

std::vector<Check> verify_family(long p, long budget) {
    std::vector<Check> out;
    auto add = [&](std::string name, bool pass, std::string expected, std::string computed) {
        out.push_back(make_check(std::move(name), pass, std::move(expected), std::move(computed)));
    };
    auto yes = [](bool b) { return std::string(b ? "true" : "false"); };
    NikulinFamily fam = build_family(p);
    const long nu = fam.nu;
    const RatMatrix gd = to_rat(fam.H2D.gram());
    const std::string sp = std::to_string(p);

    add("nu(p+1) = 24", nu * (p + 1) == 24, std::to_string(24 / (p + 1)), std::to_string(nu));
    if (p != 2) {
        KUniquenessReport ku = k_vector_uniqueness(p);
        std::ostringstream os;
        for (long x : ku.solutions.empty() ? std::vector<long>{} : ku.solutions[0]) os << (os.tellp() ? " " : "") << x;
        add("k_i^2 multiset is unique", ku.unique, "1 solution", std::to_string(ku.solutions.size()) + " solution(s): " + os.str());
    }
    Rat vv = fam.varpi.dot(gd * fam.varpi);
    const std::map<long, long> expected_vv{{2, -4}, {3, -4}, {5, -8}, {7, -12}};
    add("varpi.varpi", vv == expected_vv.at(p), std::to_string(expected_vv.at(p)), str(vv));
    long ksq = 0;
    for (long x : fam.k) ksq += x * x;
    Rat ev = Rat(1 - p, p) * Rat(ksq);
    add("(1-p)/p sum k_i^2 is even", mp::denominator(ev) == 1 && mp::numerator(ev) % 2 == 0, "even integer", str(ev));
    const bool n_even = is_even(fam.N);
    add("N_p is even", n_even, "true", yes(n_even));
    Int idx2 = abs(det(fam.H2D)) / abs(det(fam.N));
    add("[N_p : H2D] = p", idx2 == Int(p * p), "index^2 = " + std::to_string(p * p), "index^2 = " + str(idx2));
    DiscriminantForm dn = discriminant_group(fam.N);
    Int pnu2 = 1;
    for (long i = 0; i < nu - 2; ++i) pnu2 *= p;
    add("|disc N_p| = p^(nu-2)", dn.size() == pnu2, str(pnu2), str(dn.size()));
    std::size_t roots = enumerate_vectors(fam.N, Int(-2)).size() * 2;
    add("roots of N_p are those of H2D", roots == static_cast<std::size_t>(nu * p * (p - 1)), std::to_string(nu * p * (p - 1)), std::to_string(roots));
    Rat rr = fam.rho.dot(gd * fam.rho);
    add("rho.rho = -2(p-1)p", rr == Rat(-2 * (p - 1) * p), std::to_string(-2 * (p - 1) * p), str(rr));
    bool rho_int = is_integral(RatMatrix(fam.rho));
    if (p == 2) {
        const bool half = !rho_int && is_integral(RatMatrix(fam.rho * Rat(2)));
        add("rho is half-integral", half, "true", yes(half));
    } else {
        add("rho lies in H2D", rho_int, "true", yes(rho_int));
    }
    RatVector rd = gd * fam.rho;
    const bool ones = rd == RatVector::Constant(rd.size(), Rat(1));
    add("rho.D_ij = 1", ones, "true", yes(ones));

    Int il = abs(determinant(fam.L.gram())) / abs(det(fam.N));
    add("[N_p : L_p] = p", il == Int(p * p), "index^2 = " + std::to_string(p * p), "index^2 = " + str(il));
    const bool rho_in = in_sublattice(fam.L.basis(), to_rat(fam.rho_N));
    add("rho in L_p", rho_in, "true", yes(rho_in));
    DiscriminantForm dl = discriminant_group(fam.L.lattice());
    std::ostringstream dls;
    for (const auto& o : dl.orders) dls << (dls.tellp() ? " " : "") << o;
    add("disc L_p = (Z/p)^nu", dl.orders == std::vector<Int>(static_cast<std::size_t>(nu), Int(p)),
        std::to_string(nu) + " factors of order " + sp, "orders " + dls.str());
    MinusTwoResult m2 = has_minus_two_vector(fam.L.lattice());
    add("L_p has no (-2)-vectors", !m2.found, "none", m2.found ? "found" : "none");
    const long ord = matrix_order(fam.sigma_N, p);
    add("sigma has order p", ord == p && fam.sigma_N != identity(fam.N.rank()), sp, std::to_string(ord));
    const bool pres = IntMatrix(fam.sigma_N.transpose() * fam.N.gram() * fam.sigma_N) == fam.N.gram();
    add("sigma preserves N_p", pres, "true", yes(pres));
    const bool triv = acts_trivially_on_disc(fam.sigma_L, fam.L.gram());
    add("sigma acts trivially on disc L_p", triv, "true", yes(triv));
    RatVector srp = (to_rat(fam.sigma_N) - RatMatrix::Identity(fam.N.rank(), fam.N.rank())) * to_rat(fam.rho_N) / Rat(p);
    const bool srp_in = in_sublattice(fam.L.basis(), srp);
    add("(sigma-1)(rho/p) in L_p", srp_in, "true", yes(srp_in));
    AutSearchReport as = aut_trivial_on_disc_search(fam, budget);
    std::string aw = as.status + ", " + std::to_string(as.nodes) + " nodes";
    if (as.status == "verified")
        aw += ", order " + std::to_string(as.elements.size()) + (as.contains_sigma_group ? ", contains <sigma>" : "");
    add("kernel of O(L_p) -> O(disc) is <sigma>", as.equals_sigma_group, "order " + sp, aw);
    if (as.status == "inconclusive") out.back().status = "inconclusive";

    if (p == 2) {
        const Lattice e8m2 = rescale(root_lattice("E8").lattice, Int(-2));
        IsometryResult r = lattice_isometry(fam.L.lattice(), e8m2, budget);
        const bool congruent = r.status == SearchStatus::found && IntMatrix(r.T.transpose() * e8m2.gram() * r.T) == fam.L.gram();
        add("L_2 isometric to E8(-2)", congruent, "explicit isometry", congruent ? "explicit isometry" : to_string(r.status));
        if (r.status == SearchStatus::timeout) out.back().status = "inconclusive";
        Lattice u2 = rescale(hyperbolic_u().lattice, Int(2));
        const Lattice u2_3 = direct_sum(direct_sum(u2, u2), u2);
        const bool dn_u = disc_form_isometry(dn, discriminant_group(u2_3));
        add("disc(N_2) = disc(U(2)^3)", dn_u, "true", yes(dn_u));
        const Lattice a1m2 = rescale(root_lattice("A1").lattice, Int(-2));
        Lattice a1m2_8 = a1m2;
        for (int i = 1; i < 8; ++i) a1m2_8 = direct_sum(a1m2_8, a1m2);
        const bool same = disc_form_isometry(discriminant_group(e8m2), discriminant_group(a1m2_8));
        add("disc(E8(-2)) differs from disc(A1(-2)^8)", !same, "not isometric", same ? "isometric" : "not isometric");
    }
    if (p == 3) {
        const MinNorm mn = min_norm_and_kissing(rescale(fam.L.lattice(), Int(-1)));
        add("L_3 minimal |norm| and kissing number", mn.min_norm == 4 && mn.count == 756, "4, 756",
            str(mn.min_norm) + ", " + std::to_string(mn.count));
    }

    KpModel km = build_hat_and_K(fam);
    add("s.rho = 2(p-1)", km.s_dot_rho == Int(2 * (p - 1)), std::to_string(2 * (p - 1)), str(km.s_dot_rho));
    add("(ps+rho)^2 = -2p", km.ps_rho_norm == Int(-2 * p), std::to_string(-2 * p), str(km.ps_rho_norm));
    add("K_p = i(N_p) + U", km.u_summand, "true", yes(km.u_summand));
    add("sum_j D~_ij = f", km.dtilde_sums, "true", yes(km.dtilde_sums));
    add("N^_p is sigma-invariant", km.sigma_preserves_N_hat, "true", yes(km.sigma_preserves_N_hat));
    ComplementReport cr = Lp_complement_in_Kp(fam, km);
    std::ostringstream gs;
    gs << "[[" << cr.gram(0, 0) << "," << cr.gram(0, 1) << "],[" << cr.gram(1, 0) << "," << cr.gram(1, 1) << "]]";
    add("L_p^perp in K_p = <e', f> = U(p)", cr.spanned_by_e_prime_f, "[[0," + sp + "],[" + sp + ",0]]", gs.str());
    add("e' is isotropic", cr.e_prime_isotropic, "true", yes(cr.e_prime_isotropic));
    add("sigma extends to K_p fixing e', f", cr.sigma_is_isometry, "true", yes(cr.sigma_is_isometry));
    GenusReport gr = genus_check_lambda_G(p, fam);
    const long lr = nu * (p - 1);
    add("Lambda^G candidate rank and signature", gr.rank_ok && gr.signature_ok,
        "rank " + std::to_string(22 - lr) + ", (3," + std::to_string(19 - lr) + ")",
        gr.candidate_name + ": rank " + std::to_string(gr.candidate.rank()) + ", (" + std::to_string(gr.signature.plus) + "," +
            std::to_string(gr.signature.minus) + ")");
    add("disc(Lambda^G candidate) = -disc(L_p)", gr.opposite_match, "true", yes(gr.opposite_match));
    const bool herm = hermitian_smoke(fam);
    add("hermitian form in augmentation ideal", herm, "true", yes(herm));
    return out;
}

}  // namespace k3lat
