#include "k3lat/shortvec.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace k3lat {

int definite_sign(const Lattice& l) {
    if (l.rank() == 0) return 1;
    Signature s = signature(l);
    if (s.plus == l.rank()) return 1;
    if (s.minus == l.rank()) return -1;
    return 0;
}

LLLResult lll_reduce(const IntMatrix& gram) {
    const Eigen::Index n = gram.rows();
    IntMatrix b = identity(n);
    IntMatrix G = gram;
    RatMatrix mu = RatMatrix::Zero(n, n);
    std::vector<Rat> B(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            Rat s = G(i, j);
            for (Eigen::Index l = 0; l < j; ++l) s -= mu(j, l) * mu(i, l) * B[l];
            mu(i, j) = s / B[j];
        }
        Rat s = G(i, i);
        for (Eigen::Index l = 0; l < i; ++l) s -= mu(i, l) * mu(i, l) * B[l];
        if (s <= 0) throw Error("not-positive-definite", "LLL needs a positive definite Gram matrix");
        B[i] = s;
    }
    auto round_rat = [](const Rat& x) { return floor_div(mp::numerator(x) * 2 + mp::denominator(x), mp::denominator(x) * 2); };
    auto size_reduce = [&](Eigen::Index k, Eigen::Index l) {
        Rat two = 2;
        if (abs(mu(k, l)) * two <= 1) return;
        Int q = round_rat(mu(k, l));
        b.row(k) -= q * b.row(l);
        for (Eigen::Index j = 0; j < l; ++j) mu(k, j) -= Rat(q) * mu(l, j);
        mu(k, l) -= Rat(q);
    };
    const Rat delta(3, 4);
    Eigen::Index k = 1;
    while (k < n) {
        size_reduce(k, k - 1);
        if (B[k] < (delta - mu(k, k - 1) * mu(k, k - 1)) * B[k - 1]) {
            b.row(k).swap(b.row(k - 1));
            for (Eigen::Index j = 0; j + 1 < k; ++j) std::swap(mu(k, j), mu(k - 1, j));
            Rat m = mu(k, k - 1);
            Rat Bn = B[k] + m * m * B[k - 1];
            mu(k, k - 1) = m * B[k - 1] / Bn;
            B[k] = B[k - 1] * B[k] / Bn;
            B[k - 1] = Bn;
            for (Eigen::Index i = k + 1; i < n; ++i) {
                Rat t = mu(i, k);
                mu(i, k) = mu(i, k - 1) - m * t;
                mu(i, k - 1) = t + mu(k, k - 1) * mu(i, k);
            }
            if (k > 1) --k;
        } else {
            for (Eigen::Index l = k - 1; l-- > 0;) size_reduce(k, l);
            ++k;
        }
    }
    return {b, b * gram * b.transpose()};
}

namespace {

// Integer range {x : (x - c)^2 <= r}.
bool int_range(const Rat& c, const Rat& r, Int& lo, Int& hi) {
    if (r < 0) return false;
    double cd = c.convert_to<double>();
    double sd = std::sqrt(std::max(0.0, r.convert_to<double>()));
    lo = Int(static_cast<long long>(std::ceil(cd - sd)));
    hi = Int(static_cast<long long>(std::floor(cd + sd)));
    auto ok = [&](const Int& x) {
        Rat d = Rat(x) - c;
        return d * d <= r;
    };
    while (ok(lo - 1)) lo -= 1;
    while (!ok(lo) && Rat(lo) <= c) lo += 1;
    while (ok(hi + 1)) hi += 1;
    while (!ok(hi) && Rat(hi) >= c) hi -= 1;
    return lo <= hi && ok(lo);
}

}  // namespace

bool for_each_short_vector(const Lattice& l, const Int& bound,
                           const std::function<bool(const IntVector&, const Int&)>& visit) {
    const Eigen::Index n = l.rank();
    if (n == 0 || bound <= 0) return true;
    const int sgn = definite_sign(l);
    if (sgn == 0) throw Error("indefinite-unsupported", "enumeration needs a definite lattice");
    IntMatrix A = l.gram() * Int(sgn);
    LLLResult red = lll_reduce(A);
    const IntMatrix& Ar = red.gram;

    RatMatrix q = to_rat(Ar);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            q(j, i) = q(i, j);
            q(i, j) = q(i, j) / q(i, i);
        }
        for (Eigen::Index k = i + 1; k < n; ++k)
            for (Eigen::Index m = k; m < n; ++m) q(k, m) -= q(k, i) * q(i, m);
    }

    const Rat C = bound;
    std::vector<Int> x(n, Int(0));
    IntVector xv(n);
    bool stopped = false;

    std::function<void(Eigen::Index, const Rat&, bool)> rec = [&](Eigen::Index i, const Rat& T, bool allzero) {
        if (stopped) return;
        Rat U = 0;
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (x[j] != 0) U += q(i, j) * Rat(x[j]);
        Rat c = -U;
        Int lo, hi;
        if (!int_range(c, T / q(i, i), lo, hi)) return;
        if (allzero && lo < 0) lo = 0;
        for (Int xi = lo; xi <= hi && !stopped; xi += 1) {
            x[i] = xi;
            bool z = allzero && xi == 0;
            if (i == 0) {
                if (z) continue;
                for (Eigen::Index k = 0; k < n; ++k) xv(k) = x[k];
                Int nrm = xv.dot(Ar * xv);
                if (nrm > bound) continue;
                IntVector v = red.basis.transpose() * xv;
                if (!visit(v, nrm * sgn)) stopped = true;
            } else {
                Rat d = Rat(xi) + U;
                rec(i - 1, T - q(i, i) * d * d, z);
            }
        }
        x[i] = 0;
    };
    rec(n - 1, C, true);
    return !stopped;
}

namespace {

IntVector sign_normalized(IntVector v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v(i) == 0) continue;
        if (v(i) < 0) v = -v;
        break;
    }
    return v;
}

}  // namespace

std::vector<ShortVector> short_vectors(const Lattice& l, const Int& bound) {
    std::vector<ShortVector> out;
    for_each_short_vector(l, bound, [&](const IntVector& v, const Int& nrm) {
        out.push_back({sign_normalized(v), nrm});
        return true;
    });
    std::sort(out.begin(), out.end(), [](const ShortVector& a, const ShortVector& b) { return lex_less(a.v, b.v); });
    return out;
}

std::vector<IntVector> enumerate_vectors(const Lattice& l, const Int& target_norm) {
    std::vector<IntVector> out;
    if (target_norm == 0 || l.rank() == 0) return out;
    const int sgn = definite_sign(l);
    if (sgn == 0) throw Error("indefinite-unsupported", "enumeration needs a definite lattice");
    if ((target_norm > 0 ? 1 : -1) != sgn) return out;
    for (auto& sv : short_vectors(l, abs(target_norm)))
        if (sv.norm == target_norm) out.push_back(sv.v);
    return out;
}

MinusTwoResult has_minus_two_vector(const Lattice& l) {
    MinusTwoResult r;
    if (l.rank() == 0) return r;
    if (definite_sign(l) != -1) throw Error("wrong-signature", "lattice must be negative definite");
    auto v = enumerate_vectors(l, Int(-2));
    if (!v.empty()) {
        r.found = true;
        r.witness = v.front();
    }
    return r;
}

std::string dynkin_label(const IntMatrix& c) {
    const int n = static_cast<int>(c.rows());
    if (n == 0) return "";
    std::vector<std::vector<int>> adj(n);
    int edges = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (c(i, j) == 0) continue;
            if (c(i, j) != -1 || c(j, i) != -1) throw Error("not-simply-laced", "Cartan entry outside {0,-1}");
            adj[i].push_back(j);
            adj[j].push_back(i);
            ++edges;
        }
    for (int i = 0; i < n; ++i)
        if (c(i, i) != 2) throw Error("bad-cartan", "diagonal entry is not 2");
    // connected tree check
    std::vector<int> seen(n, 0), stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++cnt;
                stack.push_back(w);
            }
    }
    if (cnt != n || edges != n - 1) throw Error("bad-cartan", "Dynkin diagram is not a tree");
    int branch = -1;
    for (int i = 0; i < n; ++i) {
        if (adj[i].size() > 3) throw Error("bad-cartan", "vertex of degree > 3");
        if (adj[i].size() == 3) {
            if (branch >= 0) throw Error("bad-cartan", "two branch vertices");
            branch = i;
        }
    }
    if (branch < 0) return "A" + std::to_string(n);
    std::vector<int> arms;
    for (int start : adj[branch]) {
        int prev = branch, cur = start, len = 1;
        while (adj[cur].size() == 2) {
            int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            prev = cur;
            cur = nxt;
            ++len;
        }
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(n);
    if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4) return "E" + std::to_string(n);
    throw Error("bad-cartan", "diagram is not of ADE type");
}

std::size_t root_count(const std::string& label) {
    const std::size_t n = std::stoul(label.substr(1));
    switch (label[0]) {
        case 'A': return n * (n + 1);
        case 'D': return 2 * n * (n - 1);
        case 'E': return n == 6 ? 72 : n == 7 ? 126 : 240;
    }
    throw Error("unsupported-root-system", label);
}

std::string RootSystem::label() const {
    if (components.empty()) return "empty";
    std::map<std::pair<char, int>, int> counts;
    for (const auto& c : components) counts[{c.label[0], c.rank}]++;
    std::string s;
    for (const auto& [k, m] : counts) {
        if (!s.empty()) s += "+";
        s += std::string(1, k.first) + std::to_string(k.second);
        if (m > 1) s += "^" + std::to_string(m);
    }
    return s;
}

RootSystem classify_root_system(const Lattice& l) {
    RootSystem rs;
    if (l.rank() == 0) {
        rs.spanning = true;
        return rs;
    }
    if (definite_sign(l) != -1) throw Error("wrong-signature", "lattice must be negative definite");
    rs.roots = enumerate_vectors(l, Int(-2));
    const std::size_t N = rs.roots.size();
    // connected components of the pairing graph
    std::vector<int> comp(N, -1);
    int ncomp = 0;
    for (std::size_t s = 0; s < N; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<std::size_t> stack{s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            std::size_t a = stack.back();
            stack.pop_back();
            IntVector ga = l.gram() * rs.roots[a];
            for (std::size_t b = 0; b < N; ++b)
                if (comp[b] < 0 && rs.roots[b].dot(ga) != 0) {
                    comp[b] = ncomp;
                    stack.push_back(b);
                }
        }
        ++ncomp;
    }
    const Eigen::Index n = l.rank();
    for (int ci = 0; ci < ncomp; ++ci) {
        RootComponent rc;
        for (std::size_t a = 0; a < N; ++a)
            if (comp[a] == ci) rc.roots.push_back(rs.roots[a]);
        // generic functional with no root in its kernel
        IntVector w(n);
        for (Eigen::Index i = 0; i < n; ++i) w(i) = Int(1000003) * (i + 1) + Int(7919) * (i * i) + 1;
        for (int attempt = 0;; ++attempt) {
            bool ok = true;
            for (const auto& r : rc.roots)
                if (r.dot(w) == 0) ok = false;
            if (ok) break;
            for (Eigen::Index i = 0; i < n; ++i) w(i) += Int(attempt + 1) * (i * 31 + 17);
        }
        std::vector<IntVector> pos;
        std::set<std::string> poskeys;
        for (const auto& r : rc.roots) {
            IntVector p = r.dot(w) > 0 ? IntVector(r) : IntVector(-r);
            pos.push_back(p);
            poskeys.insert(key(IntMatrix(p)));
        }
        std::vector<IntVector> simple;
        for (const auto& a : pos) {
            bool decomposable = false;
            for (const auto& b : pos)
                if (poskeys.count(key(IntMatrix(IntVector(a - b))))) {
                    decomposable = true;
                    break;
                }
            if (!decomposable) simple.push_back(a);
        }
        std::sort(simple.begin(), simple.end(), lex_less);
        const int k = static_cast<int>(simple.size());
        rc.simple.resize(k, n);
        for (int i = 0; i < k; ++i) rc.simple.row(i) = simple[i].transpose();
        IntMatrix cart = -(rc.simple * l.gram() * rc.simple.transpose());
        rc.label = dynkin_label(cart);
        rc.rank = k;
        if (root_count(rc.label) != 2 * rc.roots.size())
            throw Error("root-system-mismatch", "root count does not match " + rc.label);
        rs.components.push_back(std::move(rc));
    }
    if (N == 0) {
        rs.spanning = false;
    } else {
        RatMatrix m(N, n);
        for (std::size_t a = 0; a < N; ++a) m.row(a) = to_rat(rs.roots[a]).transpose();
        rs.spanning = rank(m) == n;
    }
    return rs;
}

MinNorm min_norm_and_kissing(const Lattice& l) {
    if (l.rank() == 0) throw Error("empty-lattice", "rank 0 has no minimum");
    const int sgn = definite_sign(l);
    if (sgn == 0) throw Error("indefinite-unsupported", "minimum needs a definite lattice");
    LLLResult red = lll_reduce(IntMatrix(l.gram() * Int(sgn)));
    Int bound = red.gram(0, 0);
    for (Eigen::Index i = 1; i < l.rank(); ++i) bound = std::min(bound, Int(red.gram(i, i)));
    MinNorm m{bound, 0};
    for_each_short_vector(l, bound, [&](const IntVector&, const Int& nrm) {
        Int a = abs(nrm);
        if (a < m.min_norm) {
            m.min_norm = a;
            m.count = 0;
        }
        if (a == m.min_norm) m.count += 2;
        return true;
    });
    return m;
}

std::string to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::found: return "found";
        case SearchStatus::none: return "none";
        case SearchStatus::timeout: return "timeout";
    }
    return "?";
}

SearchStatus search_basis_images(const BasisImageSearch& s, long budget, long& nodes,
                                 const std::function<bool(const std::vector<IntVector>&)>& visit) {
    using ll = long long;
    const Eigen::Index n = s.target_gram.rows();
    const Eigen::Index m = s.gram2.rows();
    auto small = [](const Int& x) {
        if (abs(x) > Int(1LL << 40)) throw Error("overflow", "entry too large for the search kernel");
        return x.convert_to<ll>();
    };
    std::vector<std::vector<std::vector<ll>>> cand(n), wcand(n);
    std::vector<std::vector<const IntVector*>> orig(n);
    std::vector<std::vector<ll>> T(n, std::vector<ll>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) T[i][j] = small(s.target_gram(i, j));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (const auto& c : s.candidates[i]) {
            IntVector w = s.gram2 * c;
            if (c.dot(w) != s.target_gram(i, i)) continue;
            std::vector<ll> cv(m), wv(m);
            for (Eigen::Index k = 0; k < m; ++k) {
                cv[k] = small(c(k));
                wv[k] = small(w(k));
            }
            cand[i].push_back(std::move(cv));
            wcand[i].push_back(std::move(wv));
            orig[i].push_back(&c);
        }
    }
    std::vector<std::size_t> choice(n);
    bool found = false, stop = false, timeout = false;
    std::function<void(Eigen::Index)> rec = [&](Eigen::Index i) {
        if (i == n) {
            found = true;
            std::vector<IntVector> imgs;
            for (Eigen::Index j = 0; j < n; ++j) imgs.push_back(*orig[j][choice[j]]);
            if (!visit(imgs)) stop = true;
            return;
        }
        for (std::size_t c = 0; c < cand[i].size() && !stop; ++c) {
            if (++nodes > budget) {
                timeout = stop = true;
                return;
            }
            const auto& w = wcand[i][c];
            bool ok = true;
            for (Eigen::Index j = 0; j < i && ok; ++j) {
                const auto& v = cand[j][choice[j]];
                ll d = 0;
                for (Eigen::Index k = 0; k < m; ++k) d += v[k] * w[k];
                ok = d == T[j][i];
            }
            if (!ok) continue;
            choice[i] = c;
            rec(i + 1);
        }
    };
    rec(0);
    if (timeout) return SearchStatus::timeout;
    return found ? SearchStatus::found : SearchStatus::none;
}

IsometryResult lattice_isometry(const Lattice& l1, const Lattice& l2, long budget) {
    IsometryResult res;
    const Eigen::Index n = l1.rank();
    if (n != l2.rank()) {
        res.reason = "rank";
        return res;
    }
    if (n == 0) {
        res.status = SearchStatus::found;
        res.T = IntMatrix(0, 0);
        return res;
    }
    const int s1 = definite_sign(l1), s2 = definite_sign(l2);
    if (s1 == 0 || s2 == 0) throw Error("indefinite-unsupported", "isometry test needs definite lattices");
    if (s1 != s2) {
        res.reason = "signature";
        return res;
    }
    if (abs(det(l1)) != abs(det(l2))) {
        res.reason = "determinant";
        return res;
    }
    if (is_even(l1) != is_even(l2)) {
        res.reason = "parity";
        return res;
    }
    IntMatrix G1 = l1.gram() * Int(s1), G2 = l2.gram() * Int(s2);
    LLLResult r1 = lll_reduce(G1);
    Int maxn = 0;
    for (Eigen::Index i = 0; i < n; ++i) maxn = std::max(maxn, Int(r1.gram(i, i)));
    Lattice P1(G1), P2(G2);
    auto sv1 = short_vectors(P1, maxn);
    auto sv2 = short_vectors(P2, maxn);
    std::map<Int, std::size_t> h1, h2;
    for (const auto& v : sv1) h1[v.norm]++;
    for (const auto& v : sv2) h2[v.norm]++;
    if (h1 != h2) {
        res.reason = "norm-histogram";
        return res;
    }
    BasisImageSearch s;
    s.target_gram = r1.gram;
    s.gram2 = G2;
    s.candidates.resize(n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (const auto& v : sv2)
            if (v.norm == r1.gram(i, i)) {
                s.candidates[i].push_back(v.v);
                s.candidates[i].push_back(-v.v);
            }
    IntMatrix img;
    res.status = search_basis_images(s, budget, res.nodes, [&](const std::vector<IntVector>& imgs) {
        img.resize(n, n);
        for (Eigen::Index j = 0; j < n; ++j) img.col(j) = imgs[j];
        return false;
    });
    if (res.status == SearchStatus::timeout && img.size() > 0) res.status = SearchStatus::found;
    if (res.status != SearchStatus::found) {
        res.reason = res.status == SearchStatus::timeout ? "budget" : "exhausted";
        return res;
    }
    RatMatrix rinv = inverse(to_rat(r1.basis));
    res.T = to_int(RatMatrix(to_rat(img) * rinv.transpose()));
    if (IntMatrix(res.T.transpose() * l2.gram() * res.T) != l1.gram())
        throw Error("internal", "isometry verification failed");
    return res;
}

DiscIsometryResult find_disc_form_isometry(const DiscriminantForm& d1, const DiscriminantForm& d2) {
    DiscIsometryResult res;
    if (d1.orders != d2.orders) return res;
    if (d1.quadratic.has_value() != d2.quadratic.has_value()) return res;
    const Int size = d2.size();
    if (size > disc_size_cap) throw Error("too-large", "discriminant group exceeds the brute-force cap");
    const std::size_t k = d1.orders.size();
    if (k == 0) {
        res.found = true;
        return res;
    }
    const long N = size.convert_to<long>();
    std::vector<long> ord(k);
    for (std::size_t i = 0; i < k; ++i) ord[i] = d2.orders[i].convert_to<long>();
    auto elem = [&](long idx) {
        std::vector<Int> a(k);
        for (std::size_t i = 0; i < k; ++i) {
            a[i] = idx % ord[i];
            idx /= ord[i];
        }
        return a;
    };
    auto order_of = [&](const std::vector<Int>& a) {
        Int o = 1;
        for (std::size_t i = 0; i < k; ++i) o = lcm(o, Int(ord[i] / gcd(a[i], Int(ord[i])).convert_to<long>()));
        return o;
    };
    std::vector<std::vector<std::vector<Int>>> cand(k);
    for (long idx = 0; idx < N; ++idx) {
        auto a = elem(idx);
        Int o = order_of(a);
        for (std::size_t i = 0; i < k; ++i) {
            if (o != d1.orders[i]) continue;
            if (d1.quadratic && d2.q_of(a) != (*d1.quadratic)(i)) continue;
            if (d2.b_of(a, a) != d1.bilinear(i, i)) continue;
            cand[i].push_back(a);
        }
    }
    std::vector<std::size_t> choice(k);
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == k) return true;
        for (std::size_t c = 0; c < cand[i].size(); ++c) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) ok = d2.b_of(cand[j][choice[j]], cand[i][c]) == d1.bilinear(j, i);
            if (!ok) continue;
            choice[i] = c;
            if (rec(i + 1)) return true;
        }
        return false;
    };
    if (rec(0)) {
        res.found = true;
        for (std::size_t i = 0; i < k; ++i) res.images.push_back(cand[i][choice[i]]);
    }
    return res;
}

}  // namespace k3lat
