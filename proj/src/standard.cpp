#include "k3lat/standard.hpp"

namespace k3lat {

namespace {

IntMatrix cartan(const std::string& type, int n) {
    IntMatrix c = IntMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) c(i, i) = 2;
    auto edge = [&](int a, int b) {  // 1-based Bourbaki labels
        c(a - 1, b - 1) = -1;
        c(b - 1, a - 1) = -1;
    };
    if (type == "A" && n >= 1) {
        for (int i = 1; i < n; ++i) edge(i, i + 1);
    } else if (type == "D" && n >= 4) {
        for (int i = 1; i < n - 1; ++i) edge(i, i + 1);
        edge(n - 2, n);
    } else if (type == "E" && n >= 6 && n <= 8) {
        edge(1, 3);
        edge(2, 4);
        for (int i = 3; i < n; ++i) edge(i, i + 1);
    } else {
        throw Error("unsupported-root-system", type + std::to_string(n));
    }
    return c;
}

}  // namespace

NamedLattice hyperbolic_u() {
    IntMatrix g(2, 2);
    g << 0, 1, 1, 0;
    NamedLattice u{"U", Lattice(g), {}};
    IntVector e(2), f(2);
    e << 1, 0;
    f << 0, 1;
    u.distinguished["e"] = e;
    u.distinguished["f"] = f;
    return u;
}

NamedLattice root_lattice(const std::string& type, int n) {
    NamedLattice r{type + std::to_string(n), Lattice(cartan(type, n)), {}};
    for (int i = 0; i < n; ++i) {
        IntVector a = IntVector::Zero(n);
        a(i) = 1;
        r.distinguished["alpha" + std::to_string(i + 1)] = a;
    }
    return r;
}

NamedLattice root_lattice(const std::string& label) {
    if (label.size() < 2) throw Error("unsupported-root-system", label);
    int n = 0;
    try {
        n = std::stoi(label.substr(1));
    } catch (const std::exception&) {
        throw Error("unsupported-root-system", label);
    }
    return root_lattice(label.substr(0, 1), n);
}

CoordinateE8 e8_coordinate_model() {
    // D8 simple roots together with the half vector generate E8.
    RatMatrix gens = RatMatrix::Zero(9, 8);
    for (int i = 0; i < 7; ++i) {
        gens(i, i) = 1;
        gens(i, i + 1) = -1;
    }
    gens(7, 6) = 1;
    gens(7, 7) = 1;
    for (int j = 0; j < 8; ++j) gens(8, j) = Rat(1, 2);
    RatMatrix b = span_basis(gens);
    IntMatrix g = to_int(RatMatrix(b * b.transpose()));
    return {NamedLattice{"E8", Lattice(g), {}}, b};
}

NamedLattice k3_lattice() {
    IntMatrix u = hyperbolic_u().lattice.gram();
    IntMatrix e8m = -cartan("E", 8);
    IntMatrix g = block_diag(block_diag(block_diag(u, u), u), block_diag(e8m, e8m));
    NamedLattice k{"K3", Lattice(g), {}};
    for (int i = 0; i < 3; ++i) {
        IntVector e = IntVector::Zero(22), f = IntVector::Zero(22);
        e(2 * i) = 1;
        f(2 * i + 1) = 1;
        k.distinguished["e" + std::to_string(i + 1)] = e;
        k.distinguished["f" + std::to_string(i + 1)] = f;
    }
    return k;
}

NamedLattice zero_form_line() {
    NamedLattice z{"Zzero", Lattice(IntMatrix::Zero(1, 1), true), {}};
    IntVector f(1);
    f << 1;
    z.distinguished["f"] = f;
    return z;
}

IntMatrix reflection(const Lattice& ambient, const IntVector& v) {
    if (v.size() != ambient.rank()) throw Error("bad-vector", "vector length differs from rank");
    if (ambient.norm(v) != -2) throw Error("not-a-minus-two-vector", "reflection needs v.v = -2");
    IntMatrix vt = (ambient.gram() * v).transpose();
    return identity(ambient.rank()) + v * vt;
}

IntMatrix coxeter_element(const std::string& type, int n) {
    if (type != "A" || n < 1) throw Error("unsupported", "Coxeter elements are provided for type A only");
    IntMatrix c = IntMatrix::Zero(n, n);
    for (int j = 0; j + 1 < n; ++j) c(j + 1, j) = 1;
    for (int i = 0; i < n; ++i) c(i, n - 1) = -1;
    return c;
}

}  // namespace k3lat
