#pragma once

#include "k3lat/types.hpp"

#include <optional>

namespace k3lat {

// Free abelian group with a symmetric integral bilinear form, given by its Gram matrix.
class Lattice {
public:
    Lattice() = default;
    explicit Lattice(IntMatrix gram, bool allow_degenerate = false);

    const IntMatrix& gram() const { return gram_; }
    Eigen::Index rank() const { return gram_.rows(); }
    bool allow_degenerate() const { return allow_degenerate_; }

    Int pair(const IntVector& x, const IntVector& y) const { return x.dot(gram_ * y); }
    Int norm(const IntVector& x) const { return pair(x, x); }
    Rat pair(const RatVector& x, const RatVector& y) const { return x.dot(to_rat(gram_) * y); }

    bool operator==(const Lattice& o) const { return gram_ == o.gram_; }

private:
    IntMatrix gram_;
    bool allow_degenerate_ = false;
};

// Rows of `basis` are coordinate vectors in the ambient basis.
class Sublattice {
public:
    Sublattice() = default;
    Sublattice(Lattice ambient, IntMatrix basis);

    const Lattice& ambient() const { return ambient_; }
    const IntMatrix& basis() const { return basis_; }
    Eigen::Index rank() const { return basis_.rows(); }
    IntMatrix gram() const { return basis_ * ambient_.gram() * basis_.transpose(); }
    // Induced lattice; degenerate induced forms are allowed.
    Lattice lattice() const { return Lattice(gram(), true); }

private:
    Lattice ambient_;
    IntMatrix basis_;
};

struct Signature {
    int plus = 0, minus = 0, zero = 0;
    bool operator==(const Signature&) const = default;
};

struct DiscriminantForm {
    std::vector<Int> orders;           // d_1 | d_2 | ..., each > 1
    RatMatrix bilinear;                // b(g_i, g_j) mod 1, values in [0,1)
    std::optional<RatVector> quadratic;  // q(g_i) mod 2, values in [0,2); even lattices only
    RatMatrix generators;              // rows: lifts g_i in rational lattice coordinates
    IntMatrix coord_map;               // a_i = (coord_map * x)_i mod d_i for x in the dual

    Int size() const;
    std::size_t ngens() const { return orders.size(); }
    // Coordinates of a dual vector with respect to the generators.
    std::vector<Int> coordinates(const RatVector& x) const;
    Rat q_of(const std::vector<Int>& a) const;   // mod 2
    Rat b_of(const std::vector<Int>& a, const std::vector<Int>& c) const;  // mod 1
};

struct SmithResult {
    IntMatrix D, U, V, Vinv;   // U * A * V = D
    Eigen::Index rank = 0;
    std::vector<Int> diagonal() const;
};

SmithResult smith_normal_form(const IntMatrix& a);
// Row Hermite normal form; zero rows dropped.
IntMatrix hermite_normal_form(const IntMatrix& rows);
// Rows form a basis of {x in Z^n : a x = 0}; the result is primitive.
IntMatrix kernel(const IntMatrix& a);

struct Saturated {
    Sublattice lattice;
    Int index;
};
Saturated saturation(const Sublattice& s);
IntMatrix saturate_rows(const IntMatrix& rows);

Lattice rescale(const Lattice& l, const Int& n);
RatMatrix dual_basis(const Lattice& l);
DiscriminantForm discriminant_group(const Lattice& l);
DiscriminantForm opposite(const DiscriminantForm& d);
Signature signature(const IntMatrix& gram);
inline Signature signature(const Lattice& l) { return signature(l.gram()); }
Sublattice orthogonal_complement(const Sublattice& s);
Lattice direct_sum(const Lattice& a, const Lattice& b);
bool is_even(const Lattice& l);
inline Int det(const Lattice& l) { return determinant(l.gram()); }

// Rational coordinates of v (ambient coordinates) in the row basis; nullopt if v is not in the span.
std::optional<RatVector> solve_in_span(const IntMatrix& basis, const RatVector& v);
// Lattice with rational basis rows inside an ambient Gram; the induced Gram must be integral.
Lattice induced_lattice(const RatMatrix& basis, const IntMatrix& gram, bool allow_degenerate = false);
// HNF basis of the Z-span of rational rows.
RatMatrix span_basis(const RatMatrix& rows);
bool is_primitive(const Sublattice& s);

}  // namespace k3lat
