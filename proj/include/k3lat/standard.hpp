#pragma once

#include "k3lat/lattice.hpp"

#include <map>
#include <string>

namespace k3lat {

struct NamedLattice {
    std::string name;
    Lattice lattice;
    std::map<std::string, IntVector> distinguished;
};

NamedLattice hyperbolic_u();
// type is one of "A", "D", "E"; Cartan-matrix Gram in the simple-root basis (Bourbaki numbering).
NamedLattice root_lattice(const std::string& type, int n);
NamedLattice root_lattice(const std::string& label);   // "A2", "D4", "E8", ...
// E8 in the coordinate model {x in Z^8 or (Z+1/2)^8 : sum x_i even}; rows of `coords` are the basis vectors.
struct CoordinateE8 {
    NamedLattice named;
    RatMatrix coords;
};
CoordinateE8 e8_coordinate_model();
// U^3 + E8(-1)^2 in the basis order (U, U, U, E8(-1), E8(-1)).
NamedLattice k3_lattice();
// Rank-one lattice with zero form.
NamedLattice zero_form_line();

// Matrix of x -> x + (v.x) v acting on column coordinate vectors.
IntMatrix reflection(const Lattice& ambient, const IntVector& v);
// Cyclic Coxeter transformation of A_n on the simple-root basis: a_j -> a_{j+1}, a_n -> -(a_1 + ... + a_n).
IntMatrix coxeter_element(const std::string& type, int n);

}  // namespace k3lat
