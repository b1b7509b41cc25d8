#pragma once

#include "k3lat/lattice.hpp"

#include <memory>
#include <mutex>
#include <optional>

namespace k3lat {

constexpr std::size_t default_closure_cap = 100'000;

// Finite group of isometries acting on column coordinate vectors: x -> g x, with g^T G g = G.
class IsometryGroup {
public:
    IsometryGroup() = default;
    IsometryGroup(Lattice ambient, std::vector<IntMatrix> generators);

    const Lattice& ambient() const { return ambient_; }
    const std::vector<IntMatrix>& generators() const { return generators_; }
    // Closed element list, identity first; computed once.
    const std::vector<IntMatrix>& elements() const;
    std::size_t order() const { return elements().size(); }

private:
    struct Cache {
        std::once_flag once;
        std::vector<IntMatrix> elements;
    };
    Lattice ambient_;
    std::vector<IntMatrix> generators_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

bool preserves_gram(const IntMatrix& g, const Lattice& l);
std::vector<IntMatrix> closure(const std::vector<IntMatrix>& gens, std::size_t n, std::size_t cap = default_closure_cap);

struct GroupReport {
    std::size_t order = 0;
    std::vector<IntMatrix> elements;
};
GroupReport validate_group(const IsometryGroup& g);

Sublattice fixed_sublattice(const IsometryGroup& g);
// Vectors of s fixed by every generator.
Sublattice fixed_in(const IsometryGroup& g, const Sublattice& s);

struct ZGDecomposition {
    long p = 0;
    long t = 0, c = 0, r = 0;
    std::vector<long> blocks;   // blocks[k] = number of Jordan blocks of size k of (g - 1) mod p
};
ZGDecomposition zg_decomposition(const IntMatrix& g, long p);

struct RegularSummandReport {
    bool direct_summand = false;
    long r = 0;
    std::vector<Int> disc_orders;   // of the complement of the fixed sublattice
    long disc_dimension = 0;        // number of cyclic factors, when all are of order p
    bool elementary = false;
    bool consistent = false;        // direct summand, elementary, dimension = r
};
RegularSummandReport regular_summand_discriminant_check(const IntMatrix& g, const Lattice& ambient, long p);

// Reflection vectors (rational) whose product is g, found by the constructive Cartan-Dieudonne procedure.
std::vector<RatVector> reflection_decomposition(const IntMatrix& g, const Lattice& ambient);
bool spinor_plus_membership(const IntMatrix& g, const Lattice& ambient);
// Same property through the sign of det of the projection of g onto a maximal positive subspace.
bool preserves_positive_orientation(const IntMatrix& g, const Lattice& ambient);

struct IsotypicData {
    std::vector<RatMatrix> projectors;   // central idempotents acting on column vectors
};

enum class CoinvariantMode { pointwise_fixed_3_plane, rotation_on_3_plane, supplied_isotypic };
std::string to_string(CoinvariantMode m);

struct CoinvariantResult {
    Sublattice L_G;
    Sublattice fixed;
    CoinvariantMode mode = CoinvariantMode::pointwise_fixed_3_plane;
    std::vector<std::string> p_types;   // one entry per admissible description of the P-types
};
CoinvariantResult coinvariant_L_G(const IsometryGroup& g, const std::optional<IsotypicData>& iso = std::nullopt);

// Saturated kernel of an integer matrix acting on columns, as a sublattice.
Sublattice kernel_sublattice(const Lattice& ambient, const IntMatrix& a);
// Orthogonal basis over Q (rows) of a nondegenerate form.
RatMatrix orthogonal_basis(const IntMatrix& gram);

}  // namespace k3lat
