#pragma once

#include "k3lat/lattice.hpp"

#include <functional>
#include <optional>

namespace k3lat {

// +1 positive definite, -1 negative definite, 0 otherwise (rank 0 counts as +1).
int definite_sign(const Lattice& l);

struct LLLResult {
    IntMatrix basis;   // rows: reduced basis in the input coordinates (unimodular)
    IntMatrix gram;    // basis * gram * basis^T
};
// Exact LLL (delta = 3/4) for a positive definite Gram matrix.
LLLResult lll_reduce(const IntMatrix& gram);

// Visits every v with 0 < |v.v| <= bound, once per +- pair, sign chosen arbitrarily.
// The visitor returns false to stop early. Returns false if stopped.
bool for_each_short_vector(const Lattice& l, const Int& bound,
                           const std::function<bool(const IntVector&, const Int&)>& visit);

struct ShortVector {
    IntVector v;
    Int norm;
};
// One vector per +- pair (first nonzero coordinate positive), lexicographic order.
std::vector<ShortVector> short_vectors(const Lattice& l, const Int& bound);
std::vector<IntVector> enumerate_vectors(const Lattice& l, const Int& target_norm);

struct MinusTwoResult {
    bool found = false;
    IntVector witness;
};
MinusTwoResult has_minus_two_vector(const Lattice& l);

struct RootComponent {
    std::string label;      // "A2", "D4", "E8", ...
    int rank = 0;
    std::vector<IntVector> roots;   // up to sign
    IntMatrix simple;                // rows: simple roots
};
struct RootSystem {
    std::vector<IntVector> roots;    // up to sign
    std::vector<RootComponent> components;
    bool spanning = false;
    std::string label() const;       // e.g. "A2^6", "E8^2", "empty"
};
RootSystem classify_root_system(const Lattice& l);
// Dynkin type of a Cartan matrix (positive definite convention).
std::string dynkin_label(const IntMatrix& cartan);
std::size_t root_count(const std::string& label);

struct MinNorm {
    Int min_norm;        // absolute value
    std::size_t count;   // counting both signs
};
MinNorm min_norm_and_kissing(const Lattice& l);

enum class SearchStatus { found, none, timeout };
std::string to_string(SearchStatus s);

struct IsometryResult {
    SearchStatus status = SearchStatus::none;
    IntMatrix T;          // T^T * G2 * T = G1
    long nodes = 0;
    std::string reason;
};
constexpr long default_budget = 10'000'000;
IsometryResult lattice_isometry(const Lattice& l1, const Lattice& l2, long budget = default_budget);

// Backtracking over images of basis vectors: position i takes a vector from candidates[i]
// (coordinates in the target lattice) with pairings equal to target_gram. The visitor returns
// false to stop. Returns the status: found if at least one solution was visited.
struct BasisImageSearch {
    IntMatrix target_gram;
    IntMatrix gram2;
    std::vector<std::vector<IntVector>> candidates;
};
SearchStatus search_basis_images(const BasisImageSearch& s, long budget, long& nodes,
                                 const std::function<bool(const std::vector<IntVector>&)>& visit);

struct DiscIsometryResult {
    bool found = false;
    std::vector<std::vector<Int>> images;   // image of generator i as coordinates in the second form
};
constexpr long disc_size_cap = 1'000'000;
DiscIsometryResult find_disc_form_isometry(const DiscriminantForm& d1, const DiscriminantForm& d2);
inline bool disc_form_isometry(const DiscriminantForm& d1, const DiscriminantForm& d2) {
    return find_disc_form_isometry(d1, d2).found;
}

}  // namespace k3lat
