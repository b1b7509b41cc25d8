#pragma once

#include "k3lat/group.hpp"
#include "k3lat/report.hpp"
#include "k3lat/shortvec.hpp"

#include <optional>

namespace k3lat {

extern const char* const teichmuller_caveat;

struct RealizabilityReport {
    bool metric = false;
    std::optional<IntVector> metric_witness;   // (-2)-vector of L_G, ambient coordinates
    bool complex = false;
    std::string reason;                        // "no-minus-two-failed", "no-trivial-rep-in-complement" or "ok"
    std::optional<IntVector> complex_witness;  // fixed vector of the complement of L_G, ambient coordinates
    std::string caveat = teichmuller_caveat;
    CoinvariantResult coinvariant;
};

RealizabilityReport decide_realizability(const IsometryGroup& g, const std::optional<IsotypicData>& iso = std::nullopt);
inline RealizabilityReport decide_metric(const IsometryGroup& g, const std::optional<IsotypicData>& iso = std::nullopt) {
    return decide_realizability(g, iso);
}
inline RealizabilityReport decide_complex(const IsometryGroup& g, const std::optional<IsotypicData>& iso = std::nullopt) {
    return decide_realizability(g, iso);
}

struct DehnTwistReport {
    IntVector v;
    IntMatrix reflection;
    RealizabilityReport realizability;
    bool witness_is_v = false;        // L_G = Z v and the witness is +-v
    ZGDecomposition zg;
    std::vector<long> realizable_blocks;   // Jordan profile of a realizable involution
    bool profile_differs = false;
};
// Throws "not-a-minus-two-vector".
DehnTwistReport dehn_twist_obstruction(const IntVector& v);

struct DichotomyReport {
    long p = 0;
    long nu = 0;
    std::string kind;   // "Nikulin", "Coxeter", "violation"
    std::string root_label;
    std::vector<std::string> evidence;
    std::vector<Check> checks;
};
// Throws "hypothesis-violated" when p is not an odd prime, g has the wrong order,
// the fixed lattice does not carry a positive 3-plane, or c != 0.
DichotomyReport classify_dichotomy(const IntMatrix& g, long p);

struct Example {
    std::string name;
    IsometryGroup group;
    std::optional<IsotypicData> iso;
    std::vector<Check> checks;
};

// Roots of the second A3 inside E8 in the simple-root basis, found by search and pinned.
struct A3PairEmbedding {
    IntMatrix first;    // rows: simple roots of the first A3 (chain order)
    IntMatrix second;   // rows: simple roots of the second A3 (chain order)
    IntMatrix complement_pair;   // rows: two orthogonal norm 4 vectors spanning the complement
};
A3PairEmbedding search_a3_pair_embedding();
A3PairEmbedding pinned_a3_pair_embedding();

Example build_a4_example();
Example build_nikulin_involution();
// Six A2(-1) summands with the Coxeter element on each and the identity on the complement.
Example build_coxeter_model();

struct K3Frame {
    IntMatrix basis;   // rows in the input coordinates; basis * G * basis^T = K3 Gram
    long isotropic_attempts = 0;
};
// Explicit isometry from an even unimodular lattice of signature (3,19) onto U^3 + E8(-1)^2.
// Isotropic `hints` (mutually orthogonal) are split off first; positive ones anchor the search for the rest.
// Throws "no-frame" on failure.
K3Frame k3_frame(const IntMatrix& gram, const std::vector<IntVector>& hints = {});

struct ModelPrimeAction {
    Example example;
    long p = 0;
    long nu = 0;
    IntMatrix glued_gram;   // L_p + Lambda^G candidate glued to an even unimodular lattice
    std::string certification;   // "isometry" or "failed"
};
// Throws "unsupported-prime".
ModelPrimeAction build_model_prime_action(long p, long budget = default_budget);

}  // namespace k3lat
