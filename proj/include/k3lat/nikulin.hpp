#pragma once

#include "k3lat/lattice.hpp"
#include "k3lat/report.hpp"
#include "k3lat/shortvec.hpp"

namespace k3lat {

// The lattice family attached to an order-p action with nu isolated fixed points, nu (p + 1) = 24.
// D coordinates: D_{i,j} (i = 0..nu-1, j = 1..p-1) is basis vector i (p - 1) + j - 1 of H2D = A_{p-1}(-1)^nu.
struct NikulinFamily {
    long p = 0;
    long nu = 0;
    std::vector<long> k;
    Lattice H2D;
    RatVector varpi;          // D coordinates
    RatVector rho;            // D coordinates
    RatMatrix N_basis;        // rows in D coordinates
    Lattice N;                // Gram of N_basis
    IntVector varpi_N, rho_N; // N coordinates
    Sublattice L;             // rows in N coordinates
    IntMatrix sigma_D;        // acting on D coordinate columns
    IntMatrix sigma_N;
    IntMatrix sigma_L;        // on L basis coordinates

    Eigen::Index d_index(long i, long j) const { return static_cast<Eigen::Index>(i * (p - 1) + j - 1); }
    // D_{i,j} in N coordinates; j = 0 gives D_{i,0} = -sum_j D_{i,j}.
    IntVector d_in_N(long i, long j) const;
    // N coordinates of a D-coordinate vector lying in N.
    IntVector to_N(const RatVector& d) const;
};

std::vector<long> family_k_vector(long p);
NikulinFamily build_family(long p);

struct KUniquenessReport {
    long p = 0;
    bool vacuous = false;
    std::vector<std::vector<long>> solutions;   // sorted multisets of squares summing to 0 mod p
    bool unique = false;
};
KUniquenessReport k_vector_uniqueness(long p);

// L_p = {x in N_p : rho.x = 0 mod p}, rows in N coordinates.
Sublattice build_Lp(const NikulinFamily& fam);
// sigma on D, N and L coordinates.
struct SigmaMatrices {
    IntMatrix D, N, L;
};
SigmaMatrices build_sigma(const NikulinFamily& fam);
// (sigma - 1) L^dual is contained in L.
bool acts_trivially_on_disc(const IntMatrix& g, const IntMatrix& gram);

struct AutSearchReport {
    std::string status;   // "verified" or "inconclusive"
    std::vector<IntMatrix> elements;   // L coordinates
    bool equals_sigma_group = false;
    bool contains_sigma_group = false;
    long nodes = 0;
};
AutSearchReport aut_trivial_on_disc_search(const NikulinFamily& fam, long budget = default_budget);

// K_p on the basis (i(b_1), ..., i(b_n), f, s) with Gram G_N + [[0,1],[1,-2]].
struct KpModel {
    long p = 0;
    Lattice N_hat;           // degenerate, basis (i(b), f)
    Lattice K;
    IntMatrix L_in_K;        // rows
    IntVector f, s, e, e_prime, rho;
    IntMatrix sigma_K;
    bool u_summand = false;       // e = s + f and f span a copy of U orthogonal to i(N_p)
    bool dtilde_sums = false;     // sum_j D~_{i,j} = f for each i
    bool sigma_preserves_N_hat = false;
    Int s_dot_rho;
    Int ps_rho_norm;
};
KpModel build_hat_and_K(const NikulinFamily& fam);

struct ComplementReport {
    Sublattice complement;
    IntMatrix gram;   // on (e', f)
    bool spanned_by_e_prime_f = false;
    bool e_prime_isotropic = false;
    bool sigma_is_isometry = false;
};
ComplementReport Lp_complement_in_Kp(const NikulinFamily& fam, const KpModel& km);

struct GenusReport {
    long p = 0;
    std::string candidate_name;
    Lattice candidate;
    Signature signature;
    bool rank_ok = false, signature_ok = false;
    std::vector<Int> disc_orders;
    bool opposite_match = false;
};
Lattice lambda_G_candidate(long p, std::string* name = nullptr);
GenusReport genus_check_lambda_G(long p, const NikulinFamily& fam);

// h(u, v) = sum_k (u . sigma^k v) t^k lies in the augmentation ideal for sampled pairs of basis vectors.
bool hermitian_smoke(const NikulinFamily& fam);

std::vector<Check> verify_family(long p, long budget = default_budget);

}  // namespace k3lat
