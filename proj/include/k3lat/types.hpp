#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace k3lat {

namespace mp = boost::multiprecision;

using Int = mp::number<mp::gmp_int, mp::et_off>;
using Rat = mp::number<mp::gmp_rational, mp::et_off>;

using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

// Error carrying a stable machine-readable code such as "no-dual".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    explicit Error(std::string code) : Error(code, "error") {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

inline RatMatrix to_rat(const IntMatrix& m) { return m.cast<Rat>(); }
inline RatVector to_rat(const IntVector& v) { return v.cast<Rat>(); }

// Exact conversion; throws if some entry is not an integer.
IntMatrix to_int(const RatMatrix& m);
IntVector to_int(const RatVector& v);
bool is_integral(const RatMatrix& m);

Int floor_div(const Int& a, const Int& b);
Int mod_floor(const Int& a, const Int& b);
Rat frac_mod(const Rat& x, const Int& m);   // x mod m in [0, m)

IntMatrix identity(Eigen::Index n);
IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b);

Int determinant(const IntMatrix& m);
Rat determinant(const RatMatrix& m);
RatMatrix inverse(const RatMatrix& m);   // throws "singular"
Eigen::Index rank(const RatMatrix& m);
Eigen::Index rank_mod_p(const IntMatrix& m, long p);

// Key used for hashing/ordering matrices and vectors.
std::string key(const IntMatrix& m);

bool lex_less(const IntVector& a, const IntVector& b);

}  // namespace k3lat
