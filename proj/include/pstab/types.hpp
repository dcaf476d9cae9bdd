#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace pstab {

using Element = std::uint32_t;
using Point = std::uint32_t;

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<std::int64_t>;
using IntVector = Vector<std::int64_t>;
using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

/// Membership mask over the points of a finite set.
using PointSet = std::vector<bool>;

// Errors. Every failure surfaced by the library derives from Error so callers
// can catch broadly, while tests match on the concrete kind.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PSTAB_DEFINE_ERROR(Name)                  \
  class Name : public Error {                     \
   public:                                        \
    explicit Name(const std::string& what)        \
        : Error(std::string(#Name ": ") + what) {} \
  }

PSTAB_DEFINE_ERROR(NotAGroup);
PSTAB_DEFINE_ERROR(GroupTooLarge);
PSTAB_DEFINE_ERROR(NotAHomomorphism);
PSTAB_DEFINE_ERROR(NotAnAction);
PSTAB_DEFINE_ERROR(Incompatible);
PSTAB_DEFINE_ERROR(NonInjectiveEdgeMap);
PSTAB_DEFINE_ERROR(Disconnected);
PSTAB_DEFINE_ERROR(BadInvolution);
PSTAB_DEFINE_ERROR(VertexActionBroken);
PSTAB_DEFINE_ERROR(DegreeMismatch);
PSTAB_DEFINE_ERROR(BadPad);
PSTAB_DEFINE_ERROR(PreconditionFailed);
PSTAB_DEFINE_ERROR(InternalInvariantBroken);
PSTAB_DEFINE_ERROR(TooLarge);
PSTAB_DEFINE_ERROR(ParseError);

#undef PSTAB_DEFINE_ERROR

inline std::string to_string(const Rational& q) { return q.str(); }

inline double to_double(const Rational& q) {
  return q.convert_to<double>();
}

}  // namespace pstab
