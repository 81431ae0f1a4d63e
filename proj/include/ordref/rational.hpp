#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <string>
#include <string_view>

namespace ordref {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorQ = Vector<Rational>;
using MatrixQ = Matrix<Rational>;

// Accepts "p/q", integers and exact decimals ("-0.125", "3e-2").
// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

// Canonical "p/q" (or "p" when integral).
std::string to_string(const Rational& r);

// Non-normative decimal rendering for display fields.
std::string to_decimal(const Rational& r, int digits = 6);

double to_double(const Rational& r);

inline Rational frac(long num, long den = 1) { return Rational(Integer(num), Integer(den)); }

}  // namespace ordref
