#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace rank2 {

/// Arbitrary-precision signed integer used for every coefficient.
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

/// Exact rational, only needed where polynomial weights are rational.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

/// Raised when an argument falls outside an operation's domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline std::string to_decimal(const BigInt& v) { return v.str(); }

inline BigInt parse_decimal(const std::string& s) { return BigInt(s); }

inline bool is_zero(const BigInt& v) { return v.is_zero(); }

inline int sign(const BigInt& v) { return v.sign(); }

}  // namespace rank2
