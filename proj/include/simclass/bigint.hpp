#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace simclass {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt ipow(const BigInt& base, std::uint64_t e)
{
    return boost::multiprecision::pow(base, static_cast<unsigned>(e));
}

/// Exact quotient; throws NonIntegralDivision when den does not divide num.
BigInt exact_div(const BigInt& num, const BigInt& den);

} // namespace simclass
