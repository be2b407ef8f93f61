#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace spor {

using BigInt = boost::multiprecision::cpp_int;

BigInt parse_bigint(const std::string &s);
std::string to_string(const BigInt &v);

// Largest power of p dividing v.
BigInt p_part(BigInt v, unsigned p);
unsigned p_valuation(BigInt v, unsigned p);
// Prime divisors of v by trial division (v is a group order, so factors are small).
std::vector<unsigned> prime_divisors(BigInt v);
bool is_p_power(BigInt v, unsigned p);
bool is_prime(unsigned p);

}  // namespace spor
