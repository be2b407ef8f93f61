#include "sporadic/bigint.h"

#include <stdexcept>

namespace spor {

BigInt parse_bigint(const std::string &s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("not a decimal integer: '" + s + "'");
  return BigInt(s);
}

std::string to_string(const BigInt &v) { return v.str(); }

BigInt p_part(BigInt v, unsigned p) {
  BigInt r = 1;
  if (v == 0)
    return r;
  while (v % p == 0) {
    v /= p;
    r *= p;
  }
  return r;
}

unsigned p_valuation(BigInt v, unsigned p) {
  unsigned k = 0;
  if (v == 0)
    return 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

std::vector<unsigned> prime_divisors(BigInt v) {
  std::vector<unsigned> r;
  for (unsigned p = 2; v > 1; ++p) {
    if (BigInt(p) * p > v) {
      if (v > std::numeric_limits<unsigned>::max())
        throw std::runtime_error("order has a large prime factor");
      r.push_back(static_cast<unsigned>(v));
      break;
    }
    if (v % p == 0) {
      r.push_back(p);
      while (v % p == 0)
        v /= p;
    }
  }
  return r;
}

bool is_p_power(BigInt v, unsigned p) {
  if (v == 0)
    return false;
  while (v % p == 0)
    v /= p;
  return v == 1;
}

bool is_prime(unsigned p) {
  if (p < 2)
    return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0)
      return false;
  return true;
}

}  // namespace spor
