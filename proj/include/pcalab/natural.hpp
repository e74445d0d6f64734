#pragma once

// Arbitrary-precision naturals and the two pairing functions used across the
// library: Cantor pairing for binary maps on codes, and a length-shell pairing
// whose output size is additive in its inputs (used by the term codec).

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace pcalab {

using Natural = boost::multiprecision::mpz_int;

inline std::size_t bit_length(const Natural& n) {
  return n.is_zero() ? 0 : boost::multiprecision::msb(n) + 1;
}

inline Natural parse_natural(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty natural");
  for (char c : text) {
    if (c < '0' || c > '9') throw std::invalid_argument("not a natural: " + std::string(text));
  }
  return Natural(std::string(text));
}

inline std::string to_string(const Natural& n) { return n.str(); }

inline Natural isqrt(const Natural& n) { return boost::multiprecision::sqrt(n); }

// Cantor pairing <x, y> = (x + y)(x + y + 1)/2 + y.
inline Natural cantor_pair(const Natural& x, const Natural& y) {
  Natural w = x + y;
  return w * (w + 1) / 2 + y;
}

inline std::pair<Natural, Natural> cantor_unpair(const Natural& z) {
  // w = floor((sqrt(8z + 1) - 1) / 2)
  Natural w = (isqrt(8 * z + 1) - 1) / 2;
  Natural t = w * (w + 1) / 2;
  Natural y = z - t;
  return {w - y, y};
}

namespace detail {

// Bijective binary: n <-> (length, rank) where the string has `length` bits
// and `rank` < 2^length. n = 2^length - 1 + rank.
inline std::pair<std::size_t, Natural> to_bitstring(const Natural& n) {
  Natural m = n + 1;
  std::size_t len = bit_length(m) - 1;
  Natural rank = m;
  boost::multiprecision::bit_unset(rank, static_cast<unsigned>(len));
  return {len, rank};
}

inline Natural from_bitstring(std::size_t len, const Natural& rank) {
  Natural n = Natural(1) << len;
  return n - 1 + rank;
}

// First code of the shell of pairs whose bitstrings have total length L:
// sum_{l < L} (l + 1) 2^l = (L - 1) 2^L + 1, and 0 for L = 0.
inline Natural shell_base(std::size_t total) {
  if (total == 0) return 0;
  return Natural(total - 1) * (Natural(1) << total) + 1;
}

}  // namespace detail

// Bijection N x N -> N with bit_length(out) ~ bit_length(a) + bit_length(b) + O(log).
// Pairs are ordered by total bitstring length, then by the length of the first
// component, then by the concatenated bits.
inline Natural shell_pair(const Natural& a, const Natural& b) {
  auto [i, ru] = detail::to_bitstring(a);
  auto [j, rv] = detail::to_bitstring(b);
  std::size_t total = i + j;
  Natural z = detail::shell_base(total);
  z += Natural(i) << total;
  z += ru << j;
  z += rv;
  return z;
}

inline std::pair<Natural, Natural> shell_unpair(const Natural& z) {
  std::size_t bits = bit_length(z);
  std::size_t total = bits > 2 * bit_length(Natural(bits)) + 2 ? bits - 2 * bit_length(Natural(bits)) - 2 : 0;
  while (detail::shell_base(total + 1) <= z) ++total;
  while (total > 0 && detail::shell_base(total) > z) --total;
  Natural t = z - detail::shell_base(total);
  std::size_t i = static_cast<std::size_t>(t >> total);
  Natural rest = t & ((Natural(1) << total) - 1);
  std::size_t j = total - i;
  Natural ru = rest >> j;
  Natural rv = rest & ((Natural(1) << j) - 1);
  return {detail::from_bitstring(i, ru), detail::from_bitstring(j, rv)};
}

}  // namespace pcalab
