#pragma once

// Goedel numbering of closed terms: a bijection between the naturals and
// closed terms.
//
//   c < 14                       atom: 0 = K, 1 = S, 2 + i = the i-th primitive
//   c = 14 + 2n                  Numeral n
//   c = 14 + 2 shell_pair(a,b)+1 App(decode a, decode b)
//
// shell_pair keeps code size additive in the sizes of the parts, so a code
// embedded as a numeral inside another code costs only its own bit length.

#include "pcalab/natural.hpp"
#include "pcalab/term.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace pcalab {

using Code = Natural;

inline constexpr unsigned kAtomCount = 2 + kAllPrims.size();

inline Code encode_atom(const Term& t) {
  switch (t.kind()) {
    case Kind::K: return 0;
    case Kind::S: return 1;
    case Kind::Prim: return 2 + static_cast<unsigned>(t.prim_op());
    default: throw std::logic_error("not an atom");
  }
}

inline Code numeral_code(const Natural& n) { return kAtomCount + 2 * n; }

inline Code application_code(const Code& fun, const Code& arg) {
  return kAtomCount + 2 * shell_pair(fun, arg) + 1;
}

inline Code encode(const Term& t) {
  if (!t.closed()) throw std::invalid_argument("encode: term has free variables");
  switch (t.kind()) {
    case Kind::Numeral: return numeral_code(t.numeral_value());
    case Kind::App: return application_code(encode(t.fun()), encode(t.arg()));
    default: return encode_atom(t);
  }
}

namespace detail {

inline Term decode_uncached(const Code& c) {
  if (c < kAtomCount) {
    unsigned i = static_cast<unsigned>(c);
    if (i == 0) return Term::k();
    if (i == 1) return Term::s();
    return Term::prim(kAllPrims[i - 2]);
  }
  Code rest = c - kAtomCount;
  if (!boost::multiprecision::bit_test(rest, 0)) return Term::numeral(rest >> 1);
  auto [a, b] = shell_unpair(rest >> 1);
  return Term::app(decode_uncached(a), decode_uncached(b));
}

}  // namespace detail

// Total on the naturals. Large codes are memoised per thread since the
// universal primitive decodes the same program repeatedly.
inline Term decode(const Code& c) {
  if (c < 4096) return detail::decode_uncached(c);
  thread_local std::unordered_map<Code, Term, boost::hash<Code>> cache;
  if (auto it = cache.find(c); it != cache.end()) return it->second;
  if (cache.size() > 4096) cache.clear();
  Term t = detail::decode_uncached(c);
  cache.emplace(c, t);
  return t;
}

}  // namespace pcalab
