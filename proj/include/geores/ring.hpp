#pragma once
#include <boost/multiprecision/cpp_int.hpp>

#include "geores/field.hpp"

namespace geores {

using Rat = boost::multiprecision::cpp_rational;

// Ring customization points. Generic code asks a witness element for zero/one so
// that context-carrying types (Fq, series) can answer.

inline Fq ring_zero(const Fq& w) { return Fq::zero(w.ctx); }
inline Fq ring_one(const Fq& w) { return Fq::one(w.ctx); }
inline bool ring_is_zero(const Fq& a) { return a.is_zero(); }
inline Fq ring_inv(const Fq& a) { return inv(a); }
inline Fq ring_from_int(const Fq& w, long long v) { return Fq::from_int(w.ctx, v); }

inline Rat ring_zero(const Rat&) { return Rat(0); }
inline Rat ring_one(const Rat&) { return Rat(1); }
inline bool ring_is_zero(const Rat& a) { return a == 0; }
inline Rat ring_inv(const Rat& a) {
  if (a == 0) throw std::domain_error("inverse of zero rational");
  return Rat(1) / a;
}
inline Rat ring_from_int(const Rat&, long long v) { return Rat(v); }

} // namespace geores
