#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <vector>

namespace tropint {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using ZVec = std::vector<Int>;
using QVec = std::vector<Rat>;

inline Int numerator(const Rat& r) { return Int(boost::multiprecision::numerator(r)); }
inline Int denominator(const Rat& r) { return Int(boost::multiprecision::denominator(r)); }

/// Serialize in lowest terms, "p/q" or plain "p" when q = 1.
std::string rat_to_string(const Rat& r);

/// Parse "p/q" or "p". Throws std::invalid_argument on malformed input.
Rat parse_rational(const std::string& text);

// -- small vector helpers used across all modules --

Rat dot(const QVec& a, const QVec& b);
Int dot(const ZVec& a, const ZVec& b);
Rat dot(const ZVec& a, const QVec& b);

bool is_zero(const ZVec& v);
bool is_zero(const QVec& v);

ZVec add(const ZVec& a, const ZVec& b);
QVec add(const QVec& a, const QVec& b);
ZVec sub(const ZVec& a, const ZVec& b);
QVec sub(const QVec& a, const QVec& b);
ZVec scale(const Int& c, const ZVec& v);
QVec scale(const Rat& c, const QVec& v);
ZVec negate(const ZVec& v);
QVec negate(const QVec& v);

QVec to_rational(const ZVec& v);

/// gcd of all entries (nonnegative); 0 for the zero vector.
Int content(const ZVec& v);

/// Scale to a primitive integer vector, preserving direction.
ZVec primitive(const ZVec& v);
/// Clear denominators and divide by content, preserving direction.
ZVec primitive(const QVec& v);

bool lex_less(const ZVec& a, const ZVec& b);
bool lex_less(const QVec& a, const QVec& b);

std::string vec_to_string(const QVec& v);
std::string vec_to_string(const ZVec& v);

}  // namespace tropint
