#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace nucleo {

/// Exact rational number, always kept in canonical reduced form.
using Rat = mpq_class;

/// Unbounded natural number used for coalition counts (can reach 2^n).
using Count = mpz_class;

inline Rat make_rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

/// Serializes a rational in lowest terms, e.g. "1/3", "-1/2"; integers
/// drop the denominator ("0", "2").
std::string rat_str(const Rat& q);

std::string count_str(const Count& c);

/// Parses "a/b" or "a" into a canonical rational. Throws validation_error
/// on malformed input or zero denominator.
Rat parse_rat(const std::string& s);

/// Parses a comma-separated list of rationals, e.g. "1/2,1/2,0".
std::vector<Rat> parse_rat_list(const std::string& s);

}  // namespace nucleo
