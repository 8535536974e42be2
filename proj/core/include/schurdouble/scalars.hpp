#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace schurdouble {

// Exact scalars. The primary ring is Z (arbitrary precision); Q is used for
// rank/kernel computations and for checks that live in the rational form.
using Int = mpz_class;
using Rat = mpq_class;

// Thrown when a structural check fails (associativity, integrality, a
// verified identity, ...). Carries a human-readable witness.
class CheckError : public std::runtime_error {
 public:
  explicit CheckError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on malformed user input (files, CLI arguments, precondition breaches).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

inline Int factorial(long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

inline Int binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

// Exact division a / b; throws if b does not divide a.
inline Int exact_div(const Int& a, const Int& b) {
  if (b == 0) throw CheckError("exact_div: division by zero");
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (r != 0)
    throw CheckError("exact_div: " + a.get_str() + " not divisible by " +
                     b.get_str());
  return q;
}

inline Int mod_reduce(const Int& a, unsigned long p) {
  Int r = a % static_cast<long>(p);
  if (r < 0) r += static_cast<long>(p);
  return r;
}

inline bool is_prime(unsigned long p) {
  Int n = static_cast<long>(p);
  return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

}  // namespace schurdouble
