#pragma once

#include <gmpxx.h>

#include <string>

namespace morava {

// Exact arithmetic base types. mpq_class keeps values canonical (reduced,
// positive denominator) under arithmetic; only raw construction needs care.
using Int = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rational_from_strings(const std::string& num, const std::string& den) {
    Rational q{Int(num), Int(den)};
    q.canonicalize();
    return q;
}

inline bool denominator_coprime_to(const Rational& q, long p) {
    return mpz_divisible_ui_p(q.get_den().get_mpz_t(), static_cast<unsigned long>(p)) == 0;
}

// Residue in {0,..,p-1} of a rational whose denominator is coprime to p.
inline long residue_mod_p(const Rational& q, long p) {
    Int den_inv;
    Int pz(p);
    if (mpz_invert(den_inv.get_mpz_t(), q.get_den().get_mpz_t(), pz.get_mpz_t()) == 0)
        throw std::invalid_argument("residue_mod_p: denominator not invertible mod p");
    Int r = q.get_num() * den_inv;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), pz.get_mpz_t());
    return r.get_si();
}

inline Rational rational_pow(const Rational& q, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num().get_mpz_t(), q.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den().get_mpz_t(), q.get_den().get_mpz_t(), e);
    return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline std::string rational_to_string(const Rational& q) { return q.get_str(); }

}  // namespace morava
