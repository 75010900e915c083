#ifndef NILREP_LAURENT_HPP
#define NILREP_LAURENT_HPP

#include <map>

#include "nilrep/rational.hpp"

namespace nilrep {

// Laurent polynomial over Q; no zero coefficients stored.
struct LaurentPoly {
    std::map<long, Rational> coeffs;

    static LaurentPoly zero() { return LaurentPoly{}; }
    static LaurentPoly one() { return monomial(0, 1); }
    static LaurentPoly t() { return monomial(1, 1); }
    static LaurentPoly monomial(long degree, const Rational& coeff);

    bool is_zero() const { return coeffs.empty(); }
    // units of K[t, t^-1] are the nonzero monomials
    bool is_unit() const { return coeffs.size() == 1; }
    long min_degree() const;
    long max_degree() const;
    Rational coeff(long k) const;

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly scaled(const Rational& s) const;
    bool operator==(const LaurentPoly& o) const { return coeffs == o.coeffs; }

    // t -> s * t
    LaurentPoly substitute_scale(const Rational& s) const;
    Rational evaluate(const Rational& point) const;
    std::string str() const;
};

// gcd up to units, returned with minimal degree zero and monic leading term
LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b);

// exact division; throws when the division is not exact
LaurentPoly laurent_divide_exact(const LaurentPoly& num, const LaurentPoly& den);

// Rational function over Q represented as num/den with den a polynomial of
// nonzero constant term, normalized monic; used by the reduction oracle.
struct RatFn {
    LaurentPoly num, den;  // den never zero

    static RatFn zero() { return RatFn{LaurentPoly::zero(), LaurentPoly::one()}; }
    static RatFn of(const LaurentPoly& p) { return RatFn{p, LaurentPoly::one()}; }
    bool is_zero() const { return num.is_zero(); }

    RatFn operator+(const RatFn& o) const;
    RatFn operator-(const RatFn& o) const;
    RatFn operator*(const RatFn& o) const;
    RatFn operator/(const RatFn& o) const;
    bool operator==(const RatFn& o) const;
    // t -> s * t
    RatFn substitute_scale(const Rational& s) const;
};

}  // namespace nilrep

#endif
