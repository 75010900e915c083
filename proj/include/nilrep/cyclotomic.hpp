#ifndef NILREP_CYCLOTOMIC_HPP
#define NILREP_CYCLOTOMIC_HPP

#include <vector>

#include "nilrep/rational.hpp"

namespace nilrep {

// Elements of Q(zeta_n), stored on the power basis 1, zeta, ..., zeta^(phi(n)-1)
// reduced modulo the n-th cyclotomic polynomial.  Two equal field elements have
// identical coefficient vectors, so equality is coefficient-wise.
class Cyclotomic {
public:
    Cyclotomic() : n_(1), coeffs_(1, Rational(0)) {}
    explicit Cyclotomic(const Rational& q, long conductor = 1);

    // zeta_n^k
    static Cyclotomic root_of_unity(long n, long k);

    long conductor() const { return n_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;
    // valid only when is_rational()
    Rational rational_value() const;

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator-() const;
    Cyclotomic inverse() const;

    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    // image under zeta -> zeta^exponent; requires gcd(exponent, n) = 1
    Cyclotomic galois(const Integer& exponent) const;

    // same element inside Q(zeta_target); requires n | target
    Cyclotomic embed(long target_conductor) const;

    std::string str() const;

    static long phi(long n);
    // coefficients of the n-th cyclotomic polynomial (degree phi(n), monic)
    static const std::vector<Integer>& cyclotomic_polynomial(long n);

private:
    long n_;
    std::vector<Rational> coeffs_;

    Cyclotomic(long n, std::vector<Rational> reduced)
        : n_(n), coeffs_(std::move(reduced)) {}
    static Cyclotomic reduce(long n, std::vector<Rational> poly);
    void check_same_field(const Cyclotomic& o) const;
};

}  // namespace nilrep

#endif
