#ifndef NILREP_SKEW_HPP
#define NILREP_SKEW_HPP

#include <optional>

#include "nilrep/laurent.hpp"

namespace nilrep {

// The twist parameter c: a nonzero rational which is not a root of unity,
// i.e. different from 0, 1, -1.
struct ScalarC {
    Rational value;
    explicit ScalarC(const Rational& v) : value(v) {
        if (v == 0 || v == 1 || v == -1)
            throw ValidationError("c must be a rational that is not 0 or a root of unity");
    }
    bool operator==(const ScalarC& o) const { return value == o.value; }
};

// Element of the skew Laurent algebra A = K[t, t^-1] * Gamma with the rule
// gamma t = c t gamma.  Normal form: sum f_i(t) gamma^i with coefficients on
// the left.
struct SkewElement {
    Rational c;
    std::map<long, LaurentPoly> terms;  // gamma degree -> coefficient

    static SkewElement zero(const ScalarC& c);
    static SkewElement from_laurent(const ScalarC& c, const LaurentPoly& f);
    static SkewElement gamma(const ScalarC& c, long power = 1);
    static SkewElement t(const ScalarC& c, long power = 1);

    bool is_zero() const { return terms.empty(); }
    long min_gamma_degree() const;
    long max_gamma_degree() const;
    // width = max gamma degree - min gamma degree
    long width() const;

    SkewElement operator+(const SkewElement& o) const;
    SkewElement operator-(const SkewElement& o) const;
    SkewElement operator*(const SkewElement& o) const;
    SkewElement operator-() const;
    bool operator==(const SkewElement& o) const { return c == o.c && terms == o.terms; }

    std::string str() const;
};

// gamma^j f(t) = f(c^j t) gamma^j
LaurentPoly sigma_shift(const Rational& c, long j, const LaurentPoly& f);

// SL2(Z) twist: sends gamma to gamma^p t^r and t to gamma^q t^s.
struct SL2Twist {
    long p, q, r, s;

    SL2Twist(long p_, long q_, long r_, long s_);
    static SL2Twist identity() { return SL2Twist(1, 0, 0, 1); }
    static SL2Twist upper(long i) { return SL2Twist(1, i, 0, 1); }
    SL2Twist compose(const SL2Twist& o) const;  // matrix product

    // the defining relation alpha(gamma) alpha(t) = c alpha(t) alpha(gamma)
    void check_relation(const ScalarC& c) const;
};

SkewElement apply_twist(const SL2Twist& alpha, const SkewElement& a);

// Cyclic module A / A p.
struct CyclicModule {
    SkewElement p;
    explicit CyclicModule(SkewElement q) : p(std::move(q)) {
        if (p.is_zero()) throw ValidationError("cyclic module needs a nonzero element");
    }
};

CyclicModule twist_module(const SL2Twist& alpha, const CyclicModule& m);

// dim_F of F tensor (A/Ap) = gamma-width of p; 0 is the torsion case
Integer f_dimension(const CyclicModule& m);

// independent route: count F-independent residues of gamma^k modulo p over a
// window around the width
Integer ore_reduction_dimension(const CyclicModule& m, long pad = 2);

// true iff a module of this F-dimension can have the shape A tensor_B N for
// the index-p subalgebra B: infinite or divisible by p
bool divisibility_check(const std::optional<Integer>& dim, const Integer& prime);

struct NonIndRow {
    Integer prime;
    long i;
    Integer dim;
    bool divisible;
};

struct NonIndReport {
    std::vector<NonIndRow> rows;
    bool verdict_not_induced;  // true when no row is divisible
    bool oracle_checked;
};

// sweep over primes <= bound and twists 0 <= i < p of A/(gamma - t + 1);
// with_oracle re-derives every dimension through the reduction oracle
NonIndReport nonind_verdict(const ScalarC& c, long prime_bound, bool with_oracle = true,
                            bool parallel = true);

// literal grammar: terms "coef*t^a*g^b" joined by + or -
SkewElement parse_skew(const ScalarC& c, const std::string& text);

}  // namespace nilrep

#endif
