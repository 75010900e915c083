#ifndef NILREP_RATIONAL_HPP
#define NILREP_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace nilrep {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Integer gcd(const Integer& a, const Integer& b) {
    return boost::multiprecision::gcd(a, b);
}

inline Integer lcm(const Integer& a, const Integer& b) {
    return boost::multiprecision::lcm(a, b);
}

// floor division, correct for negative operands
inline Integer fdiv(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if (q * b != a && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Integer fmod(const Integer& a, const Integer& b) {
    return a - fdiv(a, b) * b;
}

inline Integer ipow(Integer base, Integer exp) {
    if (exp < 0) throw std::invalid_argument("ipow: negative exponent");
    Integer r = 1;
    while (exp > 0) {
        if ((exp & 1) != 0) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

inline Rational rpow(const Rational& base, const Integer& exp) {
    if (exp >= 0)
        return Rational(ipow(numerator(base), exp), ipow(denominator(base), exp));
    if (base == 0) throw std::domain_error("rpow: 0^negative");
    return Rational(ipow(denominator(base), -exp), ipow(numerator(base), -exp));
}

// "p/q" or "p"; used by all JSON surfaces
inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse rational: '" + s + "'");
    }
}

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedRegimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ResourceBudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace nilrep

#endif
