#include "nilrep/laurent.hpp"

#include <sstream>

namespace nilrep {

LaurentPoly LaurentPoly::monomial(long degree, const Rational& coeff) {
    LaurentPoly p;
    if (coeff != 0) p.coeffs[degree] = coeff;
    return p;
}

long LaurentPoly::min_degree() const {
    if (coeffs.empty()) throw std::logic_error("min_degree of zero");
    return coeffs.begin()->first;
}

long LaurentPoly::max_degree() const {
    if (coeffs.empty()) throw std::logic_error("max_degree of zero");
    return coeffs.rbegin()->first;
}

Rational LaurentPoly::coeff(long k) const {
    auto it = coeffs.find(k);
    return it == coeffs.end() ? Rational(0) : it->second;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [k, c] : o.coeffs) {
        Rational v = r.coeff(k) + c;
        if (v == 0)
            r.coeffs.erase(k);
        else
            r.coeffs[k] = v;
    }
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& [k, c] : r.coeffs) c = -c;
    return r;
}

LaurentPoly LaurentPoly::scaled(const Rational& s) const {
    LaurentPoly r;
    if (s == 0) return r;
    for (const auto& [k, c] : coeffs) r.coeffs[k] = c * s;
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (const auto& [k1, c1] : coeffs)
        for (const auto& [k2, c2] : o.coeffs) {
            Rational v = r.coeff(k1 + k2) + c1 * c2;
            if (v == 0)
                r.coeffs.erase(k1 + k2);
            else
                r.coeffs[k1 + k2] = v;
        }
    return r;
}

LaurentPoly LaurentPoly::substitute_scale(const Rational& s) const {
    LaurentPoly r;
    for (const auto& [k, c] : coeffs) {
        Rational v = c * rpow(s, Integer(k));
        if (v != 0) r.coeffs[k] = v;
    }
    return r;
}

Rational LaurentPoly::evaluate(const Rational& point) const {
    Rational acc = 0;
    for (const auto& [k, c] : coeffs) acc += c * rpow(point, Integer(k));
    return acc;
}

std::string LaurentPoly::str() const {
    if (coeffs.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, c] : coeffs) {
        if (!first) out << " + ";
        out << to_string(c);
        if (k != 0) out << "*t^" << k;
        first = false;
    }
    return out.str();
}

namespace {

// shift to a polynomial with nonzero constant coefficient
LaurentPoly normalize_shift(const LaurentPoly& p) {
    if (p.is_zero()) return p;
    long shift = p.min_degree();
    LaurentPoly r;
    for (const auto& [k, c] : p.coeffs) r.coeffs[k - shift] = c;
    return r;
}

LaurentPoly poly_mod(LaurentPoly a, const LaurentPoly& b) {
    while (!a.is_zero() && a.max_degree() >= b.max_degree()) {
        Rational f = a.coeff(a.max_degree()) / b.coeff(b.max_degree());
        long shift = a.max_degree() - b.max_degree();
        for (const auto& [k, c] : b.coeffs) {
            Rational v = a.coeff(k + shift) - f * c;
            if (v == 0)
                a.coeffs.erase(k + shift);
            else
                a.coeffs[k + shift] = v;
        }
    }
    return a;
}

}  // namespace

LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly x = normalize_shift(a), y = normalize_shift(b);
    while (!y.is_zero()) {
        LaurentPoly r = poly_mod(x, y);
        x = std::move(y);
        y = normalize_shift(r);
    }
    if (x.is_zero()) return x;
    return x.scaled(Rational(1) / x.coeff(x.max_degree()));
}

LaurentPoly laurent_divide_exact(const LaurentPoly& num, const LaurentPoly& den) {
    if (den.is_zero()) throw ValidationError("laurent division by zero");
    if (num.is_zero()) return num;
    LaurentPoly a = num, q;
    long dtop = den.max_degree();
    while (!a.is_zero()) {
        long k = a.max_degree() - dtop;
        Rational f = a.coeff(a.max_degree()) / den.coeff(dtop);
        q.coeffs[k] = f;
        for (const auto& [dk, dc] : den.coeffs) {
            Rational v = a.coeff(dk + k) - f * dc;
            if (v == 0)
                a.coeffs.erase(dk + k);
            else
                a.coeffs[dk + k] = v;
        }
    }
    return q;
}

namespace {

RatFn reduce_fraction(LaurentPoly num, LaurentPoly den) {
    if (den.is_zero()) throw ValidationError("rational function with zero denominator");
    if (num.is_zero()) return RatFn::zero();
    LaurentPoly g = laurent_gcd(num, den);
    if (!g.is_unit()) {
        num = laurent_divide_exact(num, g);
        den = laurent_divide_exact(den, g);
    }
    long shift = den.min_degree();
    LaurentPoly den_n;
    for (const auto& [k, c] : den.coeffs) den_n.coeffs[k - shift] = c;
    LaurentPoly num_n;
    for (const auto& [k, c] : num.coeffs) num_n.coeffs[k - shift] = c;
    Rational lead = den_n.coeff(den_n.max_degree());
    return RatFn{num_n.scaled(Rational(1) / lead), den_n.scaled(Rational(1) / lead)};
}

}  // namespace

RatFn RatFn::operator+(const RatFn& o) const {
    return reduce_fraction(num * o.den + o.num * den, den * o.den);
}

RatFn RatFn::operator-(const RatFn& o) const {
    return reduce_fraction(num * o.den - o.num * den, den * o.den);
}

RatFn RatFn::operator*(const RatFn& o) const {
    return reduce_fraction(num * o.num, den * o.den);
}

RatFn RatFn::operator/(const RatFn& o) const {
    if (o.is_zero()) throw ValidationError("rational function division by zero");
    return reduce_fraction(num * o.den, den * o.num);
}

bool RatFn::operator==(const RatFn& o) const { return (num * o.den) == (o.num * den); }

RatFn RatFn::substitute_scale(const Rational& s) const {
    return reduce_fraction(num.substitute_scale(s), den.substitute_scale(s));
}

}  // namespace nilrep
