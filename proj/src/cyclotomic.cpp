#include "nilrep/cyclotomic.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <sstream>

namespace nilrep {

namespace {

// polynomial utilities on dense coefficient vectors, lowest degree first

void trim(std::vector<Integer>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// exact division of integer polynomials, remainder must vanish
std::vector<Integer> exact_div(std::vector<Integer> num, const std::vector<Integer>& den) {
    trim(num);
    std::vector<Integer> q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Integer(0));
    while (num.size() >= den.size() && !num.empty()) {
        Integer lead = num.back() / den.back();
        size_t shift = num.size() - den.size();
        q[shift] = lead;
        for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= lead * den[i];
        trim(num);
    }
    if (!num.empty()) throw std::logic_error("exact_div: nonzero remainder");
    return q;
}

}  // namespace

long Cyclotomic::phi(long n) {
    long result = n, m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

const std::vector<Integer>& Cyclotomic::cyclotomic_polynomial(long n) {
    static std::map<long, std::vector<Integer>> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    std::function<const std::vector<Integer>&(long)> get = [&](long m) -> const std::vector<Integer>& {
        auto found = cache.find(m);
        if (found != cache.end()) return found->second;
        std::vector<Integer> num(m + 1, Integer(0));
        num[0] = -1;
        num[m] = 1;
        for (long d = 1; d < m; ++d)
            if (m % d == 0) num = exact_div(std::move(num), get(d));
        return cache.emplace(m, std::move(num)).first->second;
    };
    return get(n);
}

Cyclotomic::Cyclotomic(const Rational& q, long conductor) : n_(conductor) {
    if (conductor < 1) throw ValidationError("conductor must be positive");
    coeffs_.assign(static_cast<size_t>(phi(conductor)), Rational(0));
    coeffs_[0] = q;
}

Cyclotomic Cyclotomic::root_of_unity(long n, long k) {
    if (n < 1) throw ValidationError("conductor must be positive");
    k %= n;
    if (k < 0) k += n;
    std::vector<Rational> poly(static_cast<size_t>(k) + 1, Rational(0));
    poly[static_cast<size_t>(k)] = 1;
    return reduce(n, std::move(poly));
}

Cyclotomic Cyclotomic::reduce(long n, std::vector<Rational> poly) {
    const auto& modulus = cyclotomic_polynomial(n);
    size_t deg = modulus.size() - 1;  // phi(n)
    while (!poly.empty() && poly.back() == 0) poly.pop_back();
    while (poly.size() > deg) {
        Rational lead = poly.back();  // modulus is monic
        size_t shift = poly.size() - modulus.size();
        for (size_t i = 0; i < modulus.size(); ++i)
            poly[shift + i] -= lead * Rational(modulus[i]);
        while (!poly.empty() && poly.back() == 0) poly.pop_back();
    }
    poly.resize(deg, Rational(0));
    return Cyclotomic(n, std::move(poly));
}

void Cyclotomic::check_same_field(const Cyclotomic& o) const {
    if (n_ != o.n_)
        throw ValidationError("cyclotomic conductor mismatch: " + std::to_string(n_) +
                              " vs " + std::to_string(o.n_) + " (no implicit embedding)");
}

bool Cyclotomic::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

Rational Cyclotomic::rational_value() const {
    if (!is_rational()) throw ValidationError("not a rational element");
    return coeffs_[0];
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    check_same_field(o);
    std::vector<Rational> sum = coeffs_;
    for (size_t i = 0; i < sum.size(); ++i) sum[i] += o.coeffs_[i];
    return Cyclotomic(n_, std::move(sum));
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const {
    check_same_field(o);
    std::vector<Rational> diff = coeffs_;
    for (size_t i = 0; i < diff.size(); ++i) diff[i] -= o.coeffs_[i];
    return Cyclotomic(n_, std::move(diff));
}

Cyclotomic Cyclotomic::operator-() const {
    std::vector<Rational> neg = coeffs_;
    for (auto& c : neg) c = -c;
    return Cyclotomic(n_, std::move(neg));
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    check_same_field(o);
    std::vector<Rational> prod(coeffs_.size() + o.coeffs_.size(), Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (size_t j = 0; j < o.coeffs_.size(); ++j) {
            if (o.coeffs_[j] == 0) continue;
            prod[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    return reduce(n_, std::move(prod));
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw ValidationError("division by zero in cyclotomic field");
    // extended gcd of this element against the cyclotomic polynomial
    const auto& modulus = cyclotomic_polynomial(n_);
    std::vector<Rational> r0(modulus.begin(), modulus.end());
    std::vector<Rational> r1 = coeffs_;
    while (!r1.empty() && r1.back() == 0) r1.pop_back();
    std::vector<Rational> s0{Rational(0)}, s1{Rational(1)};  // Bezout for the element

    auto poly_trim = [](std::vector<Rational>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    };
    while (true) {
        // divide r0 by r1
        std::vector<Rational> rem = r0, quot(rem.size(), Rational(0));
        while (rem.size() >= r1.size() && !rem.empty()) {
            Rational lead = rem.back() / r1.back();
            size_t shift = rem.size() - r1.size();
            quot[shift] = lead;
            for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= lead * r1[i];
            poly_trim(rem);
        }
        poly_trim(quot);
        // s2 = s0 - quot * s1
        std::vector<Rational> s2 = s0;
        s2.resize(std::max(s2.size(), quot.size() + s1.size()), Rational(0));
        for (size_t i = 0; i < quot.size(); ++i) {
            if (quot[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= quot[i] * s1[j];
        }
        poly_trim(s2);
        if (rem.empty()) {
            // r1 is the gcd: a nonzero constant since Phi_n is irreducible
            if (r1.size() != 1)
                throw std::logic_error("cyclotomic inverse: nonconstant gcd");
            std::vector<Rational> result = s1;
            for (auto& c : result) c /= r1[0];
            return reduce(n_, std::move(result));
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    return n_ == o.n_ && coeffs_ == o.coeffs_;
}

Cyclotomic Cyclotomic::galois(const Integer& exponent) const {
    Integer e = fmod(exponent, Integer(n_));
    if (gcd(e, Integer(n_)) != 1)
        throw ValidationError("galois exponent not coprime to conductor");
    long k = static_cast<long>(e);
    std::vector<Rational> poly(static_cast<size_t>(n_), Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        poly[(i * static_cast<size_t>(k)) % static_cast<size_t>(n_)] += coeffs_[i];
    }
    return reduce(n_, std::move(poly));
}

Cyclotomic Cyclotomic::embed(long target_conductor) const {
    if (target_conductor % n_ != 0)
        throw ValidationError("embed: conductor " + std::to_string(n_) +
                              " does not divide " + std::to_string(target_conductor));
    long stretch = target_conductor / n_;
    std::vector<Rational> poly(coeffs_.size() * static_cast<size_t>(stretch) + 1, Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        poly[i * static_cast<size_t>(stretch)] = coeffs_[i];
    return reduce(target_conductor, std::move(poly));
}

std::string Cyclotomic::str() const {
    std::ostringstream out;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) out << " + ";
        out << to_string(coeffs_[i]);
        if (i > 0) out << "*z" << n_ << "^" << i;
        first = false;
    }
    if (first) out << "0";
    return out.str();
}

}  // namespace nilrep
