#include "nilrep/skew.hpp"

#include <algorithm>
#include <cctype>
#include <future>
#include <sstream>

namespace nilrep {

SkewElement SkewElement::zero(const ScalarC& c) { return SkewElement{c.value, {}}; }

SkewElement SkewElement::from_laurent(const ScalarC& c, const LaurentPoly& f) {
    SkewElement e{c.value, {}};
    if (!f.is_zero()) e.terms[0] = f;
    return e;
}

SkewElement SkewElement::gamma(const ScalarC& c, long power) {
    SkewElement e{c.value, {}};
    e.terms[power] = LaurentPoly::one();
    return e;
}

SkewElement SkewElement::t(const ScalarC& c, long power) {
    SkewElement e{c.value, {}};
    e.terms[0] = LaurentPoly::monomial(power, 1);
    return e;
}

long SkewElement::min_gamma_degree() const {
    if (terms.empty()) throw std::logic_error("gamma degree of zero");
    return terms.begin()->first;
}

long SkewElement::max_gamma_degree() const {
    if (terms.empty()) throw std::logic_error("gamma degree of zero");
    return terms.rbegin()->first;
}

long SkewElement::width() const { return max_gamma_degree() - min_gamma_degree(); }

SkewElement SkewElement::operator+(const SkewElement& o) const {
    if (c != o.c) throw ValidationError("skew elements over different scalars c");
    SkewElement r = *this;
    for (const auto& [d, f] : o.terms) {
        auto it = r.terms.find(d);
        if (it == r.terms.end()) {
            r.terms[d] = f;
        } else {
            it->second = it->second + f;
            if (it->second.is_zero()) r.terms.erase(it);
        }
    }
    return r;
}

SkewElement SkewElement::operator-() const {
    SkewElement r = *this;
    for (auto& [d, f] : r.terms) f = -f;
    return r;
}

SkewElement SkewElement::operator-(const SkewElement& o) const { return *this + (-o); }

LaurentPoly sigma_shift(const Rational& c, long j, const LaurentPoly& f) {
    return f.substitute_scale(rpow(c, Integer(j)));
}

SkewElement SkewElement::operator*(const SkewElement& o) const {
    if (c != o.c) throw ValidationError("skew elements over different scalars c");
    SkewElement r{c, {}};
    // (f gamma^i)(g gamma^j) = f sigma^i(g) gamma^{i+j}
    for (const auto& [i, f] : terms)
        for (const auto& [j, g] : o.terms) {
            LaurentPoly part = f * sigma_shift(c, i, g);
            auto it = r.terms.find(i + j);
            if (it == r.terms.end()) {
                if (!part.is_zero()) r.terms[i + j] = part;
            } else {
                it->second = it->second + part;
                if (it->second.is_zero()) r.terms.erase(it);
            }
        }
    return r;
}

std::string SkewElement::str() const {
    if (terms.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [d, f] : terms) {
        if (!first) out << " + ";
        out << "(" << f.str() << ")";
        if (d != 0) out << "*g^" << d;
        first = false;
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// twists

SL2Twist::SL2Twist(long p_, long q_, long r_, long s_) : p(p_), q(q_), r(r_), s(s_) {
    if (p * s - q * r != 1) throw ValidationError("SL2 twist needs determinant 1");
}

SL2Twist SL2Twist::compose(const SL2Twist& o) const {
    return SL2Twist(p * o.p + q * o.r, p * o.q + q * o.s, r * o.p + s * o.r,
                    r * o.q + s * o.s);
}

namespace {

// invertible monomials lambda t^a gamma^b and their powers
struct SkewMonomial {
    Rational coeff;
    long t_deg;
    long g_deg;
};

SkewMonomial monomial_of(const SkewElement& e) {
    if (e.terms.size() != 1) throw std::logic_error("not a skew monomial");
    const auto& [g, f] = *e.terms.begin();
    if (!f.is_unit()) throw std::logic_error("not a skew monomial");
    return SkewMonomial{f.coeffs.begin()->second, f.coeffs.begin()->first, g};
}

SkewElement monomial_to_element(const Rational& c, const SkewMonomial& m) {
    SkewElement e{c, {}};
    e.terms[m.g_deg] = LaurentPoly::monomial(m.t_deg, m.coeff);
    return e;
}

// (lambda t^a gamma^b)^k for k of either sign
SkewElement monomial_power(const Rational& c, const SkewMonomial& m, long k) {
    ScalarC sc(c);
    if (k == 0) return SkewElement::from_laurent(sc, LaurentPoly::one());
    SkewMonomial base = m;
    long reps = k;
    if (k < 0) {
        // inverse: (lambda t^a gamma^b)^-1 = lambda^-1 c^{ab} t^{-a} gamma^{-b}
        base.coeff = rpow(c, Integer(m.t_deg) * m.g_deg) / m.coeff;
        base.t_deg = -m.t_deg;
        base.g_deg = -m.g_deg;
        reps = -k;
    }
    SkewElement acc = monomial_to_element(c, base);
    SkewElement result = acc;
    for (long i = 1; i < reps; ++i) result = result * acc;
    return result;
}

}  // namespace

void SL2Twist::check_relation(const ScalarC& c) const {
    SkewElement ag = apply_twist(*this, SkewElement::gamma(c));
    SkewElement at = apply_twist(*this, SkewElement::t(c));
    SkewElement lhs = ag * at;
    SkewElement rhs = at * ag;
    for (auto& [d, f] : rhs.terms) f = f.scaled(c.value);
    if (!(lhs == rhs)) throw ValidationError("twist does not preserve gamma t = c t gamma");
}

SkewElement apply_twist(const SL2Twist& alpha, const SkewElement& a) {
    ScalarC sc(a.c);
    // alpha(gamma) = gamma^p t^r = c^{pr} t^r gamma^p, alpha(t) = c^{qs} t^s gamma^q
    SkewMonomial img_gamma{rpow(a.c, Integer(alpha.p) * alpha.r), alpha.r, alpha.p};
    SkewMonomial img_t{rpow(a.c, Integer(alpha.q) * alpha.s), alpha.s, alpha.q};
    SkewElement result = SkewElement::zero(sc);
    for (const auto& [g_deg, f] : a.terms) {
        SkewElement gamma_part = monomial_power(a.c, img_gamma, g_deg);
        for (const auto& [t_deg, coeff] : f.coeffs) {
            SkewElement t_part = monomial_power(a.c, img_t, t_deg);
            SkewElement term = t_part * gamma_part;
            for (auto& [d, poly] : term.terms) poly = poly.scaled(coeff);
            result = result + term;
        }
    }
    return result;
}

CyclicModule twist_module(const SL2Twist& alpha, const CyclicModule& m) {
    return CyclicModule(apply_twist(alpha, m.p));
}

// ---------------------------------------------------------------------------
// dimensions

Integer f_dimension(const CyclicModule& m) {
    return Integer(m.p.width());
}

Integer ore_reduction_dimension(const CyclicModule& m, long pad) {
    const SkewElement& p = m.p;
    const Rational& c = p.c;
    long w = p.width();
    if (w == 0) return 0;
    // normalize to minimal gamma degree zero: gamma^{-min} p generates the
    // same left ideal
    long shift = p.min_gamma_degree();
    std::map<long, RatFn> poly;  // gamma degree -> coefficient over F
    for (const auto& [d, f] : p.terms)
        poly[d - shift] = RatFn::of(sigma_shift(c, -shift, f));

    auto reduce = [&](std::map<long, RatFn>& x) {
        auto drop_zeros = [&]() {
            for (auto it = x.begin(); it != x.end();)
                it = it->second.is_zero() ? x.erase(it) : std::next(it);
        };
        drop_zeros();
        while (!x.empty() && (x.rbegin()->first >= w || x.begin()->first < 0)) {
            if (x.rbegin()->first >= w) {
                long j = x.rbegin()->first - w;
                RatFn factor = x.rbegin()->second / poly[w].substitute_scale(rpow(c, Integer(j)));
                for (const auto& [d, f] : poly) {
                    RatFn delta = factor * f.substitute_scale(rpow(c, Integer(j)));
                    auto it = x.find(d + j);
                    if (it == x.end())
                        x[d + j] = RatFn::zero() - delta;
                    else
                        it->second = it->second - delta;
                }
            } else {
                long j = x.begin()->first;
                RatFn factor = x.begin()->second / poly[0].substitute_scale(rpow(c, Integer(j)));
                for (const auto& [d, f] : poly) {
                    RatFn delta = factor * f.substitute_scale(rpow(c, Integer(j)));
                    auto it = x.find(d + j);
                    if (it == x.end())
                        x[d + j] = RatFn::zero() - delta;
                    else
                        it->second = it->second - delta;
                }
            }
            drop_zeros();
        }
    };

    // residues of gamma^k for k in [-pad, w + pad), computed incrementally
    std::vector<std::map<long, RatFn>> residues;
    std::map<long, RatFn> cur;
    cur[0] = RatFn::of(LaurentPoly::one());
    residues.push_back(cur);
    std::map<long, RatFn> up = cur;
    for (long k = 1; k < w + pad; ++k) {
        std::map<long, RatFn> next;
        for (const auto& [d, f] : up) next[d + 1] = f.substitute_scale(c);
        reduce(next);
        residues.push_back(next);
        up = std::move(next);
    }
    std::map<long, RatFn> down = cur;
    for (long k = 1; k <= pad; ++k) {
        std::map<long, RatFn> next;
        for (const auto& [d, f] : down) next[d - 1] = f.substitute_scale(Rational(1) / c);
        reduce(next);
        residues.push_back(next);
        down = std::move(next);
    }

    // rank over F by incremental elimination in the window coordinates
    std::vector<std::map<long, RatFn>> pivots;
    for (auto row : residues) {
        for (const auto& piv : pivots) {
            if (row.empty()) break;
            long lead = piv.begin()->first;
            auto it = row.find(lead);
            if (it == row.end()) continue;
            RatFn factor = it->second / piv.begin()->second;
            for (const auto& [d, f] : piv) {
                auto jt = row.find(d);
                RatFn delta = factor * f;
                if (jt == row.end())
                    row[d] = RatFn::zero() - delta;
                else
                    jt->second = jt->second - delta;
            }
            for (auto jt = row.begin(); jt != row.end();)
                jt = jt->second.is_zero() ? row.erase(jt) : std::next(jt);
        }
        if (!row.empty()) {
            pivots.push_back(std::move(row));
            std::sort(pivots.begin(), pivots.end(),
                      [](const auto& a, const auto& b) {
                          return a.begin()->first < b.begin()->first;
                      });
        }
    }
    return Integer(pivots.size());
}

bool divisibility_check(const std::optional<Integer>& dim, const Integer& prime) {
    if (prime < 2) throw ValidationError("divisibility_check needs a prime >= 2");
    if (!dim) return true;  // infinite dimension is always compatible
    return *dim % prime == 0;
}

namespace {

std::vector<long> primes_up_to(long bound) {
    std::vector<bool> sieve(static_cast<size_t>(bound) + 1, true);
    std::vector<long> out;
    for (long n = 2; n <= bound; ++n) {
        if (!sieve[static_cast<size_t>(n)]) continue;
        out.push_back(n);
        for (long k = 2 * n; k <= bound; k += n) sieve[static_cast<size_t>(k)] = false;
    }
    return out;
}

}  // namespace

NonIndReport nonind_verdict(const ScalarC& c, long prime_bound, bool with_oracle,
                            bool parallel) {
    if (prime_bound < 2) throw ValidationError("nonind_verdict: prime bound must be >= 2");
    SkewElement base = SkewElement::gamma(c) - SkewElement::t(c) +
                       SkewElement::from_laurent(c, LaurentPoly::one());
    CyclicModule m(base);
    auto primes = primes_up_to(prime_bound);

    auto run_prime = [&](long p) {
        std::vector<NonIndRow> rows;
        for (long i = 0; i < p; ++i) {
            SL2Twist alpha = SL2Twist::upper(i);
            alpha.check_relation(c);
            CyclicModule twisted = twist_module(alpha, m);
            Integer dim = f_dimension(twisted);
            if (with_oracle && ore_reduction_dimension(twisted) != dim)
                throw std::logic_error("nonind_verdict: width and reduction oracle disagree");
            rows.push_back(NonIndRow{Integer(p), i, dim,
                                     divisibility_check(dim, Integer(p))});
        }
        return rows;
    };

    NonIndReport report;
    report.oracle_checked = with_oracle;
    if (parallel && primes.size() > 1) {
        std::vector<std::future<std::vector<NonIndRow>>> futures;
        for (long p : primes)
            futures.push_back(std::async(std::launch::async, run_prime, p));
        for (auto& f : futures)
            for (auto& row : f.get()) report.rows.push_back(std::move(row));
    } else {
        for (long p : primes)
            for (auto& row : run_prime(p)) report.rows.push_back(std::move(row));
    }
    report.verdict_not_induced = true;
    for (const auto& row : report.rows)
        if (row.divisible) report.verdict_not_induced = false;
    return report;
}

// ---------------------------------------------------------------------------
// parsing: terms "coef*t^a*g^b" joined by + or -

SkewElement parse_skew(const ScalarC& c, const std::string& text) {
    SkewElement result = SkewElement::zero(c);
    size_t pos = 0;
    auto skip_ws = [&]() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    bool first = true;
    while (true) {
        skip_ws();
        if (pos >= text.size()) break;
        Rational sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            if (text[pos] == '-') sign = -1;
            ++pos;
        } else if (!first) {
            throw ValidationError("skew literal: expected + or - between terms");
        }
        first = false;
        skip_ws();
        Rational coeff = 1;
        long t_deg = 0, g_deg = 0;
        bool saw_factor = false;
        while (pos < text.size()) {
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip_ws();
            }
            if (pos >= text.size() || text[pos] == '+' || text[pos] == '-') break;
            if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
                size_t start = pos;
                while (pos < text.size() &&
                       (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
                    ++pos;
                coeff = coeff * parse_rational(text.substr(start, pos - start));
                saw_factor = true;
                continue;
            }
            char var = text[pos];
            if (var != 't' && var != 'g')
                throw ValidationError("skew literal: expected t or g, got '" +
                                      std::string(1, var) + "'");
            ++pos;
            long exp = 1;
            skip_ws();
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                skip_ws();
                size_t start = pos;
                if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                    ++pos;
                if (start == pos) throw ValidationError("skew literal: bad exponent");
                exp = std::stol(text.substr(start, pos - start));
            }
            if (var == 't')
                t_deg += exp;
            else
                g_deg += exp;
            saw_factor = true;
        }
        if (!saw_factor) throw ValidationError("skew literal: empty term");
        SkewElement term{c.value, {}};
        term.terms[g_deg] = LaurentPoly::monomial(t_deg, sign * coeff);
        result = result + term;
    }
    return result;
}

}  // namespace nilrep
