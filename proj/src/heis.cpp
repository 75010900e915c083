#include "nilrep/heis.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace nilrep {

HeisElement heis_multiply(const HeisElement& g, const HeisElement& h) {
    return {g.a + h.a, g.b + h.b, g.c + h.c - h.a * g.b};
}

HeisElement heis_inverse(const HeisElement& g) {
    return {-g.a, -g.b, -g.c - g.a * g.b};
}

HeisElement heis_power(const HeisElement& g, const Integer& n) {
    // (a,b,c)^n = (na, nb, nc - C(n,2) a b)
    return {n * g.a, n * g.b, n * g.c - n * (n - 1) / 2 * g.a * g.b};
}

HeisElement heis_conjugate(const HeisElement& g, const HeisElement& h) {
    return {h.a, h.b, h.c + g.a * h.b - g.b * h.a};
}

HeisElement heis_commutator(const HeisElement& g, const HeisElement& h) {
    return heis_multiply(heis_conjugate(g, h), heis_inverse(h));
}

// ---------------------------------------------------------------------------
// Lattice2

namespace {

void normalize_rank1(Vec2& v) {
    if (v.x < 0 || (v.x == 0 && v.y < 0)) {
        v.x = -v.x;
        v.y = -v.y;
    }
}

Integer iabs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// inverse of a modulo m > 1, gcd(a, m) = 1
Integer mod_inverse(const Integer& a, const Integer& m) {
    Integer a0 = fmod(a, m), b0 = m, x0 = 1, x1 = 0;
    while (b0 != 0) {
        Integer q = fdiv(a0, b0);
        Integer r = a0 - q * b0;
        a0 = b0;
        b0 = r;
        Integer tx = x0 - q * x1;
        x0 = x1;
        x1 = tx;
    }
    return fmod(x0, m);
}

// one solution t of c t = rhs (mod m), provided gcd(c, m) | rhs
std::optional<Integer> solve_lin_cong(const Integer& c, const Integer& rhs, const Integer& m) {
    if (m == 0) {
        if (c == 0) return rhs == 0 ? std::optional<Integer>(0) : std::nullopt;
        if (rhs % c != 0) return std::nullopt;
        return rhs / c;
    }
    Integer mm = iabs(m);
    Integer g = gcd(gcd(c, mm), rhs == 0 ? mm : rhs);
    Integer gc = gcd(c, mm);
    if (rhs % gc != 0) return std::nullopt;
    Integer cg = c / gc, mg = mm / gc, rg = fmod(rhs / gc, mg == 0 ? Integer(1) : mg);
    if (mg <= 1) return Integer(0);
    return fmod(rg * mod_inverse(cg, mg), mg);
}

}  // namespace

Lattice2 Lattice2::full() {
    Lattice2 l;
    l.basis = {Vec2{1, 0}, Vec2{0, 1}};
    return l;
}

Lattice2 Lattice2::from_generators(std::vector<Vec2> gens) {
    gens.erase(std::remove_if(gens.begin(), gens.end(),
                              [](const Vec2& v) { return v.is_zero(); }),
               gens.end());
    Lattice2 l;
    if (gens.empty()) return l;
    // gcd echelon on the first coordinate
    while (true) {
        Vec2* pivot = nullptr;
        for (auto& g : gens)
            if (g.x != 0 && (!pivot || iabs(g.x) < iabs(pivot->x))) pivot = &g;
        if (!pivot) break;
        bool done = true;
        for (auto& g : gens) {
            if (&g == pivot || g.x == 0) continue;
            Integer q = fdiv(g.x, pivot->x);
            g.x -= q * pivot->x;
            g.y -= q * pivot->y;
            if (g.x != 0) done = false;
        }
        if (done) break;
    }
    Vec2 head{0, 0};
    Integer tail_gcd = 0;
    for (auto& g : gens) {
        if (g.x != 0)
            head = g;
        else
            tail_gcd = gcd(tail_gcd, g.y);
    }
    if (head.x != 0) {
        if (head.x < 0) {
            head.x = -head.x;
            head.y = -head.y;
        }
        if (tail_gcd != 0) {
            Integer d = iabs(tail_gcd);
            head.y = fmod(head.y, d);
            l.basis = {head, Vec2{0, d}};
        } else {
            l.basis = {head};
        }
    } else if (tail_gcd != 0) {
        l.basis = {Vec2{0, iabs(tail_gcd)}};
    }
    return l;
}

bool Lattice2::contains(const Vec2& v) const { return coordinates(v).has_value(); }

std::optional<std::vector<Integer>> Lattice2::coordinates(const Vec2& v) const {
    if (v.is_zero()) return std::vector<Integer>(basis.size(), Integer(0));
    if (basis.empty()) return std::nullopt;
    if (basis.size() == 1) {
        const Vec2& b = basis[0];
        if (b.x != 0) {
            if (v.x % b.x != 0) return std::nullopt;
            Integer t = v.x / b.x;
            if (t * b.y != v.y) return std::nullopt;
            return std::vector<Integer>{t};
        }
        if (v.x != 0 || v.y % b.y != 0) return std::nullopt;
        return std::vector<Integer>{v.y / b.y};
    }
    const Vec2& b1 = basis[0];
    const Vec2& b2 = basis[1];
    if (v.x % b1.x != 0) return std::nullopt;
    Integer t1 = v.x / b1.x;
    Integer rest = v.y - t1 * b1.y;
    if (rest % b2.y != 0) return std::nullopt;
    return std::vector<Integer>{t1, rest / b2.y};
}

Lattice2 Lattice2::sum(const Lattice2& o) const {
    std::vector<Vec2> gens = basis;
    gens.insert(gens.end(), o.basis.begin(), o.basis.end());
    return from_generators(std::move(gens));
}

Lattice2 Lattice2::refine_congruence(const Integer& alpha, const Integer& beta,
                                     const Integer& modulus) const {
    if (basis.empty()) return *this;
    std::vector<Integer> c;
    for (const auto& b : basis) c.push_back(alpha * b.x + beta * b.y);
    std::vector<std::vector<Integer>> tsols;
    if (modulus == 0) {
        if (basis.size() == 1) {
            if (c[0] != 0) return Lattice2{};
            return *this;
        }
        if (c[0] == 0 && c[1] == 0) return *this;
        Integer g = gcd(c[0], c[1]);
        tsols.push_back({c[1] / g, -c[0] / g});
    } else {
        Integer m = iabs(modulus);
        if (basis.size() == 1) {
            Integer g = gcd(c[0], m);
            tsols.push_back({m / g});
        } else {
            Integer g0 = gcd(c[0], m);
            tsols.push_back({m / g0, 0});
            Integer n1 = g0 == 0 ? Integer(1) : g0 / gcd(g0, c[1]);
            auto t0 = solve_lin_cong(c[0], -c[1] * n1, m);
            if (!t0) throw std::logic_error("refine_congruence: inconsistent solve");
            tsols.push_back({*t0, n1});
        }
    }
    std::vector<Vec2> gens;
    for (const auto& t : tsols) {
        Vec2 v{0, 0};
        for (size_t i = 0; i < basis.size(); ++i) {
            v.x += t[i] * basis[i].x;
            v.y += t[i] * basis[i].y;
        }
        gens.push_back(v);
    }
    return from_generators(std::move(gens));
}

Lattice2 Lattice2::intersect(const Lattice2& o) const {
    if (basis.empty() || o.basis.empty()) return Lattice2{};
    if (o.rank() == 2) {
        const Vec2& c1 = o.basis[0];
        const Vec2& c2 = o.basis[1];
        // x in o  <=>  c1.x | x.x  and  c1.x x.y - c1.y x.x = 0 (mod d c1.x)
        Lattice2 step = refine_congruence(1, 0, c1.x);
        return step.refine_congruence(-c1.y, c1.x, c2.y * c1.x);
    }
    if (o.rank() == 1) {
        const Vec2& b = o.basis[0];
        Lattice2 line = refine_congruence(b.y, -b.x, 0);
        std::vector<Vec2> gens;
        for (const auto& v : line.basis) {
            Integer num, den;
            if (b.x != 0) {
                num = v.x;
                den = b.x;
            } else {
                num = v.y;
                den = b.y;
            }
            Integer g = gcd(num, den);
            Integer k = g == 0 ? Integer(1) : den / g;
            if (k < 0) k = -k;
            gens.push_back(Vec2{v.x * k, v.y * k});
        }
        return from_generators(std::move(gens));
    }
    return Lattice2{};
}

Lattice2 Lattice2::saturate() const {
    if (basis.empty()) return *this;
    if (basis.size() == 2) return full();
    Vec2 b = basis[0];
    Integer g = gcd(b.x, b.y);
    if (g < 0) g = -g;
    b.x /= g;
    b.y /= g;
    normalize_rank1(b);
    Lattice2 l;
    l.basis = {b};
    return l;
}

std::optional<Integer> Lattice2::index_of(const Lattice2& sub) const {
    if (sub.rank() != rank()) return std::nullopt;
    if (rank() == 0) return Integer(1);
    for (const auto& v : sub.basis)
        if (!contains(v)) throw ValidationError("index_of: not a sublattice");
    if (rank() == 1) {
        const Vec2& a = basis[0];
        const Vec2& b = sub.basis[0];
        Integer t = (a.x != 0) ? b.x / a.x : b.y / a.y;
        return iabs(t);
    }
    Integer det_a = basis[0].x * basis[1].y;
    Integer det_b = sub.basis[0].x * sub.basis[1].y;
    return iabs(det_b / det_a);
}

AffineLat2 AffineLat2::refine(const Integer& alpha, const Integer& beta,
                              const Integer& gamma, const Integer& modulus) const {
    if (empty) return *this;
    Integer c0 = alpha * offset.x + beta * offset.y + gamma;
    Lattice2 hom = span.refine_congruence(alpha, beta, modulus);
    std::vector<Integer> c;
    for (const auto& b : span.basis) c.push_back(alpha * b.x + beta * b.y);

    AffineLat2 result;
    result.span = hom;
    result.offset = offset;
    if (span.basis.empty()) {
        bool ok = modulus == 0 ? (c0 == 0) : (fmod(c0, iabs(modulus)) == 0);
        if (!ok) return AffineLat2{true};
        return result;
    }
    // particular solution of sum c_i t_i = -c0 (mod modulus)
    if (c.size() == 1) {
        auto t = solve_lin_cong(c[0], -c0, modulus);
        if (!t) return AffineLat2{true};
        result.offset.x += *t * span.basis[0].x;
        result.offset.y += *t * span.basis[0].y;
        return result;
    }
    // Bezout-combine the two coefficients
    Integer a0 = c[0], b0 = c[1], x0 = 1, x1 = 0, y0 = 0, y1 = 1;
    while (b0 != 0) {
        Integer q = fdiv(a0, b0);
        Integer r = a0 - q * b0;
        a0 = b0;
        b0 = r;
        Integer tx = x0 - q * x1;
        x0 = x1;
        x1 = tx;
        Integer ty = y0 - q * y1;
        y0 = y1;
        y1 = ty;
    }
    // a0 = x0 c[0] + y0 c[1]
    auto s = solve_lin_cong(a0, -c0, modulus);
    if (!s) return AffineLat2{true};
    Integer t0 = x0 * *s, t1 = y0 * *s;
    result.offset.x += t0 * span.basis[0].x + t1 * span.basis[1].x;
    result.offset.y += t0 * span.basis[0].y + t1 * span.basis[1].y;
    return result;
}

std::vector<Vec2> AffineLat2::representatives_mod(const Lattice2& sub, size_t cap) const {
    std::vector<Vec2> reps;
    if (empty) return reps;
    if (span.rank() == 0) {
        reps.push_back(offset);
        return reps;
    }
    Lattice2 inner = span.intersect(sub);
    auto idx = span.index_of(inner);
    if (!idx) throw ValidationError("representatives_mod: infinite quotient");
    size_t want = static_cast<size_t>(*idx);
    if (want > cap) throw ResourceBudgetError("representatives_mod: too many classes");
    std::vector<Vec2> classes;
    long reach = 1;
    while (classes.size() < want) {
        classes.clear();
        for (long t0 = -reach; t0 <= reach; ++t0) {
            for (long t1 = -(span.rank() == 2 ? reach : 0);
                 t1 <= (span.rank() == 2 ? reach : 0); ++t1) {
                Vec2 v{t0 * span.basis[0].x, t0 * span.basis[0].y};
                if (span.rank() == 2) {
                    v.x += t1 * span.basis[1].x;
                    v.y += t1 * span.basis[1].y;
                }
                bool fresh = true;
                for (const auto& cvec : classes) {
                    Vec2 diff{v.x - cvec.x, v.y - cvec.y};
                    if (inner.contains(diff)) {
                        fresh = false;
                        break;
                    }
                }
                if (fresh) classes.push_back(v);
            }
        }
        ++reach;
        if (static_cast<size_t>(reach) > cap) break;
    }
    for (const auto& cvec : classes) reps.push_back(Vec2{offset.x + cvec.x, offset.y + cvec.y});
    return reps;
}

// ---------------------------------------------------------------------------
// CanonicalSubgroup

std::vector<HeisElement> CanonicalSubgroup::generators() const {
    std::vector<HeisElement> g;
    if (u) g.push_back(*u);
    if (v) g.push_back(*v);
    if (w) g.push_back(*w);
    return g;
}

Lattice2 CanonicalSubgroup::image_lattice() const {
    std::vector<Vec2> gens;
    if (u) gens.push_back(Vec2{u->a, u->b});
    if (v) gens.push_back(Vec2{0, v->b});
    return Lattice2::from_generators(std::move(gens));
}

CanonicalSubgroup canonicalize_subgroup(std::vector<HeisElement> gens) {
    gens.erase(std::remove_if(gens.begin(), gens.end(),
                              [](const HeisElement& g) { return g.is_identity(); }),
               gens.end());
    // gcd-reduce x-exponents inside the group, tracking z-parts exactly
    while (true) {
        HeisElement* pivot = nullptr;
        for (auto& g : gens)
            if (g.a != 0 && (!pivot || iabs(g.a) < iabs(pivot->a))) pivot = &g;
        if (!pivot) break;
        bool done = true;
        for (auto& g : gens) {
            if (&g == pivot || g.a == 0) continue;
            Integer q = fdiv(g.a, pivot->a);
            g = heis_multiply(heis_power(*pivot, -q), g);
            if (g.a != 0) done = false;
        }
        if (done) break;
    }
    std::optional<HeisElement> u;
    std::vector<HeisElement> rest;
    for (auto& g : gens) {
        if (g.a != 0)
            u = g;
        else if (!g.is_identity())
            rest.push_back(g);
    }
    if (u && u->a < 0) u = heis_inverse(*u);

    while (true) {
        HeisElement* pivot = nullptr;
        for (auto& g : rest)
            if (g.b != 0 && (!pivot || iabs(g.b) < iabs(pivot->b))) pivot = &g;
        if (!pivot) break;
        bool done = true;
        for (auto& g : rest) {
            if (&g == pivot || g.b == 0) continue;
            Integer q = fdiv(g.b, pivot->b);
            g = heis_multiply(heis_power(*pivot, -q), g);
            if (g.b != 0) done = false;
        }
        if (done) break;
    }
    std::optional<HeisElement> v;
    Integer central = 0;
    for (auto& g : rest) {
        if (g.b != 0)
            v = g;
        else
            central = gcd(central, g.c);
    }
    if (v && v->b < 0) v = heis_inverse(*v);

    // commutator closure: [u, v] = z^{u.a v.b}
    if (u && v) central = gcd(central, u->a * v->b);
    std::optional<HeisElement> w;
    if (central != 0) w = HeisElement{0, 0, iabs(central)};

    // residue reduction
    if (u && v) {
        Integer q = fdiv(u->b, v->b);
        u = heis_multiply(*u, heis_power(*v, -q));
    }
    if (w) {
        if (u) u->c = fmod(u->c, w->c);
        if (v) v->c = fmod(v->c, w->c);
    }
    CanonicalSubgroup h;
    h.u = u;
    h.v = v;
    h.w = w;
    return h;
}

std::optional<std::array<Integer, 3>> sift(const CanonicalSubgroup& h, const HeisElement& g) {
    std::array<Integer, 3> coords{0, 0, 0};
    HeisElement rest = g;
    if (rest.a != 0) {
        if (!h.u || rest.a % h.u->a != 0) return std::nullopt;
        coords[0] = rest.a / h.u->a;
        rest = heis_multiply(heis_power(*h.u, -coords[0]), rest);
    }
    if (rest.b != 0) {
        if (!h.v || rest.b % h.v->b != 0) return std::nullopt;
        coords[1] = rest.b / h.v->b;
        rest = heis_multiply(heis_power(*h.v, -coords[1]), rest);
    }
    if (rest.c != 0) {
        if (!h.w || rest.c % h.w->c != 0) return std::nullopt;
        coords[2] = rest.c / h.w->c;
    }
    return coords;
}

bool membership(const CanonicalSubgroup& h, const HeisElement& g) {
    return sift(h, g).has_value();
}

std::optional<Integer> index_in_G(const CanonicalSubgroup& h) {
    if (!h.u || !h.v || !h.w) return std::nullopt;
    return h.u->a * h.v->b * h.w->c;
}

bool is_subgroup_of(const CanonicalSubgroup& inner, const CanonicalSubgroup& outer) {
    for (const auto& g : inner.generators())
        if (!membership(outer, g)) return false;
    return true;
}

std::optional<Integer> subgroup_index(const CanonicalSubgroup& a, const CanonicalSubgroup& b) {
    if (!is_subgroup_of(b, a)) throw ValidationError("subgroup_index: not a subgroup");
    Integer idx = 1;
    if (a.u) {
        if (!b.u) return std::nullopt;
        idx *= b.u->a / a.u->a;
    }
    if (a.v) {
        if (!b.v) return std::nullopt;
        idx *= b.v->b / a.v->b;
    }
    if (a.w) {
        if (!b.w) return std::nullopt;
        idx *= b.w->c / a.w->c;
    }
    return idx;
}

CanonicalSubgroup conjugate_subgroup_heis(const CanonicalSubgroup& h, const HeisElement& g) {
    std::vector<HeisElement> gens;
    for (const auto& x : h.generators()) gens.push_back(heis_conjugate(g, x));
    return canonicalize_subgroup(std::move(gens));
}

CanonicalSubgroup whole_heis() {
    return canonicalize_subgroup({heis_x(), heis_y(), heis_z()});
}

int torsion_free_rank(const CanonicalSubgroup& h) { return static_cast<int>(h.rank()); }

// ---------------------------------------------------------------------------
// isolator

CanonicalSubgroup isolator(const CanonicalSubgroup& h) {
    if (h.is_trivial()) return h;
    if (h.w) {
        // full preimage of the saturated image lattice; the z-direction
        // saturates since (z^k)^{w.c} always lands in <w>
        Lattice2 sat = h.image_lattice().saturate();
        std::vector<HeisElement> gens{heis_z()};
        for (const auto& b : sat.basis) gens.push_back(HeisElement{b.x, b.y, 0});
        return canonicalize_subgroup(std::move(gens));
    }
    // cyclic <u>: the root set is cyclic, generated by the maximally divided
    // root; integrality of the z-coordinate decides which division exists
    HeisElement u = h.u ? *h.u : *h.v;
    Integer d = gcd(u.a, u.b);
    d = iabs(d);
    Integer pa = u.a / d, pb = u.b / d;
    for (Integer s = 1; s <= d; ++s) {
        Integer g = gcd(s, d);
        Integer m = s / g, n = d / g;
        Integer alpha = s * pa, beta = s * pb;
        // g0^n = u^m forces n gamma = m c - C(m,2) a b + C(n,2) alpha beta
        Integer num = m * u.c - m * (m - 1) / 2 * u.a * u.b + n * (n - 1) / 2 * alpha * beta;
        if (num % n != 0) continue;
        return canonicalize_subgroup({HeisElement{alpha, beta, num / n}});
    }
    return h;  // unreachable: s = d always succeeds with m = n = 1
}

std::optional<Integer> root_witness(const CanonicalSubgroup& h, const HeisElement& g,
                                    const Integer& bound) {
    for (Integer n = 1; n <= bound; ++n)
        if (membership(h, heis_power(g, n))) return n;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// normalizer and S(H)

namespace {

CanonicalSubgroup fiber_over(const Lattice2& l) {
    std::vector<HeisElement> gens{heis_z()};
    for (const auto& b : l.basis) gens.push_back(HeisElement{b.x, b.y, 0});
    return canonicalize_subgroup(std::move(gens));
}

}  // namespace

CanonicalSubgroup normalizer_heis(const CanonicalSubgroup& h) {
    // g normalizes H iff g.a h.b - g.b h.a = 0 modulo the z-part of H for
    // every echelon generator h
    if (h.is_trivial()) return whole_heis();
    Integer modulus = h.w ? h.w->c : Integer(0);
    Lattice2 sol = Lattice2::full();
    if (h.u) sol = sol.refine_congruence(h.u->b, -h.u->a, modulus);
    if (h.v) sol = sol.refine_congruence(h.v->b, Integer(0), modulus);
    return fiber_over(sol);
}

CanonicalSubgroup s_set(const CanonicalSubgroup& h) { return normalizer_heis(isolator(h)); }

// ---------------------------------------------------------------------------
// intersection

namespace {

// z-coordinate of the canonical representative of h over an image point
Integer fiber_offset(const CanonicalSubgroup& h, const Vec2& p) {
    Integer alpha = 0;
    Integer rest_b = p.y;
    HeisElement e{0, 0, 0};
    if (p.x != 0) {
        alpha = p.x / h.u->a;
        e = heis_power(*h.u, alpha);
        rest_b = p.y - e.b;
    }
    if (rest_b != 0) {
        Integer beta = rest_b / h.v->b;
        e = heis_multiply(e, heis_power(*h.v, beta));
    }
    return e.c;
}

// solve c = r1 (mod m1), c = r2 (mod m2); m_i > 0
std::optional<Integer> crt(const Integer& r1, const Integer& m1, const Integer& r2,
                           const Integer& m2) {
    Integer g = gcd(m1, m2);
    if ((r2 - r1) % g != 0) return std::nullopt;
    Integer m1g = m1 / g, m2g = m2 / g, rg = (r2 - r1) / g;
    Integer t = m2g > 1 ? fmod(rg * mod_inverse(fmod(m1g, m2g), m2g), m2g) : Integer(0);
    return r1 + m1 * t;
}

bool is_cyclic_noncentral(const CanonicalSubgroup& h) { return !h.w && (h.u || h.v); }

HeisElement cyclic_generator(const CanonicalSubgroup& h) { return h.u ? *h.u : *h.v; }

// intersection of a w-bearing subgroup with a noncentral cyclic one
CanonicalSubgroup intersect_with_cyclic(const CanonicalSubgroup& h, const HeisElement& u2) {
    Lattice2 img = h.image_lattice();
    Vec2 dir{u2.a, u2.b};
    Lattice2 ray = Lattice2::from_generators({dir});
    Lattice2 meet = img.intersect(ray);
    if (meet.rank() == 0) return CanonicalSubgroup{};
    const Vec2& m0 = meet.basis[0];
    Integer k0 = (dir.x != 0) ? m0.x / dir.x : m0.y / dir.y;
    k0 = iabs(k0);
    if (k0 == 0) return CanonicalSubgroup{};
    // the z-congruence along multiples of k0 has period 2 w.c
    Integer period = 2 * h.w->c;
    for (Integer t = 1; t <= period; ++t) {
        HeisElement cand = heis_power(u2, t * k0);
        if (membership(h, cand)) return canonicalize_subgroup({cand});
    }
    return CanonicalSubgroup{};
}

// intersection of two noncentral cyclic subgroups
CanonicalSubgroup intersect_cyclic_cyclic(const HeisElement& u1, const HeisElement& u2) {
    Integer d1 = iabs(gcd(u1.a, u1.b)), d2 = iabs(gcd(u2.a, u2.b));
    Vec2 p1{u1.a / d1, u1.b / d1}, p2{u2.a / d2, u2.b / d2};
    Vec2 p1n = p1, p2n = p2;
    normalize_rank1(p1n);
    normalize_rank1(p2n);
    if (!(p1n == p2n)) return CanonicalSubgroup{};
    bool flip = !(p1 == p2);
    Integer g = gcd(d1, d2);
    Integer m0 = d2 / g, k0 = d1 / g;
    auto diff_at = [&](const Integer& t) {
        HeisElement lhs = heis_power(u1, t * m0);
        HeisElement rhs = heis_power(u2, (flip ? Integer(-t) : t) * k0);
        return lhs.c - rhs.c;
    };
    // the difference is a quadratic in t; a nonzero quadratic cannot vanish
    // on a nontrivial subgroup of Z
    if (diff_at(1) == 0 && diff_at(2) == 0 && diff_at(3) == 0)
        return canonicalize_subgroup({heis_power(u1, m0)});
    return CanonicalSubgroup{};
}

}  // namespace

CanonicalSubgroup intersect_heis(const CanonicalSubgroup& h1, const CanonicalSubgroup& h2) {
    if (h1.is_trivial() || h2.is_trivial()) return CanonicalSubgroup{};
    bool c1 = !h1.u && !h1.v, c2 = !h2.u && !h2.v;
    if (c1 || c2) {
        const CanonicalSubgroup& central = c1 ? h1 : h2;
        const CanonicalSubgroup& other = c1 ? h2 : h1;
        if (!other.w) return CanonicalSubgroup{};
        Integer l = lcm(central.w->c, other.w->c);
        return canonicalize_subgroup({HeisElement{0, 0, l}});
    }
    if (is_cyclic_noncentral(h1) && is_cyclic_noncentral(h2))
        return intersect_cyclic_cyclic(cyclic_generator(h1), cyclic_generator(h2));
    if (is_cyclic_noncentral(h2)) return intersect_with_cyclic(h1, cyclic_generator(h2));
    if (is_cyclic_noncentral(h1)) return intersect_with_cyclic(h2, cyclic_generator(h1));

    // both carry a central part: solve the compatibility congruence on the
    // intersected image lattices
    Lattice2 lam = h1.image_lattice().intersect(h2.image_lattice());
    Integer g = gcd(h1.w->c, h2.w->c);
    Integer zl = lcm(h1.w->c, h2.w->c);
    if (lam.rank() == 0) return canonicalize_subgroup({HeisElement{0, 0, zl}});

    // valid image points form a subgroup; the congruence has period 2g
    Integer period = 2 * g;
    long pr = static_cast<long>(period);
    std::vector<Vec2> valid;
    for (long t1 = 0; t1 < pr; ++t1) {
        for (long t2 = 0; t2 < (lam.rank() == 2 ? pr : 1); ++t2) {
            Vec2 p{t1 * lam.basis[0].x, t1 * lam.basis[0].y};
            if (lam.rank() == 2) {
                p.x += t2 * lam.basis[1].x;
                p.y += t2 * lam.basis[1].y;
            }
            if ((fiber_offset(h1, p) - fiber_offset(h2, p)) % g == 0) valid.push_back(p);
        }
    }
    std::vector<Vec2> span_gens = valid;
    span_gens.push_back(Vec2{period * lam.basis[0].x, period * lam.basis[0].y});
    if (lam.rank() == 2)
        span_gens.push_back(Vec2{period * lam.basis[1].x, period * lam.basis[1].y});
    Lattice2 vlat = Lattice2::from_generators(std::move(span_gens));

    std::vector<HeisElement> gens{HeisElement{0, 0, zl}};
    for (const auto& b : vlat.basis) {
        auto c = crt(fiber_offset(h1, b), h1.w->c, fiber_offset(h2, b), h2.w->c);
        if (!c) throw std::logic_error("intersect_heis: CRT failed on a valid point");
        gens.push_back(HeisElement{b.x, b.y, *c});
    }
    return canonicalize_subgroup(std::move(gens));
}

CanonicalSubgroup core_intersection(const CanonicalSubgroup& h) {
    if (!h.w) return h;  // cyclic subgroups are normal in their S-set
    CanonicalSubgroup s = s_set(h);
    Lattice2 slat = s.image_lattice();
    CanonicalSubgroup acc = h;
    long m = static_cast<long>(h.w->c);
    if (slat.rank() == 0) return acc;
    for (long t1 = 0; t1 < m; ++t1)
        for (long t2 = 0; t2 < (slat.rank() == 2 ? m : 1); ++t2) {
            Vec2 p{t1 * slat.basis[0].x, t1 * slat.basis[0].y};
            if (slat.rank() == 2) {
                p.x += t2 * slat.basis[1].x;
                p.y += t2 * slat.basis[1].y;
            }
            acc = intersect_heis(acc, conjugate_subgroup_heis(h, HeisElement{p.x, p.y, 0}));
        }
    return acc;
}

// ---------------------------------------------------------------------------
// formatting and parsing

std::string heis_str(const HeisElement& g) {
    std::ostringstream out;
    out << "x^" << g.a.str() << "*y^" << g.b.str() << "*z^" << g.c.str();
    return out.str();
}

std::string subgroup_str(const CanonicalSubgroup& h) {
    if (h.is_trivial()) return "<1>";
    std::string s = "<";
    bool first = true;
    for (const auto& g : h.generators()) {
        if (!first) s += ", ";
        s += heis_str(g);
        first = false;
    }
    return s + ">";
}

std::vector<HeisElement> parse_heis_generators(const std::string& text) {
    std::vector<HeisElement> gens;
    std::string chunk;
    std::istringstream stream(text);
    while (std::getline(stream, chunk, ',')) {
        HeisElement e{0, 0, 0};
        size_t pos = 0;
        auto skip_ws = [&]() {
            while (pos < chunk.size() && std::isspace(static_cast<unsigned char>(chunk[pos])))
                ++pos;
        };
        skip_ws();
        if (pos == chunk.size()) continue;
        bool any = false;
        while (pos < chunk.size()) {
            skip_ws();
            if (pos < chunk.size() && chunk[pos] == '*') {
                ++pos;
                skip_ws();
            }
            if (pos >= chunk.size()) break;
            char gen = chunk[pos];
            if (gen != 'x' && gen != 'y' && gen != 'z')
                throw ValidationError("subgroup literal: expected x, y or z in '" + chunk + "'");
            ++pos;
            Integer exp = 1;
            skip_ws();
            if (pos < chunk.size() && chunk[pos] == '^') {
                ++pos;
                skip_ws();
                size_t start = pos;
                if (pos < chunk.size() && (chunk[pos] == '-' || chunk[pos] == '+')) ++pos;
                while (pos < chunk.size() && std::isdigit(static_cast<unsigned char>(chunk[pos])))
                    ++pos;
                if (start == pos) throw ValidationError("subgroup literal: bad exponent");
                exp = Integer(chunk.substr(start, pos - start));
            }
            e = heis_multiply(e, HeisElement{gen == 'x' ? exp : Integer(0),
                                             gen == 'y' ? exp : Integer(0),
                                             gen == 'z' ? exp : Integer(0)});
            any = true;
        }
        if (any) gens.push_back(e);
    }
    return gens;
}

}  // namespace nilrep
