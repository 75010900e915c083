#include "nilrep/weight.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace nilrep {

namespace {

Integer iabs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// part of n supported on the primes of m
Integer smooth_part(Integer n, const Integer& m) {
    Integer result = 1;
    while (true) {
        Integer d = gcd(n, m);
        if (d <= 1) break;
        // strip every factor of d out of n
        while (n % d == 0) {
            n /= d;
            result *= d;
        }
        // remaining n may still share smaller prime factors with d
        Integer e = gcd(n, d);
        if (e <= 1) break;
    }
    return result;
}

}  // namespace

bool VgValue::is_zero() const {
    if (tors != 0) return false;
    for (const auto& f : free)
        if (f != 0) return false;
    return true;
}

VgValue vg_zero(const ValueGroup& vg) {
    return VgValue{std::vector<Integer>(static_cast<size_t>(vg.rank), Integer(0)), 0};
}

VgValue vg_add(const ValueGroup& vg, const VgValue& a, const VgValue& b) {
    VgValue r = a;
    for (size_t i = 0; i < r.free.size(); ++i) r.free[i] += b.free[i];
    r.tors = fmod(r.tors + b.tors, vg.torsion);
    return r;
}

VgValue vg_scale(const ValueGroup& vg, const Integer& k, const VgValue& a) {
    VgValue r = a;
    for (auto& f : r.free) f *= k;
    r.tors = fmod(r.tors * k, vg.torsion);
    return r;
}

VgValue vg_neg(const ValueGroup& vg, const VgValue& a) { return vg_scale(vg, -1, a); }

std::optional<Integer> vg_order(const ValueGroup& vg, const VgValue& a) {
    for (const auto& f : a.free)
        if (f != 0) return std::nullopt;
    Integer t = fmod(a.tors, vg.torsion);
    if (t == 0) return Integer(1);
    return vg.torsion / gcd(vg.torsion, t);
}

VgValue VgMap::apply(const VgValue& v) const {
    VgValue r = vg_zero(to);
    for (size_t i = 0; i < v.free.size(); ++i)
        for (size_t j = 0; j < r.free.size(); ++j) r.free[j] += free_cols[i][j] * v.free[i];
    r.tors = fmod(v.tors * tors_mult, to.torsion);
    return r;
}

VgMap vg_identity(const ValueGroup& vg) {
    VgMap m;
    m.from = m.to = vg;
    m.free_cols.assign(static_cast<size_t>(vg.rank),
                       std::vector<Integer>(static_cast<size_t>(vg.rank), Integer(0)));
    for (size_t i = 0; i < static_cast<size_t>(vg.rank); ++i) m.free_cols[i][i] = 1;
    m.tors_mult = 1;
    return m;
}

VgMap vg_compose(const VgMap& later, const VgMap& earlier) {
    VgMap m;
    m.from = earlier.from;
    m.to = later.to;
    m.tors_mult = fmod(earlier.tors_mult * later.tors_mult, later.to.torsion);
    m.free_cols.assign(earlier.free_cols.size(),
                       std::vector<Integer>(static_cast<size_t>(later.to.rank), Integer(0)));
    for (size_t i = 0; i < earlier.free_cols.size(); ++i) {
        // image of old generator i: first through earlier, then later
        for (size_t mid = 0; mid < earlier.free_cols[i].size(); ++mid) {
            const Integer& c = earlier.free_cols[i][mid];
            if (c == 0) continue;
            for (size_t j = 0; j < m.free_cols[i].size(); ++j)
                m.free_cols[i][j] += c * later.free_cols[mid][j];
        }
    }
    return m;
}

namespace {

// Hermite-style echelon basis of the span of integer vectors (row pivots in
// ascending position order); vectors of length dim
std::vector<std::vector<Integer>> hnf_basis(std::vector<std::vector<Integer>> vecs,
                                            size_t dim) {
    std::vector<std::vector<Integer>> basis;
    for (size_t pos = 0; pos < dim; ++pos) {
        while (true) {
            std::vector<Integer>* pivot = nullptr;
            for (auto& v : vecs) {
                bool leading = v[pos] != 0;
                for (size_t k = 0; k < pos && leading; ++k)
                    if (v[k] != 0) leading = false;
                if (leading && (!pivot || iabs(v[pos]) < iabs((*pivot)[pos]))) pivot = &v;
            }
            if (!pivot) break;
            bool done = true;
            for (auto& v : vecs) {
                if (&v == *&pivot || v[pos] == 0) continue;
                bool leading = true;
                for (size_t k = 0; k < pos && leading; ++k)
                    if (v[k] != 0) leading = false;
                if (!leading) continue;
                Integer q = fdiv(v[pos], (*pivot)[pos]);
                for (size_t k = 0; k < dim; ++k) v[k] -= q * (*pivot)[k];
                if (v[pos] != 0) done = false;
            }
            if (done) {
                std::vector<Integer> row = *pivot;
                if (row[pos] < 0)
                    for (auto& x : row) x = -x;
                basis.push_back(row);
                // zero the pivot entry so it is not selected again
                for (auto& v : vecs) {
                    bool leading = v[pos] != 0;
                    for (size_t k = 0; k < pos && leading; ++k)
                        if (v[k] != 0) leading = false;
                    if (leading) {
                        Integer q = fdiv(v[pos], basis.back()[pos]);
                        for (size_t k = 0; k < dim; ++k) v[k] -= q * basis.back()[k];
                    }
                }
                break;
            }
        }
    }
    return basis;
}

// coordinates of target in an echelon basis; the basis must span it
std::vector<Integer> solve_in_basis(const std::vector<std::vector<Integer>>& basis,
                                    std::vector<Integer> target) {
    std::vector<Integer> coords(basis.size(), 0);
    for (size_t i = 0; i < basis.size(); ++i) {
        size_t pos = 0;
        while (pos < basis[i].size() && basis[i][pos] == 0) ++pos;
        if (pos == basis[i].size()) throw std::logic_error("solve_in_basis: zero basis row");
        if (target[pos] % basis[i][pos] != 0)
            throw std::logic_error("solve_in_basis: target outside lattice");
        coords[i] = target[pos] / basis[i][pos];
        for (size_t k = 0; k < target.size(); ++k) target[k] -= coords[i] * basis[i][k];
    }
    for (const auto& t : target)
        if (t != 0) throw std::logic_error("solve_in_basis: residue");
    return coords;
}

}  // namespace

VgDivision vg_divide(const ValueGroup& vg, const VgValue& value, const Integer& n) {
    if (n < 1) throw ValidationError("vg_divide: n must be positive");
    VgDivision d;
    size_t r = static_cast<size_t>(vg.rank);
    bool divisible = true;
    for (const auto& f : value.free)
        if (f % n != 0) divisible = false;

    d.to.torsion = vg.torsion * n;
    d.embed.from = vg;
    d.embed.tors_mult = n;
    d.root.tors = value.tors;  // n * tors = n * value.tors in Z/(n m)

    if (divisible) {
        d.to.rank = vg.rank;
        d.embed.to = d.to;
        d.embed.free_cols.assign(r, std::vector<Integer>(r, Integer(0)));
        for (size_t i = 0; i < r; ++i) d.embed.free_cols[i][i] = 1;
        d.root.free.assign(r, Integer(0));
        for (size_t i = 0; i < r; ++i) d.root.free[i] = value.free[i] / n;
        return d;
    }
    // refine the free lattice: new lattice (1/n)(n Z^r + Z value)
    std::vector<std::vector<Integer>> gens;
    for (size_t i = 0; i < r; ++i) {
        std::vector<Integer> e(r, Integer(0));
        e[i] = n;
        gens.push_back(std::move(e));
    }
    gens.push_back(value.free);
    auto basis = hnf_basis(std::move(gens), r);
    if (basis.size() != r) throw std::logic_error("vg_divide: refined lattice lost rank");
    d.to.rank = vg.rank;
    d.embed.to = d.to;
    d.embed.free_cols.assign(r, std::vector<Integer>(r, Integer(0)));
    for (size_t i = 0; i < r; ++i) {
        std::vector<Integer> target(r, Integer(0));
        target[i] = n;  // n * e_i in the scaled picture
        d.embed.free_cols[i] = solve_in_basis(basis, std::move(target));
    }
    d.root.free = solve_in_basis(basis, value.free);
    return d;
}

std::vector<VgValue> vg_root_choices(const VgDivision& div, const Integer& n) {
    std::vector<VgValue> out;
    Integer old_m = div.to.torsion / n;
    for (Integer j = 0; j < n; ++j) {
        VgValue v = div.root;
        v.tors = fmod(div.root.tors + old_m * j, div.to.torsion);
        out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end(),
              [](const VgValue& a, const VgValue& b) { return a.tors < b.tors; });
    return out;
}

// ---------------------------------------------------------------------------
// WeightPair

void WeightPair::validate() const {
    auto check_value = [&](const std::optional<VgValue>& v, bool present, const char* name) {
        if (present != v.has_value())
            throw ValidationError(std::string("weight pair: chi value for ") + name +
                                  (present ? " missing" : " given without a generator"));
        if (v) {
            if (v->free.size() != static_cast<size_t>(vg.rank))
                throw ValidationError("weight pair: wrong free rank in value");
            if (v->tors < 0 || v->tors >= vg.torsion)
                throw ValidationError("weight pair: torsion exponent out of range");
        }
    };
    check_value(chi_u, sub.u.has_value(), "u");
    check_value(chi_v, sub.v.has_value(), "v");
    check_value(chi_w, sub.w.has_value(), "w");
    if (vg.torsion < 1) throw ValidationError("weight pair: torsion order must be >= 1");
    // chi kills the relation [u, v] = w^{u.a v.b / w.c}
    if (sub.u && sub.v) {
        Integer q = (sub.u->a * sub.v->b) / sub.w->c;
        if (!vg_scale(vg, q, *chi_w).is_zero())
            throw ValidationError(
                "weight pair: character does not kill the commutator relation");
    }
}

VgValue WeightPair::evaluate(const HeisElement& g) const {
    auto coords = sift(sub, g);
    if (!coords) throw ValidationError("weight pair: element outside the subgroup");
    VgValue acc = vg_zero(vg);
    if (chi_u) acc = vg_add(vg, acc, vg_scale(vg, (*coords)[0], *chi_u));
    if (chi_v) acc = vg_add(vg, acc, vg_scale(vg, (*coords)[1], *chi_v));
    if (chi_w) acc = vg_add(vg, acc, vg_scale(vg, (*coords)[2], *chi_w));
    return acc;
}

WeightPair conjugate_weight_pair(const WeightPair& p, const HeisElement& g) {
    WeightPair r;
    r.vg = p.vg;
    r.sub = conjugate_subgroup_heis(p.sub, g);
    HeisElement ginv = heis_inverse(g);
    auto pull = [&](const std::optional<HeisElement>& gen) -> std::optional<VgValue> {
        if (!gen) return std::nullopt;
        return p.evaluate(heis_conjugate(ginv, *gen));
    };
    r.chi_u = pull(r.sub.u);
    r.chi_v = pull(r.sub.v);
    r.chi_w = pull(r.sub.w);
    r.validate();
    return r;
}

// ---------------------------------------------------------------------------
// S(H, chi)

namespace {

CanonicalSubgroup fiber_over_lattice(const Lattice2& l) {
    std::vector<HeisElement> gens{heis_z()};
    for (const auto& b : l.basis) gens.push_back(HeisElement{b.x, b.y, 0});
    return canonicalize_subgroup(std::move(gens));
}

CongruenceSystem build_system(const WeightPair& p) {
    CongruenceSystem sys;
    const CanonicalSubgroup& h = p.sub;
    if ((!h.u && !h.v) || !h.w) {
        // no constraint beyond S(H): vacuous system
        sys.finite = true;
        sys.omega = 1;
        return sys;
    }
    auto order = vg_order(p.vg, *p.chi_w);
    if (!order) {
        sys.finite = false;
        sys.omega = 0;
    } else {
        sys.finite = true;
        sys.omega = *order * smooth_part(h.w->c, *order);
    }
    if (h.u) sys.rows.emplace_back(h.u->b, -h.u->a);
    if (h.v) sys.rows.emplace_back(h.v->b, Integer(0));
    return sys;
}

}  // namespace

CanonicalSubgroup s_set_char(const WeightPair& p) {
    p.validate();
    CanonicalSubgroup s = s_set(p.sub);
    CongruenceSystem sys = build_system(p);
    Lattice2 lam = s.image_lattice();
    for (const auto& [alpha, beta] : sys.rows)
        lam = lam.refine_congruence(alpha, beta, sys.finite ? sys.omega : Integer(0));
    CanonicalSubgroup result = fiber_over_lattice(lam);
    if (!is_subgroup_of(p.sub, result))
        throw std::logic_error("s_set_char: result does not contain H");
    return result;
}

// ---------------------------------------------------------------------------
// completion

namespace {

struct ExtensionState {
    WeightPair pair;
    VgMap embed;  // from the original value group
    std::vector<std::string> log;
};

// chi value of e inside <H, g> given chi on H and the value x at g;
// n_root = smallest n >= 1 with g^n in H, or 0 when no power lies in H
VgValue eval_extended(const WeightPair& p, const HeisElement& g, const VgValue& x,
                      const Integer& n_root, const HeisElement& e) {
    const ValueGroup& vg = p.vg;
    Lattice2 l = p.sub.image_lattice();
    Vec2 ebar{e.a, e.b}, gbar{g.a, g.b};
    Integer t = 0;
    bool found = false;
    if (n_root > 0) {
        for (Integer cand = 0; cand < n_root && !found; ++cand) {
            Vec2 shifted{ebar.x - cand * gbar.x, ebar.y - cand * gbar.y};
            if (l.contains(shifted) ||
                (shifted.is_zero() && l.rank() == 0)) {
                // z-direction handled by the subgroup (w.c = 1 at this stage)
                t = cand;
                found = true;
            }
        }
    } else {
        if (l.rank() == 0) {
            // e is a power of g times a central part
            if (gbar.x != 0)
                t = ebar.x / gbar.x;
            else if (gbar.y != 0)
                t = ebar.y / gbar.y;
            found = true;
        } else if (l.rank() == 1) {
            const Vec2& lb = l.basis[0];
            Integer den = gbar.x * lb.y - gbar.y * lb.x;
            Integer num = ebar.x * lb.y - ebar.y * lb.x;
            if (den == 0) throw std::logic_error("eval_extended: degenerate free direction");
            if (num % den != 0) throw std::logic_error("eval_extended: non-integral coefficient");
            t = num / den;
            found = true;
        } else {
            throw std::logic_error("eval_extended: free extension over a full lattice");
        }
    }
    if (!found) throw std::logic_error("eval_extended: element not in the extension");
    HeisElement rest = heis_multiply(e, heis_power(heis_inverse(g), t));
    return vg_add(vg, p.evaluate(rest), vg_scale(vg, t, x));
}

// extension by the central generator z
void extend_by_z(ExtensionState& st) {
    WeightPair& p = st.pair;
    CanonicalSubgroup h = p.sub;
    WeightPair next;
    if (h.w) {
        Integer n = h.w->c;
        VgDivision div = vg_divide(p.vg, *p.chi_w, n);
        next.vg = div.to;
        VgValue x = div.root;
        auto lift = [&](const std::optional<VgValue>& v) -> std::optional<VgValue> {
            if (!v) return std::nullopt;
            return div.embed.apply(*v);
        };
        std::optional<VgValue> cu = lift(p.chi_u), cv = lift(p.chi_v);
        std::vector<HeisElement> gens = h.generators();
        gens.push_back(heis_z());
        next.sub = canonicalize_subgroup(std::move(gens));
        // new echelon: u' = u z^{-u.c}, v' = v z^{-v.c}, w' = z
        if (next.sub.u)
            next.chi_u = vg_add(next.vg, *cu, vg_scale(next.vg, -h.u->c, x));
        if (next.sub.v)
            next.chi_v = vg_add(next.vg, *cv, vg_scale(next.vg, -h.v->c, x));
        next.chi_w = x;
        st.embed = vg_compose(div.embed, st.embed);
        st.log.push_back("extend by z (root of w, n = " + n.str() + ")");
    } else {
        // no power of z lies in H: append a fresh free generator
        next.vg = ValueGroup{p.vg.rank + 1, p.vg.torsion};
        VgMap pad;
        pad.from = p.vg;
        pad.to = next.vg;
        pad.tors_mult = 1;
        pad.free_cols.assign(static_cast<size_t>(p.vg.rank),
                             std::vector<Integer>(static_cast<size_t>(next.vg.rank), Integer(0)));
        for (size_t i = 0; i < static_cast<size_t>(p.vg.rank); ++i) pad.free_cols[i][i] = 1;
        VgValue x = vg_zero(next.vg);
        x.free.back() = 1;
        auto lift = [&](const std::optional<VgValue>& v) -> std::optional<VgValue> {
            if (!v) return std::nullopt;
            return pad.apply(*v);
        };
        std::optional<VgValue> cu = lift(p.chi_u), cv = lift(p.chi_v);
        std::vector<HeisElement> gens = h.generators();
        gens.push_back(heis_z());
        next.sub = canonicalize_subgroup(std::move(gens));
        if (next.sub.u)
            next.chi_u = vg_add(next.vg, *cu, vg_scale(next.vg, -h.u->c, x));
        if (next.sub.v)
            next.chi_v = vg_add(next.vg, *cv, vg_scale(next.vg, -h.v->c, x));
        next.chi_w = x;
        st.embed = vg_compose(pad, st.embed);
        st.log.push_back("extend by z (free)");
    }
    next.validate();
    p = std::move(next);
}

// extension by a non-central element g of S(H, chi) (w.c = 1 already)
void extend_by_element(ExtensionState& st, const HeisElement& g) {
    WeightPair& p = st.pair;
    Lattice2 l = p.sub.image_lattice();
    Vec2 gbar{g.a, g.b};
    Lattice2 meet = l.intersect(Lattice2::from_generators({gbar}));
    Integer n = 0;
    if (meet.rank() == 1) {
        const Vec2& m0 = meet.basis[0];
        n = (gbar.x != 0) ? m0.x / gbar.x : m0.y / gbar.y;
        n = iabs(n);
    }

    WeightPair base = p;  // values in the pre-extension group
    VgValue x;
    WeightPair next;
    if (n > 0) {
        // root case: g^n lies in H since the center is saturated
        HeisElement gn = heis_power(g, n);
        if (!membership(p.sub, gn)) throw std::logic_error("extend: g^n escaped H");
        VgValue target = p.evaluate(gn);
        VgDivision div = vg_divide(p.vg, target, n);
        next.vg = div.to;
        x = div.root;
        base.vg = div.to;
        auto lift = [&](std::optional<VgValue>& v) {
            if (v) v = div.embed.apply(*v);
        };
        lift(base.chi_u);
        lift(base.chi_v);
        lift(base.chi_w);
        st.embed = vg_compose(div.embed, st.embed);
        st.log.push_back("extend by " + heis_str(g) + " (root, n = " + n.str() + ")");
    } else {
        next.vg = ValueGroup{p.vg.rank + 1, p.vg.torsion};
        VgMap pad;
        pad.from = p.vg;
        pad.to = next.vg;
        pad.tors_mult = 1;
        pad.free_cols.assign(static_cast<size_t>(p.vg.rank),
                             std::vector<Integer>(static_cast<size_t>(next.vg.rank), Integer(0)));
        for (size_t i = 0; i < static_cast<size_t>(p.vg.rank); ++i) pad.free_cols[i][i] = 1;
        x = vg_zero(next.vg);
        x.free.back() = 1;
        base.vg = next.vg;
        auto lift = [&](std::optional<VgValue>& v) {
            if (v) v = pad.apply(*v);
        };
        lift(base.chi_u);
        lift(base.chi_v);
        lift(base.chi_w);
        st.embed = vg_compose(pad, st.embed);
        st.log.push_back("extend by " + heis_str(g) + " (free)");
    }
    std::vector<HeisElement> gens = base.sub.generators();
    gens.push_back(g);
    next.sub = canonicalize_subgroup(std::move(gens));
    if (next.sub.u) next.chi_u = eval_extended(base, g, x, n, *next.sub.u);
    if (next.sub.v) next.chi_v = eval_extended(base, g, x, n, *next.sub.v);
    if (next.sub.w) next.chi_w = eval_extended(base, g, x, n, *next.sub.w);
    next.validate();
    p = std::move(next);
}

}  // namespace

bool validate_certificate(const MonomialCertificate& cert) {
    if (s_set_char(cert.pair) != cert.pair.sub) return false;
    if (cert.chain.empty()) return false;
    if (!(cert.chain.front() == whole_heis())) return false;
    if (!(cert.chain.back() == cert.pair.sub)) return false;
    for (size_t i = 0; i + 1 < cert.chain.size(); ++i) {
        if (!is_subgroup_of(cert.chain[i + 1], cert.chain[i])) return false;
        // stepwise normality: the normalizer of the inner term contains the
        // outer term
        if (!is_subgroup_of(cert.chain[i], normalizer_heis(cert.chain[i + 1]))) return false;
    }
    return true;
}

CompletionResult complete_weight_pair(const WeightPair& input) {
    input.validate();
    ExtensionState st{input, vg_identity(input.vg), {}};
    for (int iter = 0; iter < 200; ++iter) {
        CanonicalSubgroup s = s_set_char(st.pair);
        if (s == st.pair.sub) {
            MonomialCertificate cert;
            cert.pair = st.pair;
            cert.system = build_system(st.pair);
            std::vector<HeisElement> g1_gens = st.pair.sub.generators();
            g1_gens.push_back(heis_z());
            CanonicalSubgroup g1 = canonicalize_subgroup(std::move(g1_gens));
            cert.chain = {whole_heis()};
            if (!(g1 == whole_heis()) && !(g1 == st.pair.sub)) cert.chain.push_back(g1);
            if (!(st.pair.sub == whole_heis())) cert.chain.push_back(st.pair.sub);
            if (!validate_certificate(cert))
                throw std::logic_error("completion produced an invalid certificate");
            return CompletionResult{st.pair, st.embed, std::move(cert), std::move(st.log)};
        }
        if (!st.pair.sub.w || st.pair.sub.w->c > 1) {
            extend_by_z(st);
            continue;
        }
        // center saturated: pick the first S-echelon generator outside H
        HeisElement g{0, 0, 0};
        if (s.u && !membership(st.pair.sub, *s.u))
            g = *s.u;
        else if (s.v && !membership(st.pair.sub, *s.v))
            g = *s.v;
        else
            throw std::logic_error("completion: no extension generator found");
        extend_by_element(st, g);
    }
    throw std::logic_error("completion did not terminate");
}

// ---------------------------------------------------------------------------
// isomorphism test

HeisIsoResult induced_iso_test_heis(const WeightPair& p1, const WeightPair& p2) {
    if (s_set_char(p1) != p1.sub || s_set_char(p2) != p2.sub)
        throw ValidationError(
            "induced_iso_test_heis: both pairs must carry S(H, chi) = H certificates");
    if (!(p1.vg == p2.vg))
        throw ValidationError(
            "induced_iso_test_heis: characters must take values in a common value group "
            "(embed first)");
    HeisIsoResult res;
    CanonicalSubgroup star1 = isolator(p1.sub), star2 = isolator(p2.sub);
    if (torsion_free_rank(star1) != torsion_free_rank(star2)) return res;
    // certified subgroups contain the commutator subgroup, so they are normal
    // and their isolators are conjugation invariant: the conjugacy condition
    // is plain equality
    if (!(star1 == star2)) return res;

    // solve chi1 = chi2^g on H2 cap H1 as linear conditions on the image of g
    CanonicalSubgroup meet = intersect_heis(p2.sub, p1.sub);
    const ValueGroup& vg = p1.vg;
    const VgValue chi2z = p2.chi_w ? *p2.chi_w : vg_zero(vg);  // w = z with c = 1
    AffineLat2 sol;
    for (const auto& e : meet.generators()) {
        // chi1(e) - chi2(e) + k(g, e) chi2z = 0, k(g, e) = A e.b - B e.a
        VgValue diff = vg_add(vg, p1.evaluate(e), vg_neg(vg, p2.evaluate(e)));
        for (size_t j = 0; j < static_cast<size_t>(vg.rank); ++j) {
            const Integer& s = chi2z.free[j];
            const Integer& d = diff.free[j];
            if (s == 0) {
                if (d != 0) return res;
                continue;
            }
            if (d % s != 0) return res;
            // k(g, e) = -d/s exactly
            sol = sol.refine(e.b, -e.a, d / s, 0);
            if (sol.empty) return res;
        }
        // torsion coordinate: d + k s = 0 (mod m)
        Integer s = chi2z.tors, d = diff.tors, m = vg.torsion;
        if (m > 1) {
            if (s == 0) {
                if (fmod(d, m) != 0) return res;
            } else {
                Integer g0 = gcd(s, m);
                if (d % g0 != 0) return res;
                // k = k0 (mod m/g0): turn into a congruence on (A, B)
                Integer mg = m / g0;
                // solve s k = -d (mod m): k0
                Integer sg = s / g0, dg = fmod(-d / g0, mg == 0 ? Integer(1) : mg);
                Integer inv = 1;
                if (mg > 1) {
                    Integer a0 = fmod(sg, mg), b0 = mg, x0 = 1, x1 = 0;
                    while (b0 != 0) {
                        Integer q = fdiv(a0, b0);
                        Integer r = a0 - q * b0;
                        a0 = b0;
                        b0 = r;
                        Integer tx = x0 - q * x1;
                        x0 = x1;
                        x1 = tx;
                    }
                    inv = x0;
                }
                Integer k0 = mg > 1 ? fmod(dg * inv, mg) : Integer(0);
                sol = sol.refine(e.b, -e.a, -k0, mg);
                if (sol.empty) return res;
            }
        }
    }
    if (sol.empty) return res;
    res.isomorphic = true;
    res.witness = HeisElement{sol.offset.x, sol.offset.y, 0};
    // paranoid replay of the witness
    HeisElement ginv = heis_inverse(res.witness);
    for (const auto& e : meet.generators()) {
        VgValue lhs = p1.evaluate(e);
        VgValue rhs = p2.evaluate(heis_conjugate(ginv, e));
        if (!(lhs == rhs)) throw std::logic_error("induced_iso_test_heis: witness replay failed");
    }
    return res;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

nlohmann::json value_to_json(const VgValue& v) {
    nlohmann::json j;
    j["free"] = nlohmann::json::array();
    for (const auto& f : v.free) j["free"].push_back(f.str());
    j["tors"] = v.tors.str();
    return j;
}

VgValue value_from_json(const nlohmann::json& j) {
    VgValue v;
    for (const auto& f : j.at("free")) v.free.push_back(Integer(f.get<std::string>()));
    v.tors = Integer(j.at("tors").get<std::string>());
    return v;
}

}  // namespace

nlohmann::json weight_pair_to_json(const WeightPair& p) {
    nlohmann::json j;
    j["subgroup"] = nlohmann::json::array();
    for (const auto& g : p.sub.generators())
        j["subgroup"].push_back({g.a.str(), g.b.str(), g.c.str()});
    j["value_group"] = {{"r", p.vg.rank}, {"m", p.vg.torsion.str()}};
    nlohmann::json chi = nlohmann::json::object();
    if (p.chi_u) chi["u"] = value_to_json(*p.chi_u);
    if (p.chi_v) chi["v"] = value_to_json(*p.chi_v);
    if (p.chi_w) chi["w"] = value_to_json(*p.chi_w);
    j["chi"] = chi;
    return j;
}

WeightPair weight_pair_from_json(const nlohmann::json& j) {
    WeightPair p;
    std::vector<HeisElement> gens;
    for (const auto& g : j.at("subgroup"))
        gens.push_back(HeisElement{Integer(g.at(0).get<std::string>()),
                                   Integer(g.at(1).get<std::string>()),
                                   Integer(g.at(2).get<std::string>())});
    p.sub = canonicalize_subgroup(std::move(gens));
    p.vg.rank = j.at("value_group").at("r").get<long>();
    p.vg.torsion = Integer(j.at("value_group").at("m").get<std::string>());
    const auto& chi = j.at("chi");
    if (chi.contains("u")) p.chi_u = value_from_json(chi.at("u"));
    if (chi.contains("v")) p.chi_v = value_from_json(chi.at("v"));
    if (chi.contains("w")) p.chi_w = value_from_json(chi.at("w"));
    p.validate();
    return p;
}

}  // namespace nilrep
