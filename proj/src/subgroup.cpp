#include "nilrep/subgroup.hpp"

#include <algorithm>
#include <set>

namespace nilrep {

bool FiniteSubgroup::contains(const GroupElement& g) const {
    return std::binary_search(elements.begin(), elements.end(), g);
}

bool FiniteSubgroup::is_subgroup_of(const FiniteSubgroup& o) const {
    return std::includes(o.elements.begin(), o.elements.end(), elements.begin(),
                         elements.end());
}

FiniteSubgroup subgroup_closure(PcPresentationPtr p, std::vector<GroupElement> gens) {
    for (const auto& g : gens) p->validate_element(g);
    std::set<GroupElement> closed;
    closed.insert(p->identity());
    std::vector<GroupElement> frontier{p->identity()};
    // generators and their inverses generate the same closure; products of the
    // generating set with the current set until stable
    std::vector<GroupElement> step = gens;
    for (const auto& g : gens) step.push_back(p->inverse(g));
    size_t budget = PcPresentation::enumeration_budget();
    while (!frontier.empty()) {
        std::vector<GroupElement> next;
        for (const auto& a : frontier)
            for (const auto& s : step) {
                GroupElement b = p->multiply(a, s);
                if (closed.insert(b).second) {
                    next.push_back(b);
                    if (closed.size() > budget)
                        throw ResourceBudgetError("subgroup closure exceeds budget");
                }
            }
        frontier = std::move(next);
    }
    FiniteSubgroup h;
    h.group = std::move(p);
    h.generators = std::move(gens);
    h.elements.assign(closed.begin(), closed.end());
    return h;
}

FiniteSubgroup whole_group(PcPresentationPtr p) {
    std::vector<GroupElement> gens;
    for (size_t i = 0; i < p->ngens(); ++i) gens.push_back(p->generator(i));
    FiniteSubgroup h;
    h.elements = p->elements();
    h.generators = std::move(gens);
    h.group = std::move(p);
    return h;
}

FiniteSubgroup trivial_subgroup(PcPresentationPtr p) {
    FiniteSubgroup h;
    h.elements = {p->identity()};
    h.group = std::move(p);
    return h;
}

FiniteSubgroup conjugate_subgroup(const FiniteSubgroup& h, const GroupElement& g) {
    const auto& p = h.group;
    FiniteSubgroup r;
    r.group = p;
    for (const auto& gen : h.generators) r.generators.push_back(p->conjugate(g, gen));
    std::set<GroupElement> conj;
    for (const auto& e : h.elements) conj.insert(p->conjugate(g, e));
    r.elements.assign(conj.begin(), conj.end());
    return r;
}

FiniteSubgroup normalizer(const FiniteSubgroup& h) {
    const auto& p = h.group;
    const auto& gens = h.generators.empty() ? h.elements : h.generators;
    std::vector<GroupElement> result;
    for (const auto& g : p->elements()) {
        bool ok = true;
        for (const auto& x : gens)
            if (!h.contains(p->conjugate(g, x))) {
                ok = false;
                break;
            }
        if (ok) result.push_back(g);
    }
    FiniteSubgroup n;
    n.group = p;
    n.elements = std::move(result);
    n.generators = n.elements;
    return n;
}

FiniteSubgroup centralizer(const FiniteSubgroup& h) {
    const auto& p = h.group;
    const auto& gens = h.generators.empty() ? h.elements : h.generators;
    std::vector<GroupElement> result;
    for (const auto& g : p->elements()) {
        bool ok = true;
        for (const auto& x : gens)
            if (p->multiply(g, x) != p->multiply(x, g)) {
                ok = false;
                break;
            }
        if (ok) result.push_back(g);
    }
    FiniteSubgroup c;
    c.group = p;
    c.elements = std::move(result);
    c.generators = c.elements;
    return c;
}

FiniteSubgroup center(PcPresentationPtr p) { return centralizer(whole_group(p)); }

FiniteSubgroup intersect(const FiniteSubgroup& a, const FiniteSubgroup& b) {
    FiniteSubgroup r;
    r.group = a.group;
    std::set_intersection(a.elements.begin(), a.elements.end(), b.elements.begin(),
                          b.elements.end(), std::back_inserter(r.elements));
    r.generators = r.elements;
    return r;
}

bool is_normal(const FiniteSubgroup& h) {
    return normalizer(h).order() == h.group->elements().size();
}

bool are_conjugate(const FiniteSubgroup& a, const FiniteSubgroup& b) {
    if (a.order() != b.order()) return false;
    const auto& p = a.group;
    for (const auto& g : p->elements())
        if (conjugate_subgroup(a, g) == b) return true;
    return false;
}

std::vector<GroupElement> double_cosets(const FiniteSubgroup& h1, const FiniteSubgroup& h2) {
    const auto& p = h1.group;
    const auto& all = p->elements();
    std::vector<bool> seen(all.size(), false);
    std::vector<GroupElement> reps;
    for (size_t idx = 0; idx < all.size(); ++idx) {
        if (seen[idx]) continue;
        const GroupElement& g = all[idx];
        reps.push_back(g);
        for (const auto& a : h1.elements) {
            GroupElement ag = p->multiply(a, g);
            for (const auto& b : h2.elements)
                seen[p->element_index(p->multiply(ag, b))] = true;
        }
    }
    return reps;
}

std::vector<GroupElement> right_coset_reps(const FiniteSubgroup& h) {
    const auto& p = h.group;
    const auto& all = p->elements();
    std::vector<bool> seen(all.size(), false);
    std::vector<GroupElement> reps;
    for (size_t idx = 0; idx < all.size(); ++idx) {
        if (seen[idx]) continue;
        const GroupElement& g = all[idx];
        reps.push_back(g);
        for (const auto& a : h.elements) seen[p->element_index(p->multiply(a, g))] = true;
    }
    return reps;
}

namespace {

// subgroup generated by gens, then closed under conjugation by G
FiniteSubgroup normal_closure(PcPresentationPtr p, std::vector<GroupElement> gens) {
    FiniteSubgroup k = subgroup_closure(p, gens);
    while (true) {
        std::vector<GroupElement> extra;
        for (size_t i = 0; i < p->ngens(); ++i) {
            GroupElement gi = p->generator(i);
            for (const auto& x : k.generators.empty() ? k.elements : k.generators) {
                GroupElement c = p->conjugate(gi, x);
                if (!k.contains(c)) extra.push_back(c);
            }
        }
        if (extra.empty()) return k;
        std::vector<GroupElement> new_gens = k.generators;
        new_gens.insert(new_gens.end(), extra.begin(), extra.end());
        k = subgroup_closure(p, std::move(new_gens));
    }
}

}  // namespace

std::vector<FiniteSubgroup> lower_central_series(PcPresentationPtr p) {
    std::vector<FiniteSubgroup> series;
    series.push_back(whole_group(p));
    while (series.back().order() > 1) {
        const FiniteSubgroup& prev = series.back();
        // [G, gamma_i] = normal closure of commutators of generators
        std::vector<GroupElement> comms;
        const auto& prev_gens = prev.generators.empty() ? prev.elements : prev.generators;
        for (size_t i = 0; i < p->ngens(); ++i) {
            GroupElement gi = p->generator(i);
            GroupElement gi_inv = p->inverse(gi);
            for (const auto& x : prev_gens) {
                // [g, x] = g x g^-1 x^-1
                GroupElement c =
                    p->multiply(p->multiply(p->multiply(gi, x), gi_inv), p->inverse(x));
                comms.push_back(c);
            }
        }
        FiniteSubgroup next = normal_closure(p, std::move(comms));
        if (next == prev)
            throw ValidationError("lower central series does not terminate (not nilpotent)");
        series.push_back(std::move(next));
    }
    return series;
}

std::vector<FiniteSubgroup> normal_chain(PcPresentationPtr p, const FiniteSubgroup& h) {
    auto lcs = lower_central_series(p);
    std::vector<FiniteSubgroup> chain;
    for (const auto& gamma : lcs) {
        std::vector<GroupElement> gens = h.generators.empty() ? h.elements : h.generators;
        const auto& ggens = gamma.generators.empty() ? gamma.elements : gamma.generators;
        gens.insert(gens.end(), ggens.begin(), ggens.end());
        FiniteSubgroup gi = subgroup_closure(p, std::move(gens));
        if (chain.empty() || gi != chain.back()) chain.push_back(std::move(gi));
    }
    if (chain.empty() || chain.back() != h) chain.push_back(h);
    return chain;
}

FiniteSubgroup find_abelian_normal_noncentral(PcPresentationPtr p) {
    FiniteSubgroup z = center(p);
    if (z.order() == p->elements().size())
        throw ValidationError("no abelian normal non-central subgroup: group is abelian");
    auto lcs = lower_central_series(p);
    // deepest lower-central term not inside the center
    size_t best = 0;
    for (size_t i = 0; i < lcs.size(); ++i)
        if (!lcs[i].is_subgroup_of(z)) best = i;
    const FiniteSubgroup& gamma = lcs[best];
    for (const auto& w : gamma.elements) {
        if (z.contains(w)) continue;
        std::vector<GroupElement> gens = z.elements;
        gens.push_back(w);
        return subgroup_closure(p, std::move(gens));
    }
    throw std::logic_error("find_abelian_normal_noncentral: no witness found");
}

std::vector<FiniteSubgroup> all_subgroups(PcPresentationPtr p) {
    std::set<std::vector<GroupElement>> seen;
    std::vector<FiniteSubgroup> result;
    std::vector<FiniteSubgroup> frontier;
    FiniteSubgroup triv = trivial_subgroup(p);
    seen.insert(triv.elements);
    result.push_back(triv);
    frontier.push_back(triv);
    while (!frontier.empty()) {
        std::vector<FiniteSubgroup> next;
        for (const auto& h : frontier) {
            for (const auto& g : p->elements()) {
                if (h.contains(g)) continue;
                std::vector<GroupElement> gens = h.generators;
                gens.push_back(g);
                FiniteSubgroup bigger = subgroup_closure(p, std::move(gens));
                if (seen.insert(bigger.elements).second) {
                    result.push_back(bigger);
                    next.push_back(std::move(bigger));
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(result.begin(), result.end(), [](const FiniteSubgroup& a, const FiniteSubgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.elements < b.elements;
    });
    return result;
}

GroupElement SubgroupPres::sift(const GroupElement& g) const {
    const auto& p = sub.group;
    GroupElement coords(pc_gens.size(), 0);
    GroupElement rest = g;
    for (size_t k = 0; k < pc_gens.size(); ++k) {
        size_t level = levels[k];
        if (rest[level] == 0) continue;
        long lead = pc_gens[k][level];
        if (rest[level] % lead != 0)
            throw ValidationError("element does not sift through subgroup generators");
        long c = rest[level] / lead;
        coords[k] = c;
        rest = p->multiply(p->power(pc_gens[k], Integer(-c)), rest);
    }
    if (!p->is_identity(rest)) throw ValidationError("element not in subgroup");
    return coords;
}

GroupElement SubgroupPres::lift(const GroupElement& coords) const {
    const auto& p = sub.group;
    GroupElement g = p->identity();
    for (size_t k = 0; k < pc_gens.size(); ++k)
        if (coords[k] != 0) g = p->multiply(g, p->power(pc_gens[k], Integer(coords[k])));
    return g;
}

SubgroupPres induced_presentation(const FiniteSubgroup& h) {
    const auto& p = h.group;
    size_t n = p->ngens();
    SubgroupPres sp;
    sp.sub = h;

    // polycyclic generating sequence: per ambient level, the element of
    // H ∩ <g_level, ...> with smallest positive leading exponent, smallest in
    // lex order among those
    for (size_t level = 0; level < n; ++level) {
        const GroupElement* best = nullptr;
        for (const auto& e : h.elements) {
            bool lead_here = e[level] > 0;
            for (size_t j = 0; j < level && lead_here; ++j)
                if (e[j] != 0) lead_here = false;
            if (!lead_here) continue;
            if (!best || e[level] < (*best)[level] ||
                (e[level] == (*best)[level] && e < *best))
                best = &e;
        }
        if (best) {
            sp.pc_gens.push_back(*best);
            sp.levels.push_back(level);
        }
    }

    size_t m = sp.pc_gens.size();
    // relative order of generator k: index of <H ∩ G_{level+1}> steps; smallest
    // r >= 1 with pc_gens[k]^r expressible in later generators
    std::vector<long> rel_orders(m, 0);
    auto leading_level = [&](const GroupElement& g) -> long {
        for (size_t j = 0; j < n; ++j)
            if (g[j] != 0) return static_cast<long>(j);
        return -1;
    };
    for (size_t k = 0; k < m; ++k) {
        GroupElement pow = sp.pc_gens[k];
        long r = 1;
        while (leading_level(pow) == static_cast<long>(sp.levels[k])) {
            pow = p->multiply(pow, sp.pc_gens[k]);
            ++r;
        }
        rel_orders[k] = r;
    }

    // sift helper against the generating sequence (before pres exists)
    auto sift_raw = [&](const GroupElement& g) {
        GroupElement coords(m, 0);
        GroupElement rest = g;
        for (size_t k = 0; k < m; ++k) {
            size_t level = sp.levels[k];
            if (rest[level] == 0) continue;
            long lead = sp.pc_gens[k][level];
            if (rest[level] % lead != 0)
                throw std::logic_error("induced presentation: sift failure");
            long c = rest[level] / lead;
            coords[k] = c;
            rest = p->multiply(p->power(sp.pc_gens[k], Integer(-c)), rest);
        }
        if (!p->is_identity(rest)) throw std::logic_error("induced presentation: sift residue");
        return coords;
    };

    std::map<size_t, GroupElement> powers;
    std::map<std::pair<size_t, size_t>, GroupElement> conjs;
    for (size_t k = 0; k < m; ++k) {
        GroupElement pw = p->power(sp.pc_gens[k], Integer(rel_orders[k]));
        powers[k] = sift_raw(pw);
        for (size_t j = k + 1; j < m; ++j) {
            GroupElement cw = p->conjugate(sp.pc_gens[k], sp.pc_gens[j]);
            conjs[{k, j}] = sift_raw(cw);
        }
    }
    sp.pres = std::make_shared<PcPresentation>(rel_orders, powers, conjs,
                                               "sub<" + p->name() + ">");
    return sp;
}

PcPresentationPtr direct_product(PcPresentationPtr a, PcPresentationPtr b) {
    size_t na = a->ngens(), nb = b->ngens();
    std::vector<long> orders = a->relative_orders();
    orders.insert(orders.end(), b->relative_orders().begin(), b->relative_orders().end());
    auto shift_a = [&](const GroupElement& w) {
        GroupElement r(na + nb, 0);
        for (size_t i = 0; i < na; ++i) r[i] = w[i];
        return r;
    };
    auto shift_b = [&](const GroupElement& w) {
        GroupElement r(na + nb, 0);
        for (size_t i = 0; i < nb; ++i) r[na + i] = w[i];
        return r;
    };
    std::map<size_t, GroupElement> powers;
    std::map<std::pair<size_t, size_t>, GroupElement> conjs;
    for (size_t i = 0; i < na; ++i) {
        powers[i] = shift_a(a->power_word(i));
        for (size_t j = i + 1; j < na; ++j) conjs[{i, j}] = shift_a(a->conj_word(i, j));
    }
    for (size_t i = 0; i < nb; ++i) {
        powers[na + i] = shift_b(b->power_word(i));
        for (size_t j = i + 1; j < nb; ++j)
            conjs[{na + i, na + j}] = shift_b(b->conj_word(i, j));
    }
    return std::make_shared<PcPresentation>(orders, powers, conjs,
                                            a->name() + "x" + b->name());
}

}  // namespace nilrep
