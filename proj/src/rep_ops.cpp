#include "nilrep/rep_ops.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace nilrep {

namespace {

bool is_abelian(const PcPresentation& p) {
    for (size_t i = 0; i < p.ngens(); ++i)
        for (size_t j = i + 1; j < p.ngens(); ++j) {
            GroupElement plain(p.ngens(), 0);
            plain[j] = 1;
            if (p.conj_word(i, j) != plain) return false;
        }
    return true;
}

// view K <= H inside H's own presentation coordinates
FiniteSubgroup view_in(const SubgroupPres& hp, const FiniteSubgroup& k) {
    FiniteSubgroup r;
    r.group = hp.pres;
    for (const auto& e : k.elements) r.elements.push_back(hp.sift(e));
    std::sort(r.elements.begin(), r.elements.end());
    r.generators = r.elements;
    return r;
}

std::string character_key(const Representation& rep) {
    std::string key;
    for (const auto& t : rep.character_values()) key += t.str() + ";";
    return key;
}

// deterministic search for an invertible element of a Hom space basis span
Matrix invertible_combination(const std::vector<Matrix>& basis) {
    if (basis.empty()) throw ValidationError("empty Hom space has no invertible element");
    long cond = basis[0].conductor();
    std::mt19937_64 rng(20240531);
    for (int attempt = 0; attempt < 200; ++attempt) {
        Matrix t(basis[0].rows(), basis[0].cols(), cond);
        for (size_t i = 0; i < basis.size(); ++i) {
            long coeff;
            if (attempt == 0)
                coeff = (i == 0) ? 1 : 0;
            else if (attempt == 1)
                coeff = 1;
            else
                coeff = static_cast<long>(rng() % (16 * (attempt + 1))) + 1;
            if (coeff == 0) continue;
            Matrix scaled = basis[i];
            for (size_t r = 0; r < scaled.rows(); ++r)
                for (size_t c = 0; c < scaled.cols(); ++c)
                    scaled.at(r, c) *= Cyclotomic(Rational(coeff), cond);
            t = t + scaled;
        }
        if (t.is_invertible()) return t;
    }
    throw ValidationError("no invertible intertwiner found in Hom space");
}

}  // namespace

HomSpace hom_space(const Representation& rho1, const Representation& rho2) {
    if (rho1.group() != rho2.group())
        throw ValidationError("hom_space: representations of different groups");
    if (rho1.conductor() != rho2.conductor())
        throw ValidationError("hom_space: representations over different fields");
    size_t d1 = rho1.dim(), d2 = rho2.dim();
    size_t ncols = d1 * d2;  // unknown T is d2 x d1, column-major index j*d2 + i
    RowEchelon ech(ncols);
    for (size_t gen = 0; gen < rho1.group()->ngens(); ++gen) {
        const Matrix& a = rho1.matrices()[gen];
        const Matrix& b = rho2.matrices()[gen];
        for (size_t i = 0; i < d2; ++i)
            for (size_t j = 0; j < d1; ++j) {
                // sum_k T[i,k] a[k,j] - sum_k b[i,k] T[k,j] = 0
                SparseRow row;
                for (size_t k = 0; k < d1; ++k)
                    if (!a.at(k, j).is_zero()) row.add(k * d2 + i, a.at(k, j));
                for (size_t k = 0; k < d2; ++k)
                    if (!b.at(i, k).is_zero()) row.add(j * d2 + k, -b.at(i, k));
                if (!row.empty()) ech.add_row(std::move(row));
            }
    }
    auto vecs = ech.nullspace_basis(rho1.conductor());
    HomSpace hs;
    for (const auto& v : vecs) {
        Matrix t(d2, d1, rho1.conductor());
        for (size_t j = 0; j < d1; ++j)
            for (size_t i = 0; i < d2; ++i) t.at(i, j) = v[j * d2 + i];
        hs.basis.push_back(std::move(t));
    }
    return hs;
}

InducedRep induce(const SubgroupRep& rho) {
    const auto& p = rho.sub.sub.group;
    const FiniteSubgroup& h = rho.sub.sub;
    long cond = rho.rep.conductor();
    size_t d = rho.rep.dim();

    std::vector<GroupElement> reps = right_coset_reps(h);
    size_t k = reps.size();
    // coset index of every group element
    std::vector<size_t> coset_of(p->elements().size());
    for (size_t c = 0; c < k; ++c)
        for (const auto& a : h.elements)
            coset_of[p->element_index(p->multiply(a, reps[c]))] = c;

    std::vector<Matrix> ms;
    for (size_t gen = 0; gen < p->ngens(); ++gen) {
        GroupElement g = p->generator(gen);
        Matrix m(k * d, k * d, cond);
        for (size_t a = 0; a < k; ++a) {
            GroupElement u = p->multiply(reps[a], g);
            size_t b = coset_of[p->element_index(u)];
            GroupElement hh = p->multiply(u, p->inverse(reps[b]));
            Matrix block = rho.evaluate_ambient(hh);
            for (size_t i = 0; i < d; ++i)
                for (size_t j = 0; j < d; ++j) m.at(a * d + i, b * d + j) = block.at(i, j);
        }
        ms.push_back(std::move(m));
    }
    Representation total(p, cond, std::move(ms), k * d);
    return InducedRep{rho, std::move(reps), std::move(total)};
}

size_t end_via_mackey(const SubgroupRep& rho) {
    const FiniteSubgroup& h = rho.sub.sub;
    size_t total = 0;
    for (const auto& g : double_cosets(h, h)) {
        FiniteSubgroup k = intersect(conjugate_subgroup(h, g), h);
        SubgroupPres kp = induced_presentation(k);
        SubgroupRep left = restrict_onto(rho, kp);
        SubgroupRep right = restrict_onto(conjugate_rep(rho, g), kp);
        total += hom_space(left.rep, right.rep).dim();
    }
    return total;
}

MackeyReport mackey_decompose(const FiniteSubgroup& h1, const SubgroupRep& rho) {
    const auto& p = h1.group;
    const FiniteSubgroup& h2 = rho.sub.sub;
    long cond = rho.rep.conductor();

    InducedRep big = induce(rho);
    SubgroupPres h1p = induced_presentation(h1);
    SubgroupRep restricted = restrict_onto(big.total, h1p);

    MackeyReport report;
    std::vector<Representation> summand_reps;
    for (const auto& g : double_cosets(h1, h2)) {
        FiniteSubgroup k = intersect(conjugate_subgroup(h2, g), h1);
        SubgroupRep rho_g = conjugate_rep(rho, g);
        // induce rho^g|_K from K up to H1, inside H1's own presentation
        FiniteSubgroup k_in_h1 = view_in(h1p, k);
        SubgroupPres kp = induced_presentation(k_in_h1);
        std::vector<Matrix> ms;
        for (const auto& u : kp.pc_gens)
            ms.push_back(rho_g.evaluate_ambient(h1p.lift(u)));
        Representation base(kp.pres, cond, std::move(ms), rho.rep.dim());
        InducedRep summand = induce(SubgroupRep{kp, std::move(base)});
        report.summands.push_back(
            MackeySummand{g, k.order(), summand.total.dim()});
        summand_reps.push_back(summand.total);
    }
    Representation dsum = summand_reps.size() == 1 ? summand_reps[0]
                                                   : direct_sum(summand_reps);
    report.total_dim = dsum.dim();
    report.dims_match = dsum.dim() == restricted.rep.dim();
    if (!report.dims_match)
        throw std::logic_error("mackey decomposition dimension bookkeeping failed");
    HomSpace hs = hom_space(restricted.rep, dsum);
    report.change_of_basis = invertible_combination(hs.basis);
    return report;
}

SSetResult s_set_rho(const SubgroupRep& rho) {
    const FiniteSubgroup& h = rho.sub.sub;
    const auto& p = h.group;
    SSetResult result;
    std::set<GroupElement> members;
    for (const auto& g : double_cosets(h, h)) {
        FiniteSubgroup k = intersect(conjugate_subgroup(h, g), h);
        SubgroupPres kp = induced_presentation(k);
        SubgroupRep left = restrict_onto(rho, kp);
        SubgroupRep right = restrict_onto(conjugate_rep(rho, g), kp);
        if (hom_space(left.rep, right.rep).dim() == 0) continue;
        result.coset_reps.push_back(g);
        for (const auto& a : h.elements) {
            GroupElement ag = p->multiply(a, g);
            for (const auto& b : h.elements) members.insert(p->multiply(ag, b));
        }
    }
    result.element_set.assign(members.begin(), members.end());
    // subgroup test by closure
    result.is_subgroup = true;
    for (const auto& a : result.element_set) {
        if (!members.count(p->inverse(a))) {
            result.is_subgroup = false;
            break;
        }
        for (const auto& b : result.element_set)
            if (!members.count(p->multiply(a, b))) {
                result.is_subgroup = false;
                break;
            }
        if (!result.is_subgroup) break;
    }
    result.h_normal_in_s = false;
    if (result.is_subgroup) {
        result.h_normal_in_s = true;
        for (const auto& g : result.element_set) {
            for (const auto& x : h.elements)
                if (!h.contains(p->conjugate(g, x))) {
                    result.h_normal_in_s = false;
                    break;
                }
            if (!result.h_normal_in_s) break;
        }
    }
    return result;
}

bool is_perfect_pair(const SubgroupRep& rho) {
    SSetResult s = s_set_rho(rho);
    return s.is_subgroup && s.h_normal_in_s;  // finite index is automatic here
}

IrreducibilityResult is_irreducible(const Representation& pi) {
    const auto& p = pi.group();
    long cond = pi.conductor();
    IrreducibilityResult res;
    long exponent = static_cast<long>(p->exponent());
    if (cond % exponent == 0) {
        res.regime = "splitting";
        res.end_dim = end_dim_direct(pi);
        res.irreducible = res.end_dim == 1;
        return res;
    }
    if (!is_abelian(*p))
        throw UnsupportedRegimeError(
            "irreducibility supported only over a splitting field (conductor divisible by "
            "the group exponent) or for abelian groups over any cyclotomic field");

    res.regime = "abelian";
    res.end_dim = 0;
    long N = exponent;
    long L = static_cast<long>(lcm(Integer(cond), Integer(N)));
    size_t n = p->ngens();

    // all characters over the splitting closure, as exponent tuples
    std::vector<std::vector<long>> chars;
    std::vector<long> c(n, 0);
    auto word_exponent = [&](const GroupElement& w) {
        long acc = 0;
        for (size_t i = 0; i < n; ++i) acc = (acc + w[i] * c[i]) % N;
        return acc;
    };
    while (true) {
        bool hom = true;
        for (size_t i = 0; i < n && hom; ++i)
            if ((c[i] * p->relative_orders()[i]) % N != word_exponent(p->power_word(i)))
                hom = false;
        if (hom) chars.push_back(c);
        size_t pos = n;
        bool done = true;
        while (pos-- > 0) {
            if (++c[pos] < N) {
                done = false;
                break;
            }
            c[pos] = 0;
        }
        if (done) break;
    }

    // multiplicity of each character inside pi over Q(zeta_L)
    std::vector<Cyclotomic> traces;
    for (const auto& g : p->elements()) traces.push_back(pi.evaluate(g).trace().embed(L));
    Integer order = p->order();
    std::map<std::vector<long>, long> mult;
    size_t total_mult = 0;
    for (const auto& ch : chars) {
        Cyclotomic acc(Rational(0), L);
        for (size_t gi = 0; gi < p->elements().size(); ++gi) {
            const auto& g = p->elements()[gi];
            long e = 0;
            for (size_t i = 0; i < n; ++i) e = (e + ch[i] * g[i]) % N;
            acc += Cyclotomic::root_of_unity(N, -e).embed(L) * traces[gi];
        }
        if (!acc.is_rational())
            throw std::logic_error("character multiplicity is not rational");
        Rational m = acc.rational_value() / Rational(order);
        if (denominator(m) != 1 || m < 0)
            throw std::logic_error("character multiplicity is not a non-negative integer");
        long mv = static_cast<long>(numerator(m));
        if (mv > 0) {
            mult[ch] = mv;
            total_mult += static_cast<size_t>(mv);
        }
    }
    if (total_mult != pi.dim())
        throw std::logic_error("character multiplicities do not sum to the dimension");

    // Galois orbit of the first constituent under Gal(Q(zeta_L)/Q(zeta_cond))
    if (mult.empty()) throw std::logic_error("no constituents found");
    std::set<std::vector<long>> orbit;
    std::vector<std::vector<long>> frontier{mult.begin()->first};
    orbit.insert(frontier[0]);
    while (!frontier.empty()) {
        std::vector<std::vector<long>> next;
        for (long a = 1; a < L; ++a) {
            if (std::gcd(a, L) != 1 || a % cond != 1 % cond) continue;
            for (const auto& ch : frontier) {
                std::vector<long> img(n);
                for (size_t i = 0; i < n; ++i) img[i] = (ch[i] * a) % N;
                if (orbit.insert(img).second) next.push_back(img);
            }
        }
        frontier = std::move(next);
    }
    res.orbit.assign(orbit.begin(), orbit.end());
    res.irreducible = true;
    for (const auto& [ch, m] : mult)
        if (m != 1 || !orbit.count(ch)) res.irreducible = false;
    if (orbit.size() != mult.size()) res.irreducible = false;
    return res;
}

std::vector<std::vector<Cyclotomic>> isotypic_subspace(const Representation& pi,
                                                       const SubgroupRep& rho) {
    SubgroupPres pres = rho.sub;
    SubgroupRep pi_restr = restrict_onto(pi, pres);
    HomSpace hs = hom_space(rho.rep, pi_restr.rep);
    // column span of the stacked intertwiner images
    RowEchelon ech(pi.dim());
    std::vector<std::vector<Cyclotomic>> basis;
    for (const auto& t : hs.basis)
        for (size_t j = 0; j < t.cols(); ++j) {
            SparseRow row;
            for (size_t i = 0; i < t.rows(); ++i)
                if (!t.at(i, j).is_zero()) row.entries.emplace_back(i, t.at(i, j));
            size_t before = ech.rank();
            ech.add_row(std::move(row));
            if (ech.rank() > before) {
                std::vector<Cyclotomic> v(pi.dim(), Cyclotomic(Rational(0), pi.conductor()));
                for (size_t i = 0; i < t.rows(); ++i) v[i] = t.at(i, j);
                basis.push_back(std::move(v));
            }
        }
    return basis;
}

namespace {

// matrix of pi(h) in the column basis W; throws when W is not invariant
Matrix action_in_basis(const Representation& pi, const GroupElement& h,
                       const std::vector<std::vector<Cyclotomic>>& w) {
    size_t d = pi.dim(), r = w.size();
    long cond = pi.conductor();
    Matrix img(d, r, cond);
    Matrix piH = pi.evaluate(h);
    for (size_t j = 0; j < r; ++j)
        for (size_t i = 0; i < d; ++i) {
            Cyclotomic acc(Rational(0), cond);
            for (size_t k = 0; k < d; ++k)
                if (!piH.at(i, k).is_zero() && !w[j][k].is_zero())
                    acc += piH.at(i, k) * w[j][k];
            img.at(i, j) = acc;
        }
    // solve W * M = img columnwise via echelon on [W | img]
    Matrix aug(d, r + r, cond);
    for (size_t i = 0; i < d; ++i) {
        for (size_t j = 0; j < r; ++j) aug.at(i, j) = w[j][i];
        for (size_t j = 0; j < r; ++j) aug.at(i, r + j) = img.at(i, j);
    }
    // gaussian solve
    Matrix work = aug;
    std::vector<long> pivot_col_of_row(d, -1);
    size_t row = 0;
    for (size_t col = 0; col < r && row < d; ++col) {
        size_t pr = row;
        while (pr < d && work.at(pr, col).is_zero()) ++pr;
        if (pr == d) continue;
        if (pr != row)
            for (size_t j = 0; j < work.cols(); ++j) std::swap(work.at(pr, j), work.at(row, j));
        Cyclotomic inv = work.at(row, col).inverse();
        for (size_t j = 0; j < work.cols(); ++j) work.at(row, j) *= inv;
        for (size_t i = 0; i < d; ++i) {
            if (i == row || work.at(i, col).is_zero()) continue;
            Cyclotomic f = work.at(i, col);
            for (size_t j = 0; j < work.cols(); ++j)
                work.at(i, j) -= f * work.at(row, j);
        }
        pivot_col_of_row[row] = static_cast<long>(col);
        ++row;
    }
    // rows beyond the pivot rows must be zero on the right side too
    for (size_t i = row; i < d; ++i)
        for (size_t j = 0; j < r; ++j)
            if (!work.at(i, r + j).is_zero())
                throw ValidationError("subspace is not invariant under the action");
    Matrix m(r, r, cond);
    for (size_t i = 0; i < row; ++i)
        for (size_t j = 0; j < r; ++j)
            m.at(static_cast<size_t>(pivot_col_of_row[i]), j) = work.at(i, r + j);
    return m;
}

}  // namespace

MonomialData monomialize(const Representation& pi) {
    const auto& p = pi.group();
    long cond = pi.conductor();
    long exponent = static_cast<long>(p->exponent());
    if (cond % exponent != 0)
        throw UnsupportedRegimeError("monomialize needs a splitting cyclotomic field");

    if (end_dim_direct(pi) != 1) {
        // reducible: surface a proper invariant subspace as the witness
        for (const auto& entry : all_irreducibles(p, cond)) {
            HomSpace hs = hom_space(entry.induced.total, pi);
            if (hs.dim() == 0) continue;
            if (entry.induced.total.dim() < pi.dim() || hs.dim() > 1)
                throw ValidationError(
                    "monomialize: representation is reducible (a proper invariant subspace "
                    "is spanned by the image of a constituent intertwiner)");
        }
        throw ValidationError("monomialize: representation is reducible");
    }

    if (pi.dim() == 1) {
        SubgroupPres whole = induced_presentation(whole_group(p));
        std::vector<Matrix> ms;
        for (const auto& u : whole.pc_gens) ms.push_back(pi.evaluate(u));
        Representation chi(whole.pres, cond, std::move(ms), 1);
        SubgroupRep sr{whole, std::move(chi)};
        InducedRep ind = induce(sr);
        HomSpace hs = hom_space(ind.total, pi);
        Matrix t = invertible_combination(hs.basis);
        return MonomialData{std::move(sr), std::move(t), std::move(ind)};
    }

    // candidate abelian normal subgroups with some non-scalar action
    std::vector<FiniteSubgroup> candidates;
    candidates.push_back(find_abelian_normal_noncentral(p));
    FiniteSubgroup z = center(p);
    for (const auto& w : p->elements()) {
        if (z.contains(w)) continue;
        std::vector<GroupElement> gens = z.elements;
        gens.push_back(w);
        FiniteSubgroup e = subgroup_closure(p, std::move(gens));
        if (is_normal(e)) candidates.push_back(std::move(e));
    }

    for (const auto& e : candidates) {
        SubgroupPres ep = induced_presentation(e);
        auto chars = all_characters(ep.pres, cond);
        for (const auto& chi : chars) {
            SubgroupRep chi_rep{ep, chi};
            auto w = isotypic_subspace(pi, chi_rep);
            if (w.empty()) continue;
            // stabilizer of chi under conjugation
            std::vector<GroupElement> stab_elems;
            for (const auto& g : p->elements()) {
                GroupElement ginv = p->inverse(g);
                bool fixes = true;
                for (const auto& u : ep.pc_gens) {
                    GroupElement moved = p->conjugate(ginv, u);
                    if (chi_rep.evaluate_ambient(moved) != chi_rep.evaluate_ambient(u)) {
                        fixes = false;
                        break;
                    }
                }
                if (fixes) stab_elems.push_back(g);
            }
            if (stab_elems.size() == p->elements().size()) continue;  // chi invariant

            FiniteSubgroup stab;
            stab.group = p;
            stab.elements = std::move(stab_elems);
            stab.generators = stab.elements;
            SubgroupPres hp = induced_presentation(stab);

            // representation of the stabilizer on W
            std::vector<Matrix> ms;
            for (const auto& u : hp.pc_gens) ms.push_back(action_in_basis(pi, u, w));
            Representation sigma(hp.pres, cond, std::move(ms), w.size());

            MonomialData inner = monomialize(sigma);
            // lift the inner weight pair back to the ambient group
            std::vector<GroupElement> lifted;
            for (const auto& coords : inner.chi.sub.sub.elements)
                lifted.push_back(hp.lift(coords));
            std::sort(lifted.begin(), lifted.end());
            FiniteSubgroup h_final;
            h_final.group = p;
            h_final.elements = std::move(lifted);
            h_final.generators = h_final.elements;
            SubgroupPres fp = induced_presentation(h_final);
            std::vector<Matrix> chi_ms;
            for (const auto& u : fp.pc_gens)
                chi_ms.push_back(inner.chi.evaluate_ambient(hp.sift(u)));
            Representation chi_final(fp.pres, cond, std::move(chi_ms), 1);
            SubgroupRep result{fp, std::move(chi_final)};

            InducedRep ind = induce(result);
            if (ind.total.dim() != pi.dim())
                throw std::logic_error("monomialize: dimension mismatch after descent");
            HomSpace hs = hom_space(ind.total, pi);
            if (hs.dim() != 1)
                throw std::logic_error("monomialize: intertwiner space is not a line");
            Matrix t = hs.basis[0];
            if (!t.is_invertible())
                throw std::logic_error("monomialize: intertwiner is not invertible");
            return MonomialData{std::move(result), std::move(t), std::move(ind)};
        }
    }
    throw UnsupportedRegimeError(
        "monomialize: no abelian normal subgroup acts non-scalarly (non-faithful corner case)");
}

InducedIsoResult induced_iso_test(const SubgroupRep& rho1, const SubgroupRep& rho2) {
    const auto& p = rho1.sub.sub.group;
    if (p != rho2.sub.sub.group)
        throw ValidationError("induced_iso_test: different ambient groups");
    InducedIsoResult res;
    res.isomorphic = false;
    Integer dim1 = Integer(p->elements().size()) / Integer(rho1.sub.sub.order()) *
                   Integer(rho1.rep.dim());
    Integer dim2 = Integer(p->elements().size()) / Integer(rho2.sub.sub.order()) *
                   Integer(rho2.rep.dim());
    if (dim1 != dim2) return res;
    const FiniteSubgroup& h1 = rho1.sub.sub;
    const FiniteSubgroup& h2 = rho2.sub.sub;
    for (const auto& g : double_cosets(h2, h1)) {
        FiniteSubgroup k = intersect(conjugate_subgroup(h2, g), h1);
        SubgroupPres kp = induced_presentation(k);
        SubgroupRep left = restrict_onto(rho1, kp);
        SubgroupRep right = restrict_onto(conjugate_rep(rho2, g), kp);
        HomSpace hs = hom_space(left.rep, right.rep);
        if (hs.dim() > 0) {
            res.isomorphic = true;
            res.witness_g = g;
            res.witness_intertwiner = hs.basis[0];
            return res;
        }
    }
    return res;
}

std::vector<IrreducibleEntry> all_irreducibles(PcPresentationPtr p, long conductor) {
    long exponent = static_cast<long>(p->exponent());
    if (conductor % exponent != 0)
        throw UnsupportedRegimeError("all_irreducibles needs a splitting cyclotomic field");
    std::vector<IrreducibleEntry> result;
    std::set<std::string> seen;
    for (const auto& h : all_subgroups(p)) {
        SubgroupPres hp = induced_presentation(h);
        for (const auto& chi : all_characters(hp.pres, conductor)) {
            SubgroupRep sr{hp, chi};
            SSetResult s = s_set_rho(sr);
            if (s.element_set != h.elements) continue;
            InducedRep ind = induce(sr);
            if (seen.insert(character_key(ind.total)).second)
                result.push_back(IrreducibleEntry{std::move(sr), std::move(ind)});
        }
    }
    Integer sum_sq = 0;
    for (const auto& entry : result)
        sum_sq += Integer(entry.induced.total.dim()) * Integer(entry.induced.total.dim());
    if (sum_sq != Integer(p->elements().size()))
        throw std::logic_error("irreducible enumeration incomplete: sum of squares is " +
                               sum_sq.str());
    std::sort(result.begin(), result.end(), [](const IrreducibleEntry& a, const IrreducibleEntry& b) {
        if (a.induced.total.dim() != b.induced.total.dim())
            return a.induced.total.dim() < b.induced.total.dim();
        return character_key(a.induced.total) < character_key(b.induced.total);
    });
    return result;
}

}  // namespace nilrep
