#include <doctest.h>

#include <random>

#include "nilrep/presets.hpp"
#include "nilrep/rep_ops.hpp"

using namespace nilrep;

namespace {

Matrix scalar_matrix(const Cyclotomic& v) {
    Matrix m(1, 1, v.conductor());
    m.at(0, 0) = v;
    return m;
}

// character of a subgroup given (order, exponent) root-of-unity values on its
// pc generators
SubgroupRep make_character(const SubgroupPres& hp, long conductor,
                           const std::vector<std::pair<long, long>>& values) {
    std::vector<Matrix> ms;
    for (size_t i = 0; i < hp.pc_gens.size(); ++i)
        ms.push_back(scalar_matrix(
            Cyclotomic::root_of_unity(values[i].first, values[i].second).embed(conductor)));
    Representation rep(hp.pres, conductor, std::move(ms), 1);
    return SubgroupRep{hp, std::move(rep)};
}

}  // namespace

TEST_CASE("constructor validates relations") {
    auto p = heisenberg_mod(3);
    // scalar matrices cannot satisfy x y x^-1 = y z with z acting nontrivially
    std::vector<Matrix> bad{scalar_matrix(Cyclotomic::root_of_unity(3, 1)),
                            scalar_matrix(Cyclotomic::root_of_unity(3, 1)),
                            scalar_matrix(Cyclotomic::root_of_unity(3, 1))};
    CHECK_THROWS_AS(Representation(p, 3, std::move(bad), 1), ValidationError);
    CHECK_NOTHROW(trivial_rep(p, 3));
}

TEST_CASE("characters of cyclic groups and Hom dimensions") {
    auto c3 = cyclic_group(3);
    auto chars = all_characters(c3, 3);
    REQUIRE(chars.size() == 3);
    CHECK(hom_space(chars[1], chars[2]).dim() == 0);
    CHECK(hom_space(chars[1], chars[1]).dim() == 1);
    CHECK(end_dim_direct(chars[1]) == 1);

    // over Q only the trivial and sign-type characters survive
    auto c4 = cyclic_group(4);
    CHECK(all_characters(c4, 1).size() == 2);
    CHECK(all_characters(c4, 4).size() == 4);
}

TEST_CASE("induction: dimensions and the regular representation") {
    auto p = heisenberg_mod(3);
    FiniteSubgroup h1 = subgroup_closure(p, {p->generator(0), p->generator(2)});
    SubgroupPres h1p = induced_presentation(h1);
    SubgroupRep chi1 = make_character(h1p, 3, {{1, 0}, {3, 1}});
    InducedRep ind = induce(chi1);
    CHECK(ind.total.dim() == 3);
    CHECK(ind.coset_reps.size() == 3);

    auto c2 = cyclic_group(2);
    SubgroupPres trivp = induced_presentation(trivial_subgroup(c2));
    SubgroupRep triv{trivp, trivial_rep(trivp.pres, 4)};
    InducedRep reg = induce(triv);
    CHECK(reg.total.dim() == 2);
    CHECK(end_dim_direct(reg.total) == 2);
}

TEST_CASE("Frobenius reciprocity dimension equalities on random triples") {
    std::mt19937_64 rng(314);
    std::vector<PcPresentationPtr> groups{
        heisenberg_mod(2), preset_group("product:cyclic:2,cyclic:4"),
        preset_group("cyclic:16"), preset_group("product:cyclic:2,heis_mod:2")};
    std::vector<std::vector<IrreducibleEntry>> irreducibles;
    std::vector<long> conductors;
    for (const auto& p : groups) {
        long cond = static_cast<long>(p->exponent());
        conductors.push_back(cond);
        irreducibles.push_back(all_irreducibles(p, cond));
    }
    for (int trial = 0; trial < 50; ++trial) {
        size_t gi = trial % groups.size();
        const auto& p = groups[gi];
        long cond = conductors[gi];
        auto subs = all_subgroups(p);
        const FiniteSubgroup& h = subs[rng() % subs.size()];
        SubgroupPres hp = induced_presentation(h);
        auto chars = all_characters(hp.pres, cond);
        SubgroupRep rho{hp, chars[rng() % chars.size()]};

        const auto& irr = irreducibles[gi];
        std::vector<Representation> parts;
        size_t count = 1 + rng() % 2;
        for (size_t i = 0; i < count; ++i)
            parts.push_back(irr[rng() % irr.size()].induced.total);
        Representation pi = direct_sum(parts);

        InducedRep ind = induce(rho);
        SubgroupRep pi_h = restrict_onto(pi, hp);
        // dim Hom_G(ind rho, pi) = dim Hom_H(rho, pi|_H)
        CHECK(hom_space(ind.total, pi).dim() == hom_space(rho.rep, pi_h.rep).dim());
        // dim Hom_G(pi, ind rho) = dim Hom_H(pi|_H, rho)
        CHECK(hom_space(pi, ind.total).dim() == hom_space(pi_h.rep, rho.rep).dim());
    }
}

TEST_CASE("Mackey decomposition") {
    auto p = heisenberg_mod(3);
    FiniteSubgroup h1 = subgroup_closure(p, {p->generator(0), p->generator(2)});
    SubgroupPres h1p = induced_presentation(h1);
    SubgroupRep chi1 = make_character(h1p, 3, {{1, 0}, {3, 1}});

    // H normal: |G/H| = 3 one-dimensional summands rho^g
    MackeyReport rep = mackey_decompose(h1, chi1);
    CHECK(rep.summands.size() == 3);
    for (const auto& s : rep.summands) CHECK(s.dim == 1);
    CHECK(rep.total_dim == 3);
    CHECK(rep.dims_match);
    CHECK(rep.change_of_basis.is_invertible());

    // H2 = G: a single summand, the restriction itself
    FiniteSubgroup whole = whole_group(p);
    SubgroupPres wp = induced_presentation(whole);
    SubgroupRep chi_g = make_character(wp, 3, {{3, 1}, {1, 0}, {1, 0}});
    MackeyReport rep2 = mackey_decompose(h1, chi_g);
    CHECK(rep2.summands.size() == 1);
    CHECK(rep2.total_dim == 1);

    // dimension bookkeeping on random pairs in heis_mod:2
    auto q = heisenberg_mod(2);
    std::mt19937_64 rng(77);
    auto subs = all_subgroups(q);
    for (int trial = 0; trial < 5; ++trial) {
        const FiniteSubgroup& a = subs[rng() % subs.size()];
        const FiniteSubgroup& b = subs[rng() % subs.size()];
        SubgroupPres bp = induced_presentation(b);
        auto chars = all_characters(bp.pres, 4);
        SubgroupRep rho{bp, chars[rng() % chars.size()]};
        MackeyReport r = mackey_decompose(a, rho);
        CHECK(r.dims_match);
        CHECK(r.change_of_basis.is_invertible());
    }
}

TEST_CASE("end_via_mackey agrees with the direct computation") {
    auto p = heisenberg_mod(3);
    FiniteSubgroup h1 = subgroup_closure(p, {p->generator(0), p->generator(2)});
    SubgroupPres h1p = induced_presentation(h1);
    SubgroupRep chi1 = make_character(h1p, 3, {{1, 0}, {3, 1}});
    CHECK(end_via_mackey(chi1) == 1);
    CHECK(end_dim_direct(induce(chi1).total) == 1);

    auto c2 = cyclic_group(2);
    SubgroupPres trivp = induced_presentation(trivial_subgroup(c2));
    SubgroupRep triv{trivp, trivial_rep(trivp.pres, 4)};
    CHECK(end_via_mackey(triv) == 2);

    // exhaustive agreement over all subgroups of heis_mod:2
    auto q = heisenberg_mod(2);
    for (const auto& h : all_subgroups(q)) {
        SubgroupPres hp = induced_presentation(h);
        for (const auto& chi : all_characters(hp.pres, 4)) {
            SubgroupRep rho{hp, chi};
            CHECK(end_via_mackey(rho) == end_dim_direct(induce(rho).total));
        }
    }
}

TEST_CASE("S(H, rho) and perfect pairs") {
    auto p = heisenberg_mod(3);
    FiniteSubgroup h1 = subgroup_closure(p, {p->generator(0), p->generator(2)});
    SubgroupPres h1p = induced_presentation(h1);
    SubgroupRep chi1 = make_character(h1p, 3, {{1, 0}, {3, 1}});
    SSetResult s = s_set_rho(chi1);
    CHECK(s.element_set == h1.elements);
    CHECK(is_perfect_pair(chi1));

    FiniteSubgroup e = find_abelian_normal_noncentral(p);
    SubgroupPres epres = induced_presentation(e);
    SubgroupRep etriv{epres, trivial_rep(epres.pres, 3)};
    CHECK(s_set_rho(etriv).element_set.size() == 27);

    // S(H, chi) strictly between H and G exists in an order-16 preset
    auto q = preset_group("product:heis_mod:2,cyclic:2");
    bool found_proper = false;
    for (const auto& h : all_subgroups(q)) {
        if (h.order() == 1 || h.order() == q->elements().size()) continue;
        SubgroupPres hp = induced_presentation(h);
        for (const auto& chi : all_characters(hp.pres, 4)) {
            SubgroupRep rho{hp, chi};
            SSetResult sr = s_set_rho(rho);
            if (sr.element_set.size() > h.order() &&
                sr.element_set.size() < q->elements().size()) {
                found_proper = true;
                CHECK(sr.is_subgroup);
                break;
            }
        }
        if (found_proper) break;
    }
    CHECK(found_proper);
}

TEST_CASE("irreducibility: splitting and abelian regimes") {
    auto p = heisenberg_mod(3);
    FiniteSubgroup h1 = subgroup_closure(p, {p->generator(0), p->generator(2)});
    SubgroupPres h1p = induced_presentation(h1);
    SubgroupRep chi1 = make_character(h1p, 3, {{1, 0}, {3, 1}});
    InducedRep ind = induce(chi1);
    IrreducibilityResult r = is_irreducible(ind.total);
    CHECK(r.irreducible);
    CHECK(r.regime == "splitting");

    // Z/8 over Q(i): induction of a primitive character of Z/4
    auto c8 = cyclic_group(8);
    FiniteSubgroup z4 = subgroup_closure(c8, {c8->power(c8->generator(0), 2)});
    SubgroupPres z4p = induced_presentation(z4);
    SubgroupRep psi = make_character(z4p, 4, {{4, 1}});
    InducedRep ind2 = induce(psi);
    CHECK(ind2.total.dim() == 2);
    IrreducibilityResult r2 = is_irreducible(ind2.total);
    CHECK(r2.regime == "abelian");
    CHECK(r2.irreducible);
    CHECK(r2.orbit.size() == 2);
    CHECK(end_dim_direct(ind2.total) == 2);

    Representation twice = direct_sum({ind.total, ind.total});
    IrreducibilityResult r3 = is_irreducible(twice);
    CHECK(!r3.irreducible);
    CHECK(r3.end_dim == 4);

    // nonabelian group over a non-splitting field is rejected
    SubgroupRep chi_triv = make_character(h1p, 1, {{1, 0}, {1, 0}});
    InducedRep ind_bad = induce(chi_triv);
    CHECK_THROWS_AS(is_irreducible(ind_bad.total), UnsupportedRegimeError);
}

TEST_CASE("isotypic subspaces") {
    auto c3 = cyclic_group(3);
    auto chars = all_characters(c3, 3);
    SubgroupPres trivp = induced_presentation(trivial_subgroup(c3));
    InducedRep reg = induce(SubgroupRep{trivp, trivial_rep(trivp.pres, 3)});
    SubgroupPres whole = induced_presentation(whole_group(c3));
    for (const auto& chi : chars) {
        SubgroupRep chi_sub = restrict_onto(chi, whole);
        CHECK(isotypic_subspace(reg.total, chi_sub).size() == 1);
    }

    // pi = trivial^2 + psi on Z/5: isotypic dimensions 2, 1, 0
    auto c5 = cyclic_group(5);
    auto chars5 = all_characters(c5, 5);
    Representation pi5 = direct_sum({chars5[0], chars5[0], chars5[1]});
    SubgroupPres w5 = induced_presentation(whole_group(c5));
    CHECK(isotypic_subspace(pi5, restrict_onto(chars5[0], w5)).size() == 2);
    CHECK(isotypic_subspace(pi5, restrict_onto(chars5[1], w5)).size() == 1);
    CHECK(isotypic_subspace(pi5, restrict_onto(chars5[2], w5)).size() == 0);
}

TEST_CASE("monomialize") {
    auto p = heisenberg_mod(3);
    auto irr = all_irreducibles(p, 3);
    size_t linear = 0, dim3 = 0;
    for (const auto& entry : irr) {
        if (entry.induced.total.dim() == 1) ++linear;
        if (entry.induced.total.dim() == 3) ++dim3;
    }
    CHECK(irr.size() == 11);
    CHECK(linear == 9);
    CHECK(dim3 == 2);

    for (const auto& entry : irr) {
        if (entry.induced.total.dim() != 3) continue;
        MonomialData md = monomialize(entry.induced.total);
        CHECK(md.intertwiner.is_invertible());
        CHECK(md.chi.rep.dim() == 1);
        CHECK(md.induced.total.dim() == 3);
        CHECK(md.chi.sub.sub.order() == 9);
    }

    // 1-dimensional input comes back attached to the whole group
    MonomialData md1 = monomialize(irr[0].induced.total.dim() == 1 ? irr[0].induced.total
                                                                   : irr[10].induced.total);
    CHECK(md1.chi.sub.sub.order() == 27);

    // heis_mod:2 = D4: the 2-dimensional irreducible monomializes from an
    // index-2 subgroup whose character is faithful on the center
    auto q = heisenberg_mod(2);
    auto irr2 = all_irreducibles(q, 4);
    bool saw_dim2 = false;
    for (const auto& entry : irr2) {
        if (entry.induced.total.dim() != 2) continue;
        saw_dim2 = true;
        MonomialData md = monomialize(entry.induced.total);
        CHECK(md.chi.sub.sub.order() == 4);
        CHECK(md.intertwiner.is_invertible());
        GroupElement z = q->generator(2);
        CHECK(md.chi.evaluate_ambient(z).at(0, 0) == Cyclotomic(Rational(-1), 4));
    }
    CHECK(saw_dim2);

    Representation twice = direct_sum({irr[0].induced.total, irr[0].induced.total});
    CHECK_THROWS_AS(monomialize(twice), ValidationError);
}

TEST_CASE("isomorphism test for induced representations") {
    auto p = heisenberg_mod(3);
    FiniteSubgroup h1 = subgroup_closure(p, {p->generator(0), p->generator(2)});
    FiniteSubgroup h2 = subgroup_closure(p, {p->generator(1), p->generator(2)});
    SubgroupPres h1p = induced_presentation(h1);
    SubgroupPres h2p = induced_presentation(h2);
    SubgroupRep chi1 = make_character(h1p, 3, {{1, 0}, {3, 1}});
    SubgroupRep chi2 = make_character(h2p, 3, {{1, 0}, {3, 1}});

    CHECK(induced_iso_test(chi1, chi1).isomorphic);

    InducedIsoResult cross = induced_iso_test(chi1, chi2);
    CHECK(cross.isomorphic);
    CHECK(!are_conjugate(h1, h2));

    // distinct central characters are never isomorphic after induction
    SubgroupRep chi1b = make_character(h1p, 3, {{1, 0}, {3, 2}});
    CHECK(!induced_iso_test(chi1, chi1b).isomorphic);
}
