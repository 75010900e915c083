#include <doctest.h>

#include <nlohmann/json.hpp>
#include <random>
#include <set>

#include "nilrep/presets.hpp"
#include "nilrep/subgroup.hpp"

using namespace nilrep;

namespace {

GroupElement random_element(std::mt19937_64& rng, const PcPresentation& p) {
    GroupElement g(p.ngens(), 0);
    for (size_t i = 0; i < p.ngens(); ++i)
        g[i] = static_cast<long>(rng() % static_cast<unsigned long>(p.relative_orders()[i]));
    return g;
}

}  // namespace

TEST_CASE("heis_mod:3 collection matches the defining relation") {
    auto p = heisenberg_mod(3);
    GroupElement x = p->generator(0), y = p->generator(1), z = p->generator(2);
    // xy is already in normal form
    CHECK(p->multiply(x, y) == GroupElement{1, 1, 0});
    // yx = x y z^{-1}, and z^{-1} = z^2 mod 3
    CHECK(p->multiply(y, x) == GroupElement{1, 1, 2});
    // x y x^{-1} = y z
    CHECK(p->conjugate(x, y) == GroupElement{0, 1, 1});
    CHECK(p->multiply(p->multiply(x, y), p->inverse(p->multiply(y, x))) == z);
}

TEST_CASE("random inverses and associativity") {
    std::mt19937_64 rng(5);
    for (const char* name : {"heis_mod:3", "heis_mod:4", "cyclic:8",
                             "product:cyclic:2,heis_mod:2"}) {
        auto p = preset_group(name);
        for (int i = 0; i < 100; ++i) {
            GroupElement a = random_element(rng, *p);
            CHECK(p->is_identity(p->multiply(a, p->inverse(a))));
        }
        for (int i = 0; i < 1000; ++i) {
            GroupElement a = random_element(rng, *p);
            GroupElement b = random_element(rng, *p);
            GroupElement c = random_element(rng, *p);
            CHECK(p->multiply(p->multiply(a, b), c) == p->multiply(a, p->multiply(b, c)));
        }
    }
}

TEST_CASE("preset presentations pass the brute-force consistency check") {
    for (const char* name :
         {"cyclic:8", "heis_mod:2", "heis_mod:3", "heis_mod:5", "product:cyclic:4,cyclic:4"})
        CHECK_NOTHROW(preset_group(name)->check_consistency());
}

TEST_CASE("malformed exponent vectors are rejected") {
    auto p = heisenberg_mod(3);
    CHECK_THROWS_AS(p->multiply(GroupElement{0, 0}, p->identity()), ValidationError);
    CHECK_THROWS_AS(p->multiply(GroupElement{0, 0, 3}, p->identity()), ValidationError);
}

TEST_CASE("subgroup closure") {
    auto p = heisenberg_mod(3);
    GroupElement x = p->generator(0), z = p->generator(2);

    FiniteSubgroup h1 = subgroup_closure(p, {x, z});
    CHECK(h1.order() == 9);

    CHECK(subgroup_closure(p, {}).order() == 1);

    for (long n : {2L, 3L, 4L}) {
        auto q = heisenberg_mod(n);
        FiniteSubgroup whole = subgroup_closure(q, {q->generator(0), q->generator(1)});
        CHECK(Integer(whole.order()) == q->order());
    }
}

TEST_CASE("normalizer, center, double cosets") {
    auto p = heisenberg_mod(3);
    GroupElement x = p->generator(0), y = p->generator(1), z = p->generator(2);
    FiniteSubgroup h1 = subgroup_closure(p, {x, z});
    FiniteSubgroup h2 = subgroup_closure(p, {y, z});

    // H1 is normal, so its normalizer is the whole group
    CHECK(normalizer(h1).order() == 27);
    CHECK(is_normal(h1));

    for (long n : {2L, 3L, 5L}) {
        auto q = heisenberg_mod(n);
        FiniteSubgroup zc = center(q);
        CHECK(Integer(zc.order()) == Integer(n));
        CHECK(zc.contains(q->generator(2)));
    }

    // one double coset since H1 H2 = G
    CHECK(double_cosets(h1, h2).size() == 1);
    for (long n : {2L, 4L}) {
        auto q = heisenberg_mod(n);
        FiniteSubgroup a = subgroup_closure(q, {q->generator(0), q->generator(2)});
        FiniteSubgroup b = subgroup_closure(q, {q->generator(1), q->generator(2)});
        CHECK(double_cosets(a, b).size() == 1);
    }

    // partition property on a small pair in heis_mod:2
    auto q = heisenberg_mod(2);
    FiniteSubgroup a = subgroup_closure(q, {q->generator(0)});
    FiniteSubgroup b = subgroup_closure(q, {q->generator(1)});
    auto reps = double_cosets(a, b);
    size_t covered = 0;
    for (const auto& g : reps) {
        std::set<GroupElement> coset;
        for (const auto& u : a.elements)
            for (const auto& v : b.elements)
                coset.insert(q->multiply(q->multiply(u, g), v));
        covered += coset.size();
    }
    CHECK(covered == 8);
}

TEST_CASE("lower central series") {
    auto p = heisenberg_mod(3);
    auto series = lower_central_series(p);
    REQUIRE(series.size() == 3);
    CHECK(series[0].order() == 27);
    CHECK(series[1].order() == 3);
    CHECK(series[1].contains(p->generator(2)));
    CHECK(series[2].order() == 1);

    auto c8 = cyclic_group(8);
    auto abelian_series = lower_central_series(c8);
    REQUIRE(abelian_series.size() == 2);
    CHECK(abelian_series[0].order() == 8);
    CHECK(abelian_series[1].order() == 1);

    for (const char* name : {"heis_mod:2", "heis_mod:4", "product:cyclic:2,heis_mod:3"}) {
        auto q = preset_group(name);
        auto s = lower_central_series(q);
        CHECK(s.size() <= q->ngens() + 1);
        for (size_t i = 0; i + 1 < s.size(); ++i) {
            CHECK(s[i + 1].is_subgroup_of(s[i]));
            CHECK(is_normal(s[i]));
        }
    }
}

TEST_CASE("normal chain from the lower central series") {
    auto p2 = heisenberg_mod(2);
    FiniteSubgroup hx = subgroup_closure(p2, {p2->generator(0)});
    auto chain = normal_chain(p2, hx);
    CHECK(chain.size() <= 3);
    CHECK(chain.front().order() == 8);
    CHECK(chain.back() == hx);
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
        CHECK(chain[i + 1].is_subgroup_of(chain[i]));
        // stepwise normality by direct conjugation
        for (const auto& g : chain[i].elements)
            for (const auto& h : chain[i + 1].elements)
                CHECK(chain[i + 1].contains(p2->conjugate(g, h)));
    }

    auto p3 = heisenberg_mod(3);
    auto whole_chain = normal_chain(p3, whole_group(p3));
    CHECK(whole_chain.size() == 1);

    auto c8 = cyclic_group(8);
    auto triv_chain = normal_chain(c8, trivial_subgroup(c8));
    REQUIRE(triv_chain.size() == 2);
    CHECK(triv_chain[0].order() == 8);
    CHECK(triv_chain[1].order() == 1);
}

TEST_CASE("abelian normal non-central subgroup") {
    auto p3 = heisenberg_mod(3);
    FiniteSubgroup e3 = find_abelian_normal_noncentral(p3);
    CHECK(e3.order() == 9);
    FiniteSubgroup z3 = center(p3);
    CHECK(is_normal(e3));
    CHECK(!e3.is_subgroup_of(z3));
    for (const auto& a : e3.elements)
        for (const auto& b : e3.elements)
            CHECK(p3->multiply(a, b) == p3->multiply(b, a));

    CHECK_THROWS_AS(find_abelian_normal_noncentral(cyclic_group(8)), ValidationError);

    auto p2 = heisenberg_mod(2);
    FiniteSubgroup e2 = find_abelian_normal_noncentral(p2);
    CHECK(e2.order() == 4);
    CHECK(center(p2).is_subgroup_of(e2));
    CHECK(is_normal(e2));
}

TEST_CASE("induced presentation of a subgroup") {
    auto p = heisenberg_mod(3);
    FiniteSubgroup h = subgroup_closure(p, {p->generator(0), p->generator(2)});
    SubgroupPres sp = induced_presentation(h);
    CHECK(sp.pres->order() == 9);
    CHECK(sp.pc_gens.size() == 2);
    CHECK_NOTHROW(sp.pres->check_consistency());
    for (const auto& e : h.elements) {
        GroupElement coords = sp.sift(e);
        CHECK(sp.lift(coords) == e);
        sp.pres->validate_element(coords);
    }
    CHECK_THROWS_AS(sp.sift(p->generator(1)), ValidationError);

    // a subgroup with a non-trivial power word: <xy> in heis_mod:2 has order 4
    auto q = heisenberg_mod(2);
    FiniteSubgroup cyc = subgroup_closure(q, {q->multiply(q->generator(0), q->generator(1))});
    CHECK(cyc.order() == 4);
    SubgroupPres spc = induced_presentation(cyc);
    CHECK(spc.pres->order() == 4);
    CHECK_NOTHROW(spc.pres->check_consistency());
}

TEST_CASE("all subgroups enumeration") {
    auto p3 = heisenberg_mod(3);
    // extraspecial 3^{1+2} of exponent 3: 1 + 1 + 12 + 4 + 1 subgroups
    CHECK(all_subgroups(p3).size() == 19);

    auto p2 = heisenberg_mod(2);
    // D4 has 10 subgroups
    CHECK(all_subgroups(p2).size() == 10);
}

TEST_CASE("conjugacy of subgroups") {
    auto p = heisenberg_mod(3);
    FiniteSubgroup hx = subgroup_closure(p, {p->generator(0)});
    CHECK(are_conjugate(hx, conjugate_subgroup(hx, p->generator(1))));
    FiniteSubgroup h1 = subgroup_closure(p, {p->generator(0), p->generator(2)});
    FiniteSubgroup h2 = subgroup_closure(p, {p->generator(1), p->generator(2)});
    CHECK(!are_conjugate(h1, h2));
}

TEST_CASE("presentation JSON round trip") {
    auto p = heisenberg_mod(4);
    nlohmann::json j = presentation_to_json(*p);
    auto q = presentation_from_json(j);
    CHECK(q->order() == p->order());
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        GroupElement a = random_element(rng, *p);
        GroupElement b = random_element(rng, *p);
        CHECK(p->multiply(a, b) == q->multiply(a, b));
    }
}

TEST_CASE("enumeration budget is enforced") {
    // 64^3 = 262144 > default budget
    std::map<std::pair<size_t, size_t>, GroupElement> conjs;
    CHECK_THROWS_AS(PcPresentation({64, 64, 64}, {}, conjs, "too-big"),
                    ResourceBudgetError);
}

TEST_CASE("inconsistent presentation is detected") {
    // orders (2,3,2) with g1 g2 g1^-1 = g2 g3: conjugation by g1 does not
    // preserve g2^3 = 1, so the presentation collapses
    std::map<std::pair<size_t, size_t>, GroupElement> conjs;
    conjs[{0, 1}] = GroupElement{0, 1, 1};
    PcPresentation p({2, 3, 2}, {}, conjs, "bad");
    CHECK_THROWS_AS(p.check_consistency(), ValidationError);

    // the same shape over (2,2,2) is the consistent presentation of D4
    PcPresentation good({2, 2, 2}, {}, conjs, "d4");
    CHECK_NOTHROW(good.check_consistency());
}
