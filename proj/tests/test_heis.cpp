#include <doctest.h>

#include <random>
#include <set>

#include "nilrep/heis.hpp"

using namespace nilrep;

namespace {

std::mt19937_64 rng_for(const char* tag) {
    std::hash<std::string> h;
    return std::mt19937_64(h(tag));
}

HeisElement random_element(std::mt19937_64& rng, long span) {
    std::uniform_int_distribution<long> d(-span, span);
    return HeisElement{d(rng), d(rng), d(rng)};
}

CanonicalSubgroup random_subgroup(std::mt19937_64& rng, long span = 5) {
    std::uniform_int_distribution<long> count(1, 3);
    std::vector<HeisElement> gens;
    long n = count(rng);
    for (long i = 0; i < n; ++i) gens.push_back(random_element(rng, span));
    return canonicalize_subgroup(std::move(gens));
}

std::vector<HeisElement> box_elements(long span) {
    std::vector<HeisElement> out;
    for (long a = -span; a <= span; ++a)
        for (long b = -span; b <= span; ++b)
            for (long c = -span; c <= span; ++c) out.push_back(HeisElement{a, b, c});
    return out;
}

// words u^i v^j w^k within exponent bounds, as an independent membership oracle
std::set<std::array<long, 3>> word_image(const CanonicalSubgroup& h, long span) {
    std::set<std::array<long, 3>> out;
    for (long i = -span; i <= span; ++i)
        for (long j = -span; j <= span; ++j)
            for (long k = -span; k <= span; ++k) {
                HeisElement e{0, 0, 0};
                if (h.u) e = heis_multiply(e, heis_power(*h.u, i));
                if (h.v) e = heis_multiply(e, heis_power(*h.v, j));
                if (h.w) e = heis_multiply(e, heis_power(*h.w, k));
                out.insert({static_cast<long>(e.a), static_cast<long>(e.b),
                            static_cast<long>(e.c)});
            }
    return out;
}

}  // namespace

TEST_CASE("heisenberg product law") {
    HeisElement x = heis_x(), y = heis_y(), z = heis_z();
    CHECK(heis_multiply(x, y) == HeisElement{1, 1, 0});
    CHECK(heis_multiply(y, x) == HeisElement{1, 1, -1});
    // xy = z yx
    CHECK(heis_multiply(x, y) == heis_multiply(z, heis_multiply(y, x)));
    // x y x^{-1} = y z
    CHECK(heis_conjugate(x, y) == HeisElement{0, 1, 1});
    CHECK(heis_commutator(x, y) == z);

    auto rng = rng_for("assoc");
    for (int i = 0; i < 1000; ++i) {
        HeisElement g = random_element(rng, 8), h = random_element(rng, 8),
                    k = random_element(rng, 8);
        CHECK(heis_multiply(heis_multiply(g, h), k) == heis_multiply(g, heis_multiply(h, k)));
        CHECK(heis_multiply(g, heis_inverse(g)).is_identity());
    }
    for (int i = 0; i < 50; ++i) {
        HeisElement g = random_element(rng, 5);
        HeisElement acc{0, 0, 0};
        for (int n = 0; n <= 6; ++n) {
            CHECK(heis_power(g, n) == acc);
            acc = heis_multiply(acc, g);
        }
        CHECK(heis_power(g, -3) == heis_inverse(heis_power(g, 3)));
    }
}

TEST_CASE("canonicalization examples") {
    // <x, y> is the whole group: commutator closure forces z
    CanonicalSubgroup whole = canonicalize_subgroup({heis_x(), heis_y()});
    REQUIRE(whole.u);
    REQUIRE(whole.v);
    REQUIRE(whole.w);
    CHECK(*index_in_G(whole) == 1);
    CHECK(whole == whole_heis());

    // <x^2, y>: index 4 with w = z^2
    CanonicalSubgroup h = canonicalize_subgroup({heis_power(heis_x(), 2), heis_y()});
    CHECK(h.u == HeisElement{2, 0, 0});
    CHECK(h.v == HeisElement{0, 1, 0});
    CHECK(h.w == HeisElement{0, 0, 2});
    CHECK(*index_in_G(h) == 4);

    auto words = word_image(h, 4);
    for (const auto& e : box_elements(4)) {
        bool in_words = words.count({static_cast<long>(e.a), static_cast<long>(e.b),
                                     static_cast<long>(e.c)}) > 0;
        if (in_words) CHECK(membership(h, e));
        if (!membership(h, e)) CHECK(!in_words);
    }

    CanonicalSubgroup zc = canonicalize_subgroup({heis_power(heis_z(), 3)});
    CHECK(!zc.u);
    CHECK(!zc.v);
    CHECK(zc.w == HeisElement{0, 0, 3});
    CHECK(!index_in_G(zc).has_value());
}

TEST_CASE("canonicalization is idempotent with valid echelon invariants") {
    auto rng = rng_for("canon");
    for (int trial = 0; trial < 200; ++trial) {
        CanonicalSubgroup h = random_subgroup(rng);
        CHECK(canonicalize_subgroup(h.generators()) == h);
        for (const auto& g : h.generators()) CHECK(membership(h, g));
        if (h.u && h.v) {
            CHECK(h.u->b >= 0);
            CHECK(h.u->b < h.v->b);
        }
        if (h.w) {
            if (h.u) CHECK((h.u->c >= 0 && h.u->c < h.w->c));
            if (h.v) CHECK((h.v->c >= 0 && h.v->c < h.w->c));
        }
        if (h.u && h.v) {
            REQUIRE(h.w);
            CHECK((h.u->a * h.v->b) % h.w->c == 0);
        }
    }
}

TEST_CASE("subgroup index") {
    CanonicalSubgroup g = whole_heis();
    CanonicalSubgroup h = canonicalize_subgroup({heis_power(heis_x(), 2), heis_y()});
    CHECK(*subgroup_index(g, h) == 4);
    CanonicalSubgroup hh = canonicalize_subgroup(
        {heis_power(heis_x(), 4), heis_power(heis_y(), 3), heis_power(heis_z(), 12)});
    CHECK(*subgroup_index(h, hh) == 2 * 3 * 6);
    CanonicalSubgroup xz = canonicalize_subgroup({heis_x(), heis_z()});
    CHECK(!subgroup_index(g, xz).has_value());
    CHECK_THROWS_AS(subgroup_index(hh, h), ValidationError);
}

TEST_CASE("isolator examples") {
    CanonicalSubgroup h =
        canonicalize_subgroup({heis_power(heis_x(), 2), heis_y(), heis_z()});
    CHECK(isolator(h) == whole_heis());
    CHECK(isolator(whole_heis()) == whole_heis());

    // <x^2 y^4 z, z^3>: primitive u-part, full z-saturation
    CanonicalSubgroup k =
        canonicalize_subgroup({HeisElement{2, 4, 1}, heis_power(heis_z(), 3)});
    CanonicalSubgroup ks = isolator(k);
    REQUIRE(ks.u);
    CHECK(ks.u->a == 1);
    CHECK(ks.u->b == 2);
    REQUIRE(ks.w);
    CHECK(ks.w->c == 1);
    CHECK(!ks.v);
}

TEST_CASE("isolator properties on random subgroups") {
    auto rng = rng_for("isolator");
    int oracle_checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        CanonicalSubgroup h = random_subgroup(rng);
        CanonicalSubgroup star = isolator(h);
        CHECK(is_subgroup_of(h, star));
        CHECK(isolator(star) == star);
        auto idx = subgroup_index(star, h);
        REQUIRE(idx.has_value());
        CHECK(*idx >= 1);
        HeisElement g = random_element(rng, 4);
        CHECK(isolator(conjugate_subgroup_heis(h, g)) == conjugate_subgroup_heis(star, g));

        // each isolator generator really is a root of h
        for (const auto& gen : star.generators())
            CHECK(root_witness(h, gen, *idx + 2).has_value());
        // brute-force root closure stays inside the computed isolator
        if (trial < 50) {
            ++oracle_checked;
            for (const auto& e : box_elements(4)) {
                bool is_root = false;
                for (Integer n = 1; n <= 6 && !is_root; ++n)
                    if (membership(h, heis_power(e, n))) is_root = true;
                if (is_root) CHECK(membership(star, e));
            }
        }
    }
    CHECK(oracle_checked >= 50);
}

TEST_CASE("intersections against a box oracle, and isolator compatibility") {
    auto rng = rng_for("intersect-star");
    for (int trial = 0; trial < 100; ++trial) {
        CanonicalSubgroup h1 = random_subgroup(rng, 4);
        CanonicalSubgroup h2 = random_subgroup(rng, 4);
        CanonicalSubgroup meet = intersect_heis(h1, h2);
        CHECK(is_subgroup_of(meet, h1));
        CHECK(is_subgroup_of(meet, h2));
        for (const auto& e : box_elements(3)) {
            bool both = membership(h1, e) && membership(h2, e);
            CHECK(both == membership(meet, e));
        }
        CHECK(isolator(meet) == intersect_heis(isolator(h1), isolator(h2)));
    }
}

TEST_CASE("normalizer congruences and S(H)") {
    CanonicalSubgroup xz = canonicalize_subgroup({heis_x(), heis_z()});
    CHECK(normalizer_heis(xz) == whole_heis());
    CHECK(s_set(xz) == whole_heis());

    CanonicalSubgroup h2 =
        canonicalize_subgroup({heis_power(heis_x(), 2), heis_power(heis_z(), 2)});
    CanonicalSubgroup n2 = normalizer_heis(h2);
    CanonicalSubgroup s2 = s_set(h2);
    CHECK(is_subgroup_of(n2, s2));
    CHECK(subgroup_index(s2, n2).has_value());

    // <x^2, y> has an index-2 normalizer but S(H) = G
    CanonicalSubgroup h3 = canonicalize_subgroup({heis_power(heis_x(), 2), heis_y()});
    CanonicalSubgroup n3 = normalizer_heis(h3);
    CHECK(*subgroup_index(whole_heis(), n3) == 2);
    CHECK(s_set(h3) == whole_heis());

    auto rng = rng_for("normalizer");
    for (int trial = 0; trial < 100; ++trial) {
        CanonicalSubgroup h = random_subgroup(rng, 4);
        CanonicalSubgroup n = normalizer_heis(h);
        CanonicalSubgroup s = s_set(h);
        for (const auto& g : box_elements(2)) {
            bool normalizes = conjugate_subgroup_heis(h, g) == h;
            CHECK(normalizes == membership(n, g));
        }
        CHECK(is_subgroup_of(h, n));
        CHECK(is_subgroup_of(n, s));
        CHECK(subgroup_index(s, n).has_value());

        std::vector<HeisElement> smaller;
        if (h.u) smaller.push_back(heis_power(*h.u, 2));
        if (h.v) smaller.push_back(heis_power(*h.v, 3));
        if (h.w) smaller.push_back(heis_power(*h.w, 2));
        if (!smaller.empty()) {
            CanonicalSubgroup hs = canonicalize_subgroup(std::move(smaller));
            if (subgroup_index(h, hs).has_value()) CHECK(s_set(hs) == s);
        }
    }
}

TEST_CASE("torsion-free rank") {
    CHECK(torsion_free_rank(whole_heis()) == 3);
    CHECK(torsion_free_rank(CanonicalSubgroup{}) == 0);
    CHECK(torsion_free_rank(canonicalize_subgroup({heis_x(), heis_z()})) == 2);
}

TEST_CASE("core intersection") {
    CanonicalSubgroup h = canonicalize_subgroup({heis_power(heis_x(), 2), heis_y()});
    CanonicalSubgroup core = core_intersection(h);
    CHECK(is_subgroup_of(core, h));
    CHECK(subgroup_index(h, core).has_value());
    CHECK(normalizer_heis(core) == whole_heis());
}

TEST_CASE("subgroup literal parsing") {
    auto gens = parse_heis_generators("x^2*y^0*z^1, z^3");
    REQUIRE(gens.size() == 2);
    CHECK(gens[0] == HeisElement{2, 0, 1});
    CHECK(gens[1] == HeisElement{0, 0, 3});
    CHECK_THROWS_AS(parse_heis_generators("q^2"), ValidationError);
}
