#include <doctest.h>

#include <random>

#include "nilrep/cyclotomic.hpp"
#include "nilrep/matrix.hpp"

using namespace nilrep;

namespace {

Cyclotomic zeta(long n, long k = 1) { return Cyclotomic::root_of_unity(n, k); }

Cyclotomic random_cyclotomic(std::mt19937_64& rng, long n) {
    std::uniform_int_distribution<long> num(-5, 5);
    std::uniform_int_distribution<long> den(1, 4);
    Cyclotomic acc(Rational(0), n);
    for (long k = 0; k < Cyclotomic::phi(n); ++k) {
        Rational c(num(rng), den(rng));
        acc += Cyclotomic(c, n) * zeta(n, k);
    }
    return acc;
}

}  // namespace

TEST_CASE("rational parse/print round trip") {
    CHECK(to_string(parse_rational("3/2")) == "3/2");
    CHECK(to_string(parse_rational("-6/4")) == "-3/2");
    CHECK(to_string(parse_rational("7")) == "7");
    CHECK_THROWS(parse_rational("x"));
    CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("cyclotomic arithmetic on roots of unity") {
    // i^2 = -1
    CHECK(zeta(4) * zeta(4) == Cyclotomic(Rational(-1), 4));
    // zeta_8^2 is the image of zeta_4 in Q(zeta_8)
    CHECK(zeta(8) * zeta(8) == zeta(4).embed(8));
    // 1 + zeta_3 + zeta_3^2 = 0
    CHECK((Cyclotomic(Rational(1), 3) + zeta(3) + zeta(3, 2)).is_zero());
    CHECK_THROWS_AS(zeta(4) + zeta(8), ValidationError);
}

TEST_CASE("cyclotomic inverse") {
    CHECK(Cyclotomic(Rational(2), 1).inverse() == Cyclotomic(Rational(1, 2), 1));
    for (long n : {3L, 5L, 8L, 12L})
        CHECK(zeta(n).inverse() == zeta(n, n - 1));
    // (1 + i)^-1 = (1 - i)/2, checked through the product
    Cyclotomic a = Cyclotomic(Rational(1), 4) + zeta(4);
    Cyclotomic inv = a.inverse();
    CHECK(inv == (Cyclotomic(Rational(1), 4) - zeta(4)) * Cyclotomic(Rational(1, 2), 4));
    CHECK(a * inv == Cyclotomic(Rational(1), 4));
    CHECK_THROWS_AS(Cyclotomic(Rational(0), 4).inverse(), ValidationError);
}

TEST_CASE("galois action") {
    CHECK(zeta(8).galois(3) == zeta(8, 3));
    CHECK(Cyclotomic(Rational(5, 7), 8).galois(3) == Cyclotomic(Rational(5, 7), 8));
    // zeta_8 + zeta_8^-1 is fixed by complex conjugation
    Cyclotomic real_part = zeta(8) + zeta(8, 7);
    CHECK(real_part.galois(7) == real_part);
    CHECK_THROWS_AS(zeta(8).galois(2), ValidationError);
}

TEST_CASE("embedding is a field homomorphism") {
    CHECK(zeta(4).embed(8) == zeta(8, 2));
    CHECK(Cyclotomic(Rational(3, 2), 1).embed(8) == Cyclotomic(Rational(3, 2), 8));
    CHECK_THROWS_AS(zeta(3).embed(8), ValidationError);

    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        Cyclotomic x = random_cyclotomic(rng, 6);
        Cyclotomic y = random_cyclotomic(rng, 6);
        CHECK((x * y).embed(12) == x.embed(12) * y.embed(12));
        CHECK((x + y).embed(12) == x.embed(12) + y.embed(12));
    }
}

TEST_CASE("embed then project back recovers the element") {
    // embedding of Q(zeta_6) in Q(zeta_12) is injective linear algebra over Q;
    // solve the linear system to project back
    std::mt19937_64 rng(7);
    long n = 6, N = 12;
    long dn = Cyclotomic::phi(n), dN = Cyclotomic::phi(N);
    for (int trial = 0; trial < 20; ++trial) {
        Cyclotomic x = random_cyclotomic(rng, n);
        Cyclotomic y = x.embed(N);
        // matrix of the embedding on the power basis
        Matrix emb(static_cast<size_t>(dN), static_cast<size_t>(dn), 1);
        for (long k = 0; k < dn; ++k) {
            Cyclotomic img = zeta(n, k).embed(N);
            for (long r = 0; r < dN; ++r)
                emb.at(static_cast<size_t>(r), static_cast<size_t>(k)) =
                    Cyclotomic(img.coeffs()[static_cast<size_t>(r)], 1);
        }
        // solve emb * c = y by augmenting and eliminating: use nullspace of
        // [emb | -y] restricted to last coordinate 1
        Matrix aug(static_cast<size_t>(dN), static_cast<size_t>(dn) + 1, 1);
        for (long r = 0; r < dN; ++r) {
            for (long k = 0; k < dn; ++k)
                aug.at(static_cast<size_t>(r), static_cast<size_t>(k)) =
                    emb.at(static_cast<size_t>(r), static_cast<size_t>(k));
            aug.at(static_cast<size_t>(r), static_cast<size_t>(dn)) =
                Cyclotomic(-y.coeffs()[static_cast<size_t>(r)], 1);
        }
        auto basis = nullspace(aug);
        REQUIRE(basis.size() == 1);
        const auto& v = basis[0];
        REQUIRE(v[static_cast<size_t>(dn)] == Cyclotomic(Rational(1), 1));
        for (long k = 0; k < dn; ++k)
            CHECK(v[static_cast<size_t>(k)].rational_value() ==
                  x.coeffs()[static_cast<size_t>(k)]);
    }
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(2024);
    for (long n : {5L, 8L, 12L}) {
        for (int trial = 0; trial < 15; ++trial) {
            Cyclotomic a = random_cyclotomic(rng, n);
            Cyclotomic b = random_cyclotomic(rng, n);
            Cyclotomic c = random_cyclotomic(rng, n);
            CHECK((a * b) * c == a * (b * c));
            CHECK((a + b) + c == a + (b + c));
            CHECK(a * (b + c) == a * b + a * c);
            if (!a.is_zero()) CHECK(a * a.inverse() == Cyclotomic(Rational(1), n));
        }
    }
}

TEST_CASE("galois composition law") {
    std::mt19937_64 rng(99);
    long n = 12;
    for (long a : {1L, 5L, 7L, 11L})
        for (long b : {1L, 5L, 7L, 11L}) {
            Cyclotomic x = random_cyclotomic(rng, n);
            CHECK(x.galois(a).galois(b) == x.galois((a * b) % n));
        }
}

TEST_CASE("matrix inverse and nullspace basics") {
    Matrix m(2, 2, 4);
    m.at(0, 0) = Cyclotomic(Rational(1), 4);
    m.at(0, 1) = zeta(4);
    m.at(1, 0) = Cyclotomic(Rational(2), 4);
    m.at(1, 1) = Cyclotomic(Rational(1), 4);
    Matrix inv = m.inverse();
    CHECK(m * inv == Matrix::identity(2, 4));
    CHECK(rank_of(m) == 2);

    Matrix sing(2, 2, 4);
    sing.at(0, 0) = Cyclotomic(Rational(1), 4);
    sing.at(0, 1) = zeta(4);
    sing.at(1, 0) = zeta(4);
    sing.at(1, 1) = Cyclotomic(Rational(-1), 4);  // second row = i * first
    CHECK(rank_of(sing) == 1);
    auto ns = nullspace(sing);
    REQUIRE(ns.size() == 1);
    // M v = 0
    Cyclotomic r0 = sing.at(0, 0) * ns[0][0] + sing.at(0, 1) * ns[0][1];
    CHECK(r0.is_zero());
}
