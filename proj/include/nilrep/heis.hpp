#ifndef NILREP_HEIS_HPP
#define NILREP_HEIS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nilrep/rational.hpp"

namespace nilrep {

// The discrete Heisenberg group over Z.  Elements are written x^a y^b z^c in
// normal form; the single defining relation xy = z yx yields the product law
//   (a,b,c) (a',b',c') = (a+a', b+b', c+c'-a'b).
struct HeisElement {
    Integer a, b, c;

    bool operator==(const HeisElement& o) const = default;
    bool is_identity() const { return a == 0 && b == 0 && c == 0; }
};

HeisElement heis_multiply(const HeisElement& g, const HeisElement& h);
HeisElement heis_inverse(const HeisElement& g);
HeisElement heis_power(const HeisElement& g, const Integer& n);
// g h g^{-1} = (h.a, h.b, h.c + g.a h.b - g.b h.a)
HeisElement heis_conjugate(const HeisElement& g, const HeisElement& h);
HeisElement heis_commutator(const HeisElement& g, const HeisElement& h);

inline HeisElement heis_x() { return {1, 0, 0}; }
inline HeisElement heis_y() { return {0, 1, 0}; }
inline HeisElement heis_z() { return {0, 0, 1}; }

struct Vec2 {
    Integer x, y;
    bool operator==(const Vec2& o) const = default;
    bool is_zero() const { return x == 0 && y == 0; }
};

// Sublattice of Z^2 in Hermite echelon form: basis[0] = (a, b) with a > 0,
// basis[1] = (0, d) with d > 0 and 0 <= b < d when both are present; a
// rank-one lattice keeps a single normalized generator.
struct Lattice2 {
    std::vector<Vec2> basis;

    static Lattice2 from_generators(std::vector<Vec2> gens);
    static Lattice2 full();

    size_t rank() const { return basis.size(); }
    bool contains(const Vec2& v) const;
    // coefficients t with v = sum t_i basis_i, when v lies in the lattice
    std::optional<std::vector<Integer>> coordinates(const Vec2& v) const;
    Lattice2 intersect(const Lattice2& o) const;
    Lattice2 sum(const Lattice2& o) const;
    // smallest lattice containing this one whose quotient in its rational
    // span is free: Z^2 for rank two, the primitive direction for rank one
    Lattice2 saturate() const;
    // index of a sublattice inside this lattice; nullopt when infinite
    std::optional<Integer> index_of(const Lattice2& sub) const;
    // refine by the congruence alpha*x + beta*y = 0 (mod modulus);
    // modulus = 0 means an exact equation
    Lattice2 refine_congruence(const Integer& alpha, const Integer& beta,
                               const Integer& modulus) const;
    bool operator==(const Lattice2& o) const { return basis == o.basis; }
};

// Affine sublattice of Z^2 (offset + span), used to solve the linear
// congruence systems showing up in the conjugation searches.
struct AffineLat2 {
    bool empty = false;
    Vec2 offset{0, 0};
    Lattice2 span = Lattice2::full();

    // impose alpha*x + beta*y + gamma = 0 (mod modulus); modulus 0 is exact
    AffineLat2 refine(const Integer& alpha, const Integer& beta, const Integer& gamma,
                      const Integer& modulus) const;
    std::vector<Vec2> representatives_mod(const Lattice2& sub, size_t cap) const;
};

// Subgroup of Heis(Z) in echelon form:
//   u = x^a y^b z^c with a > 0, v = y^b z^c with b > 0, w = z^c with c > 0,
// each optional, cross entries reduced, [u, v] forced into <w>.
struct CanonicalSubgroup {
    std::optional<HeisElement> u, v, w;

    bool operator==(const CanonicalSubgroup& o) const = default;
    bool is_trivial() const { return !u && !v && !w; }
    size_t rank() const { return (u ? 1 : 0) + (v ? 1 : 0) + (w ? 1 : 0); }
    std::vector<HeisElement> generators() const;
    Lattice2 image_lattice() const;
    Integer central_modulus() const { return w ? w->c : Integer(0); }
};

CanonicalSubgroup canonicalize_subgroup(std::vector<HeisElement> gens);
bool membership(const CanonicalSubgroup& h, const HeisElement& g);
// coordinates (alpha, beta, gamma) with g = u^alpha v^beta w^gamma
std::optional<std::array<Integer, 3>> sift(const CanonicalSubgroup& h, const HeisElement& g);
std::optional<Integer> index_in_G(const CanonicalSubgroup& h);
// [A : B] for B <= A; nullopt when infinite; throws when B is not inside A
std::optional<Integer> subgroup_index(const CanonicalSubgroup& a, const CanonicalSubgroup& b);
bool is_subgroup_of(const CanonicalSubgroup& inner, const CanonicalSubgroup& outer);

CanonicalSubgroup conjugate_subgroup_heis(const CanonicalSubgroup& h, const HeisElement& g);
CanonicalSubgroup whole_heis();

int torsion_free_rank(const CanonicalSubgroup& h);

// smallest root-closed subgroup containing h
CanonicalSubgroup isolator(const CanonicalSubgroup& h);
// smallest n >= 1 with g^n in h, scanning up to bound; nullopt when none
std::optional<Integer> root_witness(const CanonicalSubgroup& h, const HeisElement& g,
                                    const Integer& bound);

CanonicalSubgroup normalizer_heis(const CanonicalSubgroup& h);
// S(h) = normalizer of the isolator
CanonicalSubgroup s_set(const CanonicalSubgroup& h);

CanonicalSubgroup intersect_heis(const CanonicalSubgroup& h1, const CanonicalSubgroup& h2);

// intersection of the conjugates h^g over g in S(h)
CanonicalSubgroup core_intersection(const CanonicalSubgroup& h);

std::string heis_str(const HeisElement& g);
std::string subgroup_str(const CanonicalSubgroup& h);

// parse "x^2*y^0*z^1, z^3" into a generator list
std::vector<HeisElement> parse_heis_generators(const std::string& text);

}  // namespace nilrep

#endif
