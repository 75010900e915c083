#ifndef NILREP_REP_OPS_HPP
#define NILREP_REP_OPS_HPP

#include "nilrep/representation.hpp"

namespace nilrep {

// Basis of { T : T rho1(g) = rho2(g) T for all g }, matrices of shape
// dim(rho2) x dim(rho1).  Both representations must live on the same
// presentation object and field.
struct HomSpace {
    std::vector<Matrix> basis;
    size_t dim() const { return basis.size(); }
};

HomSpace hom_space(const Representation& rho1, const Representation& rho2);

inline size_t end_dim_direct(const Representation& rho) {
    return hom_space(rho, rho).dim();
}

// Finitely induced representation with its coset bookkeeping.
struct InducedRep {
    SubgroupRep base;
    std::vector<GroupElement> coset_reps;  // right cosets H t, identity first
    Representation total;
};

InducedRep induce(const SubgroupRep& rho);

// End dimension of ind_H^G(rho) via the double-coset sum of intertwiner
// dimensions over H^g cap H (for finite groups S(H) is all of G).
size_t end_via_mackey(const SubgroupRep& rho);

// Restriction of ind_{H2}^G(rho) to H1 as a double-coset direct sum; the
// certificate is an explicit invertible intertwiner against the directly
// restricted representation.
struct MackeySummand {
    GroupElement coset_rep;
    size_t intersection_order;
    size_t dim;  // [H1 : H2^g cap H1] * dim(rho)
};
struct MackeyReport {
    std::vector<MackeySummand> summands;
    size_t total_dim;
    bool dims_match;
    Matrix change_of_basis;  // invertible intertwiner restricted -> direct sum
};

MackeyReport mackey_decompose(const FiniteSubgroup& h1, const SubgroupRep& rho);

// S(H, rho): double-coset representatives g with a nonzero intertwiner
// rho -> rho^g over H^g cap H, together with the full element set.
struct SSetResult {
    std::vector<GroupElement> coset_reps;  // members of S(H, rho)
    std::vector<GroupElement> element_set;
    bool is_subgroup;
    bool h_normal_in_s;
};

SSetResult s_set_rho(const SubgroupRep& rho);
bool is_perfect_pair(const SubgroupRep& rho);

// Irreducibility over Q(zeta_cond).  Supported regimes:
//  - splitting: exponent(G) divides the conductor  ->  end dimension 1 test
//  - abelian G over any cyclotomic field           ->  Galois orbit analysis
// Anything else raises UnsupportedRegimeError.
struct IrreducibilityResult {
    bool irreducible;
    std::string regime;  // "splitting" or "abelian"
    size_t end_dim;      // filled in the splitting regime
    std::vector<std::vector<long>> orbit;  // character exponent tuples (abelian)
};

IrreducibilityResult is_irreducible(const Representation& pi);

// Basis of the rho-isotypic subspace of pi|_H (column vectors), H normal in
// the group of pi recommended; verified F-invariant when requested.
std::vector<std::vector<Cyclotomic>> isotypic_subspace(const Representation& pi,
                                                       const SubgroupRep& rho);

// Monomialization of an irreducible representation over a splitting field:
// a weight pair (H, chi) with ind_H^G(chi) isomorphic to pi, plus the
// invertible intertwiner as the witness.
struct MonomialData {
    SubgroupRep chi;       // one-dimensional
    Matrix intertwiner;    // ind_H^G(chi) -> pi, invertible
    InducedRep induced;
};

MonomialData monomialize(const Representation& pi);

// Isomorphism test for certified-irreducible induced representations.
struct InducedIsoResult {
    bool isomorphic;
    GroupElement witness_g;
    Matrix witness_intertwiner;  // nonzero element of Hom over H2^g cap H1
};

InducedIsoResult induced_iso_test(const SubgroupRep& rho1, const SubgroupRep& rho2);

// Exhaustive list of the irreducible representations over a splitting field,
// built from weight pairs (H, chi) with S(H, chi) = H; checked complete by
// the sum of squared dimensions.
struct IrreducibleEntry {
    SubgroupRep chi;
    InducedRep induced;
};

std::vector<IrreducibleEntry> all_irreducibles(PcPresentationPtr p, long conductor);

}  // namespace nilrep

#endif
