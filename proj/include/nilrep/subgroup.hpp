#ifndef NILREP_SUBGROUP_HPP
#define NILREP_SUBGROUP_HPP

#include <optional>

#include "nilrep/pc_group.hpp"

namespace nilrep {

// Subgroup of a finite pc group, held as a canonically ordered element list
// (lexicographic on exponent vectors), so equality is plain set comparison.
struct FiniteSubgroup {
    PcPresentationPtr group;
    std::vector<GroupElement> generators;
    std::vector<GroupElement> elements;  // sorted, closed, contains identity

    size_t order() const { return elements.size(); }
    bool contains(const GroupElement& g) const;
    bool operator==(const FiniteSubgroup& o) const { return elements == o.elements; }
    bool operator!=(const FiniteSubgroup& o) const { return !(*this == o); }
    bool is_subgroup_of(const FiniteSubgroup& o) const;
};

FiniteSubgroup subgroup_closure(PcPresentationPtr p, std::vector<GroupElement> gens);
FiniteSubgroup whole_group(PcPresentationPtr p);
FiniteSubgroup trivial_subgroup(PcPresentationPtr p);

FiniteSubgroup conjugate_subgroup(const FiniteSubgroup& h, const GroupElement& g);
FiniteSubgroup normalizer(const FiniteSubgroup& h);
FiniteSubgroup centralizer(const FiniteSubgroup& h);
FiniteSubgroup center(PcPresentationPtr p);
FiniteSubgroup intersect(const FiniteSubgroup& a, const FiniteSubgroup& b);
bool is_normal(const FiniteSubgroup& h);
bool are_conjugate(const FiniteSubgroup& a, const FiniteSubgroup& b);

// representatives (lex-least element per class) partitioning G into h1 g h2
std::vector<GroupElement> double_cosets(const FiniteSubgroup& h1, const FiniteSubgroup& h2);

// right coset representatives of H\G, lex-least per coset, identity first
std::vector<GroupElement> right_coset_reps(const FiniteSubgroup& h);

std::vector<FiniteSubgroup> lower_central_series(PcPresentationPtr p);

// chain G = G_0 >= ... >= G_n = H with each term normal in the previous one,
// built from G_i = <H, gamma_i(G)>; consecutive duplicates removed
std::vector<FiniteSubgroup> normal_chain(PcPresentationPtr p, const FiniteSubgroup& h);

// abelian normal subgroup not contained in the center: <Z(G), w> for the first
// non-central w (canonical order) of the deepest lower-central term not inside
// the center; throws for abelian G
FiniteSubgroup find_abelian_normal_noncentral(PcPresentationPtr p);

// every subgroup, ordered by (order, element list)
std::vector<FiniteSubgroup> all_subgroups(PcPresentationPtr p);

// Polycyclic generating sequence for a subgroup, with its own presentation.
// pc_gens[k] is the G-element realizing the k-th subgroup generator.
struct SubgroupPres {
    FiniteSubgroup sub;
    PcPresentationPtr pres;
    std::vector<GroupElement> pc_gens;
    std::vector<size_t> levels;  // ambient level of each pc generator

    // coordinates of g in the generating sequence; throws if g not in sub
    GroupElement sift(const GroupElement& g) const;
    // G-element of a subgroup normal form
    GroupElement lift(const GroupElement& coords) const;
};

SubgroupPres induced_presentation(const FiniteSubgroup& h);

// direct product with blockwise presentation
PcPresentationPtr direct_product(PcPresentationPtr a, PcPresentationPtr b);

}  // namespace nilrep

#endif
