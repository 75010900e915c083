#ifndef NILREP_REPRESENTATION_HPP
#define NILREP_REPRESENTATION_HPP

#include <optional>

#include "nilrep/matrix.hpp"
#include "nilrep/subgroup.hpp"

namespace nilrep {

// zeta_N^c as an element of Q(zeta_m), or nothing when it lies outside
std::optional<Cyclotomic> root_of_unity_in_field(long N, long c, long m);

// Finite-dimensional representation over Q(zeta_conductor): one invertible
// matrix per pc generator, validated against every relation on construction.
class Representation {
public:
    // dim_if_no_gens: dimension carried by representations of the trivial
    // (zero generator) presentation, where no matrices are stored
    Representation(PcPresentationPtr group, long conductor, std::vector<Matrix> matrices,
                   size_t dim_if_no_gens = 1);

    const PcPresentationPtr& group() const { return group_; }
    long conductor() const { return conductor_; }
    size_t dim() const { return dim_; }
    const std::vector<Matrix>& matrices() const { return matrices_; }

    Matrix evaluate(const GroupElement& g) const;

    Representation embed(long target_conductor) const;

    // trace of every group element in canonical order; equal vectors iff
    // isomorphic representations (characteristic zero)
    std::vector<Cyclotomic> character_values() const;

    bool is_one_dimensional() const { return dim_ == 1; }

private:
    PcPresentationPtr group_;
    long conductor_;
    size_t dim_;
    std::vector<Matrix> matrices_;
};

Representation direct_sum(const std::vector<Representation>& parts);

// trivial character of any group presentation
Representation trivial_rep(PcPresentationPtr p, long conductor);

// All characters (1-dimensional representations) over Q(zeta_conductor); the
// conductor must be divisible by the exponent of the abelianization.  Ordered
// lexicographically by the tuple of root-of-unity exponents.
std::vector<Representation> all_characters(PcPresentationPtr p, long conductor);

// A representation of a subgroup, packaged with the data needed to evaluate
// it on ambient group elements.
struct SubgroupRep {
    SubgroupPres sub;
    Representation rep;

    Matrix evaluate_ambient(const GroupElement& g_in_G) const {
        return rep.evaluate(sub.sift(g_in_G));
    }
};

// rho^g on H^g, defined by rho^g(g h g^-1) = rho(h)
SubgroupRep conjugate_rep(const SubgroupRep& rho, const GroupElement& g);

// restriction of an ambient representation to a subgroup
SubgroupRep restrict_to(const Representation& pi, const FiniteSubgroup& h);

// restriction of a subgroup representation to a smaller subgroup k <= h
SubgroupRep restrict_subrep(const SubgroupRep& rho, const FiniteSubgroup& k);

// restrictions landing on an existing presentation object, so Hom spaces can
// be formed against other representations on the same presentation
SubgroupRep restrict_onto(const Representation& pi, const SubgroupPres& target);
SubgroupRep restrict_onto(const SubgroupRep& rho, const SubgroupPres& target);

}  // namespace nilrep

#endif
