#ifndef NILREP_PC_GROUP_HPP
#define NILREP_PC_GROUP_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "nilrep/rational.hpp"

namespace nilrep {

// Exponent-vector normal form: entry i lies in [0, relative_orders[i]).
using GroupElement = std::vector<long>;

// Finite nilpotent group given by a power-commutator presentation.
//
// Relations stored as normal-form words:
//   g_i^{e_i}        = power_rel[i]          (word in generators of index > i)
//   g_i g_j g_i^{-1} = conj_rel[i][j]        (i < j, word of shape g_j * tail,
//                                             tail in generators of index > j)
//
// The shape constraints force every commutator [g_i, g_j] down the chain
// G_k = <g_k, ..., g_n>, so any presentation accepted here is nilpotent.
class PcPresentation {
public:
    PcPresentation(std::vector<long> relative_orders,
                   std::map<size_t, GroupElement> power_relations,
                   std::map<std::pair<size_t, size_t>, GroupElement> conjugate_relations,
                   std::string name = "");

    size_t ngens() const { return orders_.size(); }
    const std::vector<long>& relative_orders() const { return orders_; }
    const std::string& name() const { return name_; }

    Integer order() const;

    GroupElement identity() const { return GroupElement(ngens(), 0); }
    bool is_identity(const GroupElement& g) const;

    GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
    GroupElement inverse(const GroupElement& a) const;
    GroupElement conjugate(const GroupElement& g, const GroupElement& h) const;  // g h g^-1
    GroupElement power(const GroupElement& a, Integer e) const;
    GroupElement generator(size_t i) const;

    void validate_element(const GroupElement& g) const;

    // order of the element in the group
    Integer element_order(const GroupElement& g) const;

    // full element list in lexicographic order; enumeration budget applies
    const std::vector<GroupElement>& elements() const;
    size_t element_index(const GroupElement& g) const;

    Integer exponent() const;

    // brute-force consistency: relation re-evaluation, associativity on all
    // generator triples, and reachability of all normal forms
    void check_consistency() const;

    const GroupElement& power_word(size_t i) const;
    const GroupElement& conj_word(size_t i, size_t j) const;

    static size_t enumeration_budget();

private:
    std::vector<long> orders_;
    std::vector<GroupElement> power_rel_;
    std::vector<std::vector<GroupElement>> conj_rel_;  // [i][j] for i < j
    std::string name_;
    mutable std::vector<GroupElement> elements_cache_;
    mutable std::map<GroupElement, size_t> index_cache_;

    // normal form of the subword g_k^{a_k} ... g_n^{a_n} times another such
    GroupElement mult_level(size_t level, const GroupElement& u, const GroupElement& v) const;
    GroupElement inv_level(size_t level, const GroupElement& u) const;
    // conjugation automorphism phi_i(x) = g_i x g_i^{-1} on <g_{i+1}, ..., g_n>
    GroupElement phi(size_t i, const GroupElement& x) const;
    GroupElement phi_inv(size_t i, const GroupElement& x) const;
    GroupElement phi_pow(size_t i, long times, const GroupElement& x) const;  // times may be < 0
};

using PcPresentationPtr = std::shared_ptr<const PcPresentation>;

}  // namespace nilrep

#endif
