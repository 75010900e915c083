#ifndef NILREP_WEIGHT_HPP
#define NILREP_WEIGHT_HPP

#include <nlohmann/json_fwd.hpp>

#include "nilrep/heis.hpp"

namespace nilrep {

// Finitely generated abelian value group Z^rank + Z/torsion, receiving the
// character values exactly.  The torsion coordinate is the exponent of a
// fixed primitive torsion-th root of unity; free coordinates are exponents of
// multiplicatively independent elements of K*.
struct ValueGroup {
    long rank = 0;
    Integer torsion = 1;  // 1 means no torsion

    bool operator==(const ValueGroup& o) const = default;
};

struct VgValue {
    std::vector<Integer> free;
    Integer tors = 0;

    bool is_zero() const;
    bool operator==(const VgValue& o) const = default;
};

VgValue vg_zero(const ValueGroup& vg);
VgValue vg_add(const ValueGroup& vg, const VgValue& a, const VgValue& b);
VgValue vg_scale(const ValueGroup& vg, const Integer& k, const VgValue& a);
VgValue vg_neg(const ValueGroup& vg, const VgValue& a);
// order of the value; nullopt = infinite
std::optional<Integer> vg_order(const ValueGroup& vg, const VgValue& a);

// Homomorphism between value groups induced by an enlargement: new free
// coordinates of the old generators plus a multiplier on the torsion exponent.
struct VgMap {
    ValueGroup from, to;
    std::vector<std::vector<Integer>> free_cols;  // column per old generator
    Integer tors_mult = 1;

    VgValue apply(const VgValue& v) const;
};

VgMap vg_identity(const ValueGroup& vg);
VgMap vg_compose(const VgMap& later, const VgMap& earlier);

// Root extraction: enlarges the group so that value/n exists, returning the
// embedding and the canonical root (smallest non-negative torsion exponent).
struct VgDivision {
    ValueGroup to;
    VgMap embed;
    VgValue root;
};
VgDivision vg_divide(const ValueGroup& vg, const VgValue& value, const Integer& n);
// all n torsion choices of the root, canonical one first
std::vector<VgValue> vg_root_choices(const VgDivision& div, const Integer& n);

// Weight pair (H, chi): character values on the present echelon generators.
struct WeightPair {
    CanonicalSubgroup sub;
    ValueGroup vg;
    std::optional<VgValue> chi_u, chi_v, chi_w;

    void validate() const;  // homomorphism condition
    // value on an arbitrary element of the subgroup
    VgValue evaluate(const HeisElement& g) const;
    bool operator==(const WeightPair& o) const = default;
};

WeightPair conjugate_weight_pair(const WeightPair& p, const HeisElement& g);

// S(H, chi) inside S(H): the congruence subgroup where the conjugated
// character agrees with chi on H^g cap H.
CanonicalSubgroup s_set_char(const WeightPair& p);

// congruence system recorded by a certificate, for replay
struct CongruenceSystem {
    bool finite = true;   // false: exact equations instead of congruences
    Integer omega = 1;    // modulus when finite
    std::vector<std::pair<Integer, Integer>> rows;  // (alpha, beta) per generator
};

struct MonomialCertificate {
    WeightPair pair;
    CongruenceSystem system;
    std::vector<CanonicalSubgroup> chain;  // stepwise normal, G down to H
};

bool validate_certificate(const MonomialCertificate& cert);

struct CompletionResult {
    WeightPair pair;
    VgMap embedding;  // from the input value group into the final one
    MonomialCertificate certificate;
    std::vector<std::string> log;
};

// Extends (H, chi) to (H', chi') with S(H', chi') = H' and chi'|_H = chi
// (through the recorded embedding).  Deterministic.
CompletionResult complete_weight_pair(const WeightPair& input);

struct HeisIsoResult {
    bool isomorphic = false;
    HeisElement witness{0, 0, 0};
};

// Isomorphism test for the induced representations of two certified pairs
// over a common value group.
HeisIsoResult induced_iso_test_heis(const WeightPair& p1, const WeightPair& p2);

nlohmann::json weight_pair_to_json(const WeightPair& p);
WeightPair weight_pair_from_json(const nlohmann::json& j);

}  // namespace nilrep

#endif
