#include "nilrep/representation.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace nilrep {

// The roots of unity inside Q(zeta_m) form mu_M with M = m for even m and
// M = 2m for odd m.  Returns zeta_N^c as an element of Q(zeta_m), or nothing
// when the value does not lie in the field.
std::optional<Cyclotomic> root_of_unity_in_field(long N, long c, long m) {
    c %= N;
    if (c < 0) c += N;
    long d = N / std::gcd(c, N);  // order of the value
    if (d == 1) return Cyclotomic(Rational(1), m);
    long M = (m % 2 == 0) ? m : 2 * m;
    if (M % d != 0) return std::nullopt;
    long e = c / (N / d);  // zeta_N^c = zeta_d^e with gcd(e, d) = 1
    if (m % d == 0)
        return Cyclotomic::root_of_unity(m, (m / d) * e);
    // m odd, d even: zeta_d = -zeta_{d0}^{(d0+1)/2} for d0 = d/2
    long d0 = d / 2;
    long k = static_cast<long>((Integer(m / std::max(d0, 1L)) * ((d0 + 1) / 2) * e) % m);
    Cyclotomic v = d0 == 1 ? Cyclotomic(Rational(1), m) : Cyclotomic::root_of_unity(m, k);
    return Cyclotomic(Rational(-1), m) * v;
}

Representation::Representation(PcPresentationPtr group, long conductor,
                               std::vector<Matrix> matrices, size_t dim_if_no_gens)
    : group_(std::move(group)), conductor_(conductor), matrices_(std::move(matrices)) {
    size_t n = group_->ngens();
    if (matrices_.size() != n)
        throw ValidationError("representation needs one matrix per pc generator");
    dim_ = n == 0 ? dim_if_no_gens : matrices_[0].rows();
    if (dim_ == 0) throw ValidationError("representation dimension must be positive");
    for (const auto& m : matrices_) {
        if (m.rows() != dim_ || m.cols() != dim_)
            throw ValidationError("representation matrices must be square of equal size");
        if (m.conductor() != conductor_)
            throw ValidationError("representation matrices must share the conductor");
    }
    auto word_matrix = [&](const GroupElement& w) {
        Matrix acc = Matrix::identity(dim_, conductor_);
        for (size_t i = 0; i < n; ++i)
            if (w[i] != 0) acc = acc * matrices_[i].pow(Integer(w[i]));
        return acc;
    };
    // power relations force every matrix to be invertible as well
    for (size_t i = 0; i < n; ++i) {
        Matrix lhs = matrices_[i].pow(Integer(group_->relative_orders()[i]));
        if (lhs != word_matrix(group_->power_word(i)))
            throw ValidationError("matrices violate power relation at generator " +
                                  std::to_string(i));
        for (size_t j = i + 1; j < n; ++j) {
            Matrix lhs2 = matrices_[i] * matrices_[j];
            Matrix rhs2 = word_matrix(group_->conj_word(i, j)) * matrices_[i];
            if (lhs2 != rhs2)
                throw ValidationError("matrices violate conjugate relation at (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
}

Matrix Representation::evaluate(const GroupElement& g) const {
    group_->validate_element(g);
    Matrix acc = Matrix::identity(dim_, conductor_);
    for (size_t i = 0; i < group_->ngens(); ++i)
        if (g[i] != 0) acc = acc * matrices_[i].pow(Integer(g[i]));
    return acc;
}

Representation Representation::embed(long target) const {
    std::vector<Matrix> ms;
    ms.reserve(matrices_.size());
    for (const auto& m : matrices_) ms.push_back(m.embed(target));
    return Representation(group_, target, std::move(ms), dim_);
}

std::vector<Cyclotomic> Representation::character_values() const {
    std::vector<Cyclotomic> traces;
    for (const auto& g : group_->elements()) traces.push_back(evaluate(g).trace());
    return traces;
}

Representation direct_sum(const std::vector<Representation>& parts) {
    if (parts.empty()) throw ValidationError("direct sum of nothing");
    size_t n = parts[0].group()->ngens();
    size_t total = 0;
    for (const auto& part : parts) {
        if (part.group() != parts[0].group() || part.conductor() != parts[0].conductor())
            throw ValidationError("direct sum needs a common group and field");
        total += part.dim();
    }
    std::vector<Matrix> ms;
    for (size_t i = 0; i < n; ++i) {
        std::vector<Matrix> blocks;
        for (const auto& part : parts) blocks.push_back(part.matrices()[i]);
        ms.push_back(Matrix::block_diag(blocks));
    }
    return Representation(parts[0].group(), parts[0].conductor(), std::move(ms), total);
}

Representation trivial_rep(PcPresentationPtr p, long conductor) {
    std::vector<Matrix> ms(p->ngens(), Matrix::identity(1, conductor));
    return Representation(std::move(p), conductor, std::move(ms), 1);
}

std::vector<Representation> all_characters(PcPresentationPtr p, long conductor) {
    size_t n = p->ngens();
    if (n == 0) return {trivial_rep(p, conductor)};
    long N = static_cast<long>(p->exponent());
    std::vector<Representation> result;
    std::vector<long> c(n, 0);
    auto word_exponent = [&](const GroupElement& w) {
        long acc = 0;
        for (size_t i = 0; i < n; ++i) acc = (acc + w[i] * c[i]) % N;
        return acc;
    };
    while (true) {
        bool hom = true;
        for (size_t i = 0; i < n && hom; ++i) {
            if ((c[i] * p->relative_orders()[i]) % N != word_exponent(p->power_word(i)))
                hom = false;
            for (size_t j = i + 1; j < n && hom; ++j)
                if (c[j] % N != word_exponent(p->conj_word(i, j))) hom = false;
        }
        if (hom) {
            std::vector<Matrix> ms;
            bool in_field = true;
            for (size_t i = 0; i < n && in_field; ++i) {
                auto v = root_of_unity_in_field(N, c[i], conductor);
                if (!v) {
                    in_field = false;
                    break;
                }
                Matrix m(1, 1, conductor);
                m.at(0, 0) = *v;
                ms.push_back(std::move(m));
            }
            if (in_field) result.emplace_back(p, conductor, std::move(ms), 1);
        }
        size_t pos = n;
        bool done = true;
        while (pos-- > 0) {
            if (++c[pos] < N) {
                done = false;
                break;
            }
            c[pos] = 0;
        }
        if (done) break;
    }
    return result;
}

SubgroupRep conjugate_rep(const SubgroupRep& rho, const GroupElement& g) {
    const auto& p = rho.sub.sub.group;
    FiniteSubgroup hg = conjugate_subgroup(rho.sub.sub, g);
    SubgroupPres sp = induced_presentation(hg);
    GroupElement ginv = p->inverse(g);
    std::vector<Matrix> ms;
    for (const auto& u : sp.pc_gens)
        ms.push_back(rho.evaluate_ambient(p->conjugate(ginv, u)));
    Representation rep(sp.pres, rho.rep.conductor(), std::move(ms), rho.rep.dim());
    return SubgroupRep{std::move(sp), std::move(rep)};
}

SubgroupRep restrict_to(const Representation& pi, const FiniteSubgroup& h) {
    SubgroupPres sp = induced_presentation(h);
    std::vector<Matrix> ms;
    for (const auto& u : sp.pc_gens) ms.push_back(pi.evaluate(u));
    Representation rep(sp.pres, pi.conductor(), std::move(ms), pi.dim());
    return SubgroupRep{std::move(sp), std::move(rep)};
}

SubgroupRep restrict_subrep(const SubgroupRep& rho, const FiniteSubgroup& k) {
    SubgroupPres sp = induced_presentation(k);
    std::vector<Matrix> ms;
    for (const auto& u : sp.pc_gens) ms.push_back(rho.evaluate_ambient(u));
    Representation rep(sp.pres, rho.rep.conductor(), std::move(ms), rho.rep.dim());
    return SubgroupRep{std::move(sp), std::move(rep)};
}

SubgroupRep restrict_onto(const Representation& pi, const SubgroupPres& target) {
    std::vector<Matrix> ms;
    for (const auto& u : target.pc_gens) ms.push_back(pi.evaluate(u));
    Representation rep(target.pres, pi.conductor(), std::move(ms), pi.dim());
    return SubgroupRep{target, std::move(rep)};
}

SubgroupRep restrict_onto(const SubgroupRep& rho, const SubgroupPres& target) {
    std::vector<Matrix> ms;
    for (const auto& u : target.pc_gens) ms.push_back(rho.evaluate_ambient(u));
    Representation rep(target.pres, rho.rep.conductor(), std::move(ms), rho.rep.dim());
    return SubgroupRep{target, std::move(rep)};
}

}  // namespace nilrep
