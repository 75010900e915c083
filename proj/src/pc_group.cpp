#include "nilrep/pc_group.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <set>

namespace nilrep {

size_t PcPresentation::enumeration_budget() {
    if (const char* env = std::getenv("NILREP_BUDGET")) {
        long v = std::atol(env);
        if (v > 0) return static_cast<size_t>(v);
    }
    return 100000;
}

PcPresentation::PcPresentation(std::vector<long> relative_orders,
                               std::map<size_t, GroupElement> power_relations,
                               std::map<std::pair<size_t, size_t>, GroupElement> conjugate_relations,
                               std::string name)
    : orders_(std::move(relative_orders)), name_(std::move(name)) {
    size_t n = orders_.size();
    for (long e : orders_)
        if (e < 2) throw ValidationError("relative orders must be >= 2");

    auto check_word = [&](const GroupElement& w, size_t min_index) {
        if (w.size() != n) throw ValidationError("relation word has wrong length");
        for (size_t k = 0; k < n; ++k) {
            if (w[k] < 0 || w[k] >= orders_[k])
                throw ValidationError("relation word exponent out of range");
            if (w[k] != 0 && k < min_index)
                throw ValidationError("relation word uses too-early generator");
        }
    };

    power_rel_.assign(n, GroupElement(n, 0));
    for (size_t i = 0; i < n; ++i) {
        auto it = power_relations.find(i);
        if (it != power_relations.end()) {
            check_word(it->second, i + 1);
            power_rel_[i] = it->second;
        }
    }
    conj_rel_.assign(n, std::vector<GroupElement>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            GroupElement w(n, 0);
            w[j] = 1;  // default: generators commute
            auto it = conjugate_relations.find({i, j});
            if (it != conjugate_relations.end()) w = it->second;
            if (w.size() != n || w[j] != 1)
                throw ValidationError("conjugate word must have the form g_j * tail");
            for (size_t k = 0; k < n; ++k) {
                if (w[k] < 0 || w[k] >= orders_[k])
                    throw ValidationError("conjugate word exponent out of range");
                if (w[k] != 0 && k < j && k != j)
                    throw ValidationError("conjugate word tail must use indices > j");
            }
            conj_rel_[i][j] = w;
        }

    Integer ord = order();
    if (ord > Integer(enumeration_budget()))
        throw ResourceBudgetError("group order " + ord.str() + " exceeds enumeration budget");
}

Integer PcPresentation::order() const {
    Integer o = 1;
    for (long e : orders_) o *= e;
    return o;
}

bool PcPresentation::is_identity(const GroupElement& g) const {
    for (long e : g)
        if (e != 0) return false;
    return true;
}

void PcPresentation::validate_element(const GroupElement& g) const {
    if (g.size() != ngens()) throw ValidationError("exponent vector has wrong length");
    for (size_t i = 0; i < g.size(); ++i)
        if (g[i] < 0 || g[i] >= orders_[i])
            throw ValidationError("exponent out of range at position " + std::to_string(i));
}

GroupElement PcPresentation::generator(size_t i) const {
    GroupElement g(ngens(), 0);
    g.at(i) = 1;
    return g;
}

GroupElement PcPresentation::phi(size_t i, const GroupElement& x) const {
    // phi_i is a homomorphism on <g_{i+1},...>: apply the stored conjugate
    // words generator by generator
    GroupElement result(ngens(), 0);
    for (size_t j = i + 1; j < ngens(); ++j) {
        for (long rep = 0; rep < x[j]; ++rep)
            result = mult_level(i + 1, result, conj_rel_[i][j]);
    }
    return result;
}

GroupElement PcPresentation::phi_inv(size_t i, const GroupElement& x) const {
    // phi_i^{e_i} is conjugation by the power word w = g_i^{e_i}, so
    // phi_i^{-1}(x) = phi_i^{e_i - 1}(w^{-1} x w), everything inside level i+1
    const GroupElement& w = power_rel_[i];
    GroupElement conj = mult_level(i + 1, mult_level(i + 1, inv_level(i + 1, w), x), w);
    for (long k = 0; k < orders_[i] - 1; ++k) conj = phi(i, conj);
    return conj;
}

GroupElement PcPresentation::phi_pow(size_t i, long times, const GroupElement& x) const {
    GroupElement r = x;
    if (times >= 0)
        for (long k = 0; k < times; ++k) r = phi(i, r);
    else
        for (long k = 0; k < -times; ++k) r = phi_inv(i, r);
    return r;
}

GroupElement PcPresentation::mult_level(size_t level, const GroupElement& u,
                                        const GroupElement& v) const {
    if (level >= ngens()) return identity();
    // u = g_k^a u', v = g_k^b v'  =>  uv = g_k^{a+b} w^q (phi_k^{-b}(u') v')
    size_t k = level;
    long a = u[k], b = v[k];
    if (a == 0 && b == 0) {
        GroupElement r = mult_level(level + 1, u, v);
        return r;
    }
    GroupElement u_tail = u;
    u_tail[k] = 0;
    GroupElement v_tail = v;
    v_tail[k] = 0;
    long sum = a + b;
    long r = sum % orders_[k];
    long q = sum / orders_[k];

    GroupElement shifted = phi_pow(k, -b, u_tail);
    GroupElement tail = mult_level(level + 1, shifted, v_tail);
    if (q > 0) tail = mult_level(level + 1, power_rel_[k], tail);
    tail[k] = r;
    return tail;
}

GroupElement PcPresentation::inv_level(size_t level, const GroupElement& u) const {
    if (level >= ngens()) return identity();
    size_t k = level;
    long a = u[k];
    GroupElement u_tail = u;
    u_tail[k] = 0;
    GroupElement inv_tail = inv_level(level + 1, u_tail);
    if (a == 0) return inv_tail;
    // u^{-1} = g_k^{-a} phi_k^a(u'^{-1}) with g_k^{-a} = g_k^{e_k - a} w_kk^{-1}
    GroupElement part = phi_pow(k, a, inv_tail);
    GroupElement result = mult_level(level + 1, inv_level(level + 1, power_rel_[k]), part);
    result[k] = orders_[k] - a;
    return result;
}

GroupElement PcPresentation::multiply(const GroupElement& a, const GroupElement& b) const {
    validate_element(a);
    validate_element(b);
    return mult_level(0, a, b);
}

GroupElement PcPresentation::inverse(const GroupElement& a) const {
    validate_element(a);
    return inv_level(0, a);
}

GroupElement PcPresentation::conjugate(const GroupElement& g, const GroupElement& h) const {
    return multiply(multiply(g, h), inverse(g));
}

GroupElement PcPresentation::power(const GroupElement& a, Integer e) const {
    GroupElement base = a;
    if (e < 0) {
        base = inverse(base);
        e = -e;
    }
    GroupElement result = identity();
    while (e > 0) {
        if ((e & 1) != 0) result = multiply(result, base);
        base = multiply(base, base);
        e >>= 1;
    }
    return result;
}

Integer PcPresentation::element_order(const GroupElement& g) const {
    GroupElement cur = g;
    Integer n = 1;
    while (!is_identity(cur)) {
        cur = multiply(cur, g);
        ++n;
    }
    return n;
}

const std::vector<GroupElement>& PcPresentation::elements() const {
    static std::mutex cache_mutex;
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (!elements_cache_.empty()) return elements_cache_;
    std::vector<GroupElement> all;
    size_t total = static_cast<size_t>(order());
    GroupElement cur(ngens(), 0);
    for (size_t cnt = 0; cnt < total; ++cnt) {
        all.push_back(cur);
        for (size_t pos = ngens(); pos-- > 0;) {
            if (++cur[pos] < orders_[pos]) break;
            cur[pos] = 0;
        }
    }
    elements_cache_ = std::move(all);
    for (size_t idx = 0; idx < elements_cache_.size(); ++idx)
        index_cache_[elements_cache_[idx]] = idx;
    return elements_cache_;
}

size_t PcPresentation::element_index(const GroupElement& g) const {
    elements();
    auto it = index_cache_.find(g);
    if (it == index_cache_.end()) throw ValidationError("element not in normal form");
    return it->second;
}

Integer PcPresentation::exponent() const {
    Integer e = 1;
    for (const auto& g : elements()) e = lcm(e, element_order(g));
    return e;
}

const GroupElement& PcPresentation::power_word(size_t i) const { return power_rel_[i]; }
const GroupElement& PcPresentation::conj_word(size_t i, size_t j) const {
    return conj_rel_[i][j];
}

void PcPresentation::check_consistency() const {
    size_t n = ngens();
    // relation re-evaluation through the collector
    for (size_t i = 0; i < n; ++i) {
        GroupElement lhs = power(generator(i), orders_[i]);
        if (lhs != power_rel_[i])
            throw ValidationError("power relation fails re-evaluation at generator " +
                                  std::to_string(i));
        for (size_t j = i + 1; j < n; ++j) {
            GroupElement conj = conjugate(generator(i), generator(j));
            if (conj != conj_rel_[i][j])
                throw ValidationError("conjugate relation fails re-evaluation at (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
    // associativity on all generator triples
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) {
                GroupElement ab_c = multiply(multiply(generator(i), generator(j)), generator(k));
                GroupElement a_bc = multiply(generator(i), multiply(generator(j), generator(k)));
                if (ab_c != a_bc)
                    throw ValidationError("associativity fails on generator triple");
            }
    // overlap words: powers against generators, both parenthesizations
    for (size_t j = 0; j < n; ++j) {
        GroupElement pj = power(generator(j), orders_[j]);
        GroupElement pj1 = power(generator(j), orders_[j] - 1);
        if (multiply(generator(j), pj) != multiply(pj, generator(j)))
            throw ValidationError("power overlap fails at generator " + std::to_string(j));
        for (size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            GroupElement lhs = multiply(pj, generator(i));
            GroupElement rhs = multiply(pj1, multiply(generator(j), generator(i)));
            if (lhs != rhs)
                throw ValidationError("overlap g_j^e g_i fails at (" + std::to_string(j) +
                                      "," + std::to_string(i) + ")");
            GroupElement pi = power(generator(i), orders_[i]);
            GroupElement pi1 = power(generator(i), orders_[i] - 1);
            GroupElement lhs2 = multiply(generator(j), pi);
            GroupElement rhs2 = multiply(multiply(generator(j), generator(i)), pi1);
            if (lhs2 != rhs2)
                throw ValidationError("overlap g_j g_i^e fails at (" + std::to_string(j) +
                                      "," + std::to_string(i) + ")");
        }
    }
    // for small groups, associativity of (element, generator, generator)
    if (order() <= 4096) {
        for (const auto& a : elements())
            for (size_t j = 0; j < n; ++j)
                for (size_t k = 0; k < n; ++k) {
                    GroupElement lhs = multiply(multiply(a, generator(j)), generator(k));
                    GroupElement rhs = multiply(a, multiply(generator(j), generator(k)));
                    if (lhs != rhs)
                        throw ValidationError("associativity fails on element-generator word");
                }
    }
}

}  // namespace nilrep
