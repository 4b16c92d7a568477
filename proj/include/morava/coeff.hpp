#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "morava/errors.hpp"
#include "morava/rational.hpp"

namespace morava {

// Exponent vector over the generators of a ring (or the variables of a
// series). Negative entries are legal only for Laurent generators.
using Exp = std::vector<int32_t>;

inline int64_t total_degree(const Exp& e) {
    int64_t t = 0;
    for (int32_t x : e) t += x;
    return t;
}

// Graded lexicographic: total degree first, then lex. Fixed once and used for
// canonical serialization and obstruction reporting.
inline bool grlex_less(const Exp& a, const Exp& b) {
    int64_t ta = total_degree(a), tb = total_degree(b);
    if (ta != tb) return ta < tb;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline Exp exp_add(const Exp& a, const Exp& b) {
    Exp r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Exp exp_sub(const Exp& a, const Exp& b) {
    Exp r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline bool exp_geq(const Exp& a, const Exp& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i]) return false;
    return true;
}

// Graded coefficient ring: generators v_j with deg v_j = -(p^j - 1), a subset
// of which may carry negative exponents.
struct CoefficientRing {
    long p = 2;
    std::vector<int> gens;     // generator indices j, ascending
    std::vector<int> laurent;  // subset of gens, ascending
    bool p_local = false;

    size_t arity() const { return gens.size(); }

    int index_of(int j) const {
        auto it = std::lower_bound(gens.begin(), gens.end(), j);
        if (it == gens.end() || *it != j) return -1;
        return static_cast<int>(it - gens.begin());
    }

    bool is_laurent(int j) const {
        return std::binary_search(laurent.begin(), laurent.end(), j);
    }

    // deg v_j = -(p^j - 1)
    int64_t gen_degree(int j) const {
        int64_t pj = 1;
        for (int i = 0; i < j; ++i) pj *= p;
        return -(pj - 1);
    }

    bool exponents_legal(const Exp& e) const {
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] < 0 && !is_laurent(gens[i])) return false;
        return true;
    }

    bool operator==(const CoefficientRing& o) const {
        return p == o.p && gens == o.gens && laurent == o.laurent && p_local == o.p_local;
    }

    std::string gen_name(size_t i) const { return "v" + std::to_string(gens[i]); }
};

using RingPtr = std::shared_ptr<const CoefficientRing>;

inline RingPtr make_ring(long p, std::vector<int> gens, std::vector<int> laurent, bool p_local) {
    auto r = std::make_shared<CoefficientRing>();
    r->p = p;
    r->gens = std::move(gens);
    r->laurent = std::move(laurent);
    r->p_local = p_local;
    return r;
}

inline RingPtr rational_ring() { return make_ring(2, {}, {}, false); }

struct PLocalWitness {
    Exp monomial;
    Rational coefficient;
    std::string where;  // context supplied by the caller, may be empty
};

// Sparse element of a CoefficientRing: exponent vector -> rational, sorted in
// graded lex order, no zero terms.
class CoefficientElement {
  public:
    CoefficientElement() = default;
    explicit CoefficientElement(RingPtr ring) : ring_(std::move(ring)) {}

    static CoefficientElement zero(RingPtr ring) { return CoefficientElement(std::move(ring)); }

    static CoefficientElement constant(RingPtr ring, Rational q) {
        CoefficientElement e(std::move(ring));
        if (q != 0) e.terms_.emplace_back(Exp(e.ring_->arity(), 0), std::move(q));
        return e;
    }

    static CoefficientElement monomial(RingPtr ring, Exp ex, Rational q) {
        CoefficientElement e(std::move(ring));
        if (!e.ring_->exponents_legal(ex))
            throw RingMismatch("negative exponent on a non-Laurent generator");
        if (q != 0) e.terms_.emplace_back(std::move(ex), std::move(q));
        return e;
    }

    // Single generator v_j.
    static CoefficientElement generator(RingPtr ring, int j, int power = 1) {
        int idx = ring->index_of(j);
        if (idx < 0) throw RingMismatch("generator v" + std::to_string(j) + " not in ring");
        Exp e(ring->arity(), 0);
        e[idx] = power;
        return monomial(std::move(ring), std::move(e), Rational(1));
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<std::pair<Exp, Rational>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && total_support(terms_[0].first) == 0);
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw Error("constant_value on non-constant element");
        return terms_[0].second;
    }

    bool is_one() const { return is_constant() && !terms_.empty() && terms_[0].second == 1; }

    // Units are nonzero monomials supported on Laurent generators.
    bool is_unit() const {
        if (terms_.size() != 1) return false;
        const Exp& e = terms_[0].first;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0 && !ring_->is_laurent(ring_->gens[i])) return false;
        return true;
    }

    CoefficientElement inverse_of_unit() const {
        if (!is_unit()) throw Error("inverse_of_unit: element is not a unit");
        Exp e = terms_[0].first;
        for (auto& x : e) x = -x;
        return monomial(ring_, std::move(e), Rational(1) / terms_[0].second);
    }

    CoefficientElement operator-() const {
        CoefficientElement r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    CoefficientElement operator+(const CoefficientElement& o) const;
    CoefficientElement operator-(const CoefficientElement& o) const { return *this + (-o); }
    CoefficientElement operator*(const CoefficientElement& o) const;
    CoefficientElement operator*(const Rational& q) const;

    bool operator==(const CoefficientElement& o) const {
        return *ring_ == *o.ring_ && terms_ == o.terms_;
    }
    bool operator!=(const CoefficientElement& o) const { return !(*this == o); }

    // Exact division in the (Laurent) polynomial ring; nullopt if not exact.
    std::optional<CoefficientElement> try_divide(const CoefficientElement& den) const;

    // True iff every coefficient has denominator coprime to p; otherwise the
    // first failing term in the canonical order.
    std::optional<PLocalWitness> p_local_witness(long p) const {
        for (const auto& [e, q] : terms_)
            if (!denominator_coprime_to(q, p)) return PLocalWitness{e, q, ""};
        return std::nullopt;
    }

    // Reduce each rational coefficient mod p (all denominators must be coprime
    // to p); drops terms that vanish.
    CoefficientElement reduce_mod_p(long p) const {
        CoefficientElement r(ring_);
        for (const auto& [e, q] : terms_) {
            long v = residue_mod_p(q, p);
            if (v != 0) r.terms_.emplace_back(e, Rational(v));
        }
        return r;
    }

    // Substitute rational values for some generators (e.g. kill v_j, or send
    // v_n to 1). The result lives in the same ring with those exponents folded.
    CoefficientElement eval_generators(const std::map<int, Rational>& values) const;

    // Re-express over another ring; every generator with nonzero exponent must
    // exist in the target.
    CoefficientElement convert_to(const RingPtr& target) const;

    // Graded degree, counting deg v_j = -(p^j-1). nullopt for 0 or mixed.
    std::optional<int64_t> graded_degree() const {
        if (terms_.empty()) return std::nullopt;
        std::optional<int64_t> d;
        for (const auto& [e, q] : terms_) {
            int64_t t = 0;
            for (size_t i = 0; i < e.size(); ++i) t += e[i] * ring_->gen_degree(ring_->gens[i]);
            if (!d)
                d = t;
            else if (*d != t)
                return std::nullopt;
        }
        return d;
    }

    std::string to_string() const;
    static std::string monomial_string(const CoefficientRing& ring, const Exp& e);

  private:
    static int64_t total_support(const Exp& e) {
        int64_t s = 0;
        for (int32_t x : e) s += (x != 0);
        return s;
    }

    void normalize();

    RingPtr ring_;
    std::vector<std::pair<Exp, Rational>> terms_;
};

}  // namespace morava
