#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "morava/coeff.hpp"

namespace morava {

struct VarSet {
    std::vector<std::string> names;
    bool operator==(const VarSet& o) const { return names == o.names; }
};

using VarsPtr = std::shared_ptr<const VarSet>;

inline VarsPtr make_vars(std::vector<std::string> names) {
    auto v = std::make_shared<VarSet>();
    v->names = std::move(names);
    return v;
}

// Controls the multiplication kernel. The serial kernel is the reference; the
// OpenMP kernel must agree with it term for term (exact arithmetic makes the
// result independent of summation order).
enum class MulKernel { serial, parallel, automatic };
void set_default_mul_kernel(MulKernel k);
MulKernel default_mul_kernel();

// Multivariate power series over a CoefficientRing, truncated at total degree
// `order` in the series variables: stored terms all have degree < order and
// the series is only known modulo degree >= order.
class TruncatedSeries {
  public:
    TruncatedSeries() = default;
    TruncatedSeries(VarsPtr vars, RingPtr ring, int order)
        : vars_(std::move(vars)), ring_(std::move(ring)), order_(order) {}

    static TruncatedSeries zero(VarsPtr vars, RingPtr ring, int order) {
        return TruncatedSeries(std::move(vars), std::move(ring), order);
    }
    static TruncatedSeries constant(VarsPtr vars, RingPtr ring, int order,
                                    CoefficientElement c) {
        TruncatedSeries s(std::move(vars), std::move(ring), order);
        if (!c.is_zero() && order > 0)
            s.terms_.emplace_back(Exp(s.vars_->names.size(), 0), std::move(c));
        return s;
    }
    static TruncatedSeries constant(VarsPtr vars, RingPtr ring, int order, const Rational& q) {
        auto c = CoefficientElement::constant(ring, q);
        return constant(std::move(vars), std::move(ring), order, std::move(c));
    }
    static TruncatedSeries variable(const VarsPtr& vars, const RingPtr& ring, int order,
                                    size_t index);
    static TruncatedSeries monomial(VarsPtr vars, RingPtr ring, int order, Exp e,
                                    CoefficientElement c);

    const VarsPtr& vars() const { return vars_; }
    const RingPtr& ring() const { return ring_; }
    int order() const { return order_; }
    const std::vector<std::pair<Exp, CoefficientElement>>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    // Minimal total degree among stored terms; order() when zero.
    int valuation() const;

    CoefficientElement constant_term() const;
    CoefficientElement coefficient(const Exp& e) const;
    // Coefficient of t^k for univariate series.
    CoefficientElement coefficient_univ(int k) const;

    TruncatedSeries operator-() const;
    TruncatedSeries operator+(const TruncatedSeries& o) const;
    TruncatedSeries operator-(const TruncatedSeries& o) const;
    TruncatedSeries operator*(const TruncatedSeries& o) const;
    TruncatedSeries scaled(const CoefficientElement& c) const;
    TruncatedSeries scaled(const Rational& q) const;
    TruncatedSeries pow(int k) const;

    // Restrict the valid order (drops terms of degree >= new_order).
    TruncatedSeries truncated(int new_order) const;

    // Degree-d homogeneous part in the series variables (coefficients kept).
    TruncatedSeries homogeneous_part(int d) const;

    // Apply a map to every coefficient (e.g. kill generators, v_n -> 1).
    TruncatedSeries map_coefficients(
        const std::function<CoefficientElement(const CoefficientElement&)>& f) const;

    // Re-express every coefficient over another ring.
    TruncatedSeries with_ring(const RingPtr& target) const;

    // Total substitution: every variable of this series is assigned a series
    // over (target_vars, target_ring). Assignments must have zero constant
    // term unless allow_constant_terms.
    TruncatedSeries substitute(const std::vector<TruncatedSeries>& assignments,
                               bool allow_constant_terms = false) const;

    // Convenience for univariate f: f(g).
    TruncatedSeries compose_univ(const TruncatedSeries& g) const {
        return substitute({g});
    }

    // Compositional inverse of a univariate series t + O(t^2).
    TruncatedSeries reversion() const;

    // Exact division: q with q*b = *this modulo the reduced order
    // min(order, b.order) - valuation(b). Throws InexactDivision otherwise.
    TruncatedSeries divide_exact(const TruncatedSeries& b) const;

    // Graded degree where series variables weigh +1 and v_j weighs -(p^j-1).
    std::optional<int64_t> graded_degree() const;

    std::optional<PLocalWitness> p_local_witness(long p) const;
    TruncatedSeries reduce_mod_p(long p) const;

    bool operator==(const TruncatedSeries& o) const;
    bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }
    // Equality of all terms of total degree < upto (both series must be valid
    // that far).
    bool equal_to_order(const TruncatedSeries& o, int upto) const;

    std::string to_string() const;
    std::string monomial_string(const Exp& e) const;

    // Internal: sorted unique grlex terms below order.
    static TruncatedSeries from_terms(VarsPtr vars, RingPtr ring, int order,
                                      std::vector<std::pair<Exp, CoefficientElement>> terms);

  private:
    void check_compatible(const TruncatedSeries& o) const;

    VarsPtr vars_;
    RingPtr ring_;
    int order_ = 0;
    std::vector<std::pair<Exp, CoefficientElement>> terms_;
};

// Multiplication kernels, exposed for the benchmark and the kernel-agreement
// tests. Both produce terms of total degree < order.
std::vector<std::pair<Exp, CoefficientElement>> mul_terms_serial(
    const std::vector<std::pair<Exp, CoefficientElement>>& a,
    const std::vector<std::pair<Exp, CoefficientElement>>& b, int order, const RingPtr& ring);
std::vector<std::pair<Exp, CoefficientElement>> mul_terms_parallel(
    const std::vector<std::pair<Exp, CoefficientElement>>& a,
    const std::vector<std::pair<Exp, CoefficientElement>>& b, int order, const RingPtr& ring);

}  // namespace morava
