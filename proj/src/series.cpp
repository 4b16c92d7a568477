#include "morava/series.hpp"

#include <atomic>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace morava {

namespace {
std::atomic<MulKernel> g_kernel{MulKernel::automatic};

// Below this many term pairs the parallel kernel is not worth spawning.
constexpr size_t kParallelThreshold = 4096;

using Terms = std::vector<std::pair<Exp, CoefficientElement>>;

void sort_and_combine(Terms& v) {
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return grlex_less(a.first, b.first); });
    Terms out;
    out.reserve(v.size());
    for (auto& t : v) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second = out.back().second + t.second;
        else
            out.push_back(std::move(t));
        if (!out.empty() && out.back().second.is_zero()) out.pop_back();
    }
    v = std::move(out);
}

Terms mul_block(const Terms& a, size_t a_begin, size_t a_end, const Terms& b, int order,
                const RingPtr& ring) {
    std::map<Exp, CoefficientElement, bool (*)(const Exp&, const Exp&)> acc(grlex_less);
    for (size_t i = a_begin; i < a_end; ++i) {
        int64_t da = total_degree(a[i].first);
        for (const auto& tb : b) {
            // b is grlex sorted, so degrees are nondecreasing: stop early.
            if (da + total_degree(tb.first) >= order) break;
            Exp e = exp_add(a[i].first, tb.first);
            auto it = acc.find(e);
            if (it == acc.end())
                acc.emplace(std::move(e), a[i].second * tb.second);
            else
                it->second = it->second + a[i].second * tb.second;
        }
    }
    Terms out;
    out.reserve(acc.size());
    for (auto& [e, c] : acc)
        if (!c.is_zero()) out.emplace_back(e, std::move(c));
    (void)ring;
    return out;
}
}  // namespace

void set_default_mul_kernel(MulKernel k) { g_kernel.store(k); }
MulKernel default_mul_kernel() { return g_kernel.load(); }

std::vector<std::pair<Exp, CoefficientElement>> mul_terms_serial(const Terms& a, const Terms& b,
                                                                 int order, const RingPtr& ring) {
    return mul_block(a, 0, a.size(), b, order, ring);
}

std::vector<std::pair<Exp, CoefficientElement>> mul_terms_parallel(const Terms& a, const Terms& b,
                                                                   int order,
                                                                   const RingPtr& ring) {
#ifdef _OPENMP
    int nthreads = omp_get_max_threads();
    if (nthreads <= 1 || a.size() < 2) return mul_terms_serial(a, b, order, ring);
    std::vector<Terms> partial(static_cast<size_t>(nthreads));
#pragma omp parallel num_threads(nthreads)
    {
        int t = omp_get_thread_num();
        int nt = omp_get_num_threads();
        size_t chunk = (a.size() + nt - 1) / nt;
        size_t lo = std::min(a.size(), chunk * static_cast<size_t>(t));
        size_t hi = std::min(a.size(), lo + chunk);
        if (lo < hi) partial[static_cast<size_t>(t)] = mul_block(a, lo, hi, b, order, ring);
    }
    // Merge in thread order. Exact arithmetic makes the sum order-independent,
    // so the result is identical to the serial kernel.
    Terms merged;
    for (auto& p : partial)
        for (auto& t : p) merged.push_back(std::move(t));
    sort_and_combine(merged);
    return merged;
#else
    return mul_terms_serial(a, b, order, ring);
#endif
}

TruncatedSeries TruncatedSeries::variable(const VarsPtr& vars, const RingPtr& ring, int order,
                                          size_t index) {
    if (index >= vars->names.size()) throw VariableMismatch("variable index out of range");
    Exp e(vars->names.size(), 0);
    e[index] = 1;
    return monomial(vars, ring, order, std::move(e),
                    CoefficientElement::constant(ring, Rational(1)));
}

TruncatedSeries TruncatedSeries::monomial(VarsPtr vars, RingPtr ring, int order, Exp e,
                                          CoefficientElement c) {
    TruncatedSeries s(std::move(vars), std::move(ring), order);
    if (e.size() != s.vars_->names.size()) throw VariableMismatch("exponent arity mismatch");
    for (int32_t x : e)
        if (x < 0) throw VariableMismatch("negative series exponent");
    if (!c.is_zero() && total_degree(e) < order) s.terms_.emplace_back(std::move(e), std::move(c));
    return s;
}

TruncatedSeries TruncatedSeries::from_terms(VarsPtr vars, RingPtr ring, int order,
                                            Terms terms) {
    TruncatedSeries s(std::move(vars), std::move(ring), order);
    Terms kept;
    kept.reserve(terms.size());
    for (auto& t : terms)
        if (!t.second.is_zero() && total_degree(t.first) < order) kept.push_back(std::move(t));
    sort_and_combine(kept);
    s.terms_ = std::move(kept);
    return s;
}

void TruncatedSeries::check_compatible(const TruncatedSeries& o) const {
    if (!(*vars_ == *o.vars_)) throw VariableMismatch("series variable sets differ");
    if (!(*ring_ == *o.ring_)) throw RingMismatch("series coefficient rings differ");
}

int TruncatedSeries::valuation() const {
    if (terms_.empty()) return order_;
    return static_cast<int>(total_degree(terms_.front().first));
}

CoefficientElement TruncatedSeries::constant_term() const {
    return coefficient(Exp(vars_->names.size(), 0));
}

CoefficientElement TruncatedSeries::coefficient(const Exp& e) const {
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), e,
        [](const auto& t, const Exp& key) { return grlex_less(t.first, key); });
    if (it != terms_.end() && it->first == e) return it->second;
    return CoefficientElement::zero(ring_);
}

CoefficientElement TruncatedSeries::coefficient_univ(int k) const {
    if (vars_->names.size() != 1) throw VariableMismatch("coefficient_univ needs 1 variable");
    return coefficient(Exp{k});
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
    check_compatible(o);
    int order = std::min(order_, o.order_);
    TruncatedSeries r(vars_, ring_, order);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    auto push = [&](const std::pair<Exp, CoefficientElement>& t) {
        if (total_degree(t.first) < order) r.terms_.push_back(t);
    };
    while (i < terms_.size() && j < o.terms_.size()) {
        if (terms_[i].first == o.terms_[j].first) {
            CoefficientElement s = terms_[i].second + o.terms_[j].second;
            if (!s.is_zero() && total_degree(terms_[i].first) < order)
                r.terms_.emplace_back(terms_[i].first, std::move(s));
            ++i, ++j;
        } else if (grlex_less(terms_[i].first, o.terms_[j].first)) {
            push(terms_[i++]);
        } else {
            push(o.terms_[j++]);
        }
    }
    for (; i < terms_.size(); ++i) push(terms_[i]);
    for (; j < o.terms_.size(); ++j) push(o.terms_[j]);
    return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
    return *this + (-o);
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
    check_compatible(o);
    int order = std::min(order_, o.order_);
    MulKernel k = g_kernel.load();
    bool parallel = false;
    if (k == MulKernel::parallel)
        parallel = true;
    else if (k == MulKernel::automatic)
        parallel = terms_.size() * o.terms_.size() >= kParallelThreshold;
    Terms t = parallel ? mul_terms_parallel(terms_, o.terms_, order, ring_)
                       : mul_terms_serial(terms_, o.terms_, order, ring_);
    TruncatedSeries r(vars_, ring_, order);
    r.terms_ = std::move(t);
    return r;
}

TruncatedSeries TruncatedSeries::scaled(const CoefficientElement& c) const {
    if (c.is_zero()) return TruncatedSeries(vars_, ring_, order_);
    TruncatedSeries r(vars_, ring_, order_);
    r.terms_.reserve(terms_.size());
    for (const auto& [e, q] : terms_) {
        CoefficientElement p = q * c;
        if (!p.is_zero()) r.terms_.emplace_back(e, std::move(p));
    }
    return r;
}

TruncatedSeries TruncatedSeries::scaled(const Rational& q) const {
    return scaled(CoefficientElement::constant(ring_, q));
}

TruncatedSeries TruncatedSeries::pow(int k) const {
    if (k < 0) throw Error("pow: negative exponent");
    TruncatedSeries r = constant(vars_, ring_, order_, Rational(1));
    TruncatedSeries base = *this;
    while (k > 0) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return r;
}

TruncatedSeries TruncatedSeries::truncated(int new_order) const {
    int order = std::min(order_, new_order);
    TruncatedSeries r(vars_, ring_, order);
    for (const auto& t : terms_)
        if (total_degree(t.first) < order) r.terms_.push_back(t);
    return r;
}

TruncatedSeries TruncatedSeries::homogeneous_part(int d) const {
    TruncatedSeries r(vars_, ring_, order_);
    for (const auto& t : terms_)
        if (total_degree(t.first) == d) r.terms_.push_back(t);
    return r;
}

TruncatedSeries TruncatedSeries::map_coefficients(
    const std::function<CoefficientElement(const CoefficientElement&)>& f) const {
    TruncatedSeries r(vars_, ring_, order_);
    for (const auto& [e, c] : terms_) {
        CoefficientElement nc = f(c);
        if (!nc.is_zero()) {
            r.ring_ = nc.ring();
            r.terms_.emplace_back(e, std::move(nc));
        }
    }
    return r;
}

TruncatedSeries TruncatedSeries::with_ring(const RingPtr& target) const {
    TruncatedSeries r(vars_, target, order_);
    for (const auto& [e, c] : terms_) {
        CoefficientElement nc = c.convert_to(target);
        if (!nc.is_zero()) r.terms_.emplace_back(e, std::move(nc));
    }
    return r;
}

TruncatedSeries TruncatedSeries::substitute(const std::vector<TruncatedSeries>& assignments,
                                            bool allow_constant_terms) const {
    size_t nv = vars_->names.size();
    if (assignments.size() != nv)
        throw VariableMismatch("substitute: expected one assignment per variable");
    if (nv == 0) return *this;
    const VarsPtr& tv = assignments[0].vars();
    const RingPtr& tr = assignments[0].ring();
    int order = order_;
    for (const auto& a : assignments) {
        if (!(*a.vars() == *tv)) throw VariableMismatch("substitute: assignment variables differ");
        if (!(*a.ring() == *tr)) throw RingMismatch("substitute: assignment rings differ");
        order = std::min(order, a.order());
        if (!allow_constant_terms && !a.constant_term().is_zero())
            throw VariableMismatch("substitute: assignment has nonzero constant term");
    }

    // Power tables, built lazily up to the largest exponent per variable.
    std::vector<std::vector<TruncatedSeries>> pw(nv);
    auto power = [&](size_t v, int k) -> const TruncatedSeries& {
        auto& tab = pw[v];
        if (tab.empty()) tab.push_back(TruncatedSeries::constant(tv, tr, order, Rational(1)));
        while (static_cast<int>(tab.size()) <= k) tab.push_back(tab.back() * assignments[v]);
        return tab[static_cast<size_t>(k)];
    };

    TruncatedSeries acc = TruncatedSeries::zero(tv, tr, order);
    for (const auto& [e, c] : terms_) {
        TruncatedSeries term = TruncatedSeries::constant(tv, tr, order, c.convert_to(tr));
        for (size_t v = 0; v < nv; ++v)
            if (e[v] != 0) term = term * power(v, e[v]);
        acc = acc + term;
    }
    return acc;
}

TruncatedSeries TruncatedSeries::reversion() const {
    if (vars_->names.size() != 1) throw VariableMismatch("reversion needs a univariate series");
    if (!constant_term().is_zero()) throw Error("reversion: nonzero constant term");
    if (!coefficient_univ(1).is_one())
        throw Error("reversion: leading coefficient must equal 1");
    TruncatedSeries g = TruncatedSeries::variable(vars_, ring_, order_, 0);
    // With g correct through degree m-1 the residual f(g) - t starts at t^m and
    // subtracting its t^m coefficient fixes degree m exactly.
    for (int m = 2; m < order_; ++m) {
        TruncatedSeries comp = compose_univ(g);
        CoefficientElement c = comp.coefficient_univ(m);
        if (c.is_zero()) continue;
        g = g - TruncatedSeries::monomial(vars_, ring_, order_, Exp{m}, std::move(c));
    }
    return g;
}

TruncatedSeries TruncatedSeries::divide_exact(const TruncatedSeries& b) const {
    check_compatible(b);
    if (b.is_zero()) throw Error("divide_exact: division by zero series");
    int vb = b.valuation();
    int result_order = std::min(order_, b.order_) - vb;
    if (result_order <= 0)
        throw TruncationInsufficient("divide_exact: quotient order would be non-positive");

    const Exp& lead_e = b.terms_.front().first;
    const CoefficientElement& lead_c = b.terms_.front().second;
    int work_order = vb + result_order;

    TruncatedSeries r = truncated(work_order);
    Terms q;
    while (!r.terms_.empty()) {
        const auto& m = r.terms_.front();
        if (total_degree(m.first) >= work_order) break;
        if (!exp_geq(m.first, lead_e))
            throw InexactDivision("divide_exact: monomial not divisible",
                                  monomial_string(m.first));
        auto qc = m.second.try_divide(lead_c);
        if (!qc)
            throw InexactDivision("divide_exact: coefficient not divisible",
                                  monomial_string(m.first));
        Exp qe = exp_sub(m.first, lead_e);
        TruncatedSeries piece = TruncatedSeries::monomial(vars_, ring_, work_order, qe, *qc);
        r = r - piece * b.truncated(work_order);
        q.emplace_back(std::move(qe), std::move(*qc));
    }
    return from_terms(vars_, ring_, result_order, std::move(q));
}

std::optional<int64_t> TruncatedSeries::graded_degree() const {
    std::optional<int64_t> d;
    for (const auto& [e, c] : terms_) {
        auto cd = c.graded_degree();
        if (!cd) return std::nullopt;
        int64_t t = total_degree(e) + *cd;
        if (!d)
            d = t;
        else if (*d != t)
            return std::nullopt;
    }
    return d;
}

std::optional<PLocalWitness> TruncatedSeries::p_local_witness(long p) const {
    for (const auto& [e, c] : terms_) {
        auto w = c.p_local_witness(p);
        if (w) {
            w->where = monomial_string(e);
            return w;
        }
    }
    return std::nullopt;
}

TruncatedSeries TruncatedSeries::reduce_mod_p(long p) const {
    TruncatedSeries r(vars_, ring_, order_);
    for (const auto& [e, c] : terms_) {
        CoefficientElement rc = c.reduce_mod_p(p);
        if (!rc.is_zero()) r.terms_.emplace_back(e, std::move(rc));
    }
    return r;
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
    return *vars_ == *o.vars_ && *ring_ == *o.ring_ &&
           equal_to_order(o, std::min(order_, o.order_));
}

bool TruncatedSeries::equal_to_order(const TruncatedSeries& o, int upto) const {
    if (upto > std::min(order_, o.order_))
        throw TruncationInsufficient("equal_to_order: comparison beyond valid order");
    auto below = [upto](const Terms& t) {
        Terms out;
        for (const auto& x : t)
            if (total_degree(x.first) < upto) out.push_back(x);
        return out;
    };
    return below(terms_) == below(o.terms_);
}

std::string TruncatedSeries::monomial_string(const Exp& e) const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first) os << "*";
        os << vars_->names[i];
        if (e[i] != 1) os << "^" << e[i];
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

std::string TruncatedSeries::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        std::string cs = c.to_string();
        bool negated = false;
        if (cs.size() > 1 && cs[0] == '-' && cs.find(" + ") == std::string::npos &&
            cs.find(" - ") == std::string::npos) {
            negated = true;
            cs = cs.substr(1);
        }
        if (first)
            os << (negated ? "-" : "");
        else
            os << (negated ? " - " : " + ");
        std::string mono = monomial_string(e);
        bool paren = cs.find(' ') != std::string::npos;
        if (mono == "1")
            os << (paren ? "(" + cs + ")" : cs);
        else if (cs == "1")
            os << mono;
        else
            os << (paren ? "(" + cs + ")" : cs) << "*" << mono;
        first = false;
    }
    return os.str();
}

}  // namespace morava
