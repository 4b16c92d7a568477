#include "morava/coeff.hpp"

#include <sstream>

namespace morava {

void CoefficientElement::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const auto& a, const auto& b) { return grlex_less(a.first, b.first); });
    std::vector<std::pair<Exp, Rational>> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
            out.push_back(std::move(t));
        if (!out.empty() && out.back().second == 0) out.pop_back();
    }
    terms_ = std::move(out);
}

static void check_same_ring(const RingPtr& a, const RingPtr& b) {
    if (!(*a == *b)) throw RingMismatch("coefficient rings differ");
}

CoefficientElement CoefficientElement::operator+(const CoefficientElement& o) const {
    check_same_ring(ring_, o.ring_);
    CoefficientElement r(ring_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() ||
            (i < terms_.size() && grlex_less(terms_[i].first, o.terms_[j].first))) {
            r.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || grlex_less(o.terms_[j].first, terms_[i].first)) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            Rational s = terms_[i].second + o.terms_[j].second;
            if (s != 0) r.terms_.emplace_back(terms_[i].first, std::move(s));
            ++i, ++j;
        }
    }
    return r;
}

CoefficientElement CoefficientElement::operator*(const CoefficientElement& o) const {
    check_same_ring(ring_, o.ring_);
    std::map<Exp, Rational, bool (*)(const Exp&, const Exp&)> acc(grlex_less);
    for (const auto& [ea, qa] : terms_)
        for (const auto& [eb, qb] : o.terms_) {
            Exp e = exp_add(ea, eb);
            auto it = acc.find(e);
            if (it == acc.end())
                acc.emplace(std::move(e), qa * qb);
            else
                it->second += qa * qb;
        }
    CoefficientElement r(ring_);
    for (auto& [e, q] : acc)
        if (q != 0) r.terms_.emplace_back(e, std::move(q));
    return r;
}

CoefficientElement CoefficientElement::operator*(const Rational& q) const {
    if (q == 0) return CoefficientElement(ring_);
    CoefficientElement r = *this;
    for (auto& t : r.terms_) t.second *= q;
    return r;
}

std::optional<CoefficientElement> CoefficientElement::try_divide(
    const CoefficientElement& den) const {
    check_same_ring(ring_, den.ring_);
    if (den.is_zero()) return std::nullopt;
    if (is_zero()) return CoefficientElement(ring_);

    // Shift Laurent exponents so both operands are honest polynomials.
    size_t n = ring_->arity();
    Exp shift_num(n, 0), shift_den(n, 0);
    for (size_t i = 0; i < n; ++i) {
        for (const auto& [e, q] : terms_) shift_num[i] = std::min(shift_num[i], e[i]);
        for (const auto& [e, q] : den.terms_) shift_den[i] = std::min(shift_den[i], e[i]);
    }
    auto shifted = [n](const std::vector<std::pair<Exp, Rational>>& ts, const Exp& sh) {
        std::vector<std::pair<Exp, Rational>> out = ts;
        for (auto& [e, q] : out)
            for (size_t i = 0; i < n; ++i) e[i] -= sh[i];
        return out;
    };
    std::vector<std::pair<Exp, Rational>> A = shifted(terms_, shift_num);
    std::vector<std::pair<Exp, Rational>> B = shifted(den.terms_, shift_den);

    // Exact multivariate division by leading-term cancellation (graded lex,
    // from the top). For exact quotients this terminates at zero remainder.
    const auto& tB = B.back();  // max term
    std::vector<std::pair<Exp, Rational>> Q;
    std::vector<std::pair<Exp, Rational>> R = A;
    auto renorm = [](std::vector<std::pair<Exp, Rational>>& v) {
        std::sort(v.begin(), v.end(),
                  [](const auto& a, const auto& b) { return grlex_less(a.first, b.first); });
        std::vector<std::pair<Exp, Rational>> out;
        for (auto& t : v) {
            if (!out.empty() && out.back().first == t.first)
                out.back().second += t.second;
            else
                out.push_back(std::move(t));
            if (!out.empty() && out.back().second == 0) out.pop_back();
        }
        v = std::move(out);
    };
    while (!R.empty()) {
        const auto& tR = R.back();
        if (!exp_geq(tR.first, tB.first)) return std::nullopt;
        Exp qe = exp_sub(tR.first, tB.first);
        Rational qc = tR.second / tB.second;
        Q.emplace_back(qe, qc);
        for (const auto& [e, q] : B) R.emplace_back(exp_add(qe, e), -(qc * q));
        renorm(R);
    }

    CoefficientElement out(ring_);
    Exp back = exp_sub(shift_num, shift_den);
    for (auto& [e, q] : Q) {
        Exp fe = exp_add(e, back);
        if (!ring_->exponents_legal(fe)) return std::nullopt;
        out.terms_.emplace_back(std::move(fe), std::move(q));
    }
    out.normalize();
    return out;
}

CoefficientElement CoefficientElement::eval_generators(
    const std::map<int, Rational>& values) const {
    CoefficientElement r(ring_);
    for (const auto& [e, q] : terms_) {
        Exp ne = e;
        Rational nq = q;
        bool dead = false;
        for (const auto& [j, val] : values) {
            int idx = ring_->index_of(j);
            if (idx < 0) continue;
            int32_t k = ne[idx];
            if (k == 0) continue;
            if (val == 0) {
                dead = true;
                break;
            }
            if (k > 0)
                nq *= rational_pow(val, static_cast<unsigned long>(k));
            else
                nq /= rational_pow(val, static_cast<unsigned long>(-k));
            ne[idx] = 0;
        }
        if (!dead && nq != 0) r.terms_.emplace_back(std::move(ne), std::move(nq));
    }
    r.normalize();
    return r;
}

CoefficientElement CoefficientElement::convert_to(const RingPtr& target) const {
    if (*ring_ == *target) return *this;
    CoefficientElement r(target);
    for (const auto& [e, q] : terms_) {
        Exp ne(target->arity(), 0);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            int idx = target->index_of(ring_->gens[i]);
            if (idx < 0)
                throw RingMismatch("generator " + ring_->gen_name(i) + " missing in target ring");
            ne[idx] = e[i];
        }
        if (!target->exponents_legal(ne))
            throw RingMismatch("Laurent exponent not legal in target ring");
        r.terms_.emplace_back(std::move(ne), q);
    }
    r.normalize();
    return r;
}

std::string CoefficientElement::monomial_string(const CoefficientRing& ring, const Exp& e) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first) os << "*";
        os << ring.gen_name(i);
        if (e[i] != 1) os << "^" << e[i];
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

std::string CoefficientElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, q] : terms_) {
        Rational a = q;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        std::string mono = monomial_string(*ring_, e);
        if (mono == "1")
            os << rational_to_string(a);
        else if (a == 1)
            os << mono;
        else
            os << rational_to_string(a) << "*" << mono;
        first = false;
    }
    return os.str();
}

}  // namespace morava
