#include "morava/gkm.hpp"

#include <sstream>

namespace morava {

std::string Character::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        if (c[i] > 0 && !first) os << "+";
        if (c[i] == -1)
            os << "-";
        else if (c[i] != 1)
            os << c[i] << "*";
        os << "chi" << (i + 1);
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

Character signed_chi(int l, int s) {
    Character ch;
    ch.c.assign(static_cast<size_t>(l), 0);
    int a = s > 0 ? s : -s;
    ch.c[static_cast<size_t>(a - 1)] = s > 0 ? 1 : -1;
    return ch;
}

Character chi_diff(int l, int m, int s) { return signed_chi(l, m) - signed_chi(l, s); }

EquivariantTheory::EquivariantTheory(const TheoryDescriptor& d, int l, int order)
    : base_(make_theory(d, order)), l_(l), order_(order) {
    std::vector<std::string> names;
    for (int i = 1; i <= l; ++i) names.push_back("x" + std::to_string(i));
    vars_ = make_vars(std::move(names));
}

TruncatedSeries EquivariantTheory::build_euler(const Character& chi) const {
    // x_{chi+mu} = F(x_chi, x_mu), x_{-chi} = iota(x_chi); fold over the
    // generator coordinates.
    TruncatedSeries acc = zero();
    bool started = false;
    for (int i = 0; i < l_; ++i) {
        int k = chi.c[static_cast<size_t>(i)];
        if (k == 0) continue;
        TruncatedSeries gen = TruncatedSeries::variable(vars_, ring(), order_,
                                                        static_cast<size_t>(i));
        TruncatedSeries step = k > 0 ? gen : base_.inverse.substitute({gen});
        for (int r = 0; r < (k > 0 ? k : -k); ++r) {
            if (!started) {
                acc = step;
                started = true;
            } else {
                acc = base_.law.F.substitute({acc, step});
            }
        }
    }
    return acc;
}

const TruncatedSeries& EquivariantTheory::euler(const Character& chi) const {
    if (chi.is_zero()) throw Error("euler class of the zero character");
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(chi);
    if (it != cache_.end()) return it->second;
    // build outside the map insert to keep exception safety simple
    TruncatedSeries s = build_euler(chi);
    return cache_.emplace(chi, std::move(s)).first->second;
}

TruncatedSeries EquivariantTheory::euler_product(const std::vector<Character>& chis) const {
    TruncatedSeries acc = one();
    for (const auto& ch : chis) acc = acc * euler(ch);
    return acc;
}

EquivariantScalar EquivariantScalar::add(const EquivariantScalar& o,
                                         const EquivariantTheory& th) const {
    return sum_scalars({*this, o}, th);
}

EquivariantScalar EquivariantScalar::mul(const EquivariantScalar& o,
                                         const EquivariantTheory& th) const {
    std::vector<Character> den = den_;
    den.insert(den.end(), o.den_.begin(), o.den_.end());
    EquivariantScalar r(num_ * o.num_, std::move(den));
    r.reduce(th);
    return r;
}

EquivariantScalar EquivariantScalar::mul_series(const TruncatedSeries& s,
                                                const EquivariantTheory& th) const {
    EquivariantScalar r(num_ * s, den_);
    r.reduce(th);
    return r;
}

void EquivariantScalar::reduce(const EquivariantTheory& th) {
    if (num_.is_zero()) {
        // A zero numerator known mod t^k stays zero after exact division by a
        // valuation-1 factor, with one order lost per factor.
        int order = num_.order() - static_cast<int>(den_.size());
        if (order <= 0)
            throw TruncationInsufficient("scalar reduction exhausted the truncation order");
        num_ = num_.truncated(order);
        den_.clear();
        return;
    }
    bool progress = true;
    while (progress && !den_.empty()) {
        progress = false;
        for (size_t i = 0; i < den_.size(); ++i) {
            try {
                TruncatedSeries q = num_.divide_exact(th.euler(den_[i]));
                num_ = std::move(q);
                den_.erase(den_.begin() + static_cast<long>(i));
                progress = true;
                break;
            } catch (const InexactDivision&) {
                continue;
            }
        }
    }
}

EquivariantScalar sum_scalars(const std::vector<EquivariantScalar>& terms,
                              const EquivariantTheory& th) {
    if (terms.empty()) return EquivariantScalar::zero(th);
    // Common denominator: per-character maximum multiplicity.
    std::map<Character, int> common;
    for (const auto& t : terms) {
        std::map<Character, int> local;
        for (const auto& ch : t.denominator()) ++local[ch];
        for (const auto& [ch, k] : local) common[ch] = std::max(common[ch], k);
    }
    TruncatedSeries num = th.zero();
    for (const auto& t : terms) {
        std::map<Character, int> local;
        for (const auto& ch : t.denominator()) ++local[ch];
        TruncatedSeries part = t.numerator();
        for (const auto& [ch, k] : common) {
            int missing = k - (local.count(ch) ? local[ch] : 0);
            for (int r = 0; r < missing; ++r) part = part * th.euler(ch);
        }
        num = num + part;
    }
    std::vector<Character> den;
    for (const auto& [ch, k] : common)
        for (int r = 0; r < k; ++r) den.push_back(ch);
    EquivariantScalar out(std::move(num), std::move(den));
    out.reduce(th);
    return out;
}

bool EquivariantScalar::equals(const EquivariantScalar& o, const EquivariantTheory& th,
                               int upto) const {
    std::map<Character, int> da, db;
    for (const auto& ch : den_) ++da[ch];
    for (const auto& ch : o.den_) ++db[ch];
    TruncatedSeries lhs = num_;
    TruncatedSeries rhs = o.num_;
    for (const auto& [ch, k] : db) {
        int extra = k - (da.count(ch) ? da[ch] : 0);
        for (int r = 0; r < extra; ++r) lhs = lhs * th.euler(ch);
    }
    for (const auto& [ch, k] : da) {
        int extra = k - (db.count(ch) ? db[ch] : 0);
        for (int r = 0; r < extra; ++r) rhs = rhs * th.euler(ch);
    }
    return lhs.equal_to_order(rhs, upto);
}

std::string EquivariantScalar::to_string(const EquivariantTheory& th) const {
    (void)th;
    std::string s = num_.to_string();
    if (!den_.empty()) {
        s = "(" + s + ") / (";
        for (size_t i = 0; i < den_.size(); ++i) {
            if (i) s += " * ";
            s += "e[" + den_[i].to_string() + "]";
        }
        s += ")";
    }
    return s;
}

void FixedPointModel::validate() const {
    if (points.size() != weights.size()) throw Error("model: points/weights size mismatch");
    for (const auto& ws : weights) {
        if (static_cast<int>(ws.size()) != dim)
            throw Error("model: weight count differs from dimension");
        for (const auto& w : ws)
            if (w.is_zero()) throw Error("model: zero tangent weight");
    }
}

FixedPointModel FixedPointModel::build(std::vector<std::string> pts,
                                       std::vector<std::vector<Character>> ws, int dim,
                                       int rank) {
    FixedPointModel m;
    m.points = std::move(pts);
    m.weights = std::move(ws);
    m.dim = dim;
    m.rank = rank;
    for (size_t i = 0; i < m.points.size(); ++i) m.index[m.points[i]] = static_cast<int>(i);
    m.validate();
    return m;
}

EquivariantClass EquivariantClass::zero(const ModelPtr& m, const EquivariantTheory& th) {
    EquivariantClass c;
    c.model = m;
    c.at.assign(m->points.size(), EquivariantScalar::zero(th));
    return c;
}

EquivariantClass EquivariantClass::one(const ModelPtr& m, const EquivariantTheory& th) {
    EquivariantClass c;
    c.model = m;
    c.at.assign(m->points.size(), EquivariantScalar::one(th));
    return c;
}

EquivariantClass EquivariantClass::add(const EquivariantClass& o,
                                       const EquivariantTheory& th) const {
    if (model != o.model) throw Error("class sum across different models");
    EquivariantClass r;
    r.model = model;
    r.at.reserve(at.size());
    for (size_t i = 0; i < at.size(); ++i) r.at.push_back(at[i].add(o.at[i], th));
    return r;
}

EquivariantClass EquivariantClass::operator-() const {
    EquivariantClass r = *this;
    for (auto& s : r.at) s = -s;
    return r;
}

EquivariantClass EquivariantClass::mul(const EquivariantClass& o,
                                       const EquivariantTheory& th) const {
    if (model != o.model) throw Error("class product across different models");
    EquivariantClass r;
    r.model = model;
    r.at.reserve(at.size());
    for (size_t i = 0; i < at.size(); ++i) r.at.push_back(at[i].mul(o.at[i], th));
    return r;
}

EquivariantClass EquivariantClass::scaled(const CoefficientElement& c) const {
    EquivariantClass r = *this;
    for (auto& s : r.at) s = s.scaled(c);
    return r;
}

TruncatedSeries top_euler(const FixedPointModel& m, int point, const EquivariantTheory& th) {
    return th.euler_product(m.weights[static_cast<size_t>(point)]);
}

EquivariantClass eq_pullback(const std::vector<int>& point_map, const ModelPtr& source,
                             const EquivariantClass& target_class) {
    if (point_map.size() != source->points.size())
        throw Error("eq_pullback: point map size mismatch");
    EquivariantClass r;
    r.model = source;
    r.at.reserve(point_map.size());
    for (int t : point_map) r.at.push_back(target_class.at[static_cast<size_t>(t)]);
    return r;
}

EquivariantClass eq_pushforward(const std::vector<int>& point_map, const EquivariantClass& a,
                                const ModelPtr& target, const EquivariantTheory& th) {
    if (point_map.size() != a.model->points.size())
        throw Error("eq_pushforward: point map size mismatch");
    std::vector<std::vector<int>> fibers(target->points.size());
    for (size_t x = 0; x < point_map.size(); ++x)
        fibers[static_cast<size_t>(point_map[x])].push_back(static_cast<int>(x));

    EquivariantClass out;
    out.model = target;
    out.at.assign(target->points.size(), EquivariantScalar::zero(th));
    for (size_t y = 0; y < target->points.size(); ++y) {
        if (fibers[y].empty()) continue;
        // a_x * e(T_Y,y) / e(T_X,x), with shared characters cancelled before
        // any series work.
        std::map<Character, int> wy;
        for (const auto& ch : target->weights[y]) ++wy[ch];
        std::vector<EquivariantScalar> terms;
        for (int x : fibers[y]) {
            std::map<Character, int> wx;
            for (const auto& ch : a.model->weights[static_cast<size_t>(x)]) ++wx[ch];
            TruncatedSeries num = a.at[static_cast<size_t>(x)].numerator();
            std::vector<Character> den = a.at[static_cast<size_t>(x)].denominator();
            for (const auto& [ch, k] : wy) {
                int up = k - (wx.count(ch) ? wx[ch] : 0);
                for (int r = 0; r < up; ++r) num = num * th.euler(ch);
            }
            for (const auto& [ch, k] : wx) {
                int down = k - (wy.count(ch) ? wy[ch] : 0);
                for (int r = 0; r < down; ++r) den.push_back(ch);
            }
            terms.emplace_back(std::move(num), std::move(den));
        }
        out.at[y] = sum_scalars(terms, th);
    }
    return out;
}

EquivariantScalar integrate(const EquivariantClass& a, const EquivariantTheory& th) {
    std::vector<EquivariantScalar> terms;
    terms.reserve(a.at.size());
    for (size_t x = 0; x < a.at.size(); ++x) {
        std::vector<Character> den = a.at[x].denominator();
        const auto& ws = a.model->weights[x];
        den.insert(den.end(), ws.begin(), ws.end());
        terms.emplace_back(a.at[x].numerator(), std::move(den));
    }
    EquivariantScalar total = sum_scalars(terms, th);
    if (!total.is_series())
        throw TruncationInsufficient("integrate: localization sum did not clear denominators");
    return total;
}

CoefficientElement integrate_constant(const EquivariantClass& a, const EquivariantTheory& th) {
    return integrate(a, th).series().constant_term();
}

Int milnor_number(const FixedPointModel& m) {
    // Order budget: one lost per division by the common-denominator union.
    std::map<Character, int> common;
    for (const auto& ws : m.weights) {
        std::map<Character, int> local;
        for (const auto& ch : ws) ++local[ch];
        for (const auto& [ch, k] : local) common[ch] = std::max(common[ch], k);
    }
    int union_size = 0;
    for (const auto& [ch, k] : common) union_size += k;
    EquivariantTheory chow(TheoryDescriptor{TheoryKind::chow, 2, 1}, std::max(1, m.rank),
                           std::max(2, union_size + m.dim + 2));
    EquivariantClass cls;
    cls.model = std::make_shared<FixedPointModel>(m);
    cls.at.reserve(m.points.size());
    for (size_t x = 0; x < m.points.size(); ++x) {
        if (m.dim == 0) {
            cls.at.push_back(EquivariantScalar::one(chow));
            continue;
        }
        TruncatedSeries newton = chow.zero();
        for (const auto& ch : m.weights[x]) newton = newton + chow.euler(ch).pow(m.dim);
        cls.at.push_back(EquivariantScalar(std::move(newton)));
    }
    CoefficientElement c = integrate_constant(cls, chow);
    if (c.is_zero()) return Int(0);
    Rational q = c.constant_value();
    if (q.get_den() != 1) throw Error("milnor_number: non-integral value");
    return q.get_num();
}

FixedPointModel apply_weyl(const FixedPointModel& m, const SignedPerm& w,
                           const std::vector<int>& point_image) {
    FixedPointModel out;
    out.dim = m.dim;
    out.rank = m.rank;
    out.points = m.points;
    out.weights.resize(m.weights.size());
    for (size_t x = 0; x < m.points.size(); ++x) {
        std::vector<Character> ws;
        for (const auto& ch : m.weights[x]) ws.push_back(w.apply(ch));
        out.weights[static_cast<size_t>(point_image[x])] = std::move(ws);
    }
    for (size_t i = 0; i < out.points.size(); ++i) out.index[out.points[i]] = static_cast<int>(i);
    out.validate();
    return out;
}

}  // namespace morava
