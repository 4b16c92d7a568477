#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "morava/fgl.hpp"

namespace morava {

// Character sum c_1 chi_1 + ... + c_l chi_l of the acting torus.
struct Character {
    std::vector<int> c;

    bool is_zero() const {
        for (int x : c)
            if (x != 0) return false;
        return true;
    }
    Character operator-() const {
        Character r = *this;
        for (int& x : r.c) x = -x;
        return r;
    }
    Character operator+(const Character& o) const {
        Character r = *this;
        for (size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
        return r;
    }
    Character operator-(const Character& o) const { return *this + (-o); }
    bool operator==(const Character& o) const { return c == o.c; }
    bool operator<(const Character& o) const { return c < o.c; }
    std::string to_string() const;
};

// chi_m - chi_s and friends, with signed indices (chi_{-m} = -chi_m).
Character signed_chi(int l, int s);
Character chi_diff(int l, int m, int s);

// Signed permutation w with w(chi_i) = sign(img[i-1]) chi_{|img[i-1]|}. Type
// D_l elements carry an even number of sign changes.
struct SignedPerm {
    std::vector<int> img;
    bool in_type_D() const {
        int neg = 0;
        for (int x : img) neg += (x < 0);
        return neg % 2 == 0;
    }
    Character apply(const Character& ch) const {
        Character r;
        r.c.assign(ch.c.size(), 0);
        for (size_t i = 0; i < ch.c.size(); ++i) {
            int t = img[i];
            int a = t > 0 ? t : -t;
            r.c[static_cast<size_t>(a - 1)] += (t > 0 ? 1 : -1) * ch.c[i];
        }
        return r;
    }
    int apply_index(int s) const {  // action on signed point indices
        int a = s > 0 ? s : -s;
        int t = img[static_cast<size_t>(a - 1)];
        return s > 0 ? t : -t;
    }
};

// A theory instantiated over the formal group algebra of T = G_m^l at a fixed
// truncation: Euler classes of characters are built from the generators by the
// FGL and the formal inverse, and cached.
class EquivariantTheory {
  public:
    EquivariantTheory(const TheoryDescriptor& d, int l, int order);

    const Theory& base() const { return base_; }
    const TheoryDescriptor& descriptor() const { return base_.desc; }
    const RingPtr& ring() const { return base_.ring; }
    const VarsPtr& vars() const { return vars_; }
    int rank() const { return l_; }
    int order() const { return order_; }

    // First Chern class of the weight-chi line bundle.
    const TruncatedSeries& euler(const Character& chi) const;

    TruncatedSeries euler_product(const std::vector<Character>& chis) const;

    TruncatedSeries zero() const { return TruncatedSeries::zero(vars_, ring(), order_); }
    TruncatedSeries one() const {
        return TruncatedSeries::constant(vars_, ring(), order_, Rational(1));
    }
    TruncatedSeries constant(const CoefficientElement& c) const {
        return TruncatedSeries::constant(vars_, ring(), order_, c);
    }

  private:
    TruncatedSeries build_euler(const Character& chi) const;

    Theory base_;
    int l_;
    int order_;
    VarsPtr vars_;
    mutable std::map<Character, TruncatedSeries> cache_;
    mutable std::mutex mutex_;
};

using EqTheoryPtr = std::shared_ptr<const EquivariantTheory>;

// Element of the localized formal group algebra: numerator series divided by a
// product of Euler classes of the recorded characters. Reduction divides out
// every factor that divides exactly; results that must be honest classes end
// up with an empty denominator.
class EquivariantScalar {
  public:
    EquivariantScalar() = default;
    explicit EquivariantScalar(TruncatedSeries num) : num_(std::move(num)) {}
    EquivariantScalar(TruncatedSeries num, std::vector<Character> den)
        : num_(std::move(num)), den_(std::move(den)) {
        canonicalize_den();
    }

    static EquivariantScalar zero(const EquivariantTheory& th) {
        return EquivariantScalar(th.zero());
    }
    static EquivariantScalar one(const EquivariantTheory& th) {
        return EquivariantScalar(th.one());
    }

    const TruncatedSeries& numerator() const { return num_; }
    const std::vector<Character>& denominator() const { return den_; }

    bool is_series() const { return den_.empty(); }
    const TruncatedSeries& series() const {
        if (!den_.empty())
            throw TruncationInsufficient("equivariant scalar kept an irreducible denominator");
        return num_;
    }
    bool is_zero() const { return num_.is_zero(); }

    EquivariantScalar operator-() const { return EquivariantScalar(-num_, den_); }
    EquivariantScalar add(const EquivariantScalar& o, const EquivariantTheory& th) const;
    EquivariantScalar mul(const EquivariantScalar& o, const EquivariantTheory& th) const;
    EquivariantScalar mul_series(const TruncatedSeries& s, const EquivariantTheory& th) const;
    EquivariantScalar scaled(const CoefficientElement& c) const {
        return EquivariantScalar(num_.scaled(c), den_);
    }

    // Divide out every denominator factor that divides the numerator exactly.
    void reduce(const EquivariantTheory& th);

    // Cross-multiplied equality through total degree < upto.
    bool equals(const EquivariantScalar& o, const EquivariantTheory& th, int upto) const;

    std::string to_string(const EquivariantTheory& th) const;

  private:
    void canonicalize_den() { std::sort(den_.begin(), den_.end()); }

    TruncatedSeries num_;
    std::vector<Character> den_;
};

// Sum with a single common denominator and one final reduction; the workhorse
// behind pushforwards, integrals and correspondence composition.
EquivariantScalar sum_scalars(const std::vector<EquivariantScalar>& terms,
                              const EquivariantTheory& th);

// A variety presented by its fixed points and tangent weights.
struct FixedPointModel {
    std::vector<std::string> points;
    std::vector<std::vector<Character>> weights;
    int dim = 0;
    int rank = 0;  // number of torus factors l
    std::map<std::string, int> index;

    int point_index(const std::string& id) const {
        auto it = index.find(id);
        if (it == index.end()) throw Error("unknown fixed point: " + id);
        return it->second;
    }
    void validate() const;
    static FixedPointModel build(std::vector<std::string> pts,
                                 std::vector<std::vector<Character>> ws, int dim, int rank);
};

using ModelPtr = std::shared_ptr<const FixedPointModel>;

// Class represented by its restrictions to the fixed points.
struct EquivariantClass {
    ModelPtr model;
    std::vector<EquivariantScalar> at;

    static EquivariantClass zero(const ModelPtr& m, const EquivariantTheory& th);
    static EquivariantClass one(const ModelPtr& m, const EquivariantTheory& th);

    EquivariantClass operator-() const;
    EquivariantClass add(const EquivariantClass& o, const EquivariantTheory& th) const;
    EquivariantClass sub(const EquivariantClass& o, const EquivariantTheory& th) const {
        return add(-o, th);
    }
    EquivariantClass mul(const EquivariantClass& o, const EquivariantTheory& th) const;
    EquivariantClass scaled(const CoefficientElement& c) const;
};

TruncatedSeries top_euler(const FixedPointModel& m, int point, const EquivariantTheory& th);

// Pullback along a map given on fixed points (source point -> target point).
EquivariantClass eq_pullback(const std::vector<int>& point_map, const ModelPtr& source,
                             const EquivariantClass& target_class);

// Localization pushforward: g_*(a)_y = sum_{g(x)=y} a_x e(T_Y,y)/e(T_X,x).
EquivariantClass eq_pushforward(const std::vector<int>& point_map, const EquivariantClass& a,
                                const ModelPtr& target, const EquivariantTheory& th);

// Pushforward to the point; must reduce to a denominator-free series.
EquivariantScalar integrate(const EquivariantClass& a, const EquivariantTheory& th);

// Constant term of the integral: the non-equivariant value.
CoefficientElement integrate_constant(const EquivariantClass& a, const EquivariantTheory& th);

// Degree of the d-th Newton class of the tangent bundle (d = dim), computed in
// Chow theory; for 0-dimensional models the number of points.
Int milnor_number(const FixedPointModel& m);

// Apply a signed permutation to a model (points relabelled via index_map) and
// to a class.
FixedPointModel apply_weyl(const FixedPointModel& m, const SignedPerm& w,
                           const std::vector<int>& point_image);

}  // namespace morava
