#pragma once

#include "morava/gkm.hpp"

namespace morava {

// Split even quadric data: a 2l-dimensional split quadratic space, quadric
// dimension 2l-2, torus of rank l.
struct QuadricSpec {
    int l = 2;
    TheoryDescriptor theory;
    int order = 0;  // 0 = default
};

// Default truncation: enough headroom for the localization sums over Q and the
// equivariant intermediates (order lost per division by a linear Euler factor).
int default_quadric_order(int l);

// Fixed-point models. Point ids: "e<i>" on Q, "f(<i>,<j>)" on OGr(1,2,Q),
// "p(<i>,<j>|<s>)" on P(tau2), "q(<a>|<b>)" on QxQ.
FixedPointModel quadric_model(int l);
FixedPointModel ogr_model(int l);
FixedPointModel ptau_model(int l);
FixedPointModel product_model(int l);
// Subquadric on the span of the e_j with |j| != skip; ambient rank l kept.
FixedPointModel subquadric_model(int l, int skip);

// Signed point indices in enumeration order: 1, -1, 2, -2, ...
std::vector<int> signed_indices(int l);
int quadric_point_pos(int l, int s);
int product_point_pos(int l, int a, int b);
int ogr_point_pos(int l, int i, int j);
int ptau_point_pos(int l, int i, int j, int s);

enum class ProductOrbit { diagonal, generic, antidiagonal };
ProductOrbit product_orbit(int a, int b);

// A class on QxQ; composition makes these correspondences.
using Correspondence = EquivariantClass;

struct TateReport;

class QuadricContext {
  public:
    QuadricContext(const QuadricSpec& spec);
    // Pairing context over a supplied equivariant theory (used to run the
    // Chow-side pairing over a ring that carries v_n).
    QuadricContext(int l, EqTheoryPtr theory);

    int l() const { return l_; }
    int dim() const { return 2 * l_ - 2; }
    const EquivariantTheory& theory() const { return *th_; }
    const EqTheoryPtr& theory_ptr() const { return th_; }
    const ModelPtr& Q() const { return q_; }
    const ModelPtr& QQ() const { return qq_; }
    const ModelPtr& OG() const { return og_; }
    const ModelPtr& PT() const { return pt_; }
    const std::vector<int>& f_map() const { return f_map_; }
    const std::vector<int>& pi_map() const { return pi_map_; }

    const TruncatedSeries& top_euler_Q(int pos) const { return top_q_[static_cast<size_t>(pos)]; }

    // ---- classes on Q ----
    EquivariantClass one_Q() const { return EquivariantClass::one(q_, *th_); }
    EquivariantClass hyperplane_power(int k) const;
    // Class of the projective span of {e_s : s in S}; S pairwise non-opposite.
    EquivariantClass isotropic_span_class(const std::vector<int>& S) const;
    EquivariantClass point_class() const { return isotropic_span_class({1}); }

    // The 2l classes 1, h, .., h^{l-2}, a+, a-, l_{l-2}, .., l_0 with names.
    std::vector<std::pair<std::string, EquivariantClass>> standard_basis() const;

    // Cellular basis of A(OGr(1,2,Q)) at l = 2: per component the component
    // class, the two ruling curves and a point.
    std::vector<std::pair<std::string, EquivariantClass>> ogr_basis() const;

    // ---- transfer maps ----
    EquivariantClass pullback_p1(const EquivariantClass& x) const;
    EquivariantClass pullback_pi(const EquivariantClass& y) const;
    Correspondence diagonal_pushforward(const EquivariantClass& z) const;
    Correspondence diagonal() const { return diagonal_pushforward(one_Q()); }

    // The three W-orbit formulas for f_*: generic a_u * e(-chi_a - chi_b),
    // vanishing antidiagonal, and the subquadric localization on the diagonal.
    Correspondence f_pushforward(const EquivariantClass& a_on_ptau) const;
    // Same map through the generic localization formula (consistency oracle).
    Correspondence f_pushforward_generic(const EquivariantClass& a_on_ptau) const;

    Correspondence neza_assemble(const EquivariantClass& x, const EquivariantClass& y,
                                 const EquivariantClass& z) const;

    // (beta o alpha)_{(x,z)} = sum_y alpha_{(x,y)} beta_{(y,z)} / e(T_Q,y);
    // coordinates are independent and run in parallel.
    Correspondence compose(const Correspondence& alpha, const Correspondence& beta) const;

    // ---- pairing and duals ----
    EquivariantScalar integrate_Q(const EquivariantClass& a) const;
    CoefficientElement euler_characteristic() const;

    // Equivariant dual basis of the standard basis (Gram matrix inverted over
    // the series ring); makes the Tate projectors exactly orthogonal.
    struct DualBasis {
        std::vector<std::string> names;
        std::vector<EquivariantClass> basis;
        std::vector<EquivariantClass> dual;
        std::vector<int> codim;
    };
    const DualBasis& duals() const;

    // Coordinates of a class on Q in the standard basis (constant terms).
    std::vector<CoefficientElement> coordinates_Q(const EquivariantClass& a) const;
    // Coordinates of a correspondence in the product basis b_a (x) b_b.
    std::vector<CoefficientElement> coordinates_QQ(const Correspondence& g) const;

    Correspondence tensor(const EquivariantClass& a, const EquivariantClass& b) const;

    // chi^{-1} (1 x 1); throws when the Euler characteristic is not a unit.
    Correspondence euler_characteristic_projector() const;

    int certify_order() const { return certify_; }
    bool corr_equal(const Correspondence& a, const Correspondence& b, int upto = 0) const;

  private:
    void init_models();

    int l_;
    EqTheoryPtr th_;
    ModelPtr q_, qq_, og_, pt_;
    std::vector<int> f_map_, pi_map_, p1_map_, diag_map_;
    std::vector<TruncatedSeries> top_q_;
    int certify_ = 0;
    mutable std::shared_ptr<DualBasis> duals_;
};

struct TateReport {
    std::vector<std::string> names;
    std::vector<Correspondence> idempotents;
    std::vector<int> twists;  // Tate twist of each summand
    bool idempotent_ok = false;
    bool orthogonal_ok = false;
    bool complete_ok = false;
    bool pass() const { return idempotent_ok && orthogonal_ok && complete_ok; }
    std::string summary() const;
};

// Complete orthogonal system of 2l idempotents summing to the diagonal,
// built from the equivariant dual bases of the Poincare pairing.
TateReport tate_decomposition(const QuadricContext& ctx);

// Oracle for primitivity at l = 2: inside each block e_i End(QxQ) e_i the
// integral span has rank one, so the only idempotents below e_i are 0 and e_i.
struct PrimitivityReport {
    bool rank_one_blocks = true;
    bool no_finer_idempotent = true;
    std::string detail;
    bool pass() const { return rank_one_blocks && no_finer_idempotent; }
};
PrimitivityReport primitivity_check(const QuadricContext& ctx, const TateReport& tate);

// Columns: the assembled images of the standard bases of A(Q), A(OGr), A(Q)
// under p1^*, f_* pi^*, i_*; coordinates in the product basis. The
// determinant must be a unit (Bareiss, exact).
struct NezaReport {
    size_t rows = 0;
    CoefficientElement det;
    bool unit = false;
};
NezaReport neza_rank_check(const QuadricContext& ctx);

CoefficientElement bareiss_determinant(std::vector<std::vector<CoefficientElement>> m);

// ch_i (i <= p^n - 1) and the integral operation on every standard basis class
// of the split quadric, with p-locality witnesses.
struct ChernIntegralityReport {
    struct Entry {
        std::string class_name;
        std::string component;
        std::vector<CoefficientElement> coords;
        bool p_local = true;
        std::string witness;
    };
    std::vector<Entry> entries;
    bool pass = true;
};
ChernIntegralityReport chern_integrality(int l, long p, int n, int order = 0);

}  // namespace morava
