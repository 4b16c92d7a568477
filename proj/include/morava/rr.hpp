#pragma once

#include "morava/fgl.hpp"
#include "morava/witt.hpp"

namespace morava {

// td(t) = t/phi(t) and itd(t) = phi(t)/t; td * itd = 1 and both start at 1.
struct ToddData {
    TruncatedSeries td;
    TruncatedSeries itd;
    TruncatedSeries phi;
};

ToddData todd_classes(const TruncatedSeries& phi);

// Polynomial in first-Chern-class generators of line bundles, over a theory's
// (rationalized) coefficient ring, truncated at the ambient dimension.
struct PolynomialClass {
    TruncatedSeries poly;  // vars = generator names; order = dim + 1
    TheoryDescriptor theory;

    int dimension() const { return poly.order() - 1; }
};

// Transport context for a fixed Morava theory: substitutes each K(n)-side
// generator with phi applied to the matching Chow-side generator.
class ChernTransport {
  public:
    ChernTransport(long p, int n, int generators, int dimension);

    long p() const { return p_; }
    int n() const { return n_; }
    long pn() const { return pn_; }
    const VarsPtr& kn_vars() const { return kn_vars_; }
    const VarsPtr& chow_vars() const { return chow_vars_; }
    const RingPtr& ring() const { return ring_; }
    int dimension() const { return dim_; }

    PolynomialClass kn_generator(int i) const;
    PolynomialClass kn_zero() const;
    // FGL-sum of two K(n)-side classes of line bundles (the class of the
    // tensor product bundle).
    PolynomialClass fgl_sum(const PolynomialClass& a, const PolynomialClass& b) const;

    // ch of a K(n)-side polynomial class: each generator x_i -> phi(xbar_i),
    // expanded over the Chow side and truncated at the ambient dimension.
    PolynomialClass transport(const PolynomialClass& alpha) const;

    // Codimension-i component of the transported class, v_n kept explicit.
    PolynomialClass component(const PolynomialClass& transported, int i) const;
    // Same with v_n sent to 1 (the normalization in which the integral
    // operation below vanishes on line-bundle classes).
    PolynomialClass component_normalized(const PolynomialClass& transported, int i) const;

    // c := ch_{p^n} + (1/p) ch_1^{p^n}, computed in the v_n -> 1 normalization.
    PolynomialClass operation_c(const PolynomialClass& alpha) const;
    // Graded form ch_{p^n} + (v_n/p) ch_1^{p^n}; equals v_n * the normalized
    // form on classes of pure codimension 1.
    PolynomialClass operation_c_graded(const PolynomialClass& alpha) const;

    // (ch_1, ..., ch_{p^n-1}, -c, 0...), a Witt vector over the Chow side for
    // the v_n -> 1 ghost preset.
    WittVector witt_image(const PolynomialClass& alpha) const;

  private:
    long p_;
    int n_;
    long pn_;
    int dim_;
    RingPtr ring_;        // Q[v_n, v_n^-1], p-local checks enabled
    VarsPtr kn_vars_;     // "x1".."xg"
    VarsPtr chow_vars_;   // "c1".."cg"
    TruncatedSeries phi_;
    TruncatedSeries law_;  // FGL_{K(n)} at the working order
    GhostPtr ghost_;       // v_n -> 1 preset, length p^n
};

}  // namespace morava
