#pragma once

#include <optional>
#include <string>

#include "morava/series.hpp"

namespace morava {

enum class TheoryKind { chow, k0, morava, connective_morava, bp };

struct TheoryDescriptor {
    TheoryKind kind = TheoryKind::chow;
    long p = 2;  // unused for chow; fixed at 2 for k0 so that deg v1 = -1
    int n = 1;

    std::string name() const;
    static TheoryDescriptor parse(const std::string& kind, long p, int n);
};

// Coefficient ring of a theory. BP needs the truncation order to pick how many
// generators can appear below it.
RingPtr theory_ring(const TheoryDescriptor& d, int order);

struct FormalGroupLaw {
    TruncatedSeries F;                     // in x, y
    std::optional<TruncatedSeries> log;    // in t, over the rationalized ring
    std::string label;

    const RingPtr& ring() const { return F.ring(); }
    int order() const { return F.order(); }
};

struct AxiomReport {
    TruncatedSeries unit_x_residual;   // F(x,0) - x
    TruncatedSeries unit_y_residual;   // F(0,y) - y
    TruncatedSeries comm_residual;     // F(x,y) - F(y,x)
    TruncatedSeries assoc_residual;    // F(F(x,y),z) - F(x,F(y,z))
    bool unit_ok() const { return unit_x_residual.is_zero() && unit_y_residual.is_zero(); }
    bool comm_ok() const { return comm_residual.is_zero(); }
    bool assoc_ok() const { return assoc_residual.is_zero(); }
    bool pass() const { return unit_ok() && comm_ok() && assoc_ok(); }
};

// The BP logarithm l(t) = sum_{i>=0} m_i t^{p^i} with m_0 = 1 and
// m_j = (1/p)(v_j + sum_{i=1}^{j-1} m_i v_{j-i}^{p^i}), over Q[v_1..v_k] with k
// minimal such that p^{k+1} >= order.
TruncatedSeries bp_logarithm(long p, int order);

// BP logarithm with v_j -> 0 for j != n, over Q[v_n].
TruncatedSeries morava_logarithm(long p, int n, int order, const RingPtr& ring = nullptr);

// Logarithm of x + y - v1 x y: sum_m v1^{m-1} t^m / m.
TruncatedSeries multiplicative_logarithm(int order, const RingPtr& ring);

// F = e(l(x) + l(y)) where e is the compositional inverse of l.
FormalGroupLaw fgl_from_logarithm(const TruncatedSeries& log, const std::string& label);

FormalGroupLaw additive_fgl(int order);
FormalGroupLaw multiplicative_fgl(int order);  // x + y - v1 x y over Z[v1,v1^-1]
FormalGroupLaw morava_fgl(long p, int n, int order);
FormalGroupLaw bp_fgl(long p, int order);

// Closed-form representative of the Lubin-Tate law modulo I = (p, x^{p^n},
// y^{p^n}): x + y - v_n sum_{i=1}^{p-1} (1/p) C(p,i) x^{i p^{n-1}} y^{(p-i) p^{n-1}},
// with coefficients reduced to {0..p-1}.
TruncatedSeries lubin_tate_mod_I(long p, int n);

// Reduce a two-variable law modulo (p, x^{p^n}, y^{p^n}); coefficients must be
// p-local.
TruncatedSeries reduce_mod_I(const TruncatedSeries& F, long p, int n);

// phi: FGL_CH -> FGL_{K(n)}, the compositional inverse of the Morava
// logarithm; phi(t) = t - (1/p) v_n t^{p^n} + O(t^{2 p^n - 1}).
TruncatedSeries phi_morphism(long p, int n, int order);

// iota(t) with F(t, iota(t)) = 0.
TruncatedSeries formal_inverse(const FormalGroupLaw& law);

AxiomReport check_fgl_axioms(const FormalGroupLaw& law, int order);

// A theory resolved at a fixed truncation order: the single entry point used
// by the transport and localization layers.
struct Theory {
    TheoryDescriptor desc;
    RingPtr ring;
    FormalGroupLaw law;
    TruncatedSeries phi;      // morphism from the additive law, coefficient 1 at t
    TruncatedSeries inverse;  // formal inverse iota(t)
};

Theory make_theory(const TheoryDescriptor& d, int order);

// Additive law over an arbitrary coefficient ring; lets Chow-side pairings run
// over rings that carry v_n.
Theory make_additive_theory_over(const RingPtr& ring, int order);

}  // namespace morava
