#include "morava/fgl.hpp"

namespace morava {

std::string TheoryDescriptor::name() const {
    switch (kind) {
        case TheoryKind::chow: return "chow";
        case TheoryKind::k0: return "k0";
        case TheoryKind::morava:
            return "morava(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ")";
        case TheoryKind::connective_morava:
            return "connective_morava(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ")";
        case TheoryKind::bp: return "bp(p=" + std::to_string(p) + ")";
    }
    return "?";
}

TheoryDescriptor TheoryDescriptor::parse(const std::string& kind, long p, int n) {
    TheoryDescriptor d;
    d.p = p;
    d.n = n;
    if (kind == "chow")
        d.kind = TheoryKind::chow;
    else if (kind == "k0") {
        d.kind = TheoryKind::k0;
        d.p = 2;
        d.n = 1;
    } else if (kind == "morava")
        d.kind = TheoryKind::morava;
    else if (kind == "ck" || kind == "connective_morava")
        d.kind = TheoryKind::connective_morava;
    else if (kind == "bp")
        d.kind = TheoryKind::bp;
    else
        throw Error("unknown theory kind: " + kind);
    return d;
}

static bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

static void require_prime(long p) {
    if (!is_prime(p)) throw Error("p = " + std::to_string(p) + " is not prime");
}

// Smallest k with p^{k+1} >= order; generators above v_k cannot appear below
// the truncation.
static int bp_gen_count(long p, int order) {
    int k = 0;
    long pw = p;  // p^{k+1}
    while (pw < order) {
        ++k;
        pw *= p;
    }
    return k;
}

RingPtr theory_ring(const TheoryDescriptor& d, int order) {
    switch (d.kind) {
        case TheoryKind::chow:
            return make_ring(d.p, {}, {}, false);
        case TheoryKind::k0:
            return make_ring(2, {1}, {1}, false);
        case TheoryKind::morava:
            require_prime(d.p);
            return make_ring(d.p, {d.n}, {d.n}, true);
        case TheoryKind::connective_morava:
            require_prime(d.p);
            return make_ring(d.p, {d.n}, {}, true);
        case TheoryKind::bp: {
            require_prime(d.p);
            std::vector<int> gens;
            for (int j = 1; j <= bp_gen_count(d.p, order); ++j) gens.push_back(j);
            return make_ring(d.p, std::move(gens), {}, true);
        }
    }
    throw Error("unreachable theory kind");
}

static VarsPtr t_var() {
    static VarsPtr v = make_vars({"t"});
    return v;
}
static VarsPtr xy_vars() {
    static VarsPtr v = make_vars({"x", "y"});
    return v;
}
static VarsPtr xyz_vars() {
    static VarsPtr v = make_vars({"x", "y", "z"});
    return v;
}

TruncatedSeries bp_logarithm(long p, int order) {
    require_prime(p);
    if (order < 2) throw Error("bp_logarithm: order must be >= 2");
    int k = bp_gen_count(p, order);
    std::vector<int> gens;
    for (int j = 1; j <= k; ++j) gens.push_back(j);
    RingPtr ring = make_ring(p, gens, {}, true);

    // m_0 = 1, m_j = (1/p)(v_j + sum_{i=1}^{j-1} m_i v_{j-i}^{p^i})
    std::vector<CoefficientElement> m;
    m.push_back(CoefficientElement::constant(ring, Rational(1)));
    for (int j = 1; j <= k; ++j) {
        CoefficientElement acc = CoefficientElement::generator(ring, j);
        long pi = p;
        for (int i = 1; i < j; ++i) {
            acc = acc + m[static_cast<size_t>(i)] *
                            CoefficientElement::generator(ring, j - i, static_cast<int>(pi));
            pi *= p;
        }
        m.push_back(acc * Rational(1, p));
    }

    TruncatedSeries l = TruncatedSeries::zero(t_var(), ring, order);
    long pi = 1;
    for (int i = 0; i <= k && pi < order; ++i) {
        l = l + TruncatedSeries::monomial(t_var(), ring, order, Exp{static_cast<int32_t>(pi)},
                                          m[static_cast<size_t>(i)]);
        pi *= p;
    }
    return l;
}

TruncatedSeries morava_logarithm(long p, int n, int order, const RingPtr& ring_in) {
    require_prime(p);
    if (n < 1) throw Error("morava_logarithm: n must be >= 1");
    if (order < 2) throw Error("morava_logarithm: order must be >= 2");
    RingPtr ring = ring_in ? ring_in : theory_ring({TheoryKind::morava, p, n}, order);
    TruncatedSeries bp = bp_logarithm(p, order);
    std::map<int, Rational> kill;
    for (int j : bp.ring()->gens)
        if (j != n) kill[j] = Rational(0);
    TruncatedSeries specialized = bp.map_coefficients(
        [&](const CoefficientElement& c) { return c.eval_generators(kill); });
    return specialized.with_ring(ring);
}

TruncatedSeries multiplicative_logarithm(int order, const RingPtr& ring) {
    TruncatedSeries l = TruncatedSeries::zero(t_var(), ring, order);
    for (int m = 1; m < order; ++m) {
        CoefficientElement c =
            CoefficientElement::generator(ring, 1, m - 1) * Rational(1, m);
        l = l + TruncatedSeries::monomial(t_var(), ring, order, Exp{m}, std::move(c));
    }
    return l;
}

FormalGroupLaw fgl_from_logarithm(const TruncatedSeries& log, const std::string& label) {
    const RingPtr& ring = log.ring();
    int order = log.order();
    TruncatedSeries e = log.reversion();
    TruncatedSeries lx = log.substitute({TruncatedSeries::variable(xy_vars(), ring, order, 0)});
    TruncatedSeries ly = log.substitute({TruncatedSeries::variable(xy_vars(), ring, order, 1)});
    TruncatedSeries F = e.substitute({lx + ly});
    return FormalGroupLaw{std::move(F), log, label};
}

FormalGroupLaw additive_fgl(int order) {
    RingPtr ring = theory_ring({TheoryKind::chow, 2, 1}, order);
    TruncatedSeries F = TruncatedSeries::variable(xy_vars(), ring, order, 0) +
                        TruncatedSeries::variable(xy_vars(), ring, order, 1);
    return FormalGroupLaw{std::move(F), TruncatedSeries::variable(t_var(), ring, order, 0),
                          "additive"};
}

FormalGroupLaw multiplicative_fgl(int order) {
    RingPtr ring = theory_ring({TheoryKind::k0, 2, 1}, order);
    TruncatedSeries x = TruncatedSeries::variable(xy_vars(), ring, order, 0);
    TruncatedSeries y = TruncatedSeries::variable(xy_vars(), ring, order, 1);
    TruncatedSeries F = x + y - (x * y).scaled(CoefficientElement::generator(ring, 1));
    return FormalGroupLaw{std::move(F), multiplicative_logarithm(order, ring), "multiplicative"};
}

FormalGroupLaw morava_fgl(long p, int n, int order) {
    TruncatedSeries log = morava_logarithm(p, n, order);
    return fgl_from_logarithm(log, TheoryDescriptor{TheoryKind::morava, p, n}.name());
}

FormalGroupLaw bp_fgl(long p, int order) {
    return fgl_from_logarithm(bp_logarithm(p, order),
                              TheoryDescriptor{TheoryKind::bp, p, 1}.name());
}

TruncatedSeries lubin_tate_mod_I(long p, int n) {
    require_prime(p);
    RingPtr ring = theory_ring({TheoryKind::morava, p, n}, 2);
    long pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    int order = static_cast<int>(2 * pn);  // enough room for x^{ip^{n-1}} y^{(p-i)p^{n-1}}
    TruncatedSeries F = TruncatedSeries::variable(xy_vars(), ring, order, 0) +
                        TruncatedSeries::variable(xy_vars(), ring, order, 1);
    long pn1 = pn / p;  // p^{n-1}
    for (long i = 1; i <= p - 1; ++i) {
        // (1/p) C(p,i) is an integer; the term enters with coefficient -v_n.
        Int c = binomial(static_cast<unsigned long>(p), static_cast<unsigned long>(i));
        c /= p;
        Rational coeff = -Rational(c);
        long rm = residue_mod_p(coeff, p);
        if (rm == 0) continue;
        Exp e{static_cast<int32_t>(i * pn1), static_cast<int32_t>((p - i) * pn1)};
        F = F + TruncatedSeries::monomial(
                    xy_vars(), ring, order, std::move(e),
                    CoefficientElement::generator(ring, n) * Rational(rm));
    }
    return F.reduce_mod_p(p);
}

TruncatedSeries reduce_mod_I(const TruncatedSeries& F, long p, int n) {
    long pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    if (F.vars()->names.size() != 2) throw VariableMismatch("reduce_mod_I needs a law in x,y");
    std::vector<std::pair<Exp, CoefficientElement>> kept;
    for (const auto& [e, c] : F.terms()) {
        if (e[0] >= pn || e[1] >= pn) continue;
        auto w = c.p_local_witness(p);
        if (w)
            throw Error("reduce_mod_I: coefficient has denominator divisible by p at " +
                        F.monomial_string(e));
        CoefficientElement rc = c.reduce_mod_p(p);
        if (!rc.is_zero()) kept.emplace_back(e, std::move(rc));
    }
    return TruncatedSeries::from_terms(F.vars(), F.ring(), static_cast<int>(2 * pn),
                                       std::move(kept));
}

TruncatedSeries phi_morphism(long p, int n, int order) {
    return morava_logarithm(p, n, order).reversion();
}

TruncatedSeries formal_inverse(const FormalGroupLaw& law) {
    const RingPtr& ring = law.ring();
    int order = law.order();
    TruncatedSeries tvar = TruncatedSeries::variable(t_var(), ring, order, 0);
    TruncatedSeries iota = -tvar;
    for (int m = 2; m < order; ++m) {
        TruncatedSeries res = law.F.substitute({tvar, iota});
        CoefficientElement c = res.coefficient_univ(m);
        if (c.is_zero()) continue;
        iota = iota - TruncatedSeries::monomial(t_var(), ring, order, Exp{m}, std::move(c));
    }
    return iota;
}

AxiomReport check_fgl_axioms(const FormalGroupLaw& law, int order) {
    const RingPtr& ring = law.ring();
    int ord = std::min(order, law.order());
    TruncatedSeries F = law.F.truncated(ord);
    TruncatedSeries x2 = TruncatedSeries::variable(xy_vars(), ring, ord, 0);
    TruncatedSeries y2 = TruncatedSeries::variable(xy_vars(), ring, ord, 1);
    TruncatedSeries zero2 = TruncatedSeries::zero(xy_vars(), ring, ord);

    TruncatedSeries x3 = TruncatedSeries::variable(xyz_vars(), ring, ord, 0);
    TruncatedSeries y3 = TruncatedSeries::variable(xyz_vars(), ring, ord, 1);
    TruncatedSeries z3 = TruncatedSeries::variable(xyz_vars(), ring, ord, 2);

    AxiomReport rep{
        F.substitute({x2, zero2}) - x2,
        F.substitute({zero2, y2}) - y2,
        F - F.substitute({y2, x2}),
        F.substitute({F.substitute({x3, y3}), z3}) -
            F.substitute({x3, F.substitute({y3, z3})}),
    };
    return rep;
}

Theory make_theory(const TheoryDescriptor& d, int order) {
    RingPtr ring = theory_ring(d, order);
    FormalGroupLaw law;
    TruncatedSeries phi = TruncatedSeries::variable(t_var(), ring, order, 0);
    switch (d.kind) {
        case TheoryKind::chow:
            law = additive_fgl(order);
            break;
        case TheoryKind::k0:
            law = multiplicative_fgl(order);
            phi = multiplicative_logarithm(order, ring).reversion();
            break;
        case TheoryKind::morava:
        case TheoryKind::connective_morava: {
            TruncatedSeries log = morava_logarithm(d.p, d.n, order, ring);
            law = fgl_from_logarithm(log, d.name());
            phi = log.reversion();
            break;
        }
        case TheoryKind::bp: {
            law = bp_fgl(d.p, order);
            phi = law.log->reversion();
            break;
        }
    }
    TruncatedSeries inv = formal_inverse(law);
    return Theory{d, ring, std::move(law), std::move(phi), std::move(inv)};
}

Theory make_additive_theory_over(const RingPtr& ring, int order) {
    TruncatedSeries F = TruncatedSeries::variable(xy_vars(), ring, order, 0) +
                        TruncatedSeries::variable(xy_vars(), ring, order, 1);
    TruncatedSeries t = TruncatedSeries::variable(t_var(), ring, order, 0);
    FormalGroupLaw law{std::move(F), t, "additive"};
    return Theory{TheoryDescriptor{TheoryKind::chow, ring->p, 1}, ring, std::move(law), t, -t};
}

}  // namespace morava
