#include "morava/witt.hpp"

#include <random>

#include "morava/fgl.hpp"

namespace morava {

GhostPtr ghost_from_logarithm(const TruncatedSeries& log, int count, const std::string& label) {
    if (log.vars()->names.size() != 1)
        throw VariableMismatch("ghost_from_logarithm: logarithm must be univariate");
    if (log.order() <= count)
        throw TruncationInsufficient("ghost_from_logarithm: logarithm order too small");
    auto g = std::make_shared<GhostData>();
    g->ring = log.ring();
    g->label = label;
    g->a.resize(static_cast<size_t>(count) + 1, CoefficientElement::zero(log.ring()));
    for (int i = 1; i <= count; ++i) g->a[static_cast<size_t>(i)] = log.coefficient_univ(i);
    if (!g->a[1].is_one()) throw Error("ghost_from_logarithm: a_1 must equal 1");
    return g;
}

GhostPtr morava_ghost(long p, int n, int count, bool v_to_one) {
    TruncatedSeries log = morava_logarithm(p, n, count + 1);
    if (!v_to_one)
        return ghost_from_logarithm(log, count,
                                    "morava(p=" + std::to_string(p) + ",n=" + std::to_string(n) +
                                        ")");
    RingPtr target = make_ring(p, {}, {}, true);
    TruncatedSeries log1 = log.map_coefficients([&](const CoefficientElement& c) {
                                 return c.eval_generators({{n, Rational(1)}});
                             })
                               .with_ring(target);
    return ghost_from_logarithm(log1, count,
                                "morava(p=" + std::to_string(p) + ",n=" + std::to_string(n) +
                                    ",v=1)");
}

GhostPtr additive_ghost(RingPtr ring, int count) {
    auto g = std::make_shared<GhostData>();
    g->ring = ring;
    g->label = "additive";
    g->a.resize(static_cast<size_t>(count) + 1, CoefficientElement::zero(ring));
    g->a[1] = CoefficientElement::constant(ring, Rational(1));
    return g;
}

GhostPtr multiplicative_ghost(int count) {
    RingPtr ring = theory_ring({TheoryKind::k0, 2, 1}, count + 1);
    return ghost_from_logarithm(multiplicative_logarithm(count + 1, ring), count,
                                "multiplicative");
}

static VarsPtr z_vars(int N) {
    std::vector<std::string> names;
    for (int i = 1; i <= N; ++i) names.push_back("z" + std::to_string(i));
    return make_vars(std::move(names));
}

static VarsPtr xy_vars(int N) {
    std::vector<std::string> names;
    for (int i = 1; i <= N; ++i) names.push_back("x" + std::to_string(i));
    for (int i = 1; i <= N; ++i) names.push_back("y" + std::to_string(i));
    return make_vars(std::move(names));
}

std::vector<TruncatedSeries> ghost_polynomials(const GhostData& g, int N) {
    if (N < 1 || N > g.count()) throw Error("ghost_polynomials: N out of range");
    VarsPtr vars = z_vars(N);
    int order = N + 1;
    std::vector<TruncatedSeries> w;
    for (int n = 1; n <= N; ++n) {
        TruncatedSeries acc = TruncatedSeries::zero(vars, g.ring, order);
        for (int d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            int e = n / d;
            const CoefficientElement& a = g.a[static_cast<size_t>(e)];
            if (a.is_zero()) continue;
            Exp ex(static_cast<size_t>(N), 0);
            ex[static_cast<size_t>(d - 1)] = e;
            acc = acc + TruncatedSeries::monomial(vars, g.ring, order, std::move(ex), a);
        }
        w.push_back(std::move(acc));
    }
    return w;
}

std::vector<TruncatedSeries> sigma_polynomials(const GhostData& g, int N) {
    if (N < 1 || N > g.count()) throw Error("sigma_polynomials: N out of range");
    VarsPtr vars = xy_vars(N);
    int order = N + 1;
    auto var = [&](int i, bool is_y) {
        return TruncatedSeries::variable(vars, g.ring, order,
                                         static_cast<size_t>(i - 1 + (is_y ? N : 0)));
    };
    // Forward substitution: Sigma_n = w_n(x) + w_n(y) - (lower-index part of
    // w_n applied to Sigma_1..Sigma_{n-1}); the z_n-coefficient of w_n is a_1 = 1.
    std::vector<TruncatedSeries> sigma;
    for (int n = 1; n <= N; ++n) {
        TruncatedSeries acc = TruncatedSeries::zero(vars, g.ring, order);
        for (int d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            int e = n / d;
            const CoefficientElement& a = g.a[static_cast<size_t>(e)];
            if (a.is_zero()) continue;
            acc = acc + (var(d, false).pow(e) + var(d, true).pow(e)).scaled(a);
            if (d < n) acc = acc - sigma[static_cast<size_t>(d - 1)].pow(e).scaled(a);
        }
        sigma.push_back(std::move(acc));
    }
    return sigma;
}

std::optional<PLocalWitness> sigma_integrality_witness(const GhostData& g, int N, long p) {
    auto sigma = sigma_polynomials(g, N);
    for (int n = 1; n <= N; ++n) {
        auto w = sigma[static_cast<size_t>(n - 1)].p_local_witness(p);
        if (w) {
            w->where = "Sigma_" + std::to_string(n) + " at " + w->where;
            return w;
        }
    }
    return std::nullopt;
}

WittVector witt_vector_from_constants(GhostPtr g, const std::vector<Rational>& values) {
    static VarsPtr novars = make_vars({});
    WittVector v;
    v.ghost = std::move(g);
    for (const Rational& q : values)
        v.coords.push_back(TruncatedSeries::constant(novars, v.ghost->ring, 1, q));
    return v;
}

WittVector witt_zero_like(const WittVector& a) {
    WittVector z;
    z.ghost = a.ghost;
    for (const auto& c : a.coords)
        z.coords.push_back(TruncatedSeries::zero(c.vars(), c.ring(), c.order()));
    return z;
}

static void check_pair(const WittVector& a, const WittVector& b) {
    if (!a.ghost || !b.ghost || !(*a.ghost == *b.ghost))
        throw Error("witt vectors carry different ghost data");
    if (a.coords.size() != b.coords.size()) throw Error("witt vectors have different lengths");
}

// Evaluate a Sigma polynomial (in x_1..x_N, y_1..y_N) at the coordinates.
static TruncatedSeries eval_sigma(const TruncatedSeries& sigma, const WittVector& a,
                                  const WittVector& b) {
    std::vector<TruncatedSeries> assign;
    assign.reserve(a.coords.size() * 2);
    const RingPtr& ring = a.coords.empty() ? a.ghost->ring : a.coords[0].ring();
    for (const auto& c : a.coords) assign.push_back(c.with_ring(ring));
    for (const auto& c : b.coords) assign.push_back(c.with_ring(ring));
    // Sigma coefficients live over the ghost ring; move them into the
    // coordinate ring before substituting.
    return sigma.with_ring(ring).substitute(assign, /*allow_constant_terms=*/true);
}

WittVector witt_add(const WittVector& a, const WittVector& b) {
    check_pair(a, b);
    int N = a.length();
    auto sigma = sigma_polynomials(*a.ghost, N);
    WittVector out;
    out.ghost = a.ghost;
    for (int n = 1; n <= N; ++n)
        out.coords.push_back(eval_sigma(sigma[static_cast<size_t>(n - 1)], a, b));
    return out;
}

std::vector<TruncatedSeries> witt_ghost_components(const WittVector& a) {
    int N = a.length();
    auto w = ghost_polynomials(*a.ghost, N);
    const RingPtr& ring = a.coords.empty() ? a.ghost->ring : a.coords[0].ring();
    std::vector<TruncatedSeries> assign;
    for (const auto& c : a.coords) assign.push_back(c.with_ring(ring));
    std::vector<TruncatedSeries> out;
    for (int n = 1; n <= N; ++n)
        out.push_back(
            w[static_cast<size_t>(n - 1)].with_ring(ring).substitute(assign, true));
    return out;
}

WittVector witt_neg(const WittVector& a) {
    // Solve w_n(b) = -w_n(a) by forward substitution: the z_n coefficient of
    // w_n is 1, everything else involves lower coordinates only.
    int N = a.length();
    auto wa = witt_ghost_components(a);
    const RingPtr& ring = a.coords.empty() ? a.ghost->ring : a.coords[0].ring();
    auto wpolys = ghost_polynomials(*a.ghost, N);
    WittVector out;
    out.ghost = a.ghost;
    for (int n = 1; n <= N; ++n) {
        // b_n = -w_n(a) - (w_n(b) - b_n) evaluated on b_1..b_{n-1}
        std::vector<TruncatedSeries> assign = out.coords;
        for (auto& s : assign) s = s.with_ring(ring);
        // pad with zeros for coordinates >= n (they do not occur in the lower part)
        const auto& shape = a.coords[static_cast<size_t>(n - 1)];
        while (static_cast<int>(assign.size()) < N)
            assign.push_back(TruncatedSeries::zero(shape.vars(), ring, shape.order()));
        TruncatedSeries lower =
            wpolys[static_cast<size_t>(n - 1)].with_ring(ring).substitute(assign, true);
        out.coords.push_back(-wa[static_cast<size_t>(n - 1)].with_ring(ring) - lower);
    }
    return out;
}

WittGroupReport witt_group_check(const GhostPtr& g, int samples, uint64_t seed) {
    WittGroupReport rep;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(-4, 4);
    int N = g->count();
    auto rand_vec = [&]() {
        std::vector<Rational> vals;
        for (int i = 0; i < N; ++i) vals.emplace_back(coord(rng));
        return witt_vector_from_constants(g, vals);
    };
    auto equal = [](const WittVector& u, const WittVector& v) {
        for (size_t i = 0; i < u.coords.size(); ++i)
            if (!(u.coords[i] == v.coords[i])) return false;
        return true;
    };
    for (int s = 0; s < samples; ++s) {
        WittVector a = rand_vec(), b = rand_vec(), c = rand_vec();
        WittVector zero = witt_zero_like(a);
        if (!equal(witt_add(a, zero), a)) rep.zero_ok = false;
        if (!equal(witt_add(a, b), witt_add(b, a))) rep.comm_ok = false;
        if (!equal(witt_add(witt_add(a, b), c), witt_add(a, witt_add(b, c))))
            rep.assoc_ok = false;
        if (!equal(witt_add(a, witt_neg(a)), zero)) rep.neg_ok = false;
        auto wa = witt_ghost_components(a);
        auto wb = witt_ghost_components(b);
        auto wsum = witt_ghost_components(witt_add(a, b));
        for (size_t i = 0; i < wa.size(); ++i)
            if (!(wsum[i] == wa[i] + wb[i])) rep.ghost_additive_ok = false;
    }
    if (!rep.pass()) rep.detail = "witt group axioms failed on sampled vectors";
    return rep;
}

}  // namespace morava
