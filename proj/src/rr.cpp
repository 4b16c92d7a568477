#include "morava/rr.hpp"

namespace morava {

ToddData todd_classes(const TruncatedSeries& phi) {
    if (phi.vars()->names.size() != 1) throw VariableMismatch("todd_classes: phi must be univariate");
    if (!phi.constant_term().is_zero() || !phi.coefficient_univ(1).is_one())
        throw Error("todd_classes: phi must start t + ...");
    TruncatedSeries t = TruncatedSeries::variable(phi.vars(), phi.ring(), phi.order(), 0);
    return ToddData{t.divide_exact(phi), phi.divide_exact(t), phi};
}

static std::vector<std::string> named(const std::string& stem, int count) {
    std::vector<std::string> names;
    for (int i = 1; i <= count; ++i) names.push_back(stem + std::to_string(i));
    return names;
}

ChernTransport::ChernTransport(long p, int n, int generators, int dimension)
    : p_(p), n_(n), dim_(dimension) {
    pn_ = 1;
    for (int i = 0; i < n; ++i) pn_ *= p;
    ring_ = make_ring(p, {n}, {n}, true);
    kn_vars_ = make_vars(named("x", generators));
    chow_vars_ = make_vars(named("c", generators));
    int order = dim_ + 1;
    phi_ = phi_morphism(p, n, order).with_ring(ring_);
    law_ = morava_fgl(p, n, order).F.with_ring(ring_);
    ghost_ = morava_ghost(p, n, static_cast<int>(pn_), /*v_to_one=*/true);
}

PolynomialClass ChernTransport::kn_generator(int i) const {
    return PolynomialClass{
        TruncatedSeries::variable(kn_vars_, ring_, dim_ + 1, static_cast<size_t>(i)),
        TheoryDescriptor{TheoryKind::morava, p_, n_}};
}

PolynomialClass ChernTransport::kn_zero() const {
    return PolynomialClass{TruncatedSeries::zero(kn_vars_, ring_, dim_ + 1),
                           TheoryDescriptor{TheoryKind::morava, p_, n_}};
}

PolynomialClass ChernTransport::fgl_sum(const PolynomialClass& a,
                                        const PolynomialClass& b) const {
    return PolynomialClass{law_.substitute({a.poly, b.poly}), a.theory};
}

PolynomialClass ChernTransport::transport(const PolynomialClass& alpha) const {
    std::vector<TruncatedSeries> assign;
    for (size_t i = 0; i < kn_vars_->names.size(); ++i)
        assign.push_back(phi_.substitute(
            {TruncatedSeries::variable(chow_vars_, ring_, dim_ + 1, i)}));
    return PolynomialClass{alpha.poly.substitute(assign), TheoryDescriptor{TheoryKind::chow}};
}

PolynomialClass ChernTransport::component(const PolynomialClass& transported, int i) const {
    return PolynomialClass{transported.poly.homogeneous_part(i), transported.theory};
}

PolynomialClass ChernTransport::component_normalized(const PolynomialClass& transported,
                                                     int i) const {
    TruncatedSeries part = transported.poly.homogeneous_part(i).map_coefficients(
        [&](const CoefficientElement& c) {
            return c.eval_generators({{n_, Rational(1)}});
        });
    return PolynomialClass{std::move(part), transported.theory};
}

PolynomialClass ChernTransport::operation_c(const PolynomialClass& alpha) const {
    PolynomialClass ch = transport(alpha);
    TruncatedSeries ch1 = component_normalized(ch, 1).poly;
    TruncatedSeries chpn = component_normalized(ch, static_cast<int>(pn_)).poly;
    TruncatedSeries result = chpn + ch1.pow(static_cast<int>(pn_)).scaled(Rational(1, p_));
    return PolynomialClass{std::move(result), TheoryDescriptor{TheoryKind::chow}};
}

PolynomialClass ChernTransport::operation_c_graded(const PolynomialClass& alpha) const {
    PolynomialClass ch = transport(alpha);
    TruncatedSeries ch1 = component(ch, 1).poly;
    TruncatedSeries chpn = component(ch, static_cast<int>(pn_)).poly;
    CoefficientElement vn_over_p = CoefficientElement::generator(ring_, n_) * Rational(1, p_);
    TruncatedSeries result = chpn + ch1.pow(static_cast<int>(pn_)).scaled(vn_over_p);
    return PolynomialClass{std::move(result), TheoryDescriptor{TheoryKind::chow}};
}

WittVector ChernTransport::witt_image(const PolynomialClass& alpha) const {
    PolynomialClass ch = transport(alpha);
    WittVector v;
    v.ghost = ghost_;
    for (int i = 1; i < pn_; ++i) v.coords.push_back(component_normalized(ch, i).poly);
    v.coords.push_back(-operation_c(alpha).poly);
    return v;
}

}  // namespace morava
