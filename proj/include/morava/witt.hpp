#pragma once

#include <cstdint>
#include <memory>

#include "morava/series.hpp"

namespace morava {

// Logarithm data attached to a Witt-vector group: the coefficients a_i of
// l(x) = sum a_i x^i with a_1 = 1, kept as ring elements.
struct GhostData {
    std::vector<CoefficientElement> a;  // 1-indexed; a[0] unused
    RingPtr ring;
    std::string label;

    int count() const { return static_cast<int>(a.size()) - 1; }

    bool operator==(const GhostData& o) const {
        return a == o.a && *ring == *o.ring;
    }
};

using GhostPtr = std::shared_ptr<const GhostData>;

// Read the a_i off a univariate logarithm (must start t + ...).
GhostPtr ghost_from_logarithm(const TruncatedSeries& log, int count, const std::string& label);

// Ghost data of the Morava K-theory logarithm; with v_to_one the preset that
// sends v_n to 1.
GhostPtr morava_ghost(long p, int n, int count, bool v_to_one);

// Ghost data of an additive logarithm (a_i = 0 for i >= 2).
GhostPtr additive_ghost(RingPtr ring, int count);

// Ghost data of the multiplicative logarithm over Z[v1,v1^-1] (a_i = v1^{i-1}/i).
GhostPtr multiplicative_ghost(int count);

// w_n(z) = sum_{d|n} a_{n/d} z_d^{n/d}, polynomials in z_1..z_N.
std::vector<TruncatedSeries> ghost_polynomials(const GhostData& g, int N);

// The unique solution of w_n(Sigma_1..Sigma_n) = w_n(x) + w_n(y); polynomials
// in x_1..x_N, y_1..y_N.
std::vector<TruncatedSeries> sigma_polynomials(const GhostData& g, int N);

// First Sigma coefficient whose denominator is not coprime to p, if any. A
// witness signals a logarithm that does not belong to the claimed p-local ring.
std::optional<PLocalWitness> sigma_integrality_witness(const GhostData& g, int N, long p);

// Finite Witt vector: coordinates are ring elements represented as (possibly
// constant) series over a common variable set so the same machinery serves
// plain vectors and vectors of polynomial classes.
struct WittVector {
    std::vector<TruncatedSeries> coords;
    GhostPtr ghost;

    int length() const { return static_cast<int>(coords.size()); }
};

WittVector witt_vector_from_constants(GhostPtr g, const std::vector<Rational>& values);
WittVector witt_zero_like(const WittVector& a);

WittVector witt_add(const WittVector& a, const WittVector& b);
WittVector witt_neg(const WittVector& a);

// Ghost components w_n evaluated on a vector.
std::vector<TruncatedSeries> witt_ghost_components(const WittVector& a);

struct WittGroupReport {
    bool zero_ok = true;
    bool comm_ok = true;
    bool assoc_ok = true;
    bool neg_ok = true;
    bool ghost_additive_ok = true;
    std::string detail;
    bool pass() const { return zero_ok && comm_ok && assoc_ok && neg_ok && ghost_additive_ok; }
};

// Group axioms on seeded random sample vectors with small integer coordinates.
WittGroupReport witt_group_check(const GhostPtr& g, int samples, uint64_t seed);

}  // namespace morava
