#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "regtri/numeric.hpp"
#include "regtri/reveal.hpp"

namespace regtri {

// Upper bound on the number of port-labeled preimages of any reveal profile
// of the given weight: (d*n)^(d*n/2) * (d^2/n)^weight. Exact rational and
// natural-log forms.
Rational phi_preimage_bound_exact(std::uint32_t n, std::uint32_t d,
                                  std::uint32_t weight);
BigFloat phi_preimage_bound_log(std::uint32_t n, std::uint32_t d,
                                std::uint32_t weight);

// Count bound for simple d-regular graphs with at least c * t_max(n,d)
// triangles:
//   (d*n/2) * 2^(d*n/2) * (d*n)^(d*n/2) / (d!)^n * (d^2/n)^(ceil(T_c) - 1).
// Requires d*d <= n (PreconditionD2N) and d*n even (ParityViolation).
Rational explicit_upper_count_exact(std::uint32_t n, std::uint32_t d,
                                    const Rational& c);
BigFloat explicit_upper_count_log(std::uint32_t n, std::uint32_t d,
                                  const Rational& c);

// Refinement with exponent ceil(T_c + eps*delta*d^2*n/(6d+6)) - 1, same
// prefactor; reduces to the explicit bound at eps = 0.
Rational badness_bound_exact(std::uint32_t n, std::uint32_t d, const Rational& c,
                             const Rational& eps, const Rational& delta);
BigFloat badness_bound_log(std::uint32_t n, std::uint32_t d, const Rational& c,
                           const Rational& eps, const Rational& delta);

// Ways to choose b disjoint blocks of size s on n labeled nodes, leaving an
// m-node remainder: n! / (m! * b! * (s!)^b) with s = d+1 and m = n - b*s.
Int planted_partition_count(std::uint32_t n, std::uint32_t d, std::uint32_t b);

enum class ResidualMode { ExactCount, GdnHeuristic, UserLog };

// The |residual family| factor of the planted lower bound.
struct ResidualTerm {
    ResidualMode mode = ResidualMode::ExactCount;
    Int exact_count = 0;     // ExactCount only
    BigFloat log_value = 0;  // GdnHeuristic / UserLog
    bool certified = false;

    static ResidualTerm exact(Int count);
    // (1/2)*d*m*log(m/(d+1)) - d*m; the asymptotic shape, not a certified
    // pointwise bound.
    static ResidualTerm gdn_heuristic(std::uint32_t m, std::uint32_t d);
    static ResidualTerm user_log(BigFloat log_value);
};

struct LowerCount {
    bool defined = false;    // false when the residual count is zero
    BigFloat log_value = 0;
    bool certified = false;
    std::uint32_t b = 0;
    std::uint32_t m = 0;
};

// log of planted_partition_count(n,d,b) * residual, with b = ceil(c*n/(d+1)).
// Throws InfeasibleSpec when no clique family fits (m in 1..d+1, parity, ...).
LowerCount lower_count_log(std::uint32_t n, std::uint32_t d, const Rational& c,
                           const ResidualTerm& residual);

enum class RateRegime { FixedD, GrowingD };

// Exponential-rate coefficient of the count bounds: c*(d-1)/(d+1) for fixed
// d (per (n/2)*log n), c for growing d (per (d*n/2)*log n).
Rational rate(const Rational& c, std::uint32_t d, RateRegime regime);

struct EpsDelta {
    BigFloat eps;
    BigFloat delta;
    // delta < 1/16 is needed by the structure guarantees; false => caller
    // should warn.
    bool delta_below_1_16 = false;
};

// Default schedule delta = (3c)^(1/3) * (log d / log(n/d^2))^(1/4),
// eps = delta^2. Requires d >= 2 and n > d*d.
EpsDelta default_eps_delta(std::uint32_t n, std::uint32_t d, const Rational& c);

// Everything the bounds CLI prints for one (n,d,c) row.
struct BoundSheet {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    Rational c = 0;
    Rational t_c = 0;
    std::uint32_t preimage_weight = 0;   // max(0, ceil(T_c)-1)
    BigFloat preimage_bound_log = 0;
    bool upper_defined = false;          // requires d*d <= n
    BigFloat upper_count_log = 0;
    LowerCount lower;
    ResidualMode residual_mode = ResidualMode::GdnHeuristic;
    Rational rate_fixed_d = 0;
    Rational rate_growing_d = 0;
    std::optional<BigFloat> exact_log;   // log of the exact conditioned count
};

BoundSheet make_bound_sheet(std::uint32_t n, std::uint32_t d, const Rational& c,
                            const ResidualTerm& residual,
                            std::optional<Int> exact_count = std::nullopt);

} // namespace regtri
