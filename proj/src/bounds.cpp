#include "regtri/bounds.hpp"

#include "regtri/census.hpp"
#include "regtri/generators.hpp"

namespace regtri {

namespace {

Rational rational_pow(const Rational& base, const Int& exp) {
    if (exp == 0) return 1;
    bool neg = exp < 0;
    Int e = neg ? Int(-exp) : exp;
    if (neg && base == 0) throw Error("0 cannot take a negative power");
    auto eu = e.convert_to<std::uint64_t>();
    Rational r(pow_int(numerator(base), eu), pow_int(denominator(base), eu));
    return neg ? 1 / r : r;
}

void require_parity(std::uint32_t n, std::uint32_t d) {
    if (static_cast<std::uint64_t>(n) * d % 2 != 0)
        throw ParityViolation("d*n must be even");
}

void require_d2n(std::uint32_t n, std::uint32_t d) {
    if (static_cast<std::uint64_t>(d) * d > n)
        throw PreconditionD2N("needs d*d <= n: d=" + std::to_string(d) +
                              " n=" + std::to_string(n));
}

} // namespace

Rational phi_preimage_bound_exact(std::uint32_t n, std::uint32_t d,
                                  std::uint32_t weight) {
    if (n == 0) throw Error("n must be positive");
    require_parity(n, d);
    std::uint64_t H = static_cast<std::uint64_t>(n) * d;
    Rational prefactor(pow_int(H, H / 2));
    return prefactor * rational_pow(Rational(static_cast<std::uint64_t>(d) * d, n),
                                    Int(weight));
}

BigFloat phi_preimage_bound_log(std::uint32_t n, std::uint32_t d,
                                std::uint32_t weight) {
    if (n == 0) throw Error("n must be positive");
    require_parity(n, d);
    if (d == 0) return 0;  // empty profile, single empty pairing
    std::uint64_t H = static_cast<std::uint64_t>(n) * d;
    return BigFloat(H / 2) * log_int(Int(H)) +
           BigFloat(weight) * log_rational(Rational(static_cast<std::uint64_t>(d) * d, n));
}

namespace {

// Exponent of the (d^2/n) factor: ceil(T_c + eps*delta*d^2*n/(6d+6)) - 1.
Int count_bound_exponent(std::uint32_t n, std::uint32_t d, const Rational& c,
                         const Rational& eps, const Rational& delta) {
    Rational shift = eps * delta * Rational(static_cast<std::uint64_t>(d) * d) * n /
                     (6 * (Rational(d) + 1));
    return ceil_rational(t_c_value(n, d, c) + shift) - 1;
}

} // namespace

Rational badness_bound_exact(std::uint32_t n, std::uint32_t d, const Rational& c,
                             const Rational& eps, const Rational& delta) {
    if (n == 0) throw Error("n must be positive");
    require_parity(n, d);
    require_d2n(n, d);
    if (eps < 0 || delta < 0) throw Error("eps and delta must be nonnegative");
    if (d < 1) throw Error("count bounds need d >= 1");
    std::uint64_t H = static_cast<std::uint64_t>(n) * d;
    Rational prefactor = Rational(H, 2) * Rational(pow_int(2, H / 2)) *
                         Rational(pow_int(H, H / 2)) /
                         Rational(pow_int(factorial(d), n));
    Int E = count_bound_exponent(n, d, c, eps, delta);
    return prefactor *
           rational_pow(Rational(static_cast<std::uint64_t>(d) * d, n), E);
}

BigFloat badness_bound_log(std::uint32_t n, std::uint32_t d, const Rational& c,
                           const Rational& eps, const Rational& delta) {
    if (n == 0) throw Error("n must be positive");
    require_parity(n, d);
    require_d2n(n, d);
    if (eps < 0 || delta < 0) throw Error("eps and delta must be nonnegative");
    if (d < 1) throw Error("count bounds need d >= 1");
    std::uint64_t H = static_cast<std::uint64_t>(n) * d;
    BigFloat lg = log_int(Int(H)) - log_int(2)               // log(dn/2)
                  + BigFloat(H / 2) * log_int(2)             // 2^(dn/2)
                  + BigFloat(H / 2) * log_int(Int(H))        // (dn)^(dn/2)
                  - BigFloat(n) * log_int(factorial(d));     // (d!)^n
    Int E = count_bound_exponent(n, d, c, eps, delta);
    lg += to_bigfloat(E) *
          log_rational(Rational(static_cast<std::uint64_t>(d) * d, n));
    return lg;
}

Rational explicit_upper_count_exact(std::uint32_t n, std::uint32_t d,
                                    const Rational& c) {
    return badness_bound_exact(n, d, c, 0, 0);
}

BigFloat explicit_upper_count_log(std::uint32_t n, std::uint32_t d,
                                  const Rational& c) {
    return badness_bound_log(n, d, c, 0, 0);
}

Int planted_partition_count(std::uint32_t n, std::uint32_t d, std::uint32_t b) {
    std::uint64_t s = static_cast<std::uint64_t>(d) + 1;
    std::uint64_t used = b * s;
    if (used > n) throw InfeasibleSpec("blocks exceed n nodes");
    std::uint64_t m = n - used;
    return factorial(n) /
           (factorial(m) * factorial(b) * pow_int(factorial(s), b));
}

ResidualTerm ResidualTerm::exact(Int count) {
    if (count < 0) throw Error("residual count cannot be negative");
    ResidualTerm t;
    t.mode = ResidualMode::ExactCount;
    t.exact_count = std::move(count);
    t.certified = true;
    return t;
}

ResidualTerm ResidualTerm::gdn_heuristic(std::uint32_t m, std::uint32_t d) {
    ResidualTerm t;
    t.mode = ResidualMode::GdnHeuristic;
    if (m == 0) {
        t.log_value = 0;
        t.certified = true;  // empty residual, exactly one choice
        return t;
    }
    BigFloat dm = BigFloat(static_cast<std::uint64_t>(d) * m);
    t.log_value = dm / 2 * log_rational(Rational(m, static_cast<std::uint64_t>(d) + 1)) - dm;
    t.certified = false;
    return t;
}

ResidualTerm ResidualTerm::user_log(BigFloat log_value) {
    ResidualTerm t;
    t.mode = ResidualMode::UserLog;
    t.log_value = std::move(log_value);
    t.certified = false;
    return t;
}

LowerCount lower_count_log(std::uint32_t n, std::uint32_t d, const Rational& c,
                           const ResidualTerm& residual) {
    auto spec = PlantedSpec::clique_family(n, d, c);  // validates b, m, parity
    LowerCount out;
    out.b = spec.b;
    out.m = spec.m;
    if (residual.mode == ResidualMode::ExactCount && residual.exact_count == 0) {
        out.defined = false;  // empty family, lower bound is vacuous
        return out;
    }
    BigFloat res_log = residual.mode == ResidualMode::ExactCount
                           ? log_int(residual.exact_count)
                           : residual.log_value;
    out.defined = true;
    out.log_value = log_int(planted_partition_count(n, d, spec.b)) + res_log;
    out.certified = residual.certified;
    return out;
}

Rational rate(const Rational& c, std::uint32_t d, RateRegime regime) {
    if (c < 0 || c > 1) throw Error("c must lie in [0,1]");
    if (d < 1) throw Error("rates need d >= 1");
    if (regime == RateRegime::FixedD) return c * Rational(d - 1, d + 1);
    return c;
}

EpsDelta default_eps_delta(std::uint32_t n, std::uint32_t d, const Rational& c) {
    if (d < 2) throw Error("default schedule needs d >= 2");
    if (static_cast<std::uint64_t>(d) * d >= n)
        throw PreconditionD2N("default schedule needs n > d*d");
    if (c < 0 || c > 1) throw Error("c must lie in [0,1]");
    EpsDelta out;
    BigFloat ratio = log_int(Int(d)) /
                     log_rational(Rational(n, static_cast<std::uint64_t>(d) * d));
    out.delta = pow(to_bigfloat(3 * c), BigFloat(1) / 3) *
                pow(ratio, BigFloat(1) / 4);
    out.eps = out.delta * out.delta;
    out.delta_below_1_16 = out.delta < BigFloat(1) / 16;
    return out;
}

BoundSheet make_bound_sheet(std::uint32_t n, std::uint32_t d, const Rational& c,
                            const ResidualTerm& residual,
                            std::optional<Int> exact_count) {
    require_parity(n, d);
    if (n == 0 || d < 1) throw Error("bound sheets need n >= 1 and d >= 1");
    BoundSheet sheet;
    sheet.n = n;
    sheet.d = d;
    sheet.c = c;
    sheet.t_c = t_c_value(n, d, c);
    Int pw = ceil_rational(sheet.t_c) - 1;
    if (pw < 0) pw = 0;
    sheet.preimage_weight = pw.convert_to<std::uint32_t>();
    sheet.preimage_bound_log = phi_preimage_bound_log(n, d, sheet.preimage_weight);
    sheet.upper_defined = static_cast<std::uint64_t>(d) * d <= n;
    if (sheet.upper_defined)
        sheet.upper_count_log = explicit_upper_count_log(n, d, c);
    sheet.residual_mode = residual.mode;
    try {
        sheet.lower = lower_count_log(n, d, c, residual);
    } catch (const Error&) {
        sheet.lower = LowerCount{};  // no feasible planted family at (n,d,c)
    }
    sheet.rate_fixed_d = rate(c, d, RateRegime::FixedD);
    sheet.rate_growing_d = rate(c, d, RateRegime::GrowingD);
    if (exact_count && *exact_count > 0)
        sheet.exact_log = log_int(*exact_count);
    return sheet;
}

} // namespace regtri
