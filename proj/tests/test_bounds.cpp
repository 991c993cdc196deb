#include <doctest.h>

#include "regtri/bounds.hpp"
#include "regtri/census.hpp"
#include "regtri/enumerate.hpp"

using namespace regtri;

namespace {

bool close(const BigFloat& a, const BigFloat& b, double tol = 1e-30) {
    BigFloat aa = abs(a), ab = abs(b);
    BigFloat scale = aa > ab ? aa : ab;
    if (scale < 1) scale = 1;
    return BigFloat(abs(a - b)) <= scale * BigFloat(tol);
}

} // namespace

TEST_CASE("preimage bounds at frozen values") {
    CHECK(phi_preimage_bound_exact(4, 3, 3) == Rational(34012224));
    CHECK(phi_preimage_bound_exact(6, 2, 2) == Rational(1327104));
    CHECK(phi_preimage_bound_exact(6, 2, 0) == Rational(2985984));  // 12^6
    // weight grows by one <=> multiply by d^2/n
    CHECK(phi_preimage_bound_exact(6, 2, 3) ==
          phi_preimage_bound_exact(6, 2, 2) * Rational(4, 6));
    CHECK_THROWS_AS(phi_preimage_bound_exact(0, 2, 0), Error);
    CHECK_THROWS_AS(phi_preimage_bound_exact(7, 3, 1), ParityViolation);
}

TEST_CASE("preimage log form agrees with the exact form") {
    for (std::uint32_t w : {0u, 1u, 2u, 5u}) {
        BigFloat direct = phi_preimage_bound_log(8, 3, w);
        BigFloat via_exact = log_rational(phi_preimage_bound_exact(8, 3, w));
        CHECK(close(direct, via_exact));
    }
}

TEST_CASE("explicit upper count at frozen values") {
    CHECK(explicit_upper_count_exact(6, 2, Rational(1)) == Rational(11943936));
    CHECK(close(explicit_upper_count_log(6, 2, Rational(1)),
                log_rational(Rational(11943936))));
    // eps = 0 collapses the badness refinement to the plain bound
    CHECK(badness_bound_exact(6, 2, Rational(1), 0, 0) ==
          explicit_upper_count_exact(6, 2, Rational(1)));
    CHECK_THROWS_AS(explicit_upper_count_exact(6, 3, Rational(1)),
                    PreconditionD2N);
    CHECK_THROWS_AS(explicit_upper_count_exact(7, 3, Rational(1)),
                    ParityViolation);
    CHECK_THROWS_AS(badness_bound_exact(16, 2, Rational(1, 2), -1, 1), Error);
}

TEST_CASE("badness refinement tightens the bound when the exponent moves") {
    // T_c(16,2,1/2) = 8/3; shift eps*delta*d^2*n/(6d+6) = 32/9 at eps=delta=1,
    // so the exponent jumps from ceil(8/3)-1 = 2 to ceil(56/9)-1 = 6
    Rational plain = explicit_upper_count_exact(16, 2, Rational(1, 2));
    Rational refined = badness_bound_exact(16, 2, Rational(1, 2), 1, 1);
    CHECK(refined < plain);
    Rational factor(4, 16);
    CHECK(refined == plain * factor * factor * factor * factor);
    CHECK(close(badness_bound_log(16, 2, Rational(1, 2), 1, 1),
                log_rational(refined)));
}

TEST_CASE("planted partition counts") {
    CHECK(planted_partition_count(6, 2, 2) == 10);
    CHECK(planted_partition_count(9, 2, 3) == 280);
    CHECK(planted_partition_count(8, 3, 1) == 70);
    CHECK(planted_partition_count(8, 3, 2) == 35);
    CHECK(planted_partition_count(6, 2, 0) == 1);
    CHECK_THROWS_AS(planted_partition_count(6, 2, 3), InfeasibleSpec);
}

TEST_CASE("residual terms") {
    ResidualTerm z = ResidualTerm::exact(0);
    CHECK(z.mode == ResidualMode::ExactCount);
    CHECK(z.certified);
    LowerCount lc = lower_count_log(6, 2, Rational(1), z);
    CHECK_FALSE(lc.defined);
    CHECK(lc.b == 2);
    CHECK(lc.m == 0);

    LowerCount one = lower_count_log(6, 2, Rational(1), ResidualTerm::exact(1));
    CHECK(one.defined);
    CHECK(one.certified);
    CHECK(one.b == 2);
    CHECK(one.m == 0);
    CHECK(close(one.log_value, log_int(10)));

    ResidualTerm empty = ResidualTerm::gdn_heuristic(0, 3);
    CHECK(empty.certified);
    CHECK(close(empty.log_value, BigFloat(0)));

    ResidualTerm g = ResidualTerm::gdn_heuristic(8, 3);
    CHECK_FALSE(g.certified);
    CHECK(close(g.log_value, BigFloat(12) * log_int(2) - 24));

    ResidualTerm u = ResidualTerm::user_log(BigFloat(5));
    CHECK(u.mode == ResidualMode::UserLog);
    CHECK_FALSE(u.certified);
    LowerCount lu = lower_count_log(20, 3, Rational(1, 2), u);
    CHECK(lu.defined);
    CHECK_FALSE(lu.certified);
    CHECK(lu.b == 3);
    CHECK(lu.m == 8);
    CHECK(close(lu.log_value, log_int(planted_partition_count(20, 3, 3)) + 5));

    CHECK_THROWS_AS(lower_count_log(10, 3, Rational(1), ResidualTerm::exact(1)),
                    InfeasibleSpec);
    CHECK_THROWS_AS(ResidualTerm::exact(-1), Error);
}

TEST_CASE("certified lower bounds stay below the exact count") {
    // (9,2,c=1/3): b=1 block K_3, m=6 residual; triangle-component-free
    // residuals keep the construction injective
    Int residual(exact_clique_component_free_count(6, 2));
    CHECK(residual == 60);
    LowerCount lc =
        lower_count_log(9, 2, Rational(1, 3), ResidualTerm::exact(residual));
    CHECK(lc.defined);
    CHECK(lc.certified);
    CHECK(lc.b == 1);
    CHECK(lc.m == 6);
    // 84 * 60 = 5040 placements vs exact conditioned count
    CHECK(close(lc.log_value, log_int(Int(84) * 60)));
    Int exact(exact_conditioned_count(9, 2, Rational(1, 3)));
    CHECK(Int(84) * 60 <= exact);
    // the raw residual count without the component-free restriction overcounts
    Int raw(enumerate_regular_graphs(6, 2, {}));
    CHECK(Int(84) * raw > exact);
}

TEST_CASE("rate coefficients") {
    CHECK(rate(Rational(1), 2, RateRegime::FixedD) == Rational(1, 3));
    CHECK(rate(Rational(1, 2), 3, RateRegime::FixedD) == Rational(1, 4));
    CHECK(rate(Rational(1, 2), 3, RateRegime::GrowingD) == Rational(1, 2));
    CHECK(rate(Rational(0), 5, RateRegime::FixedD) == 0);
    CHECK_THROWS_AS(rate(Rational(2), 3, RateRegime::FixedD), Error);
    CHECK_THROWS_AS(rate(Rational(1), 0, RateRegime::FixedD), Error);
}

TEST_CASE("default eps delta schedule") {
    EpsDelta s = default_eps_delta(100, 4, Rational(1, 2));
    CHECK(close(s.eps, s.delta * s.delta));
    CHECK(s.delta > 0);
    CHECK_FALSE(s.delta_below_1_16);  // delta ~ 1.07 here

    EpsDelta tiny = default_eps_delta(100, 2, Rational(1, 1000000000));
    CHECK(tiny.delta_below_1_16);
    CHECK(tiny.delta < BigFloat(1) / 16);
    CHECK(close(tiny.eps, tiny.delta * tiny.delta));

    CHECK_THROWS_AS(default_eps_delta(100, 1, Rational(1, 2)), Error);
    CHECK_THROWS_AS(default_eps_delta(4, 2, Rational(1, 2)), PreconditionD2N);
    CHECK_THROWS_AS(default_eps_delta(100, 4, Rational(3, 2)), Error);
}

TEST_CASE("bound sheet assembles a consistent sandwich") {
    BoundSheet sheet = make_bound_sheet(6, 2, Rational(1),
                                        ResidualTerm::exact(1), Int(10));
    CHECK(sheet.t_c == Rational(2));
    CHECK(sheet.preimage_weight == 1);
    CHECK(close(sheet.preimage_bound_log,
                log_rational(phi_preimage_bound_exact(6, 2, 1))));
    CHECK(sheet.upper_defined);
    CHECK(close(sheet.upper_count_log, log_rational(Rational(11943936))));
    CHECK(sheet.lower.defined);
    CHECK(sheet.lower.certified);
    REQUIRE(sheet.exact_log.has_value());
    CHECK(sheet.lower.log_value <= *sheet.exact_log);
    CHECK(*sheet.exact_log <= sheet.upper_count_log);
    CHECK(sheet.rate_fixed_d == Rational(1, 3));
    CHECK(sheet.rate_growing_d == Rational(1));
}

TEST_CASE("bound sheet degrades gracefully") {
    // d^2 > n: no explicit upper bound, the rest still fills in
    BoundSheet s1 = make_bound_sheet(10, 4, Rational(1, 2),
                                     ResidualTerm::gdn_heuristic(5, 4));
    CHECK_FALSE(s1.upper_defined);
    CHECK(s1.t_c == Rational(6));
    CHECK(s1.preimage_weight == 5);
    CHECK(s1.lower.defined);
    CHECK_FALSE(s1.lower.certified);
    CHECK(s1.lower.b == 1);
    CHECK(s1.lower.m == 5);

    // no feasible clique family: the lower bound is dropped, not fatal
    BoundSheet s2 = make_bound_sheet(10, 3, Rational(1),
                                     ResidualTerm::gdn_heuristic(0, 3));
    CHECK_FALSE(s2.lower.defined);
    CHECK(s2.upper_defined);

    // c = 0 clamps the preimage weight at zero
    BoundSheet s3 = make_bound_sheet(6, 2, Rational(0), ResidualTerm::exact(0));
    CHECK(s3.preimage_weight == 0);
    CHECK(s3.t_c == 0);

    CHECK_THROWS_AS(make_bound_sheet(7, 3, Rational(1), ResidualTerm::exact(1)),
                    ParityViolation);
}
