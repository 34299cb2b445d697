#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mcv/errors.hpp"
#include "mcv/properties.hpp"
#include "support.hpp"

using namespace mcv;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

MomentSummary ms2(double m1, double m2, const Matrix& cov) { return make_summary(Vector{{m1, m2}}, cov); }

const MomentSummary kGeneral = [] {
  Matrix s(3, 3);
  s << 2, 0.3, 0.1, 0.3, 1, 0.2, 0.1, 0.2, 0.5;
  return make_summary(Vector{{1.0, 2.0, 0.5}}, s);
}();

MetricSpec spec(MetricId id) { return MetricSpec{id}; }

}  // namespace

TEST_CASE("coherence") {
  CHECK(check_coherence(spec(MetricId::gamma_vn)).verdict == Verdict::holds);
  CHECK(check_coherence(spec(MetricId::g2)).verdict == Verdict::holds);
  CHECK(check_coherence(spec(MetricId::gamma_az)).verdict == Verdict::holds);
  const PropertyVerdict g1 = check_coherence(MetricSpec{MetricId::gq, 1.0});
  CHECK(g1.verdict == Verdict::violated);
  REQUIRE(g1.witness);
  CHECK(g1.witness->before != g1.witness->after);
  CHECK(check_coherence(MetricSpec{MetricId::gq, 2.0}).verdict == Verdict::holds);
  CHECK(check_coherence(spec(MetricId::t_coeff)).verdict == Verdict::violated);
}

TEST_CASE("scale invariance") {
  CHECK(check_scale_invariance(spec(MetricId::gamma_vn), kGeneral, 20).verdict == Verdict::holds);
  const PropertyVerdict g = check_scale_invariance(spec(MetricId::g2), kGeneral, 20);
  CHECK(g.verdict == Verdict::holds);
  CHECK(g.note.find("no violation found in 20 trials") != std::string::npos);

  const PropertyVerdict vv =
      check_scale_invariance(spec(MetricId::gamma_vv), ms2(2, 1, Matrix::Identity(2, 2)), mat2(2, 0, 0, 1));
  CHECK(vv.verdict == Verdict::violated);
  REQUIRE(vv.witness);
  CHECK_THAT(vv.witness->before, WithinAbs(std::sqrt(2.0 / 5.0), 1e-15));
  CHECK_THAT(vv.witness->after, WithinAbs(std::sqrt(5.0 / 17.0), 1e-15));

  for (MetricId id : {MetricId::gamma_r, MetricId::gamma_vv, MetricId::gamma_az}) {
    const PropertyVerdict v = check_scale_invariance(spec(id), kGeneral, 20);
    CHECK(v.verdict == Verdict::violated);
    REQUIRE(v.witness);
    CHECK(std::abs(v.witness->after - v.witness->before) > 0.01 * v.witness->before);
  }
}

TEST_CASE("harmonic aggregator") {
  const std::vector<double> same(5, 0.3);
  CHECK_THAT(harmonic_aggregator(same), WithinAbs(0.3, 1e-15));
  const std::vector<double> ones{1.0, 1.0};
  CHECK(harmonic_aggregator(ones) == 1.0);
  const std::vector<double> pair{0.5, 0.25};
  CHECK_THAT(harmonic_aggregator(pair), WithinAbs(1.0 / std::sqrt(10.0), 1e-15));
  CHECK_THAT(g2(ms2(2, 4, Matrix::Identity(2, 2))).value, WithinAbs(1.0 / std::sqrt(10.0), 1e-15));
  const std::vector<double> bad{0.5, 0.0};
  CHECK_THROWS_MATCHES(harmonic_aggregator(bad), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::ZeroCV;
                       }));
}

TEST_CASE("SUF") {
  const MomentSummary unit = ms2(1, 1, Matrix::Identity(2, 2));
  const PropertyVerdict g = check_suf(spec(MetricId::g2), ms2(2, 3, mat2(0.5, 0, 0, 4)));
  CHECK(g.verdict == Verdict::holds);
  CHECK(g.note == "equals the harmonic aggregator of the component CVs");

  const std::vector<Vector> partner{Vector{{2.0, 1.0}}};
  const PropertyVerdict r = check_suf(spec(MetricId::gamma_r), unit, partner);
  CHECK(r.verdict == Verdict::violated);
  REQUIRE(r.witness);
  CHECK_THAT(r.witness->before, WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
  CHECK_THAT(r.witness->after, WithinAbs(std::sqrt(2.0 / 5.0), 1e-15));

  const PropertyVerdict az = check_suf(spec(MetricId::gamma_az), unit, partner);
  CHECK(az.verdict == Verdict::violated);
  CHECK_THAT(az.witness->after, WithinAbs(std::sqrt(17.0 / 25.0), 1e-15));

  const PropertyVerdict vn = check_suf(spec(MetricId::gamma_vn), unit);
  CHECK(vn.verdict == Verdict::holds);
  CHECK(vn.note.find("not the harmonic aggregator") != std::string::npos);

  CHECK_THROWS_MATCHES(check_suf(spec(MetricId::g2), kGeneral), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::InvalidArgument;
                       }));
}

TEST_CASE("rising tide") {
  const MomentSummary tide_r = ms2(3, 3, mat2(1, 1, 1, 2));
  const PropertyVerdict r = check_rising_tide(spec(MetricId::gamma_r), tide_r, Vector{{1.0, -2.0}});
  CHECK(r.verdict == Verdict::violated);
  CHECK_THAT(r.witness->before, WithinAbs(std::sqrt(1.0 / 18.0), 1e-14));
  CHECK_THAT(r.witness->after, WithinAbs(std::sqrt(1.0 / 17.0), 1e-14));
  CHECK(r.witness->detail.find("c^T S^-1 m = 3") != std::string::npos);

  const MomentSummary tide_az = ms2(1, 0.1, mat2(1, 0, 0, 100));
  const PropertyVerdict az = check_rising_tide(spec(MetricId::gamma_az), tide_az, Vector{{0.0, 0.9}});
  CHECK(az.verdict == Verdict::violated);
  CHECK_THAT(az.witness->before, WithinRel(std::sqrt(2.0) / 1.01, 1e-12));
  CHECK_THAT(az.witness->after, WithinRel(std::sqrt(101.0) / 2.0, 1e-12));

  CHECK(check_rising_tide(spec(MetricId::g2), tide_r, Vector{{1.0, -2.0}}).verdict == Verdict::holds);
  CHECK(search_rising_tide(spec(MetricId::g2), kGeneral, 100).verdict == Verdict::holds);
  CHECK(search_rising_tide(spec(MetricId::gamma_vn), kGeneral, 100).verdict == Verdict::holds);

  CHECK_THROWS_MATCHES(check_rising_tide(spec(MetricId::g2), tide_r, Vector{{-1.0, 0.0}}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::InvalidDirection;
                       }));
}

TEST_CASE("g2 rising tide over random summaries and directions") {
  RandomStream rng(kDefaultSeed, stream_id(0x81, 0));
  for (int trial = 0; trial < 30; ++trial) {
    const MomentSummary ms = test::random_summary(1 + trial % 5, rng);
    const PropertyVerdict v = search_rising_tide(spec(MetricId::g2), ms, 20, static_cast<std::uint64_t>(trial));
    CHECK(v.verdict == Verdict::holds);
  }
}

TEST_CASE("cloning") {
  const auto ratio = [](MetricId id) { return *check_cloning(spec(id), kGeneral).ratio; };
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(check_cloning(spec(MetricId::g2), kGeneral).verdict == Verdict::holds);
  CHECK_THAT(ratio(MetricId::g2), WithinAbs(1.0, 1e-12));
  CHECK(check_cloning(spec(MetricId::gamma_vv), kGeneral).verdict == Verdict::holds);
  for (MetricId id : {MetricId::gamma_vn, MetricId::gamma_r, MetricId::gamma_az}) {
    CHECK(check_cloning(spec(id), kGeneral).verdict == Verdict::violated);
    CHECK_THAT(ratio(id), WithinAbs(h, 1e-12));
  }
}

TEST_CASE("dimension stability") {
  const SequenceSpec iid = SequenceSpec::iid(2.0, 2.0, 400);
  const PropertyVerdict g = check_dimension_stability(spec(MetricId::g2), iid);
  CHECK(g.verdict == Verdict::holds);
  CHECK(g.trajectory.size() == 400);
  for (double v : g.trajectory) CHECK_THAT(v, WithinAbs(std::sqrt(0.5), 1e-12));

  const PropertyVerdict vn = check_dimension_stability(spec(MetricId::gamma_vn), iid);
  CHECK(vn.verdict == Verdict::violated);
  CHECK_THAT(vn.trajectory.back(), WithinRel(1.0 / std::sqrt(800.0), 1e-12));

  CHECK(check_dimension_stability(spec(MetricId::sqrtn_gamma_az), iid).verdict == Verdict::holds);
  CHECK(check_dimension_stability(spec(MetricId::sqrtn_gamma_r), iid).verdict == Verdict::holds);
  CHECK(check_dimension_stability(spec(MetricId::gamma_vv), iid).verdict == Verdict::holds);
  CHECK(check_dimension_stability(spec(MetricId::t_coeff), iid).verdict == Verdict::inconclusive);

  SequenceSpec drifting;
  drifting.kind = SequenceSpec::Kind::custom_marginals;
  drifting.mean = [](Index i) { return static_cast<double>(i); };
  drifting.variance = [](Index) { return 1.0; };
  drifting.n_max = 50;
  CHECK_THROWS_MATCHES(check_dimension_stability(spec(MetricId::g2), drifting), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::NonConvergentSpec;
                       }));

  SequenceSpec converging = drifting;
  converging.mean = [](Index i) { return 2.0 + 1.0 / static_cast<double>(i * i); };
  converging.variance = [](Index) { return 2.0; };
  converging.n_max = 400;
  CHECK(check_dimension_stability(spec(MetricId::g2), converging).verdict == Verdict::holds);

  SequenceSpec zero = converging;
  zero.mean = [](Index i) { return i == 3 ? 0.0 : 1.0; };
  CHECK_THROWS_AS(validate(zero), Error);
}

TEST_CASE("exact-moment samples reproduce the target moments") {
  const DataSet d = exact_moment_sample(kGeneral, 50, 7);
  const MomentSummary ms = estimate_moments(d);
  CHECK(test::max_abs(ms.mean - kGeneral.mean) < 1e-12);
  CHECK(test::max_abs(ms.cov - kGeneral.cov) < 1e-12);
  CHECK(exact_moment_sample(kGeneral, 50, 7).values() == d.values());
}

TEST_CASE("golden checks all pass") {
  const std::vector<GoldenCheck> golden = golden_checks();
  CHECK(golden.size() >= 15);
  for (const GoldenCheck& g : golden) {
    INFO(g.name << ": expected " << g.expected << ", got " << g.actual);
    CHECK(g.passed);
    CHECK(std::abs(g.actual - g.expected) <= g.tolerance);
  }
}

TEST_CASE("claim matrix entries") {
  CHECK(matrix_metrics().size() == 8);
  for (PropertyId p : all_property_ids()) {
    CHECK(expected_verdict(MetricId::g2, p) == Verdict::holds);
    CHECK(parse_property_id(to_string(p)) == p);
  }
  CHECK(expected_verdict(MetricId::gamma_vn, PropertyId::cloning) == Verdict::violated);
  CHECK(expected_verdict(MetricId::t_coeff, PropertyId::coherence) == Verdict::violated);
  CHECK(expected_verdict(MetricId::t_coeff, PropertyId::cloning) == Verdict::holds);
  CHECK(expected_verdict(MetricId::gamma_r, PropertyId::coherence) == Verdict::holds);
  CHECK(expected_verdict(MetricId::gamma_r, PropertyId::cloning) == Verdict::violated);
}

TEST_CASE("verdicts are deterministic for a fixed seed") {
  const PropertyVerdict a = search_rising_tide(spec(MetricId::gamma_vv), kGeneral, 30, 5);
  const PropertyVerdict b = search_rising_tide(spec(MetricId::gamma_vv), kGeneral, 30, 5);
  CHECK(a.verdict == b.verdict);
  CHECK(a.witness->before == b.witness->before);
  CHECK(a.witness->after == b.witness->after);
  CHECK(a.witness->detail == b.witness->detail);
}
