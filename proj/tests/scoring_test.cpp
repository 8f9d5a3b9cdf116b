#include <doctest.h>

#include <string>

#include "oracle/literal_scoring.hpp"
#include "rvss/scoring.hpp"
#include "support/generators.hpp"
#include "support/goldens.hpp"

using namespace rvss;

namespace {

ScoreTriple scores_of(std::string_view text) { return score(parse(text)).scores; }

}  // namespace

TEST_CASE("round_up") {
  CHECK(round_up(4.02) == 4.1);
  CHECK(round_up(4.00) == 4.0);
  CHECK(round_up(9.0641) == 9.1);
  CHECK(round_up(8.554) == 8.6);
  CHECK(round_up(0.0) == 0.0);
  CHECK(round_up(10.0) == 10.0);
  // 1.1 * 3 is 3.3000000000000003 in binary; it must not bump to 3.4.
  CHECK(round_up(1.1 * 3) == 3.3);
  CHECK(round_up(4.00001) == 4.0);
  CHECK(round_up(4.00005) == 4.1);
}

TEST_CASE("severity bands") {
  CHECK(severity_rating(0.0) == Severity::None);
  CHECK(severity_rating(0.1) == Severity::Low);
  CHECK(severity_rating(3.9) == Severity::Low);
  CHECK(severity_rating(4.0) == Severity::Medium);
  CHECK(severity_rating(6.9) == Severity::Medium);
  CHECK(severity_rating(7.0) == Severity::High);
  CHECK(severity_rating(8.9) == Severity::High);
  CHECK(severity_rating(9.0) == Severity::Critical);
  CHECK(severity_rating(10.0) == Severity::Critical);
}

TEST_CASE("golden vectors") {
  for (const auto& g : testsupport::kGoldens) {
    CAPTURE(g.label);
    const auto s = scores_of(g.vector);
    CHECK(s.base == g.base);
    CHECK(s.temporal == g.temporal);
    CHECK(s.environmental == g.environmental);
  }
}

TEST_CASE("worked sub-scores") {
  const auto cvss = score(parse("CVSS:3.0/AV:N/AC:L/PR:N/UI:N/S:U/C:N/I:H/A:H")).subscores;
  CHECK(cvss.exploitability == doctest::Approx(3.887042775).epsilon(1e-9));
  CHECK(cvss.isc_base == doctest::Approx(0.8064).epsilon(1e-12));
  CHECK(cvss.impact == doctest::Approx(5.177088).epsilon(1e-9));
  CHECK_FALSE(cvss.m_exploitability.has_value());

  const auto v = parse("RVSS:1.0/AV:AN/AC:L/PR:N/UI:N/Y:O/S:U/C:N/I:N/A:N/H:H");
  CHECK(exploitability_subscore(v) == doctest::Approx(3.118780203).epsilon(1e-9));
  CHECK(impact_subscore(v).isc == doctest::Approx(0.42));
  CHECK(impact_subscore(v).impact == doctest::Approx(2.6964).epsilon(1e-9));

  const auto anpi = parse("RVSS:1.0/AV:ANPI/AC:L/PR:N/UI:N/Y:Z/S:U/C:N/I:N/A:N/H:N");
  CHECK(exploitability_subscore(anpi) == doctest::Approx(0.56705).epsilon(1e-5));
  CHECK(base_score(anpi) == 0.0);
}

TEST_CASE("environmental sub-scores with requirements") {
  const auto r = score(parse(
      "CVSS:3.0/AV:N/AC:L/PR:N/UI:N/S:U/C:N/I:H/A:H/E:P/RL:U/RC:C/IR:H/AR:H"));
  REQUIRE(r.subscores.isc_modified.has_value());
  // 1 - (1 - 0.84)^2 is capped at 0.915.
  CHECK(*r.subscores.isc_modified == doctest::Approx(0.915));
  CHECK(*r.subscores.m_impact == doctest::Approx(5.8743));
}

TEST_CASE("clamped changed-scope impact") {
  const auto v = parse("RVSS:1.0/AV:AN/AC:L/PR:N/UI:N/Y:T/S:C/C:H/I:H/A:H/H:H");
  const auto impact = impact_subscore(v);
  CHECK(impact.isc > 1.0);
  CHECK(impact.impact == doctest::Approx(8.0579).epsilon(1e-4));
  CHECK(exploitability_subscore(v) == doctest::Approx(3.4023).epsilon(1e-4));
}

TEST_CASE("worst-case integrity variant") {
  CHECK(scores_of("RVSS:1.0/AV:AN/AC:L/PR:N/UI:N/Y:O/S:U/C:N/I:L/A:N/H:H").base == 7.3);
}

TEST_CASE("case study intermediates") {
  // Without age and safety, then with age, then with age and Safety E.
  CHECK(scores_of("RVSS:1.0/AV:ANPR/AC:L/PR:N/UI:N/Y:U/S:U/C:N/I:H/A:H/H:N").base == 6.4);
  CHECK(scores_of("RVSS:1.0/AV:ANPR/AC:L/PR:N/UI:N/Y:T/S:U/C:N/I:H/A:H/H:N").base == 6.6);
  CHECK(scores_of("RVSS:1.0/AV:ANPR/AC:L/PR:N/UI:N/Y:T/S:U/C:N/I:H/A:H/H:E").base == 7.7);
  CHECK(scores_of("RVSS:1.0/AV:AN/AC:L/PR:N/UI:N/Y:O/S:U/C:H/I:H/A:H/H:N").base == 9.0);
  CHECK(scores_of("RVSS:1.0/AV:AN/AC:L/PR:N/UI:N/Y:O/S:U/C:H/I:H/A:H/H:E").base == 10.0);
}

TEST_CASE("flipping row 1 safety lowers the severity band") {
  const auto with = score(parse("RVSS:1.0/AV:ANPR/AC:L/PR:N/UI:N/Y:T/S:U/C:N/I:H/A:H/H:E"));
  const auto without = score(parse("RVSS:1.0/AV:ANPR/AC:L/PR:N/UI:N/Y:T/S:U/C:N/I:H/A:H/H:N"));
  CHECK(with.severities.base == Severity::High);
  CHECK(without.severities.base == Severity::Medium);
}

TEST_CASE("modified metrics override base ones") {
  const auto base = "CVSS:3.0/AV:N/AC:L/PR:L/UI:N/S:U/C:H/I:H/A:H";
  CHECK(scores_of(base).environmental == scores_of(base).base);
  const auto scoped = scores_of(std::string(base) + "/MS:C");
  // PR:L weighs 0.68 under the modified changed scope.
  CHECK(scoped.environmental == 9.9);
  CHECK(scores_of(std::string(base) + "/MAV:P/MPR:H").environmental < scores_of(base).base);
}

TEST_CASE("RVSS Not Defined modified metrics leave the score unchanged") {
  const std::string v = "RVSS:1.0/AV:ANPR/AC:L/PR:N/UI:N/Y:T/S:U/C:N/I:H/A:H/H:E";
  const auto s = scores_of(v + "/MAV:X/MY:X/MH:X/HR:X");
  CHECK(s.environmental == 7.7);
  CHECK(scores_of(v + "/MY:Z").environmental < 7.7);
  CHECK(scores_of(v + "/MH:H").environmental > 7.7);
}

TEST_CASE("property: CVSS Not Defined collapse") {
  testsupport::Rng rng(21);
  for (int i = 0; i < 500; ++i) {
    const auto text = testsupport::random_vector(rng, Scheme::Cvss30, 0.0);
    const auto s = scores_of(testsupport::with_all_not_defined(text, Scheme::Cvss30));
    CHECK(s.environmental == s.base);
    CHECK(s.temporal == s.base);
  }
}

TEST_CASE("property: engine agrees with the oracle on full vectors") {
  testsupport::Rng rng(22);
  for (int i = 0; i < 3000; ++i) {
    const auto scheme = testsupport::random_scheme(rng);
    const auto text = testsupport::random_vector(rng, scheme, 0.5);
    CAPTURE(text);
    const auto s = scores_of(text);
    const auto o = oracle::evaluate(text);
    CHECK(s.base == o.base);
    CHECK(s.temporal == o.temporal);
    CHECK(s.environmental == o.environmental);
  }
}

TEST_CASE("property: scores stay within bounds") {
  testsupport::Rng rng(23);
  for (int i = 0; i < 3000; ++i) {
    const auto text = testsupport::random_vector(rng, testsupport::random_scheme(rng), 0.5);
    const auto s = scores_of(text);
    for (double x : {s.base, s.temporal, s.environmental}) {
      CHECK(x >= 0.0);
      CHECK(x <= 10.0);
      CHECK(round_up(x) == x);
    }
    CHECK(s.temporal <= s.base);
  }
}
