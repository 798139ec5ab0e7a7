#include <doctest.h>

#include <random>

#include "equiaudit/domain.hpp"
#include "equiaudit/errors.hpp"
#include "equiaudit/generators.hpp"
#include "support/instances.hpp"

using namespace equiaudit;

TEST_CASE("fig3 instance: pair classification") {
  const DomainSpec domain = gen_fig3_instance().domain;
  // orbit {x0, x1} carries two labels: the swap is incorrect both ways
  CHECK(classify_pair(domain, 0, 1) == Tag::Incorrect);
  CHECK(classify_pair(domain, 1, 1) == Tag::Incorrect);
  // same-label orbit {x2, x3}
  CHECK(classify_pair(domain, 2, 1) == Tag::Correct);
  // identity pairs are always correct on the support
  for (int x = 0; x < 4; ++x) CHECK(classify_pair(domain, x, 0) == Tag::Correct);
}

TEST_CASE("fig3 audit measures") {
  const AuditReport report = audit(gen_fig3_instance().domain);
  CHECK(report.mu_undefined == 0.0);
  CHECK(report.mu_extrinsic == 0.0);
  CHECK(report.mu_incorrect == doctest::Approx((0.3 + 0.4) * 0.5).epsilon(1e-12));
  CHECK(report.mu_correct + report.mu_incorrect + report.mu_extrinsic + report.mu_undefined ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("xor instance: flips leave the support") {
  const DomainSpec domain = gen_xor_extrinsic().domain;
  for (int x = 0; x < 4; ++x) {
    CHECK(classify_pair(domain, x, 1) == Tag::Extrinsic);
    CHECK(classify_pair(domain, x + 4, 1) == Tag::Undefined);  // ghosts carry no mass
  }
  const AuditReport report = audit(domain);
  CHECK(report.mu_extrinsic == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.mu_correct == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("swiss roll with e = 1 is half extrinsic") {
  const AuditReport report = audit(gen_swiss_roll(0.0, 0.0, 1.0, 16, 0).domain);
  CHECK(report.mu_extrinsic == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.mu_correct == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.mu_incorrect == 0.0);
  CHECK(report.mu_undefined == 0.0);
}

TEST_CASE("fully correct square has no incorrect mass") {
  const AuditReport report = audit(gen_square(1.0, 0.4, 8).domain);
  CHECK(report.mu_incorrect == 0.0);
  CHECK(report.mu_extrinsic == 0.0);
}

TEST_CASE("vector targets use rep_y and the tolerance") {
  GroupPtr c2 = testsupport::shared_group(FiniteGroup::cyclic(2));
  PermutationAction action(c2, 2, {{0, 1}, {1, 0}});
  const TargetSpec target = TargetSpec::of_vectors({{1.0, 0.0}, {-1.0, 0.0}});

  SUBCASE("without rep_y the audit is rejected") {
    DomainSpec domain({0.5, 0.5}, target, action);
    CHECK_THROWS_AS(classify_pair(domain, 0, 1), InputError);
  }
  SUBCASE("sign representation makes the pair correct") {
    Mat minus = Mat::identity(2).scaled(-1.0);
    Representation rep(c2, 2, {Mat::identity(2), minus}, true);
    DomainSpec domain({0.5, 0.5}, target, action, rep);
    CHECK(classify_pair(domain, 0, 1) == Tag::Correct);
  }
  SUBCASE("identity representation makes it incorrect, beyond any small tol") {
    DomainSpec domain({0.5, 0.5}, target, action, Representation::identity(c2, 2));
    CHECK(classify_pair(domain, 0, 1) == Tag::Incorrect);
    CHECK(classify_pair(domain, 0, 1, 1e-3) == Tag::Incorrect);
    CHECK(classify_pair(domain, 0, 1, 10.0) == Tag::Correct);
  }
}

TEST_CASE("every pair gets exactly one tag and measures sum to one") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const DomainSpec domain = testsupport::random_labeled_domain(rng, trial % 2 == 0);
    const AuditReport report = audit(domain);
    CHECK(report.mu_correct + report.mu_incorrect + report.mu_extrinsic + report.mu_undefined ==
          doctest::Approx(1.0).epsilon(1e-9));
    for (int x = 0; x < domain.n_points; ++x) {
      if (domain.on_support(x)) CHECK(report.tag(x, 0) == Tag::Correct);
      for (int g = 0; g < domain.group().order(); ++g)
        CHECK(report.tag(x, g) == classify_pair(domain, x, g));
    }
  }
}

TEST_CASE("incorrectness is symmetric under involutions") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    const DomainSpec domain = testsupport::random_labeled_domain(rng, false);
    const AuditReport report = audit(domain);
    const FiniteGroup& group = domain.group();
    for (int g = 0; g < group.order(); ++g) {
      if (group.compose(g, g) != FiniteGroup::kIdentity) continue;
      for (int x = 0; x < domain.n_points; ++x) {
        const int gx = domain.action.apply(g, x);
        if (!domain.on_support(x) || !domain.on_support(gx)) continue;
        CHECK((report.tag(x, g) == Tag::Incorrect) == (report.tag(gx, g) == Tag::Incorrect));
      }
    }
  }
}

TEST_CASE("clean audits imply global equivariance") {
  std::mt19937_64 rng(23);
  int clean_seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const DomainSpec domain = testsupport::random_labeled_domain(rng, false);
    const AuditReport report = audit(domain);
    if (report.mu_incorrect != 0.0 || report.mu_extrinsic != 0.0) continue;
    bool has_extrinsic_pair = false;
    for (int x = 0; x < domain.n_points && !has_extrinsic_pair; ++x)
      for (int g = 0; g < domain.group().order(); ++g)
        if (report.tag(x, g) == Tag::Extrinsic) has_extrinsic_pair = true;
    if (has_extrinsic_pair) continue;
    ++clean_seen;
    // brute force: f(gx) = f(x) wherever p > 0
    for (int x = 0; x < domain.n_points; ++x) {
      if (!domain.on_support(x)) continue;
      for (int g = 0; g < domain.group().order(); ++g)
        CHECK(domain.label(domain.action.apply(g, x)) == domain.label(x));
    }
  }
  CHECK(clean_seen > 0);
}

TEST_CASE("domain validation") {
  GroupPtr c2 = testsupport::shared_group(FiniteGroup::cyclic(2));
  PermutationAction action(c2, 2, {{0, 1}, {1, 0}});
  CHECK_THROWS_AS(DomainSpec({0.5, 0.6}, TargetSpec::of_labels({0, 1}), action), InputError);
  CHECK_THROWS_AS(DomainSpec({0.5, 0.5}, TargetSpec::of_labels({0}), action), InputError);
  CHECK_THROWS_AS(DomainSpec({-0.5, 1.5}, TargetSpec::of_labels({0, 1}), action), InputError);
  CHECK_THROWS_AS(TargetSpec::of_labels({0, -1}), InputError);
  CHECK_THROWS_AS(TargetSpec::of_vectors({{1.0}, {1.0, 2.0}}), InputError);
}
