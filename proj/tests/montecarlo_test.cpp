#include <doctest.h>

#include <cmath>

#include "subjectivity/montecarlo.hpp"
#include "subjectivity/rng.hpp"
#include "test_util.hpp"

using namespace subjectivity;
using namespace subjectivity::testing;

namespace {

// Q == 0.5 everywhere: shifted predictor under the absolute loss.
FiniteClass<HypothesisPair> constant_q_class() {
  return FiniteClass<HypothesisPair>({HypothesisPair{
      [](const Sample& z, const SubjectToken&) { return z.y + 0.5; }, unit_assignment()}});
}

Truth constant_truth() {
  return {labels_only({0.1, 0.6}), uniform_subjects(2), LossSpec(LossKind::absolute, 0.0, 1.0)};
}

// Bernoulli(1/2) basic loss: two equally likely labels, zero predictor.
Truth bernoulli_truth() {
  return {labels_only({0.0, 1.0}), uniform_subjects(1), LossSpec(LossKind::squared, 0.0, 1.0)};
}

FiniteClass<HypothesisPair> bernoulli_class() {
  return FiniteClass<HypothesisPair>({lifted_constant(0.0)});
}

// Three members with exact true risks 0.2, 0.5 and 0.8: step predictors on
// ten zero-labeled inputs.
Truth step_truth() {
  std::vector<Sample> samples;
  for (int i = 0; i < 10; ++i) samples.emplace_back(static_cast<double>(i), 0.0);
  return {DataDist::uniform(std::move(samples)), uniform_subjects(2),
          LossSpec(LossKind::squared, 0.0, 1.0)};
}

FiniteClass<HypothesisPair> step_class() {
  std::vector<HypothesisPair> members;
  for (const double threshold : {2.0, 5.0, 8.0}) {
    members.push_back({[threshold](const Sample& z, const SubjectToken&) {
                         return z.x[0] < threshold ? 1.0 : 0.0;
                       },
                       unit_assignment()});
  }
  return FiniteClass<HypothesisPair>(std::move(members));
}

bool reports_equal(const ExperimentReport& a, const ExperimentReport& b) {
  if (a.replications != b.replications || a.seed != b.seed || a.estimate != b.estimate ||
      a.ci_low != b.ci_low || a.ci_high != b.ci_high || a.pass != b.pass ||
      a.per_step.size() != b.per_step.size() || a.extras != b.extras)
    return false;
  for (std::size_t i = 0; i < a.per_step.size(); ++i) {
    const auto& x = a.per_step[i];
    const auto& y = b.per_step[i];
    if (x.m != y.m || x.l != y.l || x.estimate != y.estimate || x.ci_low != y.ci_low ||
        x.ci_high != y.ci_high)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("deviation probability of a constant-loss class is zero") {
  const auto report =
      deviation_probability(constant_q_class(), constant_truth(), 0.1, 4, 8, 200, 21);
  CHECK(report.estimate == 0.0);
  CHECK(report.ci_low == 0.0);
  CHECK(report.ci_high > 0.0);
  CHECK(report.ci_high < 0.05);
}

TEST_CASE("singleton Bernoulli class stays under the Hoeffding value") {
  const double eps = 0.5;
  const std::size_t l = min_data_samples(10, eps);  // 29
  const auto report =
      deviation_probability(bernoulli_class(), bernoulli_truth(), eps, 10, l, 2000, 4);
  const double hoeffding = std::exp(-2.0 * static_cast<double>(l) * eps * eps);
  const double half_width = 0.5 * (report.ci_high - report.ci_low);
  CHECK(report.estimate <= hoeffding + 3.0 * half_width);
}

TEST_CASE("Hoeffding dominance holds across an (l, eps) grid") {
  for (const double eps : {0.15, 0.25, 0.4}) {
    for (const std::size_t l : {20u, 60u, 150u}) {
      const auto report =
          deviation_probability(bernoulli_class(), bernoulli_truth(), eps, 2, l, 500, 33);
      const double hoeffding = std::exp(-2.0 * static_cast<double>(l) * eps * eps);
      const double half_width = 0.5 * (report.ci_high - report.ci_low);
      CHECK(report.estimate <= hoeffding + 3.0 * half_width);
    }
  }
}

TEST_CASE("deviation probability decays along the coupled schedule") {
  const std::vector<std::uint64_t> ms{4, 8, 16, 32};
  const auto schedule = make_schedule(ms, 0.5);
  std::vector<ExperimentReport> reports;
  for (const auto& point : schedule)
    reports.push_back(deviation_probability(bernoulli_class(), bernoulli_truth(), 0.05,
                                            point.m, point.l, 2000, 11));
  CHECK(reports.front().estimate > 0.0);  // eps low enough to see exceedances
  CHECK(reports.back().estimate <= reports.front().estimate);
}

TEST_CASE("decomposition check on a constant class is all zeros") {
  const auto report =
      decomposition_check(constant_q_class(), constant_truth(), 0.2, 4, 8, 300, 2);
  CHECK(report.estimate == 0.0);
  for (const auto& [name, value] : report.extras) {
    if (name == "rhs_subject_term" || name == "rhs_data_terms_sum") CHECK(value == 0.0);
  }
  REQUIRE(report.pass.has_value());
  CHECK(*report.pass);
}

TEST_CASE("decomposition holds on the 16-candidate bench") {
  const auto bench = two_point_bench();
  const Truth truth{bench.data, bench.subjects, bench.loss};
  const auto report = decomposition_check(bench.pairs, truth, 0.4, 4, 32, 2000, 6);

  REQUIRE(report.pass.has_value());
  CHECK(*report.pass);

  double subject_term = -1.0, data_sum = -1.0, rhs_total = -1.0;
  for (const auto& [name, value] : report.extras) {
    if (name == "rhs_subject_term") subject_term = value;
    if (name == "rhs_data_terms_sum") data_sum = value;
    if (name == "rhs_total") rhs_total = value;
  }
  CHECK(subject_term >= 0.0);
  CHECK(data_sum >= 0.0);
  CHECK(rhs_total == doctest::Approx(subject_term + data_sum).epsilon(1e-12));
}

TEST_CASE("consistency trace restricted to a level set contracts") {
  const auto truth = step_truth();
  const auto cls = step_class();
  const std::vector<std::uint64_t> ms{4, 16, 64};
  const auto schedule = make_schedule(ms, 0.5);

  const auto report = consistency_trace(cls, truth, 0.4, schedule, 2000, 3);
  double level_size = 0.0;
  for (const auto& [name, value] : report.extras)
    if (name == "level_set_size") level_size = value;
  CHECK(level_size == 2.0);
  REQUIRE(report.per_step.size() == 3);
  CHECK(report.per_step.back().estimate < report.per_step.front().estimate);

  // c below every true risk: the whole class qualifies
  const auto unrestricted = consistency_trace(cls, truth, -1.0, schedule, 50, 3);
  for (const auto& [name, value] : unrestricted.extras)
    if (name == "level_set_size") CHECK(value == 3.0);

  CHECK_THROWS_AS(consistency_trace(cls, truth, 0.9, schedule, 50, 3), EmptyLevelSetError);
}

TEST_CASE("unbiasedness check") {
  // constant Q = 0.25: exactly zero bias and zero variance
  const FiniteClass<HypothesisPair> quarter({HypothesisPair{
      [](const Sample& z, const SubjectToken&) { return z.y + 0.25; }, unit_assignment()}});
  const Truth truth{labels_only({0.3, 0.7}), uniform_subjects(2),
                    LossSpec(LossKind::absolute, 0.0, 1.0)};
  const auto constant_report =
      unbiasedness_check(quarter.member(0), truth, 3, 5, 400, 12);
  CHECK(constant_report.estimate == 0.25);
  REQUIRE(constant_report.pass.has_value());
  CHECK(*constant_report.pass);

  const auto bench = two_point_bench();
  const Truth bench_truth{bench.data, bench.subjects, bench.loss};
  // member 0 concentrates both samples on subject 0, so its empirical risk
  // actually fluctuates
  const auto report =
      unbiasedness_check(bench.pairs.member(0), bench_truth, 4, 16, 5000, 8);
  REQUIRE(report.pass.has_value());
  CHECK(*report.pass);

  const auto degenerate =
      unbiasedness_check(bench.pairs.member(5), bench_truth, 4, 16, 1, 8);
  CHECK(!degenerate.pass.has_value());
}

TEST_CASE("reports are reproducible and worker-count invariant") {
  const auto bench = two_point_bench();
  const Truth truth{bench.data, bench.subjects, bench.loss};

  const auto a = deviation_probability(bench.pairs, truth, 0.3, 4, 16, 400, 99, 1);
  const auto b = deviation_probability(bench.pairs, truth, 0.3, 4, 16, 400, 99, 1);
  const auto c = deviation_probability(bench.pairs, truth, 0.3, 4, 16, 400, 99, 2);
  CHECK(reports_equal(a, b));
  CHECK(reports_equal(a, c));

  const auto d1 = decomposition_check(bench.pairs, truth, 0.4, 4, 16, 300, 5, 1);
  const auto d2 = decomposition_check(bench.pairs, truth, 0.4, 4, 16, 300, 5, 2);
  CHECK(reports_equal(d1, d2));
}

TEST_CASE("harness empirical risk agrees with global_risk on the drawn supports") {
  const auto bench = two_point_bench();
  const Truth truth{bench.data, bench.subjects, bench.loss};
  const std::size_t m = 4, l = 16;
  const std::uint64_t seed = 14;

  for (std::size_t rep = 0; rep < 20; ++rep) {
    // mirror the harness draw order: subjects first, then samples
    Rng rng = Rng::stream(seed, rep);
    std::vector<std::size_t> subj(m), samp(l);
    for (auto& j : subj) j = truth.subjects.sample_index(rng);
    for (auto& i : samp) i = truth.data.sample_index(rng);

    const auto& member = bench.pairs.member(rep % bench.pairs.size());

    double outer = 0.0;
    for (const std::size_t j : subj) {
      double inner = 0.0;
      for (const std::size_t i : samp)
        inner += basic_loss(truth.loss, truth.data.item(i), truth.subjects.item(j), member);
      outer += inner / static_cast<double>(l);
    }
    const double harness_value = outer / static_cast<double>(m);

    std::vector<Sample> drawn_samples;
    for (const std::size_t i : samp) drawn_samples.push_back(truth.data.item(i));
    std::vector<SubjectToken> drawn_tokens;
    for (const std::size_t j : subj) drawn_tokens.push_back(truth.subjects.item(j));
    const auto drawn_data = DataDist::uniform(std::move(drawn_samples));
    const auto drawn_subjects = SubjectDist::uniform(std::move(drawn_tokens));

    const double reference = global_risk(member, drawn_data, drawn_subjects, truth.loss);
    CHECK(std::abs(harness_value - reference) <= 1e-12);
  }
}

TEST_CASE("replication count validation") {
  CHECK_THROWS_AS(
      deviation_probability(constant_q_class(), constant_truth(), 0.1, 2, 2, 0, 1),
      std::domain_error);
}
