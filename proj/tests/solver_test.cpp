#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "subjectivity/rng.hpp"
#include "subjectivity/solver.hpp"
#include "test_util.hpp"

using namespace subjectivity;
using namespace subjectivity::testing;

namespace {

const LossSpec kSquared(LossKind::squared, 0.0, 1.0);

// Independent oracle for small clustered-constant problems: enumerate every
// hard assignment and use the weighted label mean per cluster.
double cluster_oracle(const DataDist& data, std::size_t m) {
  const std::size_t l = data.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < l; ++i) total *= m;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<std::size_t> assign(l);
    std::size_t rest = code;
    for (std::size_t i = 0; i < l; ++i) {
      assign[i] = rest % m;
      rest /= m;
    }
    std::vector<double> wsum(m, 0.0), wysum(m, 0.0);
    for (std::size_t i = 0; i < l; ++i) {
      wsum[assign[i]] += data.weight(i);
      wysum[assign[i]] += data.weight(i) * data.item(i).y;
    }
    double risk = 0.0;
    for (std::size_t i = 0; i < l; ++i) {
      const double c = wysum[assign[i]] / wsum[assign[i]];
      const double d = c - data.item(i).y;
      risk += data.weight(i) * d * d;
    }
    best = std::min(best, risk);
  }
  return best;
}

DataDist random_small_data(Rng& rng, std::size_t max_samples) {
  std::vector<double> labels(1 + rng.uniform_index(max_samples));
  for (auto& y : labels) y = rng.uniform01();
  return labels_only(labels);
}

}  // namespace

TEST_CASE("erm_fit picks the exhaustive minimizer with index tie-breaks") {
  const auto data = labels_only({0.0, 1.0});

  auto fit = erm_fit(constant_predictors({0.0, 0.5, 1.0}), data, kSquared);
  CHECK(fit.index == 1);
  CHECK(fit.risk == 0.25);
  CHECK(fit.trace == std::vector<double>{0.25});

  auto perfect = erm_fit(constant_predictors({0.0, 1.0}), labels_only({1.0}), kSquared);
  CHECK(perfect.index == 1);
  CHECK(perfect.risk == 0.0);

  // equal risks: lowest enumeration index wins
  auto tie = erm_fit(constant_predictors({0.25, 0.75}), data, kSquared);
  CHECK(tie.index == 0);
  CHECK(tie.risk == doctest::Approx(0.3125).epsilon(1e-15));
}

TEST_CASE("egrm_fit_exhaustive solves the 16-candidate bench exactly") {
  const auto bench = two_point_bench();
  auto fit = egrm_fit_exhaustive(bench.g_class, bench.h_class, bench.data, bench.subjects,
                                 bench.loss);
  CHECK(fit.risk == 0.0);

  // oracle: first zero-risk candidate in g-major order
  std::size_t expected_index = 0;
  double expected_risk = std::numeric_limits<double>::infinity();
  for (std::size_t gi = 0; gi < bench.g_class.size(); ++gi) {
    for (std::size_t hi = 0; hi < bench.h_class.size(); ++hi) {
      const HypothesisPair pair{bench.g_class.member(gi), bench.h_class.member(hi)};
      const double r = global_risk(pair, bench.data, bench.subjects, bench.loss);
      if (r < expected_risk) {
        expected_risk = r;
        expected_index = gi * bench.h_class.size() + hi;
      }
    }
  }
  CHECK(fit.index == expected_index);
  CHECK(fit.risk == expected_risk);

  CHECK_THROWS_AS(egrm_fit_exhaustive(bench.g_class, bench.h_class, bench.data,
                                      bench.subjects, bench.loss, 1),
                  SizeCapError);
}

TEST_CASE("single-subject exhaustive EGRM reduces to ERM") {
  Rng rng(101);
  const auto one = uniform_subjects(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto data = random_small_data(rng, 6);
    std::vector<double> constants(1 + rng.uniform_index(5));
    for (auto& c : constants) c = rng.uniform01();

    const auto erm = erm_fit(constant_predictors(constants), data, kSquared);

    std::vector<SubjectFn> g_members;
    for (const double c : constants)
      g_members.push_back(tau_constant_lift(constant_predictor(c)));
    std::vector<SubjectFn> h_members{unit_assignment()};
    const auto egrm = egrm_fit_exhaustive(FiniteClass<SubjectFn>(g_members),
                                          FiniteClass<SubjectFn>(h_members), data, one,
                                          kSquared);
    CHECK(std::abs(egrm.risk - erm.risk) <= 1e-12);
    CHECK(egrm.index == erm.index);  // one h member: product index == g index
  }
}

TEST_CASE("alternating solver is a fixed point at the exhaustive optimum") {
  const auto bench = two_point_bench();
  PerSubjectConstantFamily family;
  AlternatingConfig cfg;
  cfg.seed = 3;
  const std::vector<std::size_t> optimal_assignment{0, 1};

  auto fit = egrm_fit_alternating(family, bench.data, bench.subjects, bench.loss, cfg,
                                  optimal_assignment);
  CHECK(fit.iterations == 1);
  CHECK(fit.risk == 0.0);
  REQUIRE(fit.trace.size() == 2);
  CHECK(fit.trace[0] == 0.0);
  CHECK(fit.trace[1] == 0.0);
  // the fitted tables reproduce the optimum's predictions on the support
  CHECK(fit.hypothesis.g(bench.data.item(0), bench.subjects.item(0)) == 0.0);
  CHECK(fit.hypothesis.g(bench.data.item(1), bench.subjects.item(1)) == 1.0);
}

TEST_CASE("alternating solver with restarts matches the exhaustive bench optimum") {
  const auto bench = two_point_bench();
  PerSubjectConstantFamily family;
  AlternatingConfig cfg;
  cfg.restarts = 20;
  cfg.seed = 7;
  auto fit = egrm_fit_alternating(family, bench.data, bench.subjects, bench.loss, cfg);
  const auto oracle = egrm_fit_exhaustive(bench.g_class, bench.h_class, bench.data,
                                          bench.subjects, bench.loss);
  CHECK(std::abs(fit.risk - oracle.risk) <= 1e-9);
}

TEST_CASE("one-iteration runs emit a short nonincreasing trace") {
  Rng rng(131);
  const auto subjects = uniform_subjects(2);
  PerSubjectConstantFamily family;
  for (int trial = 0; trial < 20; ++trial) {
    const auto data = random_small_data(rng, 4);
    AlternatingConfig cfg;
    cfg.max_iters = 1;
    cfg.seed = rng.next_u64();
    auto fit = egrm_fit_alternating(family, data, subjects, kSquared, cfg);
    CHECK(fit.trace.size() <= 2);
    for (std::size_t t = 1; t < fit.trace.size(); ++t)
      CHECK(fit.trace[t] <= fit.trace[t - 1] + 1e-12);
  }
}

TEST_CASE("alternating traces are monotone and dominated by the oracle") {
  Rng rng(151);
  PerSubjectConstantFamily family;
  std::size_t exact_hits = 0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    const std::size_t m = 1 + rng.uniform_index(2);
    const auto subjects = uniform_subjects(m);
    const auto data = random_small_data(rng, 4);

    AlternatingConfig cfg;
    cfg.restarts = 20;
    cfg.seed = rng.next_u64();
    auto fit = egrm_fit_alternating(family, data, subjects, kSquared, cfg);

    for (std::size_t t = 1; t < fit.trace.size(); ++t)
      CHECK(fit.trace[t] <= fit.trace[t - 1] + 1e-12);

    const double oracle = cluster_oracle(data, m);
    CHECK(fit.risk >= oracle - 1e-9);
    if (fit.risk <= oracle + 1e-6) ++exact_hits;
  }
  // 20 restarts on <= 4 samples and <= 2 subjects: nearly always exact
  CHECK(static_cast<double>(exact_hits) >= 0.95 * trials);
}

TEST_CASE("identical seeds yield identical fits") {
  const auto bench = two_point_bench();
  PerSubjectConstantFamily family;
  AlternatingConfig cfg;
  cfg.restarts = 5;
  cfg.seed = 99;
  auto a = egrm_fit_alternating(family, bench.data, bench.subjects, bench.loss, cfg);
  auto b = egrm_fit_alternating(family, bench.data, bench.subjects, bench.loss, cfg);
  CHECK(a.risk == b.risk);
  CHECK(a.index == b.index);
  CHECK(a.iterations == b.iterations);
  CHECK(a.trace == b.trace);
  for (std::size_t i = 0; i < bench.data.size(); ++i)
    for (std::size_t j = 0; j < bench.subjects.size(); ++j) {
      CHECK(a.hypothesis.g(bench.data.item(i), bench.subjects.item(j)) ==
            b.hypothesis.g(bench.data.item(i), bench.subjects.item(j)));
      CHECK(a.hypothesis.h(bench.data.item(i), bench.subjects.item(j)) ==
            b.hypothesis.h(bench.data.item(i), bench.subjects.item(j)));
    }
}

TEST_CASE("closed-form refits for the absolute and zero-one losses") {
  PerSubjectConstantFamily family;
  const auto one = uniform_subjects(1);
  AlternatingConfig cfg;
  cfg.seed = 1;

  // weighted median: minimizes the mean absolute deviation
  const auto abs_fit = egrm_fit_alternating(family, labels_only({0.0, 0.2, 1.0}), one,
                                            LossSpec(LossKind::absolute, 0.0, 1.0), cfg);
  CHECK(abs_fit.risk == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  // best observed label: two of three samples agree
  const auto vote_fit = egrm_fit_alternating(family, labels_only({0.0, 0.0, 1.0}), one,
                                             LossSpec(LossKind::zero_one, 0.0, 1.0), cfg);
  CHECK(vote_fit.risk == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("config validation") {
  AlternatingConfig cfg;
  cfg.max_iters = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.max_iters = 1;
  cfg.tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.tol = 1e-12;
  cfg.restarts = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
