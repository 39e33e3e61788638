#include "subjectivity/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "subjectivity/rng.hpp"
#include "subjectivity/stats.hpp"

namespace subjectivity {

namespace {

// Exact per-member references on the truth support.
struct Prepared {
  std::vector<QTable> tables;
  std::vector<double> exact_risk;                // R(alpha)
  std::vector<std::vector<double>> exact_local;  // [member][support subject]
};

Prepared prepare(const FiniteClass<HypothesisPair>& cls, const Truth& truth) {
  Prepared prep;
  prep.tables.reserve(cls.size());
  prep.exact_risk.resize(cls.size());
  prep.exact_local.resize(cls.size());
  for (std::size_t a = 0; a < cls.size(); ++a) {
    prep.tables.emplace_back(cls.member(a), truth.data, truth.subjects, truth.loss);
    const QTable& t = prep.tables.back();
    auto& local = prep.exact_local[a];
    local.resize(truth.subjects.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < truth.subjects.size(); ++j) {
      local[j] = weighted_sum(t.row(j), truth.data.weights());
      acc += truth.subjects.weight(j) * local[j];
    }
    prep.exact_risk[a] = acc;
  }
  return prep;
}

struct Draw {
  std::vector<std::size_t> subjects;  // indices into the truth subject support
  std::vector<std::size_t> samples;   // indices into the truth data support
};

// Subjects first, then samples; the order is part of the seeding contract.
Draw make_draw(const Truth& truth, std::size_t m, std::size_t l, Rng& rng) {
  Draw d;
  d.subjects.resize(m);
  for (auto& j : d.subjects) j = truth.subjects.sample_index(rng);
  d.samples.resize(l);
  for (auto& i : d.samples) i = truth.data.sample_index(rng);
  return d;
}

double empirical_risk(const QTable& table, const Draw& d) {
  double outer = 0.0;
  for (const std::size_t j : d.subjects) {
    const auto row = table.row(j);
    double inner = 0.0;
    for (const std::size_t i : d.samples) inner += row[i];
    outer += inner / static_cast<double>(d.samples.size());
  }
  return outer / static_cast<double>(d.subjects.size());
}

// Run `reps` independent replications, each on its own rng stream, writing
// into replication-indexed slots so the result is identical for any worker
// count.
template <typename Body>
void for_each_replication(std::size_t reps, std::size_t jobs, const Body& body) {
  if (jobs <= 1 || reps < 2) {
    for (std::size_t r = 0; r < reps; ++r) body(r);
    return;
  }
  jobs = std::min(jobs, reps);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t r = w; r < reps; r += jobs) body(r);
    });
  }
  for (auto& t : workers) t.join();
}

void require_reps(std::size_t reps) {
  if (reps == 0) throw std::domain_error("montecarlo: reps must be positive");
}

}  // namespace

ExperimentReport deviation_probability(const FiniteClass<HypothesisPair>& cls,
                                       const Truth& truth, double eps, std::size_t m,
                                       std::size_t l, std::size_t reps, std::uint64_t seed,
                                       std::size_t jobs) {
  require_reps(reps);
  if (m == 0 || l == 0) throw std::domain_error("deviation_probability: m, l must be positive");
  const Prepared prep = prepare(cls, truth);

  std::vector<std::uint8_t> exceed(reps, 0), exceed_two_sided(reps, 0);
  for_each_replication(reps, jobs, [&](std::size_t r) {
    Rng rng = Rng::stream(seed, r);
    const Draw d = make_draw(truth, m, l, rng);
    double worst = -std::numeric_limits<double>::infinity();
    double worst_abs = 0.0;
    for (std::size_t a = 0; a < cls.size(); ++a) {
      const double dev = prep.exact_risk[a] - empirical_risk(prep.tables[a], d);
      worst = std::max(worst, dev);
      worst_abs = std::max(worst_abs, std::abs(dev));
    }
    exceed[r] = worst > eps ? 1 : 0;
    exceed_two_sided[r] = worst_abs > eps ? 1 : 0;
  });

  std::size_t count = 0, count_two = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    count += exceed[r];
    count_two += exceed_two_sided[r];
  }

  ExperimentReport report;
  report.replications = reps;
  report.seed = seed;
  report.estimate = static_cast<double>(count) / static_cast<double>(reps);
  const Interval ci = wilson_interval(count, reps);
  report.ci_low = ci.low;
  report.ci_high = ci.high;
  report.per_step.push_back(
      {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(l), report.estimate,
       report.ci_low, report.ci_high});
  report.extras.emplace_back("two_sided_estimate",
                             static_cast<double>(count_two) / static_cast<double>(reps));
  return report;
}

ExperimentReport decomposition_check(const FiniteClass<HypothesisPair>& cls,
                                     const Truth& truth, double eps, std::size_t m,
                                     std::size_t l, std::size_t reps, std::uint64_t seed,
                                     std::size_t jobs) {
  require_reps(reps);
  if (m == 0 || l == 0) throw std::domain_error("decomposition_check: m, l must be positive");
  const Prepared prep = prepare(cls, truth);
  const double half_eps = 0.5 * eps;

  std::vector<std::uint8_t> lhs(reps, 0), subj(reps, 0);
  std::vector<double> data_counts(reps, 0.0), rhs_total(reps, 0.0);
  for_each_replication(reps, jobs, [&](std::size_t r) {
    Rng rng = Rng::stream(seed, r);
    const Draw d = make_draw(truth, m, l, rng);

    double lhs_worst = -std::numeric_limits<double>::infinity();
    double subj_worst = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < cls.size(); ++a) {
      lhs_worst = std::max(lhs_worst,
                           prep.exact_risk[a] - empirical_risk(prep.tables[a], d));
      double local_mean = 0.0;
      for (const std::size_t j : d.subjects) local_mean += prep.exact_local[a][j];
      local_mean /= static_cast<double>(m);
      subj_worst = std::max(subj_worst, prep.exact_risk[a] - local_mean);
    }

    // one data term per drawn subject slot
    double exceeding_slots = 0.0;
    for (const std::size_t j : d.subjects) {
      double slot_worst = -std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < cls.size(); ++a) {
        const auto row = prep.tables[a].row(j);
        double emp = 0.0;
        for (const std::size_t i : d.samples) emp += row[i];
        emp /= static_cast<double>(l);
        slot_worst = std::max(slot_worst, prep.exact_local[a][j] - emp);
      }
      if (slot_worst > half_eps) exceeding_slots += 1.0;
    }

    lhs[r] = lhs_worst > eps ? 1 : 0;
    subj[r] = subj_worst > half_eps ? 1 : 0;
    data_counts[r] = exceeding_slots;
    rhs_total[r] = static_cast<double>(subj[r]) + exceeding_slots;
  });

  std::size_t lhs_count = 0, subj_count = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    lhs_count += lhs[r];
    subj_count += subj[r];
  }

  ExperimentReport report;
  report.replications = reps;
  report.seed = seed;
  report.estimate = static_cast<double>(lhs_count) / static_cast<double>(reps);
  const Interval lhs_ci = wilson_interval(lhs_count, reps);
  report.ci_low = lhs_ci.low;
  report.ci_high = lhs_ci.high;

  const double subj_est = static_cast<double>(subj_count) / static_cast<double>(reps);
  const double data_est = mean(data_counts);
  const double rhs_est = mean(rhs_total);
  const Interval rhs_ci = bootstrap_mean_interval(rhs_total, 1000, seed ^ 0x5eedu);
  const bool violation = lhs_ci.low > rhs_ci.high;

  report.extras.emplace_back("rhs_subject_term", subj_est);
  report.extras.emplace_back("rhs_data_terms_sum", data_est);
  report.extras.emplace_back("rhs_total", rhs_est);
  report.extras.emplace_back("rhs_ci_low", rhs_ci.low);
  report.extras.emplace_back("rhs_ci_high", rhs_ci.high);
  report.pass = !violation;
  report.per_step.push_back(
      {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(l), report.estimate,
       report.ci_low, report.ci_high});
  return report;
}

ExperimentReport consistency_trace(const FiniteClass<HypothesisPair>& cls, const Truth& truth,
                                   double c, std::span<const SchedulePoint> schedule,
                                   std::size_t reps, std::uint64_t seed, std::size_t jobs) {
  require_reps(reps);
  if (schedule.empty()) throw std::domain_error("consistency_trace: empty schedule");
  const Prepared prep = prepare(cls, truth);

  std::vector<std::size_t> level_set;
  for (std::size_t a = 0; a < cls.size(); ++a)
    if (prep.exact_risk[a] >= c) level_set.push_back(a);
  if (level_set.empty())
    throw EmptyLevelSetError("consistency_trace: no member has true risk >= c");

  double inf_true = std::numeric_limits<double>::infinity();
  for (const std::size_t a : level_set) inf_true = std::min(inf_true, prep.exact_risk[a]);

  ExperimentReport report;
  report.replications = reps;
  report.seed = seed;
  report.extras.emplace_back("level_set_size", static_cast<double>(level_set.size()));
  report.extras.emplace_back("inf_true_risk", inf_true);

  std::vector<double> stats(reps);
  for (std::size_t step = 0; step < schedule.size(); ++step) {
    const std::size_t m = schedule[step].m;
    const std::size_t l = schedule[step].l;
    for_each_replication(reps, jobs, [&](std::size_t r) {
      Rng rng = Rng::stream(seed, step * reps + r);
      const Draw d = make_draw(truth, m, l, rng);
      double inf_emp = std::numeric_limits<double>::infinity();
      for (const std::size_t a : level_set)
        inf_emp = std::min(inf_emp, empirical_risk(prep.tables[a], d));
      stats[r] = std::abs(inf_emp - inf_true);
    });
    const double est = mean(stats);
    const Interval ci = bootstrap_mean_interval(stats, 1000, seed ^ (step + 1));
    report.per_step.push_back({schedule[step].m, schedule[step].l, est, ci.low, ci.high});
  }

  report.estimate = report.per_step.back().estimate;
  report.ci_low = report.per_step.back().ci_low;
  report.ci_high = report.per_step.back().ci_high;
  return report;
}

ExperimentReport unbiasedness_check(const HypothesisPair& hyp, const Truth& truth,
                                    std::size_t m, std::size_t l, std::size_t reps,
                                    std::uint64_t seed, std::size_t jobs) {
  require_reps(reps);
  if (m == 0 || l == 0) throw std::domain_error("unbiasedness_check: m, l must be positive");
  const Prepared prep = prepare(FiniteClass<HypothesisPair>({hyp}), truth);

  std::vector<double> values(reps);
  for_each_replication(reps, jobs, [&](std::size_t r) {
    Rng rng = Rng::stream(seed, r);
    const Draw d = make_draw(truth, m, l, rng);
    values[r] = empirical_risk(prep.tables[0], d);
  });

  const double mean_emp = mean(values);
  const double se = std::sqrt(sample_variance(values) / static_cast<double>(reps));
  const double bias = std::abs(mean_emp - prep.exact_risk[0]);

  ExperimentReport report;
  report.replications = reps;
  report.seed = seed;
  report.estimate = mean_emp;
  report.ci_low = mean_emp - 1.959963984540054 * se;
  report.ci_high = mean_emp + 1.959963984540054 * se;
  report.extras.emplace_back("exact_risk", prep.exact_risk[0]);
  report.extras.emplace_back("bias", bias);
  report.extras.emplace_back("standard_error", se);
  // 1e-12 absolute guard covers the zero-variance case up to rounding
  if (reps >= 2) report.pass = bias <= 3.0 * se + 1e-12;
  report.per_step.push_back(
      {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(l), mean_emp,
       report.ci_low, report.ci_high});
  return report;
}

}  // namespace subjectivity
