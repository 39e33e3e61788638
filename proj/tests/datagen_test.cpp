#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "subjectivity/datagen.hpp"
#include "subjectivity/rng.hpp"
#include "subjectivity/solver.hpp"
#include "test_util.hpp"

using namespace subjectivity;
using namespace subjectivity::testing;

TEST_CASE("multilabel_dataset replicates each input once per latent label") {
  MultiLabelSpec spec;
  spec.n_inputs = 1;
  spec.labels_per_input = 3;
  spec.label_table = {{0.0, 1.0, 2.0}};

  const auto data = multilabel_dataset(spec);
  REQUIRE(data.samples.size() == 3);
  for (const auto& z : data.samples) CHECK(z.x == std::vector<double>{0.0});
  CHECK(data.samples[0].y == 0.0);
  CHECK(data.samples[1].y == 1.0);
  CHECK(data.samples[2].y == 2.0);
  CHECK(data.latent_subjects == std::vector<std::size_t>{0, 1, 2});

  MultiLabelSpec four;
  four.n_inputs = 4;
  four.labels_per_input = 2;
  four.label_table.assign(4, {0.0, 1.0});
  CHECK(multilabel_dataset(four).samples.size() == 8);
}

TEST_CASE("generation is deterministic under the seed") {
  MultiLabelSpec spec;
  spec.n_inputs = 3;
  spec.labels_per_input = 2;
  spec.label_table = {{0.0, 1.0}, {2.0, 0.0}, {1.0, 1.0}};
  spec.noise_sd = 0.2;
  spec.seed = 77;

  const auto a = multilabel_dataset(spec);
  const auto b = multilabel_dataset(spec);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].x == b.samples[i].x);
    CHECK(a.samples[i].y == b.samples[i].y);
  }
  CHECK(a.latent_subjects == b.latent_subjects);

  spec.seed = 78;
  const auto c = multilabel_dataset(spec);
  bool any_difference = false;
  for (std::size_t i = 0; i < a.samples.size(); ++i)
    any_difference = any_difference || a.samples[i].y != c.samples[i].y;
  CHECK(any_difference);
}

TEST_CASE("confusion_error on the worked examples") {
  const LossSpec wide(LossKind::squared, 0.0, 4.0);

  MultiLabelSpec single;
  single.label_table = {{1.5}};
  CHECK(confusion_error(single, wide) == 0.0);

  MultiLabelSpec pair;
  pair.labels_per_input = 2;
  pair.label_table = {{0.0, 1.0}};
  CHECK(confusion_error(pair, wide) == 0.25);  // variance of {0, 1}

  MultiLabelSpec triple;
  triple.labels_per_input = 3;
  triple.label_table = {{0.0, 1.0, 2.0}};
  CHECK(confusion_error(triple, wide) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  MultiLabelSpec noisy = pair;
  noisy.noise_sd = 0.1;
  CHECK_THROWS_AS(confusion_error(noisy, wide), std::domain_error);
}

TEST_CASE("exhaustive risk gap reproduces the confusion error on seeded instances") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto instance = multilabel_gap_instance(random_multilabel_spec(seed));
    const double gap = risk_gap(instance.erm_class, instance.egrm_class, instance.data,
                                instance.subjects, instance.loss);
    const double oracle = confusion_error(instance.spec, instance.loss);
    CHECK(gap == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("sample order does not change risks beyond summation rounding") {
  Rng rng(91);
  const auto spec = random_multilabel_spec(13);
  const auto instance = multilabel_gap_instance(spec);

  auto shuffled_samples = instance.data.items();
  for (std::size_t i = shuffled_samples.size(); i > 1; --i)
    std::swap(shuffled_samples[i - 1], shuffled_samples[rng.uniform_index(i)]);
  const auto shuffled = DataDist::uniform(shuffled_samples);

  const auto fit = erm_fit(instance.erm_class, instance.data, instance.loss);
  const auto fit_shuffled = erm_fit(instance.erm_class, shuffled, instance.loss);
  CHECK(fit_shuffled.risk == doctest::Approx(fit.risk).epsilon(1e-12));

  // canonical order restored: bitwise identical
  const auto fit_again = erm_fit(instance.erm_class, instance.data, instance.loss);
  CHECK(fit_again.risk == fit.risk);
  CHECK(fit_again.index == fit.index);
}

TEST_CASE("spec validation") {
  MultiLabelSpec bad;
  bad.n_inputs = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  MultiLabelSpec mismatch;
  mismatch.n_inputs = 2;
  mismatch.labels_per_input = 2;
  mismatch.label_table = {{0.0, 1.0}};
  CHECK_THROWS_AS(mismatch.validate(), std::invalid_argument);

  MultiLabelSpec negative_noise;
  negative_noise.label_table = {{0.0}};
  negative_noise.noise_sd = -1.0;
  CHECK_THROWS_AS(negative_noise.validate(), std::invalid_argument);
}
