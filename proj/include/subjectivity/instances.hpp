#pragma once

#include <cstdint>

#include "subjectivity/datagen.hpp"
#include "subjectivity/risk.hpp"

namespace subjectivity {

// Small builders shared by the experiments, the CLI and the test suites.

// Lift a plain predictor to a subject-constant map g'(z, tau) = g(z).
SubjectFn tau_constant_lift(Predictor g);

// The trivial density ratio h == 1 (normalized under any subject set).
SubjectFn unit_assignment();

// g(z, tau_j) = constants[j].
SubjectFn subject_constants(std::vector<double> constants);

// Hard assignment of support row i to subject `assignment[i]`, normalized
// against the subject priors.
SubjectFn hard_assignment(std::vector<Sample> support, const std::vector<std::size_t>& assignment,
                          const SubjectDist& subjects);

// A multi-label benchmark with matched classes: the predictor class is the
// per-input product of observed labels plus the label mean, and the pair
// class holds the per-subject table map with its hard assignment plus the
// tau-constant lifts of every predictor. With clean labels the exhaustive
// risk gap equals the closed-form confusion error.
struct GapInstance {
  MultiLabelSpec spec;
  DataDist data;
  SubjectDist subjects;
  LossSpec loss;
  FiniteClass<Predictor> erm_class;
  FiniteClass<HypothesisPair> egrm_class;
};

GapInstance multilabel_gap_instance(const MultiLabelSpec& spec);

// One input with labels 0, 1, 2 (three judgments of one object).
GapInstance apple_red_sweet();

// Random clean multi-label spec with labels drawn from {0, 1, 2}.
MultiLabelSpec random_multilabel_spec(std::uint64_t seed, std::size_t max_inputs = 6,
                                      std::size_t max_labels = 3);

// Two samples sharing x with labels {0, 1}, two uniform subjects,
// per-subject constants in {0, 1} and all four hard assignments: the
// 16-candidate product bench used across the solver and Monte Carlo tests.
struct BenchInstance {
  DataDist data;
  SubjectDist subjects;
  LossSpec loss;
  FiniteClass<SubjectFn> g_class;
  FiniteClass<SubjectFn> h_class;
  FiniteClass<HypothesisPair> pairs;  // g-major enumeration of the product
};

BenchInstance two_point_bench();

}  // namespace subjectivity
