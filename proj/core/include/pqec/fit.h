// Copyright 2026 The pqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PQEC_FIT_H
#define PQEC_FIT_H

#include <cstdint>
#include <utility>
#include <vector>

namespace pqec {

/// A sampled logical error rate at X = sqrt(qubits).
struct FitPoint {
    double x = 0;
    uint64_t shots = 0;
    uint64_t errors = 0;
    /// Values before clamping.
    uint64_t raw_shots = 0;
    uint64_t raw_errors = 0;
};

FitPoint make_fit_point(double x, uint64_t shots, uint64_t errors);

/// A point with more than 10 errors counts as ceil(10 s / e) shots with 10 errors.
FitPoint clamp(const FitPoint &point);
std::vector<FitPoint> clamp(const std::vector<FitPoint> &points);

/// Points whose raw error rate exceeds 40% are dropped.
std::vector<FitPoint> discard_saturated(const std::vector<FitPoint> &points);

/// Sum of binomial log-probabilities of each point's errors at rate exp(m x + b), in log space.
/// -infinity when some rate is not in (0, 1).
double log_likelihood(double m, double b, const std::vector<FitPoint> &points);

/// Hypothesis grid over the line Y = m X + b (natural log of the error rate).
struct FitGrid {
    double m_min = -2;
    double m_max = 0;
    double b_min = -5;
    double b_max = 5;
    int steps = 400;
};

struct LineHypothesis {
    double m;
    double b;
    double log_likelihood;
};

struct LineFit {
    /// Maximum-likelihood line after grid search and golden-section refinement.
    double m = 0;
    double b = 0;
    double max_log_likelihood = 0;
    /// Grid hypotheses within the likelihood ratio of the maximum, plus the maximum itself.
    std::vector<LineHypothesis> region;
    double log_ratio = 0;
    FitGrid grid;
    size_t num_points = 0;
};

/// Discards saturated points, clamps, then fits. Throws std::invalid_argument("insufficient
/// points") when fewer than two points survive.
LineFit fit_line(const std::vector<FitPoint> &points, const FitGrid &grid = {}, double likelihood_ratio = 1000);

/// Smallest and largest Y over the region at each x.
std::vector<std::pair<double, double>> region_envelope(const LineFit &fit, const std::vector<double> &xs);

struct InterceptRange {
    double low;
    double mle;
    /// Infinite when some region hypothesis never reaches the target.
    double high;
};

/// Qubit count X^2 where the line reaches ln(target) for the maximum-likelihood line and over the
/// region. Throws std::domain_error("non-decreasing fit") when the MLE slope is not negative.
InterceptRange teraquop_intercept(const LineFit &fit, double target = 1e-12);

}  // namespace pqec

#endif
