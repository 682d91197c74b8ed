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

#include "pqec/fit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pqec {

FitPoint make_fit_point(double x, uint64_t shots, uint64_t errors) {
    if (errors > shots) {
        throw std::invalid_argument("more errors than shots");
    }
    return FitPoint{x, shots, errors, shots, errors};
}

FitPoint clamp(const FitPoint &point) {
    FitPoint out = point;
    if (point.errors > 10) {
        out.shots = (point.shots * 10 + point.errors - 1) / point.errors;
        out.errors = 10;
    }
    return out;
}

std::vector<FitPoint> clamp(const std::vector<FitPoint> &points) {
    std::vector<FitPoint> out;
    for (const auto &p : points) {
        out.push_back(clamp(p));
    }
    return out;
}

std::vector<FitPoint> discard_saturated(const std::vector<FitPoint> &points) {
    std::vector<FitPoint> out;
    for (const auto &p : points) {
        if (p.raw_shots > 0 && (double)p.raw_errors <= 0.4 * (double)p.raw_shots) {
            out.push_back(p);
        }
    }
    return out;
}

double log_likelihood(double m, double b, const std::vector<FitPoint> &points) {
    double total = 0;
    for (const auto &p : points) {
        double y = m * p.x + b;
        if (!(y < 0)) {
            return -std::numeric_limits<double>::infinity();
        }
        double s = (double)p.shots;
        double e = (double)p.errors;
        double log_choose = std::lgamma(s + 1) - std::lgamma(e + 1) - std::lgamma(s - e + 1);
        double fail = std::log1p(-std::exp(y));
        if (!std::isfinite(fail)) {
            return -std::numeric_limits<double>::infinity();
        }
        total += log_choose + e * y + (s - e) * fail;
    }
    return total;
}

namespace {

template <typename F>
double golden_max(F &&f, double lo, double hi) {
    const double r = (std::sqrt(5.0) - 1) / 2;
    double a = hi - r * (hi - lo), b = lo + r * (hi - lo);
    double fa = f(a), fb = f(b);
    for (int k = 0; k < 80; k++) {
        if (fa < fb) {
            lo = a;
            a = b;
            fa = fb;
            b = lo + r * (hi - lo);
            fb = f(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - r * (hi - lo);
            fa = f(a);
        }
    }
    return (lo + hi) / 2;
}

}  // namespace

LineFit fit_line(const std::vector<FitPoint> &points, const FitGrid &grid, double likelihood_ratio) {
    std::vector<FitPoint> used = clamp(discard_saturated(points));
    if (used.size() < 2) {
        throw std::invalid_argument("insufficient points");
    }
    if (grid.steps < 2 || !(grid.m_max > grid.m_min) || !(grid.b_max > grid.b_min) || !(likelihood_ratio >= 1)) {
        throw std::invalid_argument("bad fit grid");
    }
    LineFit fit;
    fit.grid = grid;
    fit.log_ratio = std::log(likelihood_ratio);
    fit.num_points = used.size();
    double dm = (grid.m_max - grid.m_min) / (grid.steps - 1);
    double db = (grid.b_max - grid.b_min) / (grid.steps - 1);
    std::vector<LineHypothesis> all;
    all.reserve((size_t)grid.steps * grid.steps);
    LineHypothesis best{0, 0, -std::numeric_limits<double>::infinity()};
    for (int i = 0; i < grid.steps; i++) {
        double m = grid.m_min + i * dm;
        for (int j = 0; j < grid.steps; j++) {
            double b = grid.b_min + j * db;
            double ll = log_likelihood(m, b, used);
            all.push_back({m, b, ll});
            if (ll > best.log_likelihood) {
                best = all.back();
            }
        }
    }
    if (!std::isfinite(best.log_likelihood)) {
        throw std::invalid_argument("no hypothesis on the grid fits the points");
    }
    // Newton directions with a golden-section line search; the log-likelihood is concave.
    double m = best.m, b = best.b;
    for (int iter = 0; iter < 50; iter++) {
        double g0 = 0, g1 = 0, h00 = 0, h01 = 0, h11 = 0;
        for (const auto &p : used) {
            double y = m * p.x + b;
            double r = std::exp(y);
            double fail = (double)(p.shots - p.errors);
            double d1 = (double)p.errors - fail * r / (1 - r);
            double d2 = -fail * r / ((1 - r) * (1 - r));
            g0 += d1 * p.x;
            g1 += d1;
            h00 += d2 * p.x * p.x;
            h01 += d2 * p.x;
            h11 += d2;
        }
        double det = h00 * h11 - h01 * h01;
        double step_m, step_b;
        if (det > 0 && h00 < 0) {
            step_m = -(h11 * g0 - h01 * g1) / det;
            step_b = -(h00 * g1 - h01 * g0) / det;
        } else {
            step_m = g0 * dm;
            step_b = g1 * db;
        }
        auto along = [&](double t) { return log_likelihood(m + t * step_m, b + t * step_b, used); };
        double t = golden_max(along, 0, 2);
        double before = log_likelihood(m, b, used);
        if (!(along(t) > before)) {
            break;
        }
        m += t * step_m;
        b += t * step_b;
    }
    double refined = log_likelihood(m, b, used);
    if (refined >= best.log_likelihood) {
        best = {m, b, refined};
    }
    fit.m = best.m;
    fit.b = best.b;
    fit.max_log_likelihood = best.log_likelihood;
    double cutoff = best.log_likelihood - fit.log_ratio;
    for (const auto &h : all) {
        if (h.log_likelihood >= cutoff) {
            fit.region.push_back(h);
        }
    }
    fit.region.push_back(best);
    return fit;
}

std::vector<std::pair<double, double>> region_envelope(const LineFit &fit, const std::vector<double> &xs) {
    std::vector<std::pair<double, double>> out;
    for (double x : xs) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto &h : fit.region) {
            double y = h.m * x + h.b;
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        }
        out.push_back({lo, hi});
    }
    return out;
}

InterceptRange teraquop_intercept(const LineFit &fit, double target) {
    if (!(fit.m < 0)) {
        throw std::domain_error("non-decreasing fit");
    }
    double y = std::log(target);
    auto qubits = [&](double m, double b) {
        if (!(m < 0)) {
            return std::numeric_limits<double>::infinity();
        }
        double x = (y - b) / m;
        return x > 0 ? x * x : 0.0;
    };
    InterceptRange r{std::numeric_limits<double>::infinity(), qubits(fit.m, fit.b), 0};
    for (const auto &h : fit.region) {
        double q = qubits(h.m, h.b);
        r.low = std::min(r.low, q);
        r.high = std::max(r.high, q);
    }
    return r;
}

}  // namespace pqec
