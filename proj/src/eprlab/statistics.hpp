// Copyright 2026 The eprlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace eprlab::stats {

struct TestResult {
  double statistic = 0;
  double dof = 0;
  double p_value = 1;
};

// Upper tail of the chi-squared distribution.
double chi_squared_survival(double statistic, double dof);

// Goodness of fit of observed counts against equal expected frequencies.
TestResult chi_squared_uniform(std::span<const std::uint64_t> counts);

/*!
 * Two-sample chi-squared test of binned counts (possibly unequal totals):
 *
 *   X^2 = sum_i (sqrt(S/R) r_i - sqrt(R/S) s_i)^2 / (r_i + s_i)
 *
 * over bins with r_i + s_i > 0; dof is the number of such bins minus one.
 */
TestResult chi_squared_two_sample(std::span<const std::uint64_t> r,
                                  std::span<const std::uint64_t> s);

// Kolmogorov distribution tail Q(t) = 2 sum_k (-1)^(k-1) exp(-2 k^2 t^2).
double kolmogorov_survival(double t);

// Two-sample KS test. Inputs need not be sorted. The p-value uses the
// asymptotic distribution with the Stephens small-sample correction.
TestResult ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace eprlab::stats
