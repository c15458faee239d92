// Copyright 2026 The Moralmap Authors.
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

#ifndef MORALMAP_INFERENCE_DISTRIBUTIONS_H_
#define MORALMAP_INFERENCE_DISTRIBUTIONS_H_

namespace moralmap {

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
double RegularizedIncompleteBeta(double a, double b, double x);

// Student t cumulative distribution with `dof` >= 1 degrees of freedom.
double StudentTCdf(double t, double dof);

// Two-sided p-value P(|T| >= |t|).
double StudentTTwoSidedP(double t, double dof);

}  // namespace moralmap

#endif  // MORALMAP_INFERENCE_DISTRIBUTIONS_H_
