// Copyright 2026 The shapdb Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SHAPDB_NUMERIC_H_
#define SHAPDB_NUMERIC_H_

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace shapdb {

using BigInt = mpz_class;
using Rational = mpq_class;

// Rational in lowest terms, rendered "num/den" (or "num" when den == 1).
std::string ToString(const Rational& value);
std::string ToString(const BigInt& value);
double ToDouble(const Rational& value);

// Pascal triangle of exact binomial coefficients, extended on demand.
class Binomials {
 public:
  explicit Binomials(std::size_t max_n = 0);

  // C(n, k); zero when k > n.
  const BigInt& operator()(std::size_t n, std::size_t k);

 private:
  void Extend(std::size_t n);

  std::vector<std::vector<BigInt>> rows_;
  BigInt zero_ = 0;
};

BigInt Factorial(std::size_t n);

// The Shapley permutation weights k!(n-k-1)!/n! for k = 0..n-1.
std::vector<Rational> ShapleyCoefficients(std::size_t n);

}  // namespace shapdb

#endif  // SHAPDB_NUMERIC_H_
