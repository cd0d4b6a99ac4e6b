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

#include "shapdb/numeric.h"

namespace shapdb {

std::string ToString(const Rational& value) {
  Rational canonical = value;
  canonical.canonicalize();
  if (canonical.get_den() == 1) return canonical.get_num().get_str();
  return canonical.get_num().get_str() + "/" + canonical.get_den().get_str();
}

std::string ToString(const BigInt& value) { return value.get_str(); }

double ToDouble(const Rational& value) { return value.get_d(); }

Binomials::Binomials(std::size_t max_n) { Extend(max_n); }

void Binomials::Extend(std::size_t n) {
  while (rows_.size() <= n) {
    const std::size_t row = rows_.size();
    std::vector<BigInt> next(row + 1);
    next[0] = 1;
    next[row] = 1;
    for (std::size_t k = 1; k < row; ++k) {
      next[k] = rows_[row - 1][k - 1] + rows_[row - 1][k];
    }
    rows_.push_back(std::move(next));
  }
}

const BigInt& Binomials::operator()(std::size_t n, std::size_t k) {
  if (k > n) return zero_;
  Extend(n);
  return rows_[n][k];
}

BigInt Factorial(std::size_t n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

std::vector<Rational> ShapleyCoefficients(std::size_t n) {
  std::vector<Rational> out;
  if (n == 0) return out;
  out.reserve(n);
  const BigInt n_fact = Factorial(n);
  for (std::size_t k = 0; k < n; ++k) {
    Rational weight(Factorial(k) * Factorial(n - k - 1), n_fact);
    weight.canonicalize();
    out.push_back(std::move(weight));
  }
  return out;
}

}  // namespace shapdb
