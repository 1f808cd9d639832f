// Copyright 2026 The signrec Authors
// SPDX-License-Identifier: Apache-2.0

#include "signrec/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "signrec/error.hpp"

namespace signrec {

std::size_t shape_size(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

std::string shape_string(const Shape& shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << 'x';
    os << shape[i];
  }
  os << ']';
  return os.str();
}

Tensor::Tensor(Shape shape, double fill)
    : shape_(std::move(shape)), data_(shape_size(shape_), fill) {}

Tensor::Tensor(Shape shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  require(shape_size(shape_) == data_.size(),
          "tensor data length " + std::to_string(data_.size()) +
              " does not match shape " + shape_string(shape_));
}

std::size_t Tensor::offset(std::initializer_list<std::size_t> idx) const {
  // Bounds are the caller's responsibility; only rank is checked in debug.
  std::size_t flat = 0;
  std::size_t axis = 0;
  for (std::size_t i : idx) {
    flat = flat * shape_[axis] + i;
    ++axis;
  }
  return flat;
}

bool Tensor::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

void Tensor::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

}  // namespace signrec
