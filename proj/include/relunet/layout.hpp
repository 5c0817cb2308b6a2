#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relunet/errors.hpp"

namespace relunet {

/// Number of parameters of a one-hidden-layer network with `hidden` neurons.
constexpr std::size_t param_count(std::size_t hidden) { return 3 * hidden + 1; }

/// Name of flat component `index` ("w1", "b3", "v2", "c"), 1-based neuron ids.
std::string component_name(std::size_t hidden, std::size_t index);

/// Flat vector with the (w_1..w_H, b_1..b_H, v_1..v_H, c) layout.
///
/// Neuron accessors take 0-based j; flat index j of the w block corresponds to
/// the 1-based parameter index j+1. Immutable after construction; every entry
/// is finite.
template <class Tag>
class LayoutVector {
 public:
  LayoutVector(std::size_t hidden, std::vector<double> data)
      : hidden_(hidden), data_(std::move(data)) {
    if (hidden_ == 0) throw LayoutError("hidden width H must be positive");
    if (data_.size() != param_count(hidden_)) {
      throw LayoutError("expected " + std::to_string(param_count(hidden_)) +
                        " entries for H=" + std::to_string(hidden_) + ", got " +
                        std::to_string(data_.size()));
    }
    for (double x : data_) {
      if (!std::isfinite(x)) throw LayoutError("non-finite entry in layout vector");
    }
  }

  static LayoutVector zeros(std::size_t hidden) {
    return LayoutVector(hidden, std::vector<double>(param_count(hidden), 0.0));
  }

  std::size_t hidden() const { return hidden_; }
  std::size_t size() const { return data_.size(); }

  double w(std::size_t j) const { return data_[j]; }
  double b(std::size_t j) const { return data_[hidden_ + j]; }
  double v(std::size_t j) const { return data_[2 * hidden_ + j]; }
  double c() const { return data_[3 * hidden_]; }

  double operator[](std::size_t i) const { return data_[i]; }
  std::span<const double> values() const { return data_; }
  const std::vector<double>& vector() const { return data_; }

  friend bool operator==(const LayoutVector&, const LayoutVector&) = default;

 private:
  std::size_t hidden_;
  std::vector<double> data_;
};

struct ParamTag {};
struct GradientTag {};

using ParamVector = LayoutVector<ParamTag>;
using GradientVector = LayoutVector<GradientTag>;

struct UnpackedParams {
  std::vector<double> w;
  std::vector<double> b;
  std::vector<double> v;
  double c = 0.0;
};

/// Splits a raw flat vector into its blocks. Throws LayoutError on a length
/// other than 3H+1.
UnpackedParams unpack(std::span<const double> data, std::size_t hidden);
UnpackedParams unpack(const ParamVector& phi);

ParamVector pack(const UnpackedParams& blocks);

}  // namespace relunet
