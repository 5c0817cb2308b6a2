#include "relunet/layout.hpp"

namespace relunet {

std::string component_name(std::size_t hidden, std::size_t index) {
  if (index >= param_count(hidden)) throw LayoutError("component index out of range");
  if (index == 3 * hidden) return "c";
  static constexpr char kBlocks[] = {'w', 'b', 'v'};
  return std::string(1, kBlocks[index / hidden]) + std::to_string(index % hidden + 1);
}

UnpackedParams unpack(std::span<const double> data, std::size_t hidden) {
  if (hidden == 0) throw LayoutError("hidden width H must be positive");
  if (data.size() != param_count(hidden)) {
    throw LayoutError("expected " + std::to_string(param_count(hidden)) +
                      " entries for H=" + std::to_string(hidden) + ", got " +
                      std::to_string(data.size()));
  }
  UnpackedParams out;
  out.w.assign(data.begin(), data.begin() + hidden);
  out.b.assign(data.begin() + hidden, data.begin() + 2 * hidden);
  out.v.assign(data.begin() + 2 * hidden, data.begin() + 3 * hidden);
  out.c = data[3 * hidden];
  return out;
}

UnpackedParams unpack(const ParamVector& phi) { return unpack(phi.values(), phi.hidden()); }

ParamVector pack(const UnpackedParams& blocks) {
  const std::size_t hidden = blocks.w.size();
  if (blocks.b.size() != hidden || blocks.v.size() != hidden) {
    throw LayoutError("w, b and v blocks must have equal length");
  }
  std::vector<double> data;
  data.reserve(param_count(hidden));
  data.insert(data.end(), blocks.w.begin(), blocks.w.end());
  data.insert(data.end(), blocks.b.begin(), blocks.b.end());
  data.insert(data.end(), blocks.v.begin(), blocks.v.end());
  data.push_back(blocks.c);
  return ParamVector(hidden, std::move(data));
}

}  // namespace relunet
