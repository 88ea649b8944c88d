#include "dsc/grid.hpp"

#include <algorithm>
#include <cmath>

#include "dsc/error.hpp"

namespace dsc {

Grid::Grid(std::vector<Axis> axes) : axes_(std::move(axes)) {
  if (axes_.empty() || axes_.size() > 3) throw ArgumentError("grid must have 1 to 3 axes");
  for (const Axis& a : axes_) {
    if (!(a.spacing > 0.0) || !std::isfinite(a.spacing))
      throw ArgumentError("grid spacing must be positive");
    if (a.count < 2) throw ArgumentError("grid needs at least two nodes per axis");
  }
}

Grid Grid::closed(int dims, double length, int count) {
  if (count < 2) throw ArgumentError("grid needs at least two nodes per axis");
  return Grid(std::vector<Axis>(static_cast<std::size_t>(dims),
                                Axis{0.0, length / (count - 1), count}));
}

Grid Grid::periodic(int dims, double length, int count) {
  if (count < 2) throw ArgumentError("grid needs at least two nodes per axis");
  return Grid(std::vector<Axis>(static_cast<std::size_t>(dims), Axis{0.0, length / count, count}));
}

std::size_t Grid::size() const {
  std::size_t n = 1;
  for (const Axis& a : axes_) n *= static_cast<std::size_t>(a.count);
  return n;
}

std::size_t Grid::stride(int a) const {
  std::size_t s = 1;
  for (int i = 0; i < a; ++i) s *= static_cast<std::size_t>(axes_[i].count);
  return s;
}

std::size_t Grid::index(std::array<int, 3> ijk) const {
  std::size_t flat = 0;
  for (int a = dims() - 1; a >= 0; --a)
    flat = flat * static_cast<std::size_t>(axes_[a].count) + static_cast<std::size_t>(ijk[a]);
  return flat;
}

std::array<int, 3> Grid::unravel(std::size_t flat) const {
  std::array<int, 3> ijk{0, 0, 0};
  for (int a = 0; a < dims(); ++a) {
    const auto n = static_cast<std::size_t>(axes_[a].count);
    ijk[a] = static_cast<int>(flat % n);
    flat /= n;
  }
  return ijk;
}

void Grid::set_mask(std::vector<bool> mask) {
  if (mask.size() != size()) throw ArgumentError("mask extent does not match the grid");
  if (std::none_of(mask.begin(), mask.end(), [](bool b) { return b; }))
    throw ArgumentError("mask selects no interior node");
  mask_ = std::move(mask);
}

FieldSamples::FieldSamples(Grid g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid.size()) throw ArgumentError("sample count does not match the grid");
}

}  // namespace dsc
