#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace dsc {

/// One uniform axis: nodes at origin + i * spacing, i = 0..count-1.
struct Axis {
  double origin = 0.0;
  double spacing = 1.0;
  int count = 2;

  double coord(int i) const { return origin + spacing * i; }
};

/// Uniform 1-, 2- or 3-D tensor grid with an optional interior mask.
///
/// Field values are stored with axis 0 varying fastest. A mask entry of
/// `true` marks a node that belongs to the computational interior.
class Grid {
 public:
  explicit Grid(std::vector<Axis> axes);

  /// `count` nodes per axis spanning [0, length] with both ends included.
  static Grid closed(int dims, double length, int count);
  /// `count` nodes per axis on the periodic interval [0, length).
  static Grid periodic(int dims, double length, int count);

  int dims() const { return static_cast<int>(axes_.size()); }
  const Axis& axis(int a) const { return axes_.at(a); }
  int count(int a) const { return axes_.at(a).count; }
  double spacing(int a) const { return axes_.at(a).spacing; }
  std::size_t size() const;
  /// Stride between consecutive nodes along axis `a` in the flat layout.
  std::size_t stride(int a) const;
  std::size_t index(std::array<int, 3> ijk) const;
  std::array<int, 3> unravel(std::size_t flat) const;

  /// Throws ArgumentError unless the mask has size() entries and at least
  /// one `true`.
  void set_mask(std::vector<bool> mask);
  const std::optional<std::vector<bool>>& mask() const { return mask_; }
  bool interior(std::size_t flat) const { return !mask_ || (*mask_)[flat]; }

 private:
  std::vector<Axis> axes_;
  std::optional<std::vector<bool>> mask_;
};

/// Real samples on a grid; the common currency of solvers and reports.
struct FieldSamples {
  Grid grid;
  std::vector<double> values;

  explicit FieldSamples(Grid g) : grid(std::move(g)), values(grid.size(), 0.0) {}
  FieldSamples(Grid g, std::vector<double> v);

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

}  // namespace dsc
