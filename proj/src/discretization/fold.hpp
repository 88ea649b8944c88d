#pragma once

#include <vector>

#include "dsc/discretization.hpp"
#include "dsc/error.hpp"

namespace dsc::detail {

/// Resolves a possibly fictitious node index onto real nodes through the
/// boundary relations f(x_{-i}) = a_i f(x_i) + (1 - a_i) f(x_0) (and the
/// mirrored right-edge relation), or by wraparound when periodic.
class Folder {
 public:
  Folder(int count, bool periodic, std::vector<double> left, std::vector<double> right)
      : n_(count), periodic_(periodic), left_(std::move(left)), right_(std::move(right)) {}

  static Folder make(int count, const KernelParams& params, const BoundarySpec& boundary) {
    boundary.validate();
    if (boundary.is_periodic()) return Folder(count, true, {}, {});
    return Folder(count, false, boundary_coeffs(boundary.left, Edge::Left, params),
                  boundary_coeffs(boundary.right, Edge::Right, params));
  }

  /// row[c] += coeff * (weight of node c in f(x_l)).
  void add(int l, double coeff, std::vector<double>& row) const {
    if (periodic_) {
      row[static_cast<std::size_t>(((l % n_) + n_) % n_)] += coeff;
      return;
    }
    if (l < 0) {
      const int i = -l;
      const double a = coeff_at(left_, i);
      row[0] += coeff * (1.0 - a);
      add(i, coeff * a, row);
    } else if (l > n_ - 1) {
      const int i = l - (n_ - 1);
      const double a = coeff_at(right_, i);
      row[static_cast<std::size_t>(n_ - 1)] += coeff * (1.0 - a);
      add(n_ - 1 - i, coeff * a, row);
    } else {
      row[static_cast<std::size_t>(l)] += coeff;
    }
  }

 private:
  static double coeff_at(const std::vector<double>& a, int i) {
    if (i < 1 || i > static_cast<int>(a.size()))
      throw ArgumentError("stencil reaches beyond the boundary extension");
    return a[static_cast<std::size_t>(i - 1)];
  }

  int n_;
  bool periodic_;
  std::vector<double> left_;
  std::vector<double> right_;
};

}  // namespace dsc::detail
