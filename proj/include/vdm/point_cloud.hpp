#pragma once

#include <Eigen/Core>

#include "vdm/errors.hpp"

namespace vdm {

/// n points in ambient dimension p, one per row.
struct PointCloud {
  Eigen::MatrixXd points; // n x p

  int n() const { return static_cast<int>(points.rows()); }
  int ambient_dim() const { return static_cast<int>(points.cols()); }

  Eigen::VectorXd point(int i) const { return points.row(i).transpose(); }

  void validate() const {
    if (points.rows() < 1 || points.cols() < 1)
      throw DataError("point cloud must have n >= 1 and p >= 1");
    if (!points.allFinite())
      throw DataError("point cloud contains non-finite coordinates");
  }
};

} // namespace vdm
