#pragma once

// Surface/defect frame geometry.  The defect frame (x,y,z; z = symmetry
// axis) is obtained from the surface frame (x',y',z'; z' = outward normal)
// by a rotation of theta about the shared x axis.  The surface is the plane
// z' = 0 and the defect sits at depth z_def below it.

#include <Eigen/Dense>
#include <stdexcept>

namespace spindec {

struct FrameRotation {
  double theta = 0.0;  ///< tilt between symmetry axis and surface normal [rad]
};

/// Displacement from the defect to the surface point (x',y',0), expressed in
/// defect-frame components.  z_def must be positive (defect below surface).
inline Eigen::Vector3d surface_to_defect_displacement(const FrameRotation& rot,
                                                      double xp, double yp,
                                                      double z_def) {
  if (!(z_def > 0.0))
    throw std::invalid_argument("surface_to_defect_displacement: z_def must be > 0");
  const double c = std::cos(rot.theta);
  const double s = std::sin(rot.theta);
  return {xp, yp * c - z_def * s, yp * s + z_def * c};
}

/// Surface-frame basis vectors expressed in defect-frame components.
inline Eigen::Vector3d surface_x_axis(const FrameRotation&) { return {1, 0, 0}; }
inline Eigen::Vector3d surface_y_axis(const FrameRotation& rot) {
  return {0, std::cos(rot.theta), std::sin(rot.theta)};
}
inline Eigen::Vector3d surface_z_axis(const FrameRotation& rot) {
  return {0, -std::sin(rot.theta), std::cos(rot.theta)};
}

}  // namespace spindec
