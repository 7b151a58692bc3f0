#pragma once

#include <cstddef>
#include <vector>

#include "tripose/geometry.hpp"
#include "tripose/image.hpp"

namespace tripose {

// Pinhole camera at the origin: X right, Y down, Z forward into the scene.
struct CameraModel {
    double focal_length = 0.0;  // pixels
    Vec2 principal_point{0.0, 0.0};

    Vec3 ray(const Vec2& pixel) const {
        return Vec3{pixel.x - principal_point.x, pixel.y - principal_point.y, focal_length}
            .normalized();
    }
    Vec2 project(const Vec3& p) const {
        return {focal_length * p.x / p.z + principal_point.x,
                focal_length * p.y / p.z + principal_point.y};
    }
};

// Feature triangle MLR with side lengths a = |ML|, b = |MR|, c = |LR|.
struct TriangleModel {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    void validate() const;  // positive sides, strict triangle inequality
};

struct PoseSolution {
    Vec3 m, l, r;                    // world-unit vertices on the projection rays
    double depth_m = 0.0, depth_l = 0.0, depth_r = 0.0;
    Vec3 normal;                     // unit, normal.z <= 0 (toward camera)
    double residual = 0.0;           // max |side-length error|, length units
    EulerAngles angles;
};

// Image-plane displacement of the feature centroid from its expected frontal
// position; near_frontal is set when ||s|| falls under the epsilon.
struct ShiftVector {
    Vec2 s{0.0, 0.0};
    bool near_frontal = false;
};

// Recovers every admissible triangle pose (1 to 4) from the three projections
// by reducing the depth system to a single quartic. Solutions keep all depths
// positive and satisfy the three side-length equations within
// tol * (a + b + c).
std::vector<PoseSolution> solve_triangle_pose(const Vec2& proj_m, const Vec2& proj_l,
                                              const Vec2& proj_r, const CameraModel& camera,
                                              const TriangleModel& tri, double tol = 1e-9);

ShiftVector shift_vector(const std::vector<Vec2>& constellation_points,
                         const SilhouetteMask& silhouette, const Vec2& frontal_offset,
                         double near_frontal_eps = 2.0);

// Index of the solution whose normal projection is most co-directional with
// s; near-frontal shift selects the most camera-facing normal instead.
std::size_t select_pose(const std::vector<PoseSolution>& solutions, const ShiftVector& shift);

// Rotation of the frontal reference frame (x = (1,0,0), z = (0,0,-1)) onto
// the head frame, as Z(roll)-Y(yaw)-X(pitch) angles in (-180, 180] degrees.
EulerAngles pose_angles(const PoseSolution& solution);

}  // namespace tripose
