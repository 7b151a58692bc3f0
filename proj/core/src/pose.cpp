#include "tripose/pose.hpp"

#include <algorithm>
#include <cmath>

#include "tripose/errors.hpp"
#include "tripose/quartic.hpp"

namespace tripose {

void TriangleModel::validate() const {
    if (a <= 0.0 || b <= 0.0 || c <= 0.0)
        throw Error(Errc::config, "triangle sides must be positive");
    if (a + b <= c || a + c <= b || b + c <= a)
        throw Error(Errc::config, "triangle sides violate the strict triangle inequality");
}

namespace {

struct DepthTriple {
    double tm, tl, tr;
};

// One Newton step on the squared side-length system in the depths.
// The Jacobian has the sparsity [[j00, j01, 0], [j10, 0, j12], [0, j21, j22]].
bool newton_step(DepthTriple& t, double c1, double c2, double c3, double a2, double b2,
                 double cc2) {
    const double f1 = t.tm * t.tm + t.tl * t.tl - 2.0 * t.tm * t.tl * c1 - a2;
    const double f2 = t.tm * t.tm + t.tr * t.tr - 2.0 * t.tm * t.tr * c2 - b2;
    const double f3 = t.tl * t.tl + t.tr * t.tr - 2.0 * t.tl * t.tr * c3 - cc2;

    const double j00 = 2.0 * (t.tm - t.tl * c1), j01 = 2.0 * (t.tl - t.tm * c1);
    const double j10 = 2.0 * (t.tm - t.tr * c2), j12 = 2.0 * (t.tr - t.tm * c2);
    const double j21 = 2.0 * (t.tl - t.tr * c3), j22 = 2.0 * (t.tr - t.tl * c3);

    const double det = -j00 * j12 * j21 - j01 * j10 * j22;
    if (std::abs(det) < 1e-30) return false;

    // Cramer's rule on J * delta = f.
    const double dm = -f1 * j12 * j21 - j01 * (f2 * j22 - j12 * f3);
    const double dl = j00 * (f2 * j22 - j12 * f3) - f1 * j10 * j22;
    const double dr = -j00 * f2 * j21 - j01 * j10 * f3 + f1 * j10 * j21;
    t.tm -= dm / det;
    t.tl -= dl / det;
    t.tr -= dr / det;
    return true;
}

double side_residual(const Vec3& m, const Vec3& l, const Vec3& r, const TriangleModel& tri) {
    const double e1 = std::abs((m - l).norm() - tri.a);
    const double e2 = std::abs((m - r).norm() - tri.b);
    const double e3 = std::abs((l - r).norm() - tri.c);
    return std::max({e1, e2, e3});
}

}  // namespace

std::vector<PoseSolution> solve_triangle_pose(const Vec2& proj_m, const Vec2& proj_l,
                                              const Vec2& proj_r, const CameraModel& camera,
                                              const TriangleModel& tri, double tol) {
    if (camera.focal_length <= 0.0)
        throw Error(Errc::config, "camera focal length must be positive");
    tri.validate();

    // Degeneracy: the projected points must span a genuine triangle.
    const Vec2 dl = proj_l - proj_m;
    const Vec2 dr = proj_r - proj_m;
    const double span = std::max({dl.norm(), dr.norm(), (proj_l - proj_r).norm()});
    const double area2 = std::abs(dl.x * dr.y - dl.y * dr.x);
    if (span <= 0.0 || area2 < 1e-9 * span * span)
        throw Error(Errc::pose_degenerate, "projected feature points are collinear or coincident");

    const Vec3 qm = camera.ray(proj_m);
    const Vec3 ql = camera.ray(proj_l);
    const Vec3 qr = camera.ray(proj_r);
    const double c1 = qm.dot(ql);  // cos between rays M, L
    const double c2 = qm.dot(qr);  // cos between rays M, R
    const double c3 = ql.dot(qr);  // cos between rays L, R

    const double a2 = tri.a * tri.a;
    const double b2 = tri.b * tri.b;
    const double cc2 = tri.c * tri.c;
    const double r1 = a2 / b2;
    const double r2 = cc2 / b2;

    // With u = tl/tm, v = tr/tm the ratio equations are
    //   (I)  1 + u^2 - 2u c1 = r1 (1 + v^2 - 2v c2)
    //   (II) u^2 + v^2 - 2uv c3 = r2 (1 + v^2 - 2v c2)
    // and (II) - (I) is linear in u: u = N(v) / D(v).
    const double n2 = r2 - r1 - 1.0;
    const double n1 = -2.0 * (r2 - r1) * c2;
    const double n0 = r2 - r1 + 1.0;
    const double d1 = -2.0 * c3;
    const double d0 = 2.0 * c1;
    // Substituting u into (I) * D^2 gives N^2 - 2 c1 N D + D^2 G = 0 where
    // G(v) = 1 - r1 (1 + v^2 - 2v c2).
    const double g2 = -r1;
    const double g1 = 2.0 * r1 * c2;
    const double g0 = 1.0 - r1;

    std::array<double, 5> poly{};
    poly[0] = n2 * n2 - 2.0 * c1 * (n2 * d1) + d1 * d1 * g2;
    poly[1] = 2.0 * n2 * n1 - 2.0 * c1 * (n2 * d0 + n1 * d1) + d1 * d1 * g1 + 2.0 * d1 * d0 * g2;
    poly[2] = 2.0 * n2 * n0 + n1 * n1 - 2.0 * c1 * (n1 * d0 + n0 * d1) + d1 * d1 * g0 +
              2.0 * d1 * d0 * g1 + d0 * d0 * g2;
    poly[3] = 2.0 * n1 * n0 - 2.0 * c1 * (n0 * d0) + 2.0 * d1 * d0 * g0 + d0 * d0 * g1;
    poly[4] = n0 * n0 + d0 * d0 * g0;

    const std::vector<double> vs = quartic_real_roots(poly, 1e-10);

    const double residual_bound = tol * (tri.a + tri.b + tri.c);
    std::vector<PoseSolution> solutions;

    auto try_candidate = [&](double u, double v) {
        if (!(u > 0.0) || !(v > 0.0)) return;
        // Pool all three equations for a well-conditioned depth scale.
        const double s = (1.0 + u * u - 2.0 * u * c1) + (1.0 + v * v - 2.0 * v * c2) +
                         (u * u + v * v - 2.0 * u * v * c3);
        if (!(s > 0.0)) return;
        const double tm0 = std::sqrt((a2 + b2 + cc2) / s);
        DepthTriple t{tm0, u * tm0, v * tm0};
        for (int it = 0; it < 6; ++it)
            if (!newton_step(t, c1, c2, c3, a2, b2, cc2)) break;
        if (!(t.tm > 0.0) || !(t.tl > 0.0) || !(t.tr > 0.0)) return;

        PoseSolution sol;
        sol.depth_m = t.tm;
        sol.depth_l = t.tl;
        sol.depth_r = t.tr;
        sol.m = qm * t.tm;
        sol.l = ql * t.tl;
        sol.r = qr * t.tr;
        sol.residual = side_residual(sol.m, sol.l, sol.r, tri);
        if (sol.residual > residual_bound) return;

        for (const PoseSolution& seen : solutions) {
            const double scale = std::max({seen.depth_m, seen.depth_l, seen.depth_r});
            if (std::abs(seen.depth_m - sol.depth_m) <= 1e-7 * scale &&
                std::abs(seen.depth_l - sol.depth_l) <= 1e-7 * scale &&
                std::abs(seen.depth_r - sol.depth_r) <= 1e-7 * scale)
                return;
        }

        Vec3 n = (sol.l - sol.m).cross(sol.r - sol.m).normalized();
        if (n.z > 0.0) n = n * -1.0;
        sol.normal = n;
        sol.angles = pose_angles(sol);
        solutions.push_back(sol);
    };

    for (double v : vs) {
        if (!(v > 0.0)) continue;
        const double den = d1 * v + d0;
        const double num = (n2 * v + n1) * v + n0;
        if (std::abs(den) > 1e-9 * (std::abs(d1 * v) + std::abs(d0) + 1.0)) {
            try_candidate(num / den, v);
        } else {
            // D(v) ~ 0: recover u from (I) directly and let (II) arbitrate.
            const double rhs = r1 * (1.0 + v * v - 2.0 * v * c2);
            const double disc = c1 * c1 - (1.0 - rhs);
            if (disc < 0.0) continue;
            for (double u : {c1 + std::sqrt(disc), c1 - std::sqrt(disc)}) {
                const double ii = u * u + v * v - 2.0 * u * v * c3 - r2 * (1.0 + v * v - 2.0 * v * c2);
                if (std::abs(ii) <= 1e-6 * (1.0 + u * u + v * v)) try_candidate(u, v);
            }
        }
    }

    if (solutions.empty())
        throw Error(Errc::no_positive_depth,
                    "no positive-depth pose satisfies the side lengths within tolerance");
    if (solutions.size() > 4) {
        std::sort(solutions.begin(), solutions.end(),
                  [](const PoseSolution& x, const PoseSolution& y) { return x.residual < y.residual; });
        solutions.resize(4);
    }
    return solutions;
}

ShiftVector shift_vector(const std::vector<Vec2>& constellation_points,
                         const SilhouetteMask& silhouette, const Vec2& frontal_offset,
                         double near_frontal_eps) {
    if (constellation_points.empty())
        throw Error(Errc::invalid_argument, "shift vector needs at least one feature point");
    Vec2 feat{0.0, 0.0};
    for (const Vec2& p : constellation_points) feat = feat + p;
    feat = feat * (1.0 / static_cast<double>(constellation_points.size()));

    double sx = 0.0, sy = 0.0;
    std::size_t n = 0;
    for (int y = 0; y < silhouette.height; ++y)
        for (int x = 0; x < silhouette.width; ++x)
            if (silhouette.contains(x, y)) {
                sx += x;
                sy += y;
                ++n;
            }
    if (n == 0) throw Error(Errc::invalid_argument, "silhouette has no interior pixels");
    const Vec2 expected = Vec2{sx / n, sy / n} + frontal_offset;

    ShiftVector shift;
    shift.s = feat - expected;
    shift.near_frontal = shift.s.norm() < near_frontal_eps;
    return shift;
}

std::size_t select_pose(const std::vector<PoseSolution>& solutions, const ShiftVector& shift) {
    if (solutions.empty()) throw Error(Errc::invalid_argument, "no pose solutions to select from");

    auto score = [&](const PoseSolution& sol) {
        if (shift.near_frontal) return -sol.normal.z;
        const double nxy = std::hypot(sol.normal.x, sol.normal.y);
        if (nxy < 1e-9) return -1.0;
        return (sol.normal.x * shift.s.x + sol.normal.y * shift.s.y) / (nxy * shift.s.norm());
    };

    std::size_t best = 0;
    double best_score = score(solutions[0]);
    for (std::size_t i = 1; i < solutions.size(); ++i) {
        const double s = score(solutions[i]);
        if (s > best_score ||
            (s == best_score && solutions[i].residual < solutions[best].residual)) {
            best = i;
            best_score = s;
        }
    }
    return best;
}

EulerAngles pose_angles(const PoseSolution& solution) {
    const Vec3 span = solution.r - solution.l;
    if (span.norm() < 1e-12)
        throw Error(Errc::pose_degenerate, "degenerate head frame: L and R coincide");
    const Vec3 xh = span.normalized();
    const Vec3 zh = solution.normal;
    const Vec3 yh = zh.cross(xh);

    // Reference frontal frame: x0 = (1,0,0), y0 = (0,-1,0), z0 = (0,0,-1);
    // that matrix is diagonal and involutory, so Rrel = H * X0.
    const Mat3 h = Mat3::from_columns(xh, yh, zh);
    Mat3 x0;
    x0.m[0][0] = 1.0;
    x0.m[1][1] = -1.0;
    x0.m[2][2] = -1.0;
    return euler_zyx(h * x0);
}

}  // namespace tripose
