#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "glancelab/trace.hpp"

// Exact Dirichlet eigenfunctions of the unit disk, c J_n(lambda r) e^{i n theta},
// and spherical harmonics Y_l^m, selected at a prescribed distance from
// glancing and restricted to a concentric circle (disk) or the equator
// (sphere).

namespace glancelab::modes {

inline constexpr double kDefaultDiskRadius = 0.5;

struct DiskMode {
  int n = 0;             // angular order
  int m = 1;             // radial index
  double lambda = 0.0;   // j_{n,m}
  double h = 0.0;        // 1 / lambda
  double norm_const = 0.0;  // c_n, makes the mode unit in L^2(disk)
};

struct SphereMode {
  int l = 0;
  int m = 0;
  double lambda = 0.0;  // sqrt(l (l + 1))
  double h = 0.0;
  bool even_parity = true;  // l + m even
};

/// Distance-from-glancing scale: windows of width ~n^{1-alpha} sitting
/// offset_const widths away from the glancing eigenvalue.
struct ScaleTarget {
  double alpha = 0.5;
  double offset_const = 4.0;  // M
};

struct PhaseSpacePoint {
  double tangential = 0.0;  // |xi'|
  double b = 1.0;           // 1 - |xi'|^2
  double xi_d = 1.0;        // sqrt(max(b, 0))
};

/// Which zero to take when several fall in a scale window.
enum class Selection {
  SmallestLambda,       // first zero in the window
  MaxTrace,             // largest |J_n(lambda R)| among the window's zeros
  MaxNormalDerivative,  // largest |J_n'(lambda R)|
};

std::string_view to_string(Selection s);
/// Inverse of to_string; ConfigError on unknown names.
Selection selection_from_string(std::string_view name);

struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

/// n/R + [M n^{1-alpha}, (M+1) n^{1-alpha}]. At R = 1/2 this is the
/// 2n-centred window; for other radii it stays anchored at glancing on H.
Window disk_window(int n, const ScaleTarget& target, double radius = kDefaultDiskRadius);

/// l - [M+1, M] l^{1-alpha}.
Window sphere_window(int l, const ScaleTarget& target);

DiskMode disk_mode(int n, int m);

/// Every zero of J_n inside [lo, hi] as a DiskMode, in increasing lambda.
std::vector<DiskMode> disk_modes_in_window(int n, double lo, double hi);

/// NoModeError if the window at this n holds no zero.
DiskMode select_disk_mode_at_scale(int n, const ScaleTarget& target, double radius = kDefaultDiskRadius,
                                   Selection policy = Selection::SmallestLambda);

/// Largest m in the window with l + m even; NoModeError if none.
SphereMode sphere_mode_at_scale(int l, const ScaleTarget& target);

/// Smallest n for which the disk window is wider than the local zero
/// spacing pi z / sqrt(z^2 - 1), so a zero is guaranteed. Empty when the
/// window never outgrows the spacing (alpha >= 1, or alpha = 0 with
/// unit width).
std::optional<int> disk_n_min(const ScaleTarget& target, double radius = kDefaultDiskRadius);

/// Smallest l from which on the sphere window is at least two wide and
/// inside [0, l], so an even-parity order always exists.
std::optional<int> sphere_l_min(const ScaleTarget& target);

/// Single coefficient c_n J_n(lambda R) at index n.
Trace restrict_disk(const DiskMode& mode, double radius = kDefaultDiskRadius);

/// Single coefficient c_n J_n'(lambda R) at index n (h lambda = 1).
Trace restrict_disk_normal_derivative(const DiskMode& mode, double radius = kDefaultDiskRadius);

/// Y_l^m on the equator: coefficient A_l at index m, radius 1.
Trace restrict_sphere(const SphereMode& mode);

PhaseSpacePoint phase_space_point(int k, double h, double radius);

/// Glancing coordinate b = 1 - (n h / R)^2 of a disk mode on H.
double disk_glancing_b(const DiskMode& mode, double radius = kDefaultDiskRadius);

}  // namespace glancelab::modes
