#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "cshl/field.hpp"
#include "cshl/spectral.hpp"

namespace cshl {

// Index conventions: metric diag(1, -1, -1), so X^0 = X_0 and X^j = -X_j.
// epsilon^{012} = epsilon_{012} = 1 and the spatial epsilon_{12} = 1.

constexpr double metric_sign(int mu) noexcept { return mu == 0 ? 1.0 : -1.0; }

/// Totally antisymmetric symbol with epsilon_{012} = 1.
constexpr int levi_civita(int mu, int nu, int rho) noexcept {
  if (mu == nu || nu == rho || mu == rho) return 0;
  return ((mu + 1) % 3 == nu) ? 1 : -1;
}

/// Spatial epsilon_{jk} with j, k in {1, 2}.
constexpr int levi_civita2(int j, int k) noexcept { return j == k ? 0 : (j == 1 ? 1 : -1); }

/// Raises (or lowers) a single index: the metric is its own inverse.
inline ScalarField raise_index(const ScalarField& f, int mu) { return f * metric_sign(mu); }

/// Higgs potential V(r), r = |phi|^2, with V(0) = 0 and V(r) >= -alpha^2 r.
class Potential {
 public:
  /// V(r) = sum_i coeffs[i] r^i; coeffs[0] must vanish.
  static Potential polynomial(std::vector<double> coeffs, double alpha = 0.0);
  static Potential callable(std::function<double(double)> value,
                            std::function<double(double)> derivative, double alpha = 0.0);
  /// V(r) = r (1 - r)^2 with alpha = 0.
  static Potential standard();

  double value(double r) const;
  double derivative(double r) const;
  double alpha() const noexcept { return alpha_; }
  bool is_polynomial() const noexcept { return !value_fn_; }
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }
  /// Coefficients of V'(r) by exact differentiation.
  std::vector<double> derivative_coefficients() const;

 private:
  Potential() = default;

  std::vector<double> coeffs_;
  std::function<double(double)> value_fn_, derivative_fn_;
  double alpha_ = 0.0;
};

/// (A_mu, d_t A_mu, phi, d_t phi) at one instant, physical representation.
struct GaugeState {
  std::array<ScalarField, 3> a;
  std::array<ScalarField, 3> a_t;
  ScalarField phi;
  ScalarField phi_t;
  double time = 0.0;

  static GaugeState zero(const Grid& grid, double time = 0.0);

  const Grid& grid() const noexcept { return phi.grid(); }
  /// Throws if component grids differ or any sample is non-finite.
  void validate() const;
};

struct CurrentVector {
  std::array<ScalarField, 3> j;  // lower-index J_mu
};

struct Curvature {
  ScalarField f01, f02, f12;
};

struct ConstraintResiduals {
  double gauss = 0.0;   // ||d1 A2 - d2 A1 - (J_0 - mean J_0)|| / max(1, ||J_0||)
  double lorenz = 0.0;  // ||d_t A0 - d1 A1 - d2 A2|| / max(1, ||J_0||)
  double charge = 0.0;  // integral of J_0, reported separately
};

/// Spectral spatial derivative d_j, j in {1, 2}.
ScalarField spatial_derivative(const ScalarField& f, int j);

/// D_mu phi = d_mu phi - i A_mu phi.
ScalarField covariant_derivative(const GaugeState& state, int mu);

/// J_mu = 2 Im(conj(phi) D_mu phi), lower index.
CurrentVector current(const GaugeState& state);

Curvature curvature(const GaugeState& state);

/// Compatible initial data: A_0 = 0, A_j = -(-Delta)^{-1/2} eps_{jk} R^k J_0
/// (mean-zero part of J_0), then d_t A from the Lorenz and field constraints.
GaugeState build_compatible_data(const ScalarField& phi0, const ScalarField& phi_t0,
                                 const Potential& potential,
                                 ZeroModePolicy policy = ZeroModePolicy::legislate);

ConstraintResiduals constraint_residuals(const GaugeState& state);

/// State snapshot: eight CSHF files plus `state.json` {time, grid, potential}.
void write_state(const std::filesystem::path& dir, const GaugeState& state,
                 const Potential& potential);
GaugeState read_state(const std::filesystem::path& dir);

}  // namespace cshl
