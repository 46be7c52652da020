#include "cshl/state.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <string>

#include "cshl/errors.hpp"
#include "cshl/snapshot.hpp"

namespace cshl {

// ---------------------------------------------------------------------------
// Potential

Potential Potential::polynomial(std::vector<double> coeffs, double alpha) {
  if (alpha < 0.0) throw InvalidRange("potential alpha must be non-negative");
  if (!coeffs.empty() && coeffs[0] != 0.0) throw InvalidRange("potential must satisfy V(0) = 0");
  Potential p;
  p.coeffs_ = std::move(coeffs);
  if (p.coeffs_.empty()) p.coeffs_.push_back(0.0);
  p.alpha_ = alpha;
  return p;
}

Potential Potential::callable(std::function<double(double)> value,
                              std::function<double(double)> derivative, double alpha) {
  if (alpha < 0.0) throw InvalidRange("potential alpha must be non-negative");
  if (!value || !derivative) throw InvalidRange("callable potential needs V and V'");
  if (std::abs(value(0.0)) > 1e-14) throw InvalidRange("potential must satisfy V(0) = 0");
  Potential p;
  p.value_fn_ = std::move(value);
  p.derivative_fn_ = std::move(derivative);
  p.alpha_ = alpha;
  return p;
}

Potential Potential::standard() { return polynomial({0.0, 1.0, -2.0, 1.0}, 0.0); }

double Potential::value(double r) const {
  if (value_fn_) return value_fn_(r);
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + *it;
  return acc;
}

std::vector<double> Potential::derivative_coefficients() const {
  std::vector<double> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(static_cast<double>(i) * coeffs_[i]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

double Potential::derivative(double r) const {
  if (derivative_fn_) return derivative_fn_(r);
  double acc = 0.0;
  for (std::size_t i = coeffs_.size(); i-- > 1;) acc = acc * r + static_cast<double>(i) * coeffs_[i];
  return acc;
}

// ---------------------------------------------------------------------------
// GaugeState

GaugeState GaugeState::zero(const Grid& grid, double time) {
  const ScalarField z = ScalarField::zeros(grid, true);
  const ScalarField zc = ScalarField::zeros(grid, false);
  return GaugeState{{z, z, z}, {z, z, z}, zc, zc, time};
}

void GaugeState::validate() const {
  const Grid& g = grid();
  for (int mu = 0; mu < 3; ++mu) {
    if (!(a[mu].grid() == g) || !(a_t[mu].grid() == g)) throw std::invalid_argument("GaugeState: grid mismatch");
    require_finite(a[mu], "A_mu");
    require_finite(a_t[mu], "d_t A_mu");
  }
  if (!(phi_t.grid() == g)) throw std::invalid_argument("GaugeState: grid mismatch");
  require_finite(phi, "phi");
  require_finite(phi_t, "d_t phi");
}

// ---------------------------------------------------------------------------
// Covariant calculus

ScalarField spatial_derivative(const ScalarField& f, int j) {
  return apply_multiplier(f, Multiplier::partial(j));
}

ScalarField covariant_derivative(const GaugeState& state, int mu) {
  if (mu < 0 || mu > 2) throw std::invalid_argument("covariant_derivative: index out of range");
  require_finite(state.phi, "phi");
  const ScalarField d = mu == 0 ? state.phi_t.to_physical() : spatial_derivative(state.phi, mu);
  require_finite(d, "d_mu phi");
  return (d - cplx(0.0, 1.0) * (state.a[mu] * state.phi)).with_real_flag(false);
}

CurrentVector current(const GaugeState& state) {
  const ScalarField phi_bar = state.phi.conj();
  CurrentVector out{{ScalarField::zeros(state.grid()), ScalarField::zeros(state.grid()),
                     ScalarField::zeros(state.grid())}};
  for (int mu = 0; mu < 3; ++mu) {
    const ScalarField prod = phi_bar * covariant_derivative(state, mu);
    out.j[mu] = prod.map([](cplx z) { return 2.0 * z.imag(); }, true);
  }
  return out;
}

Curvature curvature(const GaugeState& state) {
  state.validate();
  return Curvature{
      (state.a_t[1].to_physical() - spatial_derivative(state.a[0], 1)).real_part(),
      (state.a_t[2].to_physical() - spatial_derivative(state.a[0], 2)).real_part(),
      (spatial_derivative(state.a[2], 1) - spatial_derivative(state.a[1], 2)).real_part(),
  };
}

GaugeState build_compatible_data(const ScalarField& phi0, const ScalarField& phi_t0,
                                 const Potential& potential, ZeroModePolicy policy) {
  (void)potential;
  if (!(phi0.grid() == phi_t0.grid())) throw std::invalid_argument("build_compatible_data: grid mismatch");
  const Grid& grid = phi0.grid();
  GaugeState s = GaugeState::zero(grid);
  s.phi = phi0.to_physical().with_real_flag(false);
  s.phi_t = phi_t0.to_physical().with_real_flag(false);
  s.validate();

  const ScalarField j0 = current(s).j[0];
  check_zero_mode(grid, j0.to_spectral().values(), policy, "J_0 (total charge)");

  // A_j = eps_{jk} |grad|^{-1} R_k J_0, the zero mode of J_0 being legislated away.
  const auto inv_grad = Multiplier::frac_lap_hom(-1.0);
  const ScalarField r1 = apply_multiplier(apply_multiplier(j0, Multiplier::riesz_hom(1)), inv_grad);
  const ScalarField r2 = apply_multiplier(apply_multiplier(j0, Multiplier::riesz_hom(2)), inv_grad);
  s.a[1] = r2.real_part();
  s.a[2] = (-r1).real_part();

  s.a_t[0] = (spatial_derivative(s.a[1], 1) + spatial_derivative(s.a[2], 2)).real_part();
  const CurrentVector j = current(s);
  // d_t A_j = d_j A_0 + eps_{jk} J^k, with A_0 = 0 and J^k = -J_k.
  s.a_t[1] = (-j.j[2]).real_part();
  s.a_t[2] = j.j[1].real_part();
  return s;
}

ConstraintResiduals constraint_residuals(const GaugeState& state) {
  const ScalarField j0 = current(state).j[0];
  const cplx charge_density = j0.mean();
  const double norm = std::max(1.0, j0.l2_norm());

  const ScalarField curl = spatial_derivative(state.a[2], 1) - spatial_derivative(state.a[1], 2);
  const ScalarField gauss = curl - (j0 - ScalarField::constant(state.grid(), charge_density));
  const ScalarField lorenz = state.a_t[0].to_physical() - spatial_derivative(state.a[1], 1) -
                             spatial_derivative(state.a[2], 2);
  return {gauss.l2_norm() / norm, lorenz.l2_norm() / norm,
          charge_density.real() * state.grid().area()};
}

// ---------------------------------------------------------------------------
// Snapshots

namespace {

const std::array<const char*, 8> kStateFiles = {"a0.cshf",   "a1.cshf",   "a2.cshf",  "a0_t.cshf",
                                                "a1_t.cshf", "a2_t.cshf", "phi.cshf", "phi_t.cshf"};

}  // namespace

void write_state(const std::filesystem::path& dir, const GaugeState& state, const Potential& potential) {
  std::filesystem::create_directories(dir);
  for (int mu = 0; mu < 3; ++mu) {
    write_field(dir / kStateFiles[mu], state.a[mu]);
    write_field(dir / kStateFiles[3 + mu], state.a_t[mu]);
  }
  write_field(dir / kStateFiles[6], state.phi);
  write_field(dir / kStateFiles[7], state.phi_t);

  nlohmann::json meta;
  meta["time"] = state.time;
  meta["grid"] = {{"n", state.grid().n()}, {"L", state.grid().length()}};
  if (potential.is_polynomial())
    meta["potential"] = {{"kind", "polynomial"}, {"coeffs", potential.coefficients()}, {"alpha", potential.alpha()}};
  else
    meta["potential"] = {{"kind", "callable"}, {"alpha", potential.alpha()}};
  std::ofstream(dir / "state.json") << meta.dump(2) << "\n";
}

GaugeState read_state(const std::filesystem::path& dir) {
  std::ifstream meta_in(dir / "state.json");
  if (!meta_in) throw Error("missing state.json in " + dir.string());
  const nlohmann::json meta = nlohmann::json::parse(meta_in);

  auto load = [&](int i) { return read_field(dir / kStateFiles[i]).to_physical(); };
  GaugeState s{{load(0), load(1), load(2)}, {load(3), load(4), load(5)}, load(6), load(7),
               meta.at("time").get<double>()};
  s.phi = s.phi.with_real_flag(false);
  s.phi_t = s.phi_t.with_real_flag(false);
  s.validate();
  return s;
}

}  // namespace cshl
