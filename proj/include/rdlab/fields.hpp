#pragma once

#include <array>
#include <optional>
#include <vector>

#include "rdlab/grid.hpp"
#include "rdlab/spinors.hpp"

namespace rdlab {

enum class Representation { Dirac, FW };

/// Which energy branches a field may contain. Fields are always indexed by
/// the Dirac momentum q; antiparticle content with label p sits at q = -p.
enum class BranchContent { Particle, Antiparticle, Mixed };

/// Spinor values on one of the dual grids, stored component-major
/// (component c of node i at data[c * n^3 + i]).
struct SpinorField {
  Grid grid;
  double mass = 1.0;
  Representation rep = Representation::Dirac;
  BranchContent branch = BranchContent::Particle;
  double time = 0.0;
  std::vector<cplx> data;

  SpinorField() = default;
  SpinorField(const Grid& g, double m, Representation r, BranchContent b)
      : grid(g), mass(m), rep(r), branch(b), data(4 * g.size()) {}

  std::size_t nodes() const { return grid.size(); }
  std::span<cplx> component(int c) { return {data.data() + c * nodes(), nodes()}; }
  std::span<const cplx> component(int c) const { return {data.data() + c * nodes(), nodes()}; }

  Spinor at(std::size_t i) const {
    const std::size_t n = nodes();
    return {data[i], data[n + i], data[2 * n + i], data[3 * n + i]};
  }
  void set(std::size_t i, const Spinor& s) {
    const std::size_t n = nodes();
    for (int c = 0; c < 4; ++c) data[c * n + i] = s[c];
  }
  bool same_layout(const SpinorField& o) const { return grid == o.grid && data.size() == o.data.size(); }
};

/// Unitary Fourier amplitude phi(q) of the Dirac (or FW) field:
/// psi(x) = (2 pi)^{-3/2} sum_q e^{i q.x} phi(q) dq^3, so sum |phi|^2 dq^3 = 1.
/// The invariant-measure amplitude is a(q) = (2 pi)^{3/2} (E_q / m) phi(q).
struct MomentumField : SpinorField {
  using SpinorField::SpinorField;
};

struct CoordinateField : SpinorField {
  using SpinorField::SpinorField;
};

/// sum |phi|^2 times the cell volume of the field's grid.
double total_probability(const MomentumField& f);
double total_probability(const CoordinateField& f);

/// max |component| over the outermost `width` nodes divided by the global max.
double boundary_ratio(const SpinorField& f, int width = 2);

struct PacketSpec {
  Vec3 x0{};
  Vec3 p0{};
  double sigma = 3.0;
  /// Amplitudes of the particle and antiparticle parts (normalized internally).
  cplx weight_particle = 1.0;
  cplx weight_antiparticle = 0.0;
  /// Rest-frame spin state (c_up, c_down) along z; normalized internally.
  std::array<cplx, 2> spin{cplx(1.0), cplx(0.0)};
  /// Boundary hygiene threshold (momentum and coordinate shells).
  double hygiene = 1e-8;
};

/// Gaussian wave packet. The particle part is
///   phi(q) = N exp(-(q - p0)^2 sigma^2 / 2 - i q.x0) sqrt(m / E_q) psi_{+eps}(q, s),
/// the antiparticle part the same envelope on psi_{-eps}(-q, s). Rejects
/// packets whose momentum or coordinate boundary shell exceeds `hygiene`.
MomentumField gaussian_packet(const Grid& grid, double m, const PacketSpec& spec);

CoordinateField to_coordinate(const MomentumField& f);
MomentumField to_momentum(const CoordinateField& g);

/// exp(-i H_D(q) t) per node, H_D = alpha.q + beta m. Dirac representation only.
MomentumField evolve_dirac(const MomentumField& f, double t);
/// exp(-i beta E_q t) per node. FW representation only.
MomentumField evolve_fw(const MomentumField& f, double t);
/// Evolves in whichever representation the field carries.
MomentumField evolve(const MomentumField& f, double t);

/// phi_FW(q) = U_FW(q) phi(q)
MomentumField to_fw(const MomentumField& f);
/// phi(q) = U_FW(q)^dagger phi_FW(q)
MomentumField to_dirac(const MomentumField& f);

/// Projection onto the +E (particle) eigenspace of H_D(q): (1 + H_D/E) / 2.
MomentumField project_particle(const MomentumField& f);

struct DensityCurrent {
  Grid grid;
  Representation rep = Representation::Dirac;
  std::vector<double> rho;
  std::array<std::vector<double>, 3> j;
  double max_imaginary_residue = 0;
};

/// rho = psi^dag psi, j^k = psi^dag alpha^k psi. Rejects FW-tagged fields.
DensityCurrent dirac_density_current(const CoordinateField& g);

/// psi^dag psi for either representation.
std::vector<double> density(const CoordinateField& g);

/// Spectral divergence of a real vector field on the coordinate grid.
std::vector<double> spectral_divergence(const Grid& grid, const std::array<std::vector<double>, 3>& j);

/// L2 norm sqrt(sum v^2 dx^3) on the coordinate grid.
double l2_norm(const Grid& grid, const std::vector<double>& v);

struct ContinuityReport {
  Representation rep = Representation::Dirac;
  double dt = 0;
  double residual = 0;       // || d_t rho + div j ||_2
  double rho_norm = 0;       // || rho ||_2
  double dt_rho_norm = 0;    // || d_t rho ||_2
  double nonlocality = 0;    // fraction of ||j|| outside the 99.9% box of rho
  bool dt_flagged = false;   // residual dominated by O(dt^2) truncation
};

/// Dirac: centered time difference of rho plus spectral divergence of
/// psi^dag alpha psi. FW: longitudinal current j = -grad (lap)^{-1} d_t rho
/// (zero mean mode dropped) with its defining residual.
ContinuityReport continuity_residual(Representation rep, const MomentumField& f, double t, double dt);

/// Longitudinal FW current for a given d_t rho on the coordinate grid.
std::array<std::vector<double>, 3> longitudinal_current(const Grid& grid, const std::vector<double>& dt_rho);
/// Momentum-grid spectrum of component k of the longitudinal current.
std::vector<cplx> longitudinal_current_spectrum(const Grid& grid, const std::vector<double>& dt_rho, int k);

/// Exact d_t rho_FW = 2 Re psi^dag (-i beta E psi) on the coordinate grid.
std::vector<double> fw_density_rate(const MomentumField& fw);

/// Half-width of the smallest cube centred on the rho centroid holding
/// `fraction` of the total, and the fraction of ||j|| outside it.
double current_fraction_outside(const Grid& grid, const std::vector<double>& rho,
                                const std::array<std::vector<double>, 3>& j, double fraction);

struct TrajectoryPoint {
  double t = 0;
  Vec3 x_hat{};     // <x> in the Dirac density
  Vec3 x_p{};       // Re <X_P> on the +eps projection
  Vec3 p_over_e{};  // <p/E> in the Dirac density
};

struct ZitterbewegungResult {
  std::vector<TrajectoryPoint> samples;
  int axis = 2;                  // axis with the largest detrended oscillation
  double dominant_frequency = 0; // angular frequency of detrended <x_hat>
  double mean_energy = 0;        // <E> in the Dirac density
  Vec3 slope_x_hat{};            // least-squares slopes
  Vec3 slope_x_p{};
  Vec3 mean_p_over_e{};
  double oscillation_amplitude = 0;
};

ZitterbewegungResult zitterbewegung_experiment(const MomentumField& f, double duration, int samples);

/// Angular frequency of the strongest non-DC peak of a uniformly sampled,
/// linearly detrended series (zero padded, parabolic peak refinement).
double dominant_frequency(const std::vector<double>& series, double dt);

}  // namespace rdlab
