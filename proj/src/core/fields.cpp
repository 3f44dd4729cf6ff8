#include "rdlab/fields.hpp"

#include <fftw3.h>

#include <algorithm>
#include <numeric>

#include "rdlab/clifford.hpp"
#include "rdlab/parallel.hpp"
#include "rdlab/positionops.hpp"

namespace rdlab {

namespace {

// (sigma.q) applied to the two-component pair (a0, a1).
inline void sigma_q(const Vec3& q, cplx a0, cplx a1, cplx& r0, cplx& r1) {
  r0 = q.z * a0 + cplx(q.x, -q.y) * a1;
  r1 = cplx(q.x, q.y) * a0 - q.z * a1;
}

// H_D(q) s = alpha.q s + beta m s
Spinor apply_dirac_hamiltonian(const Vec3& q, double m, const Spinor& s) {
  Spinor r;
  cplx u0, u1, l0, l1;
  sigma_q(q, s[2], s[3], u0, u1);
  sigma_q(q, s[0], s[1], l0, l1);
  r[0] = u0 + m * s[0];
  r[1] = u1 + m * s[1];
  r[2] = l0 - m * s[2];
  r[3] = l1 - m * s[3];
  return r;
}

double grid_sum_norm(const SpinorField& f, double cell) {
  double acc = 0;
  for (const auto& v : f.data) acc += std::norm(v);
  return acc * cell;
}

template <class F>
MomentumField map_nodes(const MomentumField& f, F&& fn) {
  MomentumField out = f;
  const Grid& g = f.grid;
  parallel_for(0, f.nodes(), [&](std::size_t i) { out.set(i, fn(g.momentum(i), f.at(i))); });
  return out;
}

double cube_halfwidth(const Grid& grid, const std::vector<double>& rho, double fraction, Vec3& centre) {
  double total = 0;
  Vec3 c{};
  for (std::size_t i = 0; i < rho.size(); ++i) {
    total += rho[i];
    c = c + rho[i] * grid.position(i);
  }
  require(total > 0, ErrorCode::Precondition, "density has no weight");
  centre = (1.0 / total) * c;
  std::vector<std::pair<double, double>> by_distance(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    Vec3 d = grid.position(i) - centre;
    by_distance[i] = {std::max({std::abs(d.x), std::abs(d.y), std::abs(d.z)}), rho[i]};
  }
  std::sort(by_distance.begin(), by_distance.end());
  double acc = 0;
  for (const auto& [dist, w] : by_distance) {
    acc += w;
    if (acc >= fraction * total) return dist;
  }
  return by_distance.back().first;
}

}  // namespace

double total_probability(const MomentumField& f) { return grid_sum_norm(f, std::pow(f.grid.dp(), 3)); }
double total_probability(const CoordinateField& f) { return grid_sum_norm(f, std::pow(f.grid.dx(), 3)); }

double boundary_ratio(const SpinorField& f, int width) {
  double peak = 0, edge = 0;
  const std::size_t n = f.nodes();
  for (std::size_t i = 0; i < n; ++i) {
    double v = 0;
    for (int c = 0; c < 4; ++c) v = std::max(v, std::abs(f.data[c * n + i]));
    peak = std::max(peak, v);
    if (f.grid.in_boundary_shell(i, width)) edge = std::max(edge, v);
  }
  return peak > 0 ? edge / peak : 0.0;
}

MomentumField gaussian_packet(const Grid& grid, double m, const PacketSpec& spec) {
  require(m > 0, ErrorCode::InvalidArgument, "mass must be positive");
  require(spec.sigma > 0, ErrorCode::InvalidArgument, "packet width sigma must be positive");
  double wn = std::sqrt(std::norm(spec.weight_particle) + std::norm(spec.weight_antiparticle));
  require(wn > 0, ErrorCode::InvalidArgument, "branch weights are both zero");
  double sn = std::sqrt(std::norm(spec.spin[0]) + std::norm(spec.spin[1]));
  require(sn > 0, ErrorCode::InvalidArgument, "spin state is zero");
  const cplx wp = spec.weight_particle / wn, wa = spec.weight_antiparticle / wn;
  const cplx s0 = spec.spin[0] / sn, s1 = spec.spin[1] / sn;

  BranchContent content = wa == 0.0 ? BranchContent::Particle
                          : wp == 0.0 ? BranchContent::Antiparticle
                                      : BranchContent::Mixed;
  MomentumField f(grid, m, Representation::Dirac, content);
  const double sig2 = spec.sigma * spec.sigma;
  parallel_for(0, f.nodes(), [&](std::size_t i) {
    Vec3 q = grid.momentum(i);
    Vec3 d = q - spec.p0;
    double e = mass_shell_energy(m, q);
    cplx env = std::exp(cplx(-0.5 * dot(d, d) * sig2, -dot(q, spec.x0))) * std::sqrt(m / e);
    Spinor s{};
    if (wp != 0.0) {
      Spinor rest{s0, s1, 0, 0};
      s = s + (env * wp) * apply_spinor_boost(q, m, rest);
    }
    if (wa != 0.0) {
      Spinor rest{0, 0, s0, s1};
      s = s + (env * wa) * apply_spinor_boost(-q, m, rest);
    }
    f.set(i, s);
  });
  double norm = total_probability(f);
  require(norm > 0, ErrorCode::Precondition, "packet has no support on the grid");
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& v : f.data) v *= scale;

  double mom_edge = boundary_ratio(f);
  require(mom_edge <= spec.hygiene, ErrorCode::SupportOverflow,
          "packet leaks past p_max: boundary/peak = " + std::to_string(mom_edge) + " (increase p_max or sigma)");
  double x_edge = boundary_ratio(to_coordinate(f));
  require(x_edge <= spec.hygiene, ErrorCode::SupportOverflow,
          "packet leaks past L/2: boundary/peak = " + std::to_string(x_edge) +
              " (decrease sigma, move x0 inward or increase N)");
  return f;
}

CoordinateField to_coordinate(const MomentumField& f) {
  CoordinateField g(f.grid, f.mass, f.rep, f.branch);
  g.time = f.time;
  g.data = f.data;
  for (int c = 0; c < 4; ++c) fft_to_coordinate(g.component(c), g.grid);
  return g;
}

MomentumField to_momentum(const CoordinateField& g) {
  MomentumField f(g.grid, g.mass, g.rep, g.branch);
  f.time = g.time;
  f.data = g.data;
  for (int c = 0; c < 4; ++c) fft_to_momentum(f.component(c), f.grid);
  return f;
}

MomentumField evolve_dirac(const MomentumField& f, double t) {
  require(f.rep == Representation::Dirac, ErrorCode::Precondition, "evolve_dirac needs a Dirac-representation field");
  require(std::isfinite(t), ErrorCode::InvalidArgument, "evolution time must be finite");
  const double m = f.mass;
  MomentumField out = map_nodes(f, [&](const Vec3& q, const Spinor& s) {
    double e = mass_shell_energy(m, q);
    Spinor hs = apply_dirac_hamiltonian(q, m, s);
    return cplx(std::cos(e * t)) * s + cplx(0, -std::sin(e * t) / e) * hs;
  });
  out.time = f.time + t;
  return out;
}

MomentumField evolve_fw(const MomentumField& f, double t) {
  require(f.rep == Representation::FW, ErrorCode::Precondition, "evolve_fw needs an FW-representation field");
  require(std::isfinite(t), ErrorCode::InvalidArgument, "evolution time must be finite");
  const double m = f.mass;
  MomentumField out = map_nodes(f, [&](const Vec3& q, const Spinor& s) {
    double e = mass_shell_energy(m, q);
    cplx up = std::polar(1.0, -e * t), down = std::conj(up);
    return Spinor{up * s[0], up * s[1], down * s[2], down * s[3]};
  });
  out.time = f.time + t;
  return out;
}

MomentumField evolve(const MomentumField& f, double t) {
  return f.rep == Representation::Dirac ? evolve_dirac(f, t) : evolve_fw(f, t);
}

MomentumField to_fw(const MomentumField& f) {
  require(f.rep == Representation::Dirac, ErrorCode::Precondition, "to_fw needs a Dirac-representation field");
  const double m = f.mass;
  MomentumField out = map_nodes(f, [&](const Vec3& q, const Spinor& s) { return apply_fw(q, m, s); });
  out.rep = Representation::FW;
  return out;
}

MomentumField to_dirac(const MomentumField& f) {
  require(f.rep == Representation::FW, ErrorCode::Precondition, "to_dirac needs an FW-representation field");
  const double m = f.mass;
  MomentumField out = map_nodes(f, [&](const Vec3& q, const Spinor& s) { return apply_fw(q, m, s, true); });
  out.rep = Representation::Dirac;
  return out;
}

MomentumField project_particle(const MomentumField& f) {
  require(f.rep == Representation::Dirac, ErrorCode::Precondition, "projection needs a Dirac-representation field");
  const double m = f.mass;
  MomentumField out = map_nodes(f, [&](const Vec3& q, const Spinor& s) {
    double e = mass_shell_energy(m, q);
    return cplx(0.5) * (s + cplx(1.0 / e) * apply_dirac_hamiltonian(q, m, s));
  });
  out.branch = BranchContent::Particle;
  return out;
}

std::vector<double> density(const CoordinateField& g) {
  std::vector<double> rho(g.nodes());
  parallel_for(0, g.nodes(), [&](std::size_t i) { rho[i] = norm2(g.at(i)); });
  return rho;
}

DensityCurrent dirac_density_current(const CoordinateField& g) {
  require(g.rep == Representation::Dirac, ErrorCode::Precondition,
          "dirac_density_current needs a Dirac-representation field");
  DensityCurrent dc;
  dc.grid = g.grid;
  dc.rep = g.rep;
  const std::size_t n = g.nodes();
  dc.rho.resize(n);
  for (auto& v : dc.j) v.resize(n);
  const auto& set = dirac_set();
  std::vector<double> residue(n);
  parallel_for(0, n, [&](std::size_t i) {
    Spinor s = g.at(i);
    dc.rho[i] = norm2(s);
    double r = 0;
    for (int k = 0; k < 3; ++k) {
      cplx v = inner(s, set.alpha[k] * s);
      dc.j[k][i] = v.real();
      r = std::max(r, std::abs(v.imag()));
    }
    residue[i] = r;
  });
  dc.max_imaginary_residue = *std::max_element(residue.begin(), residue.end());
  return dc;
}

std::vector<double> spectral_divergence(const Grid& grid, const std::array<std::vector<double>, 3>& j) {
  const std::size_t n = grid.size();
  std::vector<cplx> acc(n, 0.0);
  for (int k = 0; k < 3; ++k) {
    require(j[k].size() == n, ErrorCode::InvalidArgument, "current does not match grid");
    std::vector<cplx> buf(j[k].begin(), j[k].end());
    fft_to_momentum(buf, grid);
    for (std::size_t i = 0; i < n; ++i) {
      int a[3];
      grid.unravel(i, a[0], a[1], a[2]);
      if (a[k] == 0) continue;  // Nyquist mode carries no odd derivative
      acc[i] += cplx(0, grid.p(a[k])) * buf[i];
    }
  }
  fft_to_coordinate(acc, grid);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = acc[i].real();
  return out;
}

double l2_norm(const Grid& grid, const std::vector<double>& v) {
  double acc = 0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc * std::pow(grid.dx(), 3));
}

std::vector<cplx> longitudinal_current_spectrum(const Grid& grid, const std::vector<double>& dt_rho, int k) {
  const std::size_t n = grid.size();
  require(dt_rho.size() == n, ErrorCode::InvalidArgument, "density rate does not match grid");
  require(k >= 0 && k < 3, ErrorCode::InvalidArgument, "axis index must be 0, 1 or 2");
  std::vector<cplx> buf(dt_rho.begin(), dt_rho.end());
  fft_to_momentum(buf, grid);
  for (std::size_t i = 0; i < n; ++i) {
    int a[3];
    grid.unravel(i, a[0], a[1], a[2]);
    double k2 = 0;
    for (int l = 0; l < 3; ++l)
      if (a[l] != 0) k2 += grid.p(a[l]) * grid.p(a[l]);
    // j = -grad lap^{-1} d_t rho: i k / k^2; Nyquist and zero modes dropped
    buf[i] = (a[k] == 0 || k2 == 0) ? cplx(0) : cplx(0, grid.p(a[k]) / k2) * buf[i];
  }
  return buf;
}

std::array<std::vector<double>, 3> longitudinal_current(const Grid& grid, const std::vector<double>& dt_rho) {
  std::array<std::vector<double>, 3> j;
  for (int k = 0; k < 3; ++k) {
    std::vector<cplx> buf = longitudinal_current_spectrum(grid, dt_rho, k);
    fft_to_coordinate(buf, grid);
    j[k].resize(buf.size());
    for (std::size_t i = 0; i < buf.size(); ++i) j[k][i] = buf[i].real();
  }
  return j;
}

std::vector<double> fw_density_rate(const MomentumField& fw) {
  require(fw.rep == Representation::FW, ErrorCode::Precondition, "FW density rate needs an FW field");
  CoordinateField psi = to_coordinate(fw);
  MomentumField hpsi = map_nodes(fw, [&](const Vec3& q, const Spinor& s) {
    double e = mass_shell_energy(fw.mass, q);
    return Spinor{cplx(0, -e) * s[0], cplx(0, -e) * s[1], cplx(0, e) * s[2], cplx(0, e) * s[3]};
  });
  CoordinateField dpsi = to_coordinate(hpsi);
  std::vector<double> rate(psi.nodes());
  parallel_for(0, psi.nodes(), [&](std::size_t i) { rate[i] = 2.0 * inner(psi.at(i), dpsi.at(i)).real(); });
  return rate;
}

double current_fraction_outside(const Grid& grid, const std::vector<double>& rho,
                                const std::array<std::vector<double>, 3>& j, double fraction) {
  Vec3 centre;
  double h = cube_halfwidth(grid, rho, fraction, centre);
  double inside = 0, total = 0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    double w = j[0][i] * j[0][i] + j[1][i] * j[1][i] + j[2][i] * j[2][i];
    total += w;
    Vec3 d = grid.position(i) - centre;
    if (std::max({std::abs(d.x), std::abs(d.y), std::abs(d.z)}) <= h) inside += w;
  }
  return total > 0 ? std::sqrt(std::max(0.0, total - inside) / total) : 0.0;
}

ContinuityReport continuity_residual(Representation rep, const MomentumField& f, double t, double dt) {
  require(dt > 0, ErrorCode::InvalidArgument, "continuity time step must be positive");
  ContinuityReport r;
  r.rep = rep;
  r.dt = dt;
  const Grid& grid = f.grid;
  const std::size_t n = grid.size();
  if (rep == Representation::Dirac) {
    MomentumField base = f.rep == Representation::Dirac ? f : to_dirac(f);
    auto rho_plus = density(to_coordinate(evolve_dirac(base, t + dt)));
    auto rho_minus = density(to_coordinate(evolve_dirac(base, t - dt)));
    auto dc = dirac_density_current(to_coordinate(evolve_dirac(base, t)));
    auto div = spectral_divergence(grid, dc.j);
    std::vector<double> rate(n), res(n);
    for (std::size_t i = 0; i < n; ++i) {
      rate[i] = (rho_plus[i] - rho_minus[i]) / (2 * dt);
      res[i] = rate[i] + div[i];
    }
    r.residual = l2_norm(grid, res);
    r.rho_norm = l2_norm(grid, dc.rho);
    r.dt_rho_norm = l2_norm(grid, rate);
    r.nonlocality = current_fraction_outside(grid, dc.rho, dc.j, 0.999);
    // Truncation error ~ dt^2 |d^3 rho| / 6 ~ dt^2 |d_t rho| E^2 / 6 dominating the rate itself.
    r.dt_flagged = dt * mass_shell_energy(f.mass, Vec3{grid.pmax, 0, 0}) > 0.5;
  } else {
    MomentumField fw = f.rep == Representation::FW ? f : to_fw(f);
    fw = evolve_fw(fw, t);
    std::vector<double> rho = density(to_coordinate(fw));
    std::vector<double> rate = fw_density_rate(fw);
    auto j = longitudinal_current(grid, rate);
    auto div = spectral_divergence(grid, j);
    std::vector<double> res(n);
    for (std::size_t i = 0; i < n; ++i) res[i] = rate[i] + div[i];
    r.residual = l2_norm(grid, res);
    r.rho_norm = l2_norm(grid, rho);
    r.dt_rho_norm = l2_norm(grid, rate);
    r.nonlocality = current_fraction_outside(grid, rho, j, 0.999);
  }
  return r;
}

double dominant_frequency(const std::vector<double>& series, double dt) {
  const std::size_t n = series.size();
  require(n >= 16, ErrorCode::InvalidArgument, "need at least 16 samples");
  require(dt > 0, ErrorCode::InvalidArgument, "sample spacing must be positive");
  double tm = 0.5 * (n - 1), st = 0, sy = 0, stt = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sy += series[i];
    st += (i - tm) * series[i];
    stt += (i - tm) * (i - tm);
  }
  const double mean = sy / n, slope = st / stt;
  std::size_t padded = 1;
  while (padded < 16 * n) padded <<= 1;
  std::vector<double> in(padded, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double hann = 0.5 - 0.5 * std::cos(2 * kPi * i / (n - 1));
    in[i] = (series[i] - mean - slope * (i - tm)) * hann;
  }
  std::vector<fftw_complex> out(padded / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(padded), in.data(), out.data(), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::vector<double> mag(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) mag[i] = std::hypot(out[i][0], out[i][1]);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  // Skip the low-frequency lobe left by the window around DC.
  std::size_t start = 2 * padded / n;
  if (start + 2 >= mag.size()) return 0.0;
  std::size_t k = std::max_element(mag.begin() + start, mag.end() - 1) - mag.begin();
  double shift = 0;
  double a = mag[k - 1], b = mag[k], c = mag[k + 1];
  if (a - 2 * b + c != 0) shift = 0.5 * (a - c) / (a - 2 * b + c);
  return 2 * kPi * (k + shift) / (padded * dt);
}

namespace {

Vec3 ls_slope(const std::vector<double>& t, const std::vector<Vec3>& y) {
  double tm = std::accumulate(t.begin(), t.end(), 0.0) / t.size();
  Vec3 ym{};
  for (const auto& v : y) ym = ym + v;
  ym = (1.0 / y.size()) * ym;
  double stt = 0;
  Vec3 sty{};
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - tm) * (t[i] - tm);
    sty = sty + (t[i] - tm) * (y[i] - ym);
  }
  return (1.0 / stt) * sty;
}

Vec3 centroid(const CoordinateField& g) {
  auto rho = density(g);
  double total = 0;
  Vec3 c{};
  for (std::size_t i = 0; i < rho.size(); ++i) {
    total += rho[i];
    c = c + rho[i] * g.grid.position(i);
  }
  return (1.0 / total) * c;
}

}  // namespace

ZitterbewegungResult zitterbewegung_experiment(const MomentumField& f, double duration, int samples) {
  require(duration > 0, ErrorCode::InvalidArgument, "zitterbewegung duration must be positive");
  require(samples >= 16, ErrorCode::InvalidArgument, "zitterbewegung needs at least 16 samples");
  require(f.rep == Representation::Dirac, ErrorCode::Precondition, "zitterbewegung runs in the Dirac representation");
  ZitterbewegungResult r;
  const double dt = duration / (samples - 1);
  const bool has_particle = f.branch != BranchContent::Antiparticle;
  r.mean_energy = expectation_energy(f);
  r.mean_p_over_e = expectation_velocity(f);
  r.samples.resize(samples);
  for (int s = 0; s < samples; ++s) {
    double t = s * dt;
    MomentumField ft = evolve_dirac(f, t);
    TrajectoryPoint& p = r.samples[s];
    p.t = t;
    p.x_hat = centroid(to_coordinate(ft));
    p.x_p = has_particle ? expectation_XP(ft) : Vec3{};
    p.p_over_e = expectation_velocity(ft);
  }
  std::vector<double> ts(samples);
  std::vector<Vec3> xh(samples), xp(samples);
  for (int s = 0; s < samples; ++s) {
    ts[s] = r.samples[s].t;
    xh[s] = r.samples[s].x_hat;
    xp[s] = r.samples[s].x_p;
  }
  r.slope_x_hat = ls_slope(ts, xh);
  r.slope_x_p = ls_slope(ts, xp);

  double best = -1;
  for (int k = 0; k < 3; ++k) {
    double tm = 0.5 * duration;
    double mean = 0;
    for (int s = 0; s < samples; ++s) mean += xh[s][k];
    mean /= samples;
    double dev = 0;
    for (int s = 0; s < samples; ++s) {
      double d = xh[s][k] - mean - r.slope_x_hat[k] * (ts[s] - tm);
      dev = std::max(dev, std::abs(d));
    }
    if (dev > best) {
      best = dev;
      r.axis = k;
    }
  }
  r.oscillation_amplitude = best;
  std::vector<double> series(samples);
  for (int s = 0; s < samples; ++s) series[s] = xh[s][r.axis];
  r.dominant_frequency = dominant_frequency(series, dt);
  return r;
}

}  // namespace rdlab
