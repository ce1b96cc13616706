#include "tlle/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "tlle/error.hpp"
#include "tlle/fft.hpp"

namespace tlle {
namespace {

double japanese(double k) { return std::sqrt(1.0 + k * k); }

// e^{-1/x} for x > 0, zero otherwise.
double mollifier(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// Smooth step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = mollifier(x), b = mollifier(1.0 - x);
  return a / (a + b);
}

} // namespace

double sobolev_norm(const SpectralField& field, double s) {
  const FourierGrid& g = field.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double w = std::pow(japanese(static_cast<double>(g.wavenumber(i))), 2.0 * s);
    acc += w * std::norm(field.coeffs()[i]);
  }
  return std::sqrt(acc);
}

double phi_beta(long k, double beta) {
  const long m = k < 0 ? -k : k;
  // Sum from the small tail terms upward.
  double acc = 0.0;
  for (long j = m; j >= 1; --j) acc += 2.0 * std::pow(japanese(static_cast<double>(j)), -beta);
  return acc + 1.0;
}

BesovConfig BesovConfig::for_grid(const FourierGrid& grid) {
  const int log2n = std::bit_width(grid.size()) - 1;
  return BesovConfig(grid, log2n - 2);
}

BesovConfig::BesovConfig(const FourierGrid& grid, int j_max) : j_max_(j_max) {
  if (j_max < 0) throw SizingError("Besov block index must be non-negative");
  // Block j_max reaches |k| < 2^{j_max + 1}; that band must sit below n/2.
  if ((std::size_t{1} << (j_max + 2)) > grid.size())
    throw SizingError("grid of " + std::to_string(grid.size()) + " modes is too coarse for j_max = " +
                      std::to_string(j_max));
}

double BesovConfig::chi(double t) {
  const double a = std::abs(t);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  return 1.0 - smooth_step(a - 1.0);
}

double BesovConfig::weight(int j, long k) const {
  const double t = static_cast<double>(k);
  if (j == 0) return chi(t);
  return bump(std::ldexp(t, -j));
}

double BesovConfig::partition_residual(long k) const {
  double acc = 0.0;
  for (int j = 0; j <= j_max_; ++j) acc += weight(j, k);
  return 1.0 - acc;
}

SpectralField littlewood_paley_block(const SpectralField& field, int j, const BesovConfig& cfg) {
  if (j < 0 || j > cfg.j_max())
    throw UnsupportedParameters("block " + std::to_string(j) + " outside 0.." + std::to_string(cfg.j_max()));
  SpectralField out = field;
  const FourierGrid& g = field.grid();
  for (std::size_t i = 0; i < g.size(); ++i) out.coeffs()[i] *= cfg.weight(j, g.wavenumber(i));
  return out;
}

double lp_norm(std::span<const cplx> samples, double p) {
  if (samples.empty()) return 0.0;
  const double h = kTwoPi / static_cast<double>(samples.size());
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : samples) m = std::max(m, std::abs(v));
    return m;
  }
  if (p == 1.0) {
    double acc = 0.0;
    for (const auto& v : samples) acc += std::abs(v);
    return h * acc;
  }
  if (p == 2.0) {
    double acc = 0.0;
    for (const auto& v : samples) acc += std::norm(v);
    return std::sqrt(h * acc);
  }
  throw UnsupportedParameters("L^p norms are provided for p = 1, 2 and infinity");
}

std::vector<double> besov_blocks(std::span<const cplx> samples, const FourierGrid& grid, double s,
                                 double p, const BesovConfig& cfg) {
  const SpectralField f = to_spectral(grid, samples);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(cfg.j_max()) + 1);
  for (int j = 0; j <= cfg.j_max(); ++j) {
    const std::vector<cplx> block = from_spectral(littlewood_paley_block(f, j, cfg));
    out.push_back(std::pow(2.0, s * j) * lp_norm(block, p));
  }
  return out;
}

double besov_norm(std::span<const cplx> samples, const FourierGrid& grid, double s, double p,
                  const BesovConfig& cfg) {
  const std::vector<double> blocks = besov_blocks(samples, grid, s, p, cfg);
  return *std::max_element(blocks.begin(), blocks.end());
}

double taper_weight(Taper taper, double xi) {
  if (taper == Taper::None) return 1.0;
  constexpr double ramp = 0.25;
  return smooth_step(xi / ramp) * smooth_step((1.0 - xi) / ramp);
}

SpaceTimeField::SpaceTimeField(double t0_, double t1_, std::size_t n_t_, FourierGrid grid_,
                               Taper taper_)
    : t0(t0_), t1(t1_), n_t(n_t_), grid(grid_), samples(n_t_ * grid_.size()), taper(taper_) {
  if (!(t1 > t0)) throw UnsupportedParameters("time window must have positive length");
  if (n_t < 2) throw SizingError("time grid needs at least two samples");
}

namespace {

void check_same_shape(const SpaceTimeField& a, const SpaceTimeField& b) {
  if (!(a.grid == b.grid) || a.n_t != b.n_t || a.t0 != b.t0 || a.t1 != b.t1)
    throw ShapeError("space-time fields live on different grids or windows");
}

struct WeightKey {
  std::size_t nt, nx;
  double window, s, b, beta;
  bool operator==(const WeightKey&) const = default;
};

// <k>^{2s} <tau + beta k^3 + k^2>^{2b} on the window lattice, times the
// quadrature factors, so the norm is sqrt(sum w |FFT|^2). Ensembles reuse the
// same lattice, so the last few tables are kept per thread.
const std::vector<double>& xsb_weights(const WeightKey& key, const FourierGrid& grid) {
  thread_local std::vector<std::pair<WeightKey, std::vector<double>>> cache;
  for (const auto& entry : cache)
    if (entry.first == key) return entry.second;
  if (cache.size() >= 4) cache.erase(cache.begin());

  const std::size_t nt = key.nt, nx = key.nx;
  const double dt = key.window / static_cast<double>(nt);
  const double scale = dt * grid.spacing();
  const double dtau = kTwoPi / key.window;
  std::vector<double> wk(nx);
  for (std::size_t j = 0; j < nx; ++j)
    wk[j] = std::pow(japanese(static_cast<double>(grid.wavenumber(j))), 2.0 * key.s);
  std::vector<double> w(nt * nx);
  for (std::size_t l = 0; l < nt; ++l) {
    const long ls = l < nt / 2 ? static_cast<long>(l) : static_cast<long>(l) - static_cast<long>(nt);
    const double tau = dtau * static_cast<double>(ls);
    for (std::size_t j = 0; j < nx; ++j) {
      const double k = static_cast<double>(grid.wavenumber(j));
      const double r = tau + key.beta * k * k * k + k * k;
      w[l * nx + j] = wk[j] * std::pow(1.0 + r * r, key.b) * scale * scale * dtau;
    }
  }
  cache.emplace_back(key, std::move(w));
  return cache.back().second;
}

double xsb_of_samples(const SpaceTimeField& shape, std::span<const cplx> raw, double s, double b,
                      double beta) {
  const std::size_t nt = shape.n_t, nx = shape.grid.size();
  if (raw.size() != nt * nx) throw ShapeError("space-time sample count does not match its grid");
  std::vector<cplx> in(raw.begin(), raw.end());
  for (std::size_t l = 0; l < nt; ++l) {
    const double w = taper_weight(shape.taper, static_cast<double>(l) / static_cast<double>(nt));
    for (std::size_t j = 0; j < nx; ++j) in[l * nx + j] *= w;
  }
  std::vector<cplx> out(nt * nx);
  fft::forward_2d(nt, nx, in, out);

  const std::vector<double>& w = xsb_weights(WeightKey{nt, nx, shape.window(), s, b, beta}, shape.grid);
  double acc = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) acc += w[i] * std::norm(out[i]);
  return std::sqrt(acc);
}

} // namespace

double xsb_norm(const SpaceTimeField& stf, double s, double b, double beta) {
  return xsb_of_samples(stf, stf.samples, s, b, beta);
}

double trilinear_ratio(const SpaceTimeField& u, const SpaceTimeField& v, const SpaceTimeField& w,
                       double s, double b_prime, double beta) {
  check_same_shape(u, v);
  check_same_shape(u, w);
  const double du = xsb_norm(u, s, 0.375, beta);
  const double dv = xsb_norm(v, s, 0.375, beta);
  const double dw = xsb_norm(w, s, 0.375, beta);
  const double denom = du * dv * dw;
  if (!(denom > 0.0) || !std::isfinite(denom))
    throw DegenerateInput("trilinear ratio has a vanishing factor norm");

  std::vector<cplx> prod(u.samples.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = u.samples[i] * v.samples[i] * w.samples[i];
  return xsb_of_samples(u, prod, s, b_prime - 1.0, beta) / denom;
}

DimensionEstimate box_dimension(std::span<const double> xs, std::span<const double> ys,
                                ScaleRange range) {
  const std::size_t n = xs.size();
  if (ys.size() != n) throw ShapeError("graph abscissae and ordinates differ in length");
  if (n < 8) throw FitError("box counting needs at least eight samples");
  if (range.coarse < 0 || range.fine < range.coarse)
    throw FitError("scale range must satisfy 0 <= coarse <= fine");
  for (std::size_t i = 1; i < n; ++i)
    if (!(xs[i] > xs[i - 1])) throw FitError("graph abscissae must be strictly increasing");

  // Unit square: columns of width 1/m cover [x0, x_last + dx) and the y range
  // maps to [0, 1].
  const double dx = (xs[n - 1] - xs[0]) / static_cast<double>(n - 1);
  const double span = xs[n - 1] - xs[0] + dx;
  const auto [ylo, yhi] = std::minmax_element(ys.begin(), ys.end());
  const double yrange = *yhi - *ylo;
  std::vector<double> xi(n), eta(n);
  for (std::size_t i = 0; i < n; ++i) {
    xi[i] = (xs[i] - xs[0]) / span;
    eta[i] = yrange > 0.0 ? (ys[i] - *ylo) / yrange : 0.0;
  }

  DimensionEstimate est;
  std::vector<double> lx, ly;
  for (int j = range.coarse; j <= range.fine; ++j) {
    const std::size_t m = std::size_t{1} << j;
    if (n / m < 4) continue; // discretization floor
    const double eps = std::ldexp(1.0, -j);
    std::vector<double> lo(m, 2.0), hi(m, -1.0);
    std::vector<std::size_t> first(m, n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = std::min(m - 1, static_cast<std::size_t>(xi[i] * static_cast<double>(m) + 1e-9));
      lo[c] = std::min(lo[c], eta[i]);
      hi[c] = std::max(hi[c], eta[i]);
      if (first[c] == n) first[c] = i;
    }
    double count = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
      if (hi[c] < lo[c]) continue;
      double a = lo[c], b = hi[c];
      // Join the column to the first sample of its right neighbour so the
      // sampled graph is covered as a connected curve.
      if (c + 1 < m && first[c + 1] < n) {
        a = std::min(a, eta[first[c + 1]]);
        b = std::max(b, eta[first[c + 1]]);
      }
      count += std::max(1.0, std::ceil((b - a) / eps - 1e-9));
    }
    est.scales.push_back(eps);
    est.counts.push_back(count);
    lx.push_back(std::log(1.0 / eps));
    ly.push_back(std::log(count));
  }
  if (lx.size() < 4)
    throw FitError("box counting needs at least four usable scales, got " + std::to_string(lx.size()));

  const double k = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  est.slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (my + est.slope * (lx[i] - mx));
    rss += r * r;
  }
  est.std_error = std::sqrt(rss / (k - 2.0) / sxx);
  est.out_of_range = est.slope < 1.0 || est.slope > 2.0;
  return est;
}

Increment max_cell_increment(std::span<const cplx> samples) {
  Increment best;
  const std::size_t n = samples.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double d = std::abs(samples[(j + 1) % n] - samples[j]);
    if (d > best.value) best = Increment{d, j};
  }
  return best;
}

std::vector<std::size_t> jump_cells(std::span<const cplx> samples, double threshold) {
  std::vector<std::size_t> out;
  const std::size_t n = samples.size();
  for (std::size_t j = 0; j < n; ++j)
    if (std::abs(samples[(j + 1) % n] - samples[j]) > threshold) out.push_back(j);
  return out;
}

} // namespace tlle
