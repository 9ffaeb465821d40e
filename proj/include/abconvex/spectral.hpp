#pragma once

// Discrete Fourier machinery on uniform 2*pi-periodic grids t_j = 2*pi*j/M.
// Grid sizes are powers of two; transforms go through FFTW.

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include <fftw3.h>

#include "abconvex/errors.hpp"

namespace abconvex::spectral {

using Complex = std::complex<double>;

constexpr bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

// Signed wavenumber of DFT index j on an M-point grid, in [-M/2, M/2).
constexpr long wavenumber(std::size_t j, std::size_t m) noexcept {
  const auto k = static_cast<long>(j);
  return j < m / 2 ? k : k - static_cast<long>(m);
}

namespace detail {

// Unnormalized complex DFT through FFTW. Plans are made once per (length,
// direction) under a lock, since the planner is not reentrant; executing a
// plan on new arrays is.
inline void fft_in_place(std::vector<Complex>& a, bool inverse) {
  const std::size_t n = a.size();
  if (!is_power_of_two(n)) {
    throw InvalidInput("FFT length must be a power of two, got " + std::to_string(n));
  }
  static std::mutex planner;
  static std::map<std::pair<std::size_t, bool>, fftw_plan> plans;
  fftw_plan plan = nullptr;
  {
    const std::lock_guard lock(planner);
    auto& slot = plans[{n, inverse}];
    if (!slot) {
      std::vector<Complex> scratch(n);
      auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
      slot = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    plan = slot;
  }
  auto* data = reinterpret_cast<fftw_complex*>(a.data());
  fftw_execute_dft(plan, data, data);
}

}  // namespace detail

// Normalized coefficients c_j = (1/M) sum_n x_n exp(-i k_j t_n).
inline std::vector<Complex> forward(std::span<const double> x) {
  std::vector<Complex> a(x.begin(), x.end());
  detail::fft_in_place(a, false);
  const double scale = 1.0 / static_cast<double>(a.size());
  for (auto& c : a) c *= scale;
  return a;
}

// Real part of sum_j c_j exp(i k_j t_n).
inline std::vector<double> inverse_real(std::vector<Complex> coeffs) {
  detail::fft_in_place(coeffs, true);
  std::vector<double> out(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = coeffs[i].real();
  return out;
}

// Applies a real, even Fourier multiplier m(k) to periodic samples.
template <typename Multiplier>
std::vector<double> apply_multiplier(std::span<const double> x, Multiplier&& m) {
  auto c = forward(x);
  const std::size_t n = c.size();
  for (std::size_t j = 0; j < n; ++j) c[j] *= m(wavenumber(j, n));
  return inverse_real(std::move(c));
}

// d/dt of the trigonometric interpolant; the Nyquist mode has no real
// derivative on the grid and is dropped.
inline std::vector<double> first_derivative(std::span<const double> x) {
  auto c = forward(x);
  const std::size_t n = c.size();
  for (std::size_t j = 0; j < n; ++j) {
    const long k = wavenumber(j, n);
    c[j] *= (2 * std::abs(k) == static_cast<long>(n)) ? Complex{0.0, 0.0}
                                                        : Complex{0.0, static_cast<double>(k)};
  }
  return inverse_real(std::move(c));
}

inline std::vector<double> second_derivative(std::span<const double> x) {
  return apply_multiplier(x, [](long k) { return -static_cast<double>(k) * static_cast<double>(k); });
}

// Trigonometric interpolation onto a grid of m_out points (zero padding or
// truncation). The Nyquist coefficient is split/merged symmetrically.
inline std::vector<double> resample(std::span<const double> x, std::size_t m_out) {
  const std::size_t m_in = x.size();
  if (!is_power_of_two(m_out)) {
    throw InvalidInput("resample target must be a power of two, got " + std::to_string(m_out));
  }
  if (m_out == m_in) return {x.begin(), x.end()};
  const auto c = forward(x);
  std::vector<Complex> d(m_out, Complex{0.0, 0.0});
  const long half_in = static_cast<long>(m_in / 2);
  const long half_out = static_cast<long>(m_out / 2);
  auto slot = [m_out](long k) { return static_cast<std::size_t>(k < 0 ? k + static_cast<long>(m_out) : k); };
  for (std::size_t j = 0; j < m_in; ++j) {
    const long k = wavenumber(j, m_in);
    if (k == -half_in) {
      // Nyquist of the input: real cosine mode, amplitude c.
      if (half_in < half_out) {
        d[slot(half_in)] += 0.5 * c[j];
        d[slot(-half_in)] += 0.5 * c[j];
      }
      continue;
    }
    if (std::abs(k) < half_out) {
      d[slot(k)] += c[j];
    } else if (std::abs(k) == half_out) {
      // Becomes the output Nyquist cosine: fold both signs into one slot.
      d[slot(-half_out)] += c[j];
    }
  }
  auto out = inverse_real(std::move(d));
  return out;
}

// Fejer (Cesaro) smoothing: multiplier max(0, 1 - |k|/(M/2)). Its kernel is
// nonnegative, so the smoothed samples stay inside [min x, max x].
inline std::vector<double> fejer_smooth(std::span<const double> x) {
  const double half = static_cast<double>(x.size() / 2);
  return apply_multiplier(x, [half](long k) { return std::max(0.0, 1.0 - std::abs(static_cast<double>(k)) / half); });
}

// First Fourier harmonic integrals (int x cos t dt, int x sin t dt) by the
// rectangle rule.
inline std::pair<double, double> first_harmonic_integrals(std::span<const double> x) {
  const std::size_t n = x.size();
  const double dt = 2.0 * std::numbers::pi / static_cast<double>(n);
  double sc = 0.0, ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = dt * static_cast<double>(i);
    sc += x[i] * std::cos(t);
    ss += x[i] * std::sin(t);
  }
  return {sc * dt, ss * dt};
}

}  // namespace abconvex::spectral
