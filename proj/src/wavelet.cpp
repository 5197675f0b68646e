#include <cmath>

#include <Eigen/Dense>

#include "ispear/dsp.hpp"

namespace ispear::dsp {

namespace {

// Newton refinement of a scaling filter onto the defining equations:
// shift-orthonormality sum_k h[k] h[k+2m] = delta_m and vanishing moments
// sum_k k^m (-1)^k h[L-1-k] = 0, m = 0..N-1. That is a square 2N x 2N
// system; literature digits are only a starting point and two iterations
// land on machine precision. (sum h = sqrt(2) is implied: the even-lag
// autocorrelation constraints force |H(0)|^2 + |H(pi)|^2 = 2 and the
// zeroth moment kills H(pi).)
std::vector<double> polish(std::vector<double> h) {
  const int len = static_cast<int>(h.size());
  const int order = len / 2;
  Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(h.data(), len);
  for (int iter = 0; iter < 8; ++iter) {
    Eigen::VectorXd residual(len);
    Eigen::MatrixXd jacobian = Eigen::MatrixXd::Zero(len, len);
    for (int m = 0; m < order; ++m) {
      double r = m == 0 ? -1.0 : 0.0;
      for (int k = 0; k + 2 * m < len; ++k) {
        r += v(k) * v(k + 2 * m);
        jacobian(m, k) += v(k + 2 * m);
        jacobian(m, k + 2 * m) += v(k);
      }
      residual(m) = r;
    }
    for (int m = 0; m < order; ++m) {
      double r = 0.0;
      for (int k = 0; k < len; ++k) {
        const double c = std::pow(static_cast<double>(k), m) * (k % 2 == 0 ? 1.0 : -1.0);
        r += c * v(len - 1 - k);
        jacobian(order + m, len - 1 - k) += c;
      }
      residual(order + m) = r;
    }
    if (residual.lpNorm<Eigen::Infinity>() < 1e-15) break;
    v -= jacobian.fullPivLu().solve(residual);
  }
  return std::vector<double>(v.data(), v.data() + len);
}

// Minimal-phase scaling filters, natural order, normalized to sum sqrt(2).
// Orders 1 and 2 have short closed forms; orders 3 and 4 start from the
// standard spectral-factorization digits and are polished to full double
// precision at first use.
std::vector<double> scaling_filter(int order) {
  const double rt2 = std::sqrt(2.0);
  switch (order) {
    case 1:
      return {1.0 / rt2, 1.0 / rt2};
    case 2: {
      const double rt3 = std::sqrt(3.0);
      const double c = 4.0 * rt2;
      return {(1.0 + rt3) / c, (3.0 + rt3) / c, (3.0 - rt3) / c, (1.0 - rt3) / c};
    }
    case 3: {
      static const std::vector<double> db3 = polish(
          {0.3326705529509569, 0.8068915093133388, 0.4598775021193313,
           -0.13501102001039084, -0.08544127388224149, 0.035226291882100656});
      return db3;
    }
    case 4: {
      static const std::vector<double> db4 = polish(
          {0.23037781330885523, 0.7148465705525415, 0.6308807679295904,
           -0.02798376941698385, -0.18703481171888114, 0.030841381835986965,
           0.032883011666982945, -0.010597401784997278});
      return db4;
    }
    default:
      throw Error(ErrorCode::UnsupportedOrder,
                  "Daubechies order must be in [1, 4], got " + std::to_string(order));
  }
}

}  // namespace

FilterPair daubechies_filters(int order) {
  FilterPair pair;
  pair.order = order;
  pair.lowpass = scaling_filter(order);
  const std::size_t len = pair.lowpass.size();
  pair.highpass.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    double v = pair.lowpass[len - 1 - k];
    pair.highpass[k] = (k % 2 == 0) ? v : -v;
  }
  return pair;
}

DwtLevel1 dwt_level1(const std::vector<double>& signal, int order) {
  if (signal.empty()) throw Error(ErrorCode::EmptySignal, "dwt of empty signal");
  const FilterPair f = daubechies_filters(order);

  std::vector<double> x = signal;
  if (x.size() % 2 != 0) x.push_back(0.0);  // padding rule: one trailing zero

  const std::size_t n = x.size();
  const std::size_t half = n / 2;
  const std::size_t len = f.lowpass.size();

  DwtLevel1 out;
  out.approx.resize(half);
  out.detail.resize(half);
  for (std::size_t c = 0; c < half; ++c) {
    double a = 0.0, d = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
      double v = x[(2 * c + k) % n];
      a += f.lowpass[k] * v;
      d += f.highpass[k] * v;
    }
    out.approx[c] = a;
    out.detail[c] = d;
  }
  return out;
}

std::vector<double> idwt_level1(const DwtLevel1& coeffs, int order) {
  if (coeffs.approx.empty() || coeffs.approx.size() != coeffs.detail.size())
    throw Error(ErrorCode::EmptySignal, "idwt needs matching non-empty coefficient bands");
  const FilterPair f = daubechies_filters(order);

  const std::size_t half = coeffs.approx.size();
  const std::size_t n = 2 * half;
  const std::size_t len = f.lowpass.size();

  // Adjoint of the orthogonal analysis operator, which is its inverse.
  std::vector<double> x(n, 0.0);
  for (std::size_t c = 0; c < half; ++c) {
    for (std::size_t k = 0; k < len; ++k) {
      x[(2 * c + k) % n] += f.lowpass[k] * coeffs.approx[c] + f.highpass[k] * coeffs.detail[c];
    }
  }
  return x;
}

double approx_mean_feature(const corpus::AudioClip& clip, const Endpoints& ep, int order) {
  std::vector<double> segment(clip.samples.begin() + static_cast<std::ptrdiff_t>(ep.start),
                              clip.samples.begin() + static_cast<std::ptrdiff_t>(ep.end));
  DwtLevel1 coeffs = dwt_level1(segment, order);
  double sum = 0.0;
  for (double v : coeffs.approx) sum += v;
  return sum / static_cast<double>(coeffs.approx.size());
}

}  // namespace ispear::dsp
