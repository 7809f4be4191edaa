#include "slag/weierstrass.hpp"

#include <cmath>

namespace slag {

namespace {

// divisor power sums for the Eisenstein q-expansions
long long sigma_pow(int n, int k) {
  long long s = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) {
      long long t = 1;
      for (int e = 0; e < k; ++e) t *= d;
      s += t;
    }
  return s;
}

}  // namespace

WeierstrassP::WeierstrassP(cd tau, int laurent_terms) : tau_(tau) {
  if (tau.imag() <= 0) throw DomainError("weierstrass: Im tau must be positive");
  cd q = std::exp(cd(0, 2 * kPi) * tau);
  cd e4 = 1.0, e6 = 1.0;
  cd qn = 1.0;
  for (int n = 1; n <= 40; ++n) {
    qn *= q;
    e4 += 240.0 * double(sigma_pow(n, 3)) * qn;
    e6 -= 504.0 * double(sigma_pow(n, 5)) * qn;
  }
  double pi6 = std::pow(kPi, 6);
  g2_ = 4.0 * std::pow(kPi, 4) / 3.0 * e4;
  g3_ = 8.0 * pi6 / 27.0 * e6;

  // Laurent coefficients: ℘ = z^{-2} + Σ_{k≥2} c_k z^{2k-2}
  coeff_.assign(laurent_terms + 2, cd(0, 0));
  coeff_[2] = g2_ / 20.0;
  coeff_[3] = g3_ / 28.0;
  for (int k = 4; k < (int)coeff_.size(); ++k) {
    cd s = 0;
    for (int m = 2; m <= k - 2; ++m) s += coeff_[m] * coeff_[k - m];
    coeff_[k] = 3.0 / ((2.0 * k + 1.0) * (k - 3.0)) * s;
  }

  min_norm_ = std::min({std::abs(cd(1, 0)), std::abs(tau), std::abs(tau - 1.0),
                        std::abs(tau + 1.0)});
  inner_radius_ = 0.45 * min_norm_;
}

cd WeierstrassP::reduce(const cd& z) const {
  // coordinates in the (1, tau) basis, rounded to the nearest lattice point
  double det = tau_.imag();
  double a = (z.real() * tau_.imag() - z.imag() * tau_.real()) / det;
  double b = z.imag() / det;
  cd w = z - std::round(a) - std::round(b) * tau_;
  // a second pass catches corner cases of the skew cell
  for (int pass = 0; pass < 2; ++pass)
    for (cd l : {cd(1, 0), tau_, tau_ + 1.0, tau_ - 1.0})
      for (double s : {1.0, -1.0})
        if (std::abs(w - s * l) < std::abs(w)) w -= s * l;
  return w;
}

double WeierstrassP::lattice_distance(const cd& z) const { return std::abs(reduce(z)); }

WeierstrassP::Value WeierstrassP::series(const cd& z) const {
  cd z2 = z * z;
  cd p = 1.0 / z2, dp = -2.0 / (z2 * z);
  cd zpow = 1.0;  // z^{2k-2} built incrementally from k = 2
  for (int k = 2; k < (int)coeff_.size(); ++k) {
    zpow = (k == 2) ? z2 : zpow * z2;
    p += coeff_[k] * zpow;
    dp += (2.0 * k - 2.0) * coeff_[k] * zpow / z;
  }
  return {p, dp};
}

WeierstrassP::Value WeierstrassP::eval(const cd& z, double pole_tol) const {
  cd w = reduce(z);
  if (std::abs(w) < pole_tol)
    throw DomainError("weierstrass: evaluation too close to a lattice pole");
  if (std::abs(w) <= inner_radius_) return series(w);
  // one duplication step from w/2 (always inside the disk after reduction)
  Value h = series(w / 2.0);
  cd x = h.p, y = h.dp;
  cd B = 6.0 * x * x - g2_ / 2.0;
  cd p2 = -2.0 * x + (B * B) / (4.0 * y * y);
  cd dp2 = -y + 3.0 * x * B / y - B * B * B / (4.0 * y * y * y);
  return {p2, dp2};
}

cd theta1(cd v, cd tau) {
  cd s = 0;
  for (int n = 0; n < 24; ++n) {
    cd term = std::exp(cd(0, kPi) * tau * double((n + 0.5) * (n + 0.5))) *
              std::sin(double(2 * n + 1) * v);
    s += (n % 2 == 0 ? term : -term);
  }
  return 2.0 * s;
}

cd theta1_prime0(cd tau) {
  cd s = 0;
  for (int n = 0; n < 24; ++n) {
    cd term = std::exp(cd(0, kPi) * tau * double((n + 0.5) * (n + 0.5))) * double(2 * n + 1);
    s += (n % 2 == 0 ? term : -term);
  }
  return 2.0 * s;
}

double torus_green(cd z, cd tau) {
  // shift close to the origin for numerical range; G is exactly periodic
  double det = tau.imag();
  double a = (z.real() * tau.imag() - z.imag() * tau.real()) / det;
  double b = z.imag() / det;
  z -= std::round(a) + std::round(b) * tau;
  cd F = theta1(kPi * z, tau) / (kPi * theta1_prime0(tau));
  return std::log(std::abs(F)) - kPi * z.imag() * z.imag() / tau.imag();
}

}  // namespace slag
