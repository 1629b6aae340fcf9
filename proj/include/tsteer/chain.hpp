#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsteer {

// Transverse-field XY ring coupled to a central qubit. The qubit state shifts
// the field lambda -> lambda +- g, and the decoherence factor is the overlap
// F(t) = <psi| e^{+i H_+ t} e^{-i H_- t} |psi> with |psi> the ground state of
// the unshifted chain. Everything here works in the free-fermion picture, so
// chains of thousands of sites are cheap.
struct ChainParams {
  int L = 1501;
  double gamma = 1.0;
  double lambda = 1.0;
  double g = 0.01;

  int modes() const { return (L - 1) / 2; }

  bool operator==(const ChainParams&) const = default;

  void validate() const {
    if (L < 3 || L % 2 == 0)
      throw std::invalid_argument("chain size L must be odd and >= 3, got " + std::to_string(L));
    if (!(gamma >= 0.0 && gamma <= 1.0))
      throw std::invalid_argument("anisotropy gamma must lie in [0, 1], got " + std::to_string(gamma));
    if (!std::isfinite(lambda))
      throw std::invalid_argument("field lambda must be finite");
    if (!(g >= 0.0) || !std::isfinite(g))
      throw std::invalid_argument("coupling g must be finite and >= 0, got " + std::to_string(g));
  }
};

// Quasiparticle branch: omega(x) <= 0 is the negative single-particle band,
// theta(x) the Bogoliubov angle on the branch [-pi, 0].
inline double mode_frequency(double x, double gamma, double lambda) {
  const double a = lambda - std::cos(x);
  const double b = gamma * std::sin(x);
  return -2.0 * std::sqrt(a * a + b * b);
}

inline double mode_angle(double x, double gamma, double lambda) {
  // atan2(-0, +0) = -0 and atan2(-0, neg) = -pi resolve the gamma*sin(x) = 0
  // degeneracies deterministically; -gamma*sin(x) keeps the signed zero.
  return std::atan2(-gamma * std::sin(x), std::cos(x) - lambda);
}

// Parity sectors of the fermionized ring. The physical ground state lives in
// whichever sector has the lower constrained minimum energy; for odd L the
// even sector uses antiperiodic momenta and the odd sector periodic ones.
enum class Sector { even, odd };

inline double mode_momentum(const ChainParams& p, Sector s, int k) {
  if (k < 1 || k > p.modes())
    throw std::invalid_argument("mode index k out of range 1.." + std::to_string(p.modes()));
  const double pi = std::acos(-1.0);
  return s == Sector::even ? (2.0 * k - 1.0) * pi / p.L : 2.0 * pi * k / p.L;
}

inline double sector_energy(const ChainParams& p, Sector s) {
  double sum = 0.0;
  for (int k = 1; k <= p.modes(); ++k)
    sum += mode_frequency(mode_momentum(p, s, k), p.gamma, p.lambda);
  // Unpaired momenta: x = pi (even sector, kept empty) contributes
  // -(lambda + 1); x = 0 (odd sector, kept occupied) contributes lambda - 1.
  return s == Sector::even ? sum - (p.lambda + 1.0) : sum + (p.lambda - 1.0);
}

inline Sector ground_sector(const ChainParams& p) {
  return sector_energy(p, Sector::even) <= sector_energy(p, Sector::odd) ? Sector::even
                                                                         : Sector::odd;
}

inline double ground_energy(const ChainParams& p) {
  return std::min(sector_energy(p, Sector::even), sector_energy(p, Sector::odd));
}

// Per-mode data entering the factored form of F(t).
struct ModeSpectrum {
  int k = 0;
  double x = 0.0;            // momentum
  double omega = 0.0;        // unshifted branch, <= 0
  double omega_plus = 0.0;   // lambda + g branch
  double omega_minus = 0.0;  // lambda - g branch
  double theta = 0.0;
  double theta_plus = 0.0;
  double theta_minus = 0.0;
};

inline ModeSpectrum mode_spectrum(const ChainParams& p, Sector s, int k) {
  ModeSpectrum m;
  m.k = k;
  m.x = mode_momentum(p, s, k);
  m.omega = mode_frequency(m.x, p.gamma, p.lambda);
  m.omega_plus = mode_frequency(m.x, p.gamma, p.lambda + p.g);
  m.omega_minus = mode_frequency(m.x, p.gamma, p.lambda - p.g);
  m.theta = mode_angle(m.x, p.gamma, p.lambda);
  m.theta_plus = mode_angle(m.x, p.gamma, p.lambda + p.g);
  m.theta_minus = mode_angle(m.x, p.gamma, p.lambda - p.g);
  return m;
}

inline ModeSpectrum mode_spectrum(const ChainParams& p, int k) {
  return mode_spectrum(p, ground_sector(p), k);
}

inline std::vector<ModeSpectrum> full_spectrum(const ChainParams& p, Sector s) {
  std::vector<ModeSpectrum> out;
  out.reserve(p.modes());
  for (int k = 1; k <= p.modes(); ++k) out.push_back(mode_spectrum(p, s, k));
  return out;
}

namespace detail {

inline std::complex<double> factor_from_spectrum(const std::vector<ModeSpectrum>& spec,
                                                 double phase_sign, double g, double t) {
  // Phase of the unpaired momentum: e^{-2igt} in the even sector (x = pi level
  // empty under both shifts), e^{+2igt} in the odd sector (x = 0 occupied).
  std::complex<double> f = std::polar(1.0, 2.0 * g * t * phase_sign);
  for (const ModeSpectrum& m : spec) {
    const double pp = m.omega_plus * t;
    const double mm = m.omega_minus * t;
    const double ap = m.theta - m.theta_plus;
    const double am = m.theta - m.theta_minus;
    const double cp = std::cos(pp), sp = std::sin(pp);
    const double cm = std::cos(mm), sm = std::sin(mm);
    const double re = cp * cm + sp * sm * std::cos(ap - am);
    const double im = std::cos(ap) * sp * cm - std::cos(am) * cp * sm;
    f *= std::complex<double>(re, im);
  }
  return f;
}

inline double norm_term(const ModeSpectrum& m, double t) {
  const double pp = m.omega_plus * t;
  const double mm = m.omega_minus * t;
  const double ap = m.theta - m.theta_plus;
  const double am = m.theta - m.theta_minus;
  const double u = std::cos(mm) * std::sin(pp) * std::sin(ap) -
                   std::sin(mm) * std::cos(pp) * std::sin(am);
  const double v = std::sin(pp) * std::sin(mm) * std::sin(ap - am);
  return std::sqrt(std::max(0.0, 1.0 - u * u - v * v));
}

inline void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::invalid_argument("time t must be finite and >= 0");
}

}  // namespace detail

inline std::complex<double> decoherence_factor(const ChainParams& p, double t) {
  p.validate();
  detail::check_time(t);
  const Sector s = ground_sector(p);
  const double sign = s == Sector::even ? -1.0 : 1.0;
  return detail::factor_from_spectrum(full_spectrum(p, s), sign, p.g, t);
}

struct DecoherenceSample {
  double t = 0.0;
  std::complex<double> f;
  double re_f = 0.0;
  double abs_f = 0.0;
};

inline std::vector<DecoherenceSample> decoherence_trace(const ChainParams& p,
                                                        const std::vector<double>& times) {
  p.validate();
  if (times.empty()) throw std::invalid_argument("time grid must be nonempty");
  for (std::size_t i = 0; i < times.size(); ++i) {
    detail::check_time(times[i]);
    if (i > 0 && !(times[i] > times[i - 1]))
      throw std::invalid_argument("time grid must be strictly increasing");
  }
  const Sector s = ground_sector(p);
  const double sign = s == Sector::even ? -1.0 : 1.0;
  const std::vector<ModeSpectrum> spec = full_spectrum(p, s);
  std::vector<DecoherenceSample> out;
  out.reserve(times.size());
  for (double t : times) {
    DecoherenceSample d;
    d.t = t;
    d.f = detail::factor_from_spectrum(spec, sign, p.g, t);
    d.re_f = d.f.real();
    d.abs_f = std::min(1.0, std::abs(d.f));
    out.push_back(d);
  }
  return out;
}

// |F(t)| as a product of per-mode norms, bypassing the accumulated phase.
inline double factor_norm_direct(const ChainParams& p, double t) {
  p.validate();
  detail::check_time(t);
  double prod = 1.0;
  for (const ModeSpectrum& m : full_spectrum(p, ground_sector(p)))
    prod *= detail::norm_term(m, t);
  return prod;
}

// Truncation of the norm product to the k_c lowest modes; upper bounds |F|.
inline double cutoff_bound(const ChainParams& p, int k_c, double t) {
  p.validate();
  detail::check_time(t);
  if (k_c < 1 || k_c > p.modes())
    throw std::invalid_argument("cutoff k_c out of range 1.." + std::to_string(p.modes()));
  const Sector s = ground_sector(p);
  double prod = 1.0;
  for (int k = 1; k <= k_c; ++k) prod *= detail::norm_term(mode_spectrum(p, s, k), t);
  return prod;
}

struct CutoffApprox {
  int k_c = 0;
  double e_kc = 0.0;  // sum of squared small momenta entering the rate
  double r_c = 0.0;   // Gaussian decay rate: cutoff bound ~ exp(-r_c t^2)
};

inline CutoffApprox gaussian_rate(const ChainParams& p, int k_c) {
  p.validate();
  if (k_c < 1 || k_c > p.modes())
    throw std::invalid_argument("cutoff k_c out of range 1.." + std::to_string(p.modes()));
  if (p.lambda == 1.0)
    throw std::domain_error("gaussian_rate is singular at lambda = 1");
  CutoffApprox c;
  c.k_c = k_c;
  const double pi = std::acos(-1.0);
  const double kc = k_c;
  c.e_kc = 2.0 * pi * pi * kc * (kc + 1.0) * (2.0 * kc + 1.0) / (6.0 * p.L * p.L);
  const double d = 1.0 - p.lambda;
  c.r_c = 16.0 * c.e_kc * p.gamma * p.gamma * p.g * p.g / (d * d);
  return c;
}

// Small-momentum expansion of ln(cutoff bound). Oscillatory sinc form; the
// pure Gaussian -r_c t^2 is its short-time envelope.
inline double log_bound_approx(const ChainParams& p, int k_c, double t) {
  p.validate();
  detail::check_time(t);
  if (k_c < 1 || k_c > p.modes())
    throw std::invalid_argument("cutoff k_c out of range 1.." + std::to_string(p.modes()));
  if (p.lambda == 1.0)
    throw std::domain_error("log_bound_approx is singular at lambda = 1");
  const double e_kc = [&] {
    const double pi = std::acos(-1.0);
    const double kc = k_c;
    return 2.0 * pi * pi * kc * (kc + 1.0) * (2.0 * kc + 1.0) / (6.0 * p.L * p.L);
  }();
  const double qp = std::fabs(1.0 - (p.lambda + p.g));
  const double qm = std::fabs(1.0 - (p.lambda - p.g));
  auto sinc2 = [&](double q) { return q == 0.0 ? 2.0 * t : std::sin(2.0 * t * q) / q; };
  const double scp = sinc2(qp);
  const double scm = sinc2(qm);
  const double d = 1.0 - p.lambda;
  const double cross = std::cos(2.0 * t * qm) * scp + std::cos(2.0 * t * qp) * scm;
  const double gg = p.gamma * p.gamma * p.g * p.g;
  return -e_kc * gg * (4.0 * scp * scp * scm * scm + cross * cross / (d * d));
}

}  // namespace tsteer
