#include "revival/tomography.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace revival {

namespace {

constexpr double kPoissonChunk = 500.0;
constexpr int kMleEvalBudget = 100000;

double next_uniform(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

long long poisson_inversion(std::mt19937_64& engine, double mu) {
  if (mu <= 0.0) return 0;
  const double u = next_uniform(engine);
  double p = std::exp(-mu);
  double cumulative = p;
  long long k = 0;
  const long long cap = static_cast<long long>(mu) + 1000;
  while (u > cumulative && k < cap) {
    ++k;
    p *= mu / static_cast<double>(k);
    cumulative += p;
  }
  return k;
}

long long poisson_draw(std::mt19937_64& engine, double mu) {
  long long total = 0;
  while (mu > kPoissonChunk) {
    total += poisson_inversion(engine, kPoissonChunk);
    mu -= kPoissonChunk;
  }
  return total + poisson_inversion(engine, mu);
}

const std::array<Mat4, 16>& setting_projectors() {
  static const std::array<Mat4, 16> table = [] {
    std::array<Mat4, 16> t;
    for (const MeasurementSetting& s : settings_16()) {
      t[static_cast<std::size_t>(s.id)] = s.projector();
    }
    return t;
  }();
  return table;
}

double setting_probability(const Mat4& rho, const MeasurementSetting& s) {
  const double p =
      (rho * setting_projectors()[static_cast<std::size_t>(s.id)]).trace().real();
  return std::max(p, 0.0);
}

// Lower-triangular G with G'G = m, via the Cholesky factorization of the
// index-reversed matrix.
Mat4 lower_factor(const Mat4& m) {
  Mat4 flipped;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      flipped(i, j) = m(3 - i, 3 - j);
    }
  }
  Eigen::LLT<Mat4> llt(flipped);
  if (llt.info() != Eigen::Success) {
    throw NumericError("Cholesky factorization failed in MLE initialization");
  }
  const Mat4 l = llt.matrixL();
  Mat4 upper;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      upper(i, j) = l(3 - i, 3 - j);
    }
  }
  return upper.adjoint();
}

// 16 real parameters of a lower-triangular G: 4 real diagonal entries then
// the 6 sub-diagonal complex entries in column-major order.
using Params = Eigen::Matrix<double, 16, 1>;

Params pack(const Mat4& g) {
  Params p;
  int k = 0;
  for (int i = 0; i < 4; ++i) p(k++) = g(i, i).real();
  for (int j = 0; j < 4; ++j) {
    for (int i = j + 1; i < 4; ++i) {
      p(k++) = g(i, j).real();
      p(k++) = g(i, j).imag();
    }
  }
  return p;
}

Mat4 unpack(const Params& p) {
  Mat4 g = Mat4::Zero();
  int k = 0;
  for (int i = 0; i < 4; ++i) g(i, i) = p(k++);
  for (int j = 0; j < 4; ++j) {
    for (int i = j + 1; i < 4; ++i) {
      const double re = p(k++);
      const double im = p(k++);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

struct Objective {
  std::array<double, 16> counts;
  double total_counts;
  int evals = 0;

  // F(W) = C ln(sum_s p_s) - sum_s c_s ln p_s with p_s = tr(W P_s) / tr(W):
  // the Poisson NLL with the exposure profiled out, up to a constant in the
  // counts.
  double value_w(const Mat4& w) {
    ++evals;
    const double t = w.trace().real();
    if (!(t > 0.0)) return std::numeric_limits<double>::infinity();
    double sum_p = 0.0;
    double log_term = 0.0;
    for (const MeasurementSetting& s : settings_16()) {
      const double p = std::max(
          (w * setting_projectors()[static_cast<std::size_t>(s.id)])
              .trace()
              .real(),
          0.0) / t;
      sum_p += p;
      if (counts[static_cast<std::size_t>(s.id)] > 0.0) {
        if (p <= 0.0) return std::numeric_limits<double>::infinity();
        log_term += counts[static_cast<std::size_t>(s.id)] * std::log(p);
      }
    }
    return total_counts * std::log(sum_p) - log_term;
  }

  // Hermitian gradient dF/dW.
  Mat4 gradient_w(const Mat4& w) const {
    const double t = w.trace().real();
    double sum_p = 0.0;
    std::array<double, 16> probs{};
    for (const MeasurementSetting& s : settings_16()) {
      probs[static_cast<std::size_t>(s.id)] =
          std::max((w * setting_projectors()[static_cast<std::size_t>(s.id)])
                       .trace()
                       .real(),
                   0.0) / t;
      sum_p += probs[static_cast<std::size_t>(s.id)];
    }
    Mat4 a = Mat4::Zero();
    for (const MeasurementSetting& s : settings_16()) {
      const auto id = static_cast<std::size_t>(s.id);
      const double weight =
          total_counts / sum_p - (counts[id] > 0.0 ? counts[id] / probs[id] : 0.0);
      a += weight * (setting_projectors()[id] - probs[id] * Mat4::Identity());
    }
    return a / t;
  }

  double value(const Mat4& g) { return value_w(g.adjoint() * g); }

  // Gradient with respect to the 16 real parameters of lower-triangular G.
  Params gradient(const Mat4& g) const {
    const Mat4 grad_matrix = 2.0 * (g * gradient_w(g.adjoint() * g));
    Params grad;
    int k = 0;
    for (int i = 0; i < 4; ++i) grad(k++) = grad_matrix(i, i).real();
    for (int j = 0; j < 4; ++j) {
      for (int i = j + 1; i < 4; ++i) {
        grad(k++) = grad_matrix(i, j).real();
        grad(k++) = grad_matrix(i, j).imag();
      }
    }
    return grad;
  }
};

std::array<double, 16> counts_by_id(const std::vector<CountRecord>& counts) {
  if (counts.size() != 16) {
    throw ProtocolError("expected 16 count records, got " +
                        std::to_string(counts.size()));
  }
  std::array<bool, 16> seen{};
  std::array<double, 16> by_id{};
  for (const CountRecord& r : counts) {
    if (r.setting_id < 0 || r.setting_id > 15) {
      throw ProtocolError("setting id out of range: " +
                          std::to_string(r.setting_id));
    }
    if (seen[static_cast<std::size_t>(r.setting_id)]) {
      throw ProtocolError("duplicate setting id " + std::to_string(r.setting_id));
    }
    if (r.count < 0) {
      throw ProtocolError("negative count for setting " +
                          std::to_string(r.setting_id));
    }
    seen[static_cast<std::size_t>(r.setting_id)] = true;
    by_id[static_cast<std::size_t>(r.setting_id)] = static_cast<double>(r.count);
  }
  return by_id;
}

}  // namespace

char analyzer_label(Analyzer a) {
  switch (a) {
    case Analyzer::H: return 'H';
    case Analyzer::V: return 'V';
    case Analyzer::D: return 'D';
    case Analyzer::R: return 'R';
  }
  return '?';
}

Analyzer analyzer_from_label(char label) {
  switch (label) {
    case 'H': return Analyzer::H;
    case 'V': return Analyzer::V;
    case 'D': return Analyzer::D;
    case 'R': return Analyzer::R;
    default:
      throw ProtocolError(std::string("unknown analyzer label '") + label + "'");
  }
}

Eigen::Vector2cd analyzer_ket(Analyzer a) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  switch (a) {
    case Analyzer::H: return {1.0, 0.0};
    case Analyzer::V: return {0.0, 1.0};
    case Analyzer::D: return {inv_sqrt2, inv_sqrt2};
    case Analyzer::R: return {inv_sqrt2, Complex(0.0, inv_sqrt2)};
  }
  return {1.0, 0.0};
}

Mat4 MeasurementSetting::projector() const {
  const Eigen::Vector2cd ka = analyzer_ket(analyzer_a);
  const Eigen::Vector2cd kb = analyzer_ket(analyzer_b);
  const Mat2 pa = ka * ka.adjoint();
  const Mat2 pb = kb * kb.adjoint();
  return tensor(pa, pb);
}

const std::array<MeasurementSetting, 16>& settings_16() {
  static const std::array<MeasurementSetting, 16> table = [] {
    std::array<MeasurementSetting, 16> t{};
    const std::array<Analyzer, 4> order = {Analyzer::H, Analyzer::V, Analyzer::D,
                                           Analyzer::R};
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        const int id = 4 * a + b;
        t[static_cast<std::size_t>(id)] = {id, order[static_cast<std::size_t>(a)],
                                           order[static_cast<std::size_t>(b)]};
      }
    }
    return t;
  }();
  return table;
}

std::vector<CountRecord> simulate_counts(const DensityMatrix4& rho,
                                         long long n_per_setting,
                                         std::uint64_t seed, bool noiseless) {
  if (n_per_setting < 1) {
    throw ConfigError("n_per_setting must be at least 1");
  }
  std::mt19937_64 engine(seed);
  std::vector<CountRecord> records;
  records.reserve(16);
  for (const MeasurementSetting& s : settings_16()) {
    const double mu =
        static_cast<double>(n_per_setting) * setting_probability(rho.matrix(), s);
    const long long count =
        noiseless ? std::llround(mu) : poisson_draw(engine, mu);
    records.push_back({s.id, count});
  }
  return records;
}

Mat4 linear_reconstruct(const std::vector<CountRecord>& counts) {
  const std::array<double, 16> by_id = counts_by_id(counts);
  double total = 0.0;
  for (double c : by_id) total += c;
  if (total <= 0.0) {
    throw ProtocolError("total coincidence count is zero");
  }

  // tr(P_s M) = c_s as a 16x16 linear system in the entries of M.
  Eigen::MatrixXcd system(16, 16);
  Eigen::VectorXcd rhs(16);
  for (const MeasurementSetting& s : settings_16()) {
    const Mat4& p = setting_projectors()[static_cast<std::size_t>(s.id)];
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        system(s.id, 4 * i + j) = p(j, i);
      }
    }
    rhs(s.id) = by_id[static_cast<std::size_t>(s.id)];
  }
  const Eigen::VectorXcd solution = system.colPivHouseholderQr().solve(rhs);

  Mat4 m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      m(i, j) = solution(4 * i + j);
    }
  }
  m = 0.5 * (m + m.adjoint().eval());
  const double trace = m.trace().real();
  if (std::abs(trace) < 1e-12) {
    throw NumericError("linear reconstruction produced a traceless matrix");
  }
  return m / trace;
}

DensityMatrix4 psd_projected(const Mat4& m) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (m + m.adjoint().eval()));
  if (es.info() != Eigen::Success) {
    throw NumericError("eigendecomposition failed in PSD projection");
  }
  Eigen::Vector4d clamped = es.eigenvalues().cwiseMax(0.0);
  const double total = clamped.sum();
  if (total <= 0.0) {
    throw NumericError("PSD projection annihilated the matrix");
  }
  clamped /= total;
  return DensityMatrix4(es.eigenvectors() * clamped.asDiagonal() *
                        es.eigenvectors().adjoint());
}

double poisson_nll(const std::vector<CountRecord>& counts,
                   const DensityMatrix4& rho) {
  const std::array<double, 16> by_id = counts_by_id(counts);
  double total = 0.0;
  for (double c : by_id) total += c;
  double sum_p = 0.0;
  std::array<double, 16> probs{};
  for (const MeasurementSetting& s : settings_16()) {
    probs[static_cast<std::size_t>(s.id)] = setting_probability(rho.matrix(), s);
    sum_p += probs[static_cast<std::size_t>(s.id)];
  }
  const double exposure = total / sum_p;
  double nll = 0.0;
  for (int id = 0; id < 16; ++id) {
    const double mu = exposure * probs[static_cast<std::size_t>(id)];
    nll += mu;
    if (by_id[static_cast<std::size_t>(id)] > 0.0) {
      if (mu <= 0.0) return std::numeric_limits<double>::infinity();
      nll -= by_id[static_cast<std::size_t>(id)] * std::log(mu);
    }
  }
  return nll;
}

DensityMatrix4 mle_reconstruct(const std::vector<CountRecord>& counts) {
  Objective objective{counts_by_id(counts), 0.0};
  for (double c : objective.counts) objective.total_counts += c;
  if (objective.total_counts <= 0.0) {
    throw ProtocolError("total coincidence count is zero");
  }
  const double f_scale = std::max(1.0, objective.total_counts);

  // Start at the PSD-projected linear estimate, nudged into the interior so
  // the log terms are well defined.
  const Mat4 linear = linear_reconstruct(counts);
  Mat4 w = psd_projected(linear).matrix();
  w = 0.999999 * w + 1e-6 * 0.25 * Mat4::Identity();

  // Phase 1: monotone multiplicative descent W <- (I - g A) W (I - g A) with
  // A the Hermitian gradient of the profiled NLL in W. The update keeps W in
  // the PSD cone and, unlike an additive step, can drive eigenvalues to zero
  // when the optimum sits on the boundary (rank-deficient states).
  double f = objective.value_w(w);
  double gamma = 0.0;
  int stall = 0;
  bool moving = true;
  while (objective.evals < kMleEvalBudget - 400 && moving) {
    const Mat4 a = objective.gradient_w(w);
    const double descent = (a * w * a).trace().real();
    if (descent <= 1e-16 * f_scale) break;
    if (gamma <= 0.0) gamma = 0.25 / std::sqrt(descent);

    bool accepted = false;
    for (int halvings = 0;
         halvings < 50 && objective.evals < kMleEvalBudget - 200; ++halvings) {
      const Mat4 shift = Mat4::Identity() - gamma * a;
      Mat4 trial = shift * w * shift;
      trial /= trial.trace().real();
      const double f_trial = objective.value_w(trial);
      if (f_trial <= f - 1e-4 * gamma * 2.0 * descent) {
        if (f - f_trial < 1e-13 * std::max(1.0, std::abs(f))) {
          moving = ++stall < 5;
        } else {
          stall = 0;
        }
        w = trial;
        f = f_trial;
        gamma *= 1.25;
        accepted = true;
        break;
      }
      gamma *= 0.5;
    }
    if (!accepted) break;
  }

  // Phase 2: polish over the 16 real parameters of the lower-triangular
  // factor G (rho = G'G / tr), plain Barzilai-Borwein descent with Armijo
  // backtracking.
  Params params =
      pack(lower_factor(0.999999999 * w + 1e-9 * 0.25 * Mat4::Identity()));
  f = objective.value(unpack(params));
  Params grad = objective.gradient(unpack(params));
  double step = 1.0 / (grad.norm() + 1.0);
  stall = 0;
  while (objective.evals < kMleEvalBudget) {
    if (grad.lpNorm<Eigen::Infinity>() < 1e-12 * f_scale) break;
    double trial_step = step;
    double f_new = std::numeric_limits<double>::infinity();
    Params trial;
    bool accepted = false;
    for (int halvings = 0; halvings < 40 && objective.evals < kMleEvalBudget;
         ++halvings) {
      trial = params - trial_step * grad;
      f_new = objective.value(unpack(trial));
      if (f_new <= f - 1e-4 * trial_step * grad.squaredNorm()) {
        accepted = true;
        break;
      }
      trial_step *= 0.5;
    }
    if (!accepted) break;  // step underflow: no further descent possible

    const Params prev_params = params;
    const Params prev_grad = grad;
    params = trial;
    if (std::abs(f - f_new) < 1e-13 * std::max(1.0, std::abs(f))) {
      if (++stall >= 3) {
        f = f_new;
        break;
      }
    } else {
      stall = 0;
    }
    f = f_new;
    grad = objective.gradient(unpack(params));

    const Params dp = params - prev_params;
    const Params dg = grad - prev_grad;
    const double denom = dp.dot(dg);
    step = denom > 0.0 ? dp.squaredNorm() / denom : trial_step * 2.0;
    if (!(step > 0.0) || !std::isfinite(step)) step = trial_step;
  }

  if (objective.evals >= kMleEvalBudget) {
    throw NumericError(
        "MLE did not converge within the evaluation budget (best NLL offset " +
        std::to_string(f) + ")");
  }

  const Mat4 g = unpack(params);
  const Mat4 estimate = g.adjoint() * g;
  return DensityMatrix4(estimate / estimate.trace().real());
}

}  // namespace revival
