#include "bandlim/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bandlim/errors.hpp"

namespace bandlim {

namespace {

std::vector<int> ordered_lattice(int n_min, int n_max) {
  std::vector<int> ns;
  ns.reserve(n_max - n_min + 1);
  for (int n = n_min; n <= n_max; ++n) ns.push_back(n);
  std::sort(ns.begin(), ns.end(), [](int a, int b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
  });
  return ns;
}

std::vector<int> normalized_indices(const MissingIndexSet& miss) {
  std::vector<int> idx = miss.indices;
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
    throw ConfigError("missing indices must be distinct");
  return idx;
}

}  // namespace

cplx correlation(const DualSet& duals, const GeneratorSet& gens, int j, int k,
                 double tau, const QuadOptions& opt) {
  const FrameParams& p = duals.params;
  if (j < 1 || j > p.length || k < 1 || k > gens.length())
    throw DomainError("correlation channel out of range");

  std::vector<double> cuts;
  if (duals.kind == DualSet::Kind::ClosedForm2) {
    const double H = p.h - p.omega;
    cuts = {-H, H};
  } else {
    // Dual spectra change analytic form where a zone boundary translates into
    // the band.
    const FrequencyPartition part = partition(p);
    for (double edge : {part.left.lo, part.left.hi, part.middle.hi, part.right.hi})
      for (int t = -(p.ell + 1); t <= p.ell + 1; ++t) {
        const double x = edge + t * p.h;
        if (x > -p.omega && x < p.omega) cuts.push_back(x);
      }
  }

  auto f = [&](double x) {
    return duals.hat(j, x) * std::conj(gens.hat(k, x)) *
           std::exp(cplx{0.0, tau * x});
  };
  return integrate_segmented(f, -p.omega, p.omega, cuts, opt).value;
}

CorrelationEngine::CorrelationEngine(const GeneratorSet& gens, const DualSet& duals,
                                     const FrameParams& p, double tau_max) {
  L_ = p.length;
  omega_ = p.omega;
  h_ = p.h;
  H_ = p.h - p.omega;
  closed_ = (duals.kind == DualSet::Kind::ClosedForm2);

  if (closed_) {
    // Outer dual pieces; the inner Cauchy-weight pieces are handled in
    // closed_form(). Dual 1 is the tent (1 - |x|/h)/h, dual 2 the step
    // i sign(x)/h^2.
    const cplx i{0.0, 1.0};
    std::vector<std::vector<Piece>> dual_pieces(2);
    dual_pieces[0] = {{-omega_, -H_, {cplx{1.0 / h_}, cplx{1.0 / (h_ * h_)}}},
                      {H_, omega_, {cplx{1.0 / h_}, cplx{-1.0 / (h_ * h_)}}}};
    dual_pieces[1] = {{-omega_, -H_, {-i / (h_ * h_)}},
                      {H_, omega_, {i / (h_ * h_)}}};
    pieces_.assign(2, std::vector<std::vector<Piece>>(2));
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        for (const Piece& pc : dual_pieces[j]) {
          Piece q = pc;
          if (k == 1) {
            // conj(gen_2) = -i x: shift the polynomial up one degree.
            q.coef.insert(q.coef.begin(), cplx{0.0, 0.0});
            for (cplx& c : q.coef) c *= -i;
          }
          pieces_[j][k].push_back(std::move(q));
        }
      }
    return;
  }

  // Composite 20-point Gauss panels per zone, sized so each panel sees at
  // most ~10 radians of exp(i tau x) phase at the largest requested |tau|.
  std::vector<double> gx, gw;
  gauss_legendre(20, gx, gw);
  const FrequencyPartition part = partition(p);
  const Interval* zones[3] = {&part.left, &part.middle, &part.right};
  dual_at_.assign(L_, {});
  gen_at_.assign(gens.length(), {});
  for (int z = 0; z < 3; ++z) {
    if (zones[z]->empty()) continue;
    const double len = zones[z]->length();
    const int panels =
        std::max(2, static_cast<int>(std::ceil(len * (std::abs(tau_max) + 10.0) / 10.0)));
    for (int pa = 0; pa < panels; ++pa) {
      const double a = zones[z]->lo + pa * len / panels;
      const double b = zones[z]->lo + (pa + 1) * len / panels;
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (int q = 0; q < 20; ++q) {
        const double x = mid + half * gx[q];
        const DualSlice slice = solve_dual_slice(gens, p, x);
        for (size_t r = 0; r < slice.rows.size(); ++r) {
          if (static_cast<int>(r) == slice.vanishing) continue;
          const double xi = x + slice.rows[r] * p.h;
          xi_.push_back(xi);
          w_.push_back(half * gw[q]);
          for (int l = 0; l < L_; ++l) dual_at_[l].push_back(slice.vals(r, l));
          for (int k = 0; k < gens.length(); ++k)
            gen_at_[k].push_back(gens.hat(k + 1, xi));
        }
      }
    }
  }
}

cplx CorrelationEngine::closed_form(int j, int k, double tau) const {
  cplx acc{0.0, 0.0};
  for (const Piece& pc : pieces_[j - 1][k - 1])
    acc += poly_osc_integral(pc.coef, pc.lo, pc.hi, tau);

  const double A = rational_cos_integral(H_, tau);
  const double c = rational_sin_integral(H_, tau);
  if (j == 1 && k == 1) acc += A / h_;
  if (j == 1 && k == 2) acc += c / h_;
  if (j == 2 && k == 1) acc += -c / h_;
  if (j == 2 && k == 2)
    acc += (poly_osc_integral({cplx{1.0, 0.0}}, -H_, H_, tau) - A) / h_;
  return acc;
}

cplx CorrelationEngine::operator()(int j, int k, double tau) const {
  if (closed_) return closed_form(j, k, tau);
  const std::vector<cplx>& dj = dual_at_[j - 1];
  const std::vector<cplx>& gk = gen_at_[k - 1];
  cplx acc{0.0, 0.0};
  for (size_t p = 0; p < xi_.size(); ++p)
    acc += w_[p] * dj[p] * std::conj(gk[p]) * std::exp(cplx{0.0, tau * xi_[p]});
  return acc;
}

RecoverySystem build_recovery_system(const GeneratorSet& gens, const DualSet& duals,
                                     const FrameParams& p, const MissingIndexSet& miss,
                                     const SampleSet& s) {
  const int L = p.length;
  const int lambda = miss.lambda;
  if (lambda < 1 || lambda > L)
    throw ConfigError("lambda must be in 1.." + std::to_string(L));
  if (s.channels != L)
    throw SampleConsistencyError("sample set has " + std::to_string(s.channels) +
                                 " channels, the frame has " + std::to_string(L));

  RecoverySystem sys;
  sys.params = p;
  sys.miss.lambda = lambda;
  sys.miss.indices = normalized_indices(miss);
  const std::vector<int>& idx = sys.miss.indices;
  const int N = static_cast<int>(idx.size());
  sys.N = N;

  // The mask must be exactly miss x channels 1..lambda.
  std::set<int> missing_set(idx.begin(), idx.end());
  for (int j = 1; j <= L; ++j)
    for (int n = s.n_min; n <= s.n_max; ++n) {
      const bool expect = (j <= lambda) && missing_set.count(n) > 0;
      if (s.is_missing(j, n) != expect)
        throw SampleConsistencyError(
            "sample mask does not match the missing index set at channel " +
            std::to_string(j) + ", n = " + std::to_string(n));
    }
  for (int n : idx)
    if (n < s.n_min || n > s.n_max)
      throw SampleConsistencyError("missing index " + std::to_string(n) +
                                   " outside the sample window");

  if (N == 0) {
    sys.S.resize(0, 0);
    sys.B.resize(0);
    sys.cond = 1.0;
    return sys;
  }

  // One correlation table per channel pair over every lattice offset needed
  // by S (index differences) and B (index-minus-window differences).
  const int d_lo = idx.front() - s.n_max;
  const int d_hi = idx.back() - s.n_min;
  const double tau_max = std::max(std::abs(d_lo), std::abs(d_hi)) * p.t0;
  CorrelationEngine corr(gens, duals, p, tau_max);

  std::vector<std::vector<std::vector<cplx>>> table(
      L, std::vector<std::vector<cplx>>(lambda));
  for (int j = 1; j <= L; ++j)
    for (int k = 1; k <= lambda; ++k) {
      auto& col = table[j - 1][k - 1];
      col.resize(d_hi - d_lo + 1);
      for (int d = d_lo; d <= d_hi; ++d) col[d - d_lo] = corr(j, k, d * p.t0);
    }
  auto corr_at = [&](int j, int k, int d) { return table[j - 1][k - 1][d - d_lo]; };

  sys.S.resize(lambda * N, lambda * N);
  for (int k = 1; k <= lambda; ++k)
    for (int j = 1; j <= lambda; ++j)
      for (int m = 0; m < N; ++m)
        for (int q = 0; q < N; ++q)
          sys.S((k - 1) * N + m, (j - 1) * N + q) = corr_at(j, k, idx[m] - idx[q]);

  sys.B = Eigen::VectorXcd::Zero(lambda * N);
  const std::vector<int> window = ordered_lattice(s.n_min, s.n_max);
  for (int k = 1; k <= lambda; ++k)
    for (int m = 0; m < N; ++m) {
      cplx acc{0.0, 0.0};
      for (int j = 1; j <= L; ++j)
        for (int n : window) {
          if (j <= lambda && missing_set.count(n)) continue;
          const double v = s.value(j, n);
          if (v != 0.0) acc += v * corr_at(j, k, idx[m] - n);
        }
      sys.B((k - 1) * N + m) = acc;
    }

  sys.hermitian_defect = (sys.S - sys.S.adjoint()).norm();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd_s(sys.S);
  sys.s_norm = svd_s.singularValues()(0);
  const Eigen::MatrixXcd ims =
      Eigen::MatrixXcd::Identity(lambda * N, lambda * N) - sys.S;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd_i(ims);
  sys.smin = svd_i.singularValues()(lambda * N - 1);
  sys.cond = sys.smin > 0.0 ? svd_i.singularValues()(0) / sys.smin : INFINITY;
  return sys;
}

RecoveryResult recover(RecoverySystem& sys, SampleSet& s, double cond_threshold) {
  RecoveryResult res;
  const int N = sys.N;
  const int lambda = sys.miss.lambda;
  if (N == 0) {
    sys.X.resize(0);
    res.X.resize(0);
    return res;
  }

  if (sys.smin < 1e-10 * sys.s_norm)
    throw NotRecoverableError(
        "1 is an eigenvalue of the correlation operator within tolerance "
        "(smallest singular value of I-S is " +
        std::to_string(sys.smin) + " against operator norm " +
        std::to_string(sys.s_norm) + "); the missing set is not recoverable");
  if (sys.cond > cond_threshold)
    throw IllConditionedError("recovery system condition number " +
                              std::to_string(sys.cond) + " exceeds threshold " +
                              std::to_string(cond_threshold));
  if (sys.cond > 1e8 || sys.smin < 1e-8 * sys.s_norm)
    res.warning = "solve is near the singular band: cond(I-S) = " +
                  std::to_string(sys.cond);

  const int dim = lambda * N;
  const Eigen::MatrixXcd ims = Eigen::MatrixXcd::Identity(dim, dim) - sys.S;
  res.X = ims.partialPivLu().solve(sys.B);
  sys.X = res.X;
  res.residual = (ims * res.X - sys.B).norm();
  for (int i = 0; i < dim; ++i)
    res.max_imag = std::max(res.max_imag, std::abs(res.X(i).imag()));

  for (int j = 1; j <= lambda; ++j)
    for (int m = 0; m < N; ++m) {
      s.set_value(j, sys.miss.indices[m], res.X((j - 1) * N + m).real());
      s.set_missing(j, sys.miss.indices[m], false);
    }
  return res;
}

RecoverabilityCertificate recoverable(const GeneratorSet& gens, const FrameParams& p,
                                      const MissingIndexSet& miss) {
  RecoverabilityCertificate cert;
  const int lambda = miss.lambda;
  if (lambda < 1 || lambda > p.length)
    throw ConfigError("lambda must be in 1.." + std::to_string(p.length));

  if (is_endpoint(p.regime)) {
    cert.recoverable = false;
    cert.note = "critical density: the deficient zone is empty and the "
                "correlation operator is the identity";
    return cert;
  }

  if (gens.polynomial_band) {
    bool inconclusive = false;
    const FrequencyPartition part = partition(p);
    const Interval* zones[3] = {&part.left, &part.middle, &part.right};
    const bool even = (p.regime == Regime::Even);
    for (int z : even ? std::vector<int>{0, 2} : std::vector<int>{1}) {
      if (zones[z]->empty()) continue;
      const std::vector<Poly> w = cross_vector_symbolic(gens, p, z);
      double scale = 0.0;
      for (const Poly& comp : w)
        for (const cplx& c : comp) scale = std::max(scale, std::abs(c));
      std::vector<int> degs;
      for (const Poly& comp : w) degs.push_back(poly_degree(comp, 1e-12 * scale));
      if (cert.degrees.empty()) cert.degrees = degs;

      for (int k = 0; k < lambda; ++k) {
        if (degs[k] < 0) {
          cert.symbolic = true;
          cert.recoverable = false;
          cert.note = "kernel component " + std::to_string(k + 1) +
                      " vanishes identically on zone " + std::to_string(z) +
                      "; any nonzero trigonometric polynomial witnesses dependence";
          return cert;
        }
        if (k > 0 && degs[k] >= degs[k - 1]) inconclusive = true;
      }
    }
    if (!inconclusive) {
      cert.symbolic = true;
      cert.recoverable = true;
      cert.note = "kernel components have strictly decreasing polynomial "
                  "degrees, hence no finite index set admits an annihilating "
                  "trigonometric polynomial";
      return cert;
    }
  }

  // Spectral fallback: valid as a necessary-and-sufficient criterion only for
  // Hermitian S. Duals are solved from the given generators; the closed form
  // would silently assume the derivative pair here.
  DualSet duals = numeric_duals(gens, p, 512);
  std::vector<int> idx = normalized_indices(miss);
  const int N = static_cast<int>(idx.size());
  if (N == 0) {
    cert.recoverable = true;
    cert.note = "empty missing set";
    return cert;
  }
  const double tau_max = (idx.back() - idx.front()) * p.t0;
  CorrelationEngine corr(gens, duals, p, tau_max);
  Eigen::MatrixXcd S(lambda * N, lambda * N);
  for (int k = 1; k <= lambda; ++k)
    for (int j = 1; j <= lambda; ++j)
      for (int m = 0; m < N; ++m)
        for (int q = 0; q < N; ++q)
          S((k - 1) * N + m, (j - 1) * N + q) = corr(j, k, (idx[m] - idx[q]) * p.t0);

  const double defect = (S - S.adjoint()).norm();
  const double snorm = S.norm();
  if (defect > 1e-8 * std::max(snorm, 1e-300))
    throw UndecidableError(
        "no symbolic certificate and the correlation operator is not "
        "Hermitian (defect " +
        std::to_string(defect) + "); the spectral criterion does not decide");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (S + S.adjoint()));
  cert.spectral_bound = eig.eigenvalues().maxCoeff();
  cert.recoverable = cert.spectral_bound < 1.0 - 1e-10;
  cert.note = cert.recoverable
                  ? "largest eigenvalue of the correlation operator is below one"
                  : "the correlation operator has an eigenvalue at one within "
                    "tolerance";
  return cert;
}

double quadratic_form_residual(const RecoverySystem& sys, const Eigen::VectorXcd& X,
                               const GeneratorSet& gens, const DualSet& duals,
                               const FrameParams& p) {
  const int lambda = sys.miss.lambda;
  if (lambda != p.length)
    throw DomainError("the quadratic-form identity needs lambda = L");
  if (X.size() != sys.S.rows())
    throw DomainError("vector length does not match the system");
  const int N = sys.N;
  if (N == 0) return 0.0;

  const double matrix_side = (X.adjoint() * X - X.adjoint() * (sys.S * X)).real()(0);

  const FrequencyPartition part = partition(p);
  const Interval* zones[3] = {&part.left, &part.middle, &part.right};
  const bool even = (p.regime == Regime::Even);
  double integral = 0.0;
  const double xnorm2 = X.squaredNorm();
  QuadOptions opt;
  opt.abs_tol = 1e-9 * std::max(1.0, xnorm2);
  for (int z : even ? std::vector<int>{0, 2} : std::vector<int>{1}) {
    if (zones[z]->empty()) continue;
    auto f = [&](double t) -> cplx {
      Eigen::VectorXcd xh(p.length);
      for (int j = 1; j <= p.length; ++j) {
        cplx acc{0.0, 0.0};
        for (int q = 0; q < N; ++q)
          acc += X((j - 1) * N + q) *
                 std::exp(cplx{0.0, -sys.miss.indices[q] * p.t0 * t});
        xh(j - 1) = acc;
      }
      const Eigen::MatrixXcd G = mixed_gramian_at(gens, duals, p, t);
      const Eigen::VectorXcd r = xh - G * xh;
      return cplx{r.squaredNorm(), 0.0};
    };
    integral += integrate(f, zones[z]->lo, zones[z]->hi, opt).value.real();
  }
  integral /= p.h;
  return std::abs(matrix_side - integral);
}

}  // namespace bandlim
