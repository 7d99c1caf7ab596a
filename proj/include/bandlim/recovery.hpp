#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "bandlim/derivative_frames.hpp"
#include "bandlim/gramian.hpp"
#include "bandlim/quadrature.hpp"
#include "bandlim/sampling.hpp"

namespace bandlim {

struct MissingIndexSet {
  std::vector<int> indices;  // lattice positions of the lost samples
  int lambda = 0;            // channels 1..lambda are lost there
};

// Correlation kernel (dual_j * gen_k~)(tau) =
//   integral_{-omega}^{omega} dualhat_j(x) conj(genhat_k(x)) exp(i tau x) dx.
// Normative definition by adaptive quadrature.
cplx correlation(const DualSet& duals, const GeneratorSet& gens, int j, int k,
                 double tau, const QuadOptions& opt = {});

// Fast evaluator for the same kernel, used for bulk assembly. Two channels
// with closed-form duals reduce to explicit oscillatory polynomial and
// Cauchy-weight integrals; grid duals are integrated on cached per-zone
// Gauss panels sized for the largest |tau| requested up front. Matches the
// normative quadrature to ~1e-9.
class CorrelationEngine {
 public:
  CorrelationEngine(const GeneratorSet& gens, const DualSet& duals,
                    const FrameParams& p, double tau_max);
  cplx operator()(int j, int k, double tau) const;
  int channels() const { return L_; }

 private:
  struct Piece {  // polynomial piece of dual_j * conj(gen_k)
    double lo, hi;
    std::vector<cplx> coef;
  };
  cplx closed_form(int j, int k, double tau) const;

  bool closed_ = false;
  int L_ = 0;
  double omega_ = 0.0, h_ = 0.0, H_ = 0.0;
  // Closed form: outer polynomial pieces per (j, k), inner handled explicitly.
  std::vector<std::vector<std::vector<Piece>>> pieces_;
  // Grid duals: flattened panel points covering the band.
  std::vector<double> xi_, w_;
  std::vector<std::vector<cplx>> dual_at_;  // [l][point]
  std::vector<std::vector<cplx>> gen_at_;   // [k][point]
};

struct RecoverySystem {
  FrameParams params;
  MissingIndexSet miss;
  int N = 0;  // missing lattice positions
  Eigen::MatrixXcd S;  // (lambda N) x (lambda N), blocks (k, j), entries (m, p)
  Eigen::VectorXcd B;
  Eigen::VectorXcd X;  // filled by recover()
  double cond = 0.0;             // of I - S
  double hermitian_defect = 0.0; // ||S - S*||_F
  double s_norm = 0.0;           // largest singular value of S
  double smin = 0.0;             // smallest singular value of I - S
};

// Assembles S and B from the window covered by the sample set. The masked
// entries of s must be exactly miss.indices x channels 1..lambda.
RecoverySystem build_recovery_system(const GeneratorSet& gens, const DualSet& duals,
                                     const FrameParams& p, const MissingIndexSet& miss,
                                     const SampleSet& s);

struct RecoveryResult {
  Eigen::VectorXcd X;
  double residual = 0.0;   // ||(I - S) X - B||
  double max_imag = 0.0;   // largest imaginary part among recovered values
  std::string warning;     // set when the solve is near the singular band
};

// Solves (I - S) X = B and writes the recovered values into the masked
// entries of s. Throws NotRecoverableError when 1 is in the spectrum of S
// (smallest singular value of I - S below 1e-10 ||S||) and
// IllConditionedError when cond(I - S) exceeds cond_threshold.
RecoveryResult recover(RecoverySystem& sys, SampleSet& s,
                       double cond_threshold = 1e10);

struct RecoverabilityCertificate {
  bool recoverable = false;
  bool symbolic = false;            // degree argument vs spectral bound
  std::vector<int> degrees;         // kernel-vector component degrees
  double spectral_bound = -1.0;     // max eigenvalue of the Hermitian part
  std::string note;
};

// Decides whether the masked samples are recoverable for any window. For
// polynomial generators the kernel vector's component degrees decide
// symbolically; otherwise a spectral bound on S is used (valid as a
// necessary criterion only when S is Hermitian). Endpoint geometries are
// never recoverable: the deficient zone is empty and S is the identity.
RecoverabilityCertificate recoverable(const GeneratorSet& gens, const FrameParams& p,
                                      const MissingIndexSet& miss);

// Absolute discrepancy between X*X - X*SX and the zone integral
// (1/h) int ||(I - G(t)) Xhat(t)||^2 dt over the deficient zone(s), where
// Xhat_j(t) = sum_p x_j(p) exp(-i l_p t0 t). Requires lambda = L.
double quadratic_form_residual(const RecoverySystem& sys, const Eigen::VectorXcd& X,
                               const GeneratorSet& gens, const DualSet& duals,
                               const FrameParams& p);

}  // namespace bandlim
