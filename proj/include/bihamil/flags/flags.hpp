#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bihamil/chart/calculus.hpp"
#include "bihamil/ring/unipoly.hpp"

namespace bihamil {

// Foliation F = ker(alpha_1 ^ ... ^ alpha_r) on `chart` carrying the extension
// G of lambda : F -> TP, plus ambient 2-forms whose restrictions to the axis are
// omega and omega_1. The axis is computed unless supplied.
struct FlagData {
  Chart chart;
  std::vector<KForm> alphas;
  Tensor11 g;
  KForm omega;
  KForm omega1;
  std::optional<Distribution> axis;
  std::vector<Point> samples;
};

// F presented by the alphas and a symbolic kernel frame.
Distribution foliation(const FlagData& fd);

struct AxisResult {
  std::vector<std::size_t> dims;     // pointwise dimension at each sample
  std::vector<QMatrix> pointwise;    // basis columns at each sample
  std::vector<std::vector<Rational>> probes;  // probe scalars used at each sample
  bool constant = false;             // dimension independent of the sample
  std::optional<Distribution> axis;  // symbolic presentation, matching every sample
  std::string note;                  // why no presentation was produced
};

// Largest G-invariant subspace of F at each sample, by probe intersections
// and by the stabilizing iteration. Throws DefectError if the two disagree.
AxisResult axis(const FlagData& fd);

struct FunctionCheck {
  std::string label;
  Scalar f;
  bool generated = false;
  KForm precondition;   // d(df o G) ^ alpha_1 ^ ... ^ alpha_r
  bool applicable = false;
  bool evaluated = false;   // X_f exists (omega nondegenerate on the axis)
  VectorField hamiltonian;  // X_f along the axis
  Tensor1r residual;        // L_{X_f} G ^ alpha_1 ^ ... ^ alpha_r
  bool pass() const { return applicable && evaluated && residual.is_zero(); }
};

struct FlagReport {
  std::vector<KForm> alpha_closed;  // d alpha_j
  bool alphas_independent = false;  // alpha_1 ^ ... ^ alpha_r nonzero at samples

  std::vector<KForm> condition1;  // d(alpha_j o G) ^ alpha_1 ^ ... ^ alpha_r
  Tensor1r condition2;            // N_G ^ alpha_1 ^ ... ^ alpha_r
  AxisResult axis;                // condition 3: axis.constant
  bool axis_matches_supplied = true;

  std::size_t axis_dim = 0;
  bool omega_nondegenerate = false;  // on the axis, at samples
  KForm d_omega_on_axis;             // d omega ^ beta_1 ^ ... (beta annihilate the axis)
  KForm d_omega1_on_axis;
  SMatrix relation_on_axis;          // A^T (W_1 - W G) A, A the axis frame

  std::vector<FunctionCheck> condition3;
  std::vector<std::string> witnesses;

  bool weak_flag() const;
  bool flag() const;  // weak flag + symplectic part
  bool condition3_pass() const;  // every applicable function passes
  std::size_t condition3_coverage() const;  // number of applicable functions
  bool ok() const { return flag() && condition3_pass(); }
};

// Checks caller-supplied test functions plus the coordinate functions.
FlagReport check_flag(const FlagData& fd, const std::vector<Scalar>& test_functions = {});

struct TraceRelation {
  std::size_t axis_dim = 0;
  std::vector<Scalar> g;          // g_k = tr((G|A)^k), k = 0..k_max
  std::vector<KForm> residuals;   // (k dg_{k+1} - (k+1) dg_k o G) ^ alpha_1 ^ ... , k = 1..k_max
  bool zero() const;
};

// Throws DefectError when G does not preserve the axis.
TraceRelation trace_relation(const FlagData& fd, std::size_t k_max);

struct SplitReport {
  Tensor11 h1;  // phi2(G)
  Tensor11 h2;  // phi1(G)
  std::vector<std::size_t> dim1, dim2;  // per sample
  bool direct_sum = false;              // dims add up and images are complementary
  Distribution image1, image2;          // symbolic frames
  std::string mode;                     // "symbolic" or "sampled"
  bool involutive1 = false, involutive2 = false;
  bool annihilates1 = false;  // phi1(G) vanishes on Im H1
  bool annihilates2 = false;  // phi2(G) vanishes on Im H2
  std::vector<std::string> witnesses;
  bool ok() const { return direct_sum && involutive1 && involutive2 && annihilates1 && annihilates2; }
};

// Requires N_G = 0, phi1 phi2 = charpoly(G) and a nonzero resultant at each
// sample; throws PreconditionError otherwise.
SplitReport split_by_charpoly(const Tensor11& g, const UniPoly& phi1, const UniPoly& phi2,
                              const std::vector<Point>& samples);

// charpoly(G) as a UniPoly with Scalar coefficients.
UniPoly charpoly(const Tensor11& g);

struct NormalFormReport {
  bool block_diagonal = true;
  bool x_constant_diagonal = true;
  bool z_independent_of_x = true;  // z-block of G and all omega, omega1 components
  bool z_constant = true;          // strict variant only
  std::vector<std::string> witnesses;
  bool ok() const { return block_diagonal && x_constant_diagonal && z_independent_of_x && z_constant; }
};

NormalFormReport normal_form_check(const Tensor11& g, const KForm& omega, const KForm& omega1,
                                   const std::vector<std::string>& x_coords, const std::vector<std::string>& z_coords,
                                   bool strict = false);

}  // namespace bihamil
