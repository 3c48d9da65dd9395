#pragma once

#include <string>
#include <vector>

#include "bihamil/chart/calculus.hpp"

namespace bihamil {

// Model of Lambda^r T*N: base coordinates x_1..x_n followed by one fiber
// coordinate per increasing r-multi-index (lexicographic order). For r = 1 this
// is the cotangent chart (x, y).
struct CotangentChart {
  Chart base;
  int r = 1;
  std::vector<MultiIndex> fiber;  // fiber coordinate k carries the multi-index fiber[k]
  Chart total;
  ChartMap pullback;    // base -> total
  ChartMap projection;  // total -> base, fiber coordinates dropped

  std::size_t fiber_index(std::size_t k) const { return base.dim() + k; }
};

// Fiber names default to y1..yn (r = 1) or z_<multi-index> (r > 1).
CotangentChart cotangent_chart(const Chart& base, std::vector<std::string> fiber_names = {});
CotangentChart exterior_chart(const Chart& base, int r, std::vector<std::string> fiber_names = {});

struct Liouville {
  KForm r_form;  // R = sum z_K dx_K
  KForm omega;   // dR
};
Liouville liouville(const CotangentChart& cot);

// Base field pulled back to the cotangent chart.
Tensor1r pull_to_total(const CotangentChart& cot, const Tensor1r& h);
KForm pull_to_total(const CotangentChart& cot, const KForm& f);

// Prolongation H* of a skew (1,r)-tensor on the base, by the explicit
// coordinate formula. Throws PreconditionError if h lives on another chart.
Tensor1r prolong(const CotangentChart& cot, const Tensor1r& h);

// omega_1 = phi_H^* Omega, i.e. d(sum_j y_j H^j) with H^j the j-th output r-form.
KForm prolonged_form(const CotangentChart& cot, const Tensor1r& h);

// The (r+1)-tensor (X_1..X_{r+1}) -> w(T(X_1..X_r), X_{r+1}). `alternating`
// is false when it is not antisymmetric; `form` then holds its
// increasing-index part only.
struct ContractedForm {
  KForm form;
  bool alternating = true;
};
ContractedForm contract_into(const KForm& w, const Tensor1r& t);

struct ProlongationCheck {
  bool projects = true;         // (a)
  bool radial_invariant = true; // (b)
  bool vertical_kills = true;   // (c)
  bool closed_form = true;      // (d)
  std::vector<std::string> witnesses;
  bool ok() const { return projects && radial_invariant && vertical_kills && closed_form; }
};
ProlongationCheck check_prolongation(const CotangentChart& cot, const Tensor1r& h, const Tensor1r& hstar);

struct TorsionCheck {
  Tensor1r lifted_torsion;  // N_{H*}
  Tensor1r prolonged;       // (N_H)* on the r = 2 formula
  Tensor1r residual;
  bool zero() const { return residual.is_zero(); }
};
TorsionCheck prolong_torsion_check(const CotangentChart& cot, const Tensor11& h);

// Unique h with beta(v_1..v_{r+1}) = alpha(h(v_1..v_r), v_{r+1}); alpha must be
// nondegenerate at `sample`.
Tensor1r connect(const KForm& alpha, const KForm& beta, const Point& sample);
// alpha(h(v_1..v_r), v_{r+1}) - alpha(v_r, h(v_1..v_{r-1}, v_{r+1})) over
// coordinate fields; empty when the symmetry holds everywhere.
std::vector<std::string> connect_symmetry_violations(const KForm& alpha, const Tensor1r& h);

// Generators Y_j of G_0 with omega1(Y_j, .) = pi^* alpha_j. Checks each alpha_j
// closed, omega1 nondegenerate at `sample`, and both orthogonality descriptions
// of G_0 (the omega-orthogonal of pi_*^{-1}(H G) and omega1-orthogonal of pi_*^{-1}(G)).
struct G0Result {
  Distribution g0;
  bool omega_orthogonal = false;
  bool omega1_orthogonal = false;
};
G0Result g0_generators(const CotangentChart& cot, const KForm& omega, const KForm& omega1, const Tensor11& h,
                       const std::vector<KForm>& alphas, const Point& sample);

// alpha_1 ^ ... ^ alpha_r ^ d omega_2 with omega_2 = omega(H^2 ., .).
KForm compat_criterion(const KForm& omega, const Tensor11& h, const std::vector<KForm>& alphas);

struct Transversal {
  std::vector<std::string> zero_coords;  // the transversal is {these coordinates = 0}
  Chart chart;                           // surviving coordinates
};

struct BihamiltonianPair {
  Multivector lambda;
  Multivector lambda1;
};

struct LiftResult {
  CotangentChart cot;
  Tensor11 h;
  std::vector<KForm> alphas;  // on the base
  KForm omega;
  KForm omega1;
  Tensor1r hstar;
  Distribution g0;
  Transversal transversal;
  BihamiltonianPair pair;
};

// Lambda from omega with constraints omega(Y_j, .), Lambda_1 from omega1 with
// constraints alpha_j, both restricted to the transversal. Transversality is
// checked at `samples` (points of the transversal chart).
BihamiltonianPair restrict_to_transversal(const CotangentChart& cot, const KForm& omega, const KForm& omega1,
                                          const Distribution& g0, const std::vector<KForm>& alphas,
                                          const Transversal& tr, const std::vector<Point>& samples);

Transversal make_transversal(const Chart& total, const std::vector<std::string>& zero_coords);

// Full construction over (H, alphas) on the base.
LiftResult lift(const Chart& base, const Tensor11& h, const std::vector<KForm>& alphas,
                const std::vector<std::string>& zero_coords, std::vector<std::string> fiber_names = {},
                std::size_t samples = 3);

}  // namespace bihamil
