#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qlearn/concepts.hpp"
#include "qlearn/qsim.hpp"

namespace qlearn {

// Probability weights over {0,1}^n; validated to sum to 1 within 1e-12.
struct Distribution {
  unsigned n = 0;
  std::vector<double> weights;

  Distribution() = default;
  Distribution(unsigned n_, std::vector<double> w);
};

// The quantum example state Sum_x sqrt(D(x)) |x, c(x)> on n+1 qubits; the
// label rides on qubit n.
StateVector qex_single_state(const Concept& c, const Distribution& D);

// Applies an example gate to one (n+1)-qubit block of a wider register:
// |0^{n+1}>_block is mapped to the example state. The gate is only defined
// on a reset block, so any amplitude with other block contents throws
// std::logic_error.
void apply_qex(StateVector& state, const Concept& c, const Distribution& D,
               unsigned block);

// --- Two-point sample-size bound ----------------------------------------------

// Two concepts agreeing at x=0 (both 0) and differing at x=1, under the
// distribution (1 - 3 eps, 3 eps): an eps-accurate hypothesis for one is
// never eps-accurate for the other, yet the T-copy example states keep
// inner product (1 - 3 eps)^T.
struct TwoPointInstance {
  Concept c0, c1;
  Distribution D;
  double epsilon = 0;
};

TwoPointInstance two_point_instance(double epsilon);  // 0 < eps < 1/3

// (single-copy inner product)^T; the single-copy product is the D-weight of
// the agreement set. Cross-checked against explicit tensor states in tests.
double t_copy_inner_product(const Concept& c0, const Concept& c1,
                            const Distribution& D, unsigned T);

// Explicit T-copy tensor of the example state (T blocks of n+1 qubits).
StateVector t_copy_state(const Concept& c, const Distribution& D, unsigned T);

// Smallest integer T with (1 - 3 eps)^{2T} <= 4 delta, computed in closed
// form as ceil(log(4 delta) / (2 log(1 - 3 eps))).
uint64_t two_point_sample_threshold(double epsilon, double delta);

// --- Heavy-point hard instance -------------------------------------------------

double binary_entropy(double x);  // base 2; endpoints give 0

// Lexicographic greedy code: scan 0..2^d-1, keep words at Hamming distance
// >= min_dist from everything kept so far. Gilbert-Varshamov-style; sizes
// are what the greedy achieves, not the existential optimum.
std::vector<uint32_t> greedy_code(unsigned d, unsigned min_dist);

// Shattered points x_i = i for i = 0..d under the skewed distribution
// D(x_0) = 1 - 8 eps, D(x_i) = 8 eps / d, with one concept per word of a
// distance->=ceil(d/4) code: c(x_0) = 0 and (c(x_1)..c(x_d)) spells the
// word. The carrier class is the full class over the d+1 points (everything
// else maps to 0), which trivially shatters them.
struct PacHardInstance {
  unsigned d = 0;
  unsigned n = 0;
  double epsilon = 0;
  double delta = 0.2;
  std::vector<uint64_t> shattered;  // x_0..x_d
  Distribution dist;
  std::vector<uint32_t> code;
  std::vector<Concept> concepts;    // one per code word
  uint64_t packing_target = 0;      // 2^(ceil(d/6))
  bool packing_met = false;         // |code| >= packing_target
};

// Requires 0 < eps <= 1/32 and 2^n >= d + 1 (the points must exist).
PacHardInstance ehkv_instance(unsigned d, double epsilon, unsigned n);

// --- The t-copy reference state and its overlap --------------------------------

// phi_t: the target-independent-to-first-order reference state
//   (1-8e)^{t/2} |xi_0..0> + (1-8e)^{(t-1)/2} sqrt(8e/d) * Sum |xi_..i..>
//   + alpha |z>
// where xi blocks hold |x_i, c(x_i)>, z flips the label of a second x_1
// block, and alpha normalizes: alpha^2 = 1 - (1-8e)^{t-1}(1-8e+8te).
// psi_t is the honest t-fold example state. Registers are explicit, so
// t*(n+1) <= 24 and t <= 4.
struct PacState {
  unsigned t = 0;
  double alpha = 0;
  StateVector state;
};

PacState psi_t_state(const Concept& c, const PacHardInstance& inst, unsigned t);
PacState phi_t_state(const Concept& c, const PacHardInstance& inst, unsigned t);

// Numeric <psi_t|phi_t> from the explicit states; equals the closed form
// (1-8e)^t (1 + 8te/(1-8e)) to 1e-9.
double psi_phi_inner(const Concept& c, const PacHardInstance& inst, unsigned t);
double psi_phi_closed_form(double epsilon, unsigned t);

// Distinguishability: with p0 = <s0|P|s0> >= 1-delta and p1 = <s1|P|s1> <=
// delta for delta = max(1-p0, p1) < 1/2, checks |<s0|s1>| <= 2 sqrt(delta
// (1-delta)). Throws std::runtime_error("no separating delta") when the
// states are not separated below 1/2. A false return indicates a bug.
bool fidelity_bound_check(const StateVector& s0, const StateVector& s1,
                          const std::vector<uint64_t>& projector);

// Closed-form-vs-numeric comparison rows for reporting.
struct FormulaRow {
  std::string formula_id;
  std::string params;
  double closed_form = 0;
  double numeric = 0;
  double abs_err = 0;
};

// The standard verification grid: t-copy inner products, psi/phi overlaps
// over t <= 4, eps in {1/64, 1/32}, d in {4, 8}, sample thresholds, and
// entropy spot values.
std::vector<FormulaRow> pac_formula_rows();

}  // namespace qlearn
