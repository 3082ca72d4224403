#pragma once

// Exponent and threshold arithmetic for the defocusing wave equation
//   u_tt - Δu = -|u|^{p-1} u   on R^3,
// together with the admissible (m, q, r) triples used to build the Z norms.
//
// The unnamed constants of the analysis are never hard-coded: every
// parameter-choice formula takes an explicit `prefactor` (default 1).

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace imlab::paramlab {

/// Half-width of the band around algebraic boundaries inside which
/// comparisons are reported as indeterminate rather than booleanized.
inline constexpr double kBoundaryBand = 1e-12;

/// A real number or +∞. Used for Lebesgue exponents (q = ∞) and for
/// unbounded existence times; infinity is a flag, never a large float.
class Extended {
 public:
  constexpr Extended() = default;
  static constexpr Extended finite(double v) { return Extended(v, false); }
  static constexpr Extended infinity() { return Extended(0.0, true); }

  constexpr bool is_infinite() const { return infinite_; }
  /// Finite value; throws PreconditionError for +∞.
  double value() const;
  /// 1/x with 1/∞ = 0 exactly.
  double reciprocal() const;

  friend constexpr bool operator==(const Extended&, const Extended&) = default;

 private:
  constexpr Extended(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_ = 0.0;
  bool infinite_ = false;
};

/// Equation parameters: nonlinearity exponent p and data regularity s.
struct PdeParams {
  double p = 4.0;
  double s = 0.95;

  /// Validates 11/3 < p < 5 and s_p(p) < s < 1.
  static PdeParams make(double p, double s);
};

/// Three-valued answer for predicates evaluated near an algebraic boundary.
enum class Verdict { no, yes, indeterminate };

const char* to_string(Verdict v);

/// s_p = 3/2 - 2/(p-1). Requires p > 1.
double critical_regularity(double p);

/// s_0(p) = (2 + (5-p) s_p) / (7-p). Requires 11/3 < p < 5.
double threshold_s0(double p);

/// The three lower bounds (3p-7)/(2(p-1)), (p-3)/2, (3p-5)/(2p) that s_0(p) dominates.
std::array<double, 3> threshold_lower_bounds(double p);

/// Whether (5-p)/2 > (1-s)/(s-s_p). Algebraically identical to s > s_0(p);
/// returns `indeterminate` within kBoundaryBand of s_0(p).
Verdict threshold_equivalence(double s, double p);

/// Bare predicate (5-p)/2 > (1-s)/(s-s_p) without the boundary band.
bool threshold_inequality(double s, double p);

struct GrowthExponents {
  double alpha = 0.0;
  double beta = 0.0;
  /// β/(s - s_p) + 1: composite time exponent of the Ḣ^{s_p} growth bound.
  double sp_composite = 0.0;
};

/// α and β of the Ḣ^s growth bound. Throws PreconditionError when the
/// shared denominator (5-p)(s-s_p) - 2(1-s) is not positive, i.e. s ≤ s_0(p).
GrowthExponents growth_exponents(const PdeParams& params);

/// C(u) = ‖u0‖²_{Ḣ^s} + ‖u1‖²_{Ḣ^{s-1}} + ‖u0‖²_{Ḣ^s} ‖u0‖^{p-1}_{Ḣ^{s_p}}.
double data_size_Cu(double u0_hs, double u1_hs_minus_1, double u0_hsp, double p);

/// λ = prefactor · C_u^{1/(2(s-s_p))} · N^{(1-s)/(s-s_p)}.
double lambda_choice(double C_u, double N, const PdeParams& params, double prefactor = 1.0);

struct FrequencyChoice {
  double value = 0.0;      ///< may overflow to +inf for absurd horizons
  double log_value = 0.0;  ///< natural log, always finite
};

/// N = prefactor · max{C_u^{1/((5-p)(s-s_p)-2(1-s))} T^{1/((5-p)/2-(1-s)/(s-s_p))}, N_floor}.
FrequencyChoice n_choice(double C_u, double T, const PdeParams& params, double prefactor = 1.0,
                         double N_floor = 1.0);

/// T_1 = prefactor / ‖(u0,u1)‖^{1/(s-s_p)}; +∞ for zero norm.
Extended local_time_T1(double norm_hs, const PdeParams& params, double prefactor = 1.0);

/// Exponent triple (m, q, r) of a Z norm ‖D^{1-m} I u‖_{L^q_t L^r_x}.
struct TripleMQR {
  double m = 0.0;
  Extended q = Extended::infinity();
  double r = 2.0;
  std::string label;

  double inv_q() const { return q.reciprocal(); }
  double inv_r() const { return 1.0 / r; }
};

/// 1/q + 3/r = 3/2 - m and 1/q + 1/r ≤ 1/2, with 2 ≤ q ≤ ∞ and 2 ≤ r < ∞.
bool is_admissible(const TripleMQR& t);

/// Cap on 1/q for the m = 1 branch: max{(p-3)/(2(p-1)), (7-p)/(4(p-1)) + (1-s)/(2(p-1))}.
double m1_inverse_q_cap(const PdeParams& params);

/// Admissible, and either 0 ≤ m ≤ s or (m = 1 and 1/q ≤ cap).
bool is_allowed_triple(const TripleMQR& t, const PdeParams& params);

/// The concrete triples the estimates are built from, plus the q = ∞ energy triple.
std::vector<TripleMQR> proof_triples(const PdeParams& params);

/// Everything the `params` subcommand prints.
struct ParamsTable {
  double p = 0, s = 0, s_p = 0, s_0 = 0;
  std::optional<GrowthExponents> exponents;  ///< empty when s ≤ s_0
  double C_u = 0, T = 0;
  std::optional<FrequencyChoice> N;  ///< empty when s ≤ s_0
  std::optional<double> lambda;      ///< λ evaluated at the chosen N
};

/// All prefactors are 1; the N floor is 1.
ParamsTable params_table(double p, double s, double C_u, double T);

}  // namespace imlab::paramlab
