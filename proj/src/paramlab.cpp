#include "imlab/paramlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "imlab/errors.hpp"

namespace imlab::paramlab {

namespace {

constexpr double kEleventhThirds = 11.0 / 3.0;
constexpr double kTripleTol = 1e-12;

void require_main_range(double p) {
  if (!(p > kEleventhThirds && p < 5.0)) {
    std::ostringstream os;
    os << "p = " << p << " outside (11/3, 5)";
    throw PreconditionError(os.str());
  }
}

}  // namespace

double Extended::value() const {
  if (infinite_) throw PreconditionError("Extended::value() called on +infinity");
  return value_;
}

double Extended::reciprocal() const { return infinite_ ? 0.0 : 1.0 / value_; }

PdeParams PdeParams::make(double p, double s) {
  require_main_range(p);
  const double sp = critical_regularity(p);
  if (!(s > sp && s < 1.0)) {
    std::ostringstream os;
    os << "s = " << s << " outside (s_p, 1) = (" << sp << ", 1)";
    throw PreconditionError(os.str());
  }
  return PdeParams{p, s};
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::no: return "false";
    case Verdict::yes: return "true";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

double critical_regularity(double p) {
  if (!(p > 1.0)) throw PreconditionError("critical_regularity requires p > 1");
  return 1.5 - 2.0 / (p - 1.0);
}

double threshold_s0(double p) {
  require_main_range(p);
  return (2.0 + (5.0 - p) * critical_regularity(p)) / (7.0 - p);
}

std::array<double, 3> threshold_lower_bounds(double p) {
  require_main_range(p);
  return {(3.0 * p - 7.0) / (2.0 * (p - 1.0)), (p - 3.0) / 2.0, (3.0 * p - 5.0) / (2.0 * p)};
}

bool threshold_inequality(double s, double p) {
  const double sp = critical_regularity(p);
  if (!(s > sp && s < 1.0)) throw PreconditionError("threshold_inequality requires s_p < s < 1");
  return (5.0 - p) / 2.0 > (1.0 - s) / (s - sp);
}

Verdict threshold_equivalence(double s, double p) {
  const double s0 = threshold_s0(p);
  const bool holds = threshold_inequality(s, p);
  // Strict inequality fails on the boundary itself.
  if (s == s0) return Verdict::no;
  if (std::abs(s - s0) <= kBoundaryBand) return Verdict::indeterminate;
  return holds ? Verdict::yes : Verdict::no;
}

GrowthExponents growth_exponents(const PdeParams& params) {
  const double p = params.p;
  const double s = params.s;
  const double sp = critical_regularity(p);
  const double half_gap = (5.0 - p) / 2.0;
  const double denom_alpha = (5.0 - p) * (s - sp) - 2.0 * (1.0 - s);
  const double denom_beta = half_gap - (1.0 - s) / (s - sp);
  if (!(denom_alpha > 0.0) || !(denom_beta > 0.0)) {
    std::ostringstream os;
    os << "growth exponents undefined: non-positive denominator (s = " << s
       << " is not above s_0(p) = " << threshold_s0(p) << ")";
    throw PreconditionError(os.str());
  }
  GrowthExponents g;
  g.alpha = half_gap * (1.0 + s - sp) / denom_alpha;
  g.beta = (1.0 - s + half_gap) / denom_beta;
  g.sp_composite = g.beta / (s - sp) + 1.0;
  return g;
}

double data_size_Cu(double u0_hs, double u1_hs_minus_1, double u0_hsp, double p) {
  if (u0_hs < 0.0 || u1_hs_minus_1 < 0.0 || u0_hsp < 0.0)
    throw PreconditionError("data_size_Cu: norms must be non-negative");
  return u0_hs * u0_hs + u1_hs_minus_1 * u1_hs_minus_1 +
         u0_hs * u0_hs * std::pow(u0_hsp, p - 1.0);
}

double lambda_choice(double C_u, double N, const PdeParams& params, double prefactor) {
  const double sp = critical_regularity(params.p);
  const double gap = params.s - sp;
  if (!(gap > 0.0)) throw PreconditionError("lambda_choice requires s > s_p");
  if (!(C_u > 0.0)) throw PreconditionError("lambda_choice requires C_u > 0");
  if (!(N >= 1.0)) throw PreconditionError("lambda_choice requires N >= 1");
  return prefactor * std::pow(C_u, 1.0 / (2.0 * gap)) * std::pow(N, (1.0 - params.s) / gap);
}

FrequencyChoice n_choice(double C_u, double T, const PdeParams& params, double prefactor,
                         double N_floor) {
  const double p = params.p;
  const double s = params.s;
  if (!(T > 0.0)) throw PreconditionError("n_choice requires T > 0");
  if (!(C_u > 0.0)) throw PreconditionError("n_choice requires C_u > 0");
  if (!(N_floor > 0.0) || !(prefactor > 0.0))
    throw PreconditionError("n_choice requires positive floor and prefactor");
  growth_exponents(params);  // throws unless s > s_0(p)
  const double sp = critical_regularity(p);
  const double e_cu = 1.0 / ((5.0 - p) * (s - sp) - 2.0 * (1.0 - s));
  const double e_t = 1.0 / ((5.0 - p) / 2.0 - (1.0 - s) / (s - sp));
  const double log_growth = e_cu * std::log(C_u) + e_t * std::log(T);
  const double log_n = std::log(prefactor) + std::max(log_growth, std::log(N_floor));
  return FrequencyChoice{std::exp(log_n), log_n};
}

Extended local_time_T1(double norm_hs, const PdeParams& params, double prefactor) {
  if (norm_hs < 0.0) throw PreconditionError("local_time_T1 requires a non-negative norm");
  if (norm_hs == 0.0) return Extended::infinity();
  const double gap = params.s - critical_regularity(params.p);
  if (!(gap > 0.0)) throw PreconditionError("local_time_T1 requires s > s_p");
  return Extended::finite(prefactor / std::pow(norm_hs, 1.0 / gap));
}

bool is_admissible(const TripleMQR& t) {
  if (!t.q.is_infinite() && !(t.q.value() >= 2.0)) return false;
  if (!(t.r >= 2.0) || !std::isfinite(t.r)) return false;
  if (!(t.m >= 0.0 && t.m <= 1.0 + kTripleTol)) return false;
  const double scaling = t.inv_q() + 3.0 * t.inv_r() - (1.5 - t.m);
  if (std::abs(scaling) > kTripleTol) return false;
  return t.inv_q() + t.inv_r() <= 0.5 + kTripleTol;
}

double m1_inverse_q_cap(const PdeParams& params) {
  const double p = params.p;
  return std::max((p - 3.0) / (2.0 * (p - 1.0)),
                  (7.0 - p) / (4.0 * (p - 1.0)) + (1.0 - params.s) / (2.0 * (p - 1.0)));
}

bool is_allowed_triple(const TripleMQR& t, const PdeParams& params) {
  if (!is_admissible(t)) return false;
  if (t.m >= 0.0 && t.m <= params.s + kTripleTol) return true;
  if (std::abs(t.m - 1.0) <= kTripleTol) return t.inv_q() <= m1_inverse_q_cap(params) + kTripleTol;
  return false;
}

std::vector<TripleMQR> proof_triples(const PdeParams& params) {
  const double p = params.p;
  const double s = params.s;
  const double sp = critical_regularity(p);
  auto fin = [](double v) { return Extended::finite(v); };
  return {
      {1.0, fin(2.0 * (p - 1.0) / (p - 3.0)), 3.0 * (p - 1.0), "m1_low"},
      {sp, fin(p - 1.0), 3.0 * (p - 1.0), "m_sp"},
      {(p - 3.0) / 2.0, fin(4.0 / (p - 3.0)), 4.0 / (5.0 - p), "m_half_gap"},
      {(3.0 * p - 5.0) / (2.0 * p), fin(p), 2.0 * p, "m_high_l2"},
      {(3.0 * p - 7.0 + 2.0 * s) / (2.0 * p), fin(p), 6.0 * p / (5.0 - 2.0 * s), "m_high_dual"},
      {s, Extended::infinity(), 6.0 / (3.0 - 2.0 * s), "m_s_energy"},
  };
}

ParamsTable params_table(double p, double s, double C_u, double T) {
  ParamsTable tab;
  tab.p = p;
  tab.s = s;
  tab.s_p = critical_regularity(p);
  tab.s_0 = threshold_s0(p);
  tab.C_u = C_u;
  tab.T = T;
  const PdeParams params{p, s};
  if (threshold_equivalence(s, p) == Verdict::yes) {
    tab.exponents = growth_exponents(params);
    tab.N = n_choice(C_u, T, params);
    if (std::isfinite(tab.N->value)) tab.lambda = lambda_choice(C_u, tab.N->value, params);
  }
  return tab;
}

}  // namespace imlab::paramlab
