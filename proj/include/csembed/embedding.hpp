#pragma once

#include <variant>

#include "csembed/intertwine.hpp"

// The extension map J(phi)(y,t) = phi(y) from functions on R^{n-2} to
// functions on R^{n-1}, the transverse kernel operator M_i(x), the isometry
// ratio checks, the adjoint J*, and the parabolic generator actions.

namespace csembed::embedding {

using csembed::CMat;
using csembed::Complex;
using csembed::CVec;
using csembed::Mat;
using csembed::Vec;
using intertwine::CSParams;
using quadrature::QuadratureSpec;
using schwartz::SchwartzFn;
using schwartz::SchwartzVec;

struct EmbeddingContext {
  CSParams big;    // (n, i, u) in the embedding window
  CSParams small;  // (n-1, i, u') with u' = ((n-1)u - 1)/(n-2)
  double lambda;   // (n-1)(1-u) = (n-2)(1-u')

  EmbeddingContext(int n, int i, double u);
};

// J phi: constant extension in the last coordinate.  Components already sit
// in the Lambda^i(R^{n-1}) basis; downstream integrals reduce the transverse
// direction before any quadrature.
struct JExtension {
  SchwartzVec base;  // functions of y in R^{n-2}, big-basis components

  CVec eval(const Vec& y, double t) const;
  CVec eval_full(const Vec& yt) const;  // last coordinate is t
};

JExtension j_apply(const SchwartzVec& phi_small);

// Transverse factor Int (1+s^2)^{-(n-1)u/2} ds evaluated by a split
// spectral quadrature (not by its closed form).
double transverse_factor(double p_exponent, int nodes = 48);

// Closed form of the same factor, sqrt(pi) Gamma(p - 1/2)/Gamma(p).
double transverse_factor_reference(double p_exponent);

struct MOperatorResult {
  CMat quadrature_route;  // regularized (v, s, t) quadrature
  Mat closed_form;        // m_i((x,0)) |x|^{-lambda}
};

struct MQuadSpec {
  int v_nodes = 28;
  int s_nodes = 48;
  int t_nodes = 160;
};

// Kernel operator of the transverse reduction on Lambda^i(R^{dim(x)+1}).
MOperatorResult m_operator(const Vec& x, double lambda, int i,
                           const MQuadSpec& mq = MQuadSpec{});
MOperatorResult m_operator(const Vec& x, const EmbeddingContext& ctx,
                           const MQuadSpec& mq = MQuadSpec{});

// Direction weight omega -> M-route(omega) with a per-direction cache, for
// integrating the big-side form.
quadrature::DirectionWeight m_route_weight(double lambda, int i, int d_ambient,
                                           const MQuadSpec& mq = MQuadSpec{});

struct IsometryResult {
  double big_norm;
  double small_norm;
  double ratio;
};

// Form-route isometry ratio: big side through the M-route weight, small side
// through the (n-1, i, u') form with an independent node set.
IsometryResult isometry_check(const SchwartzVec& phi_small, const EmbeddingContext& ctx,
                              const QuadratureSpec& spec);

struct BetaIsometryResult {
  double big_norm;
  double small_norm;
  double ratio;
  double reference;  // transverse Beta factor
};

// Weighted-norm route for the unramified case (i = 0).
BetaIsometryResult unramified_isometry_beta(const SchwartzFn& phi_small,
                                            const EmbeddingContext& ctx,
                                            const QuadratureSpec& spec);

// J*(f)(y) = Int ds (1+s^2)^{-(n-1)u/2} f(y, |y| s), restricted to the small
// wedge basis.  Needs (n-1)u > 1 (guaranteed by the context).
CVec j_star_apply(const SchwartzVec& f_big, const EmbeddingContext& ctx, const Vec& y,
                  int s_nodes = 48);
Complex j_star_scalar(const SchwartzFn& f_big, const EmbeddingContext& ctx, const Vec& y,
                      int s_nodes = 48);

struct PairSides {
  Complex lhs;
  Complex rhs;
};

// <Jg, f> against <g, J*f> in the weighted-norm pairings (i = 0).
PairSides adjoint_pairing(const SchwartzFn& g_small, const SchwartzFn& f_big,
                          const EmbeddingContext& ctx, const QuadratureSpec& spec);

struct IdentityCheck {
  std::vector<Complex> lhs;
  std::vector<Complex> rhs;
  double max_rel_dev;
};

// Pointwise A_H(J* psi)(x) against (A_G psi)(x, 0) on sample points (i = 0).
IdentityCheck adjoint_identity_check(const SchwartzFn& psi, const EmbeddingContext& ctx,
                                     const std::vector<Vec>& samples,
                                     const QuadratureSpec& spec);

// ---- parabolic generator actions ----

struct Translation {
  Vec y0;
};
struct RotationGen {
  Mat r;  // orthogonal on the cell
};
struct DilationGen {
  double a;  // a > 0
};
using ParabolicGen = std::variant<Translation, RotationGen, DilationGen>;

enum class ModelSide { kPositionU, kPositionMinusU, kFourierHat };

SchwartzVec parabolic_action(const ParabolicGen& gen, const SchwartzVec& f,
                             const CSParams& p, ModelSide side);

// max |J(h.phi) - h.(J phi)| over sample points (y, t) on the Fourier side.
double j_equivariance_deviation(const SchwartzVec& phi_small, const EmbeddingContext& ctx,
                                const ParabolicGen& gen,
                                const std::vector<std::pair<Vec, double>>& samples);

}  // namespace csembed::embedding
