#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "srtlab/cascade.hpp"
#include "srtlab/matching.hpp"

namespace srtlab {

enum class TaxKind { None, Tobin, Srt };

// Nonnegative rate mark-ups per (lender, borrower) pair. A flat tax is the
// constant special case; the transaction-specific schedule leaves its
// target matching untaxed.
struct TaxMatrix {
  TaxKind kind = TaxKind::None;
  double flatRate = 0.0;                      // the constant, when kind == Tobin
  std::vector<std::vector<double>> rate;      // lender x borrower
  std::vector<std::vector<double>> eslDelta;  // systemic-loss component that priced each cell

  static TaxMatrix none(std::size_t lenderCount, std::size_t borrowerCount);
  static TaxMatrix tobin(double kappa, std::size_t lenderCount, std::size_t borrowerCount);
};

// Rebuilds the market with the mark-ups added to every quoted rate;
// preference lists are recomputed from the taxed rates.
LiquidityMarket applyTax(const LiquidityMarket& market, const TaxMatrix& tax);

// Stable set under a flat mark-up. Preference order is unchanged, only
// reservation cuts move, so volume can only shrink.
std::vector<Matching> tobinEquilibria(const LiquidityMarket& market, double kappa,
                                      double enumerationLimit = 2e6);

// A matching is feasible when every matched pair clears its borrower's
// reservation rate at untaxed quotes; such matchings (and only such) can be
// pinned as the unique equilibrium by some tax schedule.
bool isFeasibleMatching(const Matching& matching, const LiquidityMarket& market);

// Visits feasible matchings; volume < 0 means any volume. Choices are
// explored borrower-by-borrower with lenders in ascending id order and
// self last, so the visit order is the lexicographic order of the
// assignment vectors.
void forEachFeasibleMatching(const LiquidityMarket& market, int volume,
                             const std::function<bool(const Matching&)>& fn);

struct SrtParams {
  double epsilon = 1e-6;  // minimum taxed-rate gap above the target lender
  double zeta = 0.0;      // weight on the systemic-loss component; 0 = auto
};

// Auto weight: scaled so that a full-equity systemic-loss difference moves
// rates by about ten times the quoted-rate spread, which makes the
// systemic-loss ordering dominate among off-target pairs.
double defaultZeta(const LiquidityMarket& market, const std::vector<double>& equity);

using EslDeltaFn = std::function<double(int lenderId, int borrowerId)>;

// Builds the transaction-specific schedule that pins `target` as the unique
// equilibrium: target pairs pay zero; any other pair is lifted above the
// target lender's rate by epsilon plus the priced systemic-loss increase;
// borrowers meant to stay out are priced past their reservation rate. Raw
// negative values are clamped to zero (the pair is already dominated).
TaxMatrix buildSystemicRiskTax(const LiquidityMarket& market, const Matching& target,
                               const SrtParams& params, const EslDeltaFn& eslDelta);

// The unique stable matching under a schedule built by
// buildSystemicRiskTax: every borrower takes its strict taxed top (or stays
// out). Throws on a flat tax, which cannot pin uniqueness, on ambiguous
// tops, and on colliding tops. When verify is true and the market is small
// enough, uniqueness is re-checked by exhaustive stability scan.
Matching uniqueEquilibriumUnderTax(const LiquidityMarket& market, const TaxMatrix& tax,
                                   bool verify = true, double enumerationLimit = 2e6);

struct SrtOptimum {
  Matching matching;
  TaxMatrix tax;
  double esl = 0.0;
  std::uint64_t candidatesEvaluated = 0;
  double wallSeconds = 0.0;
};

// Exact search over all feasible matchings with the requested volume,
// minimizing the expected systemic loss of the resulting exposure network
// (prior exposures plus the new loans). Ties keep the lexicographically
// first assignment, so results are run-to-run identical. Throws when the
// volume is unreachable.
SrtOptimum optimizeSystemicRiskTax(const LiquidityMarket& market,
                                   const NetExposureMatrix& priorExposure,
                                   const std::vector<double>& equity,
                                   const std::vector<double>& firstFailureProb, int targetVolume,
                                   double loanSize, const SrtParams& params);

// Schedule export: lender,borrower,tax,esl_delta.
void writeTaxScheduleCsv(const LiquidityMarket& market, const TaxMatrix& tax, std::ostream& out);

}  // namespace srtlab
