#include "srtlab/tax.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "srtlab/csv.hpp"

namespace srtlab {

TaxMatrix TaxMatrix::none(std::size_t lenderCount, std::size_t borrowerCount) {
  TaxMatrix t;
  t.kind = TaxKind::None;
  t.rate.assign(lenderCount, std::vector<double>(borrowerCount, 0.0));
  t.eslDelta.assign(lenderCount, std::vector<double>(borrowerCount, 0.0));
  return t;
}

TaxMatrix TaxMatrix::tobin(double kappa, std::size_t lenderCount, std::size_t borrowerCount) {
  if (kappa < 0.0) throw std::invalid_argument("TaxMatrix::tobin: negative rate");
  TaxMatrix t;
  t.kind = TaxKind::Tobin;
  t.flatRate = kappa;
  t.rate.assign(lenderCount, std::vector<double>(borrowerCount, kappa));
  t.eslDelta.assign(lenderCount, std::vector<double>(borrowerCount, 0.0));
  return t;
}

LiquidityMarket applyTax(const LiquidityMarket& market, const TaxMatrix& tax) {
  if (tax.rate.size() != market.lenders.size() ||
      (!tax.rate.empty() && tax.rate.front().size() != market.borrowers.size()))
    throw std::invalid_argument("applyTax: schedule dimensions do not match the market");
  QuoteSet quotes = market.quotes;
  for (std::size_t li = 0; li < tax.rate.size(); ++li)
    for (std::size_t bi = 0; bi < tax.rate[li].size(); ++bi) {
      if (tax.rate[li][bi] < 0.0) throw std::invalid_argument("applyTax: negative mark-up");
      quotes.taxMarkup[li][bi] = tax.rate[li][bi];
    }
  std::vector<std::string> warnings;  // taxed rates tie by construction; ties are benign here
  return buildPreferences(market.period, market.bankCount, quotes, market.reservationRate,
                          market.lenderMode, market.borrowerDefaultProb, &warnings);
}

std::vector<Matching> tobinEquilibria(const LiquidityMarket& market, double kappa,
                                      double enumerationLimit) {
  const TaxMatrix t = TaxMatrix::tobin(kappa, market.lenders.size(), market.borrowers.size());
  return enumerateEquilibria(applyTax(market, t), enumerationLimit);
}

bool isFeasibleMatching(const Matching& matching, const LiquidityMarket& market) {
  for (std::size_t bi = 0; bi < market.borrowers.size(); ++bi) {
    const int borrowerId = market.borrowers[bi];
    const int p = matching.partner(borrowerId);
    if (p == borrowerId) continue;
    const int li = market.lenderIndexOf(p);
    if (li < 0 || !market.feasiblePair(li, static_cast<int>(bi))) return false;
  }
  for (int lenderId : market.lenders) {
    const int p = matching.partner(lenderId);
    if (p != lenderId && market.borrowerIndexOf(p) < 0) return false;
  }
  return true;
}

namespace {

bool visitFeasible(const LiquidityMarket& market, Matching& m, std::vector<bool>& usedLender,
                   std::size_t bi, int matchedSoFar, int volume,
                   const std::function<bool(const Matching&)>& fn) {
  const int B = static_cast<int>(market.borrowers.size());
  const int remaining = B - static_cast<int>(bi);
  if (volume >= 0 && matchedSoFar + remaining < volume) return true;  // cannot reach it anymore
  if (bi == market.borrowers.size()) {
    if (volume >= 0 && matchedSoFar != volume) return true;
    return fn(m);
  }
  const int borrowerId = market.borrowers[bi];
  // Lenders in ascending id order; staying alone is explored last so the
  // visit order is lexicographic in the assignment vector.
  if (volume < 0 || matchedSoFar < volume) {
    for (std::size_t li = 0; li < market.lenders.size(); ++li) {
      if (usedLender[li] || !market.feasiblePair(static_cast<int>(li), static_cast<int>(bi)))
        continue;
      usedLender[li] = true;
      m.match(borrowerId, market.lenders[li]);
      const bool keepGoing = visitFeasible(market, m, usedLender, bi + 1, matchedSoFar + 1, volume, fn);
      m.unmatch(borrowerId);
      usedLender[li] = false;
      if (!keepGoing) return false;
    }
  }
  return visitFeasible(market, m, usedLender, bi + 1, matchedSoFar, volume, fn);
}

}  // namespace

void forEachFeasibleMatching(const LiquidityMarket& market, int volume,
                             const std::function<bool(const Matching&)>& fn) {
  Matching m(market.bankCount);
  std::vector<bool> usedLender(market.lenders.size(), false);
  visitFeasible(market, m, usedLender, 0, 0, volume, fn);
}

double defaultZeta(const LiquidityMarket& market, const std::vector<double>& equity) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t li = 0; li < market.lenders.size(); ++li)
    for (std::size_t bi = 0; bi < market.borrowers.size(); ++bi) {
      const double r = market.rate(static_cast<int>(li), static_cast<int>(bi));
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  const double spread = std::max(hi > lo ? hi - lo : 0.0, 1e-4);
  double maxEquity = 0.0;
  for (double e : equity) maxEquity = std::max(maxEquity, e);
  return maxEquity > 0.0 ? 10.0 * spread / maxEquity : 0.0;
}

TaxMatrix buildSystemicRiskTax(const LiquidityMarket& market, const Matching& target,
                               const SrtParams& params, const EslDeltaFn& eslDelta) {
  if (params.epsilon <= 0.0)
    throw std::invalid_argument("buildSystemicRiskTax: epsilon must be positive");
  if (!isFeasibleMatching(target, market))
    throw std::invalid_argument(
        "buildSystemicRiskTax: target matching is infeasible at untaxed rates");

  const std::size_t L = market.lenders.size();
  const std::size_t B = market.borrowers.size();
  TaxMatrix tax;
  tax.kind = TaxKind::Srt;
  tax.rate.assign(L, std::vector<double>(B, 0.0));
  tax.eslDelta.assign(L, std::vector<double>(B, 0.0));

  for (std::size_t bi = 0; bi < B; ++bi) {
    const int borrowerId = market.borrowers[bi];
    const int targetPartner = target.partner(borrowerId);
    if (targetPartner == borrowerId) {
      // This borrower is meant to stay out: price every lender past its
      // reservation rate.
      for (std::size_t li = 0; li < L; ++li) {
        const double raw = market.reservationRate[bi] -
                           market.rate(static_cast<int>(li), static_cast<int>(bi)) + params.epsilon;
        tax.rate[li][bi] = std::max(0.0, raw);
      }
      continue;
    }
    const int ti = market.lenderIndexOf(targetPartner);
    const double targetRate = market.rate(ti, static_cast<int>(bi));
    for (std::size_t li = 0; li < L; ++li) {
      if (static_cast<int>(li) == ti) continue;  // the desired match stays untaxed
      const double delta = eslDelta ? eslDelta(market.lenders[li], borrowerId) : 0.0;
      tax.eslDelta[li][bi] = delta;
      const double raw = targetRate - market.rate(static_cast<int>(li), static_cast<int>(bi)) +
                         params.epsilon + params.zeta * std::max(0.0, delta);
      tax.rate[li][bi] = std::max(0.0, raw);
    }
  }

  // Construction postconditions: on-path pairs untaxed and strictly on top,
  // opted-out borrowers priced out entirely.
  const LiquidityMarket taxed = applyTax(market, tax);
  for (std::size_t bi = 0; bi < B; ++bi) {
    const int borrowerId = market.borrowers[bi];
    const int targetPartner = target.partner(borrowerId);
    if (targetPartner == borrowerId) {
      for (std::size_t li = 0; li < L; ++li)
        if (taxed.feasiblePair(static_cast<int>(li), static_cast<int>(bi)))
          throw std::logic_error("buildSystemicRiskTax: opted-out borrower still has offers");
      continue;
    }
    const int ti = market.lenderIndexOf(targetPartner);
    if (tax.rate[static_cast<std::size_t>(ti)][bi] != 0.0)
      throw std::logic_error("buildSystemicRiskTax: target pair was taxed");
    const double top = taxed.rate(ti, static_cast<int>(bi));
    if (!(top < taxed.reservationRate[bi]))
      throw std::logic_error("buildSystemicRiskTax: target pair priced past the reservation rate");
    for (std::size_t li = 0; li < L; ++li)
      if (static_cast<int>(li) != ti &&
          !(top < taxed.rate(static_cast<int>(li), static_cast<int>(bi))))
        throw std::logic_error("buildSystemicRiskTax: target lender is not the strict top");
  }
  return tax;
}

Matching uniqueEquilibriumUnderTax(const LiquidityMarket& market, const TaxMatrix& tax,
                                   bool verify, double enumerationLimit) {
  if (tax.kind == TaxKind::Tobin)
    throw std::invalid_argument(
        "uniqueEquilibriumUnderTax: a flat tax cannot pin a unique matching");
  const LiquidityMarket taxed = applyTax(market, tax);

  Matching m(market.bankCount);
  for (std::size_t bi = 0; bi < taxed.borrowers.size(); ++bi) {
    const int cut = taxed.reservationCut[bi];
    if (cut == 0) continue;  // priced out: the borrower stays alone
    const auto& ranking = taxed.borrowerRanking[bi];
    const int top = ranking[0];
    if (cut > 1 && taxed.rate(ranking[0], static_cast<int>(bi)) ==
                       taxed.rate(ranking[1], static_cast<int>(bi)))
      throw std::invalid_argument("uniqueEquilibriumUnderTax: borrower " +
                                  std::to_string(taxed.borrowers[bi]) +
                                  " has no strict top choice (malformed schedule)");
    const int lenderId = taxed.lenders[static_cast<std::size_t>(top)];
    if (m.isMatched(lenderId))
      throw std::invalid_argument("uniqueEquilibriumUnderTax: lender " + std::to_string(lenderId) +
                                  " is the top choice of two borrowers (malformed schedule)");
    m.match(lenderId, taxed.borrowers[bi]);
  }

  if (verify &&
      countMatchings(static_cast<int>(market.lenders.size()),
                     static_cast<int>(market.borrowers.size())) <= enumerationLimit) {
    const std::vector<Matching> stable = enumerateEquilibria(taxed, enumerationLimit);
    if (stable.size() != 1 || !(stable.front() == m))
      throw std::logic_error("uniqueEquilibriumUnderTax: taxed market is not uniquely stable");
  }
  return m;
}

SrtOptimum optimizeSystemicRiskTax(const LiquidityMarket& market,
                                   const NetExposureMatrix& priorExposure,
                                   const std::vector<double>& equity,
                                   const std::vector<double>& firstFailureProb, int targetVolume,
                                   double loanSize, const SrtParams& params) {
  if (targetVolume < 0) throw std::invalid_argument("optimizeSystemicRiskTax: negative volume");
  if (priorExposure.size() != market.bankCount)
    throw std::invalid_argument("optimizeSystemicRiskTax: exposure matrix size mismatch");
  const auto start = std::chrono::steady_clock::now();

  SrtOptimum best;
  best.esl = std::numeric_limits<double>::infinity();
  bool found = false;
  forEachFeasibleMatching(market, targetVolume, [&](const Matching& m) {
    NetExposureMatrix withLoans = priorExposure;
    for (int lenderId : market.lenders) {
      const int p = m.partner(lenderId);
      if (p != lenderId) withLoans.addLoan(lenderId, p, loanSize);
    }
    const double esl = expectedSystemicLoss(withLoans, equity, firstFailureProb);
    ++best.candidatesEvaluated;
    if (!found || esl < best.esl) {  // ties keep the lexicographically first candidate
      best.esl = esl;
      best.matching = m;
      found = true;
    }
    return true;
  });
  if (!found)
    throw std::invalid_argument("optimizeSystemicRiskTax: no feasible matching with volume " +
                                std::to_string(targetVolume));

  SrtParams effective = params;
  if (effective.zeta == 0.0) effective.zeta = defaultZeta(market, equity);
  const EslDeltaFn deltaFn = [&](int lenderId, int borrowerId) {
    return edgeEslDelta(priorExposure, equity, firstFailureProb, lenderId, borrowerId, loanSize);
  };
  best.tax = buildSystemicRiskTax(market, best.matching, effective, deltaFn);
  best.wallSeconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return best;
}

void writeTaxScheduleCsv(const LiquidityMarket& market, const TaxMatrix& tax, std::ostream& out) {
  out << "lender,borrower,tax,esl_delta\n";
  for (std::size_t li = 0; li < market.lenders.size(); ++li)
    for (std::size_t bi = 0; bi < market.borrowers.size(); ++bi)
      out << market.lenders[li] << ',' << market.borrowers[bi] << ','
          << csv::formatDouble(tax.rate[li][bi]) << ',' << csv::formatDouble(tax.eslDelta[li][bi])
          << '\n';
}

}  // namespace srtlab
