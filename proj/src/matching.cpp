#include "srtlab/matching.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace srtlab {

void Matching::match(int a, int b) {
  unmatch(a);
  unmatch(b);
  partner_[static_cast<std::size_t>(a)] = b;
  partner_[static_cast<std::size_t>(b)] = a;
}

void Matching::unmatch(int bank) {
  const int p = partner(bank);
  partner_[static_cast<std::size_t>(p)] = p;
  partner_[static_cast<std::size_t>(bank)] = bank;
}

int Matching::volume() const {
  int matched = 0;
  for (int i = 0; i < size(); ++i)
    if (isMatched(i)) ++matched;
  return matched / 2;
}

int LiquidityMarket::lenderIndexOf(int bankId) const {
  const auto it = std::lower_bound(lenders.begin(), lenders.end(), bankId);
  if (it == lenders.end() || *it != bankId) return -1;
  return static_cast<int>(it - lenders.begin());
}

int LiquidityMarket::borrowerIndexOf(int bankId) const {
  const auto it = std::lower_bound(borrowers.begin(), borrowers.end(), bankId);
  if (it == borrowers.end() || *it != bankId) return -1;
  return static_cast<int>(it - borrowers.begin());
}

int LiquidityMarket::borrowerRank(int borrowerIdx, int lenderIdxOrSelf) const {
  const auto& ranking = borrowerRanking[static_cast<std::size_t>(borrowerIdx)];
  const int cut = reservationCut[static_cast<std::size_t>(borrowerIdx)];
  if (lenderIdxOrSelf == kSelf) return cut;
  const auto it = std::find(ranking.begin(), ranking.end(), lenderIdxOrSelf);
  if (it == ranking.end()) throw std::invalid_argument("borrowerRank: unknown lender index");
  const int pos = static_cast<int>(it - ranking.begin());
  return pos < cut ? pos : pos + 1;  // self occupies the slot at the cut
}

int LiquidityMarket::lenderRank(int lenderIdx, int borrowerIdxOrSelf) const {
  if (lenderMode != LenderPreferences::Strict)
    throw std::logic_error("lenderRank: lenders are indifferent in this market");
  const auto& ranking = lenderRanking[static_cast<std::size_t>(lenderIdx)];
  if (borrowerIdxOrSelf == kSelf) return static_cast<int>(ranking.size());
  const auto it = std::find(ranking.begin(), ranking.end(), borrowerIdxOrSelf);
  if (it == ranking.end()) throw std::invalid_argument("lenderRank: unknown borrower index");
  return static_cast<int>(it - ranking.begin());
}

void LiquidityMarket::validate() const {
  if (!std::is_sorted(lenders.begin(), lenders.end()) ||
      !std::is_sorted(borrowers.begin(), borrowers.end()))
    throw std::invalid_argument("LiquidityMarket: sides must be sorted by bank id");
  for (int b : borrowers)
    if (lenderIndexOf(b) >= 0)
      throw std::invalid_argument("LiquidityMarket: bank on both sides of the market");
  if (reservationRate.size() != borrowers.size() ||
      borrowerRanking.size() != borrowers.size() || reservationCut.size() != borrowers.size())
    throw std::invalid_argument("LiquidityMarket: borrower-side vectors misaligned");
  for (std::size_t bi = 0; bi < borrowers.size(); ++bi) {
    const auto& ranking = borrowerRanking[bi];
    if (ranking.size() != lenders.size())
      throw std::invalid_argument("LiquidityMarket: ranking must list every lender");
    const int cut = reservationCut[bi];
    for (std::size_t pos = 0; pos < ranking.size(); ++pos) {
      const bool feasible =
          rate(ranking[pos], static_cast<int>(bi)) < reservationRate[bi];
      if ((static_cast<int>(pos) < cut) != feasible)
        throw std::invalid_argument("LiquidityMarket: reservation cut inconsistent with rates");
    }
  }
  if (lenderMode == LenderPreferences::Strict && lenderRanking.size() != lenders.size())
    throw std::invalid_argument("LiquidityMarket: strict mode requires lender rankings");
}

ShockDraw drawShocks(const std::vector<BankState>& banks, double y, Rng& rng) {
  if (y < 0.0 || y > 1.0) throw std::invalid_argument("drawShocks: y must be in [0,1]");
  ShockDraw draw;
  for (const BankState& bank : banks) {
    const double u = rng.uniform01();  // consumed even for bankrupt banks
    if (bank.bankrupt) continue;
    if (u < y / 2.0)
      draw.lenders.push_back(bank.id);
    else if (u < y)
      draw.borrowers.push_back(bank.id);
  }
  return draw;
}

LiquidityMarket buildPreferences(long period, int bankCount, const QuoteSet& quotes,
                                 const std::vector<double>& reservationRate,
                                 LenderPreferences mode,
                                 const std::vector<double>& borrowerDefaultProb,
                                 std::vector<std::string>* warnings) {
  LiquidityMarket mk;
  mk.period = period;
  mk.bankCount = bankCount;
  mk.lenders = quotes.lenders;
  mk.borrowers = quotes.borrowers;
  mk.quotes = quotes;
  mk.reservationRate = reservationRate;
  mk.lenderMode = mode;
  mk.borrowerDefaultProb = borrowerDefaultProb;

  const int L = static_cast<int>(mk.lenders.size());
  const int B = static_cast<int>(mk.borrowers.size());

  auto warn = [&](const std::string& msg) {
    if (warnings)
      warnings->push_back(msg);
    else
      std::cerr << "warning: " << msg << '\n';
  };

  mk.borrowerRanking.resize(static_cast<std::size_t>(B));
  mk.reservationCut.resize(static_cast<std::size_t>(B));
  for (int bi = 0; bi < B; ++bi) {
    auto& ranking = mk.borrowerRanking[static_cast<std::size_t>(bi)];
    ranking.resize(static_cast<std::size_t>(L));
    std::iota(ranking.begin(), ranking.end(), 0);
    std::sort(ranking.begin(), ranking.end(), [&](int a, int b) {
      const double ra = mk.rate(a, bi), rb = mk.rate(b, bi);
      if (ra != rb) return ra < rb;
      return mk.lenders[static_cast<std::size_t>(a)] < mk.lenders[static_cast<std::size_t>(b)];
    });
    for (int pos = 1; pos < L; ++pos) {
      const int a = ranking[static_cast<std::size_t>(pos - 1)];
      const int b = ranking[static_cast<std::size_t>(pos)];
      if (mk.rate(a, bi) == mk.rate(b, bi))
        warn("rate tie between lenders " + std::to_string(mk.lenders[static_cast<std::size_t>(a)]) +
             " and " + std::to_string(mk.lenders[static_cast<std::size_t>(b)]) + " for borrower " +
             std::to_string(mk.borrowers[static_cast<std::size_t>(bi)]) +
             "; order falls back to bank index");
    }
    int cut = 0;
    while (cut < L &&
           mk.rate(ranking[static_cast<std::size_t>(cut)], bi) <
               mk.reservationRate[static_cast<std::size_t>(bi)])
      ++cut;
    mk.reservationCut[static_cast<std::size_t>(bi)] = cut;
  }

  if (mode == LenderPreferences::Strict) {
    if (static_cast<int>(borrowerDefaultProb.size()) != B)
      throw std::invalid_argument("buildPreferences: strict mode needs borrower risk levels");
    mk.lenderRanking.assign(static_cast<std::size_t>(L), {});
    std::vector<int> byRisk(static_cast<std::size_t>(B));
    std::iota(byRisk.begin(), byRisk.end(), 0);
    std::sort(byRisk.begin(), byRisk.end(), [&](int a, int b) {
      const double pa = borrowerDefaultProb[static_cast<std::size_t>(a)];
      const double pb = borrowerDefaultProb[static_cast<std::size_t>(b)];
      if (pa != pb) return pa < pb;
      return mk.borrowers[static_cast<std::size_t>(a)] < mk.borrowers[static_cast<std::size_t>(b)];
    });
    for (int pos = 1; pos < B; ++pos)
      if (borrowerDefaultProb[static_cast<std::size_t>(byRisk[static_cast<std::size_t>(pos - 1)])] ==
          borrowerDefaultProb[static_cast<std::size_t>(byRisk[static_cast<std::size_t>(pos)])])
        warn("default-probability tie between borrowers; order falls back to bank index");
    for (int li = 0; li < L; ++li) mk.lenderRanking[static_cast<std::size_t>(li)] = byRisk;
  }

  mk.validate();
  return mk;
}

std::string StabilityReport::describe() const {
  if (stable) return "stable";
  std::ostringstream os;
  switch (violation) {
    case StabilityViolation::PairwiseDeviation:
      os << "blocking pair (lender " << witness[0] << ", borrower " << witness[1] << ")";
      break;
    case StabilityViolation::CoalitionSwap: {
      os << "borrower coalition swap cycle (";
      for (std::size_t i = 0; i < witness.size(); ++i) os << (i ? " " : "") << witness[i];
      os << ")";
      break;
    }
    case StabilityViolation::UnilateralDeviation:
      if (witness.size() == 1)
        os << "borrower " << witness[0] << " prefers staying alone";
      else
        os << "borrower " << witness[1] << " prefers idle lender " << witness[0];
      break;
    case StabilityViolation::None:
      break;
  }
  return os.str();
}

namespace {

// Strict preference must compare rates, not list positions: the index
// tie-break that makes lists deterministic is not a strict preference, and
// taxed rates can tie exactly.
double borrowerCost(const LiquidityMarket& mk, int borrowerIdx, int lenderIdxOrSelf) {
  if (lenderIdxOrSelf == LiquidityMarket::kSelf)
    return mk.reservationRate[static_cast<std::size_t>(borrowerIdx)];
  return mk.rate(lenderIdxOrSelf, borrowerIdx);
}

// The borrower's current assignment as a lender index, or kSelf.
int assignmentOption(const Matching& m, const LiquidityMarket& mk, int borrowerIdx) {
  const int borrowerId = mk.borrowers[static_cast<std::size_t>(borrowerIdx)];
  const int p = m.partner(borrowerId);
  return p == borrowerId ? LiquidityMarket::kSelf : mk.lenderIndexOf(p);
}

double assignmentCost(const Matching& m, const LiquidityMarket& mk, int borrowerIdx) {
  return borrowerCost(mk, borrowerIdx, assignmentOption(m, mk, borrowerIdx));
}

// Strict-mode lender preference: lending to anyone beats idling, safer
// borrowers beat riskier ones, equal risk is indifference.
bool lenderStrictlyPrefers(const LiquidityMarket& mk, int a, int b) {
  if (a == LiquidityMarket::kSelf) return false;
  if (b == LiquidityMarket::kSelf) return true;
  return mk.borrowerDefaultProb[static_cast<std::size_t>(a)] <
         mk.borrowerDefaultProb[static_cast<std::size_t>(b)];
}

}  // namespace

StabilityReport isStable(const Matching& matching, const LiquidityMarket& market) {
  const int L = static_cast<int>(market.lenders.size());
  const int B = static_cast<int>(market.borrowers.size());

  // (I) Pairwise deviation needs strict preferences on the lender side;
  // indifferent lenders never strictly gain from switching.
  if (market.lenderMode == LenderPreferences::Strict) {
    for (int li = 0; li < L; ++li) {
      const int lenderId = market.lenders[static_cast<std::size_t>(li)];
      const int lp = matching.partner(lenderId);
      const int lenderCurrent =
          (lp == lenderId) ? LiquidityMarket::kSelf : market.borrowerIndexOf(lp);
      for (int bi = 0; bi < B; ++bi) {
        const int borrowerId = market.borrowers[static_cast<std::size_t>(bi)];
        if (lp == borrowerId) continue;
        if (!(borrowerCost(market, bi, li) < assignmentCost(matching, market, bi))) continue;
        if (!lenderStrictlyPrefers(market, bi, lenderCurrent)) continue;
        return {false, StabilityViolation::PairwiseDeviation, {lenderId, borrowerId}};
      }
    }
  }

  // (II) Coalition swap: cycle in the envy digraph over matched borrowers.
  // Only meaningful when the lenders involved are indifferent, i.e. in
  // indifferent mode; a cycle is a permutation of assigned lenders in which
  // every member strictly improves.
  if (market.lenderMode == LenderPreferences::Indifferent) {
    std::vector<int> matchedBorrowers;
    for (int bi = 0; bi < B; ++bi)
      if (matching.isMatched(market.borrowers[static_cast<std::size_t>(bi)]))
        matchedBorrowers.push_back(bi);
    const int M = static_cast<int>(matchedBorrowers.size());
    std::vector<std::vector<int>> envy(static_cast<std::size_t>(M));
    for (int a = 0; a < M; ++a) {
      const int bi = matchedBorrowers[static_cast<std::size_t>(a)];
      const double own = assignmentCost(matching, market, bi);
      for (int b = 0; b < M; ++b) {
        if (a == b) continue;
        const int otherBorrowerId =
            market.borrowers[static_cast<std::size_t>(matchedBorrowers[static_cast<std::size_t>(b)])];
        const int otherLender = matching.partner(otherBorrowerId);
        if (borrowerCost(market, bi, market.lenderIndexOf(otherLender)) < own)
          envy[static_cast<std::size_t>(a)].push_back(b);
      }
    }
    std::vector<int> color(static_cast<std::size_t>(M), 0);  // 0 new, 1 on stack, 2 done
    std::vector<int> parent(static_cast<std::size_t>(M), -1);
    std::function<std::vector<int>(int)> dfs = [&](int v) -> std::vector<int> {
      color[static_cast<std::size_t>(v)] = 1;
      for (int w : envy[static_cast<std::size_t>(v)]) {
        if (color[static_cast<std::size_t>(w)] == 1) {
          std::vector<int> cycle{w};
          for (int x = v; x != w; x = parent[static_cast<std::size_t>(x)]) cycle.push_back(x);
          std::reverse(cycle.begin(), cycle.end());
          return cycle;
        }
        if (color[static_cast<std::size_t>(w)] == 0) {
          parent[static_cast<std::size_t>(w)] = v;
          auto cycle = dfs(w);
          if (!cycle.empty()) return cycle;
        }
      }
      color[static_cast<std::size_t>(v)] = 2;
      return {};
    };
    for (int v = 0; v < M; ++v) {
      if (color[static_cast<std::size_t>(v)] != 0) continue;
      const auto cycle = dfs(v);
      if (!cycle.empty()) {
        std::vector<int> witness;
        for (int a : cycle)
          witness.push_back(market.borrowers[static_cast<std::size_t>(
              matchedBorrowers[static_cast<std::size_t>(a)])]);
        return {false, StabilityViolation::CoalitionSwap, witness};
      }
    }
  }

  // (III) Unilateral deviation: matched borrower preferring to stay alone,
  // or any borrower preferring an idle lender over its assignment.
  for (int bi = 0; bi < B; ++bi) {
    const int borrowerId = market.borrowers[static_cast<std::size_t>(bi)];
    if (matching.isMatched(borrowerId) &&
        borrowerCost(market, bi, LiquidityMarket::kSelf) < assignmentCost(matching, market, bi))
      return {false, StabilityViolation::UnilateralDeviation, {borrowerId}};
  }
  for (int bi = 0; bi < B; ++bi) {
    const int borrowerId = market.borrowers[static_cast<std::size_t>(bi)];
    const double own = assignmentCost(matching, market, bi);
    for (int li = 0; li < L; ++li) {
      const int lenderId = market.lenders[static_cast<std::size_t>(li)];
      if (matching.isMatched(lenderId)) continue;
      if (borrowerCost(market, bi, li) < own)
        return {false, StabilityViolation::UnilateralDeviation, {lenderId, borrowerId}};
    }
  }
  return {};
}

double countMatchings(int lenderCount, int borrowerCount) {
  const int kMax = std::min(lenderCount, borrowerCount);
  double total = 0.0;
  for (int k = 0; k <= kMax; ++k) {
    // C(L,k) * C(B,k) * k!
    double term = 1.0;
    for (int i = 0; i < k; ++i)
      term *= static_cast<double>(lenderCount - i) * static_cast<double>(borrowerCount - i) /
              static_cast<double>(i + 1);
    total += term;
  }
  return total;
}

namespace {

bool visitMatchings(const LiquidityMarket& market, Matching& m, std::vector<bool>& usedLender,
                    int bi, const std::function<bool(const Matching&)>& fn) {
  const int B = static_cast<int>(market.borrowers.size());
  if (bi == B) return fn(m);
  if (!visitMatchings(market, m, usedLender, bi + 1, fn)) return false;  // borrower stays alone
  const int borrowerId = market.borrowers[static_cast<std::size_t>(bi)];
  for (std::size_t li = 0; li < market.lenders.size(); ++li) {
    if (usedLender[li]) continue;
    usedLender[li] = true;
    m.match(borrowerId, market.lenders[li]);
    const bool keepGoing = visitMatchings(market, m, usedLender, bi + 1, fn);
    m.unmatch(borrowerId);
    usedLender[li] = false;
    if (!keepGoing) return false;
  }
  return true;
}

}  // namespace

void forEachMatching(const LiquidityMarket& market,
                     const std::function<bool(const Matching&)>& fn) {
  Matching m(market.bankCount);
  std::vector<bool> usedLender(market.lenders.size(), false);
  visitMatchings(market, m, usedLender, 0, fn);
}

std::vector<Matching> enumerateEquilibria(const LiquidityMarket& market,
                                          double enumerationLimit) {
  const double count =
      countMatchings(static_cast<int>(market.lenders.size()),
                     static_cast<int>(market.borrowers.size()));
  if (count > enumerationLimit)
    throw std::length_error("enumerateEquilibria: " + std::to_string(count) +
                            " candidate matchings exceed the enumeration limit");
  std::vector<Matching> stable;
  forEachMatching(market, [&](const Matching& m) {
    if (isStable(m, market).stable) stable.push_back(m);
    return true;
  });
  return stable;
}

bool isBilateralEquilibrium(const Matching& matching, const LiquidityMarket& market) {
  const int B = static_cast<int>(market.borrowers.size());
  for (int bi = 0; bi < B; ++bi) {
    const int borrowerId = market.borrowers[static_cast<std::size_t>(bi)];
    const int p = matching.partner(borrowerId);
    if (p != borrowerId && !market.feasiblePair(market.lenderIndexOf(p), bi)) return false;
    const double own = assignmentCost(matching, market, bi);
    for (std::size_t li = 0; li < market.lenders.size(); ++li) {
      if (matching.isMatched(market.lenders[li])) continue;
      if (borrowerCost(market, bi, static_cast<int>(li)) < own) return false;
    }
  }
  return true;
}

Matching selectEquilibrium(const LiquidityMarket& market, Rng& rng) {
  std::vector<int> order(market.borrowers.size());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  Matching m(market.bankCount);
  std::vector<bool> taken(market.lenders.size(), false);
  for (int bi : order) {
    const auto& ranking = market.borrowerRanking[static_cast<std::size_t>(bi)];
    const int cut = market.reservationCut[static_cast<std::size_t>(bi)];
    for (int pos = 0; pos < cut; ++pos) {
      const int li = ranking[static_cast<std::size_t>(pos)];
      if (taken[static_cast<std::size_t>(li)]) continue;
      taken[static_cast<std::size_t>(li)] = true;
      m.match(market.borrowers[static_cast<std::size_t>(bi)],
              market.lenders[static_cast<std::size_t>(li)]);
      break;
    }
  }
  const StabilityReport report = isStable(m, market);
  if (!report.stable)
    throw std::logic_error("selectEquilibrium: serial dictatorship left the stable set (" +
                           report.describe() + ")");
  return m;
}

Matching strictStableMatching(const LiquidityMarket& market) {
  if (market.lenderMode != LenderPreferences::Strict)
    throw std::invalid_argument("strictStableMatching: market must have strict lender preferences");
  const int L = static_cast<int>(market.lenders.size());
  const int B = static_cast<int>(market.borrowers.size());

  std::vector<int> lenderOrder(static_cast<std::size_t>(L));
  std::iota(lenderOrder.begin(), lenderOrder.end(), 0);
  std::sort(lenderOrder.begin(), lenderOrder.end(), [&](int a, int b) {
    const double ra = market.quotes.baseRate[static_cast<std::size_t>(a)];
    const double rb = market.quotes.baseRate[static_cast<std::size_t>(b)];
    if (ra != rb) return ra < rb;
    return market.lenders[static_cast<std::size_t>(a)] < market.lenders[static_cast<std::size_t>(b)];
  });

  Matching m(market.bankCount);
  std::vector<bool> borrowerMatched(static_cast<std::size_t>(B), false);
  for (int li : lenderOrder) {
    // Every still-unmatched borrower that can afford this lender solicits;
    // the lender takes the safest of them.
    int best = -1;
    for (int bi = 0; bi < B; ++bi) {
      if (borrowerMatched[static_cast<std::size_t>(bi)] || !market.feasiblePair(li, bi)) continue;
      if (best < 0) {
        best = bi;
        continue;
      }
      const double pBest = market.borrowerDefaultProb[static_cast<std::size_t>(best)];
      const double pCur = market.borrowerDefaultProb[static_cast<std::size_t>(bi)];
      if (pCur < pBest ||
          (pCur == pBest && market.borrowers[static_cast<std::size_t>(bi)] <
                                market.borrowers[static_cast<std::size_t>(best)]))
        best = bi;
    }
    if (best < 0) continue;
    borrowerMatched[static_cast<std::size_t>(best)] = true;
    m.match(market.lenders[static_cast<std::size_t>(li)],
            market.borrowers[static_cast<std::size_t>(best)]);
  }
  return m;
}

std::vector<WeightedLoan> multiRoundMatching(const std::vector<BankState>& banks,
                                             const std::vector<double>& signedShock,
                                             const std::vector<double>& borrowerDefaultProb,
                                             int maturity, Rng& rng) {
  if (signedShock.size() != banks.size() || borrowerDefaultProb.size() != banks.size())
    throw std::invalid_argument("multiRoundMatching: per-bank vectors misaligned");
  constexpr double kResidualTol = 1e-12;

  std::vector<double> residual = signedShock;
  std::vector<WeightedLoan> loans;
  for (int round = 1;; ++round) {
    std::vector<int> lenders, borrowers;
    for (const BankState& bank : banks) {
      if (bank.bankrupt) continue;
      const double r = residual[static_cast<std::size_t>(bank.id)];
      if (r > kResidualTol)
        lenders.push_back(bank.id);
      else if (r < -kResidualTol)
        borrowers.push_back(bank.id);
    }
    if (lenders.empty() || borrowers.empty()) break;

    std::vector<double> baseRates, probs, reservations;
    for (int l : lenders) baseRates.push_back(banks[static_cast<std::size_t>(l)].depositRate);
    for (int b : borrowers) {
      probs.push_back(borrowerDefaultProb[static_cast<std::size_t>(b)]);
      reservations.push_back(banks[static_cast<std::size_t>(b)].reservationRate);
    }
    const QuoteSet quotes = buildQuotes(lenders, borrowers, baseRates, probs, maturity);
    const LiquidityMarket market =
        buildPreferences(round, static_cast<int>(banks.size()), quotes, reservations,
                         LenderPreferences::Indifferent, probs);
    const Matching m = selectEquilibrium(market, rng);
    if (m.volume() == 0) break;

    for (int l : lenders) {
      const int b = m.partner(l);
      if (b == l) continue;
      const double amount =
          std::min(residual[static_cast<std::size_t>(l)], -residual[static_cast<std::size_t>(b)]);
      residual[static_cast<std::size_t>(l)] -= amount;
      residual[static_cast<std::size_t>(b)] += amount;
      loans.push_back({l, b, amount, round});
    }
  }
  return loans;
}

void writeMarketJson(const LiquidityMarket& market, std::ostream& out) {
  nlohmann::json j;
  j["period"] = market.period;
  j["bank_count"] = market.bankCount;
  j["lenders"] = market.lenders;
  j["borrowers"] = market.borrowers;
  j["base_rate"] = market.quotes.baseRate;
  j["premium"] = market.quotes.premium;
  j["tax_markup"] = market.quotes.taxMarkup;
  j["reservation_rate"] = market.reservationRate;
  j["lender_mode"] =
      market.lenderMode == LenderPreferences::Indifferent ? "indifferent" : "strict";
  j["borrower_default_prob"] = market.borrowerDefaultProb;
  j["borrower_ranking"] = market.borrowerRanking;
  j["reservation_cut"] = market.reservationCut;
  out << j.dump(2) << '\n';
}

LiquidityMarket readMarketJson(std::istream& in) {
  nlohmann::json j;
  in >> j;
  QuoteSet quotes;
  quotes.lenders = j.at("lenders").get<std::vector<int>>();
  quotes.borrowers = j.at("borrowers").get<std::vector<int>>();
  quotes.baseRate = j.at("base_rate").get<std::vector<double>>();
  quotes.premium = j.at("premium").get<std::vector<std::vector<double>>>();
  quotes.taxMarkup = j.at("tax_markup").get<std::vector<std::vector<double>>>();
  const auto mode = j.at("lender_mode").get<std::string>() == "strict"
                        ? LenderPreferences::Strict
                        : LenderPreferences::Indifferent;
  // Rankings are rebuilt rather than trusted, so a captured market always
  // comes back internally consistent.
  return buildPreferences(j.at("period").get<long>(), j.at("bank_count").get<int>(), quotes,
                          j.at("reservation_rate").get<std::vector<double>>(), mode,
                          j.at("borrower_default_prob").get<std::vector<double>>());
}

}  // namespace srtlab
