#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "srtlab/bank.hpp"
#include "srtlab/contracts.hpp"
#include "srtlab/rng.hpp"

namespace srtlab {

// One-to-one correspondence on the bank set; a self-partner means the bank
// is unmatched. Stored as its own inverse, so involution holds by
// construction.
class Matching {
 public:
  Matching() = default;
  explicit Matching(int bankCount) : partner_(static_cast<std::size_t>(bankCount)) {
    for (int i = 0; i < bankCount; ++i) partner_[static_cast<std::size_t>(i)] = i;
  }

  int size() const { return static_cast<int>(partner_.size()); }
  int partner(int bank) const { return partner_[static_cast<std::size_t>(bank)]; }
  bool isMatched(int bank) const { return partner(bank) != bank; }

  void match(int a, int b);
  void unmatch(int bank);

  // Number of matched pairs.
  int volume() const;

  bool operator==(const Matching& other) const { return partner_ == other.partner_; }
  bool operator<(const Matching& other) const { return partner_ < other.partner_; }

 private:
  std::vector<int> partner_;
};

enum class LenderPreferences { Indifferent, Strict };

// The market for liquidity in one period: who supplies, who demands, at
// which rates, and the preference structure those rates induce.
struct LiquidityMarket {
  long period = 0;
  int bankCount = 0;
  std::vector<int> lenders;    // bank ids, ascending
  std::vector<int> borrowers;  // bank ids, ascending, disjoint from lenders
  QuoteSet quotes;             // effective rates (tax mark-ups included)
  std::vector<double> reservationRate;     // per borrower
  LenderPreferences lenderMode = LenderPreferences::Indifferent;
  std::vector<double> borrowerDefaultProb;  // per borrower; orders strict lender lists

  // Built by buildPreferences:
  std::vector<std::vector<int>> borrowerRanking;  // per borrower: lender indices by rate asc
  std::vector<int> reservationCut;                // feasible prefix length of each ranking
  std::vector<std::vector<int>> lenderRanking;    // strict mode: borrower indices by risk asc

  int lenderIndexOf(int bankId) const;
  int borrowerIndexOf(int bankId) const;
  double rate(int lenderIdx, int borrowerIdx) const {
    return quotes.quotedRate(static_cast<std::size_t>(lenderIdx),
                             static_cast<std::size_t>(borrowerIdx));
  }
  bool feasiblePair(int lenderIdx, int borrowerIdx) const {
    return rate(lenderIdx, borrowerIdx) < reservationRate[static_cast<std::size_t>(borrowerIdx)];
  }

  // Position of a lender (or of staying alone, lenderIdx = kSelf) in a
  // borrower's preference list. Feasible lenders come first, then self at
  // the reservation cut, then the unaffordable lenders.
  static constexpr int kSelf = -1;
  int borrowerRank(int borrowerIdx, int lenderIdxOrSelf) const;

  // Position of a borrower (or of staying idle, kSelf) in a strict lender's
  // list; lending to anyone beats idling.
  int lenderRank(int lenderIdx, int borrowerIdxOrSelf) const;

  void validate() const;
};

// Assigns each solvent bank a liquidity role for the period: supplier with
// probability y/2, demander with y/2, neither otherwise. One draw is
// consumed per bank, bankrupt ones included, so paired runs stay aligned.
struct ShockDraw {
  std::vector<int> lenders;
  std::vector<int> borrowers;
};
ShockDraw drawShocks(const std::vector<BankState>& banks, double y, Rng& rng);

// Orders every borrower's lender list by quoted rate (self inserted at the
// reservation cut) and, in strict mode, every lender's borrower list by
// default probability. Exact rate ties are broken by bank index and
// reported via warnings.
LiquidityMarket buildPreferences(long period, int bankCount, const QuoteSet& quotes,
                                 const std::vector<double>& reservationRate,
                                 LenderPreferences mode,
                                 const std::vector<double>& borrowerDefaultProb,
                                 std::vector<std::string>* warnings = nullptr);

enum class StabilityViolation { None, PairwiseDeviation, CoalitionSwap, UnilateralDeviation };

struct StabilityReport {
  bool stable = true;
  StabilityViolation violation = StabilityViolation::None;
  std::vector<int> witness;  // bank ids involved in the deviation
  std::string describe() const;
};

// Checks, in order: (I) no lender-borrower pair mutually prefers each other
// to their assignments; (II) no set of borrowers whose (indifferent)
// lenders they could permute so that all strictly improve — detected as a
// cycle in the envy digraph over matched borrowers; (III) no borrower
// strictly prefers staying alone to its match, or an unmatched lender to
// its assignment. Reports the first violation found.
StabilityReport isStable(const Matching& matching, const LiquidityMarket& market);

// Number of candidate matchings between the two sides (any volume).
double countMatchings(int lenderCount, int borrowerCount);

// Visits every valid matching of the market (all injective assignments of
// borrowers to lenders, any volume). Returns early if `fn` returns false.
void forEachMatching(const LiquidityMarket& market,
                     const std::function<bool(const Matching&)>& fn);

// All stable matchings, by exhaustive scan. Guarded against markets whose
// matching count exceeds `enumerationLimit`.
std::vector<Matching> enumerateEquilibria(const LiquidityMarket& market,
                                          double enumerationLimit = 2e6);

// The bilateral-contracting equilibrium characterization: every match
// clears its borrower's reservation rate, and no unmatched lender undercuts
// any borrower's assignment (self-matches count at the reservation cut).
bool isBilateralEquilibrium(const Matching& matching, const LiquidityMarket& market);

// Random serial dictatorship: borrowers claim their best available
// feasible lender in a shuffled order. Always lands in the stable set
// when lenders are indifferent; the result is verified before returning.
Matching selectEquilibrium(const LiquidityMarket& market, Rng& rng);

// Strict-preference mode: lenders in ascending rate order each pick the
// lowest-risk unmatched borrower still willing to pay their rate. The
// result is the market's unique stable matching.
Matching strictStableMatching(const LiquidityMarket& market);

// Variable-size extension: banks carry signed liquidity sizes and matching
// repeats on the residual supply and demand until a side empties or no
// trade is feasible. Each round transfers min(supply, demand) per pair.
struct WeightedLoan {
  int lender = 0;
  int borrower = 0;
  double amount = 0.0;
  int round = 0;
};
std::vector<WeightedLoan> multiRoundMatching(const std::vector<BankState>& banks,
                                             const std::vector<double>& signedShock,
                                             const std::vector<double>& borrowerDefaultProb,
                                             int maturity, Rng& rng);

// Fixture capture: full market state as JSON, and the inverse.
void writeMarketJson(const LiquidityMarket& market, std::ostream& out);
LiquidityMarket readMarketJson(std::istream& in);

}  // namespace srtlab
