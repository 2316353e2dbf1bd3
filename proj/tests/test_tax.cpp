#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "srtlab/fixtures.hpp"
#include "srtlab/rng.hpp"
#include "srtlab/tax.hpp"
#include "support/generators.hpp"

using namespace srtlab;

namespace {

std::set<Matching> asSet(const std::vector<Matching>& v) { return {v.begin(), v.end()}; }

int maxVolume(const std::vector<Matching>& v) {
  int best = 0;
  for (const Matching& m : v) best = std::max(best, m.volume());
  return best;
}

}  // namespace

TEST_CASE("flat tax") {
  const auto e = fixtures::chainEconomy();

  SUBCASE("zero rate changes nothing") {
    CHECK(asSet(tobinEquilibria(e.market, 0.0)) == asSet(enumerateEquilibria(e.market)));
  }
  SUBCASE("three percent prices the risky borrower out of its second-best") {
    const std::vector<Matching> taxed = tobinEquilibria(e.market, 0.03);
    REQUIRE(taxed.size() == 2);
    // The equilibrium that pairs the cheap lender with the risky borrower
    // survives unchanged; the other shrinks to a single loan.
    Matching shrunk(9);
    shrunk.match(2, 3);
    CHECK(asSet(taxed) == std::set<Matching>{e.matchingA, shrunk});
    CHECK(maxVolume(taxed) == 2);
  }
  SUBCASE("preference order is preserved, only cuts move") {
    const LiquidityMarket taxed =
        applyTax(e.market, TaxMatrix::tobin(0.03, e.market.lenders.size(),
                                            e.market.borrowers.size()));
    for (std::size_t bi = 0; bi < taxed.borrowers.size(); ++bi) {
      CHECK(taxed.borrowerRanking[bi] == e.market.borrowerRanking[bi]);
      CHECK(taxed.reservationCut[bi] <= e.market.reservationCut[bi]);
    }
  }
  SUBCASE("never raises the maximum achievable volume") {
    Rng rng(83);
    for (int trial = 0; trial < 100; ++trial) {
      const LiquidityMarket mk = testgen::randomMarket(rng);
      const int untaxedMax = maxVolume(enumerateEquilibria(mk));
      for (double kappa : {0.01, 0.03, 0.05})
        CHECK(maxVolume(tobinEquilibria(mk, kappa)) <= untaxedMax);
    }
  }
}

TEST_CASE("schedule construction") {
  const auto e = fixtures::chainEconomy();
  const std::vector<double> prob(9, 0x1.0p-7);
  const EslDeltaFn deltaFn = [&](int lender, int borrower) {
    return edgeEslDelta(e.priorExposure, e.equity, prob, lender, borrower, e.edgeSize);
  };
  SrtParams params;
  params.zeta = defaultZeta(e.market, e.equity);

  SUBCASE("desired matches ride free, deviations pay") {
    const TaxMatrix tax = buildSystemicRiskTax(e.market, e.matchingC, params, deltaFn);
    CHECK(tax.kind == TaxKind::Srt);
    CHECK(tax.rate[0][0] == 0.0);  // lender 0 -> borrower 3, on path
    CHECK(tax.rate[1][1] == 0.0);  // lender 1 -> borrower 4, on path
    CHECK(tax.rate[2][0] > 0.0);   // the cheap chain lender is priced off both
    CHECK(tax.rate[2][1] > 0.0);
    CHECK(tax.rate[1][0] > 0.0);
    CHECK(tax.rate[0][1] > 0.0);
    // Borrower 5 was already priced out untaxed; nothing to add.
    CHECK(tax.rate[0][2] == 0.0);
    CHECK(tax.rate[1][2] == 0.0);
    CHECK(tax.rate[2][2] == 0.0);

    const Matching realized = uniqueEquilibriumUnderTax(e.market, tax);
    CHECK(realized == e.matchingC);
  }
  SUBCASE("taxed quotes put the desired lender strictly on top") {
    const TaxMatrix tax = buildSystemicRiskTax(e.market, e.matchingC, params, deltaFn);
    const LiquidityMarket taxed = applyTax(e.market, tax);
    CHECK(taxed.borrowerRanking[0].front() == 0);
    CHECK(taxed.borrowerRanking[1].front() == 1);
    CHECK(taxed.rate(0, 0) < taxed.rate(1, 0));
    CHECK(taxed.rate(0, 0) < taxed.rate(2, 0));
  }
  SUBCASE("a target that is already on top goes untaxed entirely") {
    const QuoteSet quotes = buildBaseRateQuotes({0}, {1}, {0.02});
    const LiquidityMarket mk =
        buildPreferences(0, 2, quotes, {0.05}, LenderPreferences::Indifferent, {0.1});
    Matching target(2);
    target.match(0, 1);
    const TaxMatrix tax = buildSystemicRiskTax(mk, target, SrtParams{}, nullptr);
    CHECK(tax.rate[0][0] == 0.0);
    CHECK(uniqueEquilibriumUnderTax(mk, tax) == target);
  }
  SUBCASE("infeasible targets are rejected") {
    Matching target(9);
    target.match(0, 5);  // borrower 5 cannot afford lender 0
    CHECK_THROWS_AS(buildSystemicRiskTax(e.market, target, params, deltaFn),
                    std::invalid_argument);
  }
  SUBCASE("schedule export lists every pair") {
    const TaxMatrix tax = buildSystemicRiskTax(e.market, e.matchingC, params, deltaFn);
    std::ostringstream out;
    writeTaxScheduleCsv(e.market, tax, out);
    const std::string text = out.str();
    CHECK(text.rfind("lender,borrower,tax,esl_delta\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 3 * 3);
  }
}

TEST_CASE("unique equilibrium under a schedule") {
  const auto e = fixtures::chainEconomy();

  SUBCASE("a flat tax cannot pin uniqueness") {
    const TaxMatrix flat = TaxMatrix::tobin(0.03, 3, 3);
    CHECK_THROWS_AS(uniqueEquilibriumUnderTax(e.market, flat), std::invalid_argument);
  }
  SUBCASE("an all-self target yields the empty matching") {
    Matching target(9);
    const TaxMatrix tax = buildSystemicRiskTax(e.market, target, SrtParams{}, nullptr);
    const Matching m = uniqueEquilibriumUnderTax(e.market, tax);
    CHECK(m.volume() == 0);
  }
  SUBCASE("every feasible target is realized uniquely on random markets") {
    Rng rng(89);
    for (int trial = 0; trial < 60; ++trial) {
      const LiquidityMarket mk = testgen::randomMarket(rng);
      forEachFeasibleMatching(mk, -1, [&](const Matching& target) {
        const TaxMatrix tax = buildSystemicRiskTax(mk, target, SrtParams{}, nullptr);
        // verify=true re-runs the exhaustive stability scan internally.
        const Matching realized = uniqueEquilibriumUnderTax(mk, tax);
        CHECK(realized == target);
        return true;
      });
    }
  }
  SUBCASE("strict-preference markets are pinned the same way") {
    Rng rng(97);
    for (int trial = 0; trial < 60; ++trial) {
      const LiquidityMarket mk = testgen::randomMarket(rng, {.strict = true});
      forEachFeasibleMatching(mk, -1, [&](const Matching& target) {
        const TaxMatrix tax = buildSystemicRiskTax(mk, target, SrtParams{}, nullptr);
        const Matching realized = uniqueEquilibriumUnderTax(mk, tax);
        CHECK(realized == target);
        return true;
      });
    }
  }
}

TEST_CASE("feasible set geometry") {
  Rng rng(101);
  SUBCASE("every stable matching is feasible") {
    for (int trial = 0; trial < 100; ++trial) {
      const LiquidityMarket mk = testgen::randomMarket(rng);
      for (const Matching& m : enumerateEquilibria(mk)) CHECK(isFeasibleMatching(m, mk));
    }
  }
  SUBCASE("feasible enumeration respects the volume filter") {
    const auto e = fixtures::chainEconomy();
    int count = 0;
    forEachFeasibleMatching(e.market, 2, [&](const Matching& m) {
      CHECK(m.volume() == 2);
      CHECK(isFeasibleMatching(m, e.market));
      ++count;
      return true;
    });
    CHECK(count == 6);  // borrowers 3 and 4 each pick distinct lenders from three
  }
}

TEST_CASE("volume-constrained loss minimization") {
  const auto e = fixtures::chainEconomy();
  const std::vector<double> prob(9, 0x1.0p-7);

  SUBCASE("at volume two it finds the efficient configuration") {
    const SrtOptimum opt =
        optimizeSystemicRiskTax(e.market, e.priorExposure, e.equity, prob, 2, e.edgeSize, {});
    CHECK(opt.matching == e.matchingC);
    CHECK(opt.esl == 0x1.0p-7 * 10 * 50.0);
    CHECK(opt.candidatesEvaluated == 6);
    const std::vector<double> eqProb(9, 0x1.0p-7);
    NetExposureMatrix withA = e.priorExposure;
    withA.addLoan(2, 4, e.edgeSize);
    withA.addLoan(1, 3, e.edgeSize);
    CHECK(opt.esl < expectedSystemicLoss(withA, e.equity, eqProb));
  }
  SUBCASE("volume zero returns the empty matching and the legacy loss") {
    const SrtOptimum opt =
        optimizeSystemicRiskTax(e.market, e.priorExposure, e.equity, prob, 0, e.edgeSize, {});
    CHECK(opt.matching.volume() == 0);
    CHECK(opt.esl == expectedSystemicLoss(e.priorExposure, e.equity, prob));
  }
  SUBCASE("unreachable volumes are an error") {
    CHECK_THROWS_AS(
        optimizeSystemicRiskTax(e.market, e.priorExposure, e.equity, prob, 3, e.edgeSize, {}),
        std::invalid_argument);
  }
  SUBCASE("never worse than any untaxed or flat-taxed equilibrium at equal volume") {
    Rng rng(103);
    for (int trial = 0; trial < 40; ++trial) {
      const LiquidityMarket mk = testgen::randomMarket(rng);
      const int n = mk.bankCount;
      const NetExposureMatrix prior = testgen::randomExposure(rng, n, 2);
      const auto equity = testgen::randomEquities(rng, n, 0.5, 2.5);
      std::vector<double> p;
      for (int i = 0; i < n; ++i) p.push_back(rng.uniform(0.0, 0.2));

      auto eslOf = [&](const Matching& m) {
        NetExposureMatrix exposure = prior;
        for (int lender : mk.lenders) {
          const int borrower = m.partner(lender);
          if (borrower != lender) exposure.addLoan(lender, borrower, 1.0);
        }
        return expectedSystemicLoss(exposure, equity, p);
      };
      std::vector<Matching> rivals = enumerateEquilibria(mk);
      for (double kappa : {0.01, 0.03}) {
        const auto flatTaxed = tobinEquilibria(mk, kappa);
        rivals.insert(rivals.end(), flatTaxed.begin(), flatTaxed.end());
      }
      for (const Matching& rival : rivals) {
        const SrtOptimum opt =
            optimizeSystemicRiskTax(mk, prior, equity, p, rival.volume(), 1.0, {});
        CHECK(opt.esl <= eslOf(rival) + 1e-12);
      }
    }
  }
}
